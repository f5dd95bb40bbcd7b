//! Exact dense linear algebra over the rationals and prime fields.
//!
//! Scalars are always [`BigRational`] values kept in canonical form by the
//! owning [`Field`]: lowest-terms fractions over ℚ, least non-negative
//! residues over 𝔽_p. Every echelon form produced here is the reduced
//! row-echelon form, so bases handed to the rest of the crate are canonical.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Scalar = BigRational;
pub type Vector = Vec<Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, x: i64) -> Scalar {
        self.reduce(&Scalar::from_integer(BigInt::from(x)))
    }

    fn residue(&self, x: &Scalar) -> u64 {
        let p = self.characteristic();
        let pb = BigInt::from(p);
        let n = x.numer().mod_floor(&pb).to_u64().unwrap();
        let d = x.denom().mod_floor(&pb).to_u64().unwrap();
        assert!(d != 0, "denominator divisible by the characteristic");
        mulmod(n, powmod(d, p - 2, p), p)
    }

    fn lift(&self, r: u64) -> Scalar {
        Scalar::from_integer(BigInt::from(r))
    }

    /// Canonical representative of `x` in this field.
    pub fn reduce(&self, x: &Scalar) -> Scalar {
        match self {
            Field::Rationals => x.clone(),
            Field::Prime(_) => {
                if x.is_integer() && !x.is_negative() && x.numer() < &BigInt::from(self.characteristic()) {
                    x.clone()
                } else {
                    self.lift(self.residue(x))
                }
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a + b,
            Field::Prime(p) => self.lift((self.residue(a) + self.residue(b)) % p),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a - b,
            Field::Prime(p) => self.lift((self.residue(a) + p - self.residue(b)) % p),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => -a,
            Field::Prime(p) => self.lift((p - self.residue(a)) % p),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a * b,
            Field::Prime(p) => self.lift(mulmod(self.residue(a), self.residue(b), *p)),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => self.lift(powmod(self.residue(a), p - 2, *p)),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// `acc += a * b`
    pub fn mul_add(&self, acc: &mut Scalar, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *acc = self.add(acc, &self.mul(a, b));
    }

    pub fn parse(s: &str) -> Result<Field> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "q" | "qq" | "rationals" | "rational" => Ok(Field::Rationals),
            _ => {
                let rest = t
                    .strip_prefix("fp:")
                    .or_else(|| t.strip_prefix("gf:"))
                    .or_else(|| t.strip_prefix("f"))
                    .ok_or_else(|| Error::InvalidQuiver(format!("unknown field '{s}'")))?;
                let p: u64 = rest
                    .parse()
                    .map_err(|_| Error::InvalidQuiver(format!("unknown field '{s}'")))?;
                Field::prime(p)
            }
        }
    }

    pub fn vec_is_zero(&self, v: &[Scalar]) -> bool {
        v.iter().all(|x| x.is_zero())
    }

    pub fn vec_add(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| self.add(x, y)).collect()
    }

    pub fn vec_sub(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| self.sub(x, y)).collect()
    }

    pub fn vec_scale(&self, c: &Scalar, a: &[Scalar]) -> Vector {
        a.iter().map(|x| self.mul(c, x)).collect()
    }

    /// `acc += c * v`
    pub fn axpy(&self, acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            self.mul_add(a, c, x);
        }
    }

    pub fn zero_vec(&self, n: usize) -> Vector {
        vec![Scalar::zero(); n]
    }

    pub fn unit_vec(&self, n: usize, i: usize) -> Vector {
        let mut v = self.zero_vec(n);
        v[i] = Scalar::one();
        v
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Scalar>], cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, x) in r.iter().enumerate() {
                m.data[i * cols + j] = field.reduce(x);
            }
        }
        m
    }

    pub fn from_i64(field: &Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rs: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix::from_rows(field, &rs, cols)
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        field.mul_add(&mut out.data[idx], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, field: &Field, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    field.mul_add(&mut acc, a, x);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: field.vec_add(&self.data, &other.data) }
    }

    pub fn sub(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: field.vec_sub(&self.data, &other.data) }
    }

    pub fn scale(&self, field: &Field, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: field.vec_scale(c, &self.data) }
    }

    pub fn add_scaled(&mut self, field: &Field, c: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        field.axpy(&mut self.data, c, &other.data);
    }

    pub fn rank(&self, field: &Field) -> usize {
        rref(field, &self.row_vecs(), self.cols).rank()
    }

    pub fn is_invertible(&self, field: &Field) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }

    pub fn inverse(&self, field: &Field) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let rows: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(field.unit_vec(n, i));
                r
            })
            .collect();
        let e = rref(field, &rows, 2 * n);
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for (i, r) in e.rows.iter().enumerate() {
            for j in 0..n {
                inv.set(i, j, r[n + j].clone());
            }
        }
        Some(inv)
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }
}

/// Reduced row-echelon form: nonzero rows only, each with a leading 1 at
/// `pivots[k]` and zeros above and below every pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub ncols: usize,
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row-echelon form of the matrix with the given rows.
///
/// Over ℚ the elimination runs fraction-free on primitive integer rows
/// (content removed after every update) and divides by the pivots only at
/// the end.
pub fn rref(field: &Field, rows: &[Vector], ncols: usize) -> Rref {
    match field {
        Field::Rationals => rref_rational(rows, ncols),
        Field::Prime(p) => rref_prime(field, *p, rows, ncols),
    }
}

fn primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

fn rref_rational(rows: &[Vector], ncols: usize) -> Rref {
    let mut work: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| {
            assert_eq!(r.len(), ncols);
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut ir: Vec<BigInt> = r.iter().map(|x| (x * Scalar::from_integer(l.clone())).to_integer()).collect();
            primitive(&mut ir);
            ir
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == work.len() {
            break;
        }
        let Some(pr) = (rank..work.len()).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(rank, pr);
        let (head, tail) = work.split_at_mut(rank);
        let (piv_row, rest) = tail.split_first_mut().unwrap();
        let p = piv_row[col].clone();
        for other in head.iter_mut().chain(rest.iter_mut()) {
            if other[col].is_zero() {
                continue;
            }
            let a = other[col].clone();
            for j in col..ncols {
                let v = &other[j] * &p - &a * &piv_row[j];
                other[j] = v;
            }
            for j in 0..col {
                if !other[j].is_zero() {
                    other[j] = &other[j] * &p;
                }
            }
            primitive(other);
        }
        pivots.push(col);
        rank += 1;
    }
    work.truncate(rank);
    let rows = work
        .into_iter()
        .zip(&pivots)
        .map(|(r, &c)| {
            let p = r[c].clone();
            r.into_iter().map(|x| Scalar::new(x, p.clone())).collect()
        })
        .collect();
    Rref { ncols, rows, pivots }
}

fn rref_prime(field: &Field, p: u64, rows: &[Vector], ncols: usize) -> Rref {
    let mut work: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols);
            r.iter().map(|x| field.residue(x)).collect::<Vec<u64>>()
        })
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == work.len() {
            break;
        }
        let Some(pr) = (rank..work.len()).find(|&r| work[r][col] != 0) else {
            continue;
        };
        work.swap(rank, pr);
        let inv = powmod(work[rank][col], p - 2, p);
        for x in work[rank].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let piv_row = work[rank].clone();
        for (r, other) in work.iter_mut().enumerate() {
            if r == rank || other[col] == 0 {
                continue;
            }
            let a = other[col];
            for j in col..ncols {
                other[j] = (other[j] + p - mulmod(a, piv_row[j], p)) % p;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    work.truncate(rank);
    let rows = work.into_iter().map(|r| r.into_iter().map(|x| field.lift(x)).collect()).collect();
    Rref { ncols, rows, pivots }
}

/// Canonical basis of the null space of `m`: one vector per free column,
/// with a 1 in that column.
pub fn kernel(field: &Field, m: &Matrix) -> Vec<Vector> {
    let e = rref(field, &m.row_vecs(), m.cols);
    kernel_from_rref(field, &e)
}

fn kernel_from_rref(field: &Field, e: &Rref) -> Vec<Vector> {
    let mut is_pivot = vec![false; e.ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..e.ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = field.unit_vec(e.ncols, free);
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                v[p] = field.neg(&row[free]);
            }
            v
        })
        .collect()
}

/// Some solution of `m x = rhs`, or `None` when the system is inconsistent.
pub fn solve(field: &Field, m: &Matrix, rhs: &[Scalar]) -> Option<Vector> {
    assert_eq!(m.rows, rhs.len());
    let rows: Vec<Vector> = (0..m.rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let e = rref(field, &rows, m.cols + 1);
    if e.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = field.zero_vec(m.cols);
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[m.cols].clone();
    }
    Some(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub rank: usize,
    pub kernel_basis: Vec<Vector>,
    pub particular_solution: Option<Vector>,
}

pub fn solve_and_kernel(field: &Field, m: &Matrix, rhs: Option<&[Scalar]>) -> Result<SolveOutcome> {
    if let Some(b) = rhs {
        if b.len() != m.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {} but the matrix has {} rows",
                b.len(),
                m.rows
            )));
        }
    }
    let e = rref(field, &m.row_vecs(), m.cols);
    let kernel_basis = kernel_from_rref(field, &e);
    let particular_solution = rhs.and_then(|b| solve(field, m, b));
    Ok(SolveOutcome { rank: e.rank(), kernel_basis, particular_solution })
}

/// A subspace of `field^n` held as its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    echelon: Rref,
}

impl Subspace {
    pub fn new(field: &Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        Subspace { ambient, echelon: rref(field, vectors, ambient) }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, echelon: Rref { ncols: ambient, rows: vec![], pivots: vec![] } }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        let basis: Vec<Vector> = (0..ambient).map(|i| field.unit_vec(ambient, i)).collect();
        Subspace::new(field, ambient, &basis)
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.echelon.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.echelon.pivots
    }

    /// Coordinates that are not pivots; unit vectors there span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in self.pivots() {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// `v` minus its component along the echelon basis; zero exactly when `v`
    /// lies in the subspace.
    pub fn reduce(&self, field: &Field, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.echelon.rows.iter().zip(&self.echelon.pivots) {
            if !out[p].is_zero() {
                let c = field.neg(&out[p]);
                field.axpy(&mut out, &c, row);
            }
        }
        out
    }

    pub fn contains(&self, field: &Field, v: &[Scalar]) -> bool {
        field.vec_is_zero(&self.reduce(field, v))
    }

    /// Coordinates of `v` with respect to the echelon basis.
    pub fn coords(&self, field: &Field, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(field, v) {
            return None;
        }
        Some(self.echelon.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn combine(&self, field: &Field, coords: &[Scalar]) -> Vector {
        let mut out = field.zero_vec(self.ambient);
        for (c, row) in coords.iter().zip(&self.echelon.rows) {
            field.axpy(&mut out, c, row);
        }
        out
    }

    pub fn sum(&self, field: &Field, other: &Subspace) -> Subspace {
        let mut v = self.basis().to_vec();
        v.extend(other.basis().iter().cloned());
        Subspace::new(field, self.ambient, &v)
    }

    pub fn contains_subspace(&self, field: &Field, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(field, v))
    }

    pub fn intersect(&self, field: &Field, other: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j
        let n = self.ambient;
        let mut cols: Vec<Vector> = self.basis().to_vec();
        cols.extend(other.basis().iter().map(|w| w.iter().map(|x| field.neg(x)).collect::<Vector>()));
        if cols.is_empty() {
            return Subspace::zero(n);
        }
        let m = Matrix::from_columns(n, &cols);
        let ker = kernel(field, &m);
        let vecs: Vec<Vector> = ker.iter().map(|k| self.combine(field, &k[..self.dim()])).collect();
        Subspace::new(field, n, &vecs)
    }
}

/// Cycles modulo boundaries inside a common ambient space, with canonical
/// representatives: the quotient basis is the echelon basis of the cycles
/// reduced against the boundary echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    pub ambient: usize,
    pub cycles: Subspace,
    pub boundaries: Subspace,
    pub reps: Subspace,
}

impl Subquotient {
    pub fn new(field: &Field, ambient: usize, cycles: &[Vector], boundaries: &[Vector]) -> Subquotient {
        let boundaries = Subspace::new(field, ambient, boundaries);
        let cyc = Subspace::new(field, ambient, cycles);
        let reduced: Vec<Vector> = cyc.basis().iter().map(|z| boundaries.reduce(field, z)).collect();
        let reps = Subspace::new(field, ambient, &reduced);
        Subquotient { ambient, cycles: cyc, boundaries, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn rep(&self, k: usize) -> &Vector {
        &self.reps.basis()[k]
    }

    /// Quotient coordinates of a cycle; `None` if `v` is not a cycle.
    pub fn coords(&self, field: &Field, v: &[Scalar]) -> Option<Vector> {
        let r = self.boundaries.reduce(field, v);
        self.reps.coords(field, &r)
    }

    pub fn combine(&self, field: &Field, coords: &[Scalar]) -> Vector {
        self.reps.combine(field, coords)
    }

    pub fn is_boundary(&self, field: &Field, v: &[Scalar]) -> bool {
        self.boundaries.contains(field, v)
    }
}

/// Outcome of searching a linear family for an invertible member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub coeffs: Option<Vector>,
    /// `false` when the absence of a witness was not proved exhaustively.
    pub exact: bool,
}

/// Search for coefficients `c` such that every block `Σ_k c_k blocks[k][t]`
/// is invertible.
///
/// Seeded random trials come first. When they fail, a grid `S^K` with
/// `|S| > D` (`D` the total block size, the degree of the product of the
/// determinants) is exhausted, which decides the question exactly; over a
/// prime field with `p ≤ D` the whole of `𝔽_p^K` is enumerated instead.
pub fn find_invertible_combination(
    field: &Field,
    shapes: &[usize],
    blocks: &[Vec<Matrix>],
    seed: u64,
    budget: usize,
) -> SearchOutcome {
    let degree: usize = shapes.iter().sum();
    let k = blocks.len();
    let eval = |c: &[Scalar]| -> bool {
        shapes.iter().enumerate().all(|(t, &n)| {
            let mut m = Matrix::zeros(n, n);
            for (ck, b) in c.iter().zip(blocks) {
                m.add_scaled(field, ck, &b[t]);
            }
            m.is_invertible(field)
        })
    };
    if degree == 0 {
        return SearchOutcome { coeffs: Some(field.zero_vec(k)), exact: true };
    }
    if k == 0 {
        return SearchOutcome { coeffs: None, exact: true };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..6 {
        let c: Vector = (0..k)
            .map(|_| match field {
                Field::Rationals => field.from_i64(rng.gen_range(-1000..=1000)),
                Field::Prime(p) => field.lift(rng.gen_range(0..*p)),
            })
            .collect();
        if eval(&c) {
            return SearchOutcome { coeffs: Some(c), exact: true };
        }
    }
    let p = field.characteristic();
    let grid: Vec<Scalar> = if p == 0 || p as usize > degree {
        (0..=degree as i64).map(|x| field.from_i64(x)).collect()
    } else {
        (0..p as i64).map(|x| field.from_i64(x)).collect()
    };
    let total = (grid.len() as f64).powi(k as i32);
    if total > budget as f64 {
        return SearchOutcome { coeffs: None, exact: false };
    }
    let mut idx = vec![0usize; k];
    loop {
        let c: Vector = idx.iter().map(|&i| grid[i].clone()).collect();
        if eval(&c) {
            return SearchOutcome { coeffs: Some(c), exact: true };
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return SearchOutcome { coeffs: None, exact: true };
            }
            idx[pos] += 1;
            if idx[pos] < grid.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
