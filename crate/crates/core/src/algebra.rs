//! Finite-dimensional basic algebras presented as finite linear categories.
//!
//! Both path algebras kQ/I and abstract algebras (endomorphism algebras of
//! silting complexes) share one representation: every basis element `b`
//! lives in a single Peirce block `e_t A e_s` (source `s`, target `t`), each
//! vertex has an identity basis element, and every other basis element lies
//! in the radical. Products are composition: `a·b` means "first `b`, then
//! `a`", and is zero unless `source(a) == target(b)`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex label '{v}'")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for a in &arrows {
            if !seen.insert(a.name.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow label '{}'", a.name)));
            }
            if a.from >= vertices.len() || a.to >= vertices.len() {
                return Err(Error::InvalidQuiver(format!("arrow '{}' has an undeclared endpoint", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Source and target of a path written in product order (last applied
    /// arrow first). `None` if consecutive arrows do not compose.
    pub fn path_ends(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = *path.last()?;
        let last = path[0];
        for w in path.windows(2) {
            if self.arrows[w[0]].from != self.arrows[w[1]].to {
                return None;
            }
        }
        Some((self.arrows[first].from, self.arrows[last].to))
    }

    pub fn has_oriented_cycle(&self) -> bool {
        // Kahn's algorithm
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.to] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.from == v) {
                indeg[a.to] -= 1;
                if indeg[a.to] == 0 {
                    stack.push(a.to);
                }
            }
        }
        seen < n
    }
}

/// A linear combination of parallel paths; each path is a list of arrow
/// indices in product order (rightmost applied first).
pub type Relation = Vec<(Scalar, Vec<usize>)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub max_path_length: usize,
    /// Smallest `N` with every path of length `N` in the ideal.
    pub nilpotency_bound: usize,
    /// Dimension of the ideal among paths of length at most `max_path_length`.
    pub ideal_dim: usize,
    /// Arrow word of each basis path, product order.
    pub words: Vec<Vec<usize>>,
    pub arrow_basis: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub field: Field,
    pub vertex_labels: Vec<String>,
    pub basis_labels: Vec<String>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub identity: Vec<usize>,
    blocks: Vec<Vec<Vec<usize>>>,
    block_pos: Vec<usize>,
    table: Vec<Vec<(usize, Scalar)>>,
    pub presentation: Option<PathPresentation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut all: Vec<Path> = (0..q.vertices.len())
        .map(|v| Path { source: v, target: v, arrows: vec![] })
        .collect();
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (x, a) in q.arrows.iter().enumerate() {
                if a.from == p.target {
                    let mut arrows = vec![x];
                    arrows.extend(&p.arrows);
                    next.push(Path { source: p.source, target: a.to, arrows });
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

impl Algebra {
    fn assemble(
        field: Field,
        vertex_labels: Vec<String>,
        basis_labels: Vec<String>,
        source: Vec<usize>,
        target: Vec<usize>,
        identity: Vec<usize>,
        table: Vec<Vec<(usize, Scalar)>>,
        presentation: Option<PathPresentation>,
    ) -> Algebra {
        let nv = vertex_labels.len();
        let mut blocks = vec![vec![Vec::new(); nv]; nv];
        let mut block_pos = vec![0; source.len()];
        for b in 0..source.len() {
            let blk: &mut Vec<usize> = &mut blocks[source[b]][target[b]];
            block_pos[b] = blk.len();
            blk.push(b);
        }
        Algebra { field, vertex_labels, basis_labels, source, target, identity, blocks, block_pos, table, presentation }
    }

    /// kQ/I for an admissible ideal I, computed among paths of length at
    /// most `max_path_length`.
    pub fn path_algebra(
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        max_path_length: usize,
    ) -> Result<Algebra> {
        let relations: Vec<Relation> = relations
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|(c, p)| (field.reduce(&c), p))
                    .filter(|(c, _)| !c.is_zero())
                    .collect()
            })
            .collect();
        let mut rel_ends = Vec::new();
        for (ri, r) in relations.iter().enumerate() {
            let mut ends = None;
            for (_, p) in r {
                if p.len() < 2 {
                    return Err(Error::NonAdmissible(format!(
                        "relation {ri} has a term of length {}",
                        p.len()
                    )));
                }
                let e = quiver
                    .path_ends(p)
                    .ok_or_else(|| Error::NonAdmissible(format!("relation {ri} contains a non-composable path")))?;
                if ends.is_some_and(|x| x != e) {
                    return Err(Error::NonAdmissible(format!("relation {ri} mixes non-parallel paths")));
                }
                ends = Some(e);
            }
            rel_ends.push(ends);
        }
        let l = max_path_length.max(1);
        let mut paths = enumerate_paths(&quiver, l);
        paths.sort_by(|a, b| {
            b.arrows
                .len()
                .cmp(&a.arrows.len())
                .then(a.source.cmp(&b.source))
                .then(a.arrows.cmp(&b.arrows))
        });
        let col: HashMap<(usize, Vec<usize>), usize> =
            paths.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();
        let ncols = paths.len();
        let mut gens: Vec<Vector> = Vec::new();
        for (r, ends) in relations.iter().zip(&rel_ends) {
            let Some((s, t)) = *ends else { continue };
            let min_len = r.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
            for q in paths.iter().filter(|q| q.target == s && q.arrows.len() + min_len <= l) {
                for p in paths.iter().filter(|p| p.source == t && p.arrows.len() + q.arrows.len() + min_len <= l) {
                    let mut v = field.zero_vec(ncols);
                    for (c, term) in r {
                        let mut w = p.arrows.clone();
                        w.extend(term);
                        w.extend(&q.arrows);
                        if w.len() <= l {
                            let k = col[&(q.source, w)];
                            v[k] = field.add(&v[k], c);
                        }
                    }
                    if !field.vec_is_zero(&v) {
                        gens.push(v);
                    }
                }
            }
        }
        let ideal = Subspace::new(&field, ncols, &gens);
        let in_ideal = |p: &Path| ideal.contains(&field, &field.unit_vec(ncols, col[&(p.source, p.arrows.clone())]));
        if paths.iter().any(|p| p.arrows.len() == l && !in_ideal(p)) {
            return Err(Error::NotFiniteDimensional(l));
        }
        let nilpotency_bound = (1..=l)
            .find(|&n| paths.iter().filter(|p| p.arrows.len() == n).all(|p| in_ideal(p)))
            .unwrap_or(l);

        let mut is_pivot = vec![false; ncols];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let mut basis_paths: Vec<&Path> = (0..ncols).filter(|&c| !is_pivot[c]).map(|c| &paths[c]).collect();
        basis_paths.sort_by(|a, b| {
            a.arrows
                .len()
                .cmp(&b.arrows.len())
                .then(a.source.cmp(&b.source))
                .then(a.arrows.cmp(&b.arrows))
        });
        let basis_of_col: HashMap<usize, usize> = basis_paths
            .iter()
            .enumerate()
            .map(|(i, p)| (col[&(p.source, p.arrows.clone())], i))
            .collect();
        let n = basis_paths.len();
        let labels: Vec<String> = basis_paths
            .iter()
            .map(|p| {
                if p.arrows.is_empty() {
                    format!("e{}", quiver.vertices[p.source])
                } else {
                    p.arrows.iter().map(|&a| quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        let source: Vec<usize> = basis_paths.iter().map(|p| p.source).collect();
        let target: Vec<usize> = basis_paths.iter().map(|p| p.target).collect();
        let words: Vec<Vec<usize>> = basis_paths.iter().map(|p| p.arrows.clone()).collect();
        let identity: Vec<usize> = (0..quiver.vertices.len()).collect();

        let mut table = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                if source[a] != target[b] {
                    continue;
                }
                let mut w = words[a].clone();
                w.extend(&words[b]);
                if w.len() > l {
                    continue;
                }
                let red = ideal.reduce(&field, &field.unit_vec(ncols, col[&(source[b], w)]));
                let mut entry: Vec<(usize, Scalar)> = red
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(c, x)| (basis_of_col[&c], x.clone()))
                    .collect();
                entry.sort_by_key(|e| e.0);
                table[a * n + b] = entry;
            }
        }
        let arrow_basis: Vec<usize> = (0..quiver.arrows.len())
            .map(|x| words.iter().position(|w| w == &vec![x]))
            .collect::<Option<Vec<usize>>>()
            .ok_or_else(|| Error::NonAdmissible("an arrow lies in the ideal".into()))?;
        let presentation = PathPresentation {
            quiver: quiver.clone(),
            relations,
            max_path_length: l,
            nilpotency_bound,
            ideal_dim: ideal.dim(),
            words,
            arrow_basis,
        };
        Ok(Algebra::assemble(
            field,
            quiver.vertices.clone(),
            labels,
            source,
            target,
            identity,
            table,
            Some(presentation),
        ))
    }

    /// An abstract algebra from structure constants. `table[a*n+b]` is the
    /// sparse product `a·b`. Diagonal non-identity basis elements are shifted
    /// by scalar multiples of the identity so that they become nilpotent;
    /// the shift applied to each basis element is returned alongside.
    pub fn from_structure(
        field: Field,
        vertex_labels: Vec<String>,
        basis_labels: Vec<String>,
        source: Vec<usize>,
        target: Vec<usize>,
        identity: Vec<usize>,
        table: Vec<Vec<(usize, Scalar)>>,
    ) -> Result<(Algebra, Vec<Scalar>)> {
        let n = source.len();
        if target.len() != n || basis_labels.len() != n || table.len() != n * n {
            return Err(Error::DimensionMismatch("structure constant table".into()));
        }
        for (v, &e) in identity.iter().enumerate() {
            if e >= n || source[e] != v || target[e] != v {
                return Err(Error::AlgebraAxiom(format!("identity of vertex {v} is misplaced")));
            }
        }
        let raw = Algebra::assemble(field, vertex_labels, basis_labels, source, target, identity, table, None);
        raw.check_unit_and_associativity()?;
        let shifts = raw.radical_shifts()?;
        let alg = raw.rebase(&shifts);
        alg.certify_local()?;
        Ok((alg, shifts))
    }

    /// Replace every basis element `b` by `b - shift[b]·e_{source(b)}`.
    fn rebase(&self, shifts: &[Scalar]) -> Algebra {
        if shifts.iter().all(|s| s.is_zero()) {
            return self.clone();
        }
        let f = &self.field;
        let n = self.dim();
        let new_elem = |b: usize| -> Vector {
            let mut v = f.unit_vec(n, b);
            if !shifts[b].is_zero() {
                let e = self.identity[self.source[b]];
                v[e] = f.sub(&v[e], &shifts[b]);
            }
            v
        };
        // old coordinates -> new: old b = new b + shift·e
        let to_new = |v: &Vector| -> Vector {
            let mut out = v.clone();
            for b in 0..n {
                if !shifts[b].is_zero() && !v[b].is_zero() {
                    let e = self.identity[self.source[b]];
                    out[e] = f.add(&out[e], &f.mul(&v[b], &shifts[b]));
                }
            }
            out
        };
        let mut table = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                if self.source[a] != self.target[b] {
                    continue;
                }
                let p = to_new(&self.mul(&new_elem(a), &new_elem(b)));
                table[a * n + b] = p.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            }
        }
        Algebra { table, ..self.clone() }
    }

    fn check_unit_and_associativity(&self) -> Result<()> {
        let n = self.dim();
        let f = &self.field;
        for b in 0..n {
            let l = self.mul_basis(self.identity[self.target[b]], b);
            let r = self.mul_basis(b, self.identity[self.source[b]]);
            let unit = f.unit_vec(n, b);
            if l != unit || r != unit {
                return Err(Error::AlgebraAxiom(format!("unit law fails at '{}'", self.basis_labels[b])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.source[a] != self.target[b] {
                    continue;
                }
                for c in 0..n {
                    if self.source[b] != self.target[c] {
                        continue;
                    }
                    let ab = self.mul_basis(a, b);
                    let lhs = self.mul(&ab, &f.unit_vec(n, c));
                    let bc = self.mul_basis(b, c);
                    let rhs = self.mul(&f.unit_vec(n, a), &bc);
                    if lhs != rhs {
                        return Err(Error::AlgebraAxiom(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis_labels[a], self.basis_labels[b], self.basis_labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// For each diagonal non-identity basis element, the scalar `λ` with
    /// `b - λ·e` nilpotent.
    fn radical_shifts(&self) -> Result<Vec<Scalar>> {
        let f = &self.field;
        let mut shifts = vec![Scalar::zero(); self.dim()];
        for v in 0..self.num_vertices() {
            let blk = self.block(v, v).to_vec();
            let d = blk.len();
            for &b in &blk {
                if b == self.identity[v] {
                    continue;
                }
                // left multiplication by b on e_v A e_v
                let cols: Vec<Vector> = blk
                    .iter()
                    .map(|&c| {
                        let p = self.mul_basis(b, c);
                        blk.iter().map(|&k| p[k].clone()).collect()
                    })
                    .collect();
                let m = Matrix::from_columns(d, &cols);
                let nilpotent_after = |lam: &Scalar| -> bool {
                    let shifted = m.sub(f, &Matrix::identity(d).scale(f, lam));
                    let mut pw = shifted.clone();
                    for _ in 1..d {
                        pw = pw.mul(f, &shifted);
                    }
                    pw.is_zero()
                };
                let p = f.characteristic();
                let lam = if p == 0 || (d as u64) % p != 0 {
                    let mut tr = Scalar::zero();
                    for i in 0..d {
                        tr = f.add(&tr, m.get(i, i));
                    }
                    let c = f.div(&tr, &f.from_i64(d as i64));
                    nilpotent_after(&c).then_some(c)
                } else {
                    (0..p).map(|x| f.from_i64(x as i64)).find(|c| nilpotent_after(c))
                };
                shifts[b] = lam.ok_or_else(|| {
                    Error::NotLocal(format!(
                        "'{}' has more than one eigenvalue on End of vertex '{}'",
                        self.basis_labels[b], self.vertex_labels[v]
                    ))
                })?;
            }
        }
        Ok(shifts)
    }

    /// Checks that the span of the non-identity basis elements is a
    /// nilpotent two-sided ideal, which makes every `e_v A e_v` local and
    /// the vertices pairwise non-isomorphic.
    fn certify_local(&self) -> Result<()> {
        let n = self.dim();
        let f = &self.field;
        let is_id: Vec<bool> = (0..n).map(|b| self.identity.contains(&b)).collect();
        for a in 0..n {
            for b in 0..n {
                if self.source[a] != self.target[b] || is_id[a] || is_id[b] {
                    continue;
                }
                let p = self.mul_basis(a, b);
                if let Some(e) = self.identity.iter().find(|&&e| !p[e].is_zero()) {
                    let v = self.source[*e];
                    return Err(Error::NotLocal(format!(
                        "'{}'·'{}' has an invertible component at vertex '{}'",
                        self.basis_labels[a], self.basis_labels[b], self.vertex_labels[v]
                    )));
                }
            }
        }
        // rad^k shrinks to zero
        let rad: Vec<Vector> = (0..n).filter(|&b| !is_id[b]).map(|b| f.unit_vec(n, b)).collect();
        let mut power = Subspace::new(f, n, &rad);
        for _ in 0..=n {
            if power.dim() == 0 {
                return Ok(());
            }
            let prods: Vec<Vector> = power
                .basis()
                .iter()
                .flat_map(|x| rad.iter().map(move |r| (x, r)))
                .map(|(x, r)| self.mul(x, r))
                .collect();
            let next = Subspace::new(f, n, &prods);
            if next.dim() == power.dim() {
                break;
            }
            power = next;
        }
        Err(Error::NotLocal("the span of the non-identity basis elements is not nilpotent".into()))
    }

    pub fn dim(&self) -> usize {
        self.source.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn is_identity(&self, b: usize) -> bool {
        self.identity[self.source[b]] == b
    }

    /// Basis elements generating the radical as an ideal: the arrows of a
    /// path algebra, every non-identity basis element otherwise.
    pub fn generators(&self) -> Vec<usize> {
        match &self.presentation {
            Some(p) => p.arrow_basis.clone(),
            None => (0..self.dim()).filter(|&b| !self.is_identity(b)).collect(),
        }
    }

    /// Basis indices of `e_j A e_i`, i.e. elements with source `i` and
    /// target `j`; these are the maps `P_i → P_j`.
    pub fn block(&self, i: usize, j: usize) -> &[usize] {
        &self.blocks[i][j]
    }

    pub fn block_dim(&self, i: usize, j: usize) -> usize {
        self.blocks[i][j].len()
    }

    pub fn block_position(&self, b: usize) -> usize {
        self.block_pos[b]
    }

    /// Basis of `Hom(P_i, P_j) = e_j A e_i`.
    pub fn hom_between_projectives(&self, i: usize, j: usize) -> Vec<usize> {
        self.blocks[i][j].clone()
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> Vector {
        let mut v = self.field.zero_vec(self.dim());
        for (k, c) in &self.table[a * self.dim() + b] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn product_terms(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.table[a * self.dim() + b]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let f = &self.field;
        let n = self.dim();
        let mut out = f.zero_vec(n);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = f.mul(xa, yb);
                for (k, s) in &self.table[a * n + b] {
                    f.mul_add(&mut out[*k], &c, s);
                }
            }
        }
        out
    }

    pub fn try_mul(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::DimensionMismatch("elements of different algebras".into()));
        }
        Ok(self.mul(x, y))
    }

    pub fn one(&self) -> Vector {
        let mut v = self.field.zero_vec(self.dim());
        for &e in &self.identity {
            v[e] = Scalar::one();
        }
        v
    }

    /// Product `y·x` of block elements, `x ∈ e_j A e_i` and `y ∈ e_k A e_j`,
    /// as block coordinates in `e_k A e_i`.
    pub fn block_mul(&self, i: usize, j: usize, k: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
        let f = &self.field;
        let mut out = f.zero_vec(self.block_dim(i, k));
        for (s, xs) in x.iter().enumerate() {
            if xs.is_zero() {
                continue;
            }
            let bx = self.blocks[i][j][s];
            for (t, yt) in y.iter().enumerate() {
                if yt.is_zero() {
                    continue;
                }
                let by = self.blocks[j][k][t];
                let c = f.mul(xs, yt);
                for (r, v) in self.product_terms(by, bx) {
                    f.mul_add(&mut out[self.block_pos[*r]], &c, v);
                }
            }
        }
        out
    }

    /// Coefficient of the identity in a block element of `e_v A e_v`.
    pub fn identity_coeff<'a>(&self, v: usize, x: &'a [Scalar]) -> &'a Scalar {
        &x[self.block_pos[self.identity[v]]]
    }

    pub fn block_identity(&self, v: usize) -> Vector {
        self.field.unit_vec(self.block_dim(v, v), self.block_pos[self.identity[v]])
    }

    /// Dense matrix of `x ↦ y·x` from `e_j A e_i` to `e_k A e_i`.
    pub fn left_mul_matrix(&self, i: usize, j: usize, k: usize, y: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.block_dim(i, j))
            .map(|s| self.block_mul(i, j, k, &self.field.unit_vec(self.block_dim(i, j), s), y))
            .collect();
        Matrix::from_columns(self.block_dim(i, k), &cols)
    }

    /// Dense matrix of `y ↦ y·x` from `e_k A e_j` to `e_k A e_i`.
    pub fn right_mul_matrix(&self, i: usize, j: usize, k: usize, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.block_dim(j, k))
            .map(|t| self.block_mul(i, j, k, x, &self.field.unit_vec(self.block_dim(j, k), t)))
            .collect();
        Matrix::from_columns(self.block_dim(i, k), &cols)
    }

    /// Inverse of an invertible element of the local algebra `e_v A e_v`.
    pub fn local_inverse(&self, v: usize, x: &[Scalar]) -> Option<Vector> {
        let m = self.left_mul_matrix(v, v, v, x);
        let e = self.block_identity(v);
        crate::linalg::solve(&self.field, &m, &e)
    }

    /// Unit laws, associativity on all composable basis triples, and
    /// orthogonality of the vertex idempotents.
    pub fn verify_axioms(&self) -> Result<()> {
        self.check_unit_and_associativity()?;
        let f = &self.field;
        let n = self.dim();
        let mut sum = f.zero_vec(n);
        for (i, &ei) in self.identity.iter().enumerate() {
            sum[ei] = f.add(&sum[ei], &Scalar::one());
            for (j, &ej) in self.identity.iter().enumerate() {
                let p = self.mul_basis(ei, ej);
                let expect = if i == j { f.unit_vec(n, ei) } else { f.zero_vec(n) };
                if p != expect {
                    return Err(Error::AlgebraAxiom("vertex idempotents are not orthogonal".into()));
                }
            }
        }
        let one = self.one();
        for b in 0..n {
            let u = f.unit_vec(n, b);
            if self.mul(&one, &u) != u || self.mul(&u, &one) != u {
                return Err(Error::AlgebraAxiom("idempotents do not sum to the unit".into()));
            }
        }
        if sum != one {
            return Err(Error::AlgebraAxiom("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    /// Whether the algebra is the path algebra of an acyclic quiver with no
    /// relations, with a diagnostic when it is not.
    pub fn hereditary_check(&self) -> (bool, Option<String>) {
        match &self.presentation {
            None => match (0..self.num_vertices()).find(|&v| !radical_of_projective_is_projective(self, v)) {
                Some(v) => (false, Some(format!("radical of P_{} is not projective", self.vertex_labels[v]))),
                None => (true, None),
            },
            Some(p) if p.quiver.has_oriented_cycle() => (
                false,
                Some("quiver has an oriented cycle; a finite-dimensional quotient needs relations".into()),
            ),
            Some(p) if p.ideal_dim > 0 => (false, Some(format!("relation ideal has dimension {}", p.ideal_dim))),
            Some(_) => (true, None),
        }
    }

    pub fn is_hereditary(&self) -> bool {
        self.hereditary_check().0
    }

    pub fn nilpotency_bound(&self) -> Option<usize> {
        self.presentation.as_ref().map(|p| p.nilpotency_bound)
    }

    /// Basis index of a label, e.g. `"alpha"` or `"e1"`.
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }

    /// Element of the algebra given by a path (product order); zero if the
    /// path lies in the ideal.
    pub fn path_element(&self, vertex: usize, path: &[usize]) -> Result<Vector> {
        let p = self
            .presentation
            .as_ref()
            .ok_or_else(|| Error::InvalidQuiver("not a path algebra".into()))?;
        if path.is_empty() {
            return Ok(self.field.unit_vec(self.dim(), self.identity[vertex]));
        }
        if p.quiver.path_ends(path).is_none() {
            return Err(Error::InvalidQuiver("path does not compose".into()));
        }
        let mut acc = self.field.unit_vec(self.dim(), p.arrow_basis[path[path.len() - 1]]);
        for &x in path[..path.len() - 1].iter().rev() {
            acc = self.mul(&self.field.unit_vec(self.dim(), p.arrow_basis[x]), &acc);
        }
        Ok(acc)
    }

    /// Peirce dimension table `dims[i][j] = dim e_j A e_i`.
    pub fn peirce_dims(&self) -> Vec<Vec<usize>> {
        let nv = self.num_vertices();
        (0..nv).map(|i| (0..nv).map(|j| self.block_dim(i, j)).collect()).collect()
    }
}

fn radical_of_projective_is_projective(alg: &Algebra, v: usize) -> bool {
    use crate::fdmodule::{radical, submodule_module, Module};
    let p = Module::projective(alg, v);
    let (r, _) = submodule_module(alg, &p, &radical(alg, &p)).expect("radical is a submodule");
    r.is_projective(alg)
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;
    use num_bigint::BigInt;

    pub fn q(x: i64) -> Scalar {
        Scalar::from_integer(BigInt::from(x))
    }

    fn linear(n: usize) -> Quiver {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let names = ["alpha", "beta", "gamma", "delta"];
        let arrows = (0..n - 1).map(|i| Arrow { name: names[i].into(), from: i + 1, to: i }).collect();
        Quiver::new(vertices, arrows).unwrap()
    }

    /// 1 <-alpha- 2 <-beta- 3 with alpha*beta = 0
    pub fn a3_zero_rel_over(field: Field) -> Algebra {
        Algebra::path_algebra(field, linear(3), vec![vec![(q(1), vec![0, 1])]], 4).unwrap()
    }

    pub fn a3_zero_rel() -> Algebra {
        a3_zero_rel_over(Field::Rationals)
    }

    pub fn a2() -> Algebra {
        Algebra::path_algebra(Field::Rationals, linear(2), vec![], 3).unwrap()
    }

    pub fn a3() -> Algebra {
        Algebra::path_algebra(Field::Rationals, linear(3), vec![], 4).unwrap()
    }

    pub fn truncated_loop(n: usize) -> Algebra {
        let quiver = Quiver::new(vec!["1".into()], vec![Arrow { name: "x".into(), from: 0, to: 0 }]).unwrap();
        Algebra::path_algebra(Field::Rationals, quiver, vec![vec![(q(1), vec![0; n])]], n + 1).unwrap()
    }

    pub fn point() -> Algebra {
        Algebra::path_algebra(Field::Rationals, Quiver::new(vec!["1".into()], vec![]).unwrap(), vec![], 1).unwrap()
    }
}
