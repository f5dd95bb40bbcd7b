//! The endomorphism algebra `B = End(T)` of a 2-term silting complex, the
//! 2-term silting complex `S = Cone(Hom(T, f))` over `B`, the algebra map
//! `π: A → Ā = End(S)`, and the criteria for `S` to be tilting.

use num_traits::Zero;

use crate::algebra::Algebra;
use crate::complex::{
    decompose_two_term, hom_complexes, hom_space, sum_component, ChainMap, HomSpace, PMap, ProjComplex,
};
use crate::error::{Error, Result};
use crate::fdmodule::{self, Module, ModuleMap};
use crate::linalg::{self, Matrix, Scalar, Subspace, Vector};
use crate::silting::{mutate, ApproxTriangle, Direction, SearchOpts, SiltingObject};

/// `End(⊕ T_i)` as a basic algebra with one vertex per summand, together
/// with a chain map representative for every basis element.
#[derive(Clone, Debug)]
pub struct EndPackage {
    pub algebra: Algebra,
    pub summands: Vec<ProjComplex>,
    /// Representative of basis element `b`, a map `T_source → T_target`.
    pub reps: Vec<ChainMap>,
    homs: Vec<Vec<HomSpace>>,
    /// Quotient coordinates in `Hom(T_i, T_j)` to block coordinates of the
    /// unshifted basis.
    to_block: Vec<Vec<Matrix>>,
    /// Radical shift of each basis element, in block order.
    shifts: Vec<Vec<Vec<Scalar>>>,
}

/// Default vertex labels `a, b, c, …`.
pub fn letter_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("v{i}") })
        .collect()
}

/// Builds `End(⊕ T_i)` from the pairwise Hom spaces. Summands must have
/// local endomorphism rings.
pub fn endomorphism_algebra(alg: &Algebra, summands: &[ProjComplex], labels: &[String]) -> Result<EndPackage> {
    let f = &alg.field;
    let n = summands.len();
    if labels.len() != n {
        return Err(Error::DimensionMismatch("one label per summand".into()));
    }
    let homs: Vec<Vec<HomSpace>> = (0..n)
        .map(|i| (0..n).map(|j| hom_space(alg, &summands[i], &summands[j])).collect())
        .collect();
    // basis of each Hom space in quotient coordinates, identity first
    let mut block_basis: Vec<Vec<Vec<Vector>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let h = &homs[i][j];
            let d = h.dim();
            let mut chosen: Vec<Vector> = Vec::new();
            if i == j {
                let id = h
                    .coords(alg, &ChainMap::identity(alg, &summands[i]))
                    .ok_or_else(|| Error::NotLocal(format!("summand {i} is zero")))?;
                if f.vec_is_zero(&id) {
                    return Err(Error::NotLocal(format!("summand {i} is zero in the homotopy category")));
                }
                chosen.push(id);
            }
            for r in 0..d {
                let u = f.unit_vec(d, r);
                let mut trial = chosen.clone();
                trial.push(u.clone());
                if Subspace::new(f, d, &trial).dim() == trial.len() {
                    chosen = trial;
                }
            }
            block_basis[i][j] = chosen;
        }
    }
    // global numbering: identities first, then blocks in (source, target) order
    let mut source = Vec::new();
    let mut target = Vec::new();
    let mut basis_labels = Vec::new();
    let mut coords: Vec<Vector> = Vec::new();
    let mut index: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        index[i][i].push(source.len());
        source.push(i);
        target.push(i);
        basis_labels.push(format!("e_{}", labels[i]));
        coords.push(block_basis[i][i][0].clone());
    }
    for i in 0..n {
        for j in 0..n {
            let skip = usize::from(i == j);
            let many = block_basis[i][j].len() - skip > 1;
            for (r, v) in block_basis[i][j].iter().enumerate().skip(skip) {
                index[i][j].push(source.len());
                source.push(i);
                target.push(j);
                basis_labels.push(if many {
                    format!("{}>{}#{}", labels[i], labels[j], r + 1 - skip)
                } else {
                    format!("{}>{}", labels[i], labels[j])
                });
                coords.push(v.clone());
            }
        }
    }
    let to_block: Vec<Vec<Matrix>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = homs[i][j].dim();
                    let cols: Vec<Vector> = index[i][j].iter().map(|&b| coords[b].clone()).collect();
                    Matrix::from_columns(d, &cols).inverse(f).expect("chosen vectors form a basis")
                })
                .collect()
        })
        .collect();
    let raw_reps: Vec<ChainMap> =
        (0..source.len()).map(|b| homs[source[b]][target[b]].combine(alg, &coords[b])).collect();
    let dim = source.len();
    let mut table = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            if source[a] != target[b] {
                continue;
            }
            let (i, j) = (source[b], target[a]);
            let comp = raw_reps[a].compose(alg, &raw_reps[b]);
            let q = homs[i][j].coords(alg, &comp).ok_or_else(|| {
                Error::AlgebraAxiom("composite of representatives is not a chain map".into())
            })?;
            let bc = to_block[i][j].apply(f, &q);
            table[a * dim + b] =
                bc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(s, c)| (index[i][j][s], c)).collect();
        }
    }
    let identity: Vec<usize> = (0..n).collect();
    let (algebra, shift) =
        Algebra::from_structure(f.clone(), labels.to_vec(), basis_labels, source, target, identity, table)?;
    for i in 0..n {
        for j in 0..n {
            debug_assert_eq!(algebra.block(i, j), &index[i][j][..]);
        }
    }
    let reps: Vec<ChainMap> = raw_reps
        .iter()
        .enumerate()
        .map(|(b, r)| {
            if shift[b].is_zero() {
                r.clone()
            } else {
                let s = algebra.source[b];
                r.add(f, &ChainMap::identity(alg, &summands[s]).scale(f, &f.neg(&shift[b])))
            }
        })
        .collect();
    let shifts = (0..n)
        .map(|i| (0..n).map(|j| index[i][j].iter().map(|&b| shift[b].clone()).collect()).collect())
        .collect();
    Ok(EndPackage { algebra, summands: summands.to_vec(), reps, homs, to_block, shifts })
}

impl EndPackage {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Block coordinates in `e_j B e_i` of the class of a map `T_i → T_j`.
    pub fn class_coords(&self, alg: &Algebra, i: usize, j: usize, m: &ChainMap) -> Result<Vector> {
        let f = &alg.field;
        let q = self.homs[i][j]
            .coords(alg, m)
            .ok_or_else(|| Error::LiftInconsistency(format!("map {i} -> {j} is not a chain map")))?;
        let mut v = self.to_block[i][j].apply(f, &q);
        if i == j {
            // old b = new b + shift·e
            let e = self.algebra.block_position(self.algebra.identity[i]);
            let mut extra = f.zero();
            for (c, s) in v.iter().zip(&self.shifts[i][j]) {
                if !s.is_zero() {
                    f.mul_add(&mut extra, c, s);
                }
            }
            v[e] = f.add(&v[e], &extra);
        }
        Ok(v)
    }

    /// The chain map represented by block coordinates of `e_j B e_i`.
    pub fn block_map(&self, alg: &Algebra, i: usize, j: usize, x: &[Scalar]) -> ChainMap {
        let f = &alg.field;
        let mut out = ChainMap::zero();
        for (c, &b) in x.iter().zip(self.algebra.block(i, j)) {
            if !c.is_zero() {
                out = out.add(f, &self.reps[b].scale(f, c));
            }
        }
        out
    }

    /// `Hom(T_i, T_j)` in the homotopy category.
    pub fn hom(&self, i: usize, j: usize) -> &HomSpace {
        &self.homs[i][j]
    }
}

/// `Hom(T, X) = ⊕_i Hom(T_i, X)` as a right `B`-module, `B` acting by
/// precomposition.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: Module,
    pub target: ProjComplex,
    spaces: Vec<HomSpace>,
}

impl HomModule {
    /// The element of `Hom(T_i, X)` given by a chain map.
    pub fn element(&self, alg: &Algebra, i: usize, m: &ChainMap) -> Option<Vector> {
        self.spaces[i].coords(alg, m)
    }

    pub fn basis_map(&self, alg: &Algebra, i: usize, r: usize) -> ChainMap {
        self.spaces[i].rep(alg, r)
    }
}

pub fn hom_into(alg: &Algebra, pkg: &EndPackage, x: &ProjComplex) -> Result<HomModule> {
    let spaces: Vec<HomSpace> = pkg.summands.iter().map(|t| hom_space(alg, t, x)).collect();
    let dims: Vec<usize> = spaces.iter().map(|h| h.dim()).collect();
    let b = &pkg.algebra;
    let reps: Vec<Vec<ChainMap>> = spaces.iter().map(|h| h.reps(alg)).collect();
    let mut acts = Vec::with_capacity(b.dim());
    for g in 0..b.dim() {
        let (i, j) = (b.source[g], b.target[g]);
        let cols: Vec<Vector> = reps[j]
            .iter()
            .map(|phi| {
                spaces[i]
                    .coords(alg, &phi.compose(alg, &pkg.reps[g]))
                    .ok_or_else(|| Error::LiftInconsistency("precomposite is not a chain map".into()))
            })
            .collect::<Result<_>>()?;
        acts.push(if cols.is_empty() { Matrix::zeros(dims[i], 0) } else { Matrix::from_columns(dims[i], &cols) });
    }
    let module = Module::new(b, dims, acts)?;
    Ok(HomModule { module, target: x.clone(), spaces })
}

/// `Hom(T, m): Hom(T, X) → Hom(T, Y)`.
pub fn hom_map(alg: &Algebra, hx: &HomModule, hy: &HomModule, m: &ChainMap) -> Result<ModuleMap> {
    let blocks = (0..hx.spaces.len())
        .map(|i| {
            let cols: Vec<Vector> = (0..hx.spaces[i].dim())
                .map(|r| {
                    hy.element(alg, i, &m.compose(alg, &hx.basis_map(alg, i, r)))
                        .ok_or_else(|| Error::LiftInconsistency("image is not a chain map".into()))
                })
                .collect::<Result<_>>()?;
            Ok(if cols.is_empty() {
                Matrix::zeros(hy.spaces[i].dim(), 0)
            } else {
                Matrix::from_columns(hy.spaces[i].dim(), &cols)
            })
        })
        .collect::<Result<_>>()?;
    Ok(ModuleMap { blocks })
}

fn repeated(mults: &[usize]) -> Vec<usize> {
    mults.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat(i).take(m)).collect()
}

/// `Hom(T, m)` for a map between literal sums of summands, as a matrix of
/// elements of `B`.
pub fn hom_pmap(alg: &Algebra, pkg: &EndPackage, src_mults: &[usize], tgt_mults: &[usize], m: &ChainMap) -> Result<PMap> {
    let src = repeated(src_mults);
    let tgt = repeated(tgt_mults);
    let sp: Vec<&ProjComplex> = src.iter().map(|&i| &pkg.summands[i]).collect();
    let tp: Vec<&ProjComplex> = tgt.iter().map(|&i| &pkg.summands[i]).collect();
    let mut out = PMap::zero(&pkg.algebra, &src, &tgt);
    for (t, &j) in tgt.iter().enumerate() {
        for (s, &i) in src.iter().enumerate() {
            let c = sum_component(&sp, &tp, m, s, t);
            out.entries[t][s] = pkg.class_coords(alg, i, j, &c)?;
        }
    }
    Ok(out)
}

/// `S = Cone(Hom(T, f))`, with `Hom(T, T′)` in degree −1.
pub fn construct_s(alg: &Algebra, pkg: &EndPackage, tri: &ApproxTriangle) -> Result<ProjComplex> {
    let d = hom_pmap(alg, pkg, &tri.t_prime_mults, &tri.t_double_mults, &tri.f)?;
    let s = ProjComplex::two_term(d.src.clone(), d.tgt.clone(), d);
    s.validate(&pkg.algebra)?;
    Ok(s)
}

/// A linear map between algebras given on bases.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    /// Column `a` is the image of basis element `a`.
    pub matrix: Matrix,
}

impl AlgebraHom {
    pub fn image(&self, a: usize) -> Vector {
        self.matrix.col(a)
    }

    pub fn images(&self) -> Vec<Vector> {
        self.matrix.col_vecs()
    }

    pub fn apply(&self, src: &Algebra, x: &[Scalar]) -> Vector {
        self.matrix.apply(&src.field, x)
    }

    pub fn rank(&self, src: &Algebra) -> usize {
        self.matrix.rank(&src.field)
    }

    pub fn is_surjective(&self, src: &Algebra) -> bool {
        self.rank(src) == self.matrix.rows
    }

    pub fn is_injective(&self, src: &Algebra) -> bool {
        self.rank(src) == self.matrix.cols
    }

    pub fn kernel(&self, src: &Algebra) -> Vec<Vector> {
        linalg::kernel(&src.field, &self.matrix)
    }

    pub fn is_unital(&self, src: &Algebra, tgt: &Algebra) -> bool {
        self.apply(src, &src.one()) == tgt.one()
    }

    /// First basis pair on which multiplicativity fails.
    pub fn multiplicativity_failure(&self, src: &Algebra, tgt: &Algebra) -> Option<(usize, usize)> {
        let imgs = self.images();
        for a in 0..src.dim() {
            for b in 0..src.dim() {
                let lhs = self.apply(src, &src.mul_basis(a, b));
                if lhs != tgt.mul(&imgs[a], &imgs[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// The endomorphism of the stalk complex `A` given by left multiplication
/// with basis element `a`.
fn regular_endomorphism(alg: &Algebra, a: usize) -> ChainMap {
    let vs: Vec<usize> = (0..alg.num_vertices()).collect();
    let mut p = PMap::zero(alg, &vs, &vs);
    let (i, j) = (alg.source[a], alg.target[a]);
    p.entries[j][i] = alg.field.unit_vec(alg.block_dim(i, j), alg.block_position(a));
    let mut m = ChainMap::zero();
    m.comps.insert(0, p);
    m
}

/// Solution set `{x : Σ x_r M_r ≡ rhs}` of a system over a Hom space basis:
/// particular solution and kernel.
fn solve_in(alg: &Algebra, cols: Vec<Vector>, rows: usize, rhs: &Vector) -> Result<(Vector, Vec<Vector>)> {
    let f = &alg.field;
    let n = cols.len();
    if n == 0 {
        return if f.vec_is_zero(rhs) {
            Ok((vec![], vec![]))
        } else {
            Err(Error::LiftInconsistency("no maps available to complete the square".into()))
        };
    }
    if rows == 0 {
        return Ok((f.zero_vec(n), (0..n).map(|r| f.unit_vec(n, r)).collect()));
    }
    let m = Matrix::from_columns(rows, &cols);
    let out = linalg::solve_and_kernel(f, &m, Some(rhs))?;
    let x = out
        .particular_solution
        .ok_or_else(|| Error::LiftInconsistency("square cannot be completed".into()))?;
    Ok((x, out.kernel_basis))
}

/// Lifts of `a ∈ A` to a morphism of triangles `(a, b, c, Σa)`: particular
/// solutions and kernels in coordinates of `End(T′)` and `End(T″)`.
#[derive(Clone, Debug)]
pub struct TriangleLift {
    pub b: Vector,
    pub b_kernel: Vec<Vector>,
    pub c: Vector,
    pub c_kernel: Vec<Vector>,
}

/// Hom spaces reused by every lift.
struct LiftSpaces {
    end_prime: HomSpace,
    end_double: HomSpace,
    a_to_prime: HomSpace,
    prime_to_double: HomSpace,
    double_to_sa: HomSpace,
}

impl LiftSpaces {
    fn new(alg: &Algebra, tri: &ApproxTriangle) -> LiftSpaces {
        LiftSpaces {
            end_prime: hom_space(alg, &tri.t_prime, &tri.t_prime),
            end_double: hom_space(alg, &tri.t_double, &tri.t_double),
            a_to_prime: hom_space(alg, &tri.a, &tri.t_prime),
            prime_to_double: hom_space(alg, &tri.t_prime, &tri.t_double),
            double_to_sa: hom_space(alg, &tri.t_double, &tri.a.shift(&alg.field, 1)),
        }
    }
}

fn class_of(alg: &Algebra, h: &HomSpace, m: &ChainMap) -> Result<Vector> {
    h.coords(alg, m).ok_or_else(|| Error::LiftInconsistency("composite is not a chain map".into()))
}

/// `b` with `b u = u a` in `Hom(A, T′)`.
fn solve_b(alg: &Algebra, tri: &ApproxTriangle, sp: &LiftSpaces, alpha: &ChainMap) -> Result<(Vector, Vec<Vector>)> {
    let cols: Vec<Vector> = sp
        .end_prime
        .reps(alg)
        .iter()
        .map(|r| class_of(alg, &sp.a_to_prime, &r.compose(alg, &tri.u)))
        .collect::<Result<_>>()?;
    let rhs = class_of(alg, &sp.a_to_prime, &tri.u.compose(alg, alpha))?;
    solve_in(alg, cols, sp.a_to_prime.dim(), &rhs)
}

/// `c` with `c f = f b` in `Hom(T′, T″)` and `w c = Σa w` in `Hom(T″, ΣA)`.
fn solve_c(
    alg: &Algebra,
    tri: &ApproxTriangle,
    sp: &LiftSpaces,
    alpha: &ChainMap,
    b: &[Scalar],
) -> Result<(Vector, Vec<Vector>)> {
    let b_map = sp.end_prime.combine(alg, b);
    let cols: Vec<Vector> = sp
        .end_double
        .reps(alg)
        .iter()
        .map(|r| {
            let mut v = class_of(alg, &sp.prime_to_double, &r.compose(alg, &tri.f))?;
            v.extend(class_of(alg, &sp.double_to_sa, &tri.w.compose(alg, r))?);
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let mut rhs = class_of(alg, &sp.prime_to_double, &tri.f.compose(alg, &b_map))?;
    rhs.extend(class_of(alg, &sp.double_to_sa, &alpha.shift(1).compose(alg, &tri.w))?);
    solve_in(alg, cols, sp.prime_to_double.dim() + sp.double_to_sa.dim(), &rhs)
}

fn lift_with(alg: &Algebra, tri: &ApproxTriangle, sp: &LiftSpaces, a: usize) -> Result<TriangleLift> {
    let alpha = regular_endomorphism(alg, a);
    let (b, b_kernel) = solve_b(alg, tri, sp, &alpha)?;
    let (c, c_kernel) = solve_c(alg, tri, sp, &alpha, &b)?;
    Ok(TriangleLift { b, b_kernel, c, c_kernel })
}

/// The algebra map `π: A → Ā = End(S)` and everything needed to evaluate it.
#[derive(Clone, Debug)]
pub struct PiMap {
    /// Coordinates in `Hom_{K^b(proj B)}(S, S)` of `π(a)` for each basis element.
    pub on_end_s: Matrix,
    /// `π` written in the basis of `Ā`.
    pub hom: AlgebraHom,
    pub lifts: Vec<TriangleLift>,
}

/// The endomorphism of `S` induced by a lift `(b, c)`.
fn induced_on_s(
    alg: &Algebra,
    pkg: &EndPackage,
    tri: &ApproxTriangle,
    sp: &LiftSpaces,
    s: &ProjComplex,
    b: &[Scalar],
    c: &[Scalar],
) -> Result<ChainMap> {
    let bm = sp.end_prime.combine(alg, b);
    let cm = sp.end_double.combine(alg, c);
    let mut out = ChainMap::zero();
    if !s.term(-1).is_empty() {
        out.comps.insert(-1, hom_pmap(alg, pkg, &tri.t_prime_mults, &tri.t_prime_mults, &bm)?);
    }
    if !s.term(0).is_empty() {
        out.comps.insert(0, hom_pmap(alg, pkg, &tri.t_double_mults, &tri.t_double_mults, &cm)?);
    }
    if !out.is_chain_map(&pkg.algebra, s, s) {
        return Err(Error::LiftInconsistency("lifted pair does not commute with the differential of S".into()));
    }
    Ok(out)
}

/// Everything attached to a 2-term silting complex `T`.
#[derive(Clone, Debug)]
pub struct Induced {
    pub t: SiltingObject,
    pub triangle: ApproxTriangle,
    /// `B = End(T)`
    pub end_t: EndPackage,
    /// `S` over `B` as constructed, before reduction.
    pub s: ProjComplex,
    pub s_summands: Vec<ProjComplex>,
    /// `S → ⊕ s_summands` and back.
    pub s_iso: (ChainMap, ChainMap),
    pub s_object: SiltingObject,
    /// `Ā = End(S)`, vertices the summands of `S`.
    pub end_s: EndPackage,
    pub pi: PiMap,
    pub hom_s_neg1: usize,
    pub annihilator_dim: usize,
}

impl Induced {
    pub fn b(&self) -> &Algebra {
        &self.end_t.algebra
    }

    pub fn abar(&self) -> &Algebra {
        &self.end_s.algebra
    }

    pub fn s_is_tilting(&self) -> bool {
        self.s_object.is_silting() && self.hom_s_neg1 == 0
    }
}

fn pi_map(
    alg: &Algebra,
    bz_t: &EndPackage,
    tri: &ApproxTriangle,
    s: &ProjComplex,
    s_parts: &[ProjComplex],
    iso: &(ChainMap, ChainMap),
    end_s: &EndPackage,
) -> Result<PiMap> {
    let b_alg = &bz_t.algebra;
    let sp = LiftSpaces::new(alg, tri);
    let end_s_space = hom_space(b_alg, s, s);
    let parts: Vec<&ProjComplex> = s_parts.iter().collect();
    let mut on_end_s = Vec::new();
    let mut on_abar = Vec::new();
    let mut lifts = Vec::new();
    for a in 0..alg.dim() {
        let lift = lift_with(alg, tri, &sp, a)?;
        let m = induced_on_s(alg, bz_t, tri, &sp, s, &lift.b, &lift.c)?;
        on_end_s.push(end_s_space.coords(b_alg, &m).expect("checked chain map"));
        let moved = iso.0.compose(b_alg, &m).compose(b_alg, &iso.1);
        let mut v = vec![b_alg.field.zero(); end_s.dim()];
        for si in 0..parts.len() {
            for ti in 0..parts.len() {
                let c = sum_component(&parts, &parts, &moved, si, ti);
                let x = end_s.class_coords(b_alg, si, ti, &c)?;
                for (val, &g) in x.into_iter().zip(end_s.algebra.block(si, ti)) {
                    v[g] = val;
                }
            }
        }
        on_abar.push(v);
        lifts.push(lift);
    }
    let rows = end_s_space.dim();
    let on_end_s = if on_end_s.is_empty() { Matrix::zeros(rows, 0) } else { Matrix::from_columns(rows, &on_end_s) };
    let matrix = Matrix::from_columns(end_s.dim(), &on_abar);
    Ok(PiMap { on_end_s, hom: AlgebraHom { matrix }, lifts })
}

/// Checks that `π(a)` does not depend on the choice of lift: offsetting
/// `b` by its kernel (with `c` re-solved) or `c` by its kernel induces the
/// same class in `End(S)`.
pub fn lift_independence(alg: &Algebra, bz: &Induced) -> Result<bool> {
    let f = &alg.field;
    let sp = LiftSpaces::new(alg, &bz.triangle);
    let end_s = hom_space(bz.b(), &bz.s, &bz.s);
    let class = |b: &[Scalar], c: &[Scalar]| -> Result<Vector> {
        let m = induced_on_s(alg, &bz.end_t, &bz.triangle, &sp, &bz.s, b, c)?;
        Ok(end_s.coords(bz.b(), &m).expect("chain map"))
    };
    for (a, lift) in bz.pi.lifts.iter().enumerate() {
        let base = class(&lift.b, &lift.c)?;
        for kc in &lift.c_kernel {
            if class(&lift.b, &f.vec_add(&lift.c, kc))? != base {
                return Ok(false);
            }
        }
        let alpha = regular_endomorphism(alg, a);
        for kb in &lift.b_kernel {
            let b2 = f.vec_add(&lift.b, kb);
            let (c2, _) = solve_c(alg, &bz.triangle, &sp, &alpha, &b2)?;
            if class(&b2, &c2)? != base {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `{g ∈ Hom(T″, T′) : g f = 0 and f g = 0}` in the homotopy category.
pub fn annihilator_space(alg: &Algebra, tri: &ApproxTriangle) -> Vec<ChainMap> {
    let h = hom_space(alg, &tri.t_double, &tri.t_prime);
    if h.dim() == 0 {
        return vec![];
    }
    let e1 = hom_space(alg, &tri.t_prime, &tri.t_prime);
    let e2 = hom_space(alg, &tri.t_double, &tri.t_double);
    let reps = h.reps(alg);
    let cols: Vec<Vector> = reps
        .iter()
        .map(|g| {
            let mut v = e1.coords(alg, &g.compose(alg, &tri.f)).expect("chain map");
            v.extend(e2.coords(alg, &tri.f.compose(alg, g)).expect("chain map"));
            v
        })
        .collect();
    let rows = e1.dim() + e2.dim();
    let ker = if rows == 0 {
        (0..h.dim()).map(|r| alg.field.unit_vec(h.dim(), r)).collect()
    } else {
        linalg::kernel(&alg.field, &Matrix::from_columns(rows, &cols))
    };
    ker.iter().map(|k| h.combine(alg, k)).collect()
}

/// Runs the whole construction for a 2-term silting `T`.
pub fn induce(alg: &Algebra, t: &SiltingObject, opts: SearchOpts) -> Result<Induced> {
    if !t.is_two_term() {
        return Err(Error::NotTwoTerm("T must be concentrated in degrees -1 and 0".into()));
    }
    let triangle = t
        .triangle
        .clone()
        .ok_or_else(|| Error::NotInAdd("T is not silting: no approximation triangle".into()))?;
    let end_t = endomorphism_algebra(alg, &t.summands, &letter_labels(t.len()))?;
    let b = &end_t.algebra;
    let s = construct_s(alg, &end_t, &triangle)?;
    let (s_summands, s_iso) = decompose_two_term(b, &s, opts.seed, opts.budget)?;
    let s_object = SiltingObject::new(b, s_summands.clone(), opts)?;
    let labels: Vec<String> = (0..s_summands.len()).map(|i| format!("s{}", i + 1)).collect();
    let end_s = endomorphism_algebra(b, &s_summands, &labels)?;
    let pi = pi_map(alg, &end_t, &triangle, &s, &s_summands, &s_iso, &end_s)?;
    let hom_s_neg1 = hom_complexes(b, &s, &s, -1).dim();
    let annihilator_dim = annihilator_space(alg, &triangle).len();
    Ok(Induced { t: t.clone(), triangle, end_t, s, s_summands, s_iso, s_object, end_s, pi, hom_s_neg1, annihilator_dim })
}

/// The sufficient conditions for `S` to be tilting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingConditions {
    pub hereditary: bool,
    /// `H^{-1}(T′) = 0`, equivalently `pd H^0(T′) ≤ 1`.
    pub h_minus1_t_prime_zero: bool,
    pub t_tilting: bool,
    /// `T` is a one-step left mutation of `A` or right mutation of `ΣA`.
    pub mutation_of_a: bool,
    /// Supplied by the user, never detected.
    pub assume_symmetric: bool,
}

impl TiltingConditions {
    /// Whether some condition predicts that `S` is tilting.
    pub fn predicts_tilting(&self) -> bool {
        self.hereditary
            || self.h_minus1_t_prime_zero
            || self.t_tilting
            || self.mutation_of_a
            || (self.assume_symmetric && self.t_tilting)
    }
}

/// Whether `T` is a one-step left mutation of `A` or right mutation of `ΣA`.
pub fn is_mutation_of_regular(alg: &Algebra, t: &SiltingObject, opts: SearchOpts) -> bool {
    let starts = [(SiltingObject::regular(alg), Direction::Left), (SiltingObject::shifted_regular(alg), Direction::Right)];
    starts.iter().any(|(start, dir)| {
        (0..start.len()).any(|k| mutate(alg, start, k, *dir, opts).is_ok_and(|m| m.result.equivalent(alg, t, opts)))
    })
}

pub fn tilting_conditions(
    alg: &Algebra,
    t: &SiltingObject,
    tri: &ApproxTriangle,
    assume_symmetric: bool,
    opts: SearchOpts,
) -> TiltingConditions {
    TiltingConditions {
        hereditary: alg.is_hereditary(),
        h_minus1_t_prime_zero: fdmodule::homology_of_complex(alg, &tri.t_prime, -1).is_zero(),
        t_tilting: t.is_tilting(alg),
        mutation_of_a: is_mutation_of_regular(alg, t, opts),
        assume_symmetric,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests_support::*;
    use crate::silting::enumerate_2silt;

    fn example_t(a: &Algebra) -> SiltingObject {
        let ts = vec![
            ProjComplex::stalk(vec![0], 0),
            ProjComplex::two_term(vec![1], vec![0], PMap::single(1, 0, vec![q(1)])),
            ProjComplex::stalk(vec![2], -1),
        ];
        SiltingObject::new(a, ts, SearchOpts::default()).unwrap()
    }

    #[test]
    fn end_of_regular_is_a() {
        let a = a3_zero_rel();
        let t = SiltingObject::regular(&a);
        let pkg = endomorphism_algebra(&a, &t.summands, &letter_labels(3)).unwrap();
        assert_eq!(pkg.dim(), a.dim());
        assert_eq!(pkg.algebra.peirce_dims(), a.peirce_dims());
        pkg.algebra.verify_axioms().unwrap();
    }

    #[test]
    fn example_b_dimension() {
        let a = a3_zero_rel();
        let t = example_t(&a);
        let pkg = endomorphism_algebra(&a, &t.summands, &letter_labels(3)).unwrap();
        assert_eq!(pkg.dim(), 5);
        // T1 -> T2 and T3 -> T2
        let pd = pkg.algebra.peirce_dims();
        assert_eq!(pd[0][1], 1);
        assert_eq!(pd[2][1], 1);
        assert!(pkg.algebra.is_hereditary());
    }

    #[test]
    fn hom_into_summand_is_projective() {
        let a = a3_zero_rel();
        let t = example_t(&a);
        let pkg = endomorphism_algebra(&a, &t.summands, &letter_labels(3)).unwrap();
        for j in 0..3 {
            let h = hom_into(&a, &pkg, &t.summands[j]).unwrap();
            let p = Module::projective(&pkg.algebra, j);
            assert!(fdmodule::is_isomorphic(&pkg.algebra, &h.module, &p, 0, 1000).is_iso());
        }
        let h = hom_into(&a, &pkg, &ProjComplex::stalk(vec![2], -1)).unwrap();
        assert_eq!(h.module.dim(), 1);
        assert!(hom_into(&a, &pkg, &ProjComplex::zero()).unwrap().module.is_zero());
    }

    #[test]
    fn example_pipeline() {
        let a = a3_zero_rel();
        let t = example_t(&a);
        let bz = induce(&a, &t, SearchOpts::default()).unwrap();
        assert!(bz.s_object.is_silting());
        assert_eq!(bz.hom_s_neg1, 0);
        assert_eq!(bz.annihilator_dim, 0);
        assert!(bz.pi.hom.is_surjective(&a));
        assert!(bz.pi.hom.is_unital(&a, bz.abar()));
        assert_eq!(bz.pi.hom.multiplicativity_failure(&a, bz.abar()), None);
        assert!(lift_independence(&a, &bz).unwrap());
    }

    #[test]
    fn trivial_pipelines() {
        let a = a3_zero_rel();
        for t in [SiltingObject::regular(&a), SiltingObject::shifted_regular(&a)] {
            let bz = induce(&a, &t, SearchOpts::default()).unwrap();
            assert!(bz.pi.hom.is_surjective(&a) && bz.pi.hom.is_injective(&a));
            assert_eq!(bz.annihilator_dim, 0);
            assert!(bz.s_is_tilting());
        }
        let bz = induce(&a, &SiltingObject::regular(&a), SearchOpts::default()).unwrap();
        assert_eq!(bz.s.lo, -1);
        assert!(bz.s.term(0).is_empty());
        let bz = induce(&a, &SiltingObject::shifted_regular(&a), SearchOpts::default()).unwrap();
        assert!(bz.s.term(-1).is_empty());
    }

    #[test]
    fn corpus_consistency() {
        let a = truncated_loop(3);
        let e = enumerate_2silt(&a, 10, SearchOpts::default());
        assert_eq!(e.classes.len(), 2);
        for t in &e.classes {
            let bz = induce(&a, t, SearchOpts::default()).unwrap();
            assert_eq!(bz.pi.hom.is_injective(&a), t.is_tilting(&a));
            assert_eq!(bz.hom_s_neg1, bz.annihilator_dim);
        }
    }

    #[test]
    fn conditions() {
        let opts = SearchOpts::default();
        let a = a3_zero_rel();
        let t = example_t(&a);
        let c = tilting_conditions(&a, &t, t.triangle.as_ref().unwrap(), false, opts);
        assert!(!c.hereditary && !c.mutation_of_a);
        let m = mutate(&a, &SiltingObject::regular(&a), 0, Direction::Left, opts).unwrap().result;
        assert!(is_mutation_of_regular(&a, &m, opts));
    }
}
