//! The functors `F = Hom(T, ?)`, `F′ = Hom(T, Σ?)` and their shifts, the
//! functors `G`, `G′` back from `mod B`, the torsion classes they define, and
//! the equivalences between them.

use crate::algebra::Algebra;
use crate::induced::{EndPackage, Induced};
use crate::complex::{cone, sum_map, ChainMap, PMap, ProjComplex};
use crate::error::{Error, Result};
use crate::fdmodule::{
    self, hom, homology_of_complex, is_isomorphic, projective_resolution, quotient, submodule_module, trace, Module,
    ModuleMap,
};
use crate::linalg::{Matrix, Subquotient, Vector};
use crate::silting::SearchOpts;

/// Matrix of `Hom(X^{k+1}, M) → Hom(X^k, M)`, `g ↦ g ∘ d`, where a map out
/// of `⊕ P_{v_s}` is the tuple of images of the idempotents.
pub fn precompose_matrix(alg: &Algebra, m: &Module, d: &PMap) -> Matrix {
    let rows: usize = d.src.iter().map(|&v| m.dims[v]).sum();
    let cols: usize = d.tgt.iter().map(|&w| m.dims[w]).sum();
    let mut out = Matrix::zeros(rows, cols);
    let mut ro = 0;
    for (s, &v) in d.src.iter().enumerate() {
        let mut co = 0;
        for (t, &w) in d.tgt.iter().enumerate() {
            let x = &d.entries[t][s];
            if !alg.field.vec_is_zero(x) {
                let b = m.act_block(alg, v, w, x);
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        out.set(ro + r, co + c, b.get(r, c).clone());
                    }
                }
            }
            co += m.dims[w];
        }
        ro += m.dims[v];
    }
    out
}

/// `Hom_{K(A)}(X, Σ^j M)` for a complex of projectives `X` and a module `M`:
/// maps `X^{-j} → M` killing `d^{-j-1}`, modulo those factoring through
/// `d^{-j}`.
pub fn hom_to_module(alg: &Algebra, x: &ProjComplex, m: &Module, j: i32) -> Subquotient {
    let f = &alg.field;
    let term = x.term(-j);
    let n: usize = term.iter().map(|&v| m.dims[v]).sum();
    let incoming = precompose_matrix(alg, m, &x.diff(alg, -j - 1));
    let cycles = if incoming.rows == 0 {
        (0..n).map(|r| f.unit_vec(n, r)).collect()
    } else {
        crate::linalg::kernel(f, &incoming)
    };
    let outgoing = precompose_matrix(alg, m, &x.diff(alg, -j));
    let boundaries = outgoing.col_vecs();
    Subquotient::new(f, n, &cycles, &boundaries)
}

/// `Hom(X, Σ^j M)` for a family `X = ⊕ X_i` as a right module over
/// `End(X)`, acting by precomposition.
#[derive(Clone, Debug)]
pub struct FunctorImage {
    pub module: Module,
    pub shift: i32,
    pub spaces: Vec<Subquotient>,
}

pub fn functor_image(alg: &Algebra, pkg: &EndPackage, m: &Module, j: i32) -> Result<FunctorImage> {
    let f = &alg.field;
    let spaces: Vec<Subquotient> = pkg.summands.iter().map(|x| hom_to_module(alg, x, m, j)).collect();
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    let e = &pkg.algebra;
    let acts = (0..e.dim())
        .map(|g| {
            let (i, i2) = (e.source[g], e.target[g]);
            let (xi, xi2) = (&pkg.summands[i], &pkg.summands[i2]);
            let comp = pkg.reps[g].comp(alg, xi, xi2, -j);
            let pre = precompose_matrix(alg, m, &comp);
            let cols: Vec<Vector> = (0..dims[i2])
                .map(|r| {
                    let v = pre.apply(f, spaces[i2].rep(r));
                    spaces[i].coords(f, &v).ok_or_else(|| Error::Torsion("precomposite is not a cycle".into()))
                })
                .collect::<Result<_>>()?;
            Ok(if cols.is_empty() { Matrix::zeros(dims[i], 0) } else { Matrix::from_columns(dims[i], &cols) })
        })
        .collect::<Result<Vec<Matrix>>>()?;
    Ok(FunctorImage { module: Module::new(e, dims, acts)?, shift: j, spaces })
}

/// The map `Hom(X, Σ^j M) → Hom(X, Σ^j N)` induced by `φ: M → N`.
pub fn functor_map(
    alg: &Algebra,
    pkg: &EndPackage,
    fm: &FunctorImage,
    fn_: &FunctorImage,
    phi: &ModuleMap,
) -> Result<ModuleMap> {
    let f = &alg.field;
    let blocks = pkg
        .summands
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let term = x.term(-fm.shift);
            let cols: Vec<Vector> = (0..fm.spaces[i].dim())
                .map(|r| {
                    let v = fm.spaces[i].rep(r);
                    let mut out = Vec::new();
                    let mut off = 0;
                    for &w in term {
                        let d = phi.blocks[w].cols;
                        out.extend(phi.blocks[w].apply(f, &v[off..off + d]));
                        off += d;
                    }
                    fn_.spaces[i].coords(f, &out).ok_or_else(|| Error::Torsion("image is not a cycle".into()))
                })
                .collect::<Result<_>>()?;
            let rows = fn_.spaces[i].dim();
            Ok(if cols.is_empty() { Matrix::zeros(rows, 0) } else { Matrix::from_columns(rows, &cols) })
        })
        .collect::<Result<_>>()?;
    Ok(ModuleMap { blocks })
}

/// `F(M) = Hom(T, M)` over `B`.
pub fn functor_f(alg: &Algebra, bz: &Induced, m: &Module) -> Result<Module> {
    Ok(functor_image(alg, &bz.end_t, m, 0)?.module)
}

/// `F′(M) = Hom(T, ΣM)` over `B`.
pub fn functor_f_prime(alg: &Algebra, bz: &Induced, m: &Module) -> Result<Module> {
    Ok(functor_image(alg, &bz.end_t, m, 1)?.module)
}

/// `F^i(M) = Hom(T, Σ^i M)` for a family `T` of any width.
pub fn functor_shift(alg: &Algebra, pkg: &EndPackage, m: &Module, i: i32) -> Result<Module> {
    Ok(functor_image(alg, pkg, m, i)?.module)
}

/// `(G(Y), G′(Y))`. A presentation `Q_1 → Q_0` of `Y` transported along
/// `e_j B ↦ T_j` has cone `C` with `Hom(T, C) = Y` and `Hom(T, Σ^i C) = 0`
/// for `i > 0`, so its truncation into the heart of `T` is the object `Z`
/// representing `Y`. Then `H^0(Z) = H^0(C)` and `H^{-1}(Z)` is the
/// torsion-free part of `H^{-1}(C)`.
pub fn functors_g(alg: &Algebra, pkg: &EndPackage, y: &Module) -> Result<(Module, Module)> {
    let b = &pkg.algebra;
    if y.is_zero() {
        return Ok((Module::zero(alg), Module::zero(alg)));
    }
    let (terms, diffs) = projective_resolution(b, y, 1);
    let parts: Vec<Vec<&ProjComplex>> =
        terms.iter().map(|t| t.iter().map(|&v| &pkg.summands[v]).collect()).collect();
    let sums: Vec<ProjComplex> = parts.iter().map(|p| ProjComplex::direct_sum(alg, p)).collect();
    let d = &diffs[0];
    let comps: Vec<Vec<ChainMap>> = (0..d.tgt.len())
        .map(|t| (0..d.src.len()).map(|s| pkg.block_map(alg, d.src[s], d.tgt[t], &d.entries[t][s])).collect())
        .collect();
    let d1 = sum_map(alg, &parts[1], &parts[0], &comps);
    let c = cone(alg, &sums[1], &sums[0], &d1).z;
    c.validate(alg)?;
    let h1 = homology_of_complex(alg, &c, -1);
    let gen = h0(alg, &pkg.summands);
    let (free, _) = quotient(alg, &h1, &trace(alg, std::slice::from_ref(&gen), &h1))?;
    Ok((homology_of_complex(alg, &c, 0), free))
}

/// Membership of an `A`-module in the torsion pair of `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AMembership {
    /// `Hom(T, ΣM) = 0`
    pub torsion: bool,
    /// `Hom(T, M) = 0`
    pub torsion_free: bool,
}

pub fn a_membership(alg: &Algebra, ts: &[ProjComplex], m: &Module) -> AMembership {
    let dim = |j| ts.iter().map(|t| hom_to_module(alg, t, m, j).dim()).sum::<usize>();
    AMembership { torsion: dim(1) == 0, torsion_free: dim(0) == 0 }
}

/// Membership of a `B`-module in the four classes on the `B` side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BMembership {
    /// `G(Y) = 0`
    pub x_t: bool,
    /// `G′(Y) = 0`
    pub y_t: bool,
    /// `Hom(S, ΣY) = 0`
    pub t_s: bool,
    /// `Hom(S, Y) = 0`
    pub f_s: bool,
}

pub fn b_membership(alg: &Algebra, bz: &Induced, y: &Module) -> Result<BMembership> {
    let (g, g1) = functors_g(alg, &bz.end_t, y)?;
    let b = bz.b();
    let m = a_membership(b, &bz.s_summands, y);
    Ok(BMembership { x_t: g.is_zero(), y_t: g1.is_zero(), t_s: m.torsion, f_s: m.torsion_free })
}

/// `H^0(T)`, the support τ-tilting module of `T`.
pub fn h0(alg: &Algebra, ts: &[ProjComplex]) -> Module {
    let total = ProjComplex::direct_sum(alg, &ts.iter().collect::<Vec<_>>());
    homology_of_complex(alg, &total, 0)
}

/// `0 → tM → M → M/tM → 0` with `tM` the trace of `H^0(T)`.
#[derive(Clone, Debug)]
pub struct TorsionDecomposition {
    pub torsion_part: Module,
    pub inclusion: ModuleMap,
    pub free_part: Module,
    pub projection: ModuleMap,
}

pub fn torsion_decompose(alg: &Algebra, ts: &[ProjComplex], m: &Module) -> Result<TorsionDecomposition> {
    let gen = h0(alg, ts);
    let sub = trace(alg, std::slice::from_ref(&gen), m);
    let (tm, incl) = submodule_module(alg, m, &sub)?;
    let (fm, proj) = quotient(alg, m, &sub)?;
    if !a_membership(alg, ts, &tm).torsion {
        return Err(Error::Torsion("trace of H^0(T) is not torsion".into()));
    }
    if !a_membership(alg, ts, &fm).torsion_free {
        return Err(Error::Torsion("quotient by the trace of H^0(T) is not torsion-free".into()));
    }
    if !proj.compose(&alg.field, &incl).is_zero() || tm.dim() + fm.dim() != m.dim() {
        return Err(Error::Torsion("decomposition is not exact".into()));
    }
    Ok(TorsionDecomposition { torsion_part: tm, inclusion: incl, free_part: fm, projection: proj })
}

/// Classes `𝒯^i = {M : Hom(T, Σ^j M) = 0 for j ≠ i}` for `T` of width `n`.
pub fn nterm_classes(alg: &Algebra, ts: &[ProjComplex], m: &Module) -> Vec<bool> {
    let n = crate::silting::width(ts).max(1);
    let dims: Vec<usize> =
        (0..n).map(|j| ts.iter().map(|t| hom_to_module(alg, t, m, j).dim()).sum()).collect();
    (0..n as usize).map(|i| dims.iter().enumerate().all(|(j, &d)| j == i || d == 0)).collect()
}

/// A labelled test module.
#[derive(Clone, Debug)]
pub struct TestModule {
    pub name: String,
    pub module: Module,
}

/// Projectives, their radicals, simples and their pairwise-distinct
/// isoclasses. Tops of projectives are the simples.
pub fn standard_test_modules(alg: &Algebra, opts: SearchOpts) -> Vec<TestModule> {
    let mut out: Vec<TestModule> = Vec::new();
    let push = |name: String, m: Module, out: &mut Vec<TestModule>| {
        if m.is_zero() {
            return;
        }
        if out.iter().any(|t| t.module.dims == m.dims && is_isomorphic(alg, &t.module, &m, opts.seed, opts.budget).is_iso()) {
            return;
        }
        out.push(TestModule { name, module: m });
    };
    let n = alg.num_vertices();
    for v in 0..n {
        push(format!("P{}", alg.vertex_labels[v]), Module::projective(alg, v), &mut out);
    }
    for v in 0..n {
        push(format!("S{}", alg.vertex_labels[v]), Module::simple(alg, v), &mut out);
    }
    for v in 0..n {
        let p = Module::projective(alg, v);
        let (r, _) = submodule_module(alg, &p, &fdmodule::radical(alg, &p)).expect("radical is a submodule");
        for (k, part) in fdmodule::decompose(alg, &r).unwrap_or_default().into_iter().enumerate() {
            push(format!("radP{}.{k}", alg.vertex_labels[v]), part, &mut out);
        }
    }
    out
}

/// Per-module results of the equivalence checks on the `A` side.
#[derive(Clone, Debug)]
pub struct AModuleReport {
    pub name: String,
    pub dim: usize,
    pub membership: AMembership,
    /// `(dim tM, dim M/tM)`
    pub decomposition: Option<(usize, usize)>,
    /// `dim F(M) = dim Hom(H^0(T), M)`
    pub f_matches_hom_h0: bool,
    /// On `𝒯_T`: `G F M ≅ M` and `F M ∈ 𝒴_T`; on `ℱ_T`: `G′ F′ M ≅ M` and
    /// `F′ M ∈ 𝒳_T`.
    pub roundtrip: Option<bool>,
    /// On `𝒯_T`: `π^* Hom(S, Σ F M) ≅ M`; on `ℱ_T`: `π^* Hom(S, F′ M) ≅ M`.
    pub pi_roundtrip: Option<bool>,
}

/// Per-module results on the `B` side.
#[derive(Clone, Debug)]
pub struct BModuleReport {
    pub name: String,
    pub dim: usize,
    pub membership: BMembership,
    /// `𝒯_S = 𝒳_T` and `ℱ_S = 𝒴_T` at this module.
    pub tables_agree: bool,
    /// On `𝒴_T`: `F G Y ≅ Y`; on `𝒳_T`: `F′ G′ Y ≅ Y`.
    pub roundtrip: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub a_side: Vec<AModuleReport>,
    pub b_side: Vec<BModuleReport>,
    /// `Hom(X, Y) = 0` for all tested `X ∈ 𝒯_T`, `Y ∈ ℱ_T`.
    pub hom_vanishing: bool,
    /// The test corpus is claimed to contain every indecomposable.
    pub exhaustive: bool,
    /// Some isomorphism search ran out of budget without deciding.
    pub probabilistic: bool,
}

impl TorsionReport {
    pub fn all_pass(&self) -> bool {
        self.hom_vanishing
            && self.a_side.iter().all(|r| {
                r.decomposition.is_some()
                    && r.f_matches_hom_h0
                    && r.roundtrip != Some(false)
                    && r.pi_roundtrip != Some(false)
            })
            && self.b_side.iter().all(|r| r.tables_agree && r.roundtrip != Some(false))
    }
}

fn iso(alg: &Algebra, m: &Module, n: &Module, opts: SearchOpts, probabilistic: &mut bool) -> bool {
    if m.dims != n.dims {
        return false;
    }
    let out = is_isomorphic(alg, m, n, opts.seed, opts.budget);
    if !out.exact && !out.is_iso() {
        *probabilistic = true;
    }
    out.is_iso()
}

/// Runs every torsion-theoretic check on the given test corpora. The
/// `B`-side corpus is extended by the images `F(M)`, `F′(M)`.
pub fn verify_equivalences(
    alg: &Algebra,
    bz: &Induced,
    a_tests: &[TestModule],
    b_tests: &[TestModule],
    exhaustive: bool,
    opts: SearchOpts,
) -> Result<TorsionReport> {
    let b = bz.b();
    let ts = &bz.t.summands;
    let gen = h0(alg, ts);
    let images = bz.pi.hom.images();
    let mut probabilistic = false;
    let mut a_side = Vec::new();
    let mut b_corpus: Vec<TestModule> = b_tests.to_vec();
    for tm in a_tests {
        let m = &tm.module;
        let membership = a_membership(alg, ts, m);
        let decomposition = torsion_decompose(alg, ts, m).ok().map(|d| (d.torsion_part.dim(), d.free_part.dim()));
        let fm = functor_f(alg, bz, m)?;
        let f1m = functor_f_prime(alg, bz, m)?;
        let h_dim: usize = hom(alg, &gen, m).len();
        let mut roundtrip = None;
        let mut pi_roundtrip = None;
        if membership.torsion {
            let (g, _) = functors_g(alg, &bz.end_t, &fm)?;
            let (_, g1) = functors_g(alg, &bz.end_t, &fm)?;
            roundtrip = Some(iso(alg, &g, m, opts, &mut probabilistic) && g1.is_zero());
            let back = functor_image(b, &bz.end_s, &fm, 1)?.module.restrict_along(alg, bz.abar(), &images)?;
            pi_roundtrip = Some(iso(alg, &back, m, opts, &mut probabilistic));
        } else if membership.torsion_free {
            let (g, g1) = functors_g(alg, &bz.end_t, &f1m)?;
            roundtrip = Some(iso(alg, &g1, m, opts, &mut probabilistic) && g.is_zero());
            let back = functor_image(b, &bz.end_s, &f1m, 0)?.module.restrict_along(alg, bz.abar(), &images)?;
            pi_roundtrip = Some(iso(alg, &back, m, opts, &mut probabilistic));
        }
        if !fm.is_zero() {
            b_corpus.push(TestModule { name: format!("F({})", tm.name), module: fm.clone() });
        }
        if !f1m.is_zero() {
            b_corpus.push(TestModule { name: format!("F'({})", tm.name), module: f1m });
        }
        a_side.push(AModuleReport {
            name: tm.name.clone(),
            dim: m.dim(),
            membership,
            decomposition,
            f_matches_hom_h0: fm.dim() == h_dim,
            roundtrip,
            pi_roundtrip,
        });
    }
    let mut hom_vanishing = true;
    for x in a_side.iter().zip(a_tests).filter(|(r, _)| r.membership.torsion) {
        for y in a_side.iter().zip(a_tests).filter(|(r, _)| r.membership.torsion_free) {
            if !hom(alg, &x.1.module, &y.1.module).is_empty() {
                hom_vanishing = false;
            }
        }
    }
    let mut b_side = Vec::new();
    for tm in &b_corpus {
        let y = &tm.module;
        let membership = b_membership(alg, bz, y)?;
        let tables_agree = membership.t_s == membership.x_t && membership.f_s == membership.y_t;
        let (g, g1) = functors_g(alg, &bz.end_t, y)?;
        let roundtrip = if membership.y_t {
            Some(iso(b, &functor_f(alg, bz, &g)?, y, opts, &mut probabilistic))
        } else if membership.x_t {
            Some(iso(b, &functor_f_prime(alg, bz, &g1)?, y, opts, &mut probabilistic))
        } else {
            None
        };
        b_side.push(BModuleReport { name: tm.name.clone(), dim: y.dim(), membership, tables_agree, roundtrip });
    }
    Ok(TorsionReport { a_side, b_side, hom_vanishing, exhaustive, probabilistic })
}

/// Indecomposable summands of `M`, used to grow test corpora.
pub fn indecomposable_parts(alg: &Algebra, m: &Module) -> Result<Vec<Module>> {
    fdmodule::decompose(alg, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests_support::*;
    use crate::induced::induce;
    use crate::silting::SiltingObject;

    fn example_t(a: &Algebra) -> SiltingObject {
        let ts = vec![
            ProjComplex::stalk(vec![0], 0),
            ProjComplex::two_term(vec![1], vec![0], PMap::single(1, 0, vec![q(1)])),
            ProjComplex::stalk(vec![2], -1),
        ];
        SiltingObject::new(a, ts, SearchOpts::default()).unwrap()
    }

    #[test]
    fn h0_is_p1_plus_s1() {
        let a = a3_zero_rel();
        let t = example_t(&a);
        let m = Module::direct_sum(&a, &[&Module::projective(&a, 0), &Module::simple(&a, 0)]);
        assert!(is_isomorphic(&a, &h0(&a, &t.summands), &m, 0, 1000).is_iso());
    }

    #[test]
    fn example_functors() {
        let a = a3_zero_rel();
        let t = example_t(&a);
        let bz = induce(&a, &t, SearchOpts::default()).unwrap();
        let s1 = Module::simple(&a, 0);
        assert_eq!(functor_f(&a, &bz, &s1).unwrap().dim(), 2);
        assert!(functor_f(&a, &bz, &Module::projective(&a, 1)).unwrap().is_zero());
        assert!(functor_f(&a, &bz, &Module::zero(&a)).unwrap().is_zero());
        let (g, _) = functors_g(&a, &bz.end_t, &functor_f(&a, &bz, &s1).unwrap()).unwrap();
        assert!(is_isomorphic(&a, &g, &s1, 0, 1000).is_iso());
    }

    #[test]
    fn g_of_projective_is_h0_of_summand() {
        let a = a3_zero_rel();
        let t = example_t(&a);
        let bz = induce(&a, &t, SearchOpts::default()).unwrap();
        for j in 0..3 {
            let (g, _) = functors_g(&a, &bz.end_t, &Module::projective(bz.b(), j)).unwrap();
            let h = homology_of_complex(&a, &t.summands[j], 0);
            assert!(is_isomorphic(&a, &g, &h, 0, 1000).is_iso());
        }
    }

    #[test]
    fn example_memberships() {
        let a = a3_zero_rel();
        let t = example_t(&a);
        let name_mods = [
            ("P1", Module::projective(&a, 0), true, false),
            ("S1", Module::simple(&a, 0), true, false),
            ("S2", Module::simple(&a, 1), false, true),
            ("S3", Module::simple(&a, 2), false, true),
            ("P2", Module::projective(&a, 1), false, true),
        ];
        for (name, m, tt, ft) in name_mods {
            let mem = a_membership(&a, &t.summands, &m);
            assert_eq!((mem.torsion, mem.torsion_free), (tt, ft), "{name}");
        }
        let zero = a_membership(&a, &t.summands, &Module::zero(&a));
        assert!(zero.torsion && zero.torsion_free);
    }

    #[test]
    fn decompositions() {
        let a = a3_zero_rel();
        let t = example_t(&a);
        let p1 = Module::projective(&a, 0);
        let p2 = Module::projective(&a, 1);
        let d = torsion_decompose(&a, &t.summands, &p2).unwrap();
        assert_eq!((d.torsion_part.dim(), d.free_part.dim()), (0, 2));
        let d = torsion_decompose(&a, &t.summands, &p1).unwrap();
        assert_eq!((d.torsion_part.dim(), d.free_part.dim()), (2, 0));
        let sum = Module::direct_sum(&a, &[&p1, &p2]);
        let d = torsion_decompose(&a, &t.summands, &sum).unwrap();
        assert!(is_isomorphic(&a, &d.torsion_part, &p1, 0, 1000).is_iso());
        assert!(is_isomorphic(&a, &d.free_part, &p2, 0, 1000).is_iso());
    }

    #[test]
    fn regular_t_torsion_everything() {
        let a = a2();
        let t = SiltingObject::regular(&a);
        for m in standard_test_modules(&a, SearchOpts::default()) {
            let mem = a_membership(&a, &t.summands, &m.module);
            assert!(mem.torsion && !mem.torsion_free);
        }
        let s = SiltingObject::shifted_regular(&a);
        for m in standard_test_modules(&a, SearchOpts::default()) {
            let mem = a_membership(&a, &s.summands, &m.module);
            assert!(!mem.torsion && mem.torsion_free);
        }
    }

    #[test]
    fn example_report_passes() {
        let a = a3_zero_rel();
        let t = example_t(&a);
        let opts = SearchOpts::default();
        let bz = induce(&a, &t, opts).unwrap();
        let a_tests = standard_test_modules(&a, opts);
        assert_eq!(a_tests.len(), 5);
        let b_tests = standard_test_modules(bz.b(), opts);
        let r = verify_equivalences(&a, &bz, &a_tests, &b_tests, true, opts).unwrap();
        for x in &r.a_side {
            assert!(x.roundtrip != Some(false) && x.pi_roundtrip != Some(false), "{x:?}");
        }
        for y in &r.b_side {
            assert!(y.tables_agree && y.roundtrip != Some(false), "{y:?}");
        }
        assert!(r.all_pass());
        let a_round = r.a_side.iter().filter(|x| x.roundtrip == Some(true) && x.pi_roundtrip == Some(true)).count();
        assert_eq!(a_round, 5);
        let b_round = r.b_side.iter().filter(|y| y.roundtrip == Some(true)).count();
        assert!(b_round >= 5, "{:#?}", r.b_side);
    }

    #[test]
    fn three_term_classes() {
        let a = a2();
        let ts = vec![ProjComplex::stalk(vec![0], -2), ProjComplex::stalk(vec![1], 0)];
        let t = SiltingObject::new(&a, ts, SearchOpts::default()).unwrap();
        assert!(t.is_silting() && !t.is_tilting(&a));
        let pkg = crate::induced::endomorphism_algebra(&a, &t.summands, &["x".into(), "y".into()]).unwrap();
        let mods = standard_test_modules(&a, SearchOpts::default());
        let mut seen = Vec::new();
        for m in &mods {
            let classes = nterm_classes(&a, &t.summands, &m.module);
            assert_eq!(classes.len(), 3);
            let dims: Vec<usize> =
                (0..3).map(|i| functor_shift(&a, &pkg, &m.module, i).unwrap().dim()).collect();
            let e0 = m.module.dims[0];
            let e1 = m.module.dims[1];
            assert_eq!(dims, vec![e1, 0, e0], "{}", m.name);
            assert!(classes.iter().filter(|&&c| c).count() <= 1);
            seen.push(classes);
        }
        assert!(seen.contains(&vec![true, false, false]) && seen.contains(&vec![false, false, true]));
        assert!(nterm_classes(&a, &t.summands, &Module::zero(&a)).iter().all(|&c| c));
    }

    #[test]
    fn non_tilting_roundtrip() {
        // ΣP1 ⊕ P2 over 1 <- 2: Hom(P2, P1) ≠ 0 so T is silting, not tilting
        let a = a2();
        let ts = vec![ProjComplex::stalk(vec![0], -1), ProjComplex::stalk(vec![1], 0)];
        let t = SiltingObject::new(&a, ts, SearchOpts::default()).unwrap();
        assert!(t.is_silting() && !t.is_tilting(&a));
        let bz = induce(&a, &t, SearchOpts::default()).unwrap();
        let s1 = Module::simple(&a, 0);
        let y = functor_f_prime(&a, &bz, &s1).unwrap();
        let (g, g1) = functors_g(&a, &bz.end_t, &y).unwrap();
        assert!(g.is_zero());
        assert!(is_isomorphic(&a, &g1, &s1, 0, 1000).is_iso());
        let opts = SearchOpts::default();
        let r = verify_equivalences(&a, &bz, &standard_test_modules(&a, opts), &[], true, opts).unwrap();
        assert!(r.all_pass(), "{r:#?}");
    }
}
