//! Presilting, silting and tilting tests, left and right approximations,
//! mutation, and enumeration of 2-term silting objects.

use std::collections::VecDeque;

use crate::algebra::Algebra;
use crate::complex::{
    add_membership_unchecked, cone, endomorphism_is_local, hom_complexes, hom_space, is_isomorphic_kb,
    minimal_model, ChainMap, PMap, ProjComplex,
};
use crate::error::{Error, Result};
use crate::fdmodule::DEFAULT_SEARCH_BUDGET;
use crate::linalg::{Subspace, Vector};

/// Seed and budget for the randomized parts of isomorphism searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchOpts {
    pub seed: u64,
    pub budget: usize,
}

impl Default for SearchOpts {
    fn default() -> Self {
        SearchOpts { seed: 0, budget: DEFAULT_SEARCH_BUDGET }
    }
}

/// The stalk complex of the regular module `A`, summands in vertex order.
pub fn regular_complex(alg: &Algebra) -> ProjComplex {
    ProjComplex::stalk((0..alg.num_vertices()).collect(), 0)
}

/// Each indecomposable projective as a stalk complex in degree `degree`.
pub fn projective_stalks(alg: &Algebra, degree: i32) -> Vec<ProjComplex> {
    (0..alg.num_vertices()).map(|v| ProjComplex::stalk(vec![v], degree)).collect()
}

/// Total degree span of a family of complexes.
pub fn width(ts: &[ProjComplex]) -> i32 {
    let nz: Vec<&ProjComplex> = ts.iter().filter(|t| !t.is_zero()).collect();
    match (nz.iter().map(|t| t.lo).min(), nz.iter().map(|t| t.hi()).max()) {
        (Some(lo), Some(hi)) => hi - lo + 1,
        _ => 0,
    }
}

/// First pair `(a, b, i)` with `Hom(T_a, Σ^i T_b) ≠ 0` for `i` in `shifts`.
fn first_nonvanishing(
    alg: &Algebra,
    ts: &[ProjComplex],
    shifts: impl Iterator<Item = i32> + Clone,
) -> Option<(usize, usize, i32)> {
    for a in 0..ts.len() {
        for b in 0..ts.len() {
            for i in shifts.clone() {
                if hom_complexes(alg, &ts[a], &ts[b], i).dim() > 0 {
                    return Some((a, b, i));
                }
            }
        }
    }
    None
}

/// `Hom(T, Σ^i T) = 0` for `1 ≤ i ≤ width(T)`; larger shifts vanish for
/// degree reasons.
pub fn is_presilting(alg: &Algebra, ts: &[ProjComplex]) -> bool {
    first_nonvanishing(alg, ts, 1..=width(ts)).is_none()
}

/// A pair with nonzero `Hom(T_a, Σ^{-i} T_b)`, `i ≥ 1`, if any.
pub fn negative_shift_witness(alg: &Algebra, ts: &[ProjComplex]) -> Option<(usize, usize, i32)> {
    first_nonvanishing(alg, ts, (1..=width(ts)).map(|i| -i))
}

/// An `add(T)`-approximation, the target written literally as
/// `⊕ T_i^{mults[i]}` in summand order.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub target: ProjComplex,
    pub mults: Vec<usize>,
    /// `X → target` for left approximations, `target → X` for right ones.
    pub map: ChainMap,
}

fn spans(alg: &Algebra, space: &crate::complex::HomSpace, maps: &[ChainMap]) -> bool {
    let vecs: Vec<Vector> = maps.iter().map(|m| space.coords(alg, m).expect("composite is a chain map")).collect();
    Subspace::new(&alg.field, space.dim(), &vecs).dim() == space.dim()
}

/// Greedy removal of components while the surjectivity condition `ok` holds.
fn minimize(comps: Vec<(usize, ChainMap)>, ok: impl Fn(&[(usize, ChainMap)]) -> bool) -> Vec<(usize, ChainMap)> {
    let mut keep = comps;
    let mut i = keep.len();
    while i > 0 {
        i -= 1;
        let mut trial = keep.clone();
        trial.remove(i);
        if ok(&trial) {
            keep = trial;
        }
    }
    keep
}

fn sorted_components(mut comps: Vec<(usize, ChainMap)>, n: usize) -> (Vec<(usize, ChainMap)>, Vec<usize>) {
    comps.sort_by_key(|c| c.0);
    let mut mults = vec![0; n];
    for c in &comps {
        mults[c.0] += 1;
    }
    (comps, mults)
}

/// Minimal-by-elimination left `add(T)`-approximation `X → T_0`: every map
/// from `X` to a summand of `T` factors through it.
pub fn left_approximation(alg: &Algebra, x: &ProjComplex, ts: &[ProjComplex]) -> Approximation {
    let n = ts.len();
    let hx: Vec<_> = ts.iter().map(|t| hom_space(alg, x, t)).collect();
    let tt: Vec<Vec<Vec<ChainMap>>> =
        ts.iter().map(|a| ts.iter().map(|b| hom_space(alg, a, b).reps(alg)).collect()).collect();
    let comps: Vec<(usize, ChainMap)> =
        hx.iter().enumerate().flat_map(|(i, h)| h.reps(alg).into_iter().map(move |m| (i, m))).collect();
    let ok = |cs: &[(usize, ChainMap)]| {
        (0..n).all(|j| {
            let images: Vec<ChainMap> =
                cs.iter().flat_map(|(i, m)| tt[*i][j].iter().map(move |g| g.compose(alg, m))).collect();
            spans(alg, &hx[j], &images)
        })
    };
    let (comps, mults) = sorted_components(minimize(comps, ok), n);
    let parts: Vec<&ProjComplex> = comps.iter().map(|(i, _)| &ts[*i]).collect();
    let target = ProjComplex::direct_sum(alg, &parts);
    let mut map = ChainMap::zero();
    for k in x.degrees() {
        if x.term(k).is_empty() || target.term(k).is_empty() {
            continue;
        }
        let mut col = PMap::zero(alg, x.term(k), &[]);
        for (i, m) in &comps {
            col = col.vstack(&m.comp(alg, x, &ts[*i], k));
        }
        map.comps.insert(k, col);
    }
    Approximation { target, mults, map }
}

/// Right `add(T)`-approximation `T_0 → X`, dual to [`left_approximation`].
pub fn right_approximation(alg: &Algebra, x: &ProjComplex, ts: &[ProjComplex]) -> Approximation {
    let n = ts.len();
    let hx: Vec<_> = ts.iter().map(|t| hom_space(alg, t, x)).collect();
    let tt: Vec<Vec<Vec<ChainMap>>> =
        ts.iter().map(|a| ts.iter().map(|b| hom_space(alg, a, b).reps(alg)).collect()).collect();
    let comps: Vec<(usize, ChainMap)> =
        hx.iter().enumerate().flat_map(|(i, h)| h.reps(alg).into_iter().map(move |m| (i, m))).collect();
    let ok = |cs: &[(usize, ChainMap)]| {
        (0..n).all(|j| {
            let images: Vec<ChainMap> =
                cs.iter().flat_map(|(i, m)| tt[j][*i].iter().map(move |g| m.compose(alg, g))).collect();
            spans(alg, &hx[j], &images)
        })
    };
    let (comps, mults) = sorted_components(minimize(comps, ok), n);
    let parts: Vec<&ProjComplex> = comps.iter().map(|(i, _)| &ts[*i]).collect();
    let target = ProjComplex::direct_sum(alg, &parts);
    let mut map = ChainMap::zero();
    for k in target.degrees() {
        if x.term(k).is_empty() || target.term(k).is_empty() {
            continue;
        }
        let mut row = PMap::zero(alg, &[], x.term(k));
        for (i, m) in &comps {
            row = row.hstack(&m.comp(alg, &ts[*i], x, k));
        }
        map.comps.insert(k, row);
    }
    Approximation { target, mults, map }
}

/// The triangle `A → T′ → T″ → ΣA` with `T′, T″ ∈ add(T)` written as
/// literal sums of the summands.
#[derive(Clone, Debug)]
pub struct ApproxTriangle {
    pub a: ProjComplex,
    pub t_prime: ProjComplex,
    pub t_prime_mults: Vec<usize>,
    pub t_double: ProjComplex,
    pub t_double_mults: Vec<usize>,
    /// `A → T′`
    pub u: ChainMap,
    /// `T′ → T″`
    pub f: ChainMap,
    /// `T″ → ΣA`
    pub w: ChainMap,
}

/// Cone of a left approximation of `x`, reduced, tested for membership in
/// `add(T)`. Returns the triangle data or the reduced cone on failure.
fn approximation_step(
    alg: &Algebra,
    x: &ProjComplex,
    ts: &[ProjComplex],
    opts: SearchOpts,
) -> std::result::Result<ApproxTriangle, ProjComplex> {
    let appr = left_approximation(alg, x, ts);
    let tri = cone(alg, x, &appr.target, &appr.map);
    let mm = minimal_model(alg, &tri.z);
    match add_membership_unchecked(alg, &mm.complex, ts, opts.seed, opts.budget) {
        Some((mults, (to_sum, from_sum))) => {
            let parts: Vec<ProjComplex> = ts.iter().zip(&mults).map(|(t, &m)| t.power(alg, m)).collect();
            let t_double = ProjComplex::direct_sum(alg, &parts.iter().collect::<Vec<_>>());
            let f = to_sum.compose(alg, &mm.to_min).compose(alg, &tri.v);
            let w = tri.w.compose(alg, &mm.from_min).compose(alg, &from_sum);
            Ok(ApproxTriangle {
                a: x.clone(),
                t_prime: appr.target,
                t_prime_mults: appr.mults,
                t_double,
                t_double_mults: mults,
                u: appr.map,
                f,
                w,
            })
        }
        None => Err(mm.complex),
    }
}

/// The approximation triangle of `A` with respect to a 2-term presilting `T`.
pub fn approximation_triangle(alg: &Algebra, ts: &[ProjComplex], opts: SearchOpts) -> Result<ApproxTriangle> {
    approximation_step(alg, &regular_complex(alg), ts, opts).map_err(|rest| {
        Error::NotInAdd(format!(
            "the cone of the approximation of A has terms {:?}, not in add(T)",
            rest.term_signature()
        ))
    })
}

/// Number of iterated approximation steps after which the remainder lies in
/// `add(T)`, or `None` if that does not happen within `width(T) + 1` steps.
pub fn generation_steps(alg: &Algebra, ts: &[ProjComplex], opts: SearchOpts) -> Option<usize> {
    let mut x = regular_complex(alg);
    for step in 1..=(width(ts).max(1) as usize + 1) {
        match approximation_step(alg, &x, ts, opts) {
            Ok(_) => return Some(step),
            Err(rest) => x = rest,
        }
    }
    None
}

/// A basic object of `K^b(proj A)` given by its indecomposable summands,
/// with the results of the silting checks.
#[derive(Clone, Debug)]
pub struct SiltingObject {
    pub summands: Vec<ProjComplex>,
    pub presilting: bool,
    /// Shifts `1..=presilting_range` were scanned.
    pub presilting_range: i32,
    /// Approximation steps needed to build `A` from `add(T)`.
    pub generation_steps: Option<usize>,
    /// Present when `T` is 2-term presilting and the triangle exists.
    pub triangle: Option<ApproxTriangle>,
}

impl SiltingObject {
    /// Replaces each summand by its minimal model, then checks that the
    /// summands are indecomposable and pairwise non-isomorphic.
    pub fn new(alg: &Algebra, summands: Vec<ProjComplex>, opts: SearchOpts) -> Result<SiltingObject> {
        let mut mins = Vec::with_capacity(summands.len());
        for (i, t) in summands.iter().enumerate() {
            t.validate(alg)?;
            let m = minimal_model(alg, t).complex;
            if !endomorphism_is_local(alg, &m) {
                return Err(Error::NotLocal(format!("summand {i} is zero or decomposable")));
            }
            mins.push(m);
        }
        for i in 0..mins.len() {
            for j in 0..i {
                if is_isomorphic_kb(alg, &mins[j], &mins[i], opts.seed, opts.budget).is_iso() {
                    return Err(Error::InvalidComplex(format!("summands {j} and {i} are isomorphic")));
                }
            }
        }
        let presilting = is_presilting(alg, &mins);
        let range = width(&mins);
        let (generation_steps, triangle) = if !presilting {
            (None, None)
        } else if mins.iter().all(|t| t.is_two_term()) {
            match approximation_triangle(alg, &mins, opts) {
                Ok(tri) => (Some(1), Some(tri)),
                Err(_) => (generation_steps(alg, &mins, opts), None),
            }
        } else {
            (generation_steps(alg, &mins, opts), None)
        };
        Ok(SiltingObject { summands: mins, presilting, presilting_range: range, generation_steps, triangle })
    }

    pub fn regular(alg: &Algebra) -> SiltingObject {
        SiltingObject::new(alg, projective_stalks(alg, 0), SearchOpts::default()).expect("A is basic")
    }

    pub fn shifted_regular(alg: &Algebra) -> SiltingObject {
        SiltingObject::new(alg, projective_stalks(alg, -1), SearchOpts::default()).expect("ΣA is basic")
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_silting(&self) -> bool {
        self.presilting && self.generation_steps.is_some()
    }

    pub fn is_two_term(&self) -> bool {
        self.summands.iter().all(|t| t.is_two_term())
    }

    pub fn is_tilting(&self, alg: &Algebra) -> bool {
        self.is_silting() && negative_shift_witness(alg, &self.summands).is_none()
    }

    /// The whole object `⊕ T_i`.
    pub fn total(&self, alg: &Algebra) -> ProjComplex {
        ProjComplex::direct_sum(alg, &self.summands.iter().collect::<Vec<_>>())
    }

    /// Same summands up to isomorphism and order.
    pub fn equivalent(&self, alg: &Algebra, other: &SiltingObject, opts: SearchOpts) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut used = vec![false; other.len()];
        'outer: for t in &self.summands {
            for (j, s) in other.summands.iter().enumerate() {
                if !used[j]
                    && t.term_signature() == s.term_signature()
                    && is_isomorphic_kb(alg, t, s, opts.seed, opts.budget).is_iso()
                {
                    used[j] = true;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// Index of a summand isomorphic to `x`.
    pub fn find_summand(&self, alg: &Algebra, x: &ProjComplex, opts: SearchOpts) -> Option<usize> {
        self.summands.iter().position(|t| is_isomorphic_kb(alg, t, x, opts.seed, opts.budget).is_iso())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::Left => "left",
            Direction::Right => "right",
        })
    }
}

/// The exchange triangle `T_k → E → T_k* → ΣT_k` (left) or
/// `T_k* → E → T_k → ΣT_k*` (right) and the mutated object.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub index: usize,
    pub direction: Direction,
    pub approximation: Approximation,
    pub new_summand: ProjComplex,
    pub result: SiltingObject,
}

/// Mutation of a 2-term silting object at summand `k`; fails if the new
/// summand leaves the 2-term window.
pub fn mutate(alg: &Algebra, t: &SiltingObject, k: usize, dir: Direction, opts: SearchOpts) -> Result<Mutation> {
    if k >= t.len() {
        return Err(Error::InvalidComplex(format!("no summand with index {k}")));
    }
    if !t.is_silting() || !t.is_two_term() {
        return Err(Error::NotTwoTerm("mutation needs a 2-term silting object".into()));
    }
    let others: Vec<ProjComplex> =
        t.summands.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, s)| s.clone()).collect();
    let tk = &t.summands[k];
    let (appr, new) = match dir {
        Direction::Left => {
            let a = left_approximation(alg, tk, &others);
            let z = cone(alg, tk, &a.target, &a.map).z;
            (a, minimal_model(alg, &z).complex)
        }
        Direction::Right => {
            let a = right_approximation(alg, tk, &others);
            let z = cone(alg, &a.target, tk, &a.map).z;
            (a, minimal_model(alg, &z).complex.shift(&alg.field, -1))
        }
    };
    if new.is_zero() {
        return Err(Error::DegenerateApproximation(format!("{dir} mutation at {k} produced the zero complex")));
    }
    if !new.is_two_term() {
        return Err(Error::NotTwoTerm(format!("{dir} mutation at {k} leaves the 2-term window")));
    }
    let mut summands = t.summands.clone();
    summands[k] = new.clone();
    let result = SiltingObject::new(alg, summands, opts)?;
    if !result.is_silting() {
        return Err(Error::DegenerateApproximation(format!("{dir} mutation at {k} is not silting")));
    }
    Ok(Mutation { index: k, direction: dir, approximation: appr, new_summand: new, result })
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub classes: Vec<SiltingObject>,
    /// `(from, to, summand, direction)` for every mutation performed.
    pub edges: Vec<(usize, usize, usize, Direction)>,
    /// The frontier closed before the node budget ran out.
    pub complete: bool,
}

/// Breadth-first closure of `{A}` under 2-term mutation, up to equivalence.
pub fn enumerate_2silt(alg: &Algebra, max_nodes: usize, opts: SearchOpts) -> Enumeration {
    let mut classes = vec![SiltingObject::regular(alg)];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for k in 0..classes[i].len() {
            for dir in [Direction::Left, Direction::Right] {
                let Ok(m) = mutate(alg, &classes[i], k, dir, opts) else { continue };
                let j = match classes.iter().position(|c| c.equivalent(alg, &m.result, opts)) {
                    Some(j) => j,
                    None => {
                        if classes.len() >= max_nodes {
                            return Enumeration { classes, edges, complete: false };
                        }
                        classes.push(m.result);
                        queue.push_back(classes.len() - 1);
                        classes.len() - 1
                    }
                };
                edges.push((i, j, k, dir));
            }
        }
    }
    Enumeration { classes, edges, complete: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests_support::*;

    fn alpha() -> PMap {
        PMap::single(1, 0, vec![q(1)])
    }

    fn example_t(a: &Algebra) -> SiltingObject {
        let ts = vec![
            ProjComplex::stalk(vec![0], 0),
            ProjComplex::two_term(vec![1], vec![0], alpha()),
            ProjComplex::stalk(vec![2], -1),
        ];
        SiltingObject::new(a, ts, SearchOpts::default()).unwrap()
    }

    #[test]
    fn presilting_examples() {
        let a = a2();
        let p1 = ProjComplex::stalk(vec![0], 0);
        assert!(!is_presilting(&a, &[p1.clone(), p1.shift(&a.field, 1)]));
        assert!(is_presilting(&a, &[regular_complex(&a)]));
        let t = example_t(&a3_zero_rel());
        assert!(t.presilting && t.is_silting());
    }

    #[test]
    fn approximations() {
        let a = a3_zero_rel();
        let t = example_t(&a);
        let p3 = ProjComplex::stalk(vec![2], 0);
        let ap = left_approximation(&a, &p3, &t.summands);
        assert!(ap.target.is_zero());
        let p2 = ProjComplex::stalk(vec![1], 0);
        let ap = left_approximation(&a, &p2, &t.summands);
        assert_eq!(ap.mults, vec![1, 0, 0]);
        assert_eq!(ap.map.comps[&0], alpha());
        let ap = left_approximation(&a, &t.summands[1], &t.summands);
        assert_eq!(ap.mults, vec![0, 1, 0]);
    }

    #[test]
    fn example_triangle() {
        let a = a3_zero_rel();
        let t = example_t(&a);
        let tri = t.triangle.as_ref().unwrap();
        assert_eq!(tri.t_prime_mults, vec![2, 0, 0]);
        assert_eq!(tri.t_double_mults, vec![0, 1, 1]);
        assert!(tri.f.is_chain_map(&a, &tri.t_prime, &tri.t_double));
        assert!(tri.u.is_chain_map(&a, &tri.a, &tri.t_prime));
        assert!(tri.w.is_chain_map(&a, &tri.t_double, &tri.a.shift(&a.field, 1)));
    }

    #[test]
    fn trivial_triangles() {
        let a = a3_zero_rel();
        let t = SiltingObject::regular(&a);
        let tri = t.triangle.as_ref().unwrap();
        assert_eq!(tri.t_prime_mults, vec![1, 1, 1]);
        assert!(tri.t_double.is_zero());
        let s = SiltingObject::shifted_regular(&a);
        let tri = s.triangle.as_ref().unwrap();
        assert!(tri.t_prime.is_zero());
        assert_eq!(tri.t_double_mults, vec![1, 1, 1]);
        assert!(t.is_tilting(&a) && s.is_tilting(&a));
    }

    #[test]
    fn non_presilting_is_neither() {
        let a = a2();
        let p1 = ProjComplex::stalk(vec![0], 0);
        let t = SiltingObject::new(&a, vec![p1.clone(), p1.shift(&a.field, 1)], SearchOpts::default()).unwrap();
        assert!(!t.is_silting() && !t.is_tilting(&a));
    }

    #[test]
    fn mutations() {
        let opts = SearchOpts::default();
        let a = a3_zero_rel();
        // P3 is approximated by beta: P3 -> P2, the only nonzero map into P1 ⊕ P2
        let m = mutate(&a, &SiltingObject::regular(&a), 2, Direction::Left, opts).unwrap();
        assert_eq!(m.new_summand, ProjComplex::two_term(vec![2], vec![1], PMap::single(2, 1, vec![q(1)])));
        assert_eq!(m.approximation.mults, vec![0, 1]);
        let b = a2();
        let m = mutate(&b, &SiltingObject::regular(&b), 1, Direction::Left, opts).unwrap();
        assert_eq!(m.new_summand, ProjComplex::two_term(vec![1], vec![0], alpha()));
        let back = mutate(&b, &m.result, 1, Direction::Right, opts).unwrap();
        assert!(back.result.equivalent(&b, &SiltingObject::regular(&b), opts));
        // the right mutation of A leaves the window
        assert!(matches!(
            mutate(&b, &SiltingObject::regular(&b), 0, Direction::Right, opts),
            Err(Error::NotTwoTerm(_))
        ));
    }

    #[test]
    fn enumerations() {
        let opts = SearchOpts::default();
        let e = enumerate_2silt(&point(), 10, opts);
        assert!(e.complete);
        assert_eq!(e.classes.len(), 2);
        let e = enumerate_2silt(&a2(), 20, opts);
        assert!(e.complete);
        assert_eq!(e.classes.len(), 5);
        let partial = enumerate_2silt(&a2(), 3, opts);
        assert!(!partial.complete);
        assert_eq!(partial.classes.len(), 3);
    }
}
