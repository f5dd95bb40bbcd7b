mod common;

use common::*;
use proptest::prelude::*;
use silting_core::algebra::Algebra;
use silting_core::complex::{cone, hom_space, is_acyclic, is_isomorphic_kb, minimal_model, ChainMap, PMap, ProjComplex};
use silting_core::fdmodule::{hom, Module};
use silting_core::linalg::{kernel, solve, Field, Matrix};
use silting_core::silting::SearchOpts;
use silting_core::torsion::{a_membership, h0, torsion_decompose};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::prime(5).unwrap()), Just(Field::prime(2).unwrap())]
}

fn matrix(f: &Field, rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_i64(f, rows)
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
}

proptest! {
    #[test]
    fn rank_nullity(f in field_strategy(), rows in matrix_strategy()) {
        let m = matrix(&f, &rows);
        let ker = kernel(&f, &m);
        prop_assert_eq!(m.rank(&f) + ker.len(), m.cols);
        for v in &ker {
            prop_assert!(f.vec_is_zero(&m.apply(&f, v)));
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(f in field_strategy(), rows in matrix_strategy(), seed in prop::collection::vec(-3i64..4, 4)) {
        let m = matrix(&f, &rows);
        let x0: Vec<_> = (0..m.cols).map(|i| f.from_i64(seed[i])).collect();
        let b = m.apply(&f, &x0);
        let x = solve(&f, &m, &b);
        prop_assert!(x.is_some());
        prop_assert_eq!(m.apply(&f, &x.unwrap()), b);
    }

    #[test]
    fn inverse_is_two_sided(f in field_strategy(), n in 1usize..5, entries in prop::collection::vec(-3i64..4, 16)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| entries[i * n..i * n + n].to_vec()).collect();
        let m = matrix(&f, &rows);
        match m.inverse(&f) {
            Some(inv) => {
                prop_assert_eq!(m.mul(&f, &inv), Matrix::identity(n));
                prop_assert_eq!(inv.mul(&f, &m), Matrix::identity(n));
            }
            None => prop_assert!(m.rank(&f) < n),
        }
    }
}

/// A random 2-term complex over `alg` from multiplicities and coefficients.
fn random_two_term(alg: &Algebra, m1: &[usize], m0: &[usize], coeffs: &[i64]) -> ProjComplex {
    let f = &alg.field;
    let expand = |m: &[usize]| -> Vec<usize> { m.iter().enumerate().flat_map(|(v, &k)| vec![v; k]).collect() };
    let (p1, p0) = (expand(m1), expand(m0));
    let mut d = PMap::zero(alg, &p1, &p0);
    let mut it = coeffs.iter().cycle();
    for row in d.entries.iter_mut() {
        for e in row.iter_mut() {
            for x in e.iter_mut() {
                *x = f.from_i64(*it.next().unwrap());
            }
        }
    }
    ProjComplex::two_term(p1, p0, d)
}

fn two_term_strategy() -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<i64>)> {
    (prop::collection::vec(0usize..2, 3), prop::collection::vec(0usize..2, 3), prop::collection::vec(-2i64..3, 1..12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shifts_and_cones_square_to_zero((m1, m0, c) in two_term_strategy(), n in -2i32..3) {
        let a = a3_zero_rel();
        let x = random_two_term(&a, &m1, &m0, &c);
        prop_assert!(x.validate(&a).is_ok());
        let sx = x.shift(&a.field, n);
        prop_assert!(sx.validate(&a).is_ok());
        prop_assert_eq!(sx.shift(&a.field, -n), x.clone());
        let id = ChainMap::identity(&a, &x);
        let tri = cone(&a, &x, &x, &id);
        prop_assert!(tri.z.validate(&a).is_ok());
        prop_assert!(is_acyclic(&a, &tri.z));
    }

    #[test]
    fn cones_of_random_maps_are_complexes((m1, m0, c) in two_term_strategy(), (n1, n0, e) in two_term_strategy(), pick in prop::collection::vec(-2i64..3, 8)) {
        let a = a3_zero_rel();
        let x = random_two_term(&a, &m1, &m0, &c);
        let y = random_two_term(&a, &n1, &n0, &e);
        let hs = hom_space(&a, &x, &y);
        let mut u = ChainMap::zero();
        for (i, g) in hs.chain_basis(&a).iter().enumerate() {
            u = u.add(&a.field, &g.scale(&a.field, &a.field.from_i64(pick[i % pick.len()])));
        }
        prop_assert!(u.is_chain_map(&a, &x, &y));
        let tri = cone(&a, &x, &y, &u);
        prop_assert!(tri.z.validate(&a).is_ok());
        prop_assert!(tri.v.is_chain_map(&a, &y, &tri.z));
        prop_assert!(tri.w.is_chain_map(&a, &tri.z, &x.shift(&a.field, 1)));
    }

    #[test]
    fn minimal_model_is_homotopy_equivalent((m1, m0, c) in two_term_strategy()) {
        let a = a3_zero_rel();
        let x = random_two_term(&a, &m1, &m0, &c);
        let mm = minimal_model(&a, &x);
        prop_assert!(mm.complex.is_minimal(&a));
        prop_assert!(mm.to_min.is_chain_map(&a, &x, &mm.complex));
        prop_assert!(mm.from_min.is_chain_map(&a, &mm.complex, &x));
        let f = &a.field;
        let back = mm.to_min.compose(&a, &mm.from_min).add(f, &ChainMap::identity(&a, &mm.complex).neg(f));
        prop_assert!(back.is_zero() || hom_space(&a, &mm.complex, &mm.complex).is_null_homotopic(&a, &back));
        let there = mm.from_min.compose(&a, &mm.to_min).add(f, &ChainMap::identity(&a, &x).neg(f));
        prop_assert!(hom_space(&a, &x, &x).is_null_homotopic(&a, &there));
        prop_assert!(is_isomorphic_kb(&a, &x, &mm.complex, 0, 2000).is_iso());
    }

    #[test]
    fn torsion_decomposition_on_sums(mults in prop::collection::vec(0usize..3, 5)) {
        let a = a3_zero_rel();
        let ts = a3_zero_rel_t();
        let ind = [
            Module::projective(&a, 0),
            Module::simple(&a, 0),
            Module::simple(&a, 1),
            Module::simple(&a, 2),
            Module::projective(&a, 1),
        ];
        let parts: Vec<&Module> = ind.iter().zip(&mults).flat_map(|(m, &k)| std::iter::repeat(m).take(k)).collect();
        let m = Module::direct_sum(&a, &parts);
        let d = torsion_decompose(&a, &ts, &m).unwrap();
        prop_assert_eq!(d.torsion_part.dim(), 2 * mults[0] + mults[1]);
        prop_assert!(a_membership(&a, &ts, &d.torsion_part).torsion);
        prop_assert!(a_membership(&a, &ts, &d.free_part).torsion_free);
        let bz = silting_core::induced::induce(
            &a,
            &silting_core::silting::SiltingObject::new(&a, ts.clone(), SearchOpts::default()).unwrap(),
            SearchOpts::default(),
        ).unwrap();
        let fm = silting_core::torsion::functor_f(&a, &bz, &m).unwrap();
        prop_assert_eq!(fm.dim(), hom(&a, &h0(&a, &ts), &m).len());
    }
}
