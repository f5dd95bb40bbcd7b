#![allow(dead_code)]

use num_bigint::BigInt;
use silting_core::algebra::{Algebra, Arrow, Quiver};
use silting_core::complex::{PMap, ProjComplex};
use silting_core::linalg::{Field, Scalar};

pub fn q(x: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(x))
}

/// `1 <- 2 <- ... <- n`
pub fn linear(n: usize) -> Quiver {
    let vertices = (1..=n).map(|i| i.to_string()).collect();
    let names = ["alpha", "beta", "gamma", "delta"];
    let arrows = (0..n - 1).map(|i| Arrow { name: names[i].into(), from: i + 1, to: i }).collect();
    Quiver::new(vertices, arrows).unwrap()
}

/// `1 <-alpha- 2 <-beta- 3` with `alpha beta = 0`.
pub fn a3_zero_rel_over(field: Field) -> Algebra {
    Algebra::path_algebra(field, linear(3), vec![vec![(q(1), vec![0, 1])]], 4).unwrap()
}

pub fn a3_zero_rel() -> Algebra {
    a3_zero_rel_over(Field::Rationals)
}

pub fn path_an(n: usize) -> Algebra {
    Algebra::path_algebra(Field::Rationals, linear(n), vec![], n + 1).unwrap()
}

pub fn truncated_loop(n: usize) -> Algebra {
    let quiver = Quiver::new(vec!["1".into()], vec![Arrow { name: "x".into(), from: 0, to: 0 }]).unwrap();
    Algebra::path_algebra(Field::Rationals, quiver, vec![vec![(q(1), vec![0; n])]], n + 1).unwrap()
}

/// The silting complex `P1 ⊕ (P2 -alpha-> P1) ⊕ ΣP3`.
pub fn a3_zero_rel_t() -> Vec<ProjComplex> {
    vec![
        ProjComplex::stalk(vec![0], 0),
        ProjComplex::two_term(vec![1], vec![0], PMap::single(1, 0, vec![q(1)])),
        ProjComplex::stalk(vec![2], -1),
    ]
}
