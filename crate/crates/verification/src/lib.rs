//! Shared loaders for the acceptance suite.

use silting_cli::fixtures::fixture;
use silting_cli::format::{load_algebra, load_complex, load_modules, AlgebraDoc, ModulesDoc, SiltingDoc};
use silting_core::algebra::Algebra;
use silting_core::complex::ProjComplex;
use silting_core::fdmodule::Module;
use silting_core::linalg::Field;

pub fn algebra(name: &str, field: Option<&Field>) -> Algebra {
    let doc: AlgebraDoc = serde_json::from_str(fixture(name).expect("fixture").algebra).expect("valid json");
    load_algebra(&doc, field).expect("valid algebra")
}

pub fn silting(alg: &Algebra, name: &str) -> Vec<ProjComplex> {
    let doc: SiltingDoc = serde_json::from_str(fixture(name).and_then(|f| f.silting).expect("fixture T")).unwrap();
    doc.summands.iter().map(|c| load_complex(alg, c).unwrap()).collect()
}

pub fn modules(alg: &Algebra, name: &str) -> Vec<(String, Module)> {
    let doc: ModulesDoc = serde_json::from_str(fixture(name).and_then(|f| f.modules).expect("fixture modules")).unwrap();
    load_modules(alg, &doc).unwrap()
}

/// Prints one line for a criterion and reports whether every check held.
pub fn verdict(n: usize, title: &str, checks: &[(String, bool)]) -> bool {
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(s, _)| s.as_str()).collect();
    if failed.is_empty() {
        println!("criterion {n:>2}: PASS  {title} ({} checks)", checks.len());
    } else {
        println!("criterion {n:>2}: FAIL  {title}; failed: {}", failed.join("; "));
    }
    failed.is_empty()
}
