//! JSON documents for algebras, complexes, silting objects and modules.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use silting_core::algebra::{Algebra, Arrow, Quiver};
use silting_core::complex::{PMap, ProjComplex};
use silting_core::fdmodule::Module;
use silting_core::linalg::{Field, Matrix, Scalar};

use crate::InputError;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ArrowDoc {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Term {
    pub coef: Value,
    /// Arrow names in product order: the rightmost arrow is applied first.
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraDoc {
    #[serde(default = "default_field")]
    pub field: String,
    pub quiver: QuiverDoc,
    #[serde(default)]
    pub relations: Vec<Vec<Term>>,
    #[serde(default = "default_composition")]
    pub composition: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_path_length: Option<usize>,
}

fn default_field() -> String {
    "Q".into()
}

fn default_composition() -> String {
    "right_to_left".into()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermEntry {
    pub vertex: String,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

/// A bounded complex of projectives. `differentials[k]` is `d^k: X^k → X^{k+1}`
/// with rows indexed by the summands of `X^{k+1}` and columns by those of `X^k`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComplexDoc {
    pub terms: BTreeMap<i32, Vec<TermEntry>>,
    #[serde(default)]
    pub differentials: BTreeMap<i32, Vec<Vec<Vec<Term>>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SiltingDoc {
    pub summands: Vec<ComplexDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModuleDoc {
    pub name: String,
    pub dims: Vec<usize>,
    /// Arrow name to matrix with `dims[from]` rows and `dims[to]` columns.
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<Value>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModulesDoc {
    pub modules: Vec<ModuleDoc>,
}

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

pub fn parse_scalar(field: &Field, v: &Value) -> Result<Scalar, InputError> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(bad(format!("expected a number or a fraction string, got {v}"))),
    };
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad(format!("bad scalar '{s}'")));
    let x = match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == BigInt::from(0) {
                return Err(bad(format!("zero denominator in '{s}'")));
            }
            Scalar::new(parse_int(n)?, d)
        }
        None => Scalar::from_integer(parse_int(&s)?),
    };
    if let Field::Prime(p) = field {
        if x.denom() % BigInt::from(*p) == BigInt::from(0) {
            return Err(bad(format!("'{s}' is not defined in characteristic {p}")));
        }
    }
    Ok(field.reduce(&x))
}

pub fn scalar_value(x: &Scalar) -> Value {
    if x.is_integer() {
        if let Ok(n) = x.numer().to_string().parse::<i64>() {
            return Value::from(n);
        }
    }
    Value::String(x.to_string())
}

/// `max(|Q_0|, longest relation term) + 1`, enough to see the ideal saturate
/// on the usual examples.
fn default_max_path_length(doc: &AlgebraDoc) -> usize {
    let longest = doc.relations.iter().flatten().map(|t| t.path.len()).max().unwrap_or(0);
    doc.quiver.vertices.len().max(longest) + 1
}

pub fn load_algebra(doc: &AlgebraDoc, field_override: Option<&Field>) -> Result<Algebra, InputError> {
    if doc.composition != "right_to_left" {
        return Err(bad(format!("unsupported composition convention '{}'", doc.composition)));
    }
    let field = match field_override {
        Some(f) => f.clone(),
        None => Field::parse(&doc.field).map_err(|e| bad(e.to_string()))?,
    };
    let vertex = |label: &str| {
        doc.quiver.vertices.iter().position(|v| v == label).ok_or_else(|| bad(format!("unknown vertex '{label}'")))
    };
    let arrows = doc
        .quiver
        .arrows
        .iter()
        .map(|a| Ok(Arrow { name: a.name.clone(), from: vertex(&a.from)?, to: vertex(&a.to)? }))
        .collect::<Result<Vec<_>, InputError>>()?;
    let quiver = Quiver::new(doc.quiver.vertices.clone(), arrows).map_err(|e| bad(e.to_string()))?;
    let relations = doc
        .relations
        .iter()
        .map(|r| {
            r.iter()
                .map(|t| {
                    let path = t
                        .path
                        .iter()
                        .map(|n| quiver.arrow_index(n).ok_or_else(|| bad(format!("unknown arrow '{n}'"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok((parse_scalar(&field, &t.coef)?, path))
                })
                .collect::<Result<Vec<_>, InputError>>()
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    let len = doc.max_path_length.unwrap_or_else(|| default_max_path_length(doc));
    Algebra::path_algebra(field, quiver, relations, len).map_err(|e| bad(e.to_string()))
}

pub fn algebra_doc(alg: &Algebra) -> Option<AlgebraDoc> {
    let p = alg.presentation.as_ref()?;
    let q = &p.quiver;
    Some(AlgebraDoc {
        field: alg.field.to_string(),
        quiver: QuiverDoc {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowDoc { name: a.name.clone(), from: q.vertices[a.from].clone(), to: q.vertices[a.to].clone() })
                .collect(),
        },
        relations: p
            .relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, path)| Term {
                        coef: scalar_value(c),
                        path: path.iter().map(|&x| q.arrows[x].name.clone()).collect(),
                    })
                    .collect()
            })
            .collect(),
        composition: default_composition(),
        max_path_length: Some(p.max_path_length),
    })
}

fn expand(alg: &Algebra, entries: &[TermEntry]) -> Result<Vec<usize>, InputError> {
    let mut out = Vec::new();
    for e in entries {
        let v = alg
            .vertex_labels
            .iter()
            .position(|l| *l == e.vertex)
            .ok_or_else(|| bad(format!("unknown vertex '{}'", e.vertex)))?;
        out.extend(std::iter::repeat(v).take(e.mult));
    }
    Ok(out)
}

/// An element of `Hom(P_v, P_w) = e_w A e_v` given as a combination of paths
/// from `v` to `w`.
fn block_element(alg: &Algebra, v: usize, w: usize, terms: &[Term]) -> Result<Vec<Scalar>, InputError> {
    let f = &alg.field;
    let p = alg.presentation.as_ref().ok_or_else(|| bad("algebra has no quiver"))?;
    let mut acc = f.zero_vec(alg.dim());
    for t in terms {
        let path = t
            .path
            .iter()
            .map(|n| p.quiver.arrow_index(n).ok_or_else(|| bad(format!("unknown arrow '{n}'"))))
            .collect::<Result<Vec<_>, _>>()?;
        let ends = if path.is_empty() { Some((v, v)) } else { p.quiver.path_ends(&path) };
        if ends != Some((v, w)) {
            return Err(bad(format!(
                "path [{}] does not run from {} to {}",
                t.path.join(", "),
                alg.vertex_labels[v],
                alg.vertex_labels[w]
            )));
        }
        let x = alg.path_element(v, &path).map_err(|e| bad(e.to_string()))?;
        f.axpy(&mut acc, &parse_scalar(f, &t.coef)?, &x);
    }
    Ok(alg.block(v, w).iter().map(|&b| acc[b].clone()).collect())
}

pub fn load_complex(alg: &Algebra, doc: &ComplexDoc) -> Result<ProjComplex, InputError> {
    let (Some(&lo), Some(&hi)) = (doc.terms.keys().next(), doc.terms.keys().next_back()) else {
        return Ok(ProjComplex::zero());
    };
    for &k in doc.differentials.keys() {
        if k < lo || k >= hi {
            return Err(bad(format!("differential in degree {k} has no target term")));
        }
    }
    let mut terms = Vec::new();
    for k in lo..=hi {
        terms.push(match doc.terms.get(&k) {
            Some(t) => expand(alg, t)?,
            None => vec![],
        });
    }
    let mut diffs = Vec::new();
    for k in lo..hi {
        let (src, tgt) = (&terms[(k - lo) as usize], &terms[(k - lo + 1) as usize]);
        let mut d = PMap::zero(alg, src, tgt);
        if let Some(m) = doc.differentials.get(&k) {
            if m.len() != tgt.len() || m.iter().any(|r| r.len() != src.len()) {
                return Err(bad(format!("differential in degree {k} should be {}x{}", tgt.len(), src.len())));
            }
            for (t, row) in m.iter().enumerate() {
                for (s, e) in row.iter().enumerate() {
                    d.entries[t][s] = block_element(alg, src[s], tgt[t], e)?;
                }
            }
        }
        diffs.push(d);
    }
    ProjComplex::new(alg, lo, terms, diffs).map_err(|e| match e {
        silting_core::error::Error::DifferentialSquare(k) => bad(format!("d^2 != 0 at degree {k}")),
        other => bad(other.to_string()),
    })
}

fn group(alg: &Algebra, vs: &[usize]) -> Vec<TermEntry> {
    let mut out: Vec<TermEntry> = Vec::new();
    for &v in vs {
        match out.last_mut() {
            Some(e) if e.vertex == alg.vertex_labels[v] => e.mult += 1,
            _ => out.push(TermEntry { vertex: alg.vertex_labels[v].clone(), mult: 1 }),
        }
    }
    out
}

pub fn complex_doc(alg: &Algebra, x: &ProjComplex) -> ComplexDoc {
    let p = alg.presentation.as_ref();
    let mut terms = BTreeMap::new();
    let mut differentials = BTreeMap::new();
    for k in x.degrees() {
        terms.insert(k, group(alg, x.term(k)));
        if k < x.hi() {
            let d = x.diff(alg, k);
            if d.is_zero() {
                continue;
            }
            let m = (0..d.tgt.len())
                .map(|t| {
                    (0..d.src.len())
                        .map(|s| {
                            let blk = alg.block(d.src[s], d.tgt[t]);
                            blk.iter()
                                .zip(&d.entries[t][s])
                                .filter(|(_, c)| **c != alg.field.zero())
                                .map(|(&b, c)| Term {
                                    coef: scalar_value(c),
                                    path: match p {
                                        Some(p) => p.words[b].iter().map(|&a| p.quiver.arrows[a].name.clone()).collect(),
                                        None => vec![alg.basis_labels[b].clone()],
                                    },
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            differentials.insert(k, m);
        }
    }
    ComplexDoc { terms, differentials }
}

pub fn load_modules(alg: &Algebra, doc: &ModulesDoc) -> Result<Vec<(String, Module)>, InputError> {
    let p = alg.presentation.as_ref().ok_or_else(|| bad("algebra has no quiver"))?;
    let f = &alg.field;
    doc.modules
        .iter()
        .map(|m| {
            if m.dims.len() != alg.num_vertices() {
                return Err(bad(format!("module '{}' needs one dimension per vertex", m.name)));
            }
            for name in m.action.keys() {
                if p.quiver.arrow_index(name).is_none() {
                    return Err(bad(format!("module '{}' acts by unknown arrow '{name}'", m.name)));
                }
            }
            let acts = p
                .quiver
                .arrows
                .iter()
                .map(|a| match m.action.get(&a.name) {
                    None => Ok(Matrix::zeros(m.dims[a.from], m.dims[a.to])),
                    Some(rows) => {
                        let rows = rows
                            .iter()
                            .map(|r| r.iter().map(|x| parse_scalar(f, x)).collect::<Result<Vec<_>, _>>())
                            .collect::<Result<Vec<_>, _>>()?;
                        if rows.len() != m.dims[a.from] || rows.iter().any(|r| r.len() != m.dims[a.to]) {
                            return Err(bad(format!(
                                "module '{}': arrow '{}' should act by a {}x{} matrix",
                                m.name, a.name, m.dims[a.from], m.dims[a.to]
                            )));
                        }
                        Ok(Matrix::from_rows(f, &rows, m.dims[a.to]))
                    }
                })
                .collect::<Result<Vec<_>, InputError>>()?;
            let module = Module::from_arrow_actions(alg, m.dims.clone(), acts).map_err(|e| bad(e.to_string()))?;
            Ok((m.name.clone(), module))
        })
        .collect()
}

pub fn module_doc(alg: &Algebra, name: &str, m: &Module) -> Option<ModuleDoc> {
    let p = alg.presentation.as_ref()?;
    let action = p
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(x, a)| {
            let mat = &m.acts[p.arrow_basis[x]];
            let rows = (0..mat.rows).map(|i| (0..mat.cols).map(|j| scalar_value(mat.get(i, j))).collect()).collect();
            (a.name.clone(), rows)
        })
        .collect();
    Some(ModuleDoc { name: name.into(), dims: m.dims.clone(), action })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use silting_core::fdmodule::is_isomorphic;

    fn zero_rel() -> (Algebra, AlgebraDoc) {
        let doc: AlgebraDoc = serde_json::from_str(fixture("a3_zero_rel").unwrap().algebra).unwrap();
        (load_algebra(&doc, None).unwrap(), doc)
    }

    #[test]
    fn fixtures_load() {
        let (a, _) = zero_rel();
        assert_eq!(a.dim(), 5);
        let mods: ModulesDoc = serde_json::from_str(fixture("a3_zero_rel").unwrap().modules.unwrap()).unwrap();
        let mods = load_modules(&a, &mods).unwrap();
        assert!(is_isomorphic(&a, &mods[0].1, &Module::projective(&a, 0), 0, 100).is_iso());
        assert!(is_isomorphic(&a, &mods[4].1, &Module::projective(&a, 1), 0, 100).is_iso());
        for f in crate::fixtures::FIXTURES {
            let doc: AlgebraDoc = serde_json::from_str(f.algebra).unwrap();
            load_algebra(&doc, None).unwrap().verify_axioms().unwrap();
        }
    }

    #[test]
    fn round_trips() {
        let (a, _) = zero_rel();
        let doc2 = algebra_doc(&a).unwrap();
        let text = serde_json::to_string(&doc2).unwrap();
        let a2 = load_algebra(&serde_json::from_str(&text).unwrap(), None).unwrap();
        assert_eq!(a, a2);
        let t: SiltingDoc = serde_json::from_str(fixture("a3_zero_rel").unwrap().silting.unwrap()).unwrap();
        for c in &t.summands {
            let x = load_complex(&a, c).unwrap();
            let back: ComplexDoc = serde_json::from_str(&serde_json::to_string(&complex_doc(&a, &x)).unwrap()).unwrap();
            assert_eq!(load_complex(&a, &back).unwrap(), x);
        }
        let mods: ModulesDoc = serde_json::from_str(fixture("a3_zero_rel").unwrap().modules.unwrap()).unwrap();
        for (name, m) in load_modules(&a, &mods).unwrap() {
            let doc = ModulesDoc { modules: vec![module_doc(&a, &name, &m).unwrap()] };
            assert_eq!(load_modules(&a, &doc).unwrap()[0].1, m);
        }
    }

    #[test]
    fn scalars() {
        let q = Field::Rationals;
        let f5 = Field::prime(5).unwrap();
        assert_eq!(parse_scalar(&q, &Value::from("-3/6")).unwrap(), Scalar::new((-1).into(), 2.into()));
        assert_eq!(parse_scalar(&f5, &Value::from(7)).unwrap(), Scalar::from_integer(2.into()));
        assert!(parse_scalar(&f5, &Value::from("1/5")).is_err());
        assert!(parse_scalar(&q, &Value::from("1/0")).is_err());
        assert!(parse_scalar(&q, &Value::Bool(true)).is_err());
        assert_eq!(scalar_value(&Scalar::new(1.into(), 2.into())), Value::from("1/2"));
    }

    #[test]
    fn rejects_bad_input() {
        let (_, mut doc) = zero_rel();
        doc.relations = vec![vec![Term { coef: Value::from(1), path: vec!["alpha".into()] }]];
        assert!(load_algebra(&doc, None).unwrap_err().0.contains("non-admissible"));
        let (a, _) = zero_rel();
        let bad: ComplexDoc = serde_json::from_str(
            r#"{"terms": {"-1": [{"vertex": "3"}], "0": [{"vertex": "2"}], "1": [{"vertex": "1"}]},
                "differentials": {"-1": [[[{"coef": 1, "path": ["beta"]}]]], "0": [[[{"coef": 1, "path": ["alpha"]}]]]}}"#,
        )
        .unwrap();
        assert!(load_complex(&a, &bad).is_ok());
        let a_free = load_algebra(&AlgebraDoc { relations: vec![], ..zero_rel().1 }, None).unwrap();
        let err = load_complex(&a_free, &bad).unwrap_err().0;
        assert!(err.contains("degree -1"), "{err}");
        let wrong_path: ComplexDoc = serde_json::from_str(
            r#"{"terms": {"-1": [{"vertex": "1"}], "0": [{"vertex": "2"}]},
                "differentials": {"-1": [[[{"coef": 1, "path": ["alpha"]}]]]}}"#,
        )
        .unwrap();
        assert!(load_complex(&a, &wrong_path).is_err());
    }
}
