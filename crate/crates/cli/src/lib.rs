//! Command-line front end: file formats, commands and reports.

pub mod checks;
pub mod fixtures;
pub mod format;
pub mod report;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use silting_core::algebra::Algebra;
use silting_core::complex::{is_isomorphic_kb, ProjComplex};
use silting_core::fdmodule::{is_isomorphic, Module, DEFAULT_SEARCH_BUDGET};
use silting_core::linalg::Field;
use silting_core::silting::{enumerate_2silt, mutate, Direction, SearchOpts, SiltingObject};
use silting_core::torsion::{
    a_membership, h0, standard_test_modules, torsion_decompose, verify_equivalences, TestModule, TorsionReport,
};

use crate::checks::{summarize, torsion_json, torsion_table, trivial_fixed_points, PipelineSummary, PEIRCE_NOTE};
use crate::format::{AlgebraDoc, ModulesDoc, SiltingDoc};
use crate::report::{digest, ReportDocument};

/// Bad input: unreadable file, schema violation, invalid algebra or complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum DirectionArg {
    Left,
    Right,
}

#[derive(Parser, Debug)]
#[command(name = "silting", version, about = "Exact computations with 2-term silting complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Algebra file (JSON).
    #[arg(long, global = true)]
    pub algebra: Option<PathBuf>,
    /// Silting complex file (JSON, a list of summands).
    #[arg(long, global = true)]
    pub silting: Option<PathBuf>,
    /// Module list file (JSON).
    #[arg(long, global = true)]
    pub modules: Option<PathBuf>,
    /// Override the field of the algebra file: `Q` or `fp:<p>`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for per-object checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Node budget of the mutation search.
    #[arg(long, global = true, default_value_t = 200)]
    pub max_steps: usize,
    /// Treat A as symmetric when reporting sufficient conditions for tilting.
    #[arg(long, global = true)]
    pub assume_symmetric: bool,
    /// The module corpus contains every indecomposable.
    #[arg(long, global = true)]
    pub assume_rep_finite: bool,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Is the complex 2-term silting?
    CheckSilting,
    /// Is the complex tilting?
    CheckTilting,
    /// Mutate at one summand.
    Mutate {
        #[arg(long)]
        index: usize,
        #[arg(long, value_enum)]
        direction: DirectionArg,
    },
    /// All 2-term silting objects reachable from A by mutation.
    #[command(name = "enumerate-2silt")]
    Enumerate2silt,
    /// B = End(T), the silting complex S over B and π: A → End(S).
    Induce,
    /// Torsion pairs and the equivalences between them.
    Torsion,
    /// Run every check on a shipped fixture.
    Verify {
        #[arg(long)]
        fixture: String,
    },
}

/// Output of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let json = report.to_json();
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &json) {
                    return Outcome { code: 2, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", path.display()) };
                }
            }
            let stdout = match cli.format {
                OutputFormat::Json => json,
                OutputFormat::Table => report.to_table(),
            };
            Outcome { code: report.exit_code(), stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("input error: {e}\n") },
    }
}

struct Loaded {
    alg: Algebra,
    report: ReportDocument,
}

fn read(path: &Option<PathBuf>, what: &str) -> Result<(String, String), InputError> {
    let p = path.as_ref().ok_or_else(|| InputError(format!("--{what} is required")))?;
    let text = std::fs::read_to_string(p).map_err(|e| InputError(format!("cannot read {}: {e}", p.display())))?;
    Ok((p.display().to_string(), text))
}

fn parse_json<T: serde::de::DeserializeOwned>(name: &str, text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError(format!("{name}: {e}")))
}

fn field_override(cli: &Cli) -> Result<Option<Field>, InputError> {
    cli.field.as_deref().map(|s| Field::parse(s).map_err(|e| InputError(e.to_string()))).transpose()
}

fn load_algebra_text(name: &str, text: &str, field: Option<&Field>) -> Result<(Algebra, AlgebraDoc), InputError> {
    let doc: AlgebraDoc = parse_json(name, text)?;
    let alg = format::load_algebra(&doc, field).map_err(|e| InputError(format!("{name}: {e}")))?;
    Ok((alg, doc))
}

fn load(cli: &Cli, command: &str) -> Result<Loaded, InputError> {
    let (name, text) = read(&cli.algebra, "algebra")?;
    let (alg, _) = load_algebra_text(&name, &text, field_override(cli)?.as_ref())?;
    let mut report = ReportDocument::new(command, cli.seed);
    report.inputs.push(digest(&name, text.as_bytes()));
    Ok(Loaded { alg, report })
}

fn load_summands(alg: &Algebra, name: &str, text: &str) -> Result<Vec<ProjComplex>, InputError> {
    let doc: SiltingDoc = parse_json(name, text)?;
    doc.summands
        .iter()
        .enumerate()
        .map(|(i, c)| format::load_complex(alg, c).map_err(|e| InputError(format!("{name}: summand {i}: {e}"))))
        .collect()
}

fn silting_object(alg: &Algebra, ts: Vec<ProjComplex>, opts: SearchOpts) -> Result<SiltingObject, InputError> {
    SiltingObject::new(alg, ts, opts).map_err(|e| InputError(e.to_string()))
}

fn load_silting(cli: &Cli, l: &mut Loaded, opts: SearchOpts) -> Result<SiltingObject, InputError> {
    let (name, text) = read(&cli.silting, "silting")?;
    l.report.inputs.push(digest(&name, text.as_bytes()));
    silting_object(&l.alg, load_summands(&l.alg, &name, &text)?, opts)
}

fn load_modules_text(alg: &Algebra, name: &str, text: &str) -> Result<Vec<TestModule>, InputError> {
    let doc: ModulesDoc = parse_json(name, text)?;
    Ok(format::load_modules(alg, &doc)
        .map_err(|e| InputError(format!("{name}: {e}")))?
        .into_iter()
        .map(|(name, module)| TestModule { name, module })
        .collect())
}

fn silting_json(alg: &Algebra, t: &SiltingObject) -> Value {
    json!({ "summands": t.summands.iter().map(|x| format::complex_doc(alg, x)).collect::<Vec<_>>() })
}

fn opts(cli: &Cli) -> SearchOpts {
    SearchOpts { seed: cli.seed, budget: DEFAULT_SEARCH_BUDGET }
}

pub fn execute(cli: &Cli) -> Result<ReportDocument, InputError> {
    let o = opts(cli);
    match &cli.command {
        Command::CheckSilting | Command::CheckTilting => {
            let tilting = matches!(cli.command, Command::CheckTilting);
            let mut l = load(cli, if tilting { "check-tilting" } else { "check-silting" })?;
            let t = load_silting(cli, &mut l, o)?;
            let r = &mut l.report;
            r.claim("t_presilting", t.presilting, json!({ "shifts_scanned": t.presilting_range }));
            r.claim("t_silting", t.is_silting(), json!({ "generation_steps": t.generation_steps }));
            if tilting {
                r.claim("t_tilting", t.is_tilting(&l.alg), Value::Null);
            }
            r.data = json!({
                "summands": t.len(),
                "two_term": t.is_two_term(),
                "width": silting_core::silting::width(&t.summands),
            });
            Ok(l.report)
        }
        Command::Mutate { index, direction } => {
            let mut l = load(cli, "mutate")?;
            let t = load_silting(cli, &mut l, o)?;
            let dir = match direction {
                DirectionArg::Left => Direction::Left,
                DirectionArg::Right => Direction::Right,
            };
            if *index >= t.len() {
                return Err(InputError(format!("--index {index} out of range: T has {} summands", t.len())));
            }
            match mutate(&l.alg, &t, *index, dir, o) {
                Ok(m) => {
                    l.report.claim("mutation_silting", m.result.is_silting() && m.result.is_two_term(), Value::Null);
                    l.report.data = json!({
                        "index": index,
                        "direction": dir.to_string(),
                        "approximation_mults": m.approximation.mults,
                        "new_summand": format::complex_doc(&l.alg, &m.new_summand),
                        "result": silting_json(&l.alg, &m.result),
                    });
                }
                Err(e) => {
                    l.report.skip("mutation_silting", &e.to_string());
                    l.report.data = json!({ "index": index, "direction": dir.to_string(), "error": e.to_string() });
                }
            }
            Ok(l.report)
        }
        Command::Enumerate2silt => {
            let mut l = load(cli, "enumerate-2silt")?;
            let e = enumerate_2silt(&l.alg, cli.max_steps, o);
            l.report.claim("enumeration_complete", e.complete, json!({ "classes": e.classes.len() }));
            l.report.data = json!({
                "count": e.classes.len(),
                "complete": e.complete,
                "classes": e.classes.iter().map(|t| silting_json(&l.alg, t)).collect::<Vec<_>>(),
                "edges": e.edges.iter().map(|(a, b, k, d)| json!([a, b, k, d.to_string()])).collect::<Vec<_>>(),
            });
            Ok(l.report)
        }
        Command::Induce => {
            let mut l = load(cli, "induce")?;
            let t = load_silting(cli, &mut l, o)?;
            pipeline_claims(&mut l.report, &l.alg, &t, cli.assume_symmetric, o);
            Ok(l.report)
        }
        Command::Torsion => {
            let mut l = load(cli, "torsion")?;
            let t = load_silting(cli, &mut l, o)?;
            let extra = match &cli.modules {
                Some(_) => {
                    let (name, text) = read(&cli.modules, "modules")?;
                    l.report.inputs.push(digest(&name, text.as_bytes()));
                    load_modules_text(&l.alg, &name, &text)?
                }
                None => standard_test_modules(&l.alg, o),
            };
            torsion_claims(&mut l.report, &l.alg, &t, &extra, cli.assume_rep_finite, None, o);
            Ok(l.report)
        }
        Command::Verify { fixture } => verify_fixture(cli, fixture, o),
    }
}

fn pipeline_claims(r: &mut ReportDocument, alg: &Algebra, t: &SiltingObject, symmetric: bool, o: SearchOpts) -> Option<PipelineSummary> {
    r.claim("t_silting", t.is_silting(), Value::Null);
    r.claim("t_two_term", t.is_two_term(), Value::Null);
    if !t.is_silting() || !t.is_two_term() {
        r.data = json!({ "error": "T is not 2-term silting" });
        return None;
    }
    match summarize(alg, t, symmetric, o) {
        Ok((bz, s)) => {
            r.claim("s_silting", s.silting, json!({ "shape": s.s_shape }));
            r.claim("annihilator_crosscheck", s.hom_s_neg1 == s.annihilator_dim, json!({
                "hom_s_neg1": s.hom_s_neg1,
                "annihilator_dim": s.annihilator_dim,
            }));
            r.claim("pi_surjective", s.pi_surjective && s.pi_is_algebra_map, json!({ "kernel_dim": s.pi_kernel_dim }));
            r.claim("pi_bijective_iff_tilting", s.pi_bijective == s.t_tilting, json!({
                "pi_bijective": s.pi_bijective,
                "t_tilting": s.t_tilting,
            }));
            r.claim("lift_independence", s.lift_independent, Value::Null);
            r.claim(
                "conditions_imply_tilting",
                !s.conditions.predicts_tilting || s.tilting,
                json!({ "predicted": s.conditions.predicts_tilting, "s_tilting": s.tilting }),
            );
            r.data = json!({
                "dim_B": s.dim_b,
                "peirce_B": s.peirce_b,
                "peirce_note": PEIRCE_NOTE,
                "S_shape": s.s_shape,
                "S": { "summands": bz.s_summands.iter().map(|x| format::complex_doc(bz.b(), x)).collect::<Vec<_>>() },
                "silting": s.silting,
                "tilting": s.tilting,
                "tilting_S": s.tilting,
                "t_tilting": s.t_tilting,
                "pi_surjective": s.pi_surjective,
                "pi_bijective": s.pi_bijective,
                "pi_kernel_dim": s.pi_kernel_dim,
                "annihilator_dim": s.annihilator_dim,
                "hom_s_neg1": s.hom_s_neg1,
                "conditions": s.conditions,
            });
            Some(s)
        }
        Err(e) => {
            r.claim("s_silting", false, json!({ "error": e.to_string() }));
            r.data = json!({ "error": e.to_string() });
            None
        }
    }
}

/// Pairwise direct sums of the corpus, each decomposed.
fn pairwise_decompositions(alg: &Algebra, ts: &[ProjComplex], mods: &[TestModule]) -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let mut count = 0;
    for (i, x) in mods.iter().enumerate() {
        for y in &mods[i..] {
            count += 1;
            let sum = Module::direct_sum(alg, &[&x.module, &y.module]);
            if torsion_decompose(alg, ts, &sum).is_err() {
                failures.push(format!("{} + {}", x.name, y.name));
            }
        }
    }
    (count, failures)
}

struct TorsionExpect<'a> {
    torsion: &'a [&'a str],
    torsion_free: &'a [&'a str],
}

fn torsion_claims(
    r: &mut ReportDocument,
    alg: &Algebra,
    t: &SiltingObject,
    a_tests: &[TestModule],
    exhaustive: bool,
    expect: Option<TorsionExpect>,
    o: SearchOpts,
) -> Option<TorsionReport> {
    if !t.is_silting() || !t.is_two_term() {
        r.claim("t_silting", false, Value::Null);
        return None;
    }
    let bz = match silting_core::induced::induce(alg, t, o) {
        Ok(b) => b,
        Err(e) => {
            r.claim("equivalences", false, json!({ "error": e.to_string() }));
            return None;
        }
    };
    let b_tests = standard_test_modules(bz.b(), o);
    let rep = match verify_equivalences(alg, &bz, a_tests, &b_tests, exhaustive, o) {
        Ok(x) => x,
        Err(e) => {
            r.claim("equivalences", false, json!({ "error": e.to_string() }));
            return None;
        }
    };
    let names = |f: &dyn Fn(&silting_core::torsion::AModuleReport) -> bool| -> Vec<String> {
        rep.a_side.iter().filter(|a| f(a)).map(|a| a.name.clone()).collect()
    };
    let tt = names(&|a| a.membership.torsion);
    let ft = names(&|a| a.membership.torsion_free);
    let membership_ok = match &expect {
        Some(e) => {
            let mut a = tt.clone();
            let mut b = ft.clone();
            let mut x: Vec<String> = e.torsion.iter().map(|s| s.to_string()).collect();
            let mut y: Vec<String> = e.torsion_free.iter().map(|s| s.to_string()).collect();
            a.sort();
            b.sort();
            x.sort();
            y.sort();
            a == x && b == y
        }
        None => rep.a_side.iter().all(|a| a.dim == 0 || !(a.membership.torsion && a.membership.torsion_free)),
    };
    r.claim("torsion_memberships", membership_ok, json!({ "torsion": tt, "torsion_free": ft }));
    let (pairs, pair_failures) = pairwise_decompositions(alg, &t.summands, a_tests);
    let single_failures: Vec<&str> =
        rep.a_side.iter().filter(|a| a.decomposition.is_none()).map(|a| a.name.as_str()).collect();
    r.claim(
        "torsion_decompositions",
        single_failures.is_empty() && pair_failures.is_empty(),
        json!({ "modules": a_tests.len(), "pairs": pairs, "failures": single_failures, "pair_failures": pair_failures }),
    );
    r.claim("hom_vanishing", rep.hom_vanishing, Value::Null);
    let eq_fail: Vec<String> = rep
        .a_side
        .iter()
        .filter(|a| a.roundtrip == Some(false))
        .map(|a| a.name.clone())
        .chain(rep.b_side.iter().filter(|b| b.roundtrip == Some(false)).map(|b| b.name.clone()))
        .collect();
    r.claim("equivalences", eq_fail.is_empty(), json!({ "failures": eq_fail }));
    let pi_fail: Vec<&str> =
        rep.a_side.iter().filter(|a| a.pi_roundtrip == Some(false)).map(|a| a.name.as_str()).collect();
    r.claim("pi_restricted_equivalences", pi_fail.is_empty(), json!({ "failures": pi_fail }));
    let tab_fail: Vec<&str> = rep.b_side.iter().filter(|b| !b.tables_agree).map(|b| b.name.as_str()).collect();
    r.claim("b_side_tables", tab_fail.is_empty(), json!({ "failures": tab_fail }));
    let f_fail: Vec<&str> = rep.a_side.iter().filter(|a| !a.f_matches_hom_h0).map(|a| a.name.as_str()).collect();
    r.claim("f_is_hom_from_h0", f_fail.is_empty(), json!({ "failures": f_fail }));
    r.probabilistic |= rep.probabilistic;
    let mut data = torsion_json(&rep);
    data["table"] = Value::from(torsion_table(&rep));
    r.data = data;
    Some(rep)
}

fn named_sum(alg: &Algebra, mods: &[TestModule], names: &[&str]) -> Option<Module> {
    let parts: Option<Vec<&Module>> =
        names.iter().map(|n| mods.iter().find(|m| m.name == *n).map(|m| &m.module)).collect();
    Some(Module::direct_sum(alg, &parts?))
}

/// Per-`T` checks over the enumerated corpus, run on `jobs` threads.
fn corpus_checks(alg: &Algebra, classes: &[SiltingObject], symmetric: bool, jobs: usize, o: SearchOpts) -> Vec<Value> {
    let check = |t: &SiltingObject| -> Value {
        let mods = standard_test_modules(alg, o);
        let pipeline = summarize(alg, t, symmetric, o);
        let torsion = silting_core::induced::induce(alg, t, o).and_then(|bz| {
            let b_tests = standard_test_modules(bz.b(), o);
            verify_equivalences(alg, &bz, &mods, &b_tests, true, o)
        });
        match (pipeline, torsion) {
            (Ok((_, s)), Ok(rep)) => json!({
                "shape": t.summands.iter().map(checks::shape).collect::<Vec<_>>(),
                "ok": s.claims_hold(),
                "s_silting": s.silting,
                "s_tilting": s.tilting,
                "t_tilting": s.t_tilting,
                "pi_surjective": s.pi_surjective,
                "pi_bijective": s.pi_bijective,
                "hom_s_neg1": s.hom_s_neg1,
                "annihilator_dim": s.annihilator_dim,
                "h_minus1_t_prime_zero": s.conditions.h_minus1_t_prime_zero,
                "predicts_tilting": s.conditions.predicts_tilting,
                "torsion_ok": rep.all_pass(),
                "probabilistic": rep.probabilistic,
            }),
            (p, q) => json!({
                "ok": false,
                "error": p.err().map(|e| e.to_string()).or(q.err().map(|e| e.to_string())),
            }),
        }
    };
    let jobs = jobs.max(1).min(classes.len().max(1));
    let chunk = classes.len().div_ceil(jobs).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> =
            classes.chunks(chunk).map(|c| s.spawn(move || c.iter().map(check).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn verify_fixture(cli: &Cli, name: &str, o: SearchOpts) -> Result<ReportDocument, InputError> {
    let fx = fixtures::fixture(name).ok_or_else(|| {
        let known: Vec<&str> = fixtures::FIXTURES.iter().map(|f| f.name).collect();
        InputError(format!("unknown fixture '{name}', expected one of {}", known.join(", ")))
    })?;
    let field = field_override(cli)?;
    let (alg, _) = load_algebra_text(fx.name, fx.algebra, field.as_ref())?;
    let mut r = ReportDocument::new("verify", cli.seed);
    r.inputs.push(digest(&format!("{}.alg.json", fx.name), fx.algebra.as_bytes()));
    let mut data = serde_json::Map::new();
    data.insert("fixture".into(), Value::from(fx.name));
    data.insert("dim_A".into(), Value::from(alg.dim()));

    let mods = match fx.modules {
        Some(text) => {
            r.inputs.push(digest(&format!("{}.modules.json", fx.name), text.as_bytes()));
            load_modules_text(&alg, fx.name, text)?
        }
        None => standard_test_modules(&alg, o),
    };

    if let Some(text) = fx.silting {
        r.inputs.push(digest(&format!("{}.T.json", fx.name), text.as_bytes()));
        let t = silting_object(&alg, load_summands(&alg, fx.name, text)?, o)?;
        let mut sub = ReportDocument::new("induce", cli.seed);
        let summary = pipeline_claims(&mut sub, &alg, &t, cli.assume_symmetric, o);
        r.claims.append(&mut sub.claims);
        if let Value::Object(m) = sub.data {
            data.extend(m);
        }
        if let (Some(e), Some(s)) = (&fx.expect, &summary) {
            let h = h0(&alg, &t.summands);
            let h_ok = named_sum(&alg, &mods, e.h0).is_some_and(|m| is_isomorphic(&alg, &h, &m, o.seed, o.budget).is_iso());
            r.claim("h0_support_tau_tilting", h_ok, json!({ "expected": e.h0, "dim": h.dim() }));
            let mut got = s.s_shape.clone();
            let mut want = e.s_shape.to_vec();
            got.sort();
            want.sort();
            r.claim("s_shape", got == want, json!({ "shape": s.s_shape }));
            r.claim("s_tilting", s.tilting == e.s_tilting, json!({ "hom_s_neg1": s.hom_s_neg1 }));
        }
        let mut sub = ReportDocument::new("torsion", cli.seed);
        let expect = fx.expect.as_ref().map(|e| TorsionExpect { torsion: e.torsion, torsion_free: e.torsion_free });
        torsion_claims(&mut sub, &alg, &t, &mods, fx.rep_finite, expect, o);
        r.claims.append(&mut sub.claims);
        r.probabilistic |= sub.probabilistic;
        data.insert("torsion".into(), sub.data);
        if let Some(s) = &summary {
            let f5 = Field::prime(5).expect("5 is prime");
            let (alg5, _) = load_algebra_text(fx.name, fx.algebra, Some(&f5))?;
            let t5 = silting_object(&alg5, load_summands(&alg5, fx.name, text)?, o)?;
            let pkg = silting_core::induced::endomorphism_algebra(
                &alg5,
                &t5.summands,
                &silting_core::induced::letter_labels(t5.len()),
            );
            let (dim5, peirce5) = match &pkg {
                Ok(p) => (Some(p.dim()), Some(p.algebra.peirce_dims())),
                Err(_) => (None, None),
            };
            r.claim(
                "dim_b_field_independent",
                dim5 == Some(s.dim_b) && peirce5.as_ref() == Some(&s.peirce_b),
                json!({ "Q": s.dim_b, "F5": dim5 }),
            );
        }
    }

    let fixed = trivial_fixed_points(&alg, o);
    match fixed {
        Ok(v) => {
            let ok = v.as_array().is_some_and(|a| a.iter().all(|x| x["ok"] == Value::Bool(true)));
            r.claim("trivial_fixed_points", ok, v);
        }
        Err(e) => r.claim("trivial_fixed_points", false, json!({ "error": e.to_string() })),
    }

    let e = enumerate_2silt(&alg, cli.max_steps, o);
    r.claim("enumeration_complete", e.complete, json!({ "classes": e.classes.len() }));
    let corpus = corpus_checks(&alg, &e.classes, cli.assume_symmetric, cli.jobs, o);
    let bad: Vec<usize> = corpus.iter().enumerate().filter(|(_, c)| c["ok"] != Value::Bool(true)).map(|(i, _)| i).collect();
    r.claim("s_silting", corpus.iter().all(|c| c["s_silting"] == Value::Bool(true)), json!({ "scope": "corpus" }));
    r.claim("pi_surjective", corpus.iter().all(|c| c["pi_surjective"] == Value::Bool(true)), json!({ "scope": "corpus" }));
    r.claim(
        "pi_bijective_iff_tilting",
        corpus.iter().all(|c| c["pi_bijective"] == c["t_tilting"]),
        json!({ "scope": "corpus" }),
    );
    r.claim(
        "annihilator_crosscheck",
        corpus.iter().all(|c| c["hom_s_neg1"] == c["annihilator_dim"] && !c["annihilator_dim"].is_null()),
        json!({ "scope": "corpus" }),
    );
    r.claim("conditions_imply_tilting", bad.is_empty(), json!({ "scope": "corpus", "failures": bad }));
    let torsion_bad: Vec<usize> =
        corpus.iter().enumerate().filter(|(_, c)| c["torsion_ok"] != Value::Bool(true)).map(|(i, _)| i).collect();
    r.claim("equivalences", torsion_bad.is_empty(), json!({ "scope": "corpus", "failures": torsion_bad }));
    r.probabilistic |= corpus.iter().any(|c| c["probabilistic"] == Value::Bool(true));
    data.insert("corpus".into(), Value::Array(corpus));
    r.data = Value::Object(data);
    Ok(r)
}

/// Equality of two silting objects up to isomorphism of summands, for tests.
pub fn same_summands(alg: &Algebra, a: &[ProjComplex], b: &[ProjComplex], o: SearchOpts) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| is_isomorphic_kb(alg, x, y, o.seed, o.budget).is_iso()))
}

/// Modules in the corpus that are torsion for `T`, by name.
pub fn torsion_names(alg: &Algebra, ts: &[ProjComplex], mods: &[TestModule]) -> Vec<String> {
    mods.iter().filter(|m| a_membership(alg, ts, &m.module).torsion).map(|m| m.name.clone()).collect()
}
