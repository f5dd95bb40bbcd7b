use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    pub locator: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub probabilistic: bool,
    pub claims: Vec<Claim>,
    pub data: Value,
}

/// Where each claim comes from. Ids are stable; every id has exactly one
/// locator.
pub const LOCATORS: &[(&str, &str)] = &[
    ("t_presilting", "definition of presilting: Hom(T, Σ^i T) = 0 for i > 0"),
    ("t_silting", "definition of silting: presilting and thick closure contains A"),
    ("t_two_term", "2-term: concentrated in degrees -1 and 0"),
    ("t_tilting", "definition of tilting: silting with Hom(T, Σ^i T) = 0 for i < 0"),
    ("mutation_silting", "mutation of a silting object is silting"),
    ("enumeration_complete", "exchange graph search closes"),
    ("h0_support_tau_tilting", "worked example: support τ-tilting module H^0(T) = P1 ⊕ S1"),
    ("s_silting", "S is 2-term silting over B = End(T)"),
    ("s_shape", "worked example: S has a shifted projective, a two-term and a stalk summand"),
    ("s_tilting", "S tilting iff Hom(S, Σ^{-1} S) = 0"),
    ("annihilator_crosscheck", "Hom(S, Σ^{-1} S) ≅ {g: T″ → T′ with gf = 0 = fg}"),
    ("pi_surjective", "π: A → End(S) is surjective"),
    ("pi_bijective_iff_tilting", "π is an isomorphism iff T is tilting"),
    ("lift_independence", "π is well defined: lifts are unique up to homotopy"),
    ("conditions_imply_tilting", "sufficient conditions for S to be tilting"),
    ("trivial_fixed_points", "T = A gives S ≅ ΣB and T = ΣA gives S ≅ B"),
    ("torsion_memberships", "torsion pair (𝒯_T, ℱ_T) by Hom-vanishing"),
    ("torsion_decompositions", "torsion pair axiom: every module has a torsion decomposition"),
    ("hom_vanishing", "torsion pair axiom: Hom(𝒯_T, ℱ_T) = 0"),
    ("equivalences", "Hom(T,?) and Hom(T,Σ?) are equivalences onto 𝒴_T and 𝒳_T"),
    ("pi_restricted_equivalences", "π^* restricted equivalences between ℱ_T and 𝒯_S, 𝒯_T and ℱ_S"),
    ("b_side_tables", "𝒯_S = 𝒳_T and ℱ_S = 𝒴_T"),
    ("f_is_hom_from_h0", "F ≅ Hom_A(H^0(T), ?)"),
    ("dim_b_field_independent", "dim B agrees over Q and F_5"),
];

pub fn locator(id: &str) -> &'static str {
    LOCATORS.iter().find(|(i, _)| *i == id).map(|(_, l)| *l).unwrap_or("unregistered claim")
}

pub fn digest(name: &str, bytes: &[u8]) -> InputDigest {
    InputDigest { name: name.into(), sha256: format!("{:x}", Sha256::digest(bytes)) }
}

impl ReportDocument {
    pub fn new(command: &str, seed: u64) -> ReportDocument {
        ReportDocument {
            tool: "silting",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            inputs: vec![],
            seed,
            probabilistic: false,
            claims: vec![],
            data: Value::Null,
        }
    }

    pub fn claim(&mut self, id: &str, ok: bool, witness: Value) {
        self.claims.push(Claim { id: id.into(), locator: locator(id), status: Status::from_bool(ok), witness });
    }

    pub fn skip(&mut self, id: &str, why: &str) {
        self.claims.push(Claim { id: id.into(), locator: locator(id), status: Status::Skipped, witness: Value::from(why) });
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{} {} ({})\n", self.tool, self.version, self.command);
        let w = self.claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.claims {
            let s = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("  {s}  {:w$}  {}\n", c.id, c.locator));
        }
        if let Some(rows) = self.data.get("table").and_then(Value::as_array) {
            out.push('\n');
            for r in rows {
                out.push_str(&format!("  {}\n", r.as_str().unwrap_or_default()));
            }
        }
        out.push_str(if self.passed() { "all claims pass\n" } else { "some claims fail\n" });
        out
    }
}
