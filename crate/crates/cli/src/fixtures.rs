/// Input files shipped with the tool, with what the worked example pins.
pub struct Fixture {
    pub name: &'static str,
    pub algebra: &'static str,
    pub silting: Option<&'static str>,
    pub modules: Option<&'static str>,
    /// Every indecomposable appears among the modules (or the standard test
    /// modules when none are given).
    pub rep_finite: bool,
    pub expect: Option<Expectations>,
}

pub struct Expectations {
    /// `H^0(T)` as a sum of named modules.
    pub h0: &'static [&'static str],
    pub torsion: &'static [&'static str],
    pub torsion_free: &'static [&'static str],
    pub s_shape: &'static [&'static str],
    pub s_tilting: bool,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "a3_zero_rel",
        algebra: include_str!("../fixtures/a3_zero_rel.alg.json"),
        silting: Some(include_str!("../fixtures/a3_zero_rel.T.json")),
        modules: Some(include_str!("../fixtures/a3_zero_rel.modules.json")),
        rep_finite: true,
        expect: Some(Expectations {
            h0: &["P1", "S1"],
            torsion: &["P1", "S1"],
            torsion_free: &["S2", "S3", "P2"],
            s_shape: &["shifted projective", "two-term", "stalk projective"],
            s_tilting: true,
        }),
    },
    Fixture {
        name: "a2",
        algebra: include_str!("../fixtures/a2.alg.json"),
        silting: None,
        modules: None,
        rep_finite: true,
        expect: None,
    },
    Fixture {
        name: "a3",
        algebra: include_str!("../fixtures/a3.alg.json"),
        silting: None,
        modules: None,
        rep_finite: true,
        expect: None,
    },
    Fixture {
        name: "kx3",
        algebra: include_str!("../fixtures/kx3.alg.json"),
        silting: None,
        modules: None,
        rep_finite: true,
        expect: None,
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
