//! Run configuration. The JSON schema is described in `CONFIG.md`.

use std::path::{Path, PathBuf};

use qcti::identities::VanishingCase;
use qcti::partitions::Partition;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// An integer parameter range: a single value, an explicit list, or an
/// inclusive span `{"from": lo, "to": hi}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Range {
    One(i64),
    List(Vec<i64>),
    Span { from: i64, to: i64 },
}

impl Range {
    pub fn span(from: i64, to: i64) -> Self {
        Range::Span { from, to }
    }

    pub fn values(&self) -> Vec<i64> {
        match self {
            Range::One(v) => vec![*v],
            Range::List(v) => v.clone(),
            Range::Span { from, to } => (*from..=*to).collect(),
        }
    }

    fn validate(&self, what: &str) -> Result<(), CliError> {
        if self.values().is_empty() {
            return Err(CliError::Config(format!("range `{what}` is empty")));
        }
        Ok(())
    }
}

fn nonempty<T>(v: &[T], what: &str) -> Result<(), CliError> {
    if v.is_empty() {
        return Err(CliError::Config(format!("list `{what}` is empty")));
    }
    Ok(())
}

fn default_partitions() -> Vec<Partition> {
    vec![Partition::empty()]
}

/// Ranges for the identity suites. Unused fields are ignored by suites that
/// do not take them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IdentityGrid {
    pub n: Range,
    pub n0: Range,
    pub a: Range,
    pub b: Range,
    pub c: Range,
    pub l: Range,
    pub m: Range,
    pub mu: Vec<Partition>,
    pub lambda: Vec<Partition>,
}

impl Default for IdentityGrid {
    fn default() -> Self {
        IdentityGrid {
            n: Range::span(1, 2),
            n0: Range::One(0),
            a: Range::span(0, 2),
            b: Range::span(0, 2),
            c: Range::span(0, 2),
            l: Range::One(0),
            m: Range::One(0),
            mu: default_partitions(),
            lambda: default_partitions(),
        }
    }
}

impl IdentityGrid {
    fn validate(&self) -> Result<(), CliError> {
        for (r, w) in [
            (&self.n, "n"),
            (&self.n0, "n0"),
            (&self.a, "a"),
            (&self.b, "b"),
            (&self.c, "c"),
            (&self.l, "l"),
            (&self.m, "m"),
        ] {
            r.validate(w)?;
        }
        nonempty(&self.mu, "mu")?;
        nonempty(&self.lambda, "lambda")
    }
}

/// Ranges for the splitting formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplittingGrid {
    pub n: Range,
    pub n0: Range,
    pub c: Range,
    /// Any of `"S"`, `"T"`.
    pub forms: Vec<String>,
}

impl Default for SplittingGrid {
    fn default() -> Self {
        SplittingGrid {
            n: Range::span(2, 3),
            n0: Range::span(0, 3),
            c: Range::span(1, 3),
            forms: vec!["S".into(), "T".into()],
        }
    }
}

/// Generated vanishing instances plus explicit ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VanishingGrid {
    /// Any of `ex38`, `lem36`, `lem37`, `lem310`.
    pub kinds: Vec<String>,
    pub n: Range,
    pub n0: Range,
    pub c: Range,
    pub l: Range,
    pub m: Range,
    /// Largest `|lambda|` for `lem36`.
    pub max_size: u32,
    /// Largest `sum(t)` for `lem310`.
    pub max_sum: u32,
    pub cases: Vec<VanishingCase>,
}

impl Default for VanishingGrid {
    fn default() -> Self {
        VanishingGrid {
            kinds: vec!["ex38".into(), "lem36".into(), "lem37".into(), "lem310".into()],
            n: Range::span(1, 2),
            n0: Range::span(0, 2),
            c: Range::span(1, 2),
            l: Range::span(1, 2),
            m: Range::span(0, 2),
            max_size: 2,
            max_sum: 3,
            cases: Vec::new(),
        }
    }
}

/// Ranges for the permutation and key lemma checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CombinatoricsGrid {
    /// Any of `monotone`, `key`, `subs`, `specialcase`.
    pub kinds: Vec<String>,
    pub s: Range,
    pub b: Range,
    pub c: Range,
    pub t: Range,
}

impl Default for CombinatoricsGrid {
    fn default() -> Self {
        CombinatoricsGrid {
            kinds: vec!["monotone".into(), "key".into(), "subs".into(), "specialcase".into()],
            s: Range::span(1, 4),
            b: Range::span(0, 2),
            c: Range::span(1, 3),
            t: Range::span(1, 3),
        }
    }
}

/// `which` selects the `B` or `C` constant term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExtensionGrid {
    pub which: Vec<String>,
    pub n: Range,
    pub n0: Range,
    pub b: Range,
    pub c: Range,
    pub l: Range,
    pub m: Range,
    pub mu: Vec<Partition>,
    /// Extra interpolation nodes for `polynomiality`.
    pub extra: usize,
}

impl Default for ExtensionGrid {
    fn default() -> Self {
        ExtensionGrid {
            which: vec!["B".into(), "C".into()],
            n: Range::One(2),
            n0: Range::span(0, 1),
            b: Range::span(0, 1),
            c: Range::span(2, 3),
            l: Range::span(0, 1),
            m: Range::span(1, 2),
            mu: default_partitions(),
            extra: 2,
        }
    }
}

/// One suite entry of the config, tagged by `"suite"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "suite", rename_all = "snake_case")]
pub enum SuiteSpec {
    Qmorris(IdentityGrid),
    Thm11(IdentityGrid),
    Thm12(IdentityGrid),
    Aflt(IdentityGrid),
    Splitting(SplittingGrid),
    Vanishing(VanishingGrid),
    Combinatorics(CombinatoricsGrid),
    Roots(ExtensionGrid),
    Polynomiality(ExtensionGrid),
    SpecialPoints(ExtensionGrid),
}

pub const SUITE_IDS: [&str; 10] = [
    "qmorris",
    "thm11",
    "thm12",
    "aflt",
    "splitting",
    "vanishing",
    "combinatorics",
    "roots",
    "polynomiality",
    "special_points",
];

impl SuiteSpec {
    pub fn id(&self) -> &'static str {
        match self {
            SuiteSpec::Qmorris(_) => "qmorris",
            SuiteSpec::Thm11(_) => "thm11",
            SuiteSpec::Thm12(_) => "thm12",
            SuiteSpec::Aflt(_) => "aflt",
            SuiteSpec::Splitting(_) => "splitting",
            SuiteSpec::Vanishing(_) => "vanishing",
            SuiteSpec::Combinatorics(_) => "combinatorics",
            SuiteSpec::Roots(_) => "roots",
            SuiteSpec::Polynomiality(_) => "polynomiality",
            SuiteSpec::SpecialPoints(_) => "special_points",
        }
    }

    /// The suite with its default grid.
    pub fn default_for(id: &str) -> Result<Self, CliError> {
        let ident = IdentityGrid::default;
        Ok(match id {
            "qmorris" => SuiteSpec::Qmorris(ident()),
            "thm11" => SuiteSpec::Thm11(IdentityGrid {
                n: Range::span(2, 3),
                n0: Range::span(0, 2),
                c: Range::span(1, 3),
                l: Range::span(0, 1),
                mu: vec![Partition::empty(), qcti::partitions::part(&[1])],
                ..ident()
            }),
            "thm12" => SuiteSpec::Thm12(IdentityGrid {
                n: Range::One(2),
                n0: Range::span(0, 1),
                c: Range::span(2, 3),
                l: Range::span(0, 1),
                m: Range::span(1, 2),
                ..ident()
            }),
            "aflt" => SuiteSpec::Aflt(IdentityGrid {
                c: Range::span(1, 2),
                lambda: vec![Partition::empty(), qcti::partitions::part(&[1])],
                mu: vec![Partition::empty(), qcti::partitions::part(&[1])],
                ..ident()
            }),
            "splitting" => SuiteSpec::Splitting(SplittingGrid::default()),
            "vanishing" => SuiteSpec::Vanishing(VanishingGrid::default()),
            "combinatorics" => SuiteSpec::Combinatorics(CombinatoricsGrid::default()),
            "roots" => SuiteSpec::Roots(ExtensionGrid::default()),
            "polynomiality" => SuiteSpec::Polynomiality(ExtensionGrid::default()),
            "special_points" => SuiteSpec::SpecialPoints(ExtensionGrid { m: Range::One(1), ..ExtensionGrid::default() }),
            other => return Err(CliError::Usage(format!("unknown suite `{other}`; expected one of {}", SUITE_IDS.join(", ")))),
        })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let check_forms = |v: &[String], allowed: &[&str], what: &str| -> Result<(), CliError> {
            nonempty(v, what)?;
            match v.iter().find(|x| !allowed.contains(&x.as_str())) {
                Some(x) => Err(CliError::Config(format!("`{x}` is not a valid entry of `{what}`"))),
                None => Ok(()),
            }
        };
        match self {
            SuiteSpec::Qmorris(g) | SuiteSpec::Thm11(g) | SuiteSpec::Thm12(g) | SuiteSpec::Aflt(g) => g.validate(),
            SuiteSpec::Splitting(g) => {
                g.n.validate("n")?;
                g.n0.validate("n0")?;
                g.c.validate("c")?;
                check_forms(&g.forms, &["S", "T"], "forms")
            }
            SuiteSpec::Vanishing(g) => {
                for (r, w) in [(&g.n, "n"), (&g.n0, "n0"), (&g.c, "c"), (&g.l, "l"), (&g.m, "m")] {
                    r.validate(w)?;
                }
                if g.kinds.is_empty() && g.cases.is_empty() {
                    return Err(CliError::Config("vanishing suite has no kinds and no cases".into()));
                }
                if g.kinds.is_empty() {
                    return Ok(());
                }
                check_forms(&g.kinds, &["ex38", "lem36", "lem37", "lem310"], "kinds")
            }
            SuiteSpec::Combinatorics(g) => {
                for (r, w) in [(&g.s, "s"), (&g.b, "b"), (&g.c, "c"), (&g.t, "t")] {
                    r.validate(w)?;
                }
                check_forms(&g.kinds, &["monotone", "key", "subs", "specialcase"], "kinds")
            }
            SuiteSpec::Roots(g) | SuiteSpec::Polynomiality(g) | SuiteSpec::SpecialPoints(g) => {
                for (r, w) in [(&g.n, "n"), (&g.n0, "n0"), (&g.b, "b"), (&g.c, "c"), (&g.l, "l"), (&g.m, "m")] {
                    r.validate(w)?;
                }
                nonempty(&g.mu, "mu")?;
                check_forms(&g.which, &["B", "C"], "which")
            }
        }
    }
}

/// The whole run configuration.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub suites: Vec<SuiteSpec>,
    /// Worker threads; 0 means one per core.
    pub jobs: usize,
    /// Per-point timeout in seconds; absent means none.
    pub timeout_secs: Option<f64>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(t) = self.timeout_secs {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Config(format!("timeout_secs must be positive, got {t}")));
            }
        }
        self.suites.iter().try_for_each(SuiteSpec::validate)
    }

    /// Keeps only the named suites, in the given order. A name missing from
    /// the config runs with its default grid.
    pub fn select(&mut self, ids: &[String]) -> Result<(), CliError> {
        let mut out = Vec::new();
        for id in ids {
            let found: Vec<SuiteSpec> = self.suites.iter().filter(|s| s.id() == id).cloned().collect();
            if found.is_empty() {
                out.push(SuiteSpec::default_for(id)?);
            } else {
                out.extend(found);
            }
        }
        self.suites = out;
        Ok(())
    }
}
