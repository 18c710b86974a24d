//! Scenario files.
//!
//! A scenario is one TOML document of flat sections; the grammar is
//! documented in the README. Unknown sections and keys are rejected, and
//! every error carries the line it was found on.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {msg}")]
    Syntax { path: PathBuf, line: usize, msg: String },
    #[error("{path}: {msg}")]
    Invalid { path: PathBuf, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Norm,
    Entropy,
    Chain,
    Martingale,
    Fourier,
    Suite,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Norm => "norm",
            Kind::Entropy => "entropy",
            Kind::Chain => "chain",
            Kind::Martingale => "martingale",
            Kind::Fourier => "fourier",
            Kind::Suite => "suite",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub scenario: ScenarioSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<DataSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<PsiSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropy: Option<EntropySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub martingale: Option<MartingaleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fourier: Option<FourierSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub kind: Kind,
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub seed: u64,
}

impl Default for ScenarioSection {
    fn default() -> Self {
        ScenarioSection { kind: Kind::Suite, name: String::new(), seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// Nonnegative random family.
    RandomFamily,
    /// Indicators of disjoint atoms.
    Indicators,
    /// Evenly spaced points of `[0, 1]`.
    Grid1d,
    /// Evenly spaced points of `[0, 1]²`.
    Grid2d,
    /// Uniform points of the unit square.
    RandomPoints,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSection {
    /// Atom table, relative to the scenario file.
    pub file: Option<PathBuf>,
    pub generator: Option<Generator>,
    pub members: Option<usize>,
    pub atoms: Option<usize>,
    pub mass: Option<f64>,
    /// Point count per axis for grids, or total for random points.
    pub count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiSection {
    pub psi: Option<String>,
    pub nu: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub points: Option<usize>,
    pub cap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormSection {
    /// Measures of the indicator sets to check.
    #[serde(default)]
    pub deltas: Vec<f64>,
    /// Plain L_p norms to report for each member.
    #[serde(default)]
    pub p: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricChoice {
    Lp,
    Bgl,
    Euclidean,
    Max,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntropySection {
    pub metric: Option<MetricChoice>,
    pub p: Option<f64>,
    pub theta: Option<f64>,
    pub k_max: Option<usize>,
    pub mode: Option<bgl_core::entropy::CoverMode>,
    pub fit: Option<[usize; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundChoice {
    Pisier,
    GeneralizedPisier,
    EntropySum,
    Theorem1,
    ExpOrlicz,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSection {
    pub bound: BoundChoice,
    pub p: Option<f64>,
    pub thetas: Option<Vec<f64>>,
    pub k_max: Option<usize>,
    pub mode: Option<bgl_core::entropy::CoverMode>,
    pub a: Option<f64>,
    pub beta1: Option<f64>,
    pub beta2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawChoice {
    PlusMinusOne,
    UniformThree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormingChoice {
    Identity,
    Log,
    LogLog,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MartingaleSection {
    pub horizon: usize,
    pub law: Option<LawChoice>,
    /// Monte Carlo path count; paths are enumerated when absent.
    pub paths: Option<usize>,
    #[serde(default)]
    pub p: Vec<f64>,
    #[serde(default)]
    pub norming: Vec<NormingChoice>,
    pub delta: Option<f64>,
    pub summability_terms: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Signal {
    Square,
    Cosine,
    Constant,
    Trig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierSection {
    pub signal: Signal,
    pub samples: Option<usize>,
    pub degree: Option<usize>,
    #[serde(default)]
    pub m_max: Vec<usize>,
}

/// A parsed scenario and the directory its relative paths resolve against.
#[derive(Debug, Clone)]
pub struct LoadedScenario {
    pub scenario: Scenario,
    pub base_dir: PathBuf,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

pub fn parse_scenario(text: &str, path: &Path) -> Result<Scenario, ConfigError> {
    let scenario: Scenario = toml::from_str(text).map_err(|e| ConfigError::Syntax {
        path: path.to_path_buf(),
        line: e.span().map_or(1, |s| line_of(text, s.start)),
        msg: e.message().trim().to_string(),
    })?;
    validate(&scenario).map_err(|msg| ConfigError::Invalid { path: path.to_path_buf(), msg })?;
    Ok(scenario)
}

pub fn load_scenario(path: &Path) -> Result<LoadedScenario, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ConfigError::Read { path: path.to_path_buf(), source })?;
    let scenario = parse_scenario(&text, path)?;
    let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(LoadedScenario { scenario, base_dir })
}

fn validate(s: &Scenario) -> Result<(), String> {
    let need = |present: bool, section: &str| {
        if present {
            Ok(())
        } else {
            Err(format!("kind '{}' needs a [{section}] section", s.scenario.kind.as_str()))
        }
    };
    match s.scenario.kind {
        Kind::Chain => need(s.chain.is_some(), "chain")?,
        Kind::Martingale => need(s.martingale.is_some(), "martingale")?,
        Kind::Fourier => need(s.fourier.is_some(), "fourier")?,
        Kind::Norm | Kind::Entropy | Kind::Suite => {}
    }
    if let Some(d) = &s.data {
        if d.file.is_some() == d.generator.is_some() {
            return Err("[data] needs exactly one of 'file' and 'generator'".into());
        }
    }
    if let Some(p) = &s.psi {
        for spec in p.psi.iter().chain(&p.nu) {
            crate::psi_spec::PsiSpec::parse(spec).map_err(|e| format!("[psi] {e}"))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Scenario, ConfigError> {
        parse_scenario(text, Path::new("s.toml"))
    }

    #[test]
    fn minimal_suite() {
        let s = parse("[scenario]\nkind = \"suite\"\nseed = 9\n").unwrap();
        assert_eq!(s.scenario.kind, Kind::Suite);
        assert_eq!(s.scenario.seed, 9);
    }

    #[test]
    fn full_chain_scenario() {
        let s = parse(
            r#"
[scenario]
kind = "chain"
name = "demo"
[data]
generator = "random_family"
members = 6
atoms = 10
[psi]
psi = "natural"
nu = "power(1)"
[chain]
bound = "theorem1"
thetas = [0.5]
mode = "exact"
"#,
        )
        .unwrap();
        let c = s.chain.unwrap();
        assert_eq!(c.bound, BoundChoice::Theorem1);
        assert_eq!(c.mode, Some(bgl_core::entropy::CoverMode::Exact));
    }

    #[test]
    fn unknown_key_reports_its_line() {
        let err = parse("[scenario]\nkind = \"norm\"\n\n[grid]\nlo = 1.5\nhii = 3.0\n").unwrap_err();
        match err {
            ConfigError::Syntax { line, msg, .. } => {
                assert_eq!(line, 6, "{msg}");
                assert!(msg.contains("hii"));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(parse("[scenario]\nkind = \"chain\"\n"), Err(ConfigError::Invalid { .. })));
        let bad_psi = "[scenario]\nkind = \"norm\"\n[psi]\npsi = \"gauss(2)\"\n";
        assert!(matches!(parse(bad_psi), Err(ConfigError::Invalid { .. })));
        let both = "[scenario]\nkind = \"norm\"\n[data]\nfile = \"a\"\ngenerator = \"indicators\"\n";
        assert!(matches!(parse(both), Err(ConfigError::Invalid { .. })));
        assert!(matches!(parse("[scenario]\nkind = \"plot\"\n"), Err(ConfigError::Syntax { line: 2, .. })));
    }
}
