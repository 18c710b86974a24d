use std::path::PathBuf;
use std::process::ExitCode;

use bgl_cli::config::ScenarioSection;
use bgl_cli::{emit_report, load_scenario, run_scenario, Format, Kind, LoadedScenario, RunOptions, Scenario};
use clap::{Args, Parser, Subcommand};

/// Verification harness for grand Lebesgue norms, covering numbers and
/// maximal inequalities.
#[derive(Debug, Parser)]
#[command(name = "bgl", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Grand Lebesgue norms and indicator checks.
    Norm(Common),
    /// Covering profiles and entropy dimension.
    Entropy(Common),
    /// Maximal-inequality bounds for a family.
    Chain(Common),
    /// Doob and dyadic-block checks on random walks.
    Martingale(Common),
    /// Maximal Fourier partial sums.
    Fourier(Common),
    /// The full acceptance matrix.
    Suite(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Scenario file; required for every verb except `suite`.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Writes the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Cap for exponent grids over unbounded supports.
    #[arg(long = "p-max", value_name = "CAP")]
    p_max: Option<f64>,
    /// Tolerance for scenario checks; the suite keeps its pinned values.
    #[arg(long, value_name = "EPS")]
    tol: Option<f64>,
}

const USAGE_ERROR: u8 = 2;
const RUN_FAILED: u8 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, common) = match cli.verb {
        Verb::Norm(c) => (Kind::Norm, c),
        Verb::Entropy(c) => (Kind::Entropy, c),
        Verb::Chain(c) => (Kind::Chain, c),
        Verb::Martingale(c) => (Kind::Martingale, c),
        Verb::Fourier(c) => (Kind::Fourier, c),
        Verb::Suite(c) => (Kind::Suite, c),
    };
    let loaded = match &common.config {
        Some(path) => match load_scenario(path) {
            Ok(l) => l,
            Err(e) => {
                eprintln!("bgl: {e}");
                return ExitCode::from(USAGE_ERROR);
            }
        },
        None if kind == Kind::Suite => LoadedScenario {
            scenario: Scenario {
                scenario: ScenarioSection { kind, name: "acceptance".into(), seed: 0 },
                ..Scenario::default()
            },
            base_dir: PathBuf::new(),
        },
        None => {
            eprintln!("bgl: `{}` needs --config", kind.as_str());
            return ExitCode::from(USAGE_ERROR);
        }
    };
    if loaded.scenario.scenario.kind != kind {
        eprintln!(
            "bgl: scenario kind '{}' does not match verb '{}'",
            loaded.scenario.scenario.kind.as_str(),
            kind.as_str()
        );
        return ExitCode::from(USAGE_ERROR);
    }
    if let Some(cap) = common.p_max {
        if cap.is_nan() || cap <= 1.0 || cap.is_infinite() {
            eprintln!("bgl: --p-max must be a finite number above 1");
            return ExitCode::from(USAGE_ERROR);
        }
    }
    if let Some(tol) = common.tol {
        if tol.is_nan() || tol < 0.0 || tol.is_infinite() {
            eprintln!("bgl: --tol must be a finite nonnegative number");
            return ExitCode::from(USAGE_ERROR);
        }
    }
    let opts = RunOptions { seed: common.seed, p_max: common.p_max, tol: common.tol };
    let report = run_scenario(&loaded, opts);
    let text = emit_report(&report, common.format);
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("bgl: cannot write {}: {e}", path.display());
                return ExitCode::from(USAGE_ERROR);
            }
        }
        None => print!("{text}"),
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(RUN_FAILED)
    }
}
