//! Dispatch from a scenario to the library, one record per checked claim.
//!
//! Library errors never abort a run: each becomes a failed record carrying
//! the inputs that produced it.

use std::path::Path;
use std::sync::Arc;

use bgl_core::apps::{
    build_walk_ensemble, doob_check, theorem2_bound, theorem3_check, FourierSample, IncrementLaw, NormingFunction,
    PathSampling, MARTINGALE_TOL,
};
use bgl_core::chaining::{
    exp_orlicz_bound, generalized_pisier_bound, optimize_theta, pisier_bound, ChainingSpec, DOMINATION_TOL,
};
use bgl_core::entropy::{
    covering_profile, entropy_dimension, mid_range_levels, family_semimetric, CoverMode, FamilyNorm, FunctionFamily, SemiMetric,
    EXACT_MAX_POINTS,
};
use bgl_core::lp::{
    bgl_norm, indicator_norm_check, io::parse_atom_table, lp_norm, natural_psi, DiscreteMeasureSpace,
    IndicatorSpec, SimpleFunction, INDICATOR_TOL,
};
use bgl_core::psi::{product_psi, psi_doob, PGrid, PsiFunction, Support, DEFAULT_GRID_POINTS, DEFAULT_P_MAX_CAP};
use bgl_core::rng::{random_nonnegative_family, random_points, stream, FamilyShape};
use serde_json::{json, Value};

use crate::config::{
    BoundChoice, DataSection, Generator, GridSection, Kind, LawChoice, LoadedScenario, MetricChoice, NormingChoice,
    Scenario, Signal,
};
use crate::psi_spec::PsiSpec;
use crate::report::{Record, Report, ScenarioEcho};
use crate::suite;

/// Command-line overrides applied on top of a scenario.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunOptions {
    pub seed: Option<u64>,
    /// Cap for grids over unbounded supports.
    pub p_max: Option<f64>,
    /// Replaces the default tolerance of scenario checks. The suite keeps
    /// its own pinned tolerances.
    pub tol: Option<f64>,
}

type Res<T> = bgl_core::Result<T>;

struct Ctx<'a> {
    s: &'a Scenario,
    base_dir: &'a Path,
    seed: u64,
    p_max: f64,
    tol: Option<f64>,
}

pub fn run_scenario(loaded: &LoadedScenario, opts: RunOptions) -> Report {
    let s = &loaded.scenario;
    let seed = opts.seed.unwrap_or(s.scenario.seed);
    let p_max = opts.p_max.or(s.grid.as_ref().and_then(|g| g.cap)).unwrap_or(DEFAULT_P_MAX_CAP);
    let ctx = Ctx { s, base_dir: &loaded.base_dir, seed, p_max, tol: opts.tol };
    if s.scenario.kind == Kind::Suite {
        let mut report = suite::run_suite(seed);
        report.scenario.name = s.scenario.name.clone();
        return report;
    }
    let records = match s.scenario.kind {
        Kind::Norm => norm(&ctx),
        Kind::Entropy => entropy(&ctx),
        Kind::Chain => chain(&ctx),
        Kind::Martingale => martingale(&ctx),
        Kind::Fourier => fourier(&ctx),
        Kind::Suite => unreachable!(),
    };
    let echo = ScenarioEcho {
        kind: s.scenario.kind.as_str().into(),
        name: s.scenario.name.clone(),
        seed,
        parameters: serde_json::to_value(s).expect("scenarios serialize"),
    };
    Report::new(echo, records)
}

fn failed(name: &str, err: impl std::fmt::Display, ctx: &Ctx) -> Record {
    Record::failed(name, err, json!({ "seed": ctx.seed, "scenario": serde_json::to_value(ctx.s).ok() }))
}

macro_rules! attempt {
    ($records:ident, $ctx:expr, $name:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                $records.push(failed($name, err, $ctx));
                return $records;
            }
        }
    };
}

// ---------------------------------------------------------------- inputs

enum Data {
    Family(FunctionFamily),
    Points(Vec<Vec<f64>>),
}

fn load_data(ctx: &Ctx, default: Generator) -> Res<Data> {
    let fallback = DataSection { file: None, generator: Some(default), members: None, atoms: None, mass: None, count: None };
    let d = ctx.s.data.clone().unwrap_or(fallback);
    if let Some(file) = &d.file {
        let text = std::fs::read_to_string(ctx.base_dir.join(file))?;
        let table = parse_atom_table(&text)?;
        return Ok(Data::Family(FunctionFamily::new(table.labels, table.columns)?));
    }
    let mass = d.mass.unwrap_or(1.0);
    let mut rng = stream(ctx.seed, 0);
    match d.generator.unwrap_or(default) {
        Generator::RandomFamily => {
            let shape = FamilyShape { members: d.members.unwrap_or(8), atoms: d.atoms.unwrap_or(16), total_mass: mass };
            Ok(Data::Family(random_nonnegative_family(&mut rng, shape)?))
        }
        Generator::Indicators => {
            let members = d.members.unwrap_or(4);
            let atoms = d.atoms.unwrap_or(members).max(members);
            let space = DiscreteMeasureSpace::uniform(atoms, mass / atoms as f64)?.into_shared();
            let rows = (0..members)
                .map(|i| SimpleFunction::indicator(Arc::clone(&space), &[i]))
                .collect::<Res<Vec<_>>>()?;
            Ok(Data::Family(FunctionFamily::from_members(rows)?))
        }
        Generator::Grid1d => Ok(Data::Points(suite::grid_points(d.count.unwrap_or(64).max(2), 1))),
        Generator::Grid2d => Ok(Data::Points(suite::grid_points(d.count.unwrap_or(16).max(2), 2))),
        Generator::RandomPoints => Ok(Data::Points(random_points(&mut rng, d.count.unwrap_or(64), 2))),
    }
}

fn load_family(ctx: &Ctx, default: Generator) -> Res<FunctionFamily> {
    match load_data(ctx, default)? {
        Data::Family(f) => Ok(f),
        Data::Points(_) => Err(bgl_core::Error::Precondition(
            "this scenario needs a function family, not a point set".into(),
        )),
    }
}

fn grid_section(ctx: &Ctx) -> GridSection {
    ctx.s.grid.clone().unwrap_or(GridSection { lo: None, hi: None, points: None, cap: None })
}

/// The configured grid, or a grid adapted to `support`.
fn grid_for(ctx: &Ctx, support: Support) -> Res<PGrid> {
    let g = grid_section(ctx);
    let points = g.points.unwrap_or(DEFAULT_GRID_POINTS);
    match (g.lo, g.hi) {
        (Some(lo), Some(hi)) => PGrid::log_spaced(lo, hi, points),
        _ => PGrid::for_support(support, points, ctx.p_max),
    }
}

fn psi_text(ctx: &Ctx, nu: bool) -> Option<String> {
    let p = ctx.s.psi.as_ref()?;
    if nu {
        p.nu.clone()
    } else {
        p.psi.clone()
    }
}

/// Resolves a spec; `natural` is tabulated on the configured grid, or on
/// `[1.05, cap]` by default.
fn resolve_psi(ctx: &Ctx, text: Option<String>, family: Option<&FunctionFamily>) -> Res<PsiFunction> {
    let spec = match text {
        Some(t) => PsiSpec::parse(&t).map_err(bgl_core::Error::Precondition)?,
        None => PsiSpec::Constant,
    };
    match (spec, family) {
        (PsiSpec::Natural, Some(f)) => {
            let g = grid_section(ctx);
            let grid = PGrid::log_spaced(
                g.lo.unwrap_or(1.05),
                g.hi.unwrap_or(ctx.p_max),
                g.points.unwrap_or(DEFAULT_GRID_POINTS),
            )?;
            natural_psi(f, &grid)
        }
        (spec, _) => spec.build(),
    }
}

fn dominates(bound: f64, exact: f64, tol: f64) -> bool {
    bound >= exact - tol * exact.abs().max(1.0)
}

// ---------------------------------------------------------------- norm

fn norm(ctx: &Ctx) -> Vec<Record> {
    let mut records = Vec::new();
    let family = attempt!(records, ctx, "load_data", load_family(ctx, Generator::Indicators));
    let psi = attempt!(records, ctx, "psi", resolve_psi(ctx, psi_text(ctx, false), Some(&family)));
    let grid = attempt!(records, ctx, "grid", grid_for(ctx, psi.support()));
    let section = ctx.s.norm.clone();
    let ps = section.as_ref().map(|n| n.p.clone()).unwrap_or_default();

    let mut rows = Vec::new();
    for (label, y) in family.labels().iter().zip(family.members()) {
        let value = attempt!(records, ctx, "member_norms", bgl_norm(y, &psi, &grid));
        let lp: Vec<Value> = ps.iter().map(|&p| json!([p, lp_norm(y, p).ok()])).collect();
        rows.push(json!({ "member": label, "bgl_norm": value.value, "argmax_p": value.argmax_p, "lp": lp }));
    }
    records.push(Record::new(
        "member_norms",
        true,
        format!("{} members normed in G({})", rows.len(), psi.label()),
        json!({ "psi": psi.label(), "grid": grid_json(&grid), "members": rows }),
    ));

    let space = family.space();
    let mut deltas = section.map(|n| n.deltas).unwrap_or_default();
    if deltas.is_empty() {
        deltas.push(space.weights()[0]);
    }
    let tol = ctx.tol.unwrap_or(INDICATOR_TOL);
    for delta in deltas {
        let name = format!("indicator_norm_check[delta={delta}]");
        match indicator_norm_check(IndicatorSpec { delta }, &psi, &grid, space) {
            Ok(r) => {
                let pass = r.rel_diff <= tol;
                let summary = format!("norm {:.12e} vs fundamental {:.12e}", r.indicator_norm, r.fundamental);
                let detail = serde_json::to_value(&r).expect("serializes");
                let rec = Record::new(&name, pass, summary, detail);
                records.push(if pass { rec } else { rec.with_inputs(vec![json!({ "delta": delta, "psi": psi.label(), "tol": tol })]) });
            }
            Err(e) => records.push(Record::failed(&name, e, json!({ "delta": delta, "psi": psi.label() }))),
        }
    }
    records
}

fn grid_json(grid: &PGrid) -> Value {
    json!({ "lo": grid.min(), "hi": grid.max(), "points": grid.len(), "capped": grid.capped() })
}

// ---------------------------------------------------------------- entropy

fn entropy(ctx: &Ctx) -> Vec<Record> {
    let mut records = Vec::new();
    let sec = ctx.s.entropy.clone();
    let get = |f: fn(&crate::config::EntropySection) -> Option<f64>| sec.as_ref().and_then(f);
    let theta = get(|e| e.theta).unwrap_or(0.5);
    let k_max = sec.as_ref().and_then(|e| e.k_max).unwrap_or(30);
    let data = attempt!(records, ctx, "load_data", load_data(ctx, Generator::RandomFamily));
    let metric: SemiMetric = match data {
        Data::Points(pts) => {
            let built = match sec.as_ref().and_then(|e| e.metric) {
                Some(MetricChoice::Max) => SemiMetric::from_points_max(&pts),
                _ => SemiMetric::from_points(&pts),
            };
            attempt!(records, ctx, "metric", built)
        }
        Data::Family(family) => {
            let choice = sec.as_ref().and_then(|e| e.metric).unwrap_or(MetricChoice::Lp);
            let norm = match choice {
                MetricChoice::Lp | MetricChoice::Euclidean => FamilyNorm::Lp(get(|e| e.p).unwrap_or(2.0)),
                MetricChoice::Max => FamilyNorm::Lp(f64::INFINITY),
                MetricChoice::Bgl => {
                    let psi = attempt!(records, ctx, "psi", resolve_psi(ctx, psi_text(ctx, false), Some(&family)));
                    let grid = attempt!(records, ctx, "grid", grid_for(ctx, psi.support()));
                    FamilyNorm::Bgl { psi, grid }
                }
            };
            let fm = attempt!(records, ctx, "metric", family_semimetric(&family, &norm));
            records.push(Record::new(
                "distance_within_two_sigma",
                fm.within_two_sigma,
                format!("max distance {:.6e} against sigma {:.6e}", fm.max_distance, fm.sigma),
                json!({ "sigma": fm.sigma, "max_distance": fm.max_distance }),
            ));
            fm.metric
        }
    };
    let default_mode = if metric.size() <= EXACT_MAX_POINTS { CoverMode::Exact } else { CoverMode::Greedy };
    let mode = sec.as_ref().and_then(|e| e.mode).unwrap_or(default_mode);
    let profile = attempt!(records, ctx, "covering_profile", covering_profile(&metric, theta, k_max, mode));

    let valid = profile.levels.iter().all(|l| {
        (0..metric.size()).all(|j| l.centers.iter().any(|&c| metric.get(c, j) <= l.eps))
    });
    let monotone = profile.levels.windows(2).all(|w| w[1].n >= w[0].n);
    let levels: Vec<Value> = profile.levels.iter().map(|l| json!({ "k": l.k, "eps": l.eps, "n": l.n, "h": l.h })).collect();
    records.push(
        Record::new(
            "covering_profile",
            valid && monotone,
            format!("{} levels, N from {} to {}", levels.len(), profile.levels.first().map_or(0, |l| l.n), profile.levels.last().map_or(0, |l| l.n)),
            json!({ "points": metric.size(), "theta": theta, "mode": mode, "saturated": profile.saturated(), "covers_valid": valid, "monotone": monotone, "levels": levels }),
        )
        .with_inputs(if valid && monotone { vec![] } else { vec![json!({ "seed": ctx.seed, "theta": theta, "mode": mode })] }),
    );
    let fit = sec.as_ref().and_then(|e| e.fit).map(|[lo, hi]| (lo, hi)).or_else(|| mid_range_levels(&profile));
    if let Some((lo, hi)) = fit {
        match entropy_dimension(&profile, (lo, hi)) {
            Ok(kappa) => records.push(Record::new(
                "entropy_dimension",
                true,
                format!("kappa = {kappa:.4} over levels {lo}..={hi}"),
                json!({ "kappa": kappa, "fit": [lo, hi] }),
            )),
            Err(e) => records.push(Record::failed("entropy_dimension", e, json!({ "fit": [lo, hi] }))),
        }
    }
    records
}

// ---------------------------------------------------------------- chain

fn chain(ctx: &Ctx) -> Vec<Record> {
    let mut records = Vec::new();
    let c = ctx.s.chain.clone().expect("validated");
    let family = attempt!(records, ctx, "load_data", load_family(ctx, Generator::RandomFamily));
    let tol = ctx.tol.unwrap_or(DOMINATION_TOL);
    let thetas = c.thetas.clone().unwrap_or_else(|| vec![0.5]);
    let k_max = c.k_max.unwrap_or(30);
    let mode = c.mode.unwrap_or(if family.len() <= EXACT_MAX_POINTS { CoverMode::Exact } else { CoverMode::Greedy });
    let p = c.p.unwrap_or(2.0);
    let inputs = json!({ "seed": ctx.seed, "bound": c.bound, "p": p, "thetas": thetas, "k_max": k_max, "mode": mode });
    let push = |records: &mut Vec<Record>, name: &str, pass: bool, summary: String, detail: Value| {
        let rec = Record::new(name, pass, summary, detail);
        records.push(if pass { rec } else { rec.with_inputs(vec![inputs.clone()]) });
    };
    match c.bound {
        BoundChoice::Pisier => {
            let r = attempt!(records, ctx, "pisier", pisier_bound(&family, p));
            let pass = dominates(r.bound, r.exact, tol);
            push(&mut records, "pisier", pass, format!("bound {:.6e} vs exact {:.6e}", r.bound, r.exact), to_json(&r));
        }
        BoundChoice::GeneralizedPisier => {
            let psi = attempt!(records, ctx, "psi", resolve_psi(ctx, psi_text(ctx, false), Some(&family)));
            let nu = attempt!(records, ctx, "nu", resolve_psi(ctx, psi_text(ctx, true), Some(&family)));
            let zeta = attempt!(records, ctx, "zeta", product_psi(&psi, &nu));
            let grid = attempt!(records, ctx, "grid", grid_for(ctx, zeta.support()));
            let r = attempt!(records, ctx, "generalized_pisier", generalized_pisier_bound(&family, &psi, &nu, &grid));
            let pass = dominates(r.bound, r.exact, tol);
            push(&mut records, "generalized_pisier", pass, format!("bound {:.6e} vs exact {:.6e}", r.bound, r.exact), to_json(&r));
        }
        BoundChoice::EntropySum | BoundChoice::Theorem1 => {
            let spec = if c.bound == BoundChoice::EntropySum {
                ChainingSpec::EntropySum { p }
            } else {
                let psi = attempt!(records, ctx, "psi", resolve_psi(ctx, psi_text(ctx, false), Some(&family)));
                let nu = attempt!(records, ctx, "nu", resolve_psi(ctx, psi_text(ctx, true), Some(&family)));
                let zeta = attempt!(records, ctx, "zeta", product_psi(&psi, &nu));
                let grid = attempt!(records, ctx, "grid", grid_for(ctx, zeta.support()));
                ChainingSpec::Theorem1 { psi, nu, grid }
            };
            let name = if c.bound == BoundChoice::EntropySum { "entropy_sum" } else { "theorem1" };
            let opt = attempt!(records, ctx, name, optimize_theta(&family, &spec, &thetas, k_max, mode));
            let exact = opt.best.exact_sup_norm;
            let all = opt.scan.iter().all(|&(_, b)| dominates(b, exact, tol));
            let resums = opt.best.resum() == opt.best.bound_value;
            push(
                &mut records,
                name,
                all && resums,
                format!("best bound {:.6e} at theta {} vs exact {:.6e}", opt.best.bound_value, opt.best.theta_star, exact),
                json!({ "scan": opt.scan, "report": to_json(&opt.best) }),
            );
        }
        BoundChoice::ExpOrlicz => {
            let (a, b1, b2) = (c.a.unwrap_or(1.0), c.beta1.unwrap_or(0.5), c.beta2.unwrap_or(1.0));
            let points = grid_section(ctx).points.unwrap_or(DEFAULT_GRID_POINTS);
            let mut reports = Vec::new();
            for &theta in &thetas {
                let r = attempt!(records, ctx, "exp_orlicz", exp_orlicz_bound(&family, a, b1, b2, theta, k_max, points, ctx.p_max, mode));
                reports.push(r);
            }
            let resums = reports.iter().all(|r| r.resum() == r.bound_value);
            let slack: Vec<f64> = reports.iter().map(|r| r.slack_ratio).collect();
            push(
                &mut records,
                "exp_orlicz",
                resums,
                format!("raw slack ratios {slack:?}; the constant is not asserted"),
                json!({ "a": a, "beta1": b1, "beta2": b2, "reports": reports.iter().map(to_json).collect::<Vec<_>>() }),
            );
        }
    }
    records
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

// ---------------------------------------------------------------- martingale

fn martingale(ctx: &Ctx) -> Vec<Record> {
    let mut records = Vec::new();
    let m = ctx.s.martingale.clone().expect("validated");
    let law = match m.law.unwrap_or(LawChoice::PlusMinusOne) {
        LawChoice::PlusMinusOne => IncrementLaw::PlusMinusOne,
        LawChoice::UniformThree => IncrementLaw::UniformThree,
    };
    let sampling = match m.paths {
        Some(paths) => PathSampling::MonteCarlo { paths, seed: ctx.seed },
        None => PathSampling::Enumerate,
    };
    let ens = attempt!(records, ctx, "ensemble", build_walk_ensemble(m.horizon, law, sampling));
    let base = json!({ "seed": ctx.seed, "horizon": m.horizon, "law": m.law, "paths": m.paths });
    if ens.is_enumerated() {
        let defect = ens.martingale_defect();
        let tol = ctx.tol.unwrap_or(MARTINGALE_TOL);
        let rec = Record::new("martingale_property", defect <= tol, format!("largest conditional drift {defect:.3e}"), json!({ "defect": defect, "tol": tol }));
        records.push(if defect <= tol { rec } else { rec.with_inputs(vec![base.clone()]) });
    }
    let ps = if m.p.is_empty() { vec![1.25, 2.0, 4.0] } else { m.p.clone() };
    for p in ps {
        let name = format!("doob[p={p}]");
        let mut rows = Vec::new();
        let mut failures = Vec::new();
        for n in 1..=m.horizon {
            match doob_check(&ens, p, n) {
                Ok(r) => {
                    if !r.pass {
                        let mut v = base.clone();
                        v["p"] = json!(p);
                        v["n"] = json!(n);
                        failures.push(v);
                    }
                    rows.push(json!([n, r.ratio]));
                }
                Err(e) => {
                    let mut v = base.clone();
                    v["p"] = json!(p);
                    v["error"] = json!(e.to_string());
                    failures.push(v);
                    break;
                }
            }
        }
        let pass = failures.is_empty();
        records.push(
            Record::new(&name, pass, format!("limit p/(p-1) = {:.6}", p / (p - 1.0)), json!({ "ratios": rows }))
                .with_inputs(failures),
        );
    }
    let psi = attempt!(records, ctx, "psi", resolve_psi(ctx, Some(psi_text(ctx, false).unwrap_or_else(|| "power(0.5)".into())), None));
    let psi1 = attempt!(records, ctx, "psi", psi_doob(&psi));
    let grid = attempt!(records, ctx, "grid", grid_for(ctx, psi1.support()));
    let normings = if m.norming.is_empty() { vec![NormingChoice::Identity] } else { m.norming.clone() };
    for choice in normings {
        let v = match choice {
            NormingChoice::Identity => NormingFunction::Identity,
            NormingChoice::Log => NormingFunction::Log,
            NormingChoice::LogLog => NormingFunction::LogLogPower { delta: m.delta.unwrap_or(1.0) },
        };
        let name = format!("block_chain[{}]", v.label());
        match theorem2_bound(&ens, &psi, &v, &grid, m.summability_terms.unwrap_or(64)) {
            Ok(r) => {
                let pass = r.chain_holds && r.blocks.iter().all(|b| b.holds);
                let summary = format!(
                    "tau {:.6e} vs chain {:.6e}; summable: {}",
                    r.tau_norm, r.chain_bound, r.summability.summable
                );
                let rec = Record::new(&name, pass, summary, to_json(&r));
                records.push(if pass { rec } else { rec.with_inputs(vec![json!({ "base": base, "norming": v.label() })]) });
            }
            Err(e) => records.push(Record::failed(&name, e, json!({ "base": base, "norming": v.label() }))),
        }
    }
    records
}

// ---------------------------------------------------------------- fourier

fn fourier(ctx: &Ctx) -> Vec<Record> {
    let mut records = Vec::new();
    let f = ctx.s.fourier.clone().expect("validated");
    let k = f.samples.unwrap_or(4096);
    let sample = match f.signal {
        Signal::Square => FourierSample::square_wave(k),
        Signal::Cosine => FourierSample::cosine(k),
        Signal::Constant => FourierSample::constant(k, 1.0),
        Signal::Trig => FourierSample::random_trig_poly(k, f.degree.unwrap_or(8), &mut stream(ctx.seed, 0)),
    };
    let sample = attempt!(records, ctx, "sample", sample);
    let psi = attempt!(records, ctx, "psi", resolve_psi(ctx, psi_text(ctx, false), None));
    let g = grid_section(ctx);
    let grid = match (g.lo, g.hi) {
        (Some(_), Some(_)) => grid_for(ctx, psi.support()),
        _ => Support::open(1.1, 32.0).and_then(|s| PGrid::for_support(s, g.points.unwrap_or(40), ctx.p_max)),
    };
    let grid = attempt!(records, ctx, "grid", grid);
    let m_max = if f.m_max.is_empty() { vec![16, 32, 64, 128] } else { f.m_max.clone() };
    match theorem3_check(&sample, &psi, &grid, &m_max) {
        Ok(r) => {
            let summary = format!("growth {:.6} across M_max {:?}", r.growth, m_max);
            let rec = Record::new("maximal_partial_sum", r.saturated, summary, to_json(&r));
            records.push(if r.saturated {
                rec
            } else {
                rec.with_inputs(vec![json!({ "seed": ctx.seed, "signal": f.signal, "samples": k, "m_max": m_max })])
            });
        }
        Err(e) => records.push(failed("maximal_partial_sum", e, ctx)),
    }
    records
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_scenario;

    fn run(text: &str) -> Report {
        let scenario = parse_scenario(text, Path::new("t.toml")).unwrap();
        run_scenario(&LoadedScenario { scenario, base_dir: ".".into() }, RunOptions::default())
    }

    #[test]
    fn indicator_fixture_passes() {
        let r = run("[scenario]\nkind = \"norm\"\n[data]\ngenerator = \"indicators\"\nmembers = 4\natoms = 8\nmass = 2.0\n[norm]\ndeltas = [0.25, 1.0]\n");
        assert!(r.pass, "{r:#?}");
        assert_eq!(r.records.len(), 3);
    }

    #[test]
    fn domain_errors_become_failed_records() {
        let r = run("[scenario]\nkind = \"norm\"\n[psi]\npsi = \"ratio(-3)\"\n");
        assert!(!r.pass);
        assert!(r.records[0].summary.starts_with("error"));
        assert!(r.records[0].inputs.is_some());
        let r = run("[scenario]\nkind = \"norm\"\n[data]\ngenerator = \"indicators\"\n[norm]\ndeltas = [0.3]\n");
        assert!(!r.pass);
    }

    #[test]
    fn chain_kinds_run() {
        for bound in ["pisier", "generalized_pisier", "entropy_sum", "theorem1", "exp_orlicz"] {
            let text = format!(
                "[scenario]\nkind = \"chain\"\nseed = 3\n[data]\ngenerator = \"random_family\"\nmembers = 5\natoms = 6\n[psi]\npsi = \"power(1)\"\n[grid]\npoints = 24\ncap = 30.0\n[chain]\nbound = \"{bound}\"\nthetas = [0.4, 0.6]\n"
            );
            let r = run(&text);
            assert!(r.pass, "{bound}: {r:#?}");
        }
    }

    #[test]
    fn entropy_on_points() {
        let r = run("[scenario]\nkind = \"entropy\"\n[data]\ngenerator = \"grid1d\"\ncount = 65\n[entropy]\ntheta = 0.7\nk_max = 14\nfit = [2, 10]\n");
        assert!(r.pass, "{r:#?}");
        assert!(r.records.iter().any(|x| x.name == "entropy_dimension"));
    }

    #[test]
    fn martingale_and_fourier() {
        let r = run("[scenario]\nkind = \"martingale\"\n[martingale]\nhorizon = 8\nnorming = [\"identity\", \"log_log\"]\n[grid]\npoints = 16\ncap = 20.0\n");
        assert!(r.pass, "{r:#?}");
        let r = run("[scenario]\nkind = \"fourier\"\n[fourier]\nsignal = \"cosine\"\nsamples = 512\nm_max = [4, 8, 16]\n");
        assert!(r.pass, "{r:#?}");
    }
}
