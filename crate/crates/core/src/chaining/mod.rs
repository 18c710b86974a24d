//! Maximal inequalities for suprema of finite families.
//!
//! Bounds are reported for the pointwise maximum of `|Y(t)|`, which is what
//! the chaining arguments control. The signed supremum `max_t Y(t)` is
//! reported alongside; for nonnegative families the two coincide.

mod entropy_sum;
mod mri;
mod orlicz;
mod pisier;
mod polynomial;
mod series;

use serde::Serialize;

use crate::entropy::{CoverMode, CoveringProfile, FunctionFamily};
use crate::error::Result;
use crate::lp::SimpleFunction;

pub use entropy_sum::{entropy_sum_bound, optimize_theta, theorem1_bound, ChainingSpec, ThetaOptimum};
pub use mri::{mri_chaining_bound, MriChainingReport};
pub use orlicz::exp_orlicz_bound;
pub use pisier::{generalized_pisier_bound, pisier_bound, PisierReport};
pub use polynomial::{polynomial_entropy_check, PolynomialEntropyReport, MISMATCH_FACTOR, SPREAD_LIMIT};
pub use series::{series_bound_sweep, series_s_beta, SeriesBoundCase, SeriesSweep, SERIES_SPREAD_LIMIT};

/// Relative slack, scaled by `max(1, exact)`, allowed when checking that a
/// bound dominates its exact counterpart.
pub const DOMINATION_TOL: f64 = 1e-9;

pub(crate) fn dominates(bound: f64, exact: f64, tol: f64) -> bool {
    bound >= exact - tol * exact.abs().max(1.0)
}

/// Pointwise `sup_t Y(t, x)`.
pub fn exact_sup(family: &FunctionFamily) -> SimpleFunction {
    family.pointwise_sup()
}

/// Pointwise `max_t |Y(t, x)|`.
pub fn exact_abs_sup(family: &FunctionFamily) -> SimpleFunction {
    family.pointwise_abs_max()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    EntropySum,
    Theorem1,
    ExpOrlicz,
}

/// One summand of a chaining bound. Level 0 carries the anchor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelTerm {
    pub k: usize,
    pub eps: f64,
    pub n: usize,
    pub term: f64,
}

/// A chaining bound with everything needed to re-add it: `bound_value` is
/// the left-to-right sum of `per_level_terms` followed by `tail_estimate`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainingReport {
    pub kind: BoundKind,
    pub mode: CoverMode,
    pub members: usize,
    pub theta_star: f64,
    pub anchor: f64,
    pub per_level_terms: Vec<LevelTerm>,
    pub truncation_k: usize,
    pub tail_estimate: f64,
    pub bound_value: f64,
    /// Norm of `max_t |Y(t)|`.
    pub exact_sup_norm: f64,
    /// Norm of `max_t Y(t)`.
    pub exact_signed_sup_norm: f64,
    pub slack_ratio: f64,
    pub dominates: bool,
    pub flags: Vec<String>,
}

impl ChainingReport {
    /// Re-adds the serialized terms in order.
    pub fn resum(&self) -> f64 {
        self.per_level_terms.iter().fold(0.0, |acc, t| acc + t.term) + self.tail_estimate
    }
}

pub(crate) struct Exact {
    pub abs: f64,
    pub signed: f64,
}

/// Sums `anchor + Σ_k θ^{k−1} f(N_k)` over the profile and closes with the
/// geometric tail `θ^{k★} f(m)/(1−θ)`.
pub(crate) fn assemble<F>(
    kind: BoundKind,
    profile: &CoveringProfile,
    anchor: f64,
    mut f: F,
    exact: Exact,
) -> Result<ChainingReport>
where
    F: FnMut(usize) -> Result<f64>,
{
    let theta = profile.theta;
    let m = profile.size;
    let mut flags = Vec::new();
    let mut per_level_terms = vec![LevelTerm { k: 0, eps: 1.0, n: 1, term: anchor }];
    for l in &profile.levels {
        let term = theta.powi(l.k as i32 - 1) * f(l.n)?;
        per_level_terms.push(LevelTerm { k: l.k, eps: l.eps, n: l.n, term });
    }
    let truncation_k = profile.levels.last().map_or(0, |l| l.k);
    if !profile.saturated() {
        flags.push(format!("covering numbers not saturated by k = {truncation_k}; tail uses N = m"));
    }
    let tail_estimate = theta.powi(truncation_k as i32) * f(m)? / (1.0 - theta);
    let bound_value = per_level_terms.iter().fold(0.0, |acc, t| acc + t.term) + tail_estimate;
    if m == 1 {
        flags.push("single-member family".into());
    }
    let slack_ratio = if exact.abs > 0.0 { bound_value / exact.abs } else { f64::INFINITY };
    Ok(ChainingReport {
        kind,
        mode: profile.mode,
        members: m,
        theta_star: theta,
        anchor,
        per_level_terms,
        truncation_k,
        tail_estimate,
        bound_value,
        exact_sup_norm: exact.abs,
        exact_signed_sup_norm: exact.signed,
        slack_ratio,
        dominates: dominates(bound_value, exact.abs, DOMINATION_TOL),
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::DiscreteMeasureSpace;

    #[test]
    fn sups() {
        let s = DiscreteMeasureSpace::uniform(3, 1.0).unwrap().into_shared();
        let f = SimpleFunction::new(s, vec![1.0, -2.0, 0.5]).unwrap();
        let fam = FunctionFamily::from_members(vec![f.clone()]).unwrap();
        assert_eq!(exact_sup(&fam), f);
        let both = FunctionFamily::from_members(vec![f.clone(), f.scale(-1.0).unwrap()]).unwrap();
        assert_eq!(exact_sup(&both), f.abs());
        assert_eq!(exact_abs_sup(&both), f.abs());
    }
}
