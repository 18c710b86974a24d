use serde::Serialize;

use super::{cover, Cover, CoverMode, SemiMetric};
use crate::error::{Error, Result};

/// One scale `ε = θ^k` of a covering profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverLevel {
    pub k: usize,
    pub eps: f64,
    pub n: usize,
    /// `H = ln N`.
    pub h: f64,
    pub centers: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringProfile {
    pub theta: f64,
    pub mode: CoverMode,
    pub size: usize,
    pub levels: Vec<CoverLevel>,
    pub dimension_estimate: Option<f64>,
}

impl CoveringProfile {
    /// `N` at level `k`, continuing at `m` past the last computed level.
    pub fn n_at(&self, k: usize) -> usize {
        match self.levels.iter().find(|l| l.k == k) {
            Some(l) => l.n,
            None if self.levels.last().is_some_and(|l| k > l.k) => self.size,
            None => 1,
        }
    }

    /// True if the last level already separates every point.
    pub fn saturated(&self) -> bool {
        self.levels.last().is_some_and(|l| l.n == self.size)
    }
}

/// Covering numbers at `ε = θ^k`, `k = 1..=k_max`, stopping after the first
/// level where every point needs its own ball.
///
/// Greedy covers need not be monotone in `ε`; a coarser level whose greedy
/// cover is larger than the next finer one reuses the finer cover, which is
/// valid since smaller balls sit inside larger ones.
pub fn covering_profile(metric: &SemiMetric, theta: f64, k_max: usize, mode: CoverMode) -> Result<CoveringProfile> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::domain(format!("theta = {theta} must lie in (0, 1)")));
    }
    let m = metric.size();
    let mut covers: Vec<(usize, Cover)> = Vec::new();
    for k in 1..=k_max {
        let eps = theta.powi(k as i32);
        let c = cover(metric, eps, mode)?;
        let done = c.size() == m;
        covers.push((k, c));
        if done {
            break;
        }
    }
    for i in (0..covers.len().saturating_sub(1)).rev() {
        if covers[i].1.size() > covers[i + 1].1.size() {
            let eps = covers[i].1.eps;
            covers[i].1 = Cover { eps, centers: covers[i + 1].1.centers.clone() };
        }
    }
    let levels = covers
        .into_iter()
        .map(|(k, c)| CoverLevel { k, eps: c.eps, n: c.size(), h: (c.size() as f64).ln(), centers: c.centers })
        .collect();
    Ok(CoveringProfile { theta, mode, size: m, levels, dimension_estimate: None })
}

/// Middle third of the informative levels (`1 < N < m`), as a fit range
/// for [`entropy_dimension`]. `None` with fewer than three such levels.
pub fn mid_range_levels(profile: &CoveringProfile) -> Option<(usize, usize)> {
    let ks: Vec<usize> =
        profile.levels.iter().filter(|l| l.n > 1 && l.n < profile.size).map(|l| l.k).collect();
    let (a, b) = (*ks.first()?, *ks.last()?);
    let third = (b - a + 1) / 3;
    let (lo, hi) = (a + third, b - third);
    let inside = ks.iter().filter(|&&k| k >= lo && k <= hi).count();
    (inside >= 3).then_some((lo, hi))
}

/// Least-squares slope of `H(k)` against `|ln θ^k|` over levels
/// `k_lo..=k_hi` with `1 < N < m`.
pub fn entropy_dimension(profile: &CoveringProfile, fit_range: (usize, usize)) -> Result<f64> {
    let (lo, hi) = fit_range;
    let pts: Vec<(f64, f64)> = profile
        .levels
        .iter()
        .filter(|l| l.k >= lo && l.k <= hi && l.n > 1 && l.n < profile.size)
        .map(|l| (l.k as f64 * profile.theta.ln().abs(), l.h))
        .collect();
    if pts.len() < 3 {
        return Err(Error::Estimation(format!(
            "{} informative levels in {lo}..={hi}; at least 3 are needed",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
