use serde::Serialize;

use super::entropy_sum_bound;
use crate::entropy::{covering_profile, family_semimetric, CoverMode, FamilyNorm, FunctionFamily};
use crate::error::{Error, Result};
use crate::psi::{psi_kappa, PGrid, PsiFunction};

/// A level may exceed the fitted law `C ε^{−κ}` by at most this factor.
pub const MISMATCH_FACTOR: f64 = 10.0;
/// Largest accepted `max r / min r` over the p-grid.
pub const SPREAD_LIMIT: f64 = 50.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolynomialEntropyReport {
    pub kappa: f64,
    /// Geometric-mean fit of `N(T, d_ψ, ε) ε^κ` over the profile.
    pub fitted_c: f64,
    /// `(p, r(p))` with `r(p) = entropy-sum bound(p) / ψ^(κ)(p)`.
    pub ratios: Vec<(f64, f64)>,
    pub max_ratio: f64,
    pub spread: f64,
    pub pass: bool,
}

/// Checks that the entropy-sum bound grows no faster than `ψ^(κ)` when the
/// `d_ψ` covering numbers follow `N ≤ C ε^{−κ}`.
#[allow(clippy::too_many_arguments)]
pub fn polynomial_entropy_check(
    family: &FunctionFamily,
    psi: &PsiFunction,
    psi_grid: &PGrid,
    kappa: f64,
    p_grid: &PGrid,
    theta: f64,
    k_max: usize,
    mode: CoverMode,
) -> Result<PolynomialEntropyReport> {
    let metric = family_semimetric(family, &FamilyNorm::Bgl { psi: psi.clone(), grid: psi_grid.clone() })?.metric;
    let profile = covering_profile(&metric, theta, k_max, mode)?;
    let logs: Vec<f64> = profile.levels.iter().map(|l| l.h + kappa * l.eps.ln()).collect();
    let fitted_c = (logs.iter().sum::<f64>() / logs.len().max(1) as f64).exp();
    for l in &profile.levels {
        let law = fitted_c * l.eps.powf(-kappa);
        if l.n as f64 > MISMATCH_FACTOR * law {
            return Err(Error::ModelMismatch(format!(
                "N = {} at eps = {} exceeds {MISMATCH_FACTOR} x fitted law {law}",
                l.n, l.eps
            )));
        }
    }
    let psi_k = psi_kappa(psi, kappa)?;
    psi_k.check_grid(p_grid)?;
    let mut ratios = Vec::with_capacity(p_grid.len());
    for &p in p_grid.points() {
        let bound = entropy_sum_bound(family, p, theta, k_max, mode)?.bound_value;
        ratios.push((p, bound / psi_k.eval(p)?));
    }
    let max_ratio = ratios.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    let min_ratio = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let spread = max_ratio / min_ratio;
    Ok(PolynomialEntropyReport { kappa, fitted_c, ratios, max_ratio, spread, pass: spread < SPREAD_LIMIT })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::DiscreteMeasureSpace;

    #[test]
    fn single_member_ratio_tracks_kappa_factor() {
        let s = DiscreteMeasureSpace::uniform(2, 0.5).unwrap().into_shared();
        let fam = FunctionFamily::from_rows(s, vec![vec![0.5, 1.0]]).unwrap();
        let one = PsiFunction::constant();
        let g = PGrid::for_support(one.support(), 32, 50.0).unwrap();
        let pg = PGrid::log_spaced(2.0, 20.0, 10).unwrap();
        let r = polynomial_entropy_check(&fam, &one, &g, 1e-6, &pg, 0.5, 8, CoverMode::Exact).unwrap();
        assert!(r.pass);
        assert!(r.spread < 1.5);
    }
}
