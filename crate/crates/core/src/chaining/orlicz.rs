use super::{assemble, exact_abs_sup, exact_sup, BoundKind, ChainingReport, Exact};
use crate::entropy::{covering_profile, family_semimetric, CoverMode, FamilyNorm, FunctionFamily};
use crate::error::{Error, Result};
use crate::lp::bgl_norm;
use crate::psi::{PGrid, PsiFunction, Support};

/// Exponential-Orlicz chaining bound with the Orlicz norms replaced by their
/// equivalent moment form `sup_{p≥a} |f|_p / p^β`:
///
/// `||max_t|Y(t)|||_{a,β2} ≲ sup_t ||Y(t)||_{a,β1} Σ_k θ^{k−1} H(T, d_{a,β1}, θ^k)^{β2−β1}`.
///
/// The unknown constant is not applied; the report carries the raw slack.
/// With `H = 0` at every level (one member) the bound vanishes and is flagged.
#[allow(clippy::too_many_arguments)]
pub fn exp_orlicz_bound(
    family: &FunctionFamily,
    a: f64,
    beta1: f64,
    beta2: f64,
    theta: f64,
    k_max: usize,
    grid_points: usize,
    p_max_cap: f64,
    mode: CoverMode,
) -> Result<ChainingReport> {
    if !(beta1 > 0.0) || !(beta2 > beta1) {
        return Err(Error::domain(format!("need 0 < beta1 < beta2, got ({beta1}, {beta2})")));
    }
    if !(a >= 1.0) {
        return Err(Error::domain(format!("a = {a} must be at least 1")));
    }
    let support = Support::closed_open(a, f64::INFINITY)?;
    let psi1 = PsiFunction::power_on(beta1, support)?;
    let psi2 = PsiFunction::power_on(beta2, support)?;
    let grid = PGrid::for_support(support, grid_points, p_max_cap)?;
    let metric = family_semimetric(family, &FamilyNorm::Bgl { psi: psi1.clone(), grid: grid.clone() })?.metric;
    let sigma1 = family.sigma_bgl(&psi1, &grid)?;
    let profile = covering_profile(&metric, theta, k_max, mode)?;
    let exact = Exact {
        abs: bgl_norm(&exact_abs_sup(family), &psi2, &grid)?.value,
        signed: bgl_norm(&exact_sup(family), &psi2, &grid)?.value,
    };
    let gap = beta2 - beta1;
    let mut report = assemble(BoundKind::ExpOrlicz, &profile, 0.0, |n| Ok(sigma1 * (n as f64).ln().powf(gap)), exact)?;
    if report.bound_value == 0.0 {
        report.flags.push("entropy vanishes at every level; bound degenerates to 0".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::DiscreteMeasureSpace;
    use approx::assert_relative_eq;

    #[test]
    fn single_member_degenerates() {
        let s = DiscreteMeasureSpace::uniform(2, 0.5).unwrap().into_shared();
        let fam = FunctionFamily::from_rows(s, vec![vec![1.0, 2.0]]).unwrap();
        let r = exp_orlicz_bound(&fam, 1.0, 0.5, 1.0, 0.5, 6, 32, 50.0, CoverMode::Exact).unwrap();
        assert_eq!(r.bound_value, 0.0);
        assert!(!r.dominates);
        assert!(r.flags.iter().any(|f| f.contains("degenerates")));
    }

    #[test]
    fn two_members_hand_sum() {
        // Distance in G(p^β1) between the two constants 0 and 2 on mass 1.
        let s = DiscreteMeasureSpace::uniform(1, 1.0).unwrap().into_shared();
        let fam = FunctionFamily::from_rows(s, vec![vec![0.0], vec![2.0]]).unwrap();
        let r = exp_orlicz_bound(&fam, 1.0, 0.5, 1.5, 0.5, 6, 32, 50.0, CoverMode::Exact).unwrap();
        // d = sup_p 2/p^{1/2} = 2 at p = 1 and σ1 = 2; N = 2 from the first level on.
        let h = 2f64.ln();
        assert_relative_eq!(r.bound_value, 2.0 * h + 2.0 * h * 0.5 / 0.5, max_relative = 1e-12);
        assert!(exp_orlicz_bound(&fam, 1.0, 1.0, 1.0, 0.5, 6, 32, 50.0, CoverMode::Exact).is_err());
    }
}
