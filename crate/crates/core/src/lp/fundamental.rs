use serde::Serialize;

use super::{bgl_norm, DiscreteMeasureSpace, SimpleFunction};
use crate::error::{Error, Result};
use crate::psi::{PGrid, PsiFunction};

/// Relative agreement required between the two routes to φ(G(ψ), δ).
pub const INDICATOR_TOL: f64 = 1e-9;
/// Tolerance for assembling a set of prescribed measure out of atoms.
pub const REALIZE_TOL: f64 = 1e-9;

/// Fundamental function `φ(G(ψ), δ) = sup_p δ^{1/p}/ψ(p)`.
///
/// Computed from the closed form alone: a grid scan followed by a search in
/// `s = 1/p`, where `δ^s` is log-linear. No L_p norm is evaluated.
pub fn fundamental_function(psi: &PsiFunction, delta: f64, grid: &PGrid) -> Result<f64> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::domain(format!("measure {delta} must be positive and finite")));
    }
    psi.check_grid(grid)?;
    let ln_delta = delta.ln();
    let at = |s: f64| -> Result<f64> { Ok((s * ln_delta).exp() / psi.eval(1.0 / s)?) };

    let pts = grid.points();
    let mut best = f64::NEG_INFINITY;
    let mut best_i = 0;
    for (i, &p) in pts.iter().enumerate() {
        let v = at(1.0 / p)?;
        if v > best {
            best = v;
            best_i = i;
        }
    }
    // bracket in s; s decreases as p increases
    let mut s_lo = 1.0 / pts[(best_i + 1).min(pts.len() - 1)];
    let mut s_hi = 1.0 / pts[best_i.saturating_sub(1)];
    const R: f64 = 0.381_966_011_250_105_1;
    while (1.0 / s_lo - 1.0 / s_hi) > crate::sup::REFINE_TOL {
        let a = s_lo + R * (s_hi - s_lo);
        let b = s_hi - R * (s_hi - s_lo);
        let (fa, fb) = (at(a)?, at(b)?);
        best = best.max(fa).max(fb);
        if fa >= fb {
            s_hi = b;
        } else {
            s_lo = a;
        }
    }
    Ok(best)
}

/// A set of prescribed measure δ whose indicator is to be normed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndicatorSpec {
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorReport {
    pub delta: f64,
    pub realized_mass: f64,
    pub atoms: Vec<usize>,
    /// `||I(A)||_{G(ψ)}` through L_p norms.
    pub indicator_norm: f64,
    /// `φ(G(ψ), δ)` through the closed form.
    pub fundamental: f64,
    pub rel_diff: f64,
    pub pass: bool,
}

/// Picks atoms, heaviest first, whose weights add up to `delta`.
pub fn realize_measure(space: &DiscreteMeasureSpace, delta: f64) -> Result<(Vec<usize>, f64)> {
    let tol = REALIZE_TOL * delta.max(1.0);
    let mut order: Vec<usize> = (0..space.len()).collect();
    order.sort_by(|&a, &b| space.weights()[b].total_cmp(&space.weights()[a]).then(a.cmp(&b)));
    let mut chosen = Vec::new();
    let mut mass = 0.0;
    for i in order {
        let w = space.weights()[i];
        if mass + w <= delta + tol {
            mass += w;
            chosen.push(i);
        }
    }
    if (mass - delta).abs() > tol {
        return Err(Error::Construction(format!(
            "no subset of atoms with measure {delta} (closest greedy mass {mass})"
        )));
    }
    chosen.sort_unstable();
    Ok((chosen, mass))
}

/// Compares the norm of an indicator of measure δ with the fundamental
/// function at δ.
pub fn indicator_norm_check(
    spec: IndicatorSpec,
    psi: &PsiFunction,
    grid: &PGrid,
    space: &std::sync::Arc<DiscreteMeasureSpace>,
) -> Result<IndicatorReport> {
    let (atoms, mass) = realize_measure(space, spec.delta)?;
    let ind = SimpleFunction::indicator(std::sync::Arc::clone(space), &atoms)?;
    let lhs = bgl_norm(&ind, psi, grid)?.value;
    let rhs = fundamental_function(psi, spec.delta, grid)?;
    let rel_diff = (lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE);
    Ok(IndicatorReport {
        delta: spec.delta,
        realized_mass: mass,
        atoms,
        indicator_norm: lhs,
        fundamental: rhs,
        rel_diff,
        pass: rel_diff <= INDICATOR_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constant_psi_values() {
        let one = PsiFunction::constant();
        let g = PGrid::default_for(one.support()).unwrap();
        assert_relative_eq!(fundamental_function(&one, 1.0, &g).unwrap(), 1.0);
        let capped = PGrid::for_support(one.support(), 128, 100.0).unwrap();
        let v = fundamental_function(&one, 0.5, &capped).unwrap();
        assert_relative_eq!(v, 0.5f64.powf(0.01), max_relative = 1e-12);
        assert_relative_eq!(v, 0.993_092_495_437_035_6, max_relative = 1e-12);
        let v = fundamental_function(&one, 4.0, &g).unwrap();
        assert_relative_eq!(v, 4.0, max_relative = 1e-5);
        assert!(v <= 4.0);
    }

    #[test]
    fn rejects_nonpositive_delta() {
        let one = PsiFunction::constant();
        let g = PGrid::default_for(one.support()).unwrap();
        assert!(fundamental_function(&one, 0.0, &g).is_err());
    }

    #[test]
    fn nondecreasing_in_delta() {
        let psi = PsiFunction::power(1.0).unwrap();
        let g = PGrid::for_support(psi.support(), 64, 50.0).unwrap();
        let vals: Vec<f64> = [0.01, 0.1, 0.5, 1.0, 2.0, 7.0, 30.0]
            .iter()
            .map(|&d| fundamental_function(&psi, d, &g).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn realization() {
        let s = DiscreteMeasureSpace::uniform(8, 0.125).unwrap();
        let (atoms, mass) = realize_measure(&s, 0.25).unwrap();
        assert_eq!(atoms.len(), 2);
        assert_eq!(mass, 0.25);
        assert!(matches!(realize_measure(&s, 0.3), Err(Error::Construction(_))));
        assert!(realize_measure(&s, 2.0).is_err());
    }

    #[test]
    fn indicator_examples() {
        let space = DiscreteMeasureSpace::uniform(16, 0.125).unwrap().into_shared();
        let one = PsiFunction::constant();
        let g = PGrid::default_for(one.support()).unwrap();
        let r = indicator_norm_check(IndicatorSpec { delta: 1.0 }, &one, &g, &space).unwrap();
        assert!(r.pass);
        assert_relative_eq!(r.fundamental, 1.0);

        let id = PsiFunction::power(1.0).unwrap();
        let g = PGrid::new(vec![1.5, 2.0, 3.0, 4.0, 6.0, 10.0], 10.0).unwrap();
        let r = indicator_norm_check(IndicatorSpec { delta: 2.0 }, &id, &g, &space).unwrap();
        assert!(r.pass, "{r:?}");

        let doob = PsiFunction::doob_factor();
        let g = PGrid::default_for(doob.support()).unwrap();
        let r = indicator_norm_check(IndicatorSpec { delta: 0.25 }, &doob, &g, &space).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
