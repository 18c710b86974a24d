use serde::Serialize;

use super::SimpleFunction;
use crate::error::{Error, Result};
use crate::psi::{PGrid, PsiFunction};
use crate::sup;

/// `|f|_p = (Σ w_i |f_i|^p)^{1/p}`, computed as `max|f| · (Σ w_i (|f_i|/max)^p)^{1/p}`
/// so that large `p` does not overflow. `p = ∞` gives the maximum.
pub fn lp_norm(f: &SimpleFunction, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::domain(format!("L_p norm needs p >= 1, got {p}")));
    }
    let peak = f.values().iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Ok(0.0);
    }
    if p.is_infinite() {
        return Ok(peak);
    }
    let sum = sup::compensated_sum(
        f.values()
            .iter()
            .zip(f.space().weights())
            .map(|(v, w)| w * (v.abs() / peak).powf(p)),
    );
    Ok(peak * sum.powf(1.0 / p))
}

/// Value of a grand Lebesgue norm and the exponent attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormValue {
    pub value: f64,
    pub argmax_p: f64,
}

/// `||f||_{G(ψ)} = sup_p |f|_p / ψ(p)`, over the grid and polished by golden
/// section around the grid argmax.
pub fn bgl_norm(f: &SimpleFunction, psi: &PsiFunction, grid: &PGrid) -> Result<NormValue> {
    psi.check_grid(grid)?;
    bgl_norm_of_curve(|p| lp_norm(f, p), psi, grid)
}

/// The same supremum for an arbitrary moment curve `h(p)`.
pub fn bgl_norm_of_curve<H>(mut h: H, psi: &PsiFunction, grid: &PGrid) -> Result<NormValue>
where
    H: FnMut(f64) -> Result<f64>,
{
    let peak = sup::maximize(grid.points(), |p| Ok(h(p)? / psi.eval(p)?))?;
    Ok(NormValue { value: peak.value, argmax_p: peak.at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::DiscreteMeasureSpace;
    use approx::assert_relative_eq;

    #[test]
    fn lp_examples() {
        let s = DiscreteMeasureSpace::from_weights(vec![2.0]).unwrap().into_shared();
        let f = SimpleFunction::constant(s, 1.0).unwrap();
        assert_relative_eq!(lp_norm(&f, 2.0).unwrap(), 2f64.sqrt(), max_relative = 1e-15);

        let s = DiscreteMeasureSpace::uniform(4, 0.25).unwrap().into_shared();
        let one = SimpleFunction::constant(s, 1.0).unwrap();
        for p in [1.0, 2.5, 77.0, 1e4] {
            assert_relative_eq!(lp_norm(&one, p).unwrap(), 1.0, max_relative = 1e-14);
        }

        let s = DiscreteMeasureSpace::uniform(2, 1.0).unwrap().into_shared();
        let f = SimpleFunction::new(s, vec![1.0, 2.0]).unwrap();
        assert_relative_eq!(lp_norm(&f, 3.0).unwrap(), 9f64.cbrt(), max_relative = 1e-15);
        assert!(matches!(lp_norm(&f, 0.5), Err(Error::Domain(_))));
        assert_eq!(lp_norm(&f, f64::INFINITY).unwrap(), 2.0);
    }

    #[test]
    fn large_p_does_not_overflow() {
        let s = DiscreteMeasureSpace::uniform(3, 1.0).unwrap().into_shared();
        let f = SimpleFunction::new(s, vec![1e10, 5e9, 1.0]).unwrap();
        let v = lp_norm(&f, 400.0).unwrap();
        assert!(v.is_finite());
        assert_relative_eq!(v, 1e10, max_relative = 1e-2);
    }

    #[test]
    fn bgl_of_unit_indicator_is_one() {
        let s = DiscreteMeasureSpace::uniform(4, 0.5).unwrap().into_shared();
        let ind = SimpleFunction::indicator(s, &[0, 3]).unwrap();
        let psi = PsiFunction::constant();
        let grid = PGrid::default_for(psi.support()).unwrap();
        let n = bgl_norm(&ind, &psi, &grid).unwrap();
        assert_relative_eq!(n.value, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn bgl_rejects_grid_outside_support() {
        let s = DiscreteMeasureSpace::uniform(1, 1.0).unwrap().into_shared();
        let f = SimpleFunction::constant(s, 1.0).unwrap();
        let grid = PGrid::log_spaced(1.0, 3.0, 5).unwrap();
        assert!(matches!(bgl_norm(&f, &PsiFunction::constant(), &grid), Err(Error::Domain(_))));
    }
}
