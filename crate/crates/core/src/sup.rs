//! Grid maximization with a golden-section polish around the grid argmax.

use crate::error::Result;

/// Golden-section stopping width in the exponent variable.
pub const REFINE_TOL: f64 = 1e-6;

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    for v in values {
        let t = sum + v;
        comp += if sum.abs() >= v.abs() { (sum - t) + v } else { (v - t) + sum };
        sum = t;
    }
    sum + comp
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Location and value of a maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub value: f64,
    pub at: f64,
}

/// Maximizes `f` over `points`, then polishes inside the bracket formed by the
/// neighbours of the grid argmax. The returned value is never below the grid
/// maximum.
pub(crate) fn maximize<F>(points: &[f64], mut f: F) -> Result<Peak>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut best = Peak { value: f64::NEG_INFINITY, at: f64::NAN };
    let mut best_idx = 0;
    for (i, &p) in points.iter().enumerate() {
        let v = f(p)?;
        if v > best.value {
            best = Peak { value: v, at: p };
            best_idx = i;
        }
    }
    if points.len() < 2 || !best.value.is_finite() {
        return Ok(best);
    }
    let lo = points[best_idx.saturating_sub(1)];
    let hi = points[(best_idx + 1).min(points.len() - 1)];
    let polished = golden_max(lo, hi, &mut f)?;
    if polished.value > best.value {
        best = polished;
    }
    Ok(best)
}

fn golden_max<F>(mut lo: f64, mut hi: f64, f: &mut F) -> Result<Peak>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > REFINE_TOL {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 >= f2 { Peak { value: f1, at: x1 } } else { Peak { value: f2, at: x2 } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polishes_interior_maximum() {
        let pts: Vec<f64> = (0..11).map(|i| i as f64 * 0.1).collect();
        let peak = maximize(&pts, |x| Ok(-(x - 0.437).powi(2))).unwrap();
        assert!((peak.at - 0.437).abs() < 1e-5);
        assert!(peak.value > -1e-10);
    }

    #[test]
    fn edge_maximum_keeps_grid_value() {
        let pts = [1.0, 2.0, 3.0];
        let peak = maximize(&pts, |x| Ok(1.0 / x)).unwrap();
        assert_eq!(peak.value, 1.0);
        assert_eq!(peak.at, 1.0);
    }
}
