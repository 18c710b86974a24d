use serde::Serialize;

use super::Support;
use crate::error::{Error, Result};

/// Cap used in place of an infinite upper support end.
pub const DEFAULT_P_MAX_CAP: f64 = 200.0;
pub const DEFAULT_GRID_POINTS: usize = 128;

/// Relative distance kept from an open support end.
const OPEN_EDGE: f64 = 1e-6;

/// A finite, strictly increasing set of exponents standing in for a supremum
/// over an interval of `p`.
///
/// When the interval is unbounded the top point is `p_max_cap`; suprema that
/// are only approached as `p → ∞` are then underestimated, and `capped()`
/// reports it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PGrid {
    points: Vec<f64>,
    p_max_cap: f64,
    capped: bool,
}

impl PGrid {
    pub fn new(points: Vec<f64>, p_max_cap: f64) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::domain("a p-grid needs at least two points"));
        }
        if points.iter().any(|p| !p.is_finite() || *p < 1.0) {
            return Err(Error::domain("p-grid points must be finite and >= 1"));
        }
        if points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("p-grid points must be strictly increasing"));
        }
        Ok(PGrid { points, p_max_cap, capped: false })
    }

    /// `n` log-spaced points from `lo` to `hi` inclusive.
    pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo >= 1.0) || !(hi > lo) || !hi.is_finite() {
            return Err(Error::domain(format!("invalid log-spaced grid range [{lo}, {hi}]")));
        }
        if n < 2 {
            return Err(Error::domain("a p-grid needs at least two points"));
        }
        let (l0, l1) = (lo.ln(), hi.ln());
        let mut points: Vec<f64> = (0..n)
            .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
            .collect();
        points[0] = lo;
        points[n - 1] = hi;
        Self::new(points, hi)
    }

    /// Log-spaced grid filling a support. Open ends are approached to within
    /// a relative `1e-6`; an infinite upper end is replaced by `p_max_cap`.
    pub fn for_support(support: Support, n: usize, p_max_cap: f64) -> Result<Self> {
        let lo = if support.lo_closed { support.lo } else { support.lo * (1.0 + OPEN_EDGE) };
        let (hi, capped) = if support.hi.is_infinite() {
            (p_max_cap, true)
        } else if support.hi_closed {
            (support.hi, false)
        } else {
            (support.hi * (1.0 - OPEN_EDGE), false)
        };
        if !(hi > lo) {
            return Err(Error::domain(format!(
                "cap {p_max_cap} leaves no room inside support {support}"
            )));
        }
        let mut grid = Self::log_spaced(lo, hi, n)?;
        grid.p_max_cap = p_max_cap;
        grid.capped = capped;
        Ok(grid)
    }

    /// Grid for a support with the default point count and cap.
    pub fn default_for(support: Support) -> Result<Self> {
        Self::for_support(support, DEFAULT_GRID_POINTS, DEFAULT_P_MAX_CAP)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn p_max_cap(&self) -> f64 {
        self.p_max_cap
    }

    /// True when the top point is a cap on an unbounded support.
    pub fn capped(&self) -> bool {
        self.capped
    }

    pub fn min(&self) -> f64 {
        self.points[0]
    }

    pub fn max(&self) -> f64 {
        self.points[self.points.len() - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_points() {
        assert!(PGrid::new(vec![2.0], 10.0).is_err());
        assert!(PGrid::new(vec![2.0, 2.0], 10.0).is_err());
        assert!(PGrid::new(vec![0.5, 2.0], 10.0).is_err());
        assert!(PGrid::new(vec![1.5, 2.0, 3.0], 10.0).is_ok());
    }

    #[test]
    fn support_grid_respects_open_ends_and_cap() {
        let s = Support::open(1.0, f64::INFINITY).unwrap();
        let g = PGrid::for_support(s, 16, 100.0).unwrap();
        assert!(g.min() > 1.0 && g.min() < 1.0 + 1e-5);
        assert_eq!(g.max(), 100.0);
        assert!(g.capped());
        let s = Support::open(1.0, 2.0).unwrap();
        let g = PGrid::for_support(s, 16, 100.0).unwrap();
        assert!(g.max() < 2.0 && !g.capped());
        assert!(g.points().iter().all(|&p| s.contains(p)));
    }
}
