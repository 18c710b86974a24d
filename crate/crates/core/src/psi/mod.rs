//! Generating functions ψ of a grand Lebesgue norm and the grids their
//! suprema are taken over.
//!
//! A [`PsiFunction`] is a point evaluator plus its support interval. The
//! named constructors (`constant`, `power`, `doob_factor`, `ratio`, `table`)
//! cover every generating function the toolkit needs; the transforms in
//! [`transform`] build the derived functions used by the chaining and
//! application bounds.

mod convexity;
mod grid;
pub mod transform;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use convexity::{check_log_convex, check_log_convex_in, ConvexityReport, ConvexityVariable};
pub use grid::{PGrid, DEFAULT_GRID_POINTS, DEFAULT_P_MAX_CAP};
pub use transform::{product_psi, psi_doob, psi_fourier, psi_kappa, psi_kappa12};

/// An interval of admissible exponents with independently open/closed ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Support {
    /// The open interval `(lo, hi)`; `hi` may be infinite.
    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    /// `[lo, hi)`, the usual shape for power-type functions.
    pub fn closed_open(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, true, false)
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if !(lo >= 1.0) || lo.is_infinite() {
            return Err(Error::domain(format!("support lower end {lo} must be finite and >= 1")));
        }
        if !(hi > lo) {
            return Err(Error::domain(format!("support ({lo}, {hi}) is empty or degenerate")));
        }
        let hi_closed = hi_closed && hi.is_finite();
        Ok(Support { lo, hi, lo_closed, hi_closed })
    }

    pub fn contains(&self, p: f64) -> bool {
        let above = if self.lo_closed { p >= self.lo } else { p > self.lo };
        let below = if self.hi_closed { p <= self.hi } else { p < self.hi };
        above && below
    }

    /// Intersection of two supports, or a domain error when it has no interior.
    pub fn intersect(&self, other: &Support) -> Result<Support> {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo, self.lo_closed)
        } else if other.lo > self.lo {
            (other.lo, other.lo_closed)
        } else {
            (self.lo, self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi, self.hi_closed)
        } else if other.hi < self.hi {
            (other.hi, other.hi_closed)
        } else {
            (self.hi, self.hi_closed && other.hi_closed)
        };
        if !(hi > lo) {
            return Err(Error::domain(format!(
                "supports {self} and {other} do not overlap on an open interval"
            )));
        }
        Ok(Support { lo, hi, lo_closed, hi_closed })
    }

    /// Restricts to exponents strictly above `threshold`.
    pub fn restrict_above(&self, threshold: f64) -> Result<Support> {
        if threshold < self.lo || (threshold == self.lo && !self.lo_closed) {
            return Ok(*self);
        }
        if !(self.hi > threshold) {
            return Err(Error::domain(format!(
                "support {self} has no points above {threshold}"
            )));
        }
        Ok(Support { lo: threshold, hi: self.hi, lo_closed: false, hi_closed: self.hi_closed })
    }

    pub fn is_unbounded(&self) -> bool {
        self.hi.is_infinite()
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A generating function ψ together with its support.
///
/// Immutable and cheap to clone; derived functions share the evaluator of
/// the function they wrap.
#[derive(Clone)]
pub struct PsiFunction {
    support: Support,
    eval: Evaluator,
    label: String,
}

impl fmt::Debug for PsiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PsiFunction")
            .field("label", &self.label)
            .field("support", &self.support)
            .finish()
    }
}

impl PsiFunction {
    /// Wraps an arbitrary evaluator. Values are checked for positivity at
    /// evaluation time, not here.
    pub fn from_fn<F>(label: impl Into<String>, support: Support, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        PsiFunction { support, eval: Arc::new(f), label: label.into() }
    }

    /// ψ ≡ 1 on `(1, ∞)`.
    pub fn constant() -> Self {
        Self::constant_on(Support { lo: 1.0, hi: f64::INFINITY, lo_closed: false, hi_closed: false })
    }

    pub fn constant_on(support: Support) -> Self {
        Self::from_fn("constant", support, |_| 1.0)
    }

    /// ψ(p) = p^β on `[1, ∞)`.
    pub fn power(beta: f64) -> Result<Self> {
        Self::power_on(beta, Support::closed_open(1.0, f64::INFINITY)?)
    }

    pub fn power_on(beta: f64, support: Support) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::domain(format!("power exponent {beta} is not finite")));
        }
        Ok(Self::from_fn(format!("power({beta})"), support, move |p| p.powf(beta)))
    }

    /// ψ(p) = p/(p−1) on `(1, ∞)`, the Doob constant.
    pub fn doob_factor() -> Self {
        Self::from_fn(
            "doob_factor",
            Support { lo: 1.0, hi: f64::INFINITY, lo_closed: false, hi_closed: false },
            |p| p / (p - 1.0),
        )
    }

    /// ψ(p) = p/(p−κ) on `(max(κ,1), ∞)`.
    pub fn ratio(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::domain(format!("ratio parameter {kappa} must be positive")));
        }
        let lo = kappa.max(1.0);
        let support = Support {
            lo,
            hi: f64::INFINITY,
            lo_closed: kappa < 1.0,
            hi_closed: false,
        };
        Ok(Self::from_fn(format!("ratio({kappa})"), support, move |p| p / (p - kappa)))
    }

    /// Tabulated ψ on the closed hull of the nodes. Between nodes `ln ψ` is
    /// interpolated linearly in `1/p`; at a node the stored value is returned
    /// exactly.
    ///
    /// Interpolating in `1/p` keeps any moment curve `p ↦ |f|_p` dominated by
    /// the table at the nodes dominated between them as well, since
    /// `ln |f|_p` is convex in `1/p`.
    pub fn table(points: &[(f64, f64)]) -> Result<Self> {
        Self::table_labeled("table", points)
    }

    pub fn table_labeled(label: impl Into<String>, points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::domain("a tabulated psi needs at least two nodes"));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::domain("table nodes must be strictly increasing in p"));
            }
        }
        for &(p, v) in points {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(format!("table value {v} at p={p} must be positive and finite")));
            }
        }
        let support = Support::closed(points[0].0, points[points.len() - 1].0)?;
        let nodes: Vec<f64> = points.iter().map(|&(p, _)| p).collect();
        let values: Vec<f64> = points.iter().map(|&(_, v)| v).collect();
        let logs: Vec<f64> = values.iter().map(|v| v.ln()).collect();
        Ok(Self::from_fn(label, support, move |p| {
            match nodes.binary_search_by(|x| x.partial_cmp(&p).expect("finite node")) {
                Ok(i) => values[i],
                Err(i) => {
                    let i = i.clamp(1, nodes.len() - 1);
                    let (s0, s1) = (1.0 / nodes[i - 1], 1.0 / nodes[i]);
                    let t = (1.0 / p - s0) / (s1 - s0);
                    (logs[i - 1] + t * (logs[i] - logs[i - 1])).exp()
                }
            }
        }))
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains(&self, p: f64) -> bool {
        self.support.contains(p)
    }

    /// ψ(p), or a domain error when `p` is outside the support.
    pub fn eval(&self, p: f64) -> Result<f64> {
        if !self.support.contains(p) {
            return Err(Error::domain(format!(
                "p = {p} is outside the support {} of {}",
                self.support, self.label
            )));
        }
        let v = (self.eval)(p);
        if !(v > 0.0) || v.is_nan() {
            return Err(Error::Evaluation(format!("{}({p}) = {v} is not positive", self.label)));
        }
        Ok(v)
    }

    /// Evaluation without the support check, for use by wrappers that have
    /// already validated `p`.
    pub(crate) fn raw(&self) -> Evaluator {
        Arc::clone(&self.eval)
    }

    /// Checks that every grid point lies in the support.
    pub fn check_grid(&self, grid: &PGrid) -> Result<()> {
        match grid.points().iter().find(|&&p| !self.contains(p)) {
            Some(p) => Err(Error::domain(format!(
                "grid point {p} lies outside the support {} of {}",
                self.support, self.label
            ))),
            None => Ok(()),
        }
    }

    /// Smallest value of ψ over the grid. Generating functions are expected to
    /// stay at or above 1; tabulated natural functions may not.
    pub fn min_on_grid(&self, grid: &PGrid) -> Result<f64> {
        grid.points().iter().try_fold(f64::INFINITY, |m, &p| Ok(m.min(self.eval(p)?)))
    }
}

/// Free-function form of [`PsiFunction::eval`].
pub fn eval_psi(psi: &PsiFunction, p: f64) -> Result<f64> {
    psi.eval(p)
}
