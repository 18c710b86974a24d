use serde::Serialize;

use super::{PGrid, PsiFunction};
use crate::error::Result;

/// Relative slack allowed before a triple counts as a violation.
pub const LOG_CONVEX_TOL: f64 = 1e-9;

/// Variable in which `ln ψ` is tested for convexity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConvexityVariable {
    /// Convexity in `1/p`, the sense in which every moment curve `p ↦ |f|_p`
    /// is log-convex (Lyapunov).
    InverseExponent,
    /// Convexity in `p` itself.
    Exponent,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub variable: ConvexityVariable,
    pub pass: bool,
    /// Largest `ψ(middle)/chord − 1` over all grid triples, floored at zero.
    pub max_violation: f64,
    /// Grid points `(p_i, p_j, p_k)` of the worst triple, if any violated.
    pub worst_triple: Option<(f64, f64, f64)>,
}

/// Log-convexity of ψ in `1/p` over every ordered grid triple.
pub fn check_log_convex(psi: &PsiFunction, grid: &PGrid) -> Result<ConvexityReport> {
    check_log_convex_in(psi, grid, ConvexityVariable::InverseExponent)
}

pub fn check_log_convex_in(
    psi: &PsiFunction,
    grid: &PGrid,
    variable: ConvexityVariable,
) -> Result<ConvexityReport> {
    let pts = grid.points();
    let logs: Vec<f64> = pts.iter().map(|&p| psi.eval(p).map(f64::ln)).collect::<Result<_>>()?;
    let xs: Vec<f64> = match variable {
        ConvexityVariable::InverseExponent => pts.iter().map(|p| 1.0 / p).collect(),
        ConvexityVariable::Exponent => pts.to_vec(),
    };
    let n = pts.len();
    let mut worst = 0.0_f64;
    let mut worst_triple = None;
    for i in 0..n {
        for k in i + 2..n {
            for j in i + 1..k {
                let lambda = (xs[k] - xs[j]) / (xs[k] - xs[i]);
                let chord = lambda * logs[i] + (1.0 - lambda) * logs[k];
                let excess = (logs[j] - chord).exp_m1();
                if excess > worst {
                    worst = excess;
                    worst_triple = Some((pts[i], pts[j], pts[k]));
                }
            }
        }
    }
    Ok(ConvexityReport {
        variable,
        pass: worst <= LOG_CONVEX_TOL,
        max_violation: worst,
        worst_triple: if worst > LOG_CONVEX_TOL { worst_triple } else { None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::Support;

    fn grid() -> PGrid {
        PGrid::log_spaced(1.1, 40.0, 24).unwrap()
    }

    #[test]
    fn power_is_log_convex_in_inverse_p_only() {
        let psi = PsiFunction::power(2.0).unwrap();
        assert!(check_log_convex(&psi, &grid()).unwrap().pass);
        let in_p = check_log_convex_in(&psi, &grid(), ConvexityVariable::Exponent).unwrap();
        assert!(!in_p.pass);
        assert!(in_p.max_violation > 0.0);
    }

    #[test]
    fn exponential_has_zero_violation() {
        let psi = PsiFunction::from_fn("exp", Support::open(1.0, f64::INFINITY).unwrap(), f64::exp);
        let g = PGrid::log_spaced(1.1, 20.0, 24).unwrap();
        for v in [ConvexityVariable::Exponent, ConvexityVariable::InverseExponent] {
            let r = check_log_convex_in(&psi, &g, v).unwrap();
            assert!(r.pass);
            assert!(r.max_violation <= LOG_CONVEX_TOL);
        }
    }

    #[test]
    fn dent_is_detected() {
        let g = grid();
        let dent_at = g.points()[10];
        for factor in [1.5, 0.5] {
            let psi = PsiFunction::from_fn("dented", Support::open(1.0, f64::INFINITY).unwrap(), move |p| {
                if p == dent_at { factor } else { 1.0 }
            });
            let r = check_log_convex(&psi, &g).unwrap();
            assert!(!r.pass, "factor {factor}");
            assert!(r.worst_triple.is_some());
        }
    }
}
