use serde::Serialize;

use super::{bgl_norm, SimpleFunction};
use crate::error::{Error, Result};
use crate::psi::{PGrid, PsiFunction};

/// Relative slack for rounding when checking that norms do not decrease.
const MONOTONE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FatouReport {
    pub norms: Vec<f64>,
    pub limit_norm: f64,
    /// `||f||_{G(ψ)} − ||f_last||_{G(ψ)}`.
    pub gap: f64,
    pub monotone: bool,
}

/// Checks the Fatou property along an increasing chain `0 ≤ f_1 ≤ f_2 ≤ … ≤ f`.
pub fn fatou_check(
    chain: &[SimpleFunction],
    limit: &SimpleFunction,
    psi: &PsiFunction,
    grid: &PGrid,
) -> Result<FatouReport> {
    let first = chain
        .first()
        .ok_or_else(|| Error::Precondition("empty chain".into()))?;
    if first.values().iter().any(|&v| v < 0.0) {
        return Err(Error::Precondition("chain elements must be nonnegative".into()));
    }
    for (i, w) in chain.windows(2).enumerate() {
        if !w[0].le_pointwise(&w[1]) {
            return Err(Error::Precondition(format!("chain decreases between elements {i} and {}", i + 1)));
        }
    }
    if !chain[chain.len() - 1].le_pointwise(limit) {
        return Err(Error::Precondition("last chain element exceeds the limit".into()));
    }
    let norms = chain
        .iter()
        .map(|f| Ok(bgl_norm(f, psi, grid)?.value))
        .collect::<Result<Vec<f64>>>()?;
    let limit_norm = bgl_norm(limit, psi, grid)?.value;
    let monotone = norms
        .windows(2)
        .all(|w| w[1] >= w[0] * (1.0 - MONOTONE_TOL))
        && limit_norm >= norms[norms.len() - 1] * (1.0 - MONOTONE_TOL);
    let gap = limit_norm - norms[norms.len() - 1];
    Ok(FatouReport { norms, limit_norm, gap, monotone })
}
