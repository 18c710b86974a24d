use serde::Serialize;

use super::{dominates, exact_abs_sup, exact_sup, DOMINATION_TOL};
use crate::entropy::FunctionFamily;
use crate::error::Result;
use crate::lp::{bgl_norm, fundamental_function, lp_norm};
use crate::psi::{product_psi, PGrid, PsiFunction};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PisierReport {
    pub members: usize,
    pub bound: f64,
    /// Norm of `max_t |Y(t)|`.
    pub exact: f64,
    /// Norm of `max_t Y(t)`.
    pub exact_signed: f64,
    pub slack_ratio: f64,
    pub dominates: bool,
}

impl PisierReport {
    fn new(members: usize, bound: f64, exact: f64, exact_signed: f64) -> Self {
        PisierReport {
            members,
            bound,
            exact,
            exact_signed,
            slack_ratio: if exact > 0.0 { bound / exact } else { f64::INFINITY },
            dominates: dominates(bound, exact, DOMINATION_TOL),
        }
    }
}

/// `|max_j |Y_j||_p ≤ m^{1/p} max_j |Y_j|_p`.
pub fn pisier_bound(family: &FunctionFamily, p: f64) -> Result<PisierReport> {
    let sigma = family.sigma_lp(p)?;
    let m = family.len() as f64;
    let bound = sigma * m.powf(1.0 / p);
    let exact = lp_norm(&exact_abs_sup(family), p)?;
    let exact_signed = lp_norm(&exact_sup(family), p)?;
    Ok(PisierReport::new(family.len(), bound, exact, exact_signed))
}

/// `||max_j |Y_j|||_{G(ψν)} ≤ max_j ||Y_j||_{G(ψ)} · φ(G(ν), m)`.
pub fn generalized_pisier_bound(
    family: &FunctionFamily,
    psi: &PsiFunction,
    nu: &PsiFunction,
    grid: &PGrid,
) -> Result<PisierReport> {
    let zeta = product_psi(psi, nu)?;
    zeta.check_grid(grid)?;
    let sigma = family.sigma_bgl(psi, grid)?;
    let phi = fundamental_function(nu, family.len() as f64, grid)?;
    let bound = sigma * phi;
    let exact = bgl_norm(&exact_abs_sup(family), &zeta, grid)?.value;
    let exact_signed = bgl_norm(&exact_sup(family), &zeta, grid)?.value;
    Ok(PisierReport::new(family.len(), bound, exact, exact_signed))
}
