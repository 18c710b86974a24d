use std::collections::HashMap;

use serde::Serialize;

use super::{assemble, exact_abs_sup, exact_sup, BoundKind, ChainingReport, Exact};
use crate::entropy::{covering_profile, family_semimetric, CoverMode, FamilyNorm, FunctionFamily, SemiMetric};
use crate::error::{Error, Result};
use crate::lp::{bgl_norm, fundamental_function, lp_norm};
use crate::psi::{product_psi, PGrid, PsiFunction};

/// Which chaining bound to evaluate.
#[derive(Debug, Clone)]
pub enum ChainingSpec {
    /// `|max_t|Y(t)||_p ≤ σ_p + Σ_k θ^{k−1} N(T, d_p, θ^k)^{1/p}`.
    EntropySum { p: f64 },
    /// `||max_t|Y(t)|||_{G(ψν)} ≤ σ_ψ φ(G(ν),1) + Σ_k θ^{k−1} φ(G(ν), N(T, d_ψ, θ^k))`.
    Theorem1 { psi: PsiFunction, nu: PsiFunction, grid: PGrid },
}

/// Parts of a bound that do not depend on θ.
struct Prepared<'a> {
    kind: BoundKind,
    spec: &'a ChainingSpec,
    metric: SemiMetric,
    anchor: f64,
    abs: f64,
    signed: f64,
    phi_cache: HashMap<usize, f64>,
}

impl<'a> Prepared<'a> {
    fn new(family: &FunctionFamily, spec: &'a ChainingSpec) -> Result<Self> {
        match spec {
            ChainingSpec::EntropySum { p } => {
                let p = *p;
                let metric = family_semimetric(family, &FamilyNorm::Lp(p))?.metric;
                Ok(Prepared {
                    kind: BoundKind::EntropySum,
                    spec,
                    metric,
                    anchor: family.sigma_lp(p)?,
                    abs: lp_norm(&exact_abs_sup(family), p)?,
                    signed: lp_norm(&exact_sup(family), p)?,
                    phi_cache: HashMap::new(),
                })
            }
            ChainingSpec::Theorem1 { psi, nu, grid } => {
                let zeta = product_psi(psi, nu)?;
                zeta.check_grid(grid)?;
                let fm = family_semimetric(family, &FamilyNorm::Bgl { psi: psi.clone(), grid: grid.clone() })?;
                let sigma = family.sigma_bgl(psi, grid)?;
                let mut prepared = Prepared {
                    kind: BoundKind::Theorem1,
                    spec,
                    metric: fm.metric,
                    anchor: 0.0,
                    abs: bgl_norm(&exact_abs_sup(family), &zeta, grid)?.value,
                    signed: bgl_norm(&exact_sup(family), &zeta, grid)?.value,
                    phi_cache: HashMap::new(),
                };
                prepared.anchor = sigma * prepared.level_factor(1)?;
                Ok(prepared)
            }
        }
    }

    /// `N^{1/p}` or `φ(G(ν), N)`.
    fn level_factor(&mut self, n: usize) -> Result<f64> {
        match self.spec {
            ChainingSpec::EntropySum { p } => Ok((n as f64).powf(1.0 / p)),
            ChainingSpec::Theorem1 { nu, grid, .. } => {
                if let Some(&v) = self.phi_cache.get(&n) {
                    return Ok(v);
                }
                let v = fundamental_function(nu, n as f64, grid)?;
                self.phi_cache.insert(n, v);
                Ok(v)
            }
        }
    }

    fn report(&mut self, theta: f64, k_max: usize, mode: CoverMode) -> Result<ChainingReport> {
        let profile = covering_profile(&self.metric, theta, k_max, mode)?;
        let exact = Exact { abs: self.abs, signed: self.signed };
        let (kind, anchor) = (self.kind, self.anchor);
        assemble(kind, &profile, anchor, |n| self.level_factor(n), exact)
    }
}

/// Entropy-sum bound for `|max_t |Y(t)||_p` under the `d_p` metric.
pub fn entropy_sum_bound(
    family: &FunctionFamily,
    p: f64,
    theta: f64,
    k_max: usize,
    mode: CoverMode,
) -> Result<ChainingReport> {
    let spec = ChainingSpec::EntropySum { p };
    Prepared::new(family, &spec)?.report(theta, k_max, mode)
}

/// Chaining bound in `G(ψν)` under the `d_ψ` metric.
pub fn theorem1_bound(
    family: &FunctionFamily,
    psi: &PsiFunction,
    nu: &PsiFunction,
    grid: &PGrid,
    theta: f64,
    k_max: usize,
    mode: CoverMode,
) -> Result<ChainingReport> {
    let spec = ChainingSpec::Theorem1 { psi: psi.clone(), nu: nu.clone(), grid: grid.clone() };
    Prepared::new(family, &spec)?.report(theta, k_max, mode)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaOptimum {
    pub best: ChainingReport,
    /// `(θ, bound)` for every evaluated θ.
    pub scan: Vec<(f64, f64)>,
}

/// Evaluates the bound at each θ and keeps the smallest; ties go to the
/// earlier θ.
pub fn optimize_theta(
    family: &FunctionFamily,
    spec: &ChainingSpec,
    theta_grid: &[f64],
    k_max: usize,
    mode: CoverMode,
) -> Result<ThetaOptimum> {
    if theta_grid.is_empty() {
        return Err(Error::domain("theta grid is empty"));
    }
    let mut prepared = Prepared::new(family, spec)?;
    let mut best: Option<ChainingReport> = None;
    let mut scan = Vec::with_capacity(theta_grid.len());
    for &theta in theta_grid {
        let r = prepared.report(theta, k_max, mode)?;
        scan.push((theta, r.bound_value));
        if best.as_ref().is_none_or(|b| r.bound_value < b.bound_value) {
            best = Some(r);
        }
    }
    Ok(ThetaOptimum { best: best.expect("nonempty grid"), scan })
}
