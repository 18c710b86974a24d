use serde::Serialize;

use super::{bgl_norm_of_curve, lp_norm, SimpleFunction};
use crate::error::{Error, Result};
use crate::psi::{PGrid, PsiFunction};

/// A moment rearrangement-invariant norm `||f|| = ⟨h⟩`, `h(p) = |f|_p`.
#[derive(Debug, Clone)]
pub enum MriNormSpec {
    /// `⟨h⟩ = sup_p h(p)/ψ(p)`: the grand Lebesgue norm.
    Sup { psi: PsiFunction, grid: PGrid },
    /// `⟨h⟩ = [Σ_j w_j (h(x_j)/x_j^α)^q]^{1/q}`, a quadrature of the
    /// `Q(q, α)` norm.
    Weighted(WeightedMoments),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedMoments {
    pub q: f64,
    pub alpha: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl MriNormSpec {
    pub fn sup(psi: PsiFunction, grid: PGrid) -> Result<Self> {
        psi.check_grid(&grid)?;
        Ok(MriNormSpec::Sup { psi, grid })
    }

    pub fn weighted(q: f64, alpha: f64, nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if !(q >= 1.0) || !q.is_finite() {
            return Err(Error::domain(format!("outer exponent q = {q} must be finite and >= 1")));
        }
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::domain("quadrature needs matching, nonempty nodes and weights"));
        }
        if nodes.iter().any(|x| !(*x >= 1.0) || !x.is_finite()) {
            return Err(Error::domain("quadrature nodes must be finite exponents >= 1"));
        }
        if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::domain("quadrature weights must be nonnegative"));
        }
        Ok(MriNormSpec::Weighted(WeightedMoments { q, alpha, nodes, weights }))
    }

    /// Exponents at which the functional reads its curve.
    pub fn nodes(&self) -> &[f64] {
        match self {
            MriNormSpec::Sup { grid, .. } => grid.points(),
            MriNormSpec::Weighted(w) => &w.nodes,
        }
    }

    /// Applies `⟨·⟩` to an arbitrary moment curve.
    pub fn apply<H>(&self, mut h: H) -> Result<f64>
    where
        H: FnMut(f64) -> Result<f64>,
    {
        match self {
            MriNormSpec::Sup { psi, grid } => Ok(bgl_norm_of_curve(h, psi, grid)?.value),
            MriNormSpec::Weighted(w) => {
                let mut acc = 0.0;
                for (&x, &wt) in w.nodes.iter().zip(&w.weights) {
                    let v = h(x)?;
                    if !v.is_finite() {
                        return Err(Error::Evaluation(format!("moment curve is {v} at node {x}")));
                    }
                    acc += wt * (v / x.powf(w.alpha)).powf(w.q);
                }
                let out = acc.powf(1.0 / w.q);
                if !out.is_finite() {
                    return Err(Error::Evaluation(format!("quadrature diverged to {out}")));
                }
                Ok(out)
            }
        }
    }
}

/// `||f||` in the moment rearrangement-invariant space described by `spec`.
pub fn mri_norm(f: &SimpleFunction, spec: &MriNormSpec) -> Result<f64> {
    spec.apply(|p| lp_norm(f, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{bgl_norm, DiscreteMeasureSpace};
    use approx::assert_relative_eq;

    #[test]
    fn sup_kind_is_bgl() {
        let s = DiscreteMeasureSpace::uniform(3, 0.7).unwrap().into_shared();
        let f = SimpleFunction::new(s, vec![0.2, 1.5, 3.0]).unwrap();
        let psi = PsiFunction::constant();
        let grid = PGrid::default_for(psi.support()).unwrap();
        let spec = MriNormSpec::sup(psi.clone(), grid.clone()).unwrap();
        assert_eq!(mri_norm(&f, &spec).unwrap(), bgl_norm(&f, &psi, &grid).unwrap().value);
    }

    #[test]
    fn weighted_examples() {
        let s = DiscreteMeasureSpace::uniform(2, 0.5).unwrap().into_shared();
        let f = SimpleFunction::new(s.clone(), vec![1.0, 3.0]).unwrap();
        let spec = MriNormSpec::weighted(1.0, 0.0, vec![2.0], vec![1.0]).unwrap();
        assert_relative_eq!(mri_norm(&f, &spec).unwrap(), lp_norm(&f, 2.0).unwrap(), max_relative = 1e-15);

        let one = SimpleFunction::constant(s, 1.0).unwrap();
        let spec = MriNormSpec::weighted(2.0, 1.0, vec![2.0, 4.0], vec![1.0, 1.0]).unwrap();
        assert_relative_eq!(mri_norm(&one, &spec).unwrap(), 0.3125f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn invalid_specs_and_divergence() {
        assert!(MriNormSpec::weighted(0.5, 0.0, vec![2.0], vec![1.0]).is_err());
        assert!(MriNormSpec::weighted(1.0, 0.0, vec![2.0], vec![-1.0]).is_err());
        assert!(MriNormSpec::weighted(1.0, 0.0, vec![0.5], vec![1.0]).is_err());
        let spec = MriNormSpec::weighted(1.0, 0.0, vec![2.0], vec![1.0]).unwrap();
        assert!(matches!(spec.apply(|_| Ok(f64::INFINITY)), Err(Error::Evaluation(_))));
    }
}
