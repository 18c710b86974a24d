use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lp::{bgl_norm, lp_norm, same_space, DiscreteMeasureSpace, SimpleFunction};
use crate::psi::{PGrid, PsiFunction};

/// A finite indexed family `{Y(t, ·) : t ∈ T}` on one measure space.
#[derive(Debug, Clone)]
pub struct FunctionFamily {
    labels: Vec<String>,
    members: Vec<SimpleFunction>,
}

impl FunctionFamily {
    pub fn new(labels: Vec<String>, members: Vec<SimpleFunction>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::domain("a function family needs at least one member"));
        }
        if labels.len() != members.len() {
            return Err(Error::Construction(format!("{} labels for {} members", labels.len(), members.len())));
        }
        let space = members[0].space();
        if members.iter().any(|f| !same_space(f.space(), space)) {
            return Err(Error::Construction("family members live on different spaces".into()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Construction(format!("duplicate member label `{dup}`")));
        }
        Ok(FunctionFamily { labels, members })
    }

    /// Members labelled `t0, t1, …`.
    pub fn from_members(members: Vec<SimpleFunction>) -> Result<Self> {
        let labels = (0..members.len()).map(|i| format!("t{i}")).collect();
        Self::new(labels, members)
    }

    /// One member per row of `rows`, all on `space`.
    pub fn from_rows(space: Arc<DiscreteMeasureSpace>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let members = rows
            .into_iter()
            .map(|r| SimpleFunction::new(Arc::clone(&space), r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_members(members)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn members(&self) -> &[SimpleFunction] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &SimpleFunction {
        &self.members[i]
    }

    pub fn space(&self) -> &Arc<DiscreteMeasureSpace> {
        self.members[0].space()
    }

    /// `σ = max_t |Y(t)|_p`.
    pub fn sigma_lp(&self, p: f64) -> Result<f64> {
        self.members.iter().try_fold(0.0_f64, |m, y| Ok(m.max(lp_norm(y, p)?)))
    }

    /// `σ(G(ψ)) = max_t ||Y(t)||_{G(ψ)}`.
    pub fn sigma_bgl(&self, psi: &PsiFunction, grid: &PGrid) -> Result<f64> {
        self.members
            .iter()
            .try_fold(0.0_f64, |m, y| Ok(m.max(bgl_norm(y, psi, grid)?.value)))
    }

    /// Every member multiplied by `c`, labels kept.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        let members = self.members.iter().map(|y| y.scale(c)).collect::<Result<Vec<_>>>()?;
        Ok(FunctionFamily { labels: self.labels.clone(), members })
    }

    /// Pointwise `max_t Y(t, x)`.
    pub fn pointwise_sup(&self) -> SimpleFunction {
        self.fold_max(|v| v)
    }

    /// Pointwise `max_t |Y(t, x)|`.
    pub fn pointwise_abs_max(&self) -> SimpleFunction {
        self.fold_max(f64::abs)
    }

    fn fold_max(&self, g: impl Fn(f64) -> f64) -> SimpleFunction {
        let n = self.space().len();
        let mut out = vec![f64::NEG_INFINITY; n];
        for y in &self.members {
            for (o, &v) in out.iter_mut().zip(y.values()) {
                *o = o.max(g(v));
            }
        }
        SimpleFunction::new(Arc::clone(self.space()), out).expect("finite values on the family space")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(FunctionFamily::from_members(vec![]).is_err());
        let a = DiscreteMeasureSpace::uniform(2, 1.0).unwrap().into_shared();
        let b = DiscreteMeasureSpace::uniform(2, 0.5).unwrap().into_shared();
        let f = SimpleFunction::constant(a, 1.0).unwrap();
        let g = SimpleFunction::constant(b, 1.0).unwrap();
        assert!(FunctionFamily::from_members(vec![f.clone(), g]).is_err());
        assert!(FunctionFamily::new(vec!["x".into(), "x".into()], vec![f.clone(), f]).is_err());
    }

    #[test]
    fn sup_helpers() {
        let s = DiscreteMeasureSpace::uniform(3, 1.0).unwrap().into_shared();
        let fam = FunctionFamily::from_rows(s, vec![vec![1.0, -3.0, 0.0], vec![-1.0, 2.0, -0.5]]).unwrap();
        assert_eq!(fam.pointwise_sup().values(), &[1.0, 2.0, 0.0]);
        assert_eq!(fam.pointwise_abs_max().values(), &[1.0, 3.0, 0.5]);
        assert_eq!(fam.sigma_lp(f64::INFINITY).unwrap(), 3.0);
        assert_eq!(fam.scaled(2.0).unwrap().member(1).values(), &[-2.0, 4.0, -1.0]);
    }
}
