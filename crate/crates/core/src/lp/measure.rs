use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sup::compensated_sum;

/// A finite set of weighted atoms.
///
/// Infinite-mass spaces are represented by finite truncations; the
/// `truncated` flag records that the atoms are a window onto a larger space.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasureSpace {
    ids: Vec<u64>,
    weights: Vec<f64>,
    truncated: bool,
}

impl DiscreteMeasureSpace {
    pub fn new(ids: Vec<u64>, weights: Vec<f64>, truncated: bool) -> Result<Self> {
        if ids.len() != weights.len() {
            return Err(Error::Construction(format!(
                "{} atom ids but {} weights",
                ids.len(),
                weights.len()
            )));
        }
        if ids.is_empty() {
            return Err(Error::Construction("a measure space needs at least one atom".into()));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(**w > 0.0) || !w.is_finite()) {
            return Err(Error::Construction(format!("atom {} has non-positive weight {w}", ids[i])));
        }
        let mut seen = HashSet::with_capacity(ids.len());
        if let Some(dup) = ids.iter().find(|id| !seen.insert(**id)) {
            return Err(Error::Construction(format!("duplicate atom id {dup}")));
        }
        Ok(DiscreteMeasureSpace { ids, weights, truncated })
    }

    /// Atoms `0..n` with the given weights.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        let ids = (0..weights.len() as u64).collect();
        Self::new(ids, weights, false)
    }

    pub fn uniform(n: usize, weight: f64) -> Result<Self> {
        Self::from_weights(vec![weight; n])
    }

    pub fn with_truncation(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        compensated_sum(self.weights.iter().copied())
    }

    pub fn is_truncation(&self) -> bool {
        self.truncated
    }

    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }
}

/// A function on a [`DiscreteMeasureSpace`], one finite value per atom.
#[derive(Debug, Clone)]
pub struct SimpleFunction {
    space: Arc<DiscreteMeasureSpace>,
    values: Vec<f64>,
}

impl PartialEq for SimpleFunction {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.values == other.values
    }
}

pub(crate) fn same_space(a: &Arc<DiscreteMeasureSpace>, b: &Arc<DiscreteMeasureSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SimpleFunction {
    pub fn new(space: Arc<DiscreteMeasureSpace>, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::Construction(format!(
                "{} values for a space of {} atoms",
                values.len(),
                space.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Construction(format!("non-finite function value {v}")));
        }
        Ok(SimpleFunction { space, values })
    }

    pub fn constant(space: Arc<DiscreteMeasureSpace>, c: f64) -> Result<Self> {
        let n = space.len();
        Self::new(space, vec![c; n])
    }

    /// Indicator of the listed atom indices.
    pub fn indicator(space: Arc<DiscreteMeasureSpace>, atoms: &[usize]) -> Result<Self> {
        let mut values = vec![0.0; space.len()];
        for &i in atoms {
            *values
                .get_mut(i)
                .ok_or_else(|| Error::Construction(format!("atom index {i} out of range")))? = 1.0;
        }
        Self::new(space, values)
    }

    pub fn space(&self) -> &Arc<DiscreteMeasureSpace> {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `∫ f dμ`.
    pub fn integral(&self) -> f64 {
        compensated_sum(self.values.iter().zip(self.space.weights()).map(|(v, w)| v * w))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(Arc::clone(&self.space), self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        self.map(|v| c * v)
    }

    pub fn abs(&self) -> Self {
        SimpleFunction {
            space: Arc::clone(&self.space),
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::Domain("functions live on different measure spaces".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Self::new(Arc::clone(&self.space), values)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn pointwise_max(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, f64::max)
    }

    /// Keeps the first `n` atoms and zeroes the rest.
    pub fn truncate_to(&self, n: usize) -> Self {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| if i < n { v } else { 0.0 })
            .collect();
        SimpleFunction { space: Arc::clone(&self.space), values }
    }

    /// True when `self ≤ other` at every atom.
    pub fn le_pointwise(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space)
            && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_validation() {
        assert!(DiscreteMeasureSpace::from_weights(vec![1.0, 0.0]).is_err());
        assert!(DiscreteMeasureSpace::from_weights(vec![]).is_err());
        assert!(DiscreteMeasureSpace::new(vec![1, 1], vec![1.0, 1.0], false).is_err());
        assert!(DiscreteMeasureSpace::new(vec![1], vec![1.0, 1.0], false).is_err());
        let s = DiscreteMeasureSpace::uniform(4, 0.25).unwrap();
        assert_eq!(s.total_mass(), 1.0);
    }

    #[test]
    fn function_validation_and_ops() {
        let s = DiscreteMeasureSpace::uniform(3, 1.0).unwrap().into_shared();
        assert!(SimpleFunction::new(s.clone(), vec![1.0]).is_err());
        assert!(SimpleFunction::new(s.clone(), vec![1.0, f64::NAN, 0.0]).is_err());
        let f = SimpleFunction::new(s.clone(), vec![1.0, -2.0, 3.0]).unwrap();
        let g = SimpleFunction::indicator(s.clone(), &[1]).unwrap();
        assert_eq!(f.add(&g).unwrap().values(), &[1.0, -1.0, 3.0]);
        assert_eq!(f.abs().values(), &[1.0, 2.0, 3.0]);
        assert_eq!(f.integral(), 2.0);
        assert_eq!(f.truncate_to(1).values(), &[1.0, 0.0, 0.0]);
        let other = DiscreteMeasureSpace::uniform(3, 2.0).unwrap().into_shared();
        let h = SimpleFunction::constant(other, 1.0).unwrap();
        assert!(f.add(&h).is_err());
    }
}
