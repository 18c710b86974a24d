use serde::Serialize;

use super::FunctionFamily;
use crate::error::{Error, Result};
use crate::lp::{bgl_norm, lp_norm};
use crate::psi::{PGrid, PsiFunction};

/// Absolute slack allowed in the triangle inequality.
pub const TRIANGLE_TOL: f64 = 1e-9;

/// A semi-distance on `{0, …, m−1}` stored as a dense symmetric matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemiMetric {
    m: usize,
    d: Vec<f64>,
}

impl SemiMetric {
    /// Validates symmetry, zero diagonal, nonnegativity and the triangle
    /// inequality on all triples.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::Construction("a semi-metric needs at least one point".into()));
        }
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Construction("distance matrix must be square".into()));
        }
        let d: Vec<f64> = rows.into_iter().flatten().collect();
        let metric = SemiMetric { m, d };
        metric.validate_entries()?;
        metric.validate_triangle()?;
        Ok(metric)
    }

    /// Euclidean distances between points. The triangle inequality holds by
    /// construction and is not rechecked.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        Self::from_points_by(points, |a, b| {
            a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
        })
    }

    /// Sup-norm distances `max_i |a_i − b_i|` between points, so closed balls
    /// are axis-parallel cubes.
    pub fn from_points_max(points: &[Vec<f64>]) -> Result<Self> {
        Self::from_points_by(points, |a, b| a.iter().zip(b).fold(0.0, |m, (x, y)| f64::max(m, (x - y).abs())))
    }

    fn from_points_by(points: &[Vec<f64>], dist: impl Fn(&[f64], &[f64]) -> f64) -> Result<Self> {
        let m = points.len();
        if m == 0 {
            return Err(Error::Construction("a semi-metric needs at least one point".into()));
        }
        let dim = points[0].len();
        if points.iter().any(|p| p.len() != dim || p.iter().any(|x| !x.is_finite())) {
            return Err(Error::Construction("points must share a dimension and be finite".into()));
        }
        let mut d = vec![0.0; m * m];
        for i in 0..m {
            for j in i + 1..m {
                let v = dist(&points[i], &points[j]);
                d[i * m + j] = v;
                d[j * m + i] = v;
            }
        }
        Ok(SemiMetric { m, d })
    }

    fn validate_entries(&self) -> Result<()> {
        let m = self.m;
        for i in 0..m {
            if self.get(i, i) != 0.0 {
                return Err(Error::Construction(format!("nonzero diagonal entry at {i}")));
            }
            for j in 0..m {
                let v = self.get(i, j);
                if !(v >= 0.0) || !v.is_finite() {
                    return Err(Error::Construction(format!("distance ({i},{j}) = {v} is not a finite nonnegative number")));
                }
                if v != self.get(j, i) {
                    return Err(Error::Construction(format!("distance matrix is not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    fn validate_triangle(&self) -> Result<()> {
        let m = self.m;
        for i in 0..m {
            for j in i + 1..m {
                let dij = self.get(i, j);
                for k in 0..m {
                    let via = self.get(i, k) + self.get(k, j);
                    if dij > via + TRIANGLE_TOL {
                        return Err(Error::Construction(format!(
                            "triangle inequality fails: d({i},{j}) = {dij} > d({i},{k}) + d({k},{j}) = {via}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.m + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.m..(i + 1) * self.m]
    }

    pub fn diameter(&self) -> f64 {
        self.d.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest nonzero distance, if any pair is separated.
    pub fn min_positive(&self) -> Option<f64> {
        self.d.iter().copied().filter(|&v| v > 0.0).reduce(f64::min)
    }

    /// All distances multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::domain(format!("scale {c} must be positive")));
        }
        Ok(SemiMetric { m: self.m, d: self.d.iter().map(|v| v * c).collect() })
    }
}

/// Norm used to measure differences of family members.
#[derive(Debug, Clone)]
pub enum FamilyNorm {
    Lp(f64),
    Bgl { psi: PsiFunction, grid: PGrid },
}

impl FamilyNorm {
    fn norm(&self, f: &crate::lp::SimpleFunction) -> Result<f64> {
        match self {
            FamilyNorm::Lp(p) => lp_norm(f, *p),
            FamilyNorm::Bgl { psi, grid } => Ok(bgl_norm(f, psi, grid)?.value),
        }
    }

    fn sigma(&self, family: &FunctionFamily) -> Result<f64> {
        match self {
            FamilyNorm::Lp(p) => family.sigma_lp(*p),
            FamilyNorm::Bgl { psi, grid } => family.sigma_bgl(psi, grid),
        }
    }
}

/// Distances between family members together with the `d ≤ 2σ` check.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyMetric {
    pub metric: SemiMetric,
    /// Largest member norm.
    pub sigma: f64,
    pub max_distance: f64,
    pub within_two_sigma: bool,
}

/// `d(t, s) = ||Y(t) − Y(s)||` under the chosen norm.
pub fn family_semimetric(family: &FunctionFamily, norm: &FamilyNorm) -> Result<FamilyMetric> {
    let m = family.len();
    let mut rows = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let diff = family.member(i).sub(family.member(j))?;
            let v = norm.norm(&diff)?;
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    let metric = SemiMetric::new(rows)?;
    let sigma = norm.sigma(family)?;
    let max_distance = metric.diameter();
    Ok(FamilyMetric {
        within_two_sigma: max_distance <= 2.0 * sigma * (1.0 + 1e-12),
        metric,
        sigma,
        max_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{DiscreteMeasureSpace, SimpleFunction};
    use approx::assert_relative_eq;

    #[test]
    fn construction_checks() {
        assert!(SemiMetric::new(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(SemiMetric::new(vec![vec![1.0]]).is_err());
        assert!(SemiMetric::new(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]).is_err());
        let bad = vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]];
        assert!(matches!(SemiMetric::new(bad), Err(Error::Construction(_))));
        let ok = SemiMetric::new(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(ok.diameter(), 0.0);
        assert_eq!(ok.min_positive(), None);
    }

    #[test]
    fn identical_members_give_zero_matrix() {
        let s = DiscreteMeasureSpace::uniform(3, 1.0).unwrap().into_shared();
        let f = SimpleFunction::new(s, vec![1.0, 2.0, 3.0]).unwrap();
        let fam = FunctionFamily::from_members(vec![f.clone(), f.clone(), f]).unwrap();
        let fm = family_semimetric(&fam, &FamilyNorm::Lp(2.0)).unwrap();
        assert_eq!(fm.metric.diameter(), 0.0);
        assert!(fm.within_two_sigma);
    }

    #[test]
    fn disjoint_indicators_are_root_two_apart() {
        let s = DiscreteMeasureSpace::uniform(2, 1.0).unwrap().into_shared();
        let fam = FunctionFamily::from_rows(s, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let fm = family_semimetric(&fam, &FamilyNorm::Lp(2.0)).unwrap();
        assert_relative_eq!(fm.metric.get(0, 1), 2f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn euclidean_points() {
        let m = SemiMetric::from_points(&[vec![0.0], vec![1.0], vec![2.0]]).unwrap();
        assert_eq!(m.get(0, 2), 2.0);
        assert_eq!(m.min_positive(), Some(1.0));
        assert_eq!(m.scaled(0.5).unwrap().get(0, 2), 1.0);
    }

    #[test]
    fn sup_norm_points() {
        let pts = [vec![0.0, 0.0], vec![3.0, 4.0], vec![1.0, -2.0]];
        let m = SemiMetric::from_points_max(&pts).unwrap();
        assert_eq!(m.get(0, 1), 4.0);
        assert_eq!(m.get(1, 2), 6.0);
        assert!(SemiMetric::from_points(&pts).unwrap().get(0, 1) == 5.0);
        assert!(SemiMetric::from_points_max(&[]).is_err());
    }
}
