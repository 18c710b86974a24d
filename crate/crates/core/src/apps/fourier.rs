use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{bgl_norm, lp_norm, DiscreteMeasureSpace, SimpleFunction};
use crate::psi::{psi_fourier, PGrid, PsiFunction};

/// Allowed growth of `ρ` at the largest `M_max` over the earlier maximum.
pub const SATURATION_FACTOR: f64 = 1.05;

/// Samples of `f` at `x_j = −π + 2πj/K`, each carrying Lebesgue weight `2π/K`.
#[derive(Debug, Clone)]
pub struct FourierSample {
    x: Vec<f64>,
    f: SimpleFunction,
}

impl FourierSample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let k = values.len();
        if k < 4 || !k.is_multiple_of(2) {
            return Err(Error::domain(format!("need an even number of samples >= 4, got {k}")));
        }
        let x = (0..k).map(|j| -PI + 2.0 * PI * j as f64 / k as f64).collect();
        let space = DiscreteMeasureSpace::uniform(k, 2.0 * PI / k as f64)?.into_shared();
        Ok(FourierSample { x, f: SimpleFunction::new(space, values)? })
    }

    pub fn from_fn(k: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..k).map(|j| f(-PI + 2.0 * PI * j as f64 / k as f64)).collect();
        Self::new(values)
    }

    /// `sign(x)`, with the midpoint value 0 at the jumps `x = 0` and `x = −π`.
    pub fn square_wave(k: usize) -> Result<Self> {
        Self::from_fn(k, |x| if x == 0.0 || x == -PI { 0.0 } else { x.signum() })
    }

    pub fn cosine(k: usize) -> Result<Self> {
        Self::from_fn(k, f64::cos)
    }

    pub fn constant(k: usize, c: f64) -> Result<Self> {
        Self::from_fn(k, |_| c)
    }

    /// Real trigonometric polynomial of the given degree with coefficients
    /// uniform on `[−1, 1]`.
    pub fn random_trig_poly(k: usize, degree: usize, rng: &mut impl Rng) -> Result<Self> {
        let a0: f64 = rng.random_range(-1.0..=1.0);
        let coeffs: Vec<(f64, f64)> = (0..degree)
            .map(|_| (rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
            .collect();
        Self::from_fn(k, |x| {
            a0 + coeffs
                .iter()
                .enumerate()
                .map(|(i, (a, b))| {
                    let n = (i + 1) as f64;
                    a * (n * x).cos() + b * (n * x).sin()
                })
                .sum::<f64>()
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.x
    }

    pub fn function(&self) -> &SimpleFunction {
        &self.f
    }

    pub fn space(&self) -> &Arc<DiscreteMeasureSpace> {
        self.f.space()
    }

    fn check_degree(&self, m: usize) -> Result<()> {
        if 4 * m > self.len() {
            return Err(Error::domain(format!(
                "degree {m} aliases on {} samples; need at least {}",
                self.len(),
                4 * m
            )));
        }
        Ok(())
    }
}

/// `c(n) = ∫ e^{inx} f(x) dx` for `n = −M..=M` by the periodic trapezoid rule.
pub fn fourier_coefficients(sample: &FourierSample, m: usize) -> Result<Vec<Complex64>> {
    sample.check_degree(m)?;
    let w = 2.0 * PI / sample.len() as f64;
    let m = m as i64;
    Ok((-m..=m)
        .map(|n| {
            sample
                .x
                .iter()
                .zip(sample.f.values())
                .map(|(&x, &v)| Complex64::from_polar(v * w, n as f64 * x))
                .sum()
        })
        .collect())
}

/// Partial sums `s_M` for `M = 0..=m_max` evaluated on the sample points.
fn partial_sums(sample: &FourierSample, m_max: usize) -> Result<Vec<Vec<f64>>> {
    let c = fourier_coefficients(sample, m_max)?;
    let at = |n: i64| c[(n + m_max as i64) as usize];
    let mut acc: Vec<Complex64> = vec![at(0) / (2.0 * PI); sample.len()];
    let mut out = vec![acc.iter().map(|z| z.re).collect()];
    for m in 1..=m_max as i64 {
        for (s, &x) in acc.iter_mut().zip(&sample.x) {
            let e = Complex64::from_polar(1.0, -(m as f64) * x);
            *s += (at(m) * e + at(-m) * e.conj()) / (2.0 * PI);
        }
        out.push(acc.iter().map(|z| z.re).collect());
    }
    Ok(out)
}

/// `s*[f] = max_{1≤M≤M_max} |s_M[f]|` on the sample points.
pub fn maximal_partial_sum(sample: &FourierSample, m_max: usize) -> Result<SimpleFunction> {
    if m_max == 0 {
        return Err(Error::domain("M_max must be at least 1"));
    }
    let sums = partial_sums(sample, m_max)?;
    let mut star = vec![0.0_f64; sample.len()];
    for s in &sums[1..] {
        for (o, v) in star.iter_mut().zip(s) {
            *o = o.max(v.abs());
        }
    }
    SimpleFunction::new(Arc::clone(sample.space()), star)
}

/// `s_M[f]` on the sample points.
pub fn partial_sum(sample: &FourierSample, m: usize) -> Result<SimpleFunction> {
    let sums = partial_sums(sample, m)?;
    SimpleFunction::new(Arc::clone(sample.space()), sums[m].clone())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxRow {
    pub m_max: usize,
    /// `ρ(p, M_max)` on the p-grid.
    pub rho: Vec<f64>,
    pub max_rho: f64,
    /// `||s*||_{G(ψ₂)} / ||f||_{G(ψ)}`.
    pub norm_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem3Report {
    pub p_grid: Vec<f64>,
    pub rows: Vec<MaxRow>,
    /// Largest `ρ(p, last)/max_{earlier} ρ(p, ·)` over the grid.
    pub growth: f64,
    pub saturated: bool,
}

/// `ρ(p, M) = |s*_{≤M}|_p / (p⁴ |f|_p/(p−1)²)` for each `M` in the list.
pub fn theorem3_check(
    sample: &FourierSample,
    psi: &PsiFunction,
    grid: &PGrid,
    m_max_list: &[usize],
) -> Result<Theorem3Report> {
    if m_max_list.is_empty() {
        return Err(Error::domain("empty M_max list"));
    }
    let psi2 = psi_fourier(psi)?;
    psi2.check_grid(grid)?;
    let f = sample.function();
    let f_norm = bgl_norm(f, psi, grid)?.value;
    let f_moments = grid.points().iter().map(|&p| lp_norm(f, p)).collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(m_max_list.len());
    for &m in m_max_list {
        let star = maximal_partial_sum(sample, m)?;
        let rho = grid
            .points()
            .iter()
            .zip(&f_moments)
            .map(|(&p, &fp)| Ok(lp_norm(&star, p)? * (p - 1.0).powi(2) / (p.powi(4) * fp)))
            .collect::<Result<Vec<f64>>>()?;
        let max_rho = rho.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let norm_ratio = bgl_norm(&star, &psi2, grid)?.value / f_norm;
        rows.push(MaxRow { m_max: m, rho, max_rho, norm_ratio });
    }
    let mut growth = 0.0_f64;
    if rows.len() > 1 {
        let (last, earlier) = rows.split_last().expect("nonempty");
        for i in 0..grid.len() {
            let prev = earlier.iter().map(|r| r.rho[i]).fold(f64::NEG_INFINITY, f64::max);
            growth = growth.max(last.rho[i] / prev);
        }
    } else {
        growth = 1.0;
    }
    Ok(Theorem3Report { p_grid: grid.points().to_vec(), rows, growth, saturated: growth <= SATURATION_FACTOR })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn coefficient_examples() {
        let one = FourierSample::constant(64, 1.0).unwrap();
        let c = fourier_coefficients(&one, 8).unwrap();
        assert_relative_eq!(c[8].re, 2.0 * PI, max_relative = 1e-12);
        for (i, z) in c.iter().enumerate().filter(|(i, _)| *i != 8) {
            assert!(z.norm() < 1e-12, "c({}) = {z}", i as i64 - 8);
        }
        let cos = FourierSample::cosine(64).unwrap();
        let c = fourier_coefficients(&cos, 8).unwrap();
        assert_relative_eq!(c[7].re, PI, max_relative = 1e-12);
        assert_relative_eq!(c[9].re, PI, max_relative = 1e-12);
        assert!(fourier_coefficients(&cos, 17).is_err());
        assert!(FourierSample::constant(6, 1.0).is_ok());
        assert!(FourierSample::new(vec![0.0; 5]).is_err());
    }

    #[test]
    fn partial_sums_of_cosine() {
        let cos = FourierSample::cosine(64).unwrap();
        let star = maximal_partial_sum(&cos, 4).unwrap();
        for (s, v) in star.values().iter().zip(cos.function().values()) {
            assert!((s - v.abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn cosine_rho_is_closed_form() {
        let cos = FourierSample::cosine(128).unwrap();
        let psi = PsiFunction::constant();
        let grid = PGrid::log_spaced(1.1, 32.0, 12).unwrap();
        let r = theorem3_check(&cos, &psi, &grid, &[4, 8]).unwrap();
        for (p, rho) in grid.points().iter().zip(&r.rows[1].rho) {
            assert_relative_eq!(*rho, (p - 1.0).powi(2) / p.powi(4), max_relative = 1e-10);
        }
        assert!(r.saturated);
    }
}
