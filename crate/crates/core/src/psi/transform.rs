//! Derived generating functions.

use super::{PsiFunction, Support};
use crate::error::{Error, Result};

/// ζ(p) = ψ(p)·ν(p) on the intersection of the supports.
pub fn product_psi(psi: &PsiFunction, nu: &PsiFunction) -> Result<PsiFunction> {
    let support = psi.support().intersect(&nu.support())?;
    let (f, g) = (psi.raw(), nu.raw());
    Ok(PsiFunction::from_fn(
        format!("{}*{}", psi.label(), nu.label()),
        support,
        move |p| f(p) * g(p),
    ))
}

/// ψ^(κ)(p) = ψ(p)·p/(p−κ) for `p > max(κ, 1)`.
pub fn psi_kappa(psi: &PsiFunction, kappa: f64) -> Result<PsiFunction> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::domain(format!("kappa = {kappa} must be positive")));
    }
    let support = psi.support();
    if kappa >= support.hi {
        return Err(Error::domain(format!("kappa = {kappa} is not below the support end {}", support.hi)));
    }
    let support = support.restrict_above(kappa)?;
    let f = psi.raw();
    Ok(PsiFunction::from_fn(
        format!("kappa({kappa})[{}]", psi.label()),
        support,
        move |p| f(p) * p / (p - kappa),
    ))
}

/// The logarithmic-correction family for covering numbers of the form
/// `C ε^{−κ1} |ln ε|^{−κ2}`:
///
/// * `κ2 < κ1`: `[p/(p−κ1)]^{1−κ2/κ1} ψ(p)`
/// * `κ2 = κ1`: `max(ln(p−κ1)/ln p, 1) ψ(p)`
/// * `κ2 > κ1`: ψ unchanged.
pub fn psi_kappa12(psi: &PsiFunction, kappa1: f64, kappa2: f64) -> Result<PsiFunction> {
    if !(kappa1 > 0.0) || !kappa1.is_finite() || !kappa2.is_finite() {
        return Err(Error::domain(format!("need kappa1 > 0 and finite kappa2, got ({kappa1}, {kappa2})")));
    }
    if kappa2 > kappa1 {
        return Ok(psi.clone());
    }
    let support: Support = psi.support().restrict_above(kappa1)?;
    let f = psi.raw();
    let label = format!("kappa12({kappa1},{kappa2})[{}]", psi.label());
    if kappa2 < kappa1 {
        let exponent = 1.0 - kappa2 / kappa1;
        Ok(PsiFunction::from_fn(label, support, move |p| {
            (p / (p - kappa1)).powf(exponent) * f(p)
        }))
    } else {
        Ok(PsiFunction::from_fn(label, support, move |p| {
            let z = ((p - kappa1).ln() / p.ln()).abs();
            z.max(1.0) * f(p)
        }))
    }
}

/// ψ₁(p) = p ψ(p)/(p−1), the generating function after Doob's inequality.
pub fn psi_doob(psi: &PsiFunction) -> Result<PsiFunction> {
    let support = psi.support().restrict_above(1.0)?;
    let f = psi.raw();
    Ok(PsiFunction::from_fn(format!("doob[{}]", psi.label()), support, move |p| {
        p * f(p) / (p - 1.0)
    }))
}

/// ψ₂(p) = p⁴ ψ(p)/(p−1)², the generating function for the maximal Fourier
/// partial sum.
pub fn psi_fourier(psi: &PsiFunction) -> Result<PsiFunction> {
    let support = psi.support().restrict_above(1.0)?;
    let f = psi.raw();
    Ok(PsiFunction::from_fn(format!("fourier[{}]", psi.label()), support, move |p| {
        p.powi(4) * f(p) / ((p - 1.0) * (p - 1.0))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::PGrid;
    use approx::assert_relative_eq;
    use std::f64::consts::E;

    fn identity() -> PsiFunction {
        PsiFunction::power(1.0).unwrap()
    }

    #[test]
    fn products() {
        let one = PsiFunction::constant();
        assert_eq!(product_psi(&one, &one).unwrap().eval(7.0).unwrap(), 1.0);
        let sq = product_psi(&identity(), &identity()).unwrap();
        assert_eq!(sq.eval(3.0).unwrap(), 9.0);
        let z = product_psi(&PsiFunction::doob_factor(), &identity()).unwrap();
        assert_eq!(z.eval(2.0).unwrap(), 4.0);
        let a = PsiFunction::table(&[(1.5, 1.0), (2.0, 1.0)]).unwrap();
        let b = PsiFunction::table(&[(3.0, 1.0), (4.0, 1.0)]).unwrap();
        assert!(matches!(product_psi(&a, &b), Err(Error::Domain(_))));
    }

    #[test]
    fn kappa() {
        let k = psi_kappa(&PsiFunction::constant(), 1.0).unwrap();
        assert_eq!(k.eval(2.0).unwrap(), 2.0);
        let k = psi_kappa(&identity(), 0.5).unwrap();
        assert_relative_eq!(k.eval(2.0).unwrap(), 8.0 / 3.0, max_relative = 1e-15);
        let tiny = psi_kappa(&identity(), 1e-12).unwrap();
        for p in [1.5, 2.0, 10.0] {
            assert_relative_eq!(tiny.eval(p).unwrap(), p, max_relative = 1e-11);
        }
        let bounded = PsiFunction::table(&[(1.5, 1.0), (3.0, 1.0)]).unwrap();
        assert!(psi_kappa(&bounded, 3.0).is_err());
    }

    #[test]
    fn kappa12_cases() {
        let one = PsiFunction::constant();
        let same = psi_kappa12(&one, 1.0, 2.0).unwrap();
        assert_eq!(same.label(), "constant");
        let k = psi_kappa12(&one, 2.0, 1.0).unwrap();
        assert_relative_eq!(k.eval(4.0).unwrap(), 2f64.sqrt(), max_relative = 1e-15);
        let k = psi_kappa12(&one, 1.0, 1.0).unwrap();
        assert_eq!(k.eval(E + 1.0).unwrap(), 1.0);
        let bounded = PsiFunction::table(&[(1.5, 1.0), (3.0, 1.0)]).unwrap();
        assert!(psi_kappa12(&bounded, 3.0, 1.0).is_err());
    }

    #[test]
    fn doob_and_fourier() {
        let one = PsiFunction::constant();
        let d = psi_doob(&one).unwrap();
        assert_eq!(d.eval(2.0).unwrap(), 2.0);
        assert_relative_eq!(d.eval(1e9).unwrap(), 1.0, max_relative = 1e-8);
        assert_eq!(psi_doob(&identity()).unwrap().eval(3.0).unwrap(), 4.5);
        let f = psi_fourier(&one).unwrap();
        assert_eq!(f.eval(2.0).unwrap(), 16.0);
        assert_eq!(f.eval(3.0).unwrap(), 20.25);
        assert_eq!(psi_fourier(&PsiFunction::doob_factor()).unwrap().eval(2.0).unwrap(), 32.0);
        // power support [1,∞) loses its closed end
        assert!(psi_doob(&identity()).unwrap().eval(1.0).is_err());
    }

    #[test]
    fn doob_ratio_decreases_to_one() {
        let psi = identity();
        let d = psi_doob(&psi).unwrap();
        let grid = PGrid::log_spaced(1.1, 500.0, 64).unwrap();
        let ratios: Vec<f64> = grid
            .points()
            .iter()
            .map(|&p| d.eval(p).unwrap() / psi.eval(p).unwrap())
            .collect();
        assert!(ratios.windows(2).all(|w| w[1] < w[0]));
        assert!(ratios.iter().all(|&r| r > 1.0));
    }
}
