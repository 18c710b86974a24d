use serde::Serialize;

use crate::error::{Error, Result};

/// Largest accepted `max/min` ratio of the fitted constant over the q range.
pub const SERIES_SPREAD_LIMIT: f64 = 2.0;
const MAX_TERMS: usize = 10_000_000;

/// `S_β(q) = Σ_{k≥1} q^k k^β` against the matching growth law in `1 − q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesBoundCase {
    pub beta: f64,
    pub q: f64,
    pub s_value: f64,
    /// Growth law without its constant: `(1−q)^{−1−β}` for β > −1,
    /// `|ln(1−q)|` for β = −1 and `1` for β < −1.
    pub rhs_value: f64,
    /// `s_value / rhs_value`.
    pub ratio: f64,
    /// The constant the inequality is checked with.
    pub constant_used: f64,
    pub terms: usize,
}

fn growth_law(beta: f64, q: f64) -> f64 {
    if beta > -1.0 {
        (1.0 - q).powf(-1.0 - beta)
    } else if beta == -1.0 {
        (-(1.0 - q).ln()).abs()
    } else {
        1.0
    }
}

/// Sums the series until a bound on the remaining tail drops below `tol`.
///
/// For β ≤ 0 consecutive terms shrink by at least q, so the tail after a term
/// is at most `next/(1−q)`. For β > 0 the term ratio `q((k+1)/k)^β` decreases
/// in k, and once it is below one the tail is at most `next/(1−ratio)`.
pub fn series_s_beta(q: f64, beta: f64, tol: f64) -> Result<SeriesBoundCase> {
    if !(0.5..1.0).contains(&q) {
        return Err(Error::domain(format!("q = {q} must lie in [1/2, 1)")));
    }
    if !(tol > 0.0) || !beta.is_finite() {
        return Err(Error::domain("need tol > 0 and finite beta"));
    }
    let ln_q = q.ln();
    let term = |k: usize| (k as f64 * ln_q + beta * (k as f64).ln()).exp();
    let mut terms = Vec::new();
    let mut k = 1;
    loop {
        terms.push(term(k));
        let next = term(k + 1);
        let ratio = if beta <= 0.0 { q } else { q * ((k + 2) as f64 / (k + 1) as f64).powf(beta) };
        if ratio < 1.0 && next / (1.0 - ratio) < tol {
            break;
        }
        k += 1;
        if k > MAX_TERMS {
            return Err(Error::Estimation(format!("series did not reach tolerance {tol} in {MAX_TERMS} terms")));
        }
    }
    let s_value = crate::sup::compensated_sum(terms);
    let rhs_value = growth_law(beta, q);
    let ratio = s_value / rhs_value;
    Ok(SeriesBoundCase { beta, q, s_value, rhs_value, ratio, constant_used: ratio, terms: k })
}

/// One β over a range of q with a single fitted constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesSweep {
    pub beta: f64,
    pub cases: Vec<SeriesBoundCase>,
    /// Largest observed ratio; every case is checked against it.
    pub constant: f64,
    pub min_ratio: f64,
    pub spread: f64,
    pub holds: bool,
    /// Spread below [`SERIES_SPREAD_LIMIT`].
    pub stable: bool,
    /// The ratio never decreases as q grows, so the fitted constant is the
    /// value at the largest q tried.
    pub nondecreasing_in_q: bool,
}

pub fn series_bound_sweep(beta: f64, qs: &[f64], tol: f64) -> Result<SeriesSweep> {
    if qs.is_empty() {
        return Err(Error::domain("empty q range"));
    }
    let mut cases = qs.iter().map(|&q| series_s_beta(q, beta, tol)).collect::<Result<Vec<_>>>()?;
    let constant = cases.iter().map(|c| c.ratio).fold(f64::NEG_INFINITY, f64::max);
    let min_ratio = cases.iter().map(|c| c.ratio).fold(f64::INFINITY, f64::min);
    for c in &mut cases {
        c.constant_used = constant;
    }
    let holds = cases.iter().all(|c| c.s_value <= c.constant_used * c.rhs_value * (1.0 + 1e-15));
    let mut sorted: Vec<(f64, f64)> = cases.iter().map(|c| (c.q, c.ratio)).collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let nondecreasing_in_q = sorted.windows(2).all(|w| w[1].1 >= w[0].1 * (1.0 - 1e-12));
    let spread = constant / min_ratio;
    Ok(SeriesSweep {
        beta,
        cases,
        constant,
        min_ratio,
        spread,
        holds,
        stable: spread < SERIES_SPREAD_LIMIT,
        nondecreasing_in_q,
    })
}
