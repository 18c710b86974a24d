use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{bgl_norm, lp_norm, DiscreteMeasureSpace, SimpleFunction};
use crate::psi::{psi_doob, PGrid, PsiFunction};

/// Longest horizon enumerated path by path.
pub const MAX_ENUMERATED_HORIZON: usize = 20;
/// Largest number of enumerated paths.
pub const MAX_ENUMERATED_PATHS: usize = 1 << 22;
/// Absolute tolerance for the conditional-mean check.
pub const MARTINGALE_TOL: f64 = 1e-12;
/// Relative rounding slack for the proof-chain comparisons.
pub const CHAIN_TOL: f64 = 1e-12;

/// Law of one increment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum IncrementLaw {
    /// ±1 with probability 1/2 each.
    PlusMinusOne,
    /// Uniform on {−1, 0, 1}.
    UniformThree,
    /// `(value, probability)` pairs with mean zero.
    Table(Vec<(f64, f64)>),
}

impl IncrementLaw {
    pub fn atoms(&self) -> Result<Vec<(f64, f64)>> {
        let atoms = match self {
            IncrementLaw::PlusMinusOne => vec![(-1.0, 0.5), (1.0, 0.5)],
            IncrementLaw::UniformThree => vec![(-1.0, 1.0 / 3.0), (0.0, 1.0 / 3.0), (1.0, 1.0 / 3.0)],
            IncrementLaw::Table(t) => t.clone(),
        };
        if atoms.is_empty() || atoms.iter().any(|&(v, w)| !v.is_finite() || !(w > 0.0)) {
            return Err(Error::domain("increment law needs finite values with positive probabilities"));
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        let mean: f64 = atoms.iter().map(|a| a.0 * a.1).sum();
        if (total - 1.0).abs() > 1e-12 || mean.abs() > 1e-12 {
            return Err(Error::domain(format!("increment law has mass {total} and mean {mean}; need 1 and 0")));
        }
        Ok(atoms)
    }
}

/// Partial sums `S(0) = 0, S(1), …, S(horizon)` on a path space.
#[derive(Debug, Clone)]
pub struct MartingaleEnsemble {
    space: Arc<DiscreteMeasureSpace>,
    /// `s[n]` is `S(n)`; `s[0]` vanishes.
    s: Vec<SimpleFunction>,
    sigma: Vec<f64>,
    gamma: f64,
    enumerated: bool,
    branching: usize,
    law: IncrementLaw,
}

/// How to realize the path space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathSampling {
    Enumerate,
    MonteCarlo { paths: usize, seed: u64 },
}

pub fn build_walk_ensemble(horizon: usize, law: IncrementLaw, sampling: PathSampling) -> Result<MartingaleEnsemble> {
    if horizon == 0 {
        return Err(Error::domain("horizon must be at least 1"));
    }
    let atoms = law.atoms()?;
    let (weights, increments): (Vec<f64>, Vec<Vec<f64>>) = match sampling {
        PathSampling::Enumerate => {
            if horizon > MAX_ENUMERATED_HORIZON {
                return Err(Error::Size(format!(
                    "horizon {horizon} exceeds {MAX_ENUMERATED_HORIZON} for enumeration; use Monte Carlo"
                )));
            }
            let b = atoms.len();
            let paths = (b as f64).powi(horizon as i32);
            if paths > MAX_ENUMERATED_PATHS as f64 {
                return Err(Error::Size(format!("{paths} paths exceed {MAX_ENUMERATED_PATHS}; use Monte Carlo")));
            }
            enumerate_paths(&atoms, horizon, paths as usize)
        }
        PathSampling::MonteCarlo { paths, seed } => {
            if paths == 0 {
                return Err(Error::domain("Monte Carlo needs at least one path"));
            }
            let mut rng = crate::rng::stream(seed, 0);
            let cdf: Vec<f64> = atoms
                .iter()
                .scan(0.0, |acc, a| {
                    *acc += a.1;
                    Some(*acc)
                })
                .collect();
            let incs = (0..paths)
                .map(|_| {
                    (0..horizon)
                        .map(|_| {
                            let u: f64 = rng.random();
                            let i = cdf.iter().position(|&c| u < c).unwrap_or(atoms.len() - 1);
                            atoms[i].0
                        })
                        .collect()
                })
                .collect();
            (vec![1.0 / paths as f64; paths], incs)
        }
    };
    let space = DiscreteMeasureSpace::from_weights(weights)?.into_shared();
    let n_paths = space.len();
    let mut s = Vec::with_capacity(horizon + 1);
    let mut current = vec![0.0; n_paths];
    s.push(SimpleFunction::new(Arc::clone(&space), current.clone())?);
    for n in 0..horizon {
        for (c, inc) in current.iter_mut().zip(&increments) {
            *c += inc[n];
        }
        s.push(SimpleFunction::new(Arc::clone(&space), current.clone())?);
    }
    let sigma = s
        .iter()
        .map(|sn| {
            let mean = sn.integral() / space.total_mass();
            let second = sn.map(|v| v * v).map(|f| f.integral() / space.total_mass());
            second.map(|m2| (m2 - mean * mean).max(0.0).sqrt())
        })
        .collect::<Result<Vec<_>>>()?;
    if sigma[1..].iter().any(|&v| !(v > 0.0)) {
        return Err(Error::Construction("sigma(n) vanishes for some n >= 1".into()));
    }
    let enumerated = matches!(sampling, PathSampling::Enumerate);
    let ens = MartingaleEnsemble { space, s, sigma, gamma: 0.5, enumerated, branching: atoms.len(), law };
    if enumerated {
        let err = ens.martingale_defect();
        if err > MARTINGALE_TOL {
            return Err(Error::Construction(format!("conditional means miss S(n) by {err}")));
        }
    }
    Ok(ens)
}

/// Paths in lexicographic order, first increment most significant.
fn enumerate_paths(atoms: &[(f64, f64)], horizon: usize, paths: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let b = atoms.len();
    let mut weights = Vec::with_capacity(paths);
    let mut incs = Vec::with_capacity(paths);
    for idx in 0..paths {
        let mut digits = vec![0usize; horizon];
        let mut rest = idx;
        for d in digits.iter_mut().rev() {
            *d = rest % b;
            rest /= b;
        }
        weights.push(digits.iter().map(|&d| atoms[d].1).product());
        incs.push(digits.iter().map(|&d| atoms[d].0).collect());
    }
    (weights, incs)
}

impl MartingaleEnsemble {
    pub fn horizon(&self) -> usize {
        self.s.len() - 1
    }

    pub fn space(&self) -> &Arc<DiscreteMeasureSpace> {
        &self.space
    }

    pub fn law(&self) -> &IncrementLaw {
        &self.law
    }

    pub fn is_enumerated(&self) -> bool {
        self.enumerated
    }

    /// `S(n)` for `0 ≤ n ≤ horizon`.
    pub fn s(&self, n: usize) -> &SimpleFunction {
        &self.s[n]
    }

    /// `σ(n) = Var(S(n))^{1/2}`.
    pub fn sigma(&self, n: usize) -> f64 {
        self.sigma[n]
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::domain(format!("gamma = {gamma} must be positive")));
        }
        self.gamma = gamma;
        Ok(self)
    }

    /// Slowly varying factor `L(n) = σ(n)/n^γ`.
    pub fn l(&self, n: usize) -> f64 {
        self.sigma[n] / (n as f64).powf(self.gamma)
    }

    /// `C₂ = max L(2n)/L(n)` over `2n ≤ horizon`; 1 if no such n.
    pub fn c2(&self) -> f64 {
        (1..=self.horizon() / 2).map(|n| self.l(2 * n) / self.l(n)).fold(1.0, f64::max)
    }

    /// Largest gap between `S(n)` and the conditional mean of `S(n+1)` given
    /// the first `n` increments, computed as the conditional mean increment. Only meaningful on enumerated spaces, where
    /// paths sharing a prefix form contiguous blocks.
    pub fn martingale_defect(&self) -> f64 {
        let paths = self.space.len();
        let horizon = self.horizon();
        let b = self.branching;
        let w = self.space.weights();
        let mut worst = 0.0_f64;
        for n in 0..horizon {
            let block = b.pow((horizon - n) as u32);
            let (cur, next) = (self.s[n].values(), self.s[n + 1].values());
            for start in (0..paths).step_by(block) {
                let r = start..start + block;
                let mass: f64 = w[r.clone()].iter().sum();
                let drift: f64 = w[r.clone()]
                    .iter()
                    .zip(&next[r.clone()])
                    .zip(&cur[r])
                    .map(|((a, b), c)| a * (b - c))
                    .sum::<f64>()
                    / mass;
                worst = worst.max(drift.abs());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoobReport {
    pub p: f64,
    pub n: usize,
    /// `|max_{n≤N} |S(n)||_p`.
    pub maximal_norm: f64,
    /// `max_{n≤N} |S(n)|_p`.
    pub max_moment: f64,
    pub ratio: f64,
    pub limit: f64,
    pub pass: bool,
}

pub fn doob_check(ens: &MartingaleEnsemble, p: f64, n: usize) -> Result<DoobReport> {
    if !(p > 1.0) {
        return Err(Error::domain(format!("Doob's inequality needs p > 1, got {p}")));
    }
    if n == 0 || n > ens.horizon() {
        return Err(Error::domain(format!("N = {n} must lie in 1..={}", ens.horizon())));
    }
    let mut running = ens.s(1).abs();
    let mut max_moment = lp_norm(ens.s(1), p)?;
    for k in 2..=n {
        running = running.pointwise_max(&ens.s(k).abs())?;
        max_moment = max_moment.max(lp_norm(ens.s(k), p)?);
    }
    let maximal_norm = lp_norm(&running, p)?;
    let limit = p / (p - 1.0);
    let ratio = maximal_norm / max_moment;
    Ok(DoobReport { p, n, maximal_norm, max_moment, ratio, limit, pass: maximal_norm <= limit * max_moment })
}

/// Deterministic norming `v(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum NormingFunction {
    /// `v(n) = n`.
    Identity,
    /// `v(n) = ln max(n, e)`.
    Log,
    /// `v(n) = ln n (ln ln n)^{1+Δ}` for `n ≥ 16`, held at its value at 16 below.
    LogLogPower { delta: f64 },
}

impl NormingFunction {
    pub fn eval(&self, n: f64) -> f64 {
        match *self {
            NormingFunction::Identity => n,
            NormingFunction::Log => n.max(std::f64::consts::E).ln(),
            NormingFunction::LogLogPower { delta } => {
                let n = n.max(16.0);
                n.ln() * n.ln().ln().powf(1.0 + delta)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            NormingFunction::Identity => "n".into(),
            NormingFunction::Log => "log n".into(),
            NormingFunction::LogLogPower { delta } => format!("log n (log log n)^(1+{delta})"),
        }
    }
}

/// Numerical look at `Σ_n 1/v(2^n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummabilityReport {
    pub terms: usize,
    pub partial_sum: f64,
    pub last_term: f64,
    /// `−d ln a_n / d ln n` between `n = K/2` and `n = K`.
    pub decay_exponent: f64,
    pub summable: bool,
}

/// Decay exponents at or below this are treated as divergent.
pub const SUMMABLE_EXPONENT: f64 = 1.1;

pub fn summability_check(v: &NormingFunction, k_max: usize) -> Result<SummabilityReport> {
    if k_max < 4 {
        return Err(Error::domain("need at least 4 terms to judge summability"));
    }
    let a = |n: usize| 1.0 / v.eval(2f64.powi(n as i32));
    let partial_sum: f64 = (1..=k_max).map(a).sum();
    let half = k_max / 2;
    let decay_exponent = -(a(k_max).ln() - a(half).ln()) / ((k_max as f64).ln() - (half as f64).ln());
    Ok(SummabilityReport {
        terms: k_max,
        partial_sum,
        last_term: a(k_max),
        decay_exponent,
        summable: decay_exponent > SUMMABLE_EXPONENT,
    })
}

/// Worst ratios `lhs/rhs` over the p-grid for one dyadic block.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockCheck {
    pub k: usize,
    pub a: usize,
    pub b: usize,
    /// `|τ(k)|_p` against `|max_{m∈Q} |S(m)||_p / (v(A)σ(A))`.
    pub norming_step: f64,
    /// Doob on the block.
    pub doob_step: f64,
    /// `|S(B)|_p` against `ψ(p) σ(B) K`.
    pub psi_step: f64,
    /// `σ(B)/σ(A)` against `2^γ C₂`.
    pub growth_step: f64,
    /// `σ(B)/(v(A)σ(A))`, the block's share of the final constant.
    pub block_factor: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem2Report {
    pub norming: String,
    pub horizon: usize,
    /// `K = sup_n ||S(n)/σ(n)||_{G(ψ)}`.
    pub k_factor: f64,
    pub c2: f64,
    /// `||max_n |S(n)|/(v(n)σ(n))||_{G(ψ₁)}`.
    pub tau_norm: f64,
    /// The same for the signed `sup_n S(n)/(v(n)σ(n))`.
    pub tau_signed_norm: f64,
    /// `K Σ_k σ(B)/(v(A)σ(A))`.
    pub chain_bound: f64,
    pub ratio: f64,
    pub blocks: Vec<BlockCheck>,
    pub summability: SummabilityReport,
    pub chain_holds: bool,
    pub warnings: Vec<String>,
}

fn within(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + CHAIN_TOL)
}

/// Checks each inequality of the dyadic-block argument on the ensemble.
pub fn theorem2_bound(
    ens: &MartingaleEnsemble,
    psi: &PsiFunction,
    v: &NormingFunction,
    grid: &PGrid,
    summability_terms: usize,
) -> Result<Theorem2Report> {
    let psi1 = psi_doob(psi)?;
    psi1.check_grid(grid)?;
    let horizon = ens.horizon();
    let space = Arc::clone(ens.space());
    let vn = |n: usize| v.eval(n as f64);

    let mut k_factor = 0.0_f64;
    for n in 1..=horizon {
        let z = ens.s(n).scale(1.0 / ens.sigma(n))?;
        k_factor = k_factor.max(bgl_norm(&z, psi, grid)?.value);
    }
    let normalized = |n: usize, abs: bool| -> Vec<f64> {
        let d = vn(n) * ens.sigma(n);
        ens.s(n).values().iter().map(|&x| if abs { x.abs() / d } else { x / d }).collect()
    };
    let fold_max = |range: std::ops::RangeInclusive<usize>, abs: bool| -> Result<SimpleFunction> {
        let mut out = vec![f64::NEG_INFINITY; space.len()];
        for n in range {
            for (o, x) in out.iter_mut().zip(normalized(n, abs)) {
                *o = o.max(x);
            }
        }
        SimpleFunction::new(Arc::clone(&space), out)
    };
    let tau = fold_max(1..=horizon, true)?;
    let tau_signed = fold_max(1..=horizon, false)?;
    let tau_norm = bgl_norm(&tau, &psi1, grid)?.value;
    let tau_signed_norm = bgl_norm(&tau_signed, &psi1, grid)?.value;

    let c2 = ens.c2();
    let mut blocks = Vec::new();
    let mut k = 1;
    while 1usize << (k - 1) <= horizon {
        let a = 1usize << (k - 1);
        let b = ((1usize << k) - 1).min(horizon);
        let tau_k = fold_max(a..=b, true)?;
        let mut block_max = ens.s(a).abs();
        for m in a + 1..=b {
            block_max = block_max.pointwise_max(&ens.s(m).abs())?;
        }
        let denom = vn(a) * ens.sigma(a);
        let (mut norming_step, mut doob_step, mut psi_step) = (0.0_f64, 0.0_f64, 0.0_f64);
        for &p in grid.points() {
            let mid1 = lp_norm(&block_max, p)? / denom;
            norming_step = norming_step.max(lp_norm(&tau_k, p)? / mid1);
            let sb = lp_norm(ens.s(b), p)?;
            doob_step = doob_step.max(mid1 / (p / (p - 1.0) * sb / denom));
            psi_step = psi_step.max(sb / (psi.eval(p)? * ens.sigma(b) * k_factor));
        }
        let growth_step = ens.sigma(b) / ens.sigma(a) / (2f64.powf(ens.gamma()) * c2);
        let holds = [norming_step, doob_step, psi_step, growth_step].iter().all(|&r| within(r, 1.0));
        blocks.push(BlockCheck {
            k,
            a,
            b,
            norming_step,
            doob_step,
            psi_step,
            growth_step,
            block_factor: ens.sigma(b) / denom,
            holds,
        });
        k += 1;
    }
    let chain_bound = k_factor * blocks.iter().map(|b| b.block_factor).sum::<f64>();
    let summability = summability_check(v, summability_terms)?;
    let mut warnings = Vec::new();
    if !summability.summable {
        warnings.push(format!(
            "sum of 1/v(2^n) looks divergent for v = {} (decay exponent {:.4})",
            v.label(),
            summability.decay_exponent
        ));
    }
    if !ens.is_enumerated() {
        warnings.push("Monte Carlo path space: inequalities hold for the empirical measure only".into());
    }
    let chain_holds = blocks.iter().all(|b| b.holds) && within(tau_norm, chain_bound);
    Ok(Theorem2Report {
        norming: v.label(),
        horizon,
        k_factor,
        c2,
        tau_norm,
        tau_signed_norm,
        chain_bound,
        ratio: tau_norm / chain_bound,
        blocks,
        summability,
        chain_holds,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn walk(h: usize) -> MartingaleEnsemble {
        build_walk_ensemble(h, IncrementLaw::PlusMinusOne, PathSampling::Enumerate).unwrap()
    }

    #[test]
    fn small_walks() {
        let e = walk(1);
        assert_eq!(e.space().len(), 2);
        assert_eq!(e.s(1).values(), &[-1.0, 1.0]);
        assert_eq!(e.sigma(1), 1.0);
        let e = walk(4);
        for n in 1..=4 {
            assert_relative_eq!(e.sigma(n), (n as f64).sqrt(), max_relative = 1e-14);
            assert_relative_eq!(e.l(n), 1.0, max_relative = 1e-14);
        }
        assert_relative_eq!(e.c2(), 1.0, max_relative = 1e-14);
        assert!(e.martingale_defect() <= MARTINGALE_TOL);
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            build_walk_ensemble(21, IncrementLaw::PlusMinusOne, PathSampling::Enumerate),
            Err(Error::Size(_))
        ));
        let mc = build_walk_ensemble(30, IncrementLaw::PlusMinusOne, PathSampling::MonteCarlo { paths: 200, seed: 1 })
            .unwrap();
        assert!(!mc.is_enumerated());
        assert_eq!(mc.horizon(), 30);
        assert!(IncrementLaw::Table(vec![(1.0, 1.0)]).atoms().is_err());
    }

    #[test]
    fn doob_examples() {
        let e = walk(10);
        let r = doob_check(&e, 2.0, 1).unwrap();
        assert_relative_eq!(r.ratio, 1.0, max_relative = 1e-15);
        for p in [2.0, 4.0] {
            let r = doob_check(&e, p, 10).unwrap();
            assert!(r.pass && r.ratio <= p / (p - 1.0));
        }
        assert!(doob_check(&e, 1.0, 3).is_err());
    }

    #[test]
    fn norming_functions() {
        assert_eq!(NormingFunction::Identity.eval(5.0), 5.0);
        assert_eq!(NormingFunction::Log.eval(1.0), 1.0);
        let v = NormingFunction::LogLogPower { delta: 1.0 };
        assert_eq!(v.eval(3.0), v.eval(16.0));
        assert!(v.eval(17.0) > v.eval(16.0));
        assert!(summability_check(&NormingFunction::Identity, 60).unwrap().summable);
        assert!(!summability_check(&NormingFunction::Log, 60).unwrap().summable);
        assert!(summability_check(&v, 60).unwrap().summable);
    }

    #[test]
    fn single_block_is_tight() {
        let e = walk(1);
        let psi = PsiFunction::power(0.5).unwrap();
        let grid = PGrid::log_spaced(1.2, 20.0, 16).unwrap();
        let r = theorem2_bound(&e, &psi, &NormingFunction::Identity, &grid, 40).unwrap();
        assert_eq!(r.blocks.len(), 1);
        assert_relative_eq!(r.blocks[0].norming_step, 1.0, max_relative = 1e-14);
        assert!(r.chain_holds);
    }
}
