use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::SemiMetric;
use crate::error::{Error, Result};

/// Largest index set solved exactly.
pub const EXACT_MAX_POINTS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverMode {
    Exact,
    Greedy,
}

/// Centers of closed `ε`-balls covering the index set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cover {
    pub eps: f64,
    pub centers: Vec<usize>,
}

impl Cover {
    pub fn size(&self) -> usize {
        self.centers.len()
    }

    /// Whether every point lies within `eps` of some center.
    pub fn covers(&self, metric: &SemiMetric) -> bool {
        (0..metric.size()).all(|i| self.centers.iter().any(|&c| metric.get(i, c) <= self.eps))
    }

    /// Index of the nearest center for each point, ties to the earlier center.
    pub fn assignment(&self, metric: &SemiMetric) -> Vec<usize> {
        (0..metric.size())
            .map(|i| {
                let mut best = self.centers[0];
                for &c in &self.centers[1..] {
                    if metric.get(i, c) < metric.get(i, best) {
                        best = c;
                    }
                }
                best
            })
            .collect()
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0) || eps.is_nan() {
        return Err(Error::domain(format!("radius {eps} must be positive")));
    }
    Ok(())
}

/// `N(T, d, ε)`: the least number of closed `ε`-balls centred in `T`.
pub fn covering_number(metric: &SemiMetric, eps: f64, mode: CoverMode) -> Result<usize> {
    Ok(cover(metric, eps, mode)?.size())
}

pub fn cover(metric: &SemiMetric, eps: f64, mode: CoverMode) -> Result<Cover> {
    check_eps(eps)?;
    let centers = match mode {
        CoverMode::Exact => exact_cover(metric, eps)?,
        CoverMode::Greedy => greedy_cover(metric, eps),
    };
    Ok(Cover { eps, centers })
}

struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            *words.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
        }
        BitSet { words }
    }

    fn from_indices(n: usize, idx: impl Iterator<Item = usize>) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        for i in idx {
            words[i / 64] |= 1 << (i % 64);
        }
        BitSet { words }
    }

    fn count_and(&self, other: &BitSet) -> u32 {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum()
    }

    fn remove_all(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// Greedy set cover: repeatedly take the ball covering the most uncovered
/// points, ties to the lowest index. Lazy evaluation keeps the same choices
/// as the plain scan since gains only shrink.
fn greedy_cover(metric: &SemiMetric, eps: f64) -> Vec<usize> {
    let m = metric.size();
    let balls: Vec<BitSet> = (0..m)
        .map(|j| BitSet::from_indices(m, (0..m).filter(|&i| metric.get(j, i) <= eps)))
        .collect();
    let mut uncovered = BitSet::full(m);
    let mut heap: BinaryHeap<(u32, Reverse<usize>)> =
        (0..m).map(|j| (balls[j].count_and(&uncovered), Reverse(j))).collect();
    let mut centers = Vec::new();
    while !uncovered.is_empty() {
        let (gain, Reverse(j)) = heap.pop().expect("uncovered points remain coverable");
        let fresh = balls[j].count_and(&uncovered);
        if fresh == gain {
            uncovered.remove_all(&balls[j]);
            centers.push(j);
        } else {
            heap.push((fresh, Reverse(j)));
        }
    }
    centers.sort_unstable();
    centers
}

/// Branch and bound over `u32` masks.
fn exact_cover(metric: &SemiMetric, eps: f64) -> Result<Vec<usize>> {
    let m = metric.size();
    if m > EXACT_MAX_POINTS {
        return Err(Error::Size(format!(
            "exact covering is limited to {EXACT_MAX_POINTS} points, got {m}; use greedy mode"
        )));
    }
    let full: u32 = (1u32 << m) - 1;
    let raw: Vec<u32> = (0..m)
        .map(|j| (0..m).filter(|&i| metric.get(i, j) <= eps).fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    // Drop balls contained in another ball; among equal balls keep the lowest index.
    let mut balls: Vec<(usize, u32)> = Vec::new();
    for j in 0..m {
        let dominated = (0..m).any(|k| {
            k != j && raw[j] & !raw[k] == 0 && (raw[k] != raw[j] || k < j)
        });
        if !dominated {
            balls.push((j, raw[j]));
        }
    }
    // Which surviving balls contain point i, largest first.
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (b, &(_, mask)) in balls.iter().enumerate() {
        for (i, c) in containing.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                c.push(b);
            }
        }
    }
    for c in &mut containing {
        c.sort_by_key(|&b| (Reverse(balls[b].1.count_ones()), b));
    }
    // Points that can share a ball with i.
    let neighbours: Vec<u32> = (0..m)
        .map(|i| containing[i].iter().fold(0u32, |acc, &b| acc | balls[b].1))
        .collect();

    let greedy = greedy_cover(metric, eps);
    let mut search = Search {
        balls: &balls,
        containing: &containing,
        neighbours: &neighbours,
        best: greedy.clone(),
        stack: Vec::new(),
    };
    search.run(full);
    let mut centers = search.best;
    centers.sort_unstable();
    Ok(centers)
}

struct Search<'a> {
    balls: &'a [(usize, u32)],
    containing: &'a [Vec<usize>],
    neighbours: &'a [u32],
    best: Vec<usize>,
    stack: Vec<usize>,
}

impl Search<'_> {
    /// Size of a set of uncovered points no two of which fit in one ball.
    fn packing_bound(&self, mut uncovered: u32) -> usize {
        let mut count = 0;
        while uncovered != 0 {
            let i = uncovered.trailing_zeros() as usize;
            uncovered &= !self.neighbours[i];
            count += 1;
        }
        count
    }

    fn run(&mut self, uncovered: u32) {
        if uncovered == 0 {
            if self.stack.len() < self.best.len() {
                self.best = self.stack.iter().map(|&b| self.balls[b].0).collect();
            }
            return;
        }
        if self.stack.len() + self.packing_bound(uncovered) >= self.best.len() {
            return;
        }
        // Branch on the uncovered point with the fewest candidate balls.
        let mut pick = usize::MAX;
        let mut rest = uncovered;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if pick == usize::MAX || self.containing[i].len() < self.containing[pick].len() {
                pick = i;
            }
        }
        for idx in 0..self.containing[pick].len() {
            let b = self.containing[pick][idx];
            self.stack.push(b);
            self.run(uncovered & !self.balls[b].1);
            self.stack.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize) -> SemiMetric {
        SemiMetric::from_points(&(0..n).map(|i| vec![i as f64]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn collinear_examples() {
        let m = line(3);
        for mode in [CoverMode::Exact, CoverMode::Greedy] {
            assert_eq!(covering_number(&m, 0.5, mode).unwrap(), 3);
            let c = cover(&m, 1.0, mode).unwrap();
            assert_eq!(c.centers, vec![1]);
            assert!(c.covers(&m));
        }
    }

    #[test]
    fn limits_and_errors() {
        let m = line(30);
        assert!(matches!(covering_number(&m, 1.0, CoverMode::Exact), Err(Error::Size(_))));
        assert_eq!(covering_number(&m, 1.0, CoverMode::Greedy).unwrap(), 10);
        assert!(covering_number(&m, 0.0, CoverMode::Greedy).is_err());
        assert_eq!(covering_number(&m, 29.0, CoverMode::Greedy).unwrap(), 1);
    }

    #[test]
    fn exact_is_no_larger_than_greedy() {
        let pts = vec![vec![0.0], vec![2.0], vec![3.0], vec![4.0], vec![6.0]];
        let m = SemiMetric::from_points(&pts).unwrap();
        let g = cover(&m, 2.0, CoverMode::Greedy).unwrap();
        let e = cover(&m, 2.0, CoverMode::Exact).unwrap();
        assert!(e.covers(&m) && g.covers(&m));
        assert_eq!(e.size(), 2);
        assert!(g.size() >= e.size());
    }

    #[test]
    fn assignment_picks_nearest_center() {
        let m = line(5);
        let c = cover(&m, 1.0, CoverMode::Exact).unwrap();
        let a = c.assignment(&m);
        for (i, &ctr) in a.iter().enumerate() {
            assert!(m.get(i, ctr) <= 1.0);
        }
    }
}
