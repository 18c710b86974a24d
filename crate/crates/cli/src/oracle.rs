//! Brute-force references used by the suite.

use bgl_core::entropy::SemiMetric;

/// Largest metric the subset enumeration accepts.
pub const BRUTE_FORCE_MAX_POINTS: usize = 16;

/// Smallest number of closed `eps`-balls centred in the set that cover it,
/// by trying every subset of centres.
pub fn brute_force_covering_number(metric: &SemiMetric, eps: f64) -> usize {
    let m = metric.size();
    assert!(m <= BRUTE_FORCE_MAX_POINTS, "subset enumeration limited to {BRUTE_FORCE_MAX_POINTS} points");
    let balls: Vec<u32> = (0..m)
        .map(|c| (0..m).filter(|&j| metric.get(c, j) <= eps).fold(0u32, |acc, j| acc | 1 << j))
        .collect();
    let full = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    let mut best = m;
    for subset in 1u32..=full {
        let size = subset.count_ones() as usize;
        if size >= best {
            continue;
        }
        let covered = (0..m).filter(|&c| subset >> c & 1 == 1).fold(0u32, |acc, c| acc | balls[c]);
        if covered == full {
            best = size;
        }
    }
    best
}

/// Shortest-path metric of a complete graph with the given edge weights.
pub fn shortest_path_metric(weights: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = weights.len();
    let mut d = weights.to_vec();
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}
