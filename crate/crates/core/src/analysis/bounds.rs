//! Closed-form edge-count and pair-count bounds.

use serde::Serialize;

use super::AnalysisError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeBound {
    pub value: usize,
    /// `k >= 4` and `2n > 3k`; outside this range `value` proves nothing.
    pub applicable: bool,
}

/// Lower bound `2⌊(n + 3)/k⌋` on the edge count of a 2-covering
/// `k`-hypergraph of order `n`.
pub fn min_edges_bound(n: usize, k: usize) -> EdgeBound {
    EdgeBound {
        value: (n + 3).checked_div(k).map_or(0, |q| 2 * q),
        applicable: k >= 4 && 2 * n > 3 * k,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSum {
    pub parts: Vec<usize>,
    /// `Σ C(x_i, 2)`.
    pub value: u64,
}

fn pairs(x: usize) -> u64 {
    let x = x as u64;
    x * x.saturating_sub(1) / 2
}

fn check(n: usize, k: usize, q: usize) -> Result<(), AnalysisError> {
    if q == 0 || k == 0 || n < q * k {
        return Err(AnalysisError::Infeasible { n, k, q });
    }
    Ok(())
}

/// Maximum of `Σ C(x_i, 2)` over `x_1 + … + x_q = n` with every `x_i >= k`,
/// attained at `(k, …, k, n - k(q - 1))`.
pub fn max_component_pairsum(n: usize, k: usize, q: usize) -> Result<PairSum, AnalysisError> {
    check(n, k, q)?;
    let mut parts = vec![k; q];
    parts[q - 1] = n - k * (q - 1);
    let value = parts.iter().map(|&x| pairs(x)).sum();
    Ok(PairSum { parts, value })
}

/// Same maximum by enumerating every composition; returns the
/// lexicographically first maximizer.
pub fn max_component_pairsum_brute(n: usize, k: usize, q: usize) -> Result<PairSum, AnalysisError> {
    check(n, k, q)?;
    fn go(rest: usize, k: usize, left: usize, cur: &mut Vec<usize>, best: &mut Option<PairSum>) {
        if left == 1 {
            cur.push(rest);
            let value = cur.iter().map(|&x| pairs(x)).sum();
            if best.as_ref().is_none_or(|b| value > b.value) {
                *best = Some(PairSum {
                    parts: cur.clone(),
                    value,
                });
            }
            cur.pop();
            return;
        }
        for x in k..=rest - k * (left - 1) {
            cur.push(x);
            go(rest - x, k, left - 1, cur, best);
            cur.pop();
        }
    }
    let mut best = None;
    go(n, k, q, &mut Vec::with_capacity(q), &mut best);
    Ok(best.expect("a composition exists"))
}
