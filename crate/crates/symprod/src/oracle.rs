//! Independent oracles for cross-checking the symmetric-product machinery:
//! invariant dimensions of the signed tensor-power action computed by the
//! group-trace formula (no orbit enumeration involved), and the
//! closed-form Poincaré series of SP^n of a free two-generator algebra in
//! both the derived and the literally printed degree conventions.

use crate::algebra::koszul_sign;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::realize::AlgebraData;
use crate::series::{free_series_from_counts, TruncatedSeries};
use crate::sp::Label;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(n, cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            cycle.push(k);
            k = perm[k];
        }
        cycles.push(cycle);
    }
    cycles
}

struct TraceState<'a> {
    labels: Vec<Label>,
    limits: &'a Limits,
    cells: u64,
}

impl TraceState<'_> {
    /// Sums the Koszul signs of all words fixed by `perm` in total degree
    /// `remaining`, assigning one label per cycle.
    fn fixed_sign_sum(
        &mut self,
        cycles: &[Vec<usize>],
        idx: usize,
        remaining: usize,
        word: &mut Vec<usize>,
        perm: &[usize],
    ) -> Result<i64> {
        self.cells += 1;
        self.limits.check_cells(self.cells)?;
        if idx == cycles.len() {
            if remaining != 0 {
                return Ok(0);
            }
            return Ok(koszul_sign(word, perm)? as i64);
        }
        let len = cycles[idx].len();
        let mut total = 0i64;
        for li in 0..self.labels.len() {
            let (deg, _) = self.labels[li];
            if deg * len > remaining {
                continue;
            }
            for &pos in &cycles[idx] {
                word[pos] = deg;
            }
            total += self.fixed_sign_sum(cycles, idx + 1, remaining - deg * len, word, perm)?;
        }
        Ok(total)
    }
}

/// Dimension of the signed Σn-invariants of (A^{⊗n})_d by the trace of
/// the averaging projector: (1/n!) Σ_σ (signed count of words fixed by
/// σ). Shares no code with the orbit-basis enumeration.
pub fn invariant_dim_trace(a: &AlgebraData, n: usize, d: usize, limits: &Limits) -> Result<usize> {
    limits.check_n(n)?;
    if d > a.cutoff() {
        return Err(Error::CutoffExceeded { needed: d, cutoff: a.cutoff() });
    }
    let mut labels: Vec<Label> = vec![(0, 0)];
    for deg in 1..=d {
        for i in 0..a.dim(deg) {
            labels.push((deg, i));
        }
    }
    let mut state = TraceState { labels, limits, cells: 0 };
    let mut trace = 0i64;
    for perm in permutations(n) {
        let cycles = cycles_of(&perm);
        let mut word = vec![0usize; n];
        trace += state.fixed_sign_sum(&cycles, 0, d, &mut word, &perm)?;
    }
    let fact: i64 = (1..=n as i64).product();
    if trace % fact != 0 {
        return Err(Error::Invalid(format!(
            "trace {} not divisible by {}! for degree {}",
            trace, n, d
        )));
    }
    let dim = trace / fact;
    if dim < 0 {
        return Err(Error::Invalid(format!("negative invariant dimension in degree {}", d)));
    }
    Ok(dim as usize)
}

/// Invariant dimensions through `max_degree` by the trace formula.
pub fn invariant_dims_trace(
    a: &AlgebraData,
    n: usize,
    max_degree: usize,
    limits: &Limits,
) -> Result<Vec<usize>> {
    (0..=max_degree).map(|d| invariant_dim_trace(a, n, d, limits)).collect()
}

/// Degrees of the free generators of SP^n(Λ(x, y)), deg x = 2r,
/// deg y = 2s-1: the power classes [x^i] in degree 2ri and the mixed
/// classes [x^{i-1}y] in degree 2(i-1)r + 2s - 1, for i = 1..n.
pub fn two_gen_degrees(r: usize, s: usize, n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 1..=n {
        out.push(2 * r * i);
        out.push(2 * (i - 1) * r + 2 * s - 1);
    }
    out
}

/// The same family with the odd degrees as literally printed, 2ir + 2s - 3.
/// Agrees with [`two_gen_degrees`] exactly when r = 1.
pub fn two_gen_degrees_literal(r: usize, s: usize, n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 1..=n {
        out.push(2 * r * i);
        out.push(2 * i * r + 2 * s - 3);
    }
    out
}

fn series_on_degrees(degrees: &[usize], max_degree: usize) -> TruncatedSeries {
    let top = degrees.iter().copied().max().unwrap_or(0);
    let mut counts = vec![0usize; std::cmp::max(top, max_degree) + 1];
    for &d in degrees {
        counts[d] += 1;
    }
    free_series_from_counts(&counts, max_degree)
}

/// Closed-form Poincaré series of SP^n(Λ(x, y)): the free-algebra series
/// on the derived generator degrees.
pub fn two_gen_free_series(r: usize, s: usize, n: usize, max_degree: usize) -> TruncatedSeries {
    series_on_degrees(&two_gen_degrees(r, s, n), max_degree)
}

/// The free-algebra series on the literally printed degrees; kept for the
/// documented discrepancy check at r > 1.
pub fn two_gen_free_series_literal(
    r: usize,
    s: usize,
    n: usize,
    max_degree: usize,
) -> TruncatedSeries {
    series_on_degrees(&two_gen_degrees_literal(r, s, n), max_degree)
}
