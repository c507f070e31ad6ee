//! Counting bounds on the expected LCS rate of `m` random words.
//!
//! `F(n, l, k)` counts the length-`n` words over `k` letters that contain a
//! fixed word of length `l` as a subsequence. It depends only on `l`, so the
//! number of `(m + 1)`-tuples `(a_1, .., a_m, s)` with `|s| = l` and every
//! `a_i` containing `s` is `G = k^l * F^m`. `G` dominates `g`, the number of
//! `m`-tuples whose common subsequence reaches length `l`. Taking the
//! exponential growth rate of `G / k^{mn}` yields `H_k(theta)^m` with
//! `theta = l / n`, and the root `V_k` of `H_k = 1` in `[1/k, 1)` bounds the
//! limiting LCS rate from above.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lcs::lcs_multi;
use crate::sequence::Sequence;

/// Largest number of tuples [`brute_g`] will enumerate.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;
pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_BISECTIONS: usize = 200;

/// Lower bounds on the binary `m`-word LCS rate for `m = 2..=10`, from
/// Kiwi and Soto, "On a speculated relation between Chvátal–Sankoff
/// constants of several sequences" (2009). Reference data only.
pub const KIWI_SOTO_LOWER_K2: [(u32, f64); 9] = [
    (2, 0.781281),
    (3, 0.704473),
    (4, 0.661274),
    (5, 0.636022),
    (6, 0.617761),
    (7, 0.602493),
    (8, 0.594016),
    (9, 0.587900),
    (10, 0.570155),
];

pub fn known_lower_bound(k: u32, m: u32) -> Option<f64> {
    if k != 2 {
        return None;
    }
    KIWI_SOTO_LOWER_K2.iter().find(|(mm, _)| *mm == m).map(|&(_, v)| v)
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid(format!("alphabet size must be at least 2, got {k}")));
    }
    Ok(())
}

fn check_km(k: u32, m: u32) -> Result<()> {
    check_k(k)?;
    if m < 2 {
        return Err(Error::invalid(format!("need at least two words, got m = {m}")));
    }
    Ok(())
}

/// `F(n, l, k) = sum_{j=l}^{n} C(n, j) (k-1)^{n-j}`.
pub fn count_containing(n: u32, ell: u32, k: u32) -> Result<BigUint> {
    check_k(k)?;
    if ell > n {
        return Err(Error::invalid(format!("subsequence length {ell} exceeds word length {n}")));
    }
    // Walk j downward from n so both factors update by exact integer steps:
    // C(n, j-1) = C(n, j) * j / (n - j + 1).
    let mut binom = BigUint::one();
    let mut power = BigUint::one();
    let mut total = BigUint::zero();
    let km1 = BigUint::from(k - 1);
    let mut j = n;
    loop {
        total += &binom * &power;
        if j == ell {
            break;
        }
        binom = binom * j / (n - j + 1);
        power *= &km1;
        j -= 1;
    }
    Ok(total)
}

/// `n * C(n, l) * (k-1)^{n-l}`, an upper bound on `F` when `l >= n / k`.
pub fn count_upper(n: u32, ell: u32, k: u32) -> Result<BigUint> {
    check_k(k)?;
    if ell > n {
        return Err(Error::invalid(format!("subsequence length {ell} exceeds word length {n}")));
    }
    if (ell as u64) * (k as u64) < n as u64 {
        return Err(Error::invalid(format!("bound needs l >= n/k (l = {ell}, n = {n}, k = {k})")));
    }
    Ok(BigUint::from(n) * binomial(n, ell) * BigUint::from(k - 1).pow(n - ell))
}

fn binomial(n: u32, r: u32) -> BigUint {
    let r = r.min(n - r);
    (0..r).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `G(n, l, k) = k^l * F(n, l, k)^m`.
pub fn g_upper_g(n: u32, ell: u32, k: u32, m: u32) -> Result<BigUint> {
    check_km(k, m)?;
    let f = count_containing(n, ell, k)?;
    Ok(BigUint::from(k).pow(ell) * f.pow(m))
}

/// Number of `m`-tuples of length-`n` words whose LCS is at least `l`,
/// for every `l` in `0..=n`, by enumerating all `k^{mn}` tuples.
pub fn brute_g_all(n: u32, k: u32, m: u32) -> Result<Vec<BigUint>> {
    check_km(k, m)?;
    if k > 256 {
        return Err(Error::invalid("enumeration supports at most 256 letters"));
    }
    let words = (k as u64).checked_pow(n).ok_or_else(|| Error::resource("word count overflows"))?;
    let tuples = words
        .checked_pow(m)
        .filter(|&t| t <= ENUMERATION_BUDGET)
        .ok_or_else(|| {
            Error::resource(format!("enumeration exceeds the budget of {ENUMERATION_BUDGET} tuples"))
        })?;
    let all_words: Vec<Sequence> = (0..words).map(|code| decode_word(code, n, k)).collect();

    let mut at_exactly = vec![0u64; n as usize + 1];
    let mut tuple = vec![0usize; m as usize];
    for _ in 0..tuples {
        let seqs: Vec<Sequence> = tuple.iter().map(|&i| all_words[i].clone()).collect();
        at_exactly[lcs_multi(&seqs)?] += 1;
        for slot in tuple.iter_mut().rev() {
            *slot += 1;
            if (*slot as u64) < words {
                break;
            }
            *slot = 0;
        }
    }
    // Suffix sums turn "exactly l" into "at least l".
    let mut acc = 0u64;
    let mut out = vec![BigUint::zero(); n as usize + 1];
    for l in (0..=n as usize).rev() {
        acc += at_exactly[l];
        out[l] = BigUint::from(acc);
    }
    Ok(out)
}

/// `g(n, l, k)` for a single `l`; see [`brute_g_all`].
pub fn brute_g(n: u32, ell: u32, k: u32, m: u32) -> Result<BigUint> {
    if ell > n {
        return Err(Error::invalid(format!("subsequence length {ell} exceeds word length {n}")));
    }
    Ok(brute_g_all(n, k, m)?.swap_remove(ell as usize))
}

fn decode_word(mut code: u64, n: u32, k: u32) -> Sequence {
    let mut symbols = vec![0u8; n as usize];
    for slot in symbols.iter_mut().rev() {
        *slot = (code % k as u64) as u8;
        code /= k as u64;
    }
    Sequence::from_raw(symbols, k as usize)
}

/// Natural log of `H_k(theta)`.
fn log_h(theta: f64, k: f64, m: f64) -> f64 {
    let mut v = (theta / m - 1.0) * k.ln() + (1.0 - theta) * (k - 1.0).ln() - theta * theta.ln();
    if theta < 1.0 {
        v -= (1.0 - theta) * (1.0 - theta).ln();
    }
    v
}

/// `H_k(theta) = k^{theta/m - 1} (k-1)^{1-theta} / (theta^theta (1-theta)^{1-theta})`,
/// evaluated in log space.
pub fn h_k_theta(theta: f64, k: u32, m: u32) -> Result<f64> {
    check_km(k, m)?;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::invalid(format!("theta = {theta} not in (0, 1)")));
    }
    Ok(log_h(theta, k as f64, m as f64).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub k: u32,
    pub m: u32,
    pub v_k: f64,
    pub iterations: usize,
    /// `|H_k(v_k) - 1|`.
    pub residual: f64,
}

/// Bisection for the root of `H_k(theta) = 1` on `[1/k, 1)`.
///
/// `H_k(1/k) = k^{1/(mk)} > 1` and `H_k -> k^{-(m-1)/m} < 1` as `theta -> 1`.
pub fn solve_vk(k: u32, m: u32, tol: f64) -> Result<BoundResult> {
    check_km(k, m)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let (kf, mf) = (k as f64, m as f64);
    let f = |t: f64| log_h(t, kf, mf).exp() - 1.0;
    let mut lo = 1.0 / kf;
    let mut hi = 1.0 - f64::EPSILON;
    if !(f(lo) > 0.0 && f(hi) < 0.0) {
        return Err(Error::Internal(format!("no sign change of H_k - 1 for k = {k}, m = {m}")));
    }
    let mut iterations = 0;
    let mut mid = 0.5 * (lo + hi);
    while iterations < MAX_BISECTIONS {
        iterations += 1;
        let next = 0.5 * (lo + hi);
        if next <= lo || next >= hi {
            break;
        }
        mid = next;
        let fm = f(mid);
        if fm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= tol && fm.abs() <= tol {
            break;
        }
    }
    let residual = f(mid).abs();
    if residual > tol.max(1e-9) {
        return Err(Error::Internal(format!(
            "bisection stalled with residual {residual} for k = {k}, m = {m}"
        )));
    }
    Ok(BoundResult { k, m, v_k: mid, iterations, residual })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub k: u32,
    pub m: u32,
    pub upper_bound: f64,
    pub lower_bound: Option<f64>,
}

pub const BOUNDS_CSV_HEADER: &str = "k,m,upper_bound,lower_bound";

impl BoundRow {
    pub fn csv_row(&self) -> String {
        let lower = self.lower_bound.map(|v| format!("{v:.6}")).unwrap_or_default();
        format!("{},{},{:.6},{}", self.k, self.m, self.upper_bound, lower)
    }
}

pub fn bounds_table(k: u32, m_min: u32, m_max: u32) -> Result<Vec<BoundRow>> {
    check_k(k)?;
    if m_min < 2 || m_min > m_max {
        return Err(Error::invalid(format!("invalid word-count range {m_min}..{m_max}")));
    }
    (m_min..=m_max)
        .map(|m| {
            let res = solve_vk(k, m, DEFAULT_TOL)?;
            Ok(BoundRow {
                k,
                m,
                upper_bound: res.v_k,
                lower_bound: known_lower_bound(k, m),
            })
        })
        .collect()
}
