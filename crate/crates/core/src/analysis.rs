//! Size and redundancy arithmetic. All logarithms are base 2.

use serde::Serialize;

/// Lower bound on the code size from the component bounds
/// `n!/(2n)^{3t-1}` and `C(q,n)/(2q)^t`, as `(value, log2 value)`.
///
/// The value is a direct floating-point product; the log comes from a sum of
/// logs. For parameters where the product leaves the f64 range the value is
/// `2^log2`, which saturates to 0 or infinity.
pub fn size_lower_bound(q: usize, n: usize, t: usize) -> (f64, f64) {
    let log2 = size_lower_bound_log2(q, n, t);
    let direct = size_lower_bound_direct(q, n, t);
    let value = if direct.is_finite() && direct > 0.0 { direct } else { log2.exp2() };
    (value, log2)
}

/// `Π_{i<n} (q - i) / ((2n)^{3t-1} (2q)^t)`, multiplying and dividing in
/// alternation so intermediate values stay moderate.
pub fn size_lower_bound_direct(q: usize, n: usize, t: usize) -> f64 {
    check_shape(q, n, t);
    let mut numerators = (0..n).map(|i| (q - i) as f64);
    let mut denominators = std::iter::repeat_n(2.0 * n as f64, 3 * t - 1)
        .chain(std::iter::repeat_n(2.0 * q as f64, t));
    let mut acc = 1.0f64;
    loop {
        match (numerators.next(), denominators.next()) {
            (None, None) => return acc,
            (num, den) => {
                if let Some(x) = num {
                    acc *= x;
                }
                if let Some(d) = den {
                    acc /= d;
                }
            }
        }
    }
}

/// `Σ log2(q - i) - (3t-1) log2(2n) - t log2(2q)`.
pub fn size_lower_bound_log2(q: usize, n: usize, t: usize) -> f64 {
    check_shape(q, n, t);
    exact_log2_falling(q, n) - (3 * t - 1) as f64 * (2.0 * n as f64).log2() - t as f64 * (2.0 * q as f64).log2()
}

fn check_shape(q: usize, n: usize, t: usize) {
    assert!(t >= 1 && n >= 1 && n <= q, "need t >= 1 and 1 <= n <= q, got q={q} n={n} t={t}");
}

/// `Σ_{i<n} log2(q - i)`, the exact finite-n value of `log2(n! C(q,n))`.
pub fn exact_log2_falling(q: usize, n: usize) -> f64 {
    (0..n).map(|i| ((q - i) as f64).log2()).sum()
}

/// `n log2 q - log2 |C|`.
pub fn redundancy(q: usize, n: usize, code_size: f64) -> f64 {
    n as f64 * (q as f64).log2() - code_size.log2()
}

/// `t log2 q + (3t-1) log2 n + (4t-1)`, without the vanishing correction terms.
pub fn redundancy_bound(q: usize, n: usize, t: usize) -> f64 {
    check_shape(q, n, t);
    t as f64 * (q as f64).log2() + (3 * t - 1) as f64 * (n as f64).log2() + (4 * t - 1) as f64
}

/// Redundancy expressions of other q-ary multi-deletion constructions, for comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceRedundancies {
    /// `30 t log2 q`
    pub thirty_t_log_q: f64,
    /// `5 t log2 q`
    pub five_t_log_q: f64,
    /// `t log2 q`, before the `Θ(n)` term of locate-then-erase schemes.
    pub t_log_q_plus_linear: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub q: usize,
    pub n: usize,
    pub t: usize,
    pub size_lower_bound: f64,
    pub log2_size_lower_bound: f64,
    /// Size of a materialized code, when one was supplied.
    pub code_size: Option<f64>,
    pub log2_code_size: Option<f64>,
    /// `n log2 q - log2 |C|` for the supplied code.
    pub redundancy_actual: Option<f64>,
    /// Redundancy of a code meeting [`size_lower_bound`] exactly.
    pub redundancy_of_lower_bound: f64,
    pub redundancy_bound: f64,
    /// `n log2 q - Σ log2(q - i)`; the finite-n value of the vanishing term.
    pub falling_factorial_slack: f64,
    /// `(n - t) log2 q`
    pub singleton_log_size: f64,
    /// `log2 q / log2 n`; absent when `n = 1`.
    pub alpha: Option<f64>,
    /// `n - t - log2 |C| / log2 q` for the supplied code.
    pub eta: Option<f64>,
    /// `(3t - 1) / eta`
    pub alpha_threshold: Option<f64>,
    pub alpha_exceeds_threshold: Option<bool>,
    /// Display-only constants for the asymptotic terms `δt` and `O(1/n^ε)`.
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    /// `δ t`, shown beside the bound rather than added to it.
    pub delta_t: Option<f64>,
    /// `1 / n^ε`
    pub inverse_n_epsilon: Option<f64>,
    pub reference_redundancies: ReferenceRedundancies,
}

/// Everything the bounds command prints. `code_size` enables the comparison
/// against an actual code; `epsilon` and `delta` are only echoed as annotations.
pub fn singleton_report(
    q: usize,
    n: usize,
    t: usize,
    code_size: Option<f64>,
    epsilon: Option<f64>,
    delta: Option<f64>,
) -> BoundReport {
    let log_q = (q as f64).log2();
    let (size_lower_bound, log2_size_lower_bound) = size_lower_bound(q, n, t);
    let alpha = (n > 1).then(|| log_q / (n as f64).log2());
    let log2_code_size = code_size.map(f64::log2);
    let eta = log2_code_size.map(|l| (n - t) as f64 - l / log_q);
    let alpha_threshold = eta.map(|e| (3 * t - 1) as f64 / e);
    let alpha_exceeds_threshold = match (alpha, alpha_threshold, eta) {
        (Some(a), Some(th), Some(e)) if e > 0.0 => Some(a > th),
        _ => None,
    };
    BoundReport {
        q,
        n,
        t,
        size_lower_bound,
        log2_size_lower_bound,
        code_size,
        log2_code_size,
        redundancy_actual: code_size.map(|s| redundancy(q, n, s)),
        redundancy_of_lower_bound: n as f64 * log_q - log2_size_lower_bound,
        redundancy_bound: redundancy_bound(q, n, t),
        falling_factorial_slack: n as f64 * log_q - exact_log2_falling(q, n),
        singleton_log_size: (n - t) as f64 * log_q,
        alpha,
        eta,
        alpha_threshold,
        alpha_exceeds_threshold,
        epsilon,
        delta,
        delta_t: delta.map(|d| d * t as f64),
        inverse_n_epsilon: epsilon.map(|e| (n as f64).powf(-e)),
        reference_redundancies: ReferenceRedundancies {
            thirty_t_log_q: 30.0 * t as f64 * log_q,
            five_t_log_q: 5.0 * t as f64 * log_q,
            t_log_q_plus_linear: t as f64 * log_q,
        },
    }
}
