//! Binomial coefficients and combination ranking.

use statrs::function::gamma::ln_gamma;

/// Exact `C(n, k)`, or `None` if it does not fit in a `u64`.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is always integral at this point
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// `C(n, k)` in floating point.
///
/// Uses the running product for small `k` (exact up to rounding) and
/// log-gamma otherwise.
pub fn binomial_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if k <= 64 {
        let mut acc = 1.0_f64;
        for i in 0..k {
            acc = acc * (n - i) as f64 / (i + 1) as f64;
        }
        acc
    } else {
        let (n, k) = (n as f64, k as f64);
        (ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)).exp()
    }
}

/// The `index`-th `k`-subset of `0..n` in lexicographic order.
///
/// # Panics
/// If `index >= C(n, k)`.
pub fn unrank_combination(mut index: u64, n: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0usize;
    while out.len() < k {
        assert!(x < n, "combination index out of range");
        let remaining = (k - out.len() - 1) as u64;
        let count = binomial_u64((n - x - 1) as u64, remaining)
            .expect("unrank called on a family whose size overflows u64");
        if index < count {
            out.push(x);
        } else {
            index -= count;
        }
        x += 1;
    }
    out
}
