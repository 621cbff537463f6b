//! Exact binomial tails, the one-sided test against the no-information rate,
//! and the Clopper-Pearson interval.

/// `ln(i!)` for `i` in `0..=n`.
fn ln_factorials(n: u64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..=n {
        acc += (i as f64).ln();
        out.push(acc);
    }
    out
}

/// `P[lo <= X <= hi]` for `X ~ Binomial(n, p)`, summed in log space.
fn range_probability(lo: u64, hi: u64, n: u64, p: f64) -> f64 {
    if lo > hi || lo > n {
        return 0.0;
    }
    let hi = hi.min(n);
    if p <= 0.0 {
        return if lo == 0 { 1.0 } else { 0.0 };
    }
    if p >= 1.0 {
        return if hi == n { 1.0 } else { 0.0 };
    }
    let lf = ln_factorials(n);
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    let terms: Vec<f64> = (lo..=hi)
        .map(|k| lf[n as usize] - lf[k as usize] - lf[(n - k) as usize] + k as f64 * lp + (n - k) as f64 * lq)
        .collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|t| (t - max).exp()).sum();
    (max + sum.ln()).exp().min(1.0)
}

/// `P[X >= k]`.
pub fn upper_tail(k: u64, n: u64, p: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    range_probability(k, n, n, p)
}

/// `P[X <= k]`.
pub fn lower_tail(k: u64, n: u64, p: f64) -> f64 {
    if k >= n {
        return 1.0;
    }
    range_probability(0, k, n, p)
}

/// One-sided exact p-value of observing at least `correct` successes out of
/// `n` when the success rate is `nir`.
pub fn pvalue_vs_nir(correct: u64, n: u64, nir: f64) -> f64 {
    upper_tail(correct, n, nir)
}

/// Solves `f(p) = target` on `[0, 1]` by bisection for monotone `f`.
fn bisect(target: f64, increasing: bool, f: impl Fn(f64) -> f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < target) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Two-sided exact (Clopper-Pearson) interval for a proportion of
/// `successes` in `n` trials at confidence `1 - alpha`.
pub fn clopper_pearson(successes: u64, n: u64, alpha: f64) -> (f64, f64) {
    assert!(n > 0 && successes <= n, "need 0 <= successes <= n, n > 0");
    let half = alpha / 2.0;
    let low = if successes == 0 {
        0.0
    } else {
        bisect(half, true, |p| upper_tail(successes, n, p))
    };
    let high = if successes == n {
        1.0
    } else {
        bisect(half, false, |p| lower_tail(successes, n, p))
    };
    (low, high)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tails_at_the_edges() {
        assert_eq!(upper_tail(0, 10, 0.3), 1.0);
        assert_eq!(lower_tail(10, 10, 0.3), 1.0);
        assert!((upper_tail(20, 20, 0.34) - 0.34f64.powi(20)).abs() < 1e-22);
        assert!((lower_tail(0, 5, 0.2) - 0.8f64.powi(5)).abs() < 1e-15);
    }

    #[test]
    fn tails_complement() {
        for k in 1..=12 {
            let s = upper_tail(k, 12, 0.37) + lower_tail(k - 1, 12, 0.37);
            assert!((s - 1.0).abs() < 1e-13, "k={k} sum={s}");
        }
    }

    #[test]
    fn pvalue_edges() {
        assert_eq!(pvalue_vs_nir(0, 50, 0.34), 1.0);
        let p = pvalue_vs_nir(20, 20, 0.34);
        assert!((p / 4.3e-10 - 1.0).abs() < 0.01, "{p}");
    }

    #[test]
    fn interval_closed_forms() {
        let n = 25;
        let (lo, hi) = clopper_pearson(0, n, 0.05);
        assert_eq!(lo, 0.0);
        assert!((hi - (1.0 - 0.025f64.powf(1.0 / n as f64))).abs() < 1e-12);
        let (lo, hi) = clopper_pearson(n, n, 0.05);
        assert_eq!(hi, 1.0);
        assert!((lo - 0.025f64.powf(1.0 / n as f64)).abs() < 1e-12);
    }
}
