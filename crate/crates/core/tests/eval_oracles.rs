use cifra::eval::{
    accuracy, clopper_pearson, confusion_matrix, error_rate, kappa, kappa_from_rates, pvalue_vs_nir,
    upper_tail, KappaMode,
};
use proptest::prelude::*;
use statrs::distribution::{Beta, ContinuousCDF};

fn choose(n: u64, k: u64) -> f64 {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n as u128 - i) / (i + 1);
    }
    c as f64
}

/// `P[X >= k]` by summing the mass function term by term.
fn tail_sum(k: u64, n: u64, p: f64) -> f64 {
    (k..=n)
        .map(|i| choose(n, i) * p.powi(i as i32) * (1.0 - p).powi((n - i) as i32))
        .sum()
}

#[test]
fn tails_match_direct_summation() {
    for n in 1..=30 {
        for k in 0..=n {
            for p in [0.01, 0.125, 0.34, 0.5, 0.77, 0.99] {
                let want = tail_sum(k, n, p);
                let got = upper_tail(k, n, p);
                assert!(
                    (got - want).abs() <= 1e-12 + 1e-10 * want,
                    "n={n} k={k} p={p}: {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn interval_endpoints_solve_the_tail_equations() {
    let alpha = 0.05;
    for n in 1..=30 {
        for k in 0..=n {
            let (lo, hi) = clopper_pearson(k, n, alpha);
            if k == 0 {
                assert_eq!(lo, 0.0);
            } else {
                assert!(
                    (tail_sum(k, n, lo) - alpha / 2.0).abs() < 1e-9,
                    "lower n={n} k={k}"
                );
            }
            if k == n {
                assert_eq!(hi, 1.0);
            } else {
                assert!(
                    (1.0 - tail_sum(k + 1, n, hi) - alpha / 2.0).abs() < 1e-9,
                    "upper n={n} k={k}"
                );
            }
        }
    }
}

#[test]
fn interval_matches_beta_quantiles() {
    for (k, n) in [
        (1u64, 10u64),
        (5, 10),
        (9, 10),
        (62, 100),
        (1555, 2502),
        (2499, 2502),
        (3, 4000),
    ] {
        let (lo, hi) = clopper_pearson(k, n, 0.05);
        let beta_lo = Beta::new(k as f64, (n - k + 1) as f64)
            .unwrap()
            .inverse_cdf(0.025);
        let beta_hi = Beta::new((k + 1) as f64, (n - k) as f64)
            .unwrap()
            .inverse_cdf(0.975);
        assert!((lo - beta_lo).abs() < 1e-8, "k={k} n={n}: {lo} vs {beta_lo}");
        assert!((hi - beta_hi).abs() < 1e-8, "k={k} n={n}: {hi} vs {beta_hi}");
    }
}

#[test]
fn pvalue_examples() {
    assert!((pvalue_vs_nir(20, 20, 0.34) - 0.34f64.powi(20)).abs() < 1e-22);
    assert_eq!(pvalue_vs_nir(0, 20, 0.34), 1.0);
    // 62% accuracy on 2502 test songs against a 34.4% majority class
    let n = 2502;
    assert!(pvalue_vs_nir((0.62 * n as f64).round() as u64, n, 0.344) < 1e-4);
}

#[test]
fn two_class_kappa_by_hand() {
    // truth A A A A A A B B B B, predicted A A A A B B A B B B
    let truths = ["A", "A", "A", "A", "A", "A", "B", "B", "B", "B"];
    let preds = ["A", "A", "A", "A", "B", "B", "A", "B", "B", "B"];
    // p0 = 7/10; marginals: truth (0.6, 0.4), predicted (0.5, 0.5); pe = 0.5
    assert!((kappa(&preds, &truths, KappaMode::Marginal).unwrap() - 0.4).abs() < 1e-12);
    // pe = nir = 0.6
    assert!((kappa(&preds, &truths, KappaMode::Nir).unwrap() - 0.25).abs() < 1e-12);

    // truth A A A B, predicted A A A A: p0 = 0.75, pe(marginal) = 0.75 * 1 = 0.75
    let truths = ["A", "A", "A", "B"];
    let preds = ["A"; 4];
    assert_eq!(kappa(&preds, &truths, KappaMode::Marginal).unwrap(), 0.0);
    assert_eq!(kappa(&preds, &truths, KappaMode::Nir).unwrap(), 0.0);

    assert!(kappa_from_rates(0.5, 1.0).is_err());
}

proptest! {
    #[test]
    fn pvalue_decreases_with_correct_count(n in 1u64..400, nir in 0.05f64..0.95) {
        let mut last = 1.0 + 1e-15;
        for k in 0..=n {
            let p = pvalue_vs_nir(k, n, nir);
            prop_assert!(p <= last, "k={} p={} last={}", k, p, last);
            last = p;
        }
    }

    #[test]
    fn metrics_are_consistent(pairs in prop::collection::vec((0u8..4, 0u8..4), 1..200)) {
        let labels = ["Forró", "MPB", "Rock", "Samba"];
        let preds: Vec<&str> = pairs.iter().map(|p| labels[p.0 as usize]).collect();
        let truths: Vec<&str> = pairs.iter().map(|p| labels[p.1 as usize]).collect();
        let acc = accuracy(&preds, &truths).unwrap();
        prop_assert_eq!(acc + error_rate(&preds, &truths).unwrap(), 1.0);
        let cm = confusion_matrix(&preds, &truths).unwrap();
        for (i, row) in cm.normalized.iter().enumerate() {
            let support: usize = cm.counts[i].iter().sum();
            let sum: f64 = row.iter().sum();
            if support == 0 {
                prop_assert_eq!(sum, 0.0);
            } else {
                prop_assert!((sum - 1.0).abs() < 1e-9);
                let hits = truths.iter().zip(&preds).filter(|(t, p)| **t == cm.labels[i] && *t == *p).count();
                prop_assert!((cm.recall()[i] - hits as f64 / support as f64).abs() < 1e-15);
            }
        }
        for mode in [KappaMode::Marginal, KappaMode::Nir] {
            if let Ok(k) = kappa(&preds, &truths, mode) {
                prop_assert!(k <= 1.0 + 1e-12);
            }
        }
        let (lo, hi) = clopper_pearson((acc * pairs.len() as f64).round() as u64, pairs.len() as u64, 0.05);
        prop_assert!(lo <= acc && acc <= hi);
    }
}
