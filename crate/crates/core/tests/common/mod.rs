//! Helpers shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hsbm::model::{LayerParams, ModelParams};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// The four simulated intensity columns, `alpha[r]` for `r = 0, 1, 2`
/// nodes of community `-1` in a 4-node set.
pub const COLUMNS: [(&str, [f64; 3]); 4] = [
    ("homogeneous-assortative", [18.8, 7.3, 7.3]),
    ("homogeneous-disassortative", [7.3, 18.8, 18.8]),
    ("inhomogeneous-assortative", [18.8, 9.4, 4.7]),
    ("inhomogeneous-disassortative", [4.7, 9.4, 18.8]),
];

pub fn column(name: &str) -> [f64; 3] {
    COLUMNS.iter().find(|(n, _)| *n == name).expect("known column").1
}

pub fn table_params(alpha: [f64; 3], n: usize, m: usize) -> ModelParams {
    ModelParams::replicated(n, LayerParams::symmetric(4, &alpha).unwrap(), m).unwrap()
}

/// The balanced labeling with the first half `+1`.
pub fn halves(n: usize) -> Vec<i8> {
    (0..n).map(|i| if i < n / 2 { 1 } else { -1 }).collect()
}

/// Two-sample chi-square homogeneity test on integer-valued samples.
/// Adjacent values are pooled until every bin holds at least `min_bin`
/// observations in total. Returns the p-value.
pub fn chi_square_two_sample(a: &[u64], b: &[u64], min_bin: u64) -> f64 {
    let mut counts: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    for &x in a {
        counts.entry(x).or_default().0 += 1;
    }
    for &x in b {
        counts.entry(x).or_default().1 += 1;
    }
    let mut bins: Vec<(u64, u64)> = Vec::new();
    let mut pending = (0, 0);
    for &(ca, cb) in counts.values() {
        pending.0 += ca;
        pending.1 += cb;
        if pending.0 + pending.1 >= min_bin {
            bins.push(pending);
            pending = (0, 0);
        }
    }
    if pending.0 + pending.1 > 0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += pending.0;
                last.1 += pending.1;
            }
            None => bins.push(pending),
        }
    }
    if bins.len() < 2 {
        return 1.0;
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let total = na + nb;
    let mut stat = 0.0;
    for &(ca, cb) in &bins {
        let col = (ca + cb) as f64;
        for (observed, row) in [(ca as f64, na), (cb as f64, nb)] {
            let expected = row * col / total;
            stat += (observed - expected).powi(2) / expected;
        }
    }
    let df = (bins.len() - 1) as f64;
    1.0 - ChiSquared::new(df).unwrap().cdf(stat)
}

/// ARI by explicit enumeration of node pairs.
pub fn pair_counting_ari(a: &[i8], b: &[i8]) -> f64 {
    let n = a.len();
    let (mut both, mut only_a, mut only_b, mut total) = (0u64, 0u64, 0u64, 0u64);
    for i in 0..n {
        for j in (i + 1)..n {
            let same_a = a[i] == a[j];
            let same_b = b[i] == b[j];
            total += 1;
            both += u64::from(same_a && same_b);
            only_a += u64::from(same_a && !same_b);
            only_b += u64::from(!same_a && same_b);
        }
    }
    let same_a = (both + only_a) as f64;
    let same_b = (both + only_b) as f64;
    let expected = same_a * same_b / total as f64;
    let max_index = 0.5 * (same_a + same_b);
    if max_index - expected == 0.0 {
        return 1.0;
    }
    (both as f64 - expected) / (max_index - expected)
}
