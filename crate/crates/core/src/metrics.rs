//! Agreement between an estimate and the planted labeling.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::validate_labels;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScoreReport {
    pub ari: f64,
    pub ce: f64,
    pub exact: bool,
}

fn check(estimate: &[i8], truth: &[i8]) -> Result<()> {
    if estimate.len() != truth.len() {
        return Err(Error::SizeMismatch {
            expected: truth.len(),
            actual: estimate.len(),
        });
    }
    validate_labels(estimate)?;
    validate_labels(truth)
}

fn hamming(a: &[i8], b: &[i8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// `min(Ham(estimate, truth), Ham(estimate, -truth)) / n`.
pub fn classification_error(estimate: &[i8], truth: &[i8]) -> Result<f64> {
    check(estimate, truth)?;
    let n = truth.len();
    if n == 0 {
        return Ok(0.0);
    }
    let h = hamming(estimate, truth);
    Ok(h.min(n - h) as f64 / n as f64)
}

/// `true` iff `estimate` equals `truth` or `-truth`.
pub fn exact_recovery(estimate: &[i8], truth: &[i8]) -> Result<bool> {
    check(estimate, truth)?;
    let h = hamming(estimate, truth);
    Ok(h == 0 || h == truth.len())
}

fn pairs(k: u64) -> f64 {
    (k * k.saturating_sub(1) / 2) as f64
}

/// Hubert–Arabie adjusted Rand index from the 2×2 contingency table.
///
/// Returns 1 when both labelings consist of a single class, where the index
/// is otherwise 0/0.
pub fn adjusted_rand_index(estimate: &[i8], truth: &[i8]) -> Result<f64> {
    check(estimate, truth)?;
    let n = truth.len() as u64;
    if n < 2 {
        return Err(Error::invalid("adjusted Rand index needs at least 2 nodes"));
    }
    // table[a][b]: estimate in class a, truth in class b (0 = -1, 1 = +1)
    let mut table = [[0u64; 2]; 2];
    for (&e, &t) in estimate.iter().zip(truth) {
        table[usize::from(e == 1)][usize::from(t == 1)] += 1;
    }
    let index: f64 = table.iter().flatten().map(|&c| pairs(c)).sum();
    let rows: f64 = table.iter().map(|r| pairs(r[0] + r[1])).sum();
    let cols: f64 = (0..2).map(|b| pairs(table[0][b] + table[1][b])).sum();
    let expected = rows * cols / pairs(n);
    let max_index = 0.5 * (rows + cols);
    let denom = max_index - expected;
    if denom == 0.0 {
        return Ok(1.0);
    }
    Ok((index - expected) / denom)
}

pub fn score(estimate: &[i8], truth: &[i8]) -> Result<ScoreReport> {
    Ok(ScoreReport {
        ari: adjusted_rand_index(estimate, truth)?,
        ce: classification_error(estimate, truth)?,
        exact: exact_recovery(estimate, truth)?,
    })
}

/// Parse one `+1`/`-1` label per line.
pub fn parse_labels(text: &str) -> Result<Vec<i8>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| match l.trim() {
            "1" | "+1" => Ok(1),
            "-1" => Ok(-1),
            other => Err(Error::parse(Some(i + 1), format!("`{other}` is not +1 or -1"))),
        })
        .collect()
}
