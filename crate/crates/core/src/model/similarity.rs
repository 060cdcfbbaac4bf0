//! Pairwise hyperedge co-incidence counts.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;

use super::hypergraph::{Layer, MultilayerHypergraph};
use crate::error::{Error, Result};

/// Symmetric, zero-diagonal matrix of nonnegative co-incidence counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityMatrix {
    n: usize,
    data: Vec<u32>,
}

impl SimilarityMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    /// Build from rows; checks shape, symmetry and the zero diagonal.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            data.extend(row);
        }
        let w = Self { n, data };
        for i in 0..n {
            if w.get(i, i) != 0 {
                return Err(Error::invalid(format!("nonzero diagonal entry at ({i}, {i})")));
            }
            for j in 0..i {
                if w.get(i, j) != w.get(j, i) {
                    return Err(Error::invalid(format!("asymmetric entries at ({i}, {j})")));
                }
            }
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    fn add_pair(&mut self, i: usize, j: usize) {
        self.data[i * self.n + j] += 1;
        self.data[j * self.n + i] += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn max_entry(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| f64::from(self.get(i, j)))
    }

    /// `n` lines of `n` comma-separated integers.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.n * self.n * 2);
        for i in 0..self.n {
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(lno, line)| {
                line.split(',')
                    .map(|t| {
                        t.trim().parse::<u32>().map_err(|_| {
                            Error::parse(Some(lno + 1), format!("`{}` is not a nonnegative integer", t.trim()))
                        })
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv(&text).map_err(|e| e.with_path(path))
    }
}

/// `W_ij` = number of hyperedges of `layer` containing both `i` and `j`.
pub fn similarity_matrix(layer: &Layer, n: usize) -> Result<SimilarityMatrix> {
    let mut w = SimilarityMatrix::zeros(n);
    for e in layer.edges() {
        let nodes = e.nodes();
        if let Some(&i) = nodes.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        for (a, &i) in nodes.iter().enumerate() {
            for &j in &nodes[a + 1..] {
                w.add_pair(i, j);
            }
        }
    }
    Ok(w)
}

/// Entrywise sum of same-sized matrices.
pub fn aggregate(matrices: &[SimilarityMatrix]) -> Result<SimilarityMatrix> {
    let first = matrices
        .first()
        .ok_or_else(|| Error::invalid("cannot aggregate an empty list of matrices"))?;
    let mut total = SimilarityMatrix::zeros(first.n);
    for w in matrices {
        if w.n != first.n {
            return Err(Error::SizeMismatch {
                expected: first.n,
                actual: w.n,
            });
        }
        for (t, v) in total.data.iter_mut().zip(&w.data) {
            *t += v;
        }
    }
    Ok(total)
}

/// Per-layer matrices and their aggregate.
pub fn layer_similarities(h: &MultilayerHypergraph) -> Result<Vec<SimilarityMatrix>> {
    h.layers()
        .iter()
        .map(|l| similarity_matrix(l, h.n()))
        .collect()
}

/// Aggregated similarity matrix of all layers.
pub fn aggregate_similarity(h: &MultilayerHypergraph) -> Result<SimilarityMatrix> {
    aggregate(&layer_similarities(h)?)
}
