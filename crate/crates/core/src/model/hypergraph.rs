//! Multilayer uniform hypergraphs and their text serialization.
//!
//! Text format (node and layer indices are 1-based):
//!
//! ```text
//! N M d1 ... dM
//! m i1 i2 ... id_m      one line per hyperedge, nodes ascending
//! ```
//!
//! Hyperedges are written grouped by layer and in lexicographic order within
//! a layer, so equal hypergraphs serialize to equal bytes.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A node set stored as a strictly ascending tuple of 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Hyperedge(Box<[usize]>);

impl Hyperedge {
    /// Canonicalizes by sorting; rejects repeated nodes.
    pub fn new(mut nodes: Vec<usize>) -> Result<Self> {
        nodes.sort_unstable();
        if let Some(w) = nodes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("node {} repeated in hyperedge", w[0])));
        }
        Ok(Self(nodes.into_boxed_slice()))
    }

    pub(crate) fn from_sorted(nodes: Vec<usize>) -> Self {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        Self(nodes.into_boxed_slice())
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Present hyperedges of one `d`-uniform layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    d: usize,
    edges: Vec<Hyperedge>,
}

impl Layer {
    /// Sorts the edges; rejects wrong sizes, out-of-range nodes and duplicates.
    pub fn new(n: usize, d: usize, mut edges: Vec<Hyperedge>) -> Result<Self> {
        for e in &edges {
            if e.len() != d {
                return Err(Error::invalid(format!(
                    "hyperedge of size {} in a {d}-uniform layer",
                    e.len()
                )));
            }
            if let Some(&i) = e.nodes().last().filter(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate hyperedge within a layer"));
        }
        Ok(Self { d, edges })
    }

    pub(crate) fn from_sorted(d: usize, edges: Vec<Hyperedge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Self { d, edges }
    }

    pub fn empty(d: usize) -> Self {
        Self { d, edges: Vec::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultilayerHypergraph {
    n: usize,
    layers: Vec<Layer>,
}

impl MultilayerHypergraph {
    pub fn new(n: usize, layers: Vec<Layer>) -> Result<Self> {
        for layer in &layers {
            if let Some(i) = layer
                .edges
                .iter()
                .filter_map(|e| e.nodes().last().copied())
                .find(|&i| i >= n)
            {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
        }
        Ok(Self { n, layers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write!(out, "{} {}", self.n, self.layers.len()).unwrap();
        for layer in &self.layers {
            write!(out, " {}", layer.d).unwrap();
        }
        out.push('\n');
        for (m, layer) in self.layers.iter().enumerate() {
            for e in &layer.edges {
                write!(out, "{}", m + 1).unwrap();
                for &i in e.nodes() {
                    write!(out, " {}", i + 1).unwrap();
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(None, "missing header"))?;
        let header = parse_ints(header, hline)?;
        if header.len() < 2 || header.len() != 2 + header[1] {
            return Err(Error::parse(Some(hline), "header must be `N M d1 ... dM`"));
        }
        let n = header[0];
        let sizes = &header[2..];
        let mut edges: Vec<Vec<Hyperedge>> = vec![Vec::new(); sizes.len()];
        for (lno, line) in lines {
            let fields = parse_ints(line, lno)?;
            let (&m, nodes) = fields
                .split_first()
                .ok_or_else(|| Error::parse(Some(lno), "empty hyperedge line"))?;
            if m == 0 || m > sizes.len() {
                return Err(Error::parse(Some(lno), format!("layer {m} out of range 1..={}", sizes.len())));
            }
            if nodes.iter().any(|&i| i == 0 || i > n) {
                return Err(Error::parse(Some(lno), format!("node index out of range 1..={n}")));
            }
            if nodes.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::parse(Some(lno), "nodes must be strictly ascending"));
            }
            if nodes.len() != sizes[m - 1] {
                return Err(Error::parse(
                    Some(lno),
                    format!("layer {m} is {}-uniform but line has {} nodes", sizes[m - 1], nodes.len()),
                ));
            }
            edges[m - 1].push(Hyperedge::from_sorted(nodes.iter().map(|i| i - 1).collect()));
        }
        let layers = sizes
            .iter()
            .zip(edges)
            .map(|(&d, e)| Layer::new(n, d, e))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, layers)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text).map_err(|e| e.with_path(path))
    }
}

fn parse_ints(line: &str, lno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(Some(lno), format!("`{t}` is not a nonnegative integer")))
        })
        .collect()
}
