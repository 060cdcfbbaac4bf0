//! Exact samplers for HSBM layers.
//!
//! The stratified sampler groups the `C(n, d)` candidate node sets by
//! community profile. Within the stratum of profile `(r, d - r)` every set is
//! present independently with the same probability, so the number of
//! present sets is `Binomial(C(n/2, r) C(n/2, d - r), p)` and, given that
//! count, the present sets are a uniform subset of the stratum. We draw the
//! count, draw that many distinct ranks, and unrank them into node sets.
//!
//! Seeding: layer `m` uses `stream.child("layer", m)`; stratum `r` of that
//! layer uses `.child("stratum", r)`. The enumeration sampler (a test oracle
//! for small `n`) uses `.child("enumerate", 0)` of the layer stream.

use itertools::Itertools;
use rand::seq::index;
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use super::communities::CommunityVector;
use super::hypergraph::{Hyperedge, Layer, MultilayerHypergraph};
use super::params::ModelParams;
use crate::combinatorics::{binomial_u64, unrank_combination};
use crate::error::{Error, Result};
use crate::rng::SeedStream;

/// Largest number of candidate node sets the enumeration sampler will visit.
pub const ENUMERATION_LIMIT: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SamplingMethod {
    #[default]
    Stratified,
    /// Visit every candidate node set; only feasible for small `n`.
    Enumerate,
}

fn check_inputs(params: &ModelParams, m: usize, sigma: &CommunityVector) -> Result<()> {
    if m >= params.num_layers() {
        return Err(Error::invalid(format!(
            "layer index {m} out of range for {} layers",
            params.num_layers()
        )));
    }
    if sigma.len() != params.n() {
        return Err(Error::SizeMismatch {
            expected: params.n(),
            actual: sigma.len(),
        });
    }
    Ok(())
}

/// Sample layer `m` with the stratified method.
pub fn sample_layer(
    params: &ModelParams,
    m: usize,
    sigma: &CommunityVector,
    stream: &SeedStream,
) -> Result<Layer> {
    check_inputs(params, m, sigma)?;
    let layer_stream = stream.child("layer", m as u64);
    let d = params.layers()[m].d();
    let minus = sigma.members(-1);
    let plus = sigma.members(1);
    let half = minus.len();

    let mut edges = Vec::new();
    for r in 0..=d {
        let p = params.probability(m, r);
        if p == 0.0 || r > half || d - r > half {
            continue;
        }
        let minus_sets = binomial_u64(half as u64, r as u64);
        let plus_sets = binomial_u64(half as u64, (d - r) as u64);
        let size = minus_sets
            .zip(plus_sets)
            .and_then(|(a, b)| a.checked_mul(b))
            .filter(|&s| usize::try_from(s).is_ok())
            .ok_or_else(|| Error::invalid(format!("profile stratum ({r}, {}) too large", d - r)))?;
        let plus_sets = plus_sets.unwrap();

        let mut rng = layer_stream.child("stratum", r as u64).rng();
        let count = Binomial::new(size, p)
            .map_err(|e| Error::invalid(format!("binomial({size}, {p}): {e}")))?
            .sample(&mut rng);
        if count == 0 {
            continue;
        }
        for rank in index::sample(&mut rng, size as usize, count as usize) {
            let rank = rank as u64;
            let a = unrank_combination(rank / plus_sets, half, r);
            let b = unrank_combination(rank % plus_sets, half, d - r);
            let mut nodes: Vec<usize> = a
                .into_iter()
                .map(|i| minus[i])
                .chain(b.into_iter().map(|i| plus[i]))
                .collect();
            nodes.sort_unstable();
            edges.push(Hyperedge::from_sorted(nodes));
        }
    }
    // strata are disjoint, so sorting is enough to canonicalize
    edges.sort_unstable();
    Ok(Layer::from_sorted(d, edges))
}

/// Sample layer `m` by visiting all `C(n, d)` node sets in lexicographic order.
pub fn sample_layer_enumerated<R: Rng + ?Sized>(
    params: &ModelParams,
    m: usize,
    sigma: &CommunityVector,
    rng: &mut R,
) -> Result<Layer> {
    check_inputs(params, m, sigma)?;
    let n = params.n();
    let d = params.layers()[m].d();
    let total = binomial_u64(n as u64, d as u64).unwrap_or(u64::MAX);
    if total > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ENUMERATION_LIMIT as usize,
        });
    }
    let probs: Vec<f64> = (0..=d).map(|r| params.probability(m, r)).collect();
    let mut edges = Vec::new();
    for nodes in (0..n).combinations(d) {
        let r = nodes.iter().filter(|&&i| sigma[i] == -1).count();
        if rng.random_bool(probs[r]) {
            edges.push(Hyperedge::from_sorted(nodes));
        }
    }
    Ok(Layer::from_sorted(d, edges))
}

/// Sample all layers. Layers are drawn concurrently from their own substreams.
pub fn sample_hypergraph(
    params: &ModelParams,
    sigma: &CommunityVector,
    stream: &SeedStream,
    method: SamplingMethod,
) -> Result<MultilayerHypergraph> {
    let layers = (0..params.num_layers())
        .into_par_iter()
        .map(|m| match method {
            SamplingMethod::Stratified => sample_layer(params, m, sigma, stream),
            SamplingMethod::Enumerate => {
                let mut rng = stream.child("layer", m as u64).child("enumerate", 0).rng();
                sample_layer_enumerated(params, m, sigma, &mut rng)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    MultilayerHypergraph::new(params.n(), layers)
}
