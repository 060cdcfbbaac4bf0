//! Sampler distribution, determinism and structural properties.

mod common;

use hsbm::combinatorics::binomial_f64;
use hsbm::model::{
    aggregate_similarity, community_profile, hyperedge_probability, layer_similarities, sample_communities,
    sample_hypergraph, CommunityVector, LayerParams, ModelParams, MultilayerHypergraph, SamplingMethod,
    SimilarityMatrix,
};
use hsbm::rng::SeedStream;
use proptest::prelude::*;

use common::{chi_square_two_sample, halves};

#[test]
fn profile_counts_match_binomial_means() {
    // 200 seeds; per-profile mean edge count within 4 standard errors
    let n = 20;
    let params = ModelParams::new(n, vec![LayerParams::symmetric(4, &[30.0, 12.0, 5.0]).unwrap()]).unwrap();
    let sigma = CommunityVector::new(halves(n)).unwrap();
    let seeds = 200;
    let mut totals = [0.0f64; 5];
    for seed in 0..seeds {
        let h = sample_hypergraph(&params, &sigma, &SeedStream::new(seed), SamplingMethod::Stratified).unwrap();
        for e in h.layers()[0].edges() {
            totals[community_profile(e.nodes(), sigma.as_slice()).unwrap().minus] += 1.0;
        }
    }
    let half = (n / 2) as u64;
    for (r, total) in totals.iter().enumerate() {
        let size = binomial_f64(half, r as u64) * binomial_f64(half, 4 - r as u64);
        let p = params.probability(0, r);
        let mean = size * p;
        let se = (size * p * (1.0 - p) / seeds as f64).sqrt();
        let observed = total / seeds as f64;
        assert!(
            (observed - mean).abs() <= 4.0 * se,
            "profile {r}: observed {observed}, expected {mean} +- {se}"
        );
    }
}

#[test]
fn balanced_labelings_are_uniform() {
    // the 6 balanced labelings of 4 nodes, 60 000 draws
    let mut rng = SeedStream::new(11).rng();
    let draws = 60_000;
    let mut codes = Vec::with_capacity(draws);
    for _ in 0..draws {
        let sigma = sample_communities(4, &mut rng).unwrap();
        let code = sigma.iter().fold(0u64, |acc, &l| 2 * acc + u64::from(l == 1));
        codes.push(code);
    }
    let mut counts = std::collections::BTreeMap::new();
    for &c in &codes {
        *counts.entry(c).or_insert(0u64) += 1;
    }
    assert_eq!(counts.len(), 6);
    let expected = draws as f64 / 6.0;
    let stat: f64 = counts.values().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    // chi-square with 5 degrees of freedom; 20.5 is the 0.999 quantile
    assert!(stat < 20.5, "chi-square {stat}, counts {counts:?}");
}

#[test]
fn sampler_is_deterministic_and_layers_independent_of_method_order() {
    let params = ModelParams::replicated(12, LayerParams::symmetric(3, &[8.0, 3.0]).unwrap(), 3).unwrap();
    let sigma = CommunityVector::new(halves(12)).unwrap();
    let stream = SeedStream::new(5);
    let a = sample_hypergraph(&params, &sigma, &stream, SamplingMethod::Stratified).unwrap();
    let b = sample_hypergraph(&params, &sigma, &stream, SamplingMethod::Stratified).unwrap();
    assert_eq!(a.to_text(), b.to_text());
    let c = sample_hypergraph(&params, &sigma, &SeedStream::new(6), SamplingMethod::Stratified).unwrap();
    assert_ne!(a.to_text(), c.to_text());
    // i.i.d. layers come from distinct substreams
    assert_ne!(a.layers()[0], a.layers()[1]);
}

#[test]
fn label_flip_mirrors_profiles() {
    // swapping the communities maps profile r to d - r; with symmetric alpha the
    // per-profile totals over many seeds agree in distribution
    let n = 10;
    let params = ModelParams::new(n, vec![LayerParams::symmetric(3, &[6.0, 2.0]).unwrap()]).unwrap();
    let sigma = CommunityVector::new(halves(n)).unwrap();
    let flipped = sigma.negated();
    let mut a = vec![Vec::new(); 4];
    let mut b = vec![Vec::new(); 4];
    for seed in 0..1000u64 {
        let stream = SeedStream::new(seed);
        let ha = sample_hypergraph(&params, &sigma, &stream.child("a", 0), SamplingMethod::Stratified).unwrap();
        let hb = sample_hypergraph(&params, &flipped, &stream.child("b", 0), SamplingMethod::Stratified).unwrap();
        let mut ca = [0u64; 4];
        let mut cb = [0u64; 4];
        for e in ha.layers()[0].edges() {
            ca[community_profile(e.nodes(), sigma.as_slice()).unwrap().minus] += 1;
        }
        for e in hb.layers()[0].edges() {
            cb[community_profile(e.nodes(), sigma.as_slice()).unwrap().plus] += 1;
        }
        for r in 0..4 {
            a[r].push(ca[r]);
            b[r].push(cb[r]);
        }
    }
    for r in 0..4 {
        let p = chi_square_two_sample(&a[r], &b[r], 20);
        assert!(p > 0.001, "profile {r}: p = {p}");
    }
}

#[test]
fn probability_examples() {
    // alpha ln N / C(N - 1, d - 1)
    let p = hyperedge_probability(18.8, 50, 4).unwrap();
    assert!((p - 18.8 * 50f64.ln() / 18424.0).abs() < 1e-15);
    assert!((p - 0.0039918602).abs() < 1e-10);
    assert_eq!(hyperedge_probability(1e9, 10, 3).unwrap(), 1.0);
    assert_eq!(hyperedge_probability(0.0, 10, 3).unwrap(), 0.0);
    assert!(hyperedge_probability(-1.0, 10, 3).is_err());
    assert!(hyperedge_probability(1.0, 10, 1).is_err());
}

#[test]
fn asymmetric_parameters_rejected() {
    let layer = LayerParams::new(3, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
    assert!(matches!(
        ModelParams::new(10, vec![layer.clone()]),
        Err(hsbm::Error::Asymmetric { .. })
    ));
    assert!(ModelParams::new_unchecked_symmetry(10, vec![layer]).is_ok());
}

fn arb_instance() -> impl Strategy<Value = (ModelParams, u64)> {
    (2usize..=7, 1usize..=3, 0u64..1000)
        .prop_flat_map(|(half_n, m, seed)| {
            let n = 2 * half_n;
            (2usize..=n.min(5)).prop_flat_map(move |d| {
                prop::collection::vec(0.0f64..40.0, d / 2 + 1).prop_map(move |half| {
                    let layer = LayerParams::symmetric(d, &half).unwrap();
                    (ModelParams::replicated(n, layer, m).unwrap(), seed)
                })
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hypergraph_and_similarity_invariants((params, seed) in arb_instance()) {
        let n = params.n();
        let stream = SeedStream::new(seed);
        let sigma = sample_communities(n, &mut stream.child("communities", 0).rng()).unwrap();
        let h = sample_hypergraph(&params, &sigma, &stream, SamplingMethod::Stratified).unwrap();
        prop_assert_eq!(h.layers().len(), params.num_layers());
        for (m, layer) in h.layers().iter().enumerate() {
            let d = params.layers()[m].d();
            for pair in layer.edges().windows(2) {
                prop_assert!(pair[0] < pair[1]);
            }
            for e in layer.edges() {
                prop_assert_eq!(e.len(), d);
                prop_assert!(e.nodes().windows(2).all(|w| w[0] < w[1]));
                prop_assert!(*e.nodes().last().unwrap() < n);
                let r = community_profile(e.nodes(), sigma.as_slice()).unwrap().minus;
                prop_assert!(params.probability(m, r) > 0.0);
            }
        }
        let text = h.to_text();
        let parsed = MultilayerHypergraph::from_text(&text).unwrap();
        prop_assert_eq!(&parsed, &h);

        let per_layer = layer_similarities(&h).unwrap();
        let w = aggregate_similarity(&h).unwrap();
        for i in 0..n {
            prop_assert_eq!(w.get(i, i), 0);
            for j in 0..n {
                prop_assert_eq!(w.get(i, j), w.get(j, i));
            }
            // each hyperedge through i contributes d - 1 to row i
            let row: u32 = w.row(i).iter().sum();
            let expected: usize = h.layers().iter().map(|l| {
                l.edges().iter().filter(|e| e.nodes().contains(&i)).count() * (l.d() - 1)
            }).sum();
            prop_assert_eq!(row as usize, expected);
        }
        let summed: u32 = per_layer.iter().map(|s| s.get(0, 1)).sum();
        prop_assert_eq!(summed, w.get(0, 1));
        prop_assert_eq!(SimilarityMatrix::from_csv(&w.to_csv()).unwrap(), w);
    }
}
