//! Sampling `(sigma, A)` from the symmetric multilayer HSBM and building
//! similarity matrices.

mod communities;
mod hypergraph;
mod params;
mod sampler;
mod similarity;

pub use communities::{community_profile, sample_communities, validate_labels, CommunityVector, Profile};
pub use hypergraph::{Hyperedge, Layer, MultilayerHypergraph};
pub use params::{hyperedge_probability, LayerParams, ModelParams};
pub use sampler::{
    sample_hypergraph, sample_layer, sample_layer_enumerated, SamplingMethod, ENUMERATION_LIMIT,
};
pub use similarity::{
    aggregate, aggregate_similarity, layer_similarities, similarity_matrix, SimilarityMatrix,
};
