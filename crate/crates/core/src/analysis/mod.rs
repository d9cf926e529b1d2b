//! Weight distributions, codeword types and covering radii.

pub mod covering;
pub mod weights;

pub use covering::{
    choose_engine, compose_bound, covering_radius, distance_to_code, exhaustive, gray_syndrome, profile_dp,
    CoveringRadiusResult, Engine, ExhaustiveScan, ScanBest,
};
pub use weights::{
    count_types, weight_distribution, weight_distribution_with, Metric, SymbolWeights, WeightDistribution,
};
