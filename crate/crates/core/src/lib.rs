//! Exact Littlewood-Richardson measures, Gelfand-Tsetlin patterns and the
//! plactic monoid, with first-row bounds and a random-matrix comparison.
//!
//! Weights are non-increasing integer vectors of arbitrary size. Every
//! probability is an exact rational; floating point appears only in the
//! random-matrix module and in summary statistics.

pub mod bounds;
pub mod config;
pub mod dims;
pub mod dist;
pub mod error;
pub mod lr;
pub mod measure;
pub mod pattern;
pub mod plactic;
pub mod rmt;
pub mod stats;
pub mod tableau;
pub mod weight;

pub use config::{Caps, Format, RunConfig, CAP_ENV, DEFAULT_CAP};
pub use dims::{count_completions, dim_by_counting, dim_by_product, dim_checked};
pub use dist::{format_rational, parse_rational, ExactDist};
pub use error::{Error, Result};
pub use lr::{
    lr_coefficients, lr_measure, plactic_product_histogram, verify_shift_invariance,
    LRDecomposition, LrTerm,
};
pub use measure::{
    check_identity, first_row_joint, marginal_ak, max_convolution, nu1_from_lr,
    random_real_pattern, rng_for, round_real_pattern, sample_uniform_pattern, IdentityReport,
    PatternSampler, RealGTPattern,
};
pub use pattern::{enumerate_patterns, first_row_vector, GTPattern};
pub use plactic::{
    alpha_tableau, alpha_word, insertion_tableau, knuth_equivalent, lis, plactic_product,
    reading_word, restrict_word, row_insert, PlacticClass,
};
pub use tableau::{enumerate_tableaux, pattern_from_tableau, tableau_from_pattern, Letter, Tableau, Word};
pub use weight::{contragredient, normalized_weights, shift_weight, Weight, YoungDiagram};
