//! Quantile grids, reference distributions, moments and Wasserstein distance.

pub mod grid;
pub mod normal;
pub mod reference;

pub use grid::{
    corr, grid_mean, grid_std, midpoints, standardize_to, wasserstein2_sq, MomentTarget,
    QuantileGrid,
};
pub use normal::inverse_normal_cdf;
pub use reference::{
    load_empirical, read_numeric_column, wasserstein2_sq_decomposed, ReferenceDistribution,
    ReferenceKind,
};
