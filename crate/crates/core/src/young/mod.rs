//! Partitions, maya words, the Young graph and tableau samplers.

mod counting;
mod maya;
mod partition;
mod sampling;

pub use counting::{
    backward_step_distribution, count_skew, count_skew_determinant, count_skew_dp, dimension, factorial,
    forward_step_distribution, plancherel_identity_check, plancherel_identity_check_bounded, SkewCounts,
    PLANCHEREL_CHECK_BOUND,
};
pub use maya::{maya_decode, maya_encode, minimal_window, MayaWord};
pub use partition::{Partition, SkewShape};
pub use sampling::{
    forward_probabilities_f64, sample_plancherel_path, sample_skew_with, sample_uniform_skew_path, uniform_below,
    PathTableau,
};
