//! The modified TASEP on a circle: transitions, entropy, Parry measure,
//! the determinantal state law and samplers.

mod chain;
mod kernel;
mod state;

pub use chain::{
    build_transition, build_transition_capped, entropy_closed, parry_measure, sample_frozen_process,
    simulate_chain, spectral_radius_numeric, spectrum_of, write_events_csv, ChainSpectrum, JumpEvent,
    ParryChain, StateDistribution, Transition, DEFAULT_STATE_CAP, EIGEN_TOLERANCE, ITERATION_CAP,
};
pub use kernel::{determinantal_state_probability, sine_kernel, window_start, ProjectionKernel};
pub use state::{binomial, CircleState, StateSpace, MAX_CIRCLE};
