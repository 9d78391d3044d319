//! Seeded simulation: seeing-probability estimates, the red grid, and the
//! parameter-changing couplings.

mod coupling;
mod estimate;
mod grid;
mod rng;

pub use coupling::{
    chain_window, coupling_F, coupling_chain_demo, plan_parameter_path, ChainReport,
    CouplingOutput, CouplingStage, DEFAULT_STAGE_CAP,
};
pub use estimate::{estimate_seen_probability, estimate_x_seen_in_y, Estimate, EstimateReport};
pub use grid::{admissible_path_exists, red_grid, RedGrid};
pub use rng::{sample_bits, sample_sequence, RngConfig, GENERATOR};
