//! Costs, deviations, best responses, equilibrium certificates and
//! best-response dynamics. All comparisons are exact.

mod cost;
mod deviation;
mod dynamics;
mod equilibrium;
mod kernel;

pub use cost::{agent_cost, social_cost, CostBreakdown};
pub use deviation::{apply_deviation, Deviation, DeviationKind};
pub use dynamics::{DynamicsStep, Schedule, Trajectory};
pub use equilibrium::{
    BestResponse, EquilibriumCertificate, Game, Mode, Verdict, Witness, DEFAULT_EXACT_CAP,
};
