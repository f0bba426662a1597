//! Optimal non-subsidising regulation: the four-segment mechanism and the search over
//! exclusion cutoffs.

mod mechanism;
mod outer;

pub use mechanism::{
    inner_solve, phi, terminal_quantity, InnerSolution, Mechanism, PolicyKind, Pool, Segment, StructureFlags,
};
pub use outer::{mbmc_residual, outer_solve, solve, OuterTrace, RegulationPolicy};
