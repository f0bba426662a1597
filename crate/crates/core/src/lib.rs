//! Optimal regulation of a monopolist with privately known marginal cost when the
//! regulator can tax but never subsidise.

pub mod error;
pub mod export;
pub mod firm;
pub mod gate;
pub mod laissez_faire;
pub mod market;
pub mod numeric;
pub mod oracle;
pub mod policy;
pub mod tax;
pub mod welfare;

pub use error::{Error, Result};
pub use export::{summary_block, validate_schedule_csv, Summary};
pub use firm::{best_response, ic_audit, AuditReport, BestResponse};
pub use gate::{gate, GateReport};
pub use laissez_faire::{lf_cutoff, lf_schedule, lf_welfare, LaissezFaireSchedule};
pub use market::{
    check_assumptions, AssumptionReport, CostDistribution, CostSpec, DemandCurve, DemandSpec,
    EnvironmentFile, MarketEnvironment, SolverSettings,
};
pub use oracle::{brute_force_mechanism, ClosedFormLinearUniform, GridMechanism};
pub use policy::{inner_solve, outer_solve, solve, PolicyKind, RegulationPolicy, Segment};
pub use tax::{build_tax, implementing_tax, ProgressivityReport, TaxSchedule};
