//! Max-min share (MMS) fair allocation of indivisible goods and chores.
//!
//! The crate models fair-division instances over exact rational utilities
//! and provides:
//!
//! * fairness checkers for max-min-share and perverse min-max-share
//!   criteria, including their lambda relaxations ([`check_allocation`]);
//! * per-agent guarantee computation by reduction to identical-machine
//!   scheduling ([`shares`]);
//! * a linear-time round-robin allocator for chores with a tight
//!   `2 - 1/N` factor, plus exact and PTAS solvers for optimal-ratio
//!   allocations of both goods and chores ([`allocators`]);
//! * exact and certified-approximate parallel-machine scheduling engines
//!   ([`scheduling`]);
//! * a brute-force enumeration oracle that validates all of the above on
//!   small instances ([`oracle`]);
//! * the concrete benchmark instances used as regression anchors
//!   ([`fixtures`]).
//!
//! All solver outputs are deterministic functions of their inputs.

pub mod allocators;
pub mod error;
pub mod fixtures;
pub mod model;
pub mod oracle;
pub mod rational;
mod scale;
pub mod scheduling;
pub mod shares;

pub use error::{Error, Result};
pub use model::{
    check_allocation, AgentGuarantee, Allocation, CheckEntry, CheckReport, Criterion,
    GuaranteeProfile, Instance, Kind, RatioResult, RatioValue, ShareKind,
};
pub use rational::Rational;
pub use scheduling::{
    FactorCertificate, Objective, ProcessingTimes, Schedule, SchedulingProblem, SolveMode,
    SolveOutcome, DEFAULT_NODE_BUDGET,
};
