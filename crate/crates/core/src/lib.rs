//! Equitable colourings of wheel-related graph families and the exact
//! mean and variance of the colour-index distribution they induce.
//!
//! The crate builds the families (wheel, double wheel, helm, closed helm,
//! flower, sunflower, closed sunflower, blossom, plus plain cycles), colours
//! them constructively or by exact search, computes the statistics in exact
//! rationals and checks them against published closed forms.

pub mod coloring;
pub mod error;
pub mod families;
pub mod formulas;
pub mod graph;
pub mod oracle;
pub mod par;
pub mod rational;
pub mod stats;
pub mod verify;

pub use coloring::{
    equitable_chromatic_number, find_equitable_coloring, is_equitable, is_proper, Coloring, SolverConfig,
};
pub use error::{Error, Result};
pub use families::{constructive_coloring, generate, FamilyId, FamilyKind};
pub use formulas::{closed_form, corrected_wheel_odd_variance, TheoremId};
pub use graph::{ExportFormat, Graph};
pub use oracle::brute_force_chi_e;
pub use par::Execution;
pub use rational::Rational;
pub use stats::{distribution_of, mean, pmf, stats_from_counts, variance, ChromaticStats, ColorDistribution};
pub use verify::{verify_instance, verify_range, VerificationRecord, VerifyOptions};
