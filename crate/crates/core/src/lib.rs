//! Short-run IS-LM model with a zero lower bound on the nominal rate.
//!
//! [`params`] holds the exogenous inputs, [`model`] the behavioural
//! equations and [`solver`] the closed-form joint equilibrium under either
//! money-supply or interest-rate control. [`scenario`], [`compare`] and
//! [`curves`] implement the three-slot what-if engine on top, and
//! [`document`] / [`report`] define the JSON formats used by front ends.

pub mod compare;
pub mod curves;
pub mod document;
pub mod model;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod params;
pub mod regime;
pub mod report;
pub mod scenario;
pub mod solver;

pub use compare::{compare, ComparisonDelta, ComparisonRow, ComparisonTable};
pub use curves::{
    default_grid, sample_curves, CurveError, CurveKind, CurveSeries, Grid, GridSpec, Plot,
};
pub use document::{DocumentError, RegimeTag, ScenarioDocument, ScenarioEntry};
pub use model::GdpComposition;
pub use params::{ParamName, ParamRange, ParameterError, ParameterValues, Parameters};
pub use regime::{PolicyRegime, RateTarget, RegimeError};
pub use report::{ScenarioResult, SolveReport};
pub use scenario::{Scenario, ScenarioError, ScenarioSet, Slot, SLOT_COUNT};
pub use solver::{
    fiscal_multiplier, solve_equilibrium, unconstrained_intersection, Diagnostic, Equilibrium,
    MultiplierError, EPSILON,
};
