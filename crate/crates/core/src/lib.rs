//! Exact piecewise-linear interval dynamics: δ-crookedness checks, component
//! towers, attraction analysis and conjugacy invariants for self-maps of
//! `[0, 1]` with rational breakpoints.

pub mod constructors;
pub mod crookedness;
pub mod error;
pub mod exec;
pub mod format;
pub mod geometry;
pub mod invariants;
pub mod inverse_limit;
pub mod pl_map;
pub mod rational;

pub use error::{Error, Result};
pub use exec::Execution;
pub use geometry::{hausdorff_graph_distance, DistanceBound};
pub use pl_map::{
    BreakpointLimit, Component, DiagonalClass, Direction, MonotoneRun, PlMap, Point, PreimageSet,
    Restriction,
};
pub use rational::Rational;
