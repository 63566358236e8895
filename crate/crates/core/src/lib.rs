//! Exact-arithmetic toolkit for distance invariants of connected graphs.
//!
//! The crate provides:
//!
//! * [`Rat`] — an exact rational number type used everywhere instead of floats,
//! * [`Graph`] — a small undirected graph with BFS-based distance machinery,
//! * [`invariants`] — transmission, proximity, remoteness, average distance,
//!   eccentricities, radius, diameter, center and centroid,
//! * [`families`] — constructors and closed-form values for the named graph
//!   families that show up as extremal cases (paths, cycles, brooms, spiders,
//!   crossed cycles, ...),
//! * [`enumerate`] — exhaustive generation of non-isomorphic trees,
//!   caterpillars and small connected graphs,
//! * [`transforms`] — the tree rewriting steps `t1`..`t10` together with three
//!   drivers that chain them towards extremal families,
//! * [`engine`] — exhaustive extremum search plus a tiny expression language
//!   for bound formulas and conjecture verdicts.

pub mod canon;
pub mod engine;
pub mod enumerate;
pub mod families;
pub mod graph;
pub mod invariants;
pub mod rat;
pub mod transforms;

pub use graph::Graph;
pub use invariants::Profile;
pub use rat::Rat;
