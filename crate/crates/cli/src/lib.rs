//! Command-line front end for the distance-invariant toolkit: argument
//! parsing and dispatch, graph codecs (edge list and graph6), and
//! deterministic report rendering.

pub mod app;
pub mod codec;
pub mod report;

pub use app::run;
