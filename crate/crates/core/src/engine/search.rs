//! Exhaustive extremal search of an invariant expression over an
//! enumerated graph class.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_code, CanonicalCode};
use crate::engine::expr::{eval_expr, EvalError, Expr};
use crate::enumerate::{
    caterpillars, connected_graphs, connected_graphs_extended, free_trees, EnumerateError,
    GraphClass,
};
use crate::graph::Graph;
use crate::invariants::{invariant_profile, InvariantError};
use crate::rat::Rat;

/// Whether the search keeps the largest or the smallest value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Max,
    Min,
}

impl Direction {
    pub fn name(&self) -> &'static str {
        match self {
            Direction::Max => "max",
            Direction::Min => "min",
        }
    }

    pub fn from_name(name: &str) -> Option<Direction> {
        match name {
            "max" => Some(Direction::Max),
            "min" => Some(Direction::Min),
            _ => None,
        }
    }
}

/// Outcome of one exhaustive search: the exact extremum and every graph
/// attaining it, identified by canonical code, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub extremal_value: Rat,
    pub witnesses: Vec<CanonicalCode>,
    pub class_size: usize,
    pub tie_count: usize,
}

/// Errors from the search entry points.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("objective failed to evaluate: {0}")]
    Eval(#[from] EvalError),
    #[error("invariants unavailable: {0}")]
    Invariant(#[from] InvariantError),
    #[error("cannot search an empty graph set")]
    EmptyClass,
}

/// Enumerates a class at order n; `extended` unlocks the larger
/// connected-graph cap.
pub fn enumerate_class(
    class: GraphClass,
    n: usize,
    extended: bool,
) -> Result<Vec<Graph>, EnumerateError> {
    match class {
        GraphClass::Tree => free_trees(n),
        GraphClass::Caterpillar => caterpillars(n),
        GraphClass::Connected => {
            if extended {
                connected_graphs_extended(n)
            } else {
                connected_graphs(n)
            }
        }
    }
}

/// Searches the full class of order n for the extremal objective value.
pub fn search_extremal(
    class: GraphClass,
    n: usize,
    objective: &Expr,
    direction: Direction,
) -> Result<ExtremalResult, SearchError> {
    let graphs = enumerate_class(class, n, false)?;
    search_extremal_in(&graphs, n, objective, direction)
}

/// Searches a pre-enumerated set of graphs. The reduction is associative
/// and commutative and the witness set is sorted, so the result does not
/// depend on how work is split across threads.
pub fn search_extremal_in(
    graphs: &[Graph],
    n: usize,
    objective: &Expr,
    direction: Direction,
) -> Result<ExtremalResult, SearchError> {
    type Partial = Option<(Rat, BTreeSet<CanonicalCode>)>;
    let folded = graphs
        .par_iter()
        .map(|g| -> Result<Partial, SearchError> {
            let profile = invariant_profile(g)?;
            let value = eval_expr(objective, &profile)?;
            let code = canonical_code(g).expect("enumerated graphs are within canon caps");
            let mut witnesses = BTreeSet::new();
            witnesses.insert(code);
            Ok(Some((value, witnesses)))
        })
        .reduce(
            || Ok(None),
            |a, b| {
                let (a, b) = (a?, b?);
                Ok(match (a, b) {
                    (None, x) | (x, None) => x,
                    (Some((va, mut wa)), Some((vb, wb))) => {
                        let keep_a = match direction {
                            Direction::Max => va >= vb,
                            Direction::Min => va <= vb,
                        };
                        if va == vb {
                            wa.extend(wb);
                            Some((va, wa))
                        } else if keep_a {
                            Some((va, wa))
                        } else {
                            Some((vb, wb))
                        }
                    }
                })
            },
        )?;

    let (extremal_value, witness_set) = folded.ok_or(SearchError::EmptyClass)?;
    Ok(ExtremalResult {
        n,
        extremal_value,
        witnesses: witness_set.into_iter().collect(),
        class_size: graphs.len(),
        tie_count: 0,
    }
    .with_tie_count())
}

impl ExtremalResult {
    fn with_tie_count(mut self) -> Self {
        self.tie_count = self.witnesses.len();
        self
    }
}
