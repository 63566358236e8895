//! Local tree rewrites with certified before/after accounting.
//!
//! Each rewrite takes a graph, checks its preconditions, and either returns a
//! [`TransformTrace`] or a [`TransformError`] naming the precondition that
//! failed.  A trace carries both endpoint graphs and profiles plus every
//! inequality the rewrite is supposed to guarantee, evaluated on the actual
//! numbers, so a driver (or a test) can audit a whole rewrite sequence after
//! the fact.  Errors double as dispatch signals: drivers use them to decide
//! which rewrite to try next, so their names describe the shape that was
//! rejected rather than a generic failure.

mod drivers;
mod rules;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::Graph;
use crate::invariants::{invariant_profile, Profile};
use crate::rat::Rat;

pub use drivers::{
    drive_max_avgdist_minus_proximity, drive_max_ecc_minus_remoteness,
    drive_min_remoteness_minus_radius, rho_minus_r_checkpoints, terminal_graph,
};
pub use rules::{
    normalize_leaf_positions, t10_double_extend_equal, t1_leaf_merge, t2_balance, t3_bfs_reduce,
    t4_leaf_to_diameter_end, t5_split_branches, t6_caterpillarize, t7_extend_single_centroid,
    t8_extend_two_centroids, t9_rebalance_centroid_leaves,
};

/// Identifies which rewrite produced a trace entry.  The `Terminal*` variants
/// are driver bookkeeping steps rather than standalone rewrites: they record
/// the comparisons and final adjustments a driver performs when it reaches a
/// graph none of the rewrites accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    /// Paired leaf shifts that gather pendant leaves around the centroid.
    Normalize,
    /// Final entry recording the terminal graph's value next to the values of
    /// the candidate extremal families of the same order.
    TerminalCompare,
    /// Re-attaches the last off-path leaf to the diametric end.
    TerminalExtend,
    /// Re-hangs the last off-path leaf onto the spine centre.
    TerminalRehang,
}

impl RuleId {
    pub fn name(self) -> &'static str {
        match self {
            RuleId::T1 => "t1",
            RuleId::T2 => "t2",
            RuleId::T3 => "t3",
            RuleId::T4 => "t4",
            RuleId::T5 => "t5",
            RuleId::T6 => "t6",
            RuleId::T7 => "t7",
            RuleId::T8 => "t8",
            RuleId::T9 => "t9",
            RuleId::T10 => "t10",
            RuleId::Normalize => "normalize",
            RuleId::TerminalCompare => "terminal-compare",
            RuleId::TerminalExtend => "terminal-extend",
            RuleId::TerminalRehang => "terminal-rehang",
        }
    }
}

/// How a recorded quantity must relate to its bound for the claim to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `actual >= bound`
    Ge,
    /// `actual <= bound`
    Le,
    /// `actual == bound`
    Eq,
}

/// One audited statement about a rewrite: the measured change of a quantity
/// next to the bound the rewrite promises for it.  `holds` is evaluated
/// honestly from `actual` and `bound`; a driver never edits it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaClaim {
    pub quantity: String,
    pub relation: Relation,
    pub bound: Rat,
    pub actual: Rat,
    pub holds: bool,
}

impl DeltaClaim {
    pub fn new(quantity: &str, relation: Relation, bound: Rat, actual: Rat) -> Self {
        let holds = match relation {
            Relation::Ge => actual >= bound,
            Relation::Le => actual <= bound,
            Relation::Eq => actual == bound,
        };
        DeltaClaim { quantity: quantity.to_string(), relation, bound, actual, holds }
    }
}

/// Full record of one rewrite application.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransformTrace {
    pub rule: RuleId,
    pub before: Graph,
    pub before_profile: Profile,
    pub after: Graph,
    pub after_profile: Profile,
    /// Named scalars the rewrite used (path lengths, component sizes, vertex
    /// ids, ...).  Vertex ids and counts are stored as exact rationals so the
    /// map stays homogeneous.
    pub locals: BTreeMap<String, Rat>,
    /// Preconditions the rewrite checked, by name.  Every entry is `true`;
    /// a failed check aborts with a `TransformError` instead of tracing.
    pub precondition_verdicts: BTreeMap<String, bool>,
    pub claims: Vec<DeltaClaim>,
}

impl TransformTrace {
    pub(crate) fn build(
        rule: RuleId,
        before: Graph,
        after: Graph,
        locals: BTreeMap<String, Rat>,
        precondition_verdicts: BTreeMap<String, bool>,
        make_claims: impl FnOnce(&Profile, &Profile) -> Vec<DeltaClaim>,
    ) -> Self {
        let before_profile =
            invariant_profile(&before).expect("rewrite input was profiled before mutation");
        let after_profile =
            invariant_profile(&after).expect("rewrite output must stay connected");
        let claims = make_claims(&before_profile, &after_profile);
        TransformTrace {
            rule,
            before,
            before_profile,
            after,
            after_profile,
            locals,
            precondition_verdicts,
            claims,
        }
    }

    /// True when every recorded claim holds.
    pub fn all_claims_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }

    pub fn claim(&self, quantity: &str) -> Option<&DeltaClaim> {
        self.claims.iter().find(|c| c.quantity == quantity)
    }

    pub fn local(&self, name: &str) -> Option<Rat> {
        self.locals.get(name).copied()
    }
}

/// Why a rewrite refused its input.  Several variants are expected control
/// flow for the drivers (for example [`TransformError::ThreeLegSpider`] tells
/// the merge driver to switch to leg balancing).
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("input must be a tree")]
    NotATree,
    #[error("input must be a connected graph with at least two vertices")]
    NotConnected,
    #[error("input must be a caterpillar")]
    NotACaterpillar,
    #[error("input must not be a path")]
    IsPath,
    #[error("tree has no vertex of degree 3 or more")]
    NoBranchVertex,
    #[error("tree is a spider with exactly three legs")]
    ThreeLegSpider,
    #[error("spider with four equal legs: merging its two shortest legs is not covered")]
    FourEqualLegSpider,
    #[error("input must be a spider with exactly three legs")]
    NotAThreeLegSpider,
    #[error("longest and shortest legs already differ by at most one")]
    AlreadyBalanced,
    #[error("a leg holds at least half of the vertices")]
    LegTooLong,
    #[error("every leaf lies on the diametric path")]
    NoOffPathLeaf,
    #[error("a branch vertex sits on the far half of the diametric path")]
    BranchOnFarHalf,
    #[error("no branch pair straddles the middle of the diametric path")]
    NoSplitPair,
    #[error("expected {expected} centroidal vertices, found {found}")]
    CentroidCount { expected: usize, found: usize },
    #[error("spine vertices past the centroid have extra leaves in both orientations")]
    FarHalfNotBare,
    #[error("a non-centroidal spine vertex carries extra leaves")]
    SidesNotBare,
    #[error("the two centroidal vertices have equal degrees")]
    EqualCentroidDegrees,
    #[error("the two centroidal vertices have different degrees")]
    UnequalCentroidDegrees,
}
