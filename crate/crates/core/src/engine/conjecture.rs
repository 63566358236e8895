//! Built-in extremal claims and their verification reports.
//!
//! A [`ConjectureSpec`] pairs an objective expression with a direction, a
//! claimed extremal family and optionally a claimed bound in n (possibly
//! different per parity). Verification runs the exhaustive search and only
//! reports verdicts; it never asserts, so a claim that turns out false
//! still produces a complete report.

use serde::Serialize;

use crate::canon::canonical_code;
use crate::engine::expr::{eval_expr, eval_in_n, parse_expr, print_expr, Expr};
use crate::engine::search::{
    enumerate_class, search_extremal_in, Direction, SearchError,
};
use crate::canon::CanonicalCode;
use crate::enumerate::GraphClass;
use crate::families::{FamilyId, FamilySpec};
use crate::invariants::invariant_profile;
use crate::rat::Rat;

/// Claimed extremal family, possibly parity dependent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimedFamily {
    Always(FamilyId),
    ByParity { odd: FamilyId, even: FamilyId },
}

impl ClaimedFamily {
    pub fn family_at(&self, n: usize) -> FamilyId {
        match *self {
            ClaimedFamily::Always(f) => f,
            ClaimedFamily::ByParity { odd, even } => {
                if n % 2 == 1 {
                    odd
                } else {
                    even
                }
            }
        }
    }
}

/// Claimed bound formulas in n, by parity.
#[derive(Debug, Clone)]
pub struct ParityBound {
    pub odd: Expr,
    pub even: Expr,
}

impl ParityBound {
    fn at(&self, n: usize) -> &Expr {
        if n % 2 == 1 {
            &self.odd
        } else {
            &self.even
        }
    }
}

/// One extremal claim over a graph class.
#[derive(Debug, Clone)]
pub struct ConjectureSpec {
    pub id: &'static str,
    pub class: GraphClass,
    pub objective: Expr,
    pub direction: Direction,
    pub family: ClaimedFamily,
    pub bound: Option<ParityBound>,
}

/// Per-order verification outcome. Verdicts are absent when undefined:
/// no bound formula, or the claimed family does not exist at this order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub class_size: usize,
    pub extremal_value: Rat,
    pub bound_value: Option<Rat>,
    pub family_value: Option<Rat>,
    pub family_is_extremal: Option<bool>,
    pub bound_respected: Option<bool>,
    pub bound_tight: Option<bool>,
    pub witnesses: Vec<CanonicalCode>,
}

/// Full report over a range of orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub id: String,
    pub class: String,
    pub objective: String,
    pub direction: Direction,
    pub rows: Vec<ConjectureRow>,
}

fn must_parse(text: &str) -> Expr {
    parse_expr(text).expect("catalog formulas are well formed")
}

/// The six built-in claims: three conjectured graph statements and the
/// corresponding tree statements.
pub fn builtin_conjectures() -> Vec<ConjectureSpec> {
    vec![
        ConjectureSpec {
            id: "con1-trees",
            class: GraphClass::Tree,
            objective: must_parse("avg_distance - proximity"),
            direction: Direction::Max,
            family: ClaimedFamily::Always(FamilyId::Spider3),
            bound: None,
        },
        ConjectureSpec {
            id: "con1-graphs",
            class: GraphClass::Connected,
            objective: must_parse("avg_distance - proximity"),
            direction: Direction::Max,
            family: ClaimedFamily::Always(FamilyId::Spider3),
            bound: None,
        },
        ConjectureSpec {
            id: "con2-trees",
            class: GraphClass::Tree,
            objective: must_parse("avg_ecc - remoteness"),
            direction: Direction::Max,
            family: ClaimedFamily::Always(FamilyId::Path),
            bound: Some(ParityBound {
                odd: must_parse("n/4 - (2*n+1)/(4*n)"),
                even: must_parse("(n-2)/4"),
            }),
        },
        ConjectureSpec {
            id: "con2-graphs",
            class: GraphClass::Connected,
            objective: must_parse("avg_ecc - remoteness"),
            direction: Direction::Max,
            family: ClaimedFamily::Always(FamilyId::Cycle),
            bound: Some(ParityBound {
                odd: must_parse("(3*n+1)/4 * (n-1)/n - n/2"),
                even: must_parse("(n-1)/4 - 1/(4*n-4)"),
            }),
        },
        ConjectureSpec {
            id: "con3-trees",
            class: GraphClass::Tree,
            objective: must_parse("remoteness - radius"),
            direction: Direction::Min,
            family: ClaimedFamily::ByParity {
                odd: FamilyId::Path,
                even: FamilyId::Broom,
            },
            bound: Some(ParityBound {
                odd: must_parse("1/2"),
                even: must_parse("n/(2*(n-1))"),
            }),
        },
        ConjectureSpec {
            id: "con3-graphs",
            class: GraphClass::Connected,
            objective: must_parse("remoteness - radius"),
            direction: Direction::Min,
            family: ClaimedFamily::ByParity {
                odd: FamilyId::CrossedCycle,
                even: FamilyId::Cycle,
            },
            bound: Some(ParityBound {
                odd: must_parse("(3-n)/4"),
                even: must_parse("n*n/(4*n-4) - n/2"),
            }),
        },
    ]
}

/// Looks up a built-in claim by id.
pub fn conjecture_by_id(id: &str) -> Option<ConjectureSpec> {
    builtin_conjectures().into_iter().find(|c| c.id == id)
}

/// Runs the exhaustive search for every order in the inclusive range and
/// scores the claim. `extended` unlocks the larger connected-graph cap.
pub fn verify_conjecture(
    spec: &ConjectureSpec,
    min_n: usize,
    max_n: usize,
    extended: bool,
) -> Result<ConjectureReport, SearchError> {
    let mut rows = Vec::new();
    for n in min_n..=max_n {
        let graphs = enumerate_class(spec.class, n, extended)?;
        let result = search_extremal_in(&graphs, n, &spec.objective, spec.direction)?;

        let bound_value = match &spec.bound {
            Some(b) => Some(eval_in_n(b.at(n), n)?),
            None => None,
        };
        let family_graph = FamilySpec {
            family: spec.family.family_at(n),
            n,
        }
        .build()
        .ok();
        let (family_value, family_is_extremal) = match &family_graph {
            Some(g) => {
                let profile = invariant_profile(g)?;
                let value = eval_expr(&spec.objective, &profile)?;
                let code = canonical_code(g).expect("families are within canon caps");
                (Some(value), Some(result.witnesses.contains(&code)))
            }
            None => (None, None),
        };
        let bound_respected = bound_value.as_ref().map(|b| match spec.direction {
            Direction::Max => result.extremal_value <= *b,
            Direction::Min => result.extremal_value >= *b,
        });
        let bound_tight = bound_value.as_ref().map(|b| result.extremal_value == *b);

        rows.push(ConjectureRow {
            n,
            class_size: result.class_size,
            extremal_value: result.extremal_value,
            bound_value,
            family_value,
            family_is_extremal,
            bound_respected,
            bound_tight,
            witnesses: result.witnesses,
        });
    }
    Ok(ConjectureReport {
        id: spec.id.to_string(),
        class: spec.class.name().to_string(),
        objective: print_expr(&spec.objective),
        direction: spec.direction,
        rows,
    })
}
