//! Deterministic report documents.
//!
//! Every report is rendered from plain data with a stable field order,
//! sorted witness lists and rationals as exact `"p/q"` strings, so running
//! the same command twice yields byte-identical output.  Wall-clock timing
//! is deliberately not part of any document — the tool prints it to stderr —
//! because embedding it would break that guarantee.

use std::collections::BTreeMap;

use dit_core::canon::CanonicalCode;
use dit_core::engine::{ConjectureReport, ExtremalResult};
use dit_core::invariants::Profile;
use dit_core::rat::Rat;
use dit_core::transforms::{Relation, TransformTrace};
use dit_core::Graph;
use serde::Serialize;

use crate::codec::encode_graph6;

fn graph6_of(g: &Graph) -> String {
    encode_graph6(g).expect("reported graphs fit the graph6 cap")
}

/// Top-level envelope: tool version, echoed command line, payload.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub tool_version: &'static str,
    pub command: String,
    #[serde(flatten)]
    pub body: Body,
}

impl Report {
    pub fn new(command: String, body: Body) -> Report {
        Report {
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            body,
        }
    }
}

/// Subcommand-specific payload, tagged by its kind.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Body {
    Profile(ProfileDoc),
    Graph(GraphDoc),
    Enumeration(EnumerationDoc),
    Search(SearchDoc),
    Conjecture(ConjectureDoc),
    Trace(TraceDoc),
}

/// Full invariant profile of one graph.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProfileDoc {
    pub n: usize,
    pub m: usize,
    pub graph6: String,
    pub radius: u32,
    pub diameter: u32,
    pub avg_ecc: Rat,
    pub proximity: Rat,
    pub remoteness: Rat,
    pub avg_distance: Rat,
    pub centers: Vec<usize>,
    pub centroids: Vec<usize>,
    pub ecc_of: Vec<u32>,
    pub transmission_of: Vec<u64>,
    pub pi_of: Vec<Rat>,
}

impl ProfileDoc {
    pub fn new(g: &Graph, p: &Profile) -> ProfileDoc {
        ProfileDoc {
            n: p.n,
            m: p.m,
            graph6: graph6_of(g),
            radius: p.radius,
            diameter: p.diameter,
            avg_ecc: p.avg_ecc,
            proximity: p.proximity,
            remoteness: p.remoteness,
            avg_distance: p.avg_distance,
            centers: p.centers.clone(),
            centroids: p.centroids.clone(),
            ecc_of: p.ecc_of.clone(),
            transmission_of: p.transmission_of.clone(),
            pi_of: p.pi_of.clone(),
        }
    }
}

/// One constructed graph (the `family` subcommand).
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphDoc {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub graph6: String,
    pub edges: Vec<(usize, usize)>,
}

impl GraphDoc {
    pub fn new(family: &str, g: &Graph) -> GraphDoc {
        GraphDoc {
            family: family.to_string(),
            n: g.n(),
            m: g.m(),
            graph6: graph6_of(g),
            edges: g.edges(),
        }
    }
}

/// An enumerated class at one order.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumerationDoc {
    pub class: &'static str,
    pub n: usize,
    pub extended: bool,
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graphs: Option<Vec<String>>,
}

/// A graph attaining an extremum, in both identities it is reported under.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessDoc {
    pub code: String,
    pub graph6: String,
}

impl WitnessDoc {
    pub fn new(code: &CanonicalCode) -> WitnessDoc {
        let g = code.to_graph().expect("witness codes decode");
        WitnessDoc {
            code: code.to_string(),
            graph6: graph6_of(&g),
        }
    }
}

/// Result of one exhaustive extremal search.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchDoc {
    pub class: &'static str,
    pub n: usize,
    pub objective: String,
    pub direction: &'static str,
    pub extremal_value: Rat,
    pub class_size: usize,
    pub tie_count: usize,
    pub witnesses: Vec<WitnessDoc>,
}

impl SearchDoc {
    pub fn new(
        class: &'static str,
        objective: String,
        direction: &'static str,
        r: &ExtremalResult,
    ) -> SearchDoc {
        SearchDoc {
            class,
            n: r.n,
            objective,
            direction,
            extremal_value: r.extremal_value,
            class_size: r.class_size,
            tie_count: r.tie_count,
            witnesses: r.witnesses.iter().map(WitnessDoc::new).collect(),
        }
    }
}

/// One row of a verified claim: the exhaustive extremum at order n next to
/// the claimed family and bound.  Verdict fields are `null` when undefined
/// (no bound formula, or the family does not exist at this order).
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConjectureRowDoc {
    pub n: usize,
    pub class_size: usize,
    pub extremal_value: Rat,
    pub bound_value: Option<Rat>,
    pub family_value: Option<Rat>,
    pub family_is_extremal: Option<bool>,
    pub bound_respected: Option<bool>,
    pub bound_tight: Option<bool>,
    pub witnesses: Vec<WitnessDoc>,
}

/// A verified claim over a range of orders.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConjectureDoc {
    pub id: String,
    pub class: String,
    pub objective: String,
    pub direction: String,
    pub rows: Vec<ConjectureRowDoc>,
}

impl ConjectureDoc {
    pub fn new(report: &ConjectureReport) -> ConjectureDoc {
        ConjectureDoc {
            id: report.id.clone(),
            class: report.class.clone(),
            objective: report.objective.clone(),
            direction: report.direction.name().to_string(),
            rows: report
                .rows
                .iter()
                .map(|row| ConjectureRowDoc {
                    n: row.n,
                    class_size: row.class_size,
                    extremal_value: row.extremal_value,
                    bound_value: row.bound_value,
                    family_value: row.family_value,
                    family_is_extremal: row.family_is_extremal,
                    bound_respected: row.bound_respected,
                    bound_tight: row.bound_tight,
                    witnesses: row.witnesses.iter().map(WitnessDoc::new).collect(),
                })
                .collect(),
        }
    }
}

/// One audited claim of a rewrite step.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClaimDoc {
    pub quantity: String,
    pub relation: Relation,
    pub bound: Rat,
    pub actual: Rat,
    pub holds: bool,
}

/// One rewrite application inside a trace.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StepDoc {
    pub rule: &'static str,
    pub before: String,
    pub after: String,
    pub locals: BTreeMap<String, Rat>,
    pub preconditions: BTreeMap<String, bool>,
    pub claims: Vec<ClaimDoc>,
}

impl StepDoc {
    pub fn new(t: &TransformTrace) -> StepDoc {
        StepDoc {
            rule: t.rule.name(),
            before: graph6_of(&t.before),
            after: graph6_of(&t.after),
            locals: t.locals.clone(),
            preconditions: t.precondition_verdicts.clone(),
            claims: t
                .claims
                .iter()
                .map(|c| ClaimDoc {
                    quantity: c.quantity.clone(),
                    relation: c.relation,
                    bound: c.bound,
                    actual: c.actual,
                    holds: c.holds,
                })
                .collect(),
        }
    }
}

/// A full rewrite or driver run.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceDoc {
    pub rule: String,
    pub input: String,
    pub terminal: String,
    pub all_claims_hold: bool,
    pub steps: Vec<StepDoc>,
}

impl TraceDoc {
    pub fn new(rule: &str, input: &Graph, terminal: &Graph, trace: &[TransformTrace]) -> TraceDoc {
        TraceDoc {
            rule: rule.to_string(),
            input: graph6_of(input),
            terminal: graph6_of(terminal),
            all_claims_hold: trace.iter().all(TransformTrace::all_claims_hold),
            steps: trace.iter().map(StepDoc::new).collect(),
        }
    }
}

/// Serializes a report as one JSON line.
pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string(report).expect("report documents serialize");
    s.push('\n');
    s
}

fn push_opt<T: std::fmt::Display>(out: &mut String, v: &Option<T>) {
    if let Some(v) = v {
        out.push_str(&v.to_string());
    }
}

/// Renders a verified claim as a per-order CSV table.
pub fn conjecture_csv(doc: &ConjectureDoc) -> String {
    let mut out = String::from(
        "n,classSize,extremalValue,boundValue,familyValue,\
         familyIsExtremal,boundRespected,boundTight,witnesses\n",
    );
    for row in &doc.rows {
        out.push_str(&format!("{},{},{},", row.n, row.class_size, row.extremal_value));
        push_opt(&mut out, &row.bound_value);
        out.push(',');
        push_opt(&mut out, &row.family_value);
        out.push(',');
        push_opt(&mut out, &row.family_is_extremal);
        out.push(',');
        push_opt(&mut out, &row.bound_respected);
        out.push(',');
        push_opt(&mut out, &row.bound_tight);
        out.push(',');
        let graph6s: Vec<&str> = row.witnesses.iter().map(|w| w.graph6.as_str()).collect();
        out.push_str(&graph6s.join(";"));
        out.push('\n');
    }
    out
}

/// Renders a report as plain text, one `key: value` line per field.
pub fn to_text(report: &Report) -> String {
    let mut out = String::new();
    match &report.body {
        Body::Profile(doc) => {
            out.push_str(&format!("n: {}\n", doc.n));
            out.push_str(&format!("m: {}\n", doc.m));
            out.push_str(&format!("graph6: {}\n", doc.graph6));
            out.push_str(&format!("radius: {}\n", doc.radius));
            out.push_str(&format!("diameter: {}\n", doc.diameter));
            out.push_str(&format!("avgEcc: {}\n", doc.avg_ecc));
            out.push_str(&format!("proximity: {}\n", doc.proximity));
            out.push_str(&format!("remoteness: {}\n", doc.remoteness));
            out.push_str(&format!("avgDistance: {}\n", doc.avg_distance));
            out.push_str(&format!("centers: {:?}\n", doc.centers));
            out.push_str(&format!("centroids: {:?}\n", doc.centroids));
            for v in 0..doc.n {
                out.push_str(&format!(
                    "v{}: ecc={} transmission={} pi={}\n",
                    v, doc.ecc_of[v], doc.transmission_of[v], doc.pi_of[v]
                ));
            }
        }
        Body::Graph(doc) => {
            out.push_str(&format!("family: {}\n", doc.family));
            out.push_str(&format!("n: {}\n", doc.n));
            out.push_str(&format!("m: {}\n", doc.m));
            out.push_str(&format!("graph6: {}\n", doc.graph6));
        }
        Body::Enumeration(doc) => {
            out.push_str(&format!("class: {}\n", doc.class));
            out.push_str(&format!("n: {}\n", doc.n));
            out.push_str(&format!("count: {}\n", doc.count));
            if let Some(graphs) = &doc.graphs {
                for g in graphs {
                    out.push_str(g);
                    out.push('\n');
                }
            }
        }
        Body::Search(doc) => {
            out.push_str(&format!("class: {}\n", doc.class));
            out.push_str(&format!("n: {}\n", doc.n));
            out.push_str(&format!("objective: {}\n", doc.objective));
            out.push_str(&format!("direction: {}\n", doc.direction));
            out.push_str(&format!("extremalValue: {}\n", doc.extremal_value));
            out.push_str(&format!("classSize: {}\n", doc.class_size));
            out.push_str(&format!("tieCount: {}\n", doc.tie_count));
            for w in &doc.witnesses {
                out.push_str(&format!("witness: {}\n", w.graph6));
            }
        }
        Body::Conjecture(doc) => {
            out.push_str(&format!("id: {}\n", doc.id));
            out.push_str(&format!("class: {}\n", doc.class));
            out.push_str(&format!("objective: {}\n", doc.objective));
            out.push_str(&format!("direction: {}\n", doc.direction));
            for row in &doc.rows {
                out.push_str(&format!(
                    "n={} classSize={} extremal={}",
                    row.n, row.class_size, row.extremal_value
                ));
                if let Some(b) = &row.bound_value {
                    out.push_str(&format!(" bound={b}"));
                }
                if let Some(v) = &row.family_value {
                    out.push_str(&format!(" family={v}"));
                }
                if let Some(ok) = row.family_is_extremal {
                    out.push_str(&format!(" familyIsExtremal={ok}"));
                }
                if let Some(ok) = row.bound_respected {
                    out.push_str(&format!(" boundRespected={ok}"));
                }
                if let Some(ok) = row.bound_tight {
                    out.push_str(&format!(" boundTight={ok}"));
                }
                out.push_str(&format!(" witnesses={}\n", row.witnesses.len()));
            }
        }
        Body::Trace(doc) => {
            out.push_str(&format!("rule: {}\n", doc.rule));
            out.push_str(&format!("input: {}\n", doc.input));
            out.push_str(&format!("terminal: {}\n", doc.terminal));
            out.push_str(&format!("steps: {}\n", doc.steps.len()));
            out.push_str(&format!("allClaimsHold: {}\n", doc.all_claims_hold));
            for (i, step) in doc.steps.iter().enumerate() {
                let verdict = if step.claims.iter().all(|c| c.holds) {
                    "claims hold"
                } else {
                    "CLAIM FAILED"
                };
                out.push_str(&format!(
                    "{}. {}: {} -> {} ({})\n",
                    i + 1,
                    step.rule,
                    step.before,
                    step.after,
                    verdict
                ));
            }
        }
    }
    out
}
