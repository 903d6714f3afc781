//! JSON certificate reports.

use serde::{Deserialize, Serialize};

use cca_core::engine::{Check, Verdict, VerdictKind, Witness};
use cca_core::FiniteGroup;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub order: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
}

impl GroupSummary {
    pub fn of(g: &FiniteGroup, expression: Option<String>) -> Self {
        GroupSummary { order: g.order(), generators: g.generators().iter().map(|(s, _)| s.clone()).collect(), expression }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub kind: VerdictKind,
    /// Images of the witness map over element indices; empty without a witness.
    pub witness_images: Vec<usize>,
    pub checks: Vec<Check>,
    /// Connection set of the witness graph, as element names.
    pub connection: Vec<String>,
    pub group: Option<GroupSummary>,
    /// The full replayable certificate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl VerdictReport {
    pub fn new(v: &Verdict, group: Option<GroupSummary>) -> Self {
        let (witness_images, connection, group) = match &v.witness {
            Some(w) => (
                w.images.clone(),
                w.connection.iter().map(|&c| w.group.name(c).to_string()).collect(),
                group.or_else(|| Some(GroupSummary::of(&w.group, None))),
            ),
            None => (Vec::new(), Vec::new(), group),
        };
        VerdictReport { kind: v.kind, witness_images, checks: v.checks.clone(), connection, group, witness: v.witness.clone() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: u64,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub group: String,
    pub order: usize,
    pub verdict: VerdictReport,
    pub stats: Stats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub task: String,
    pub verdict: VerdictReport,
    pub stats: Stats,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<CensusEntry>,
}

impl Report {
    /// Every embedded witness, including those of census entries.
    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.verdict.witness.iter().chain(self.entries.iter().filter_map(|e| e.verdict.witness.as_ref()))
    }
}
