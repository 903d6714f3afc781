//! Verdicts and replayable witness certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::cayley_graph;
use crate::group::FiniteGroup;
use crate::perm::Permutation;

use super::affine::is_affine;
use super::search::{is_colour_preserving, SearchStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    #[serde(rename = "CCA")]
    Cca,
    #[serde(rename = "non-CCA")]
    NonCca,
    #[serde(rename = "pair-yes")]
    PairYes,
    #[serde(rename = "pair-no")]
    PairNo,
    #[serde(rename = "hypotheses-ok")]
    HypothesesOk,
    #[serde(rename = "hypotheses-fail")]
    HypothesesFail,
    #[serde(rename = "unknown-cap")]
    UnknownCap,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Cca => "CCA",
            VerdictKind::NonCca => "non-CCA",
            VerdictKind::PairYes => "pair-yes",
            VerdictKind::PairNo => "pair-no",
            VerdictKind::HypothesesOk => "hypotheses-ok",
            VerdictKind::HypothesesFail => "hypotheses-fail",
            VerdictKind::UnknownCap => "unknown-cap",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

/// A colour-preserving, non-affine vertex map of `Cay(group, connection)`,
/// stored as a full image array so it replays without search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub group: FiniteGroup,
    pub connection: Vec<usize>,
    pub images: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub witness: Option<Witness>,
    pub checks: Vec<Check>,
    pub stats: SearchStats,
}

impl Verdict {
    pub fn new(kind: VerdictKind) -> Self {
        Verdict { kind, witness: None, checks: Vec::new(), stats: SearchStats::default() }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check::new(name, pass, detail));
        pass
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Re-validate a verdict's witness from scratch: rebuild the Cayley graph,
/// then require the stored map to be colour-preserving and not affine.
pub fn replay_witness(v: &Verdict) -> Result<bool> {
    let w = v.witness.as_ref().ok_or_else(|| Error::MalformedWitness("verdict carries no witness".into()))?;
    replay(w)
}

pub fn replay(w: &Witness) -> Result<bool> {
    w.group.check_axioms().map_err(|e| Error::MalformedWitness(e.to_string()))?;
    let cg = cayley_graph(&w.group, &w.connection).map_err(|e| Error::MalformedWitness(e.to_string()))?;
    if w.images.len() != w.group.order() {
        return Err(Error::MalformedWitness(format!(
            "{} images for a group of order {}",
            w.images.len(),
            w.group.order()
        )));
    }
    let p = match Permutation::from_images(w.images.clone()) {
        Ok(p) => p,
        Err(_) => return Ok(false),
    };
    Ok(is_colour_preserving(cg.graph(), &p)? && is_affine(&cg, &p)?.is_none())
}
