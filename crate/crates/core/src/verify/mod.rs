//! Theorem harnesses and conjecture hunters.
//!
//! Every check produces a [`VerdictRecord`]. A record whose hypothesis is met
//! but whose conclusion fails is a *finding*; findings carry witnesses that are
//! re-checked with plain family predicates before they are emitted.

mod hunters;
mod recheck;
mod theorems;

use std::fmt;

use serde::Serialize;

pub use hunters::{
    check_akgen, check_chvatal, check_kamatgen, hunt_akgen, hunt_akgen_sampled, hunt_chvatal, hunt_chvatal_sampled,
    hunt_kamat_graphs, hunt_kamatgen, hunt_kamatgen_sampled, HuntReport, SampleSpec, Tally, MAX_GRAPH_VERTICES,
};
pub use theorems::{
    ekr_boundary, ekr_boundary_grid, verify_large_k_case, verify_powerset_formulas, verify_prod_theorem,
    verify_sum_large_mu, verify_sum_theorem, TheoremKind,
};

/// Identifier of a checked statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Statement {
    #[serde(rename = "thm-sum-general")]
    SumGeneral,
    #[serde(rename = "thm-prod-general")]
    ProdGeneral,
    #[serde(rename = "thm-sum-large-mu")]
    SumLargeMu,
    #[serde(rename = "thm-sum-large-k")]
    SumLargeK,
    #[serde(rename = "thm-powerset")]
    Powerset,
    #[serde(rename = "thm-ekr-boundary")]
    EkrBoundary,
    #[serde(rename = "conj-chvatal")]
    Chvatal,
    #[serde(rename = "conj-kamatgen")]
    Kamatgen,
    #[serde(rename = "conj-kamatgen-unique")]
    KamatgenUnique,
    #[serde(rename = "conj-kamat-graph")]
    KamatGraph,
    #[serde(rename = "conj-akgen")]
    Akgen,
    #[serde(rename = "conj-akgen-strict")]
    AkgenStrict,
}

impl Statement {
    pub fn id(self) -> &'static str {
        match self {
            Statement::SumGeneral => "thm-sum-general",
            Statement::ProdGeneral => "thm-prod-general",
            Statement::SumLargeMu => "thm-sum-large-mu",
            Statement::SumLargeK => "thm-sum-large-k",
            Statement::Powerset => "thm-powerset",
            Statement::EkrBoundary => "thm-ekr-boundary",
            Statement::Chvatal => "conj-chvatal",
            Statement::Kamatgen => "conj-kamatgen",
            Statement::KamatgenUnique => "conj-kamatgen-unique",
            Statement::KamatGraph => "conj-kamat-graph",
            Statement::Akgen => "conj-akgen",
            Statement::AkgenStrict => "conj-akgen-strict",
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Outcome of checking one statement on one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictRecord {
    pub statement: Statement,
    pub instance: String,
    /// Whether the instance satisfies the statement's hypotheses. When false
    /// the record is exploratory: the conclusion is observed, not tested.
    pub hypothesis_met: bool,
    /// `None` when the conclusion does not apply to the instance.
    pub conclusion_holds: Option<bool>,
    /// Values and witnesses (JSON object with sorted keys).
    pub details: serde_json::Value,
}

impl VerdictRecord {
    /// A tested conclusion that failed: a counterexample.
    pub fn is_finding(&self) -> bool {
        self.hypothesis_met && self.conclusion_holds == Some(false)
    }

    /// One JSON object, fields in declaration order.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn to_text(&self) -> String {
        let verdict = match (self.hypothesis_met, self.conclusion_holds) {
            (_, None) => "not applicable",
            (true, Some(true)) => "holds",
            (true, Some(false)) => "FAILS",
            (false, Some(true)) => "exploratory: conclusion observed",
            (false, Some(false)) => "exploratory: conclusion not observed",
        };
        format!("{} [{}]: {}\n  {}\n", self.statement, self.instance, verdict, self.details)
    }
}
