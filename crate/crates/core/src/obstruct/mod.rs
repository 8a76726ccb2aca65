//! Decision procedures built on the relation engine.
//!
//! Every verdict carries the hypotheses it checked, an explicit witness when it
//! claims an obstruction, and a rule tag naming the argument used.

pub mod external;
mod numbers;
mod quotient;
mod ring;
mod verdicts;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dold::DoldError;

pub use numbers::{numbers_check, numbers_check_opts, CharNumbers, NumberEntry, NumbersVerdict, ResidualEntry, NUMBERS_MAX_N};
pub use quotient::{
    classify_codim1, conjecture_check, conjecture_holds, conjecture_sweep, is_conjecture_k, quotient_dim, quotient_dim_opts, rank2_reduction, rank2_rows,
    Codim1Class, ConjectureRecord, QuotientReport, Rank2Report,
};
pub use ring::{min_threshold, relation_check, relation_violation, OneGenRing};
pub use verdicts::{cp_verdict, rp_verdict, VerdictSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructError {
    #[error("need {what}, got {got}")]
    Range { what: &'static str, got: String },
    #[error("functional is missing the number {0}")]
    MissingNumber(String),
    #[error("partition {partition} has degree {got}, expected {expected}")]
    WrongDegree { partition: String, expected: u32, got: u32 },
    #[error("partition {0} listed twice")]
    DuplicateNumber(String),
    #[error(transparent)]
    Dold(#[from] DoldError),
}

pub(crate) fn range_err(what: &'static str, got: impl ToString) -> ObstructError {
    ObstructError::Range { what, got: got.to_string() }
}

/// Singularity class of the map under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapClass {
    Fold,
    Cusp,
    Morin,
    TameCorank1,
    Corank1,
}

impl MapClass {
    pub const ALL: [MapClass; 5] =
        [MapClass::Fold, MapClass::Cusp, MapClass::Morin, MapClass::TameCorank1, MapClass::Corank1];

    /// 0 for folds, 1 otherwise.
    pub fn delta(self) -> usize {
        match self {
            MapClass::Fold => 0,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MapClass::Fold => "fold",
            MapClass::Cusp => "cusp",
            MapClass::Morin => "morin",
            MapClass::TameCorank1 => "tame-corank1",
            MapClass::Corank1 => "corank1",
        }
    }
}

impl std::fmt::Display for MapClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// No map of the class exists; a witness is attached.
    Obstructed,
    /// The test ran with all hypotheses met and found nothing.
    NoObstruction,
    /// Maps of the class are known to exist.
    Exists,
    /// A hypothesis failed or the rule does not apply.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

impl Hypothesis {
    pub fn new(name: impl Into<String>, holds: bool) -> Self {
        Hypothesis { name: name.into(), holds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `prod w_lhs != prod w_rhs` although both have the same degree and length.
    Relation { lhs: Vec<u32>, rhs: Vec<u32> },
    /// `w_degree != 0` although it must vanish.
    NonzeroClass { degree: u32 },
    /// `p_i` is a nonzero multiple of the generator.
    Pontryagin { i: u64, coefficient: String },
    /// Geometric dimension bound.
    Gamma { kappa: u64, k: u64 },
    /// The closed-form condition on `n = 2^d + c`.
    ClosedForm { d: u32, c: u64 },
    /// A relation the functional evaluates to 1 on.
    Functional { relation: String, source: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub map_class: MapClass,
    pub outcome: Outcome,
    pub rule: String,
    pub hypotheses: Vec<Hypothesis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(map_class: MapClass, rule: &str, hypotheses: Vec<Hypothesis>) -> Self {
        // a failed hypothesis can only ever produce an inconclusive verdict
        let outcome =
            if hypotheses.iter().all(|h| h.holds) { Outcome::NoObstruction } else { Outcome::Inconclusive };
        Verdict { map_class, outcome, rule: rule.to_string(), hypotheses, witness: None, notes: Vec::new() }
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    /// Record an obstruction; ignored when a hypothesis failed.
    pub fn obstruct(&mut self, w: Witness) {
        if self.hypotheses_hold() {
            self.outcome = Outcome::Obstructed;
            self.witness = Some(w);
        }
    }

    pub fn with_outcome(mut self, o: Outcome) -> Self {
        if o != Outcome::Obstructed {
            self.outcome = o;
        }
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn is_obstructed(&self) -> bool {
        self.outcome == Outcome::Obstructed
    }
}

/// `w_a w_b ...` with zero parts allowed.
pub fn fmt_parts(parts: &[u32]) -> String {
    crate::gf2poly::WMonomial::new(parts.to_vec()).map(|m| m.to_string()).unwrap_or_else(|_| {
        // zero parts appear only in threshold-0 witnesses
        parts.iter().map(|p| format!("w{p}")).collect::<Vec<_>>().join(" ")
    })
}
