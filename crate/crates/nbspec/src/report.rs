//! Structured results for verification checks and bound evaluations.
//!
//! Every check produces a `VerificationReport` rather than a bare boolean so
//! that callers (and the CLI's JSON output) always see what was tested, under
//! which hypotheses, and with what numerical evidence. A failing report must
//! carry either a residual or a counterexample; the constructors enforce
//! this so a bare "fail" can never reach the output.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Outcome of a single verification check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Round to 12 significant decimal digits so serialized floats are
/// byte-identical across runs and platforms.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap()
}

/// Result of one named check: what ran, whether it held, and the numerical
/// evidence. `residual` is the check's defect measure (0 would be exact);
/// `hypothesis` records the preconditions that gated the check.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub name: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub hypothesis: BTreeMap<String, bool>,
    pub metadata: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn pass(name: impl Into<String>, residual: Option<f64>) -> Self {
        VerificationReport {
            name: name.into(),
            status: Status::Pass,
            residual: residual.map(round_sig),
            hypothesis: BTreeMap::new(),
            metadata: BTreeMap::new(),
        }
    }

    /// A failing report must explain itself: callers provide a residual, a
    /// counterexample description, or both.
    pub fn fail(
        name: impl Into<String>,
        residual: Option<f64>,
        counterexample: Option<String>,
    ) -> Self {
        assert!(
            residual.is_some() || counterexample.is_some(),
            "failing report needs a residual or a counterexample"
        );
        let mut metadata = BTreeMap::new();
        if let Some(c) = counterexample {
            metadata.insert("counterexample".to_string(), c);
        }
        VerificationReport {
            name: name.into(),
            status: Status::Fail,
            residual: residual.map(round_sig),
            hypothesis: BTreeMap::new(),
            metadata,
        }
    }

    pub fn not_applicable(name: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut metadata = BTreeMap::new();
        metadata.insert("reason".to_string(), reason.into());
        VerificationReport {
            name: name.into(),
            status: Status::NotApplicable,
            residual: None,
            hypothesis: BTreeMap::new(),
            metadata,
        }
    }

    pub fn with_hypothesis(mut self, key: impl Into<String>, value: bool) -> Self {
        self.hypothesis.insert(key.into(), value);
        self
    }

    pub fn with_metadata(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.insert(key.into(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VerificationReport", 5)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("residual", &self.residual.map(round_sig))?;
        st.serialize_field("hypothesis", &self.hypothesis)?;
        st.serialize_field("metadata", &self.metadata)?;
        st.end()
    }
}

/// One inequality of the form `observed <= bound` (or `>=`, by sign of
/// `margin`), evaluated together with the hypothesis that licenses it.
/// `margin` is the slack in the safe direction, negative on violation.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub name: String,
    pub hypothesis_satisfied: bool,
    pub bound: f64,
    pub observed: f64,
    pub margin: f64,
    pub metadata: BTreeMap<String, String>,
}

impl BoundReport {
    pub fn new(
        name: impl Into<String>,
        hypothesis_satisfied: bool,
        bound: f64,
        observed: f64,
        margin: f64,
    ) -> Self {
        BoundReport {
            name: name.into(),
            hypothesis_satisfied,
            bound,
            observed,
            margin,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.insert(key.into(), value.into());
        self
    }

    /// Vacuously true when the hypothesis fails; otherwise the margin must
    /// be nonnegative up to roundoff.
    pub fn holds(&self) -> bool {
        !self.hypothesis_satisfied || self.margin >= -1e-8
    }
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundReport", 7)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("hypothesis_satisfied", &self.hypothesis_satisfied)?;
        st.serialize_field("bound", &round_sig(self.bound))?;
        st.serialize_field("observed", &round_sig(self.observed))?;
        st.serialize_field("margin", &round_sig(self.margin))?;
        st.serialize_field("holds", &self.holds())?;
        st.serialize_field("metadata", &self.metadata)?;
        st.end()
    }
}
