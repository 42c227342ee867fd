//! Verification reports and their stable JSON form.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::series::HalfExp;

/// First exponent at which two expansions disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: HalfExp,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Used only by grid checks whose point hits a documented pole.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    pub order: HalfExp,
    pub status: Status,
    pub mismatch: Option<Mismatch>,
    pub elapsed_ms: u64,
    /// Free-form note (skip reason, z instantiation); text output only.
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn from_comparison(id: impl Into<String>, order: HalfExp, mismatch: Option<Mismatch>, started: Instant) -> Self {
        VerificationReport {
            id: id.into(),
            order,
            status: if mismatch.is_some() { Status::Fail } else { Status::Pass },
            mismatch,
            elapsed_ms: started.elapsed().as_millis() as u64,
            note: None,
        }
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Self {
        VerificationReport {
            id: id.into(),
            order: HalfExp::ZERO,
            status: Status::Skipped,
            mismatch: None,
            elapsed_ms: 0,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn to_json(&self, timing: bool) -> ReportJson {
        ReportJson {
            id: self.id.clone(),
            order: self.order.halves() / 2,
            status: self.status,
            mismatch: self.mismatch.as_ref().map(|m| MismatchJson {
                exponent_halves: m.exponent.halves(),
                lhs: m.lhs.to_string(),
                rhs: m.rhs.to_string(),
            }),
            elapsed_ms: if timing { self.elapsed_ms } else { 0 },
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<44} {:<7} order={}", self.id, self.status, self.order)?;
        if let Some(m) = &self.mismatch {
            write!(f, " mismatch at q^({}/2): lhs={} rhs={}", m.exponent.halves(), m.lhs, m.rhs)?;
        }
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

/// Wire form: exactly `{id, order, status, mismatch, elapsed_ms}`.
/// `order` is in whole powers of q; coefficients are decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub id: String,
    pub order: i64,
    pub status: Status,
    pub mismatch: Option<MismatchJson>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MismatchJson {
    pub exponent_halves: i64,
    pub lhs: String,
    pub rhs: String,
}
