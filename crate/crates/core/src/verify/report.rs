use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

/// Relative tolerance of the equality boundary.
pub const EQUALITY_RTOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    EqualityWithinTol,
    /// The inputs could not be computed; see the note.
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::EqualityWithinTol => "equality-within-tol",
            Verdict::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameter tuple of a check; unused entries are `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Params {
    pub d: Option<u32>,
    pub m: Option<u32>,
    pub t: Option<u32>,
    pub s: Option<u32>,
    pub h: Option<u32>,
    pub k: Option<u64>,
    pub ell: Option<u32>,
}

impl Params {
    pub fn dmt(d: u32, m: u32, t: u32) -> Self {
        Params {
            d: Some(d),
            m: Some(m),
            t: Some(t),
            ..Params::default()
        }
    }

    pub fn with_k(mut self, k: u64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_s(mut self, s: u32) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_h(mut self, h: u32) -> Self {
        self.h = Some(h);
        self
    }

    pub fn with_ell(mut self, ell: u32) -> Self {
        self.ell = Some(ell);
        self
    }
}

/// Outcome of checking `lhs <= rhs` (or agreement of two values).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Params,
    pub lhs: f64,
    pub rhs: f64,
    /// `ln(rhs/lhs)` for positive sides, `rhs - lhs` otherwise.
    pub margin: f64,
    pub verdict: Verdict,
    pub tolerance: f64,
    /// Failures of exploratory checks are data, not defects.
    pub regression: bool,
    pub note: String,
}

fn margin(lhs: f64, rhs: f64) -> f64 {
    if lhs > 0.0 && rhs > 0.0 {
        (rhs / lhs).ln()
    } else {
        rhs - lhs
    }
}

/// `|a - b| <= rtol · max(|a|, |b|)`, symmetric in its arguments.
pub fn nearly_equal(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs())
}

impl CheckReport {
    /// Report for the inequality `lhs <= rhs`.
    pub fn inequality(check: &str, params: Params, lhs: f64, rhs: f64) -> Self {
        let verdict = if nearly_equal(lhs, rhs, EQUALITY_RTOL) {
            Verdict::EqualityWithinTol
        } else if lhs < rhs {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        CheckReport {
            check: check.to_string(),
            params,
            lhs,
            rhs,
            margin: margin(lhs, rhs),
            verdict,
            tolerance: EQUALITY_RTOL,
            regression: true,
            note: String::new(),
        }
    }

    /// Report for the agreement of two values within `rtol`.
    pub fn agreement(check: &str, params: Params, lhs: f64, rhs: f64, rtol: f64) -> Self {
        let verdict = if nearly_equal(lhs, rhs, rtol) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        CheckReport {
            check: check.to_string(),
            params,
            lhs,
            rhs,
            margin: margin(lhs, rhs),
            verdict,
            tolerance: rtol,
            regression: true,
            note: String::new(),
        }
    }

    pub fn skipped(check: &str, params: Params, why: impl Into<String>) -> Self {
        CheckReport {
            check: check.to_string(),
            params,
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            verdict: Verdict::Skipped,
            tolerance: EQUALITY_RTOL,
            regression: true,
            note: why.into(),
        }
    }

    pub fn exploratory(mut self) -> Self {
        self.regression = false;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// Passing or equal.
    pub fn ok(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::EqualityWithinTol)
    }

    /// A failed regression check, i.e. a defect.
    pub fn is_regression_failure(&self) -> bool {
        self.regression && self.verdict == Verdict::Fail
    }
}

/// Canonical order: check id, then parameters.
pub fn canonical_sort(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| match a.check.cmp(&b.check) {
        Ordering::Equal => a.params.cmp(&b.params),
        o => o,
    });
}
