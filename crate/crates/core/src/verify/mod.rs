//! Exhaustive and seeded checks of the opposite-relation characterisations.
//!
//! Every check returns a [`Verdict`]. Verdicts contain no timing or other
//! run-dependent data, so serialising one twice gives identical bytes.

mod counterexample;
mod distance;
mod grassmann;
mod opposition;
mod theorem1;

use serde::Serialize;
use serde_json::{Map, Value};

pub use counterexample::{
    standard_spans, verify_counterexample, verify_dual_polar_line_witnesses,
    verify_parametrized_lines, CounterexampleInstance, StandardSpans,
};
pub use distance::{
    verify_dual_polar_distances, verify_grassmann_distances, verify_half_spin_distances,
};
pub use grassmann::verify_grassmann_characterization;
pub use opposition::{Certificate, Condition2, OppositionIndex};
pub use theorem1::{
    check_condition2_hs, recheck_report, verify_certificates, verify_dimension_lemmas,
    verify_line_witnesses, verify_theorem1, witness_set, Condition2Report,
};

/// At most this many failure messages are kept; `failure_count` has the total.
pub const MAX_LISTED_FAILURES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

/// How many pairs a check visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    /// Roughly `pairs` pairs chosen by a ChaCha8 stream seeded with `seed`.
    Sampled {
        pairs: usize,
        seed: u64,
    },
}

impl Sampling {
    pub fn mode(self) -> Mode {
        match self {
            Sampling::Exhaustive => Mode::Exhaustive,
            Sampling::Sampled { .. } => Mode::Sampled,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub space: String,
    pub mode: Mode,
    pub pairs_checked: u64,
    pub passed: bool,
    pub failure_count: u64,
    pub failures: Vec<String>,
    pub details: Map<String, Value>,
}

impl Verdict {
    pub fn new(check: &str, space: &str, mode: Mode) -> Self {
        Verdict {
            check: check.to_string(),
            space: space.to_string(),
            mode,
            pairs_checked: 0,
            passed: true,
            failure_count: 0,
            failures: Vec::new(),
            details: Map::new(),
        }
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.passed = false;
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(msg.into());
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("detail serialises");
        self.details.insert(key.to_string(), v);
    }

    /// One verdict summing several parts; each part is kept under `details.parts`.
    pub fn combine(check: &str, space: &str, parts: Vec<Verdict>) -> Self {
        let mode = if parts.iter().all(|p| p.mode == Mode::Exhaustive) {
            Mode::Exhaustive
        } else {
            Mode::Sampled
        };
        let mut out = Verdict::new(check, space, mode);
        for p in &parts {
            out.pairs_checked += p.pairs_checked;
            out.passed &= p.passed;
            out.failure_count += p.failure_count;
            for f in &p.failures {
                if out.failures.len() < MAX_LISTED_FAILURES {
                    out.failures.push(format!("{} {}: {f}", p.check, p.space));
                }
            }
        }
        out.detail("parts", &parts);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serialises")
    }
}
