//! Verification reports (`kml-report/1`).

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "kml-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NonVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub parameters: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    pub verdict: Verdict,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<f64>,
}

impl Check {
    pub fn new(id: impl Into<String>, parameters: Value, window: Option<usize>, verdict: Verdict, witness: Value) -> Check {
        Check {
            id: id.into(),
            parameters,
            window,
            verdict,
            witness,
            wall_clock_ms: None,
        }
    }

    /// `Pass` when `ok`, otherwise `Fail`; the witness is kept either way.
    pub fn judged(id: impl Into<String>, parameters: Value, window: Option<usize>, ok: bool, witness: Value) -> Check {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        Check::new(id, parameters, window, verdict, witness)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub non_verdict: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    /// Sorts the checks by id so the output does not depend on evaluation order.
    pub fn new(suite: impl Into<String>, seed: Option<u64>, mut checks: Vec<Check>) -> Report {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for c in &checks {
            match c.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::NonVerdict => summary.non_verdict += 1,
            }
        }
        Report {
            schema: SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            suite: suite.into(),
            seed,
            checks,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// 0 when everything passed (non-verdicts allowed on request), 1 otherwise.
    pub fn exit_code(&self, allow_non_verdict: bool) -> u8 {
        let blocked = self.summary.fail > 0 || (!allow_non_verdict && self.summary.non_verdict > 0);
        u8::from(blocked)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn checks_are_sorted_and_counted() {
        let r = Report::new(
            "demo",
            Some(1),
            vec![
                Check::judged("b", json!({}), None, false, json!({"degree": 2})),
                Check::new("a", json!({}), Some(3), Verdict::NonVerdict, Value::Null),
            ],
        );
        assert_eq!(r.checks[0].id, "a");
        assert_eq!(r.summary, Summary { pass: 0, fail: 1, non_verdict: 1 });
        assert_eq!(r.exit_code(true), 1);
        assert!(r.to_json().contains("\"non-verdict\""));
    }

    #[test]
    fn non_verdicts_need_permission() {
        let r = Report::new("demo", None, vec![Check::new("a", json!({}), None, Verdict::NonVerdict, Value::Null)]);
        assert_eq!(r.exit_code(false), 1);
        assert_eq!(r.exit_code(true), 0);
    }
}
