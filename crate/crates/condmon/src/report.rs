//! Machine-readable report types. Serialization is deterministic: struct
//! fields serialize in declaration order, collections are sorted, and the
//! JSON renderer is the only formatter, so identical inputs produce
//! byte-identical output.

use crate::factor::ElementInvariants;
use serde::{Deserialize, Serialize};

/// The flat invariant payload every surface shares, with the report key
/// names (`Z_count`, `L`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBody {
    #[serde(rename = "Z_count")]
    pub z_count: u64,
    #[serde(rename = "L")]
    pub lengths: Vec<u64>,
    pub delta: Vec<u64>,
    pub c: u64,
    pub c_eq: u64,
    pub c_adj: u64,
    pub c_mon: u64,
    /// Whether `L` is an integer interval.
    pub interval: bool,
}

impl From<&ElementInvariants> for InvariantBody {
    fn from(inv: &ElementInvariants) -> InvariantBody {
        InvariantBody {
            z_count: inv.z_count,
            lengths: inv.lengths.clone(),
            delta: inv.delta.clone(),
            c: inv.catenary,
            c_eq: inv.catenary_equal,
            c_adj: inv.catenary_adjacent,
            c_mon: inv.catenary_monotone,
            interval: is_interval(&inv.lengths),
        }
    }
}

/// Whether a sorted length set is a full integer interval.
pub fn is_interval(lengths: &[u64]) -> bool {
    match lengths {
        [] => false,
        [first, .., last] => *last - *first + 1 == lengths.len() as u64,
        [_] => true,
    }
}

/// One element's invariants, as emitted by the `invariants` subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementReport {
    pub element: String,
    #[serde(flatten)]
    pub body: InvariantBody,
}

/// One row of a window survey; failed rows carry the error instead of the
/// invariants and do not abort the survey.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub element: String,
    pub invariants: Option<InvariantBody>,
    pub error: Option<String>,
}

/// Aggregates over a survey.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub rows: u64,
    pub max_c: u64,
    pub max_c_eq: u64,
    /// How many rows have an interval length set.
    pub interval_rows: u64,
    /// How many rows failed (budget or otherwise).
    pub error_rows: u64,
}

/// Verdict of one named verification suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteVerdict {
    pub suite: String,
    pub passed: bool,
    /// Number of individual assertions checked; a passing suite with zero
    /// assertions is reported as vacuous and treated as a failure by callers.
    pub assertions: u64,
    /// First counterexample or failure description when failed; a short
    /// human-readable summary of what was checked when passed.
    pub detail: String,
}

impl SuiteVerdict {
    pub fn is_conclusive_pass(&self) -> bool {
        self.passed && self.assertions > 0
    }
}

/// Top-level report envelope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    /// Hex digest of the input spec bytes; empty when there is no input file.
    pub input_digest: String,
    pub elements: Vec<ElementReport>,
    pub rows: Vec<SurveyRow>,
    pub summary: Option<SurveySummary>,
    pub verdicts: Vec<SuiteVerdict>,
}

impl Report {
    pub fn new(input_digest: String) -> Report {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest,
            elements: Vec::new(),
            rows: Vec::new(),
            summary: None,
            verdicts: Vec::new(),
        }
    }

    /// Populate the survey summary from the current rows.
    pub fn summarize_rows(&mut self) {
        let mut summary = SurveySummary {
            rows: self.rows.len() as u64,
            max_c: 0,
            max_c_eq: 0,
            interval_rows: 0,
            error_rows: 0,
        };
        for row in &self.rows {
            match &row.invariants {
                Some(body) => {
                    summary.max_c = summary.max_c.max(body.c);
                    summary.max_c_eq = summary.max_c_eq.max(body.c_eq);
                    if body.interval {
                        summary.interval_rows += 1;
                    }
                }
                None => summary.error_rows += 1,
            }
        }
        self.summary = Some(summary);
    }

    /// The canonical byte representation: pretty JSON plus a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serialization is total");
        out.push('\n');
        out
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn join_pipe(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join("|")
}

/// CSV projection of the survey rows (one line per row, header included).
pub fn survey_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::from("element,Z_count,L,delta,c,c_eq,c_adj,c_mon,interval,error\n");
    for row in rows {
        let mut fields = vec![csv_field(&row.element)];
        match &row.invariants {
            Some(b) => {
                fields.push(b.z_count.to_string());
                fields.push(csv_field(&join_pipe(&b.lengths)));
                fields.push(csv_field(&join_pipe(&b.delta)));
                fields.push(b.c.to_string());
                fields.push(b.c_eq.to_string());
                fields.push(b.c_adj.to_string());
                fields.push(b.c_mon.to_string());
                fields.push(b.interval.to_string());
                fields.push(String::new());
            }
            None => {
                fields.extend(std::iter::repeat_n(String::new(), 8));
                fields.push(csv_field(row.error.as_deref().unwrap_or("error")));
            }
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn body() -> InvariantBody {
        InvariantBody {
            z_count: 3,
            lengths: vec![2, 3, 4],
            delta: vec![1, 1],
            c: 3,
            c_eq: 0,
            c_adj: 3,
            c_mon: 3,
            interval: true,
        }
    }

    #[test]
    fn element_report_uses_flat_keys() {
        let report = ElementReport {
            element: "(4,4)".into(),
            body: body(),
        };
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            "{\"element\":\"(4,4)\",\"Z_count\":3,\"L\":[2,3,4],\"delta\":[1,1],\
             \"c\":3,\"c_eq\":0,\"c_adj\":3,\"c_mon\":3,\"interval\":true}"
        );
        let back: ElementReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn interval_detection() {
        assert!(is_interval(&[0]));
        assert!(is_interval(&[2, 3, 4]));
        assert!(!is_interval(&[2, 4]));
        assert!(!is_interval(&[]));
    }

    #[test]
    fn report_serialization_is_deterministic() {
        let mut report = Report::new("abc123".into());
        report.rows.push(SurveyRow {
            element: "(1,1)".into(),
            invariants: Some(body()),
            error: None,
        });
        report.rows.push(SurveyRow {
            element: "(9,9)".into(),
            invariants: None,
            error: Some("budget exceeded during node expansion".into()),
        });
        report.summarize_rows();
        let a = report.to_json();
        let b = report.to_json();
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
        let summary = report.summary.unwrap();
        assert_eq!(summary.rows, 2);
        assert_eq!(summary.max_c, 3);
        assert_eq!(summary.interval_rows, 1);
        assert_eq!(summary.error_rows, 1);
    }

    #[test]
    fn csv_projection_quotes_and_aligns() {
        let rows = vec![
            SurveyRow {
                element: "(1,1)".into(),
                invariants: Some(body()),
                error: None,
            },
            SurveyRow {
                element: "(9,9)".into(),
                invariants: None,
                error: Some("budget, exceeded".into()),
            },
        ];
        let csv = survey_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[0],
            "element,Z_count,L,delta,c,c_eq,c_adj,c_mon,interval,error"
        );
        assert_eq!(lines[1], "\"(1,1)\",3,2|3|4,1|1,3,0,3,3,true,");
        assert_eq!(lines[2], "\"(9,9)\",,,,,,,,,\"budget, exceeded\"");
        // Every line has the same number of commas outside quotes.
        for line in &lines {
            let mut in_quotes = false;
            let commas = line
                .chars()
                .filter(|&c| {
                    if c == '"' {
                        in_quotes = !in_quotes;
                    }
                    c == ',' && !in_quotes
                })
                .count();
            assert_eq!(commas, 9, "bad column count in {line:?}");
        }
    }
}
