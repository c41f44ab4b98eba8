//! Serializable projections of command results.

use bpq_core::invariants::InvariantVerdict;
use bpq_core::verifier::{Counterexample, TheoremVerdict};
use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The options a run was made with. The output path is left out so a
/// report does not depend on where it was written.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    pub p: Option<u64>,
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub upto: Option<u64>,
    pub kind: Option<String>,
    pub symbolic: bool,
    pub quaternion: bool,
    pub case: Option<String>,
    pub scan_multiplier: Option<u64>,
    pub format: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Theorem,
    Invariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleRecord {
    pub index: u64,
    pub k: u64,
    pub norm: u64,
    pub reduced: u64,
    pub predicted: bool,
    pub observed: bool,
}

impl From<&Counterexample> for CounterexampleRecord {
    fn from(c: &Counterexample) -> Self {
        CounterexampleRecord {
            index: c.index,
            k: c.k,
            norm: c.norm,
            reduced: c.reduced,
            predicted: c.predicted,
            observed: c.observed,
        }
    }
}

/// One row of a verify or scan report.
///
/// For theorem rows the counts are the sizes of the predicted and observed
/// sets; for invariant rows they are the number of indices checked and the
/// number at which the identity held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictRecord {
    pub prime: u64,
    pub case_id: String,
    pub kind: RecordKind,
    pub parity: Option<String>,
    pub hypothesis_class: Option<u64>,
    pub entry_point: u64,
    pub pisano_period: u64,
    pub sequence_period: Option<u64>,
    pub window: Option<u64>,
    pub scan_limit: Option<u64>,
    pub hypothesis_count: Option<u64>,
    pub predicted_count: u64,
    pub observed_count: u64,
    pub predicted: Vec<u64>,
    pub observed: Vec<u64>,
    pub classification: String,
    pub counterexamples: Vec<CounterexampleRecord>,
}

impl VerdictRecord {
    pub fn from_theorem(v: &TheoremVerdict) -> Self {
        VerdictRecord {
            prime: v.case.p(),
            case_id: v.case.id.as_str().to_string(),
            kind: RecordKind::Theorem,
            parity: Some(v.case.parity().name().to_string()),
            hypothesis_class: Some(v.case.hypothesis_class()),
            entry_point: v.case.profile.entry_point,
            pisano_period: v.case.profile.pisano_period,
            sequence_period: Some(v.scan.sequence_period),
            window: Some(v.scan.window),
            scan_limit: Some(v.scan.scan_limit()),
            hypothesis_count: Some(v.hypothesis_count),
            predicted_count: v.predicted.len() as u64,
            observed_count: v.observed.len() as u64,
            predicted: v.predicted.clone(),
            observed: v.observed.clone(),
            classification: v.classification.as_str().to_string(),
            counterexamples: v.counterexamples.iter().map(Into::into).collect(),
        }
    }

    pub fn from_invariant(v: &InvariantVerdict, entry_point: u64, pisano_period: u64) -> Self {
        VerdictRecord {
            prime: v.p,
            case_id: v.id.as_str().to_string(),
            kind: RecordKind::Invariant,
            parity: v.id.parity().map(|p| p.name().to_string()),
            hypothesis_class: None,
            entry_point,
            pisano_period,
            sequence_period: None,
            window: None,
            scan_limit: None,
            hypothesis_count: None,
            predicted_count: v.checked,
            observed_count: v.holding,
            predicted: Vec::new(),
            observed: Vec::new(),
            classification: v.classification.as_str().to_string(),
            counterexamples: v.failures.iter().map(Into::into).collect(),
        }
    }

    pub fn fails(&self) -> bool {
        self.classification == "FAILS"
    }

    pub fn first_counterexample(&self) -> Option<u64> {
        self.counterexamples.first().map(|c| c.index)
    }

    pub fn csv_fields(&self) -> [String; 8] {
        [
            self.prime.to_string(),
            self.case_id.clone(),
            self.parity.clone().unwrap_or_default(),
            self.hypothesis_class
                .map(|c| c.to_string())
                .unwrap_or_default(),
            self.predicted_count.to_string(),
            self.observed_count.to_string(),
            self.classification.clone(),
            self.first_counterexample()
                .map(|i| i.to_string())
                .unwrap_or_default(),
        ]
    }
}

pub const VERDICT_COLUMNS: [&str; 8] = [
    "prime",
    "case_id",
    "parity",
    "hypothesis_class",
    "predicted_count",
    "observed_count",
    "classification",
    "first_counterexample",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictReport {
    pub tool_version: String,
    pub config: RunConfig,
    pub verdicts: Vec<VerdictRecord>,
}

impl VerdictReport {
    pub fn any_fails(&self) -> bool {
        self.verdicts.iter().any(VerdictRecord::fails)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub n: u64,
    pub padovan: Option<String>,
    pub perrin: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqReport {
    pub tool_version: String,
    pub config: RunConfig,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibRecord {
    pub p: u64,
    pub entry_point: u64,
    pub pisano_period: u64,
    pub relation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibReport {
    pub tool_version: String,
    pub config: RunConfig,
    pub profile: FibRecord,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn verdict_report_from_json(src: &str) -> Result<VerdictReport, serde_json::Error> {
    serde_json::from_str(src)
}

/// Columns padded to their widest cell, separated by two spaces.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut text = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                text.push_str("  ");
            }
            text.push_str(cell);
            if i + 1 < cells.len() {
                text.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(headers.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn render_csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let t = render_table(
            &["n", "value"],
            &[vec!["10".into(), "x".into()], vec!["2".into(), "".into()]],
        );
        assert_eq!(t, "n   value\n10  x\n2\n");
    }

    #[test]
    fn csv_quoting() {
        let c = render_csv(&["a", "b"], &[vec!["1 + a, b".into(), "2".into()]]);
        assert_eq!(c, "a,b\n\"1 + a, b\",2\n");
    }

    #[test]
    fn empty_table_has_header() {
        assert_eq!(
            render_csv(&VERDICT_COLUMNS, &[]),
            format!("{}\n", VERDICT_COLUMNS.join(","))
        );
    }
}
