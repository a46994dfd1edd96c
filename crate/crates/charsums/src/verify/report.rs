//! Report records and their CSV/JSON serializations.
//!
//! Both formats are emitted byte-deterministically: fixed column order,
//! fixed key order, and floats through [`crate::fmt::format_sig`].

use crate::fmt::format_sig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Fully explicit constants; failing is a build failure.
    ExactPass,
    ExactFail,
    /// Asymptotic statement evaluated with implied constant 1 and o(1) = 0;
    /// the ratio is data, never a pass/fail gate.
    ReportOnly,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ExactPass => "exact-pass",
            Verdict::ExactFail => "exact-fail",
            Verdict::ReportOnly => "report-only",
        }
    }
}

/// One verified or reported instance of a statement.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub statement: String,
    /// Ordered parameter list, serialized in insertion order.
    pub params: Vec<(String, String)>,
    pub lhs: f64,
    pub rhs: f64,
    pub verdict: Verdict,
}

impl BoundReport {
    pub fn new(
        statement: &str,
        params: Vec<(String, String)>,
        lhs: f64,
        rhs: f64,
        verdict: Verdict,
    ) -> Self {
        BoundReport { statement: statement.to_string(), params, lhs, rhs, verdict }
    }

    pub fn ratio(&self) -> f64 {
        if self.rhs > 0.0 {
            self.lhs / self.rhs
        } else {
            f64::NAN
        }
    }

    pub fn params_string(&self) -> String {
        let parts: Vec<String> =
            self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.join(";")
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.statement,
            self.params_string(),
            format_sig(self.lhs),
            format_sig(self.rhs),
            format_sig(self.ratio()),
            self.verdict.as_str()
        )
    }

    pub fn json_object(&self) -> String {
        let mut params = String::from("{");
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                params.push(',');
            }
            params.push_str(&format!("{}:{}", json_string(k), json_string(v)));
        }
        params.push('}');
        format!(
            "{{\"statement\":{},\"params\":{},\"lhs\":{},\"rhs\":{},\"ratio\":{},\"verdict\":{}}}",
            json_string(&self.statement),
            params,
            json_number(self.lhs),
            json_number(self.rhs),
            json_number(self.ratio()),
            json_string(self.verdict.as_str())
        )
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_number(x: f64) -> String {
    if x.is_finite() {
        format_sig(x)
    } else {
        // JSON has no NaN/inf; emit null like most tooling does.
        "null".to_string()
    }
}

pub const REPORT_CSV_HEADER: &str = "statement,params,lhs,rhs,ratio,verdict";

pub fn reports_to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from(REPORT_CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

pub fn reports_to_json(reports: &[BoundReport]) -> String {
    let mut out = String::from("[");
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('\n');
        out.push_str(&r.json_object());
    }
    out.push_str("\n]\n");
    out
}

/// Outcome of running one statement suite or scan.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub statement: String,
    pub reports: Vec<BoundReport>,
    pub instances: u64,
    pub failures: u64,
    pub max_ratio: Option<(f64, String)>,
    pub notes: Vec<String>,
}

impl SuiteResult {
    pub fn from_reports(statement: &str, reports: Vec<BoundReport>, notes: Vec<String>) -> Self {
        let instances = reports.len() as u64;
        let failures = reports
            .iter()
            .filter(|r| r.verdict == Verdict::ExactFail)
            .count() as u64;
        let mut max_ratio: Option<(f64, String)> = None;
        for r in &reports {
            let ratio = r.ratio();
            if ratio.is_finite() && max_ratio.as_ref().is_none_or(|(m, _)| ratio > *m) {
                max_ratio = Some((ratio, r.params_string()));
            }
        }
        SuiteResult {
            statement: statement.to_string(),
            reports,
            instances,
            failures,
            max_ratio,
            notes,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Byte-locked summary block used for regression baselines.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("statement={}\n", self.statement));
        out.push_str(&format!("instances={}\n", self.instances));
        out.push_str(&format!("failures={}\n", self.failures));
        match &self.max_ratio {
            Some((m, arg)) => {
                out.push_str(&format!("max_ratio={}\n", format_sig(*m)));
                out.push_str(&format!("argmax={arg}\n"));
            }
            None => {
                out.push_str("max_ratio=none\n");
                out.push_str("argmax=none\n");
            }
        }
        for note in &self.notes {
            out.push_str(&format!("note={note}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_shapes() {
        let r = BoundReport::new(
            "demo",
            vec![("q".into(), "45".into()), ("V".into(), "3".into())],
            6.0,
            12.0,
            Verdict::ReportOnly,
        );
        assert_eq!(r.csv_line(), "demo,q=45;V=3,6.0,12.0,0.5,report-only");
        assert_eq!(
            r.json_object(),
            "{\"statement\":\"demo\",\"params\":{\"q\":\"45\",\"V\":\"3\"},\"lhs\":6.0,\"rhs\":12.0,\"ratio\":0.5,\"verdict\":\"report-only\"}"
        );
        let csv = reports_to_csv(std::slice::from_ref(&r));
        assert!(csv.starts_with(REPORT_CSV_HEADER));
        let json = reports_to_json(&[r]);
        assert!(json.starts_with('[') && json.ends_with("]\n"));
    }

    #[test]
    fn failures_are_not_passes() {
        let bad = BoundReport::new("demo", vec![], 2.0, 1.0, Verdict::ExactFail);
        let s = SuiteResult::from_reports("demo", vec![bad], vec![]);
        assert!(!s.passed());
        assert_eq!(s.failures, 1);
    }

    #[test]
    fn summary_block() {
        let r = BoundReport::new("demo", vec![("q".into(), "5".into())], 1.0, 4.0, Verdict::ExactPass);
        let s = SuiteResult::from_reports("demo", vec![r], vec!["extra".into()]);
        assert!(s.passed());
        let text = s.summary();
        assert!(text.contains("statement=demo"));
        assert!(text.contains("max_ratio=0.25"));
        assert!(text.contains("note=extra"));
    }
}
