//! Run reports and their canonical serializations.
//!
//! JSON output is canonical: keys sorted, floats rendered with 17 significant
//! digits, no whitespace variation. Two runs of the same scenario produce
//! byte-identical JSON apart from the wall-time field, which is excluded from
//! the canonical digest.

use crate::operator::RelationReport;

/// One verified or computed item.
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub name: String,
    pub residual: Option<f64>,
    pub value: Option<f64>,
    pub expected: Option<f64>,
    pub pass: bool,
}

impl CheckRecord {
    pub fn residual(name: impl Into<String>, residual: f64, pass: bool) -> Self {
        Self { name: name.into(), residual: Some(residual), value: None, expected: None, pass }
    }

    pub fn value(name: impl Into<String>, value: f64, expected: Option<f64>, pass: bool) -> Self {
        Self { name: name.into(), residual: None, value: Some(value), expected, pass }
    }
}

/// Aggregated result of one scenario run.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub scenario: String,
    pub checks: Vec<CheckRecord>,
    /// Present for spectrum scenarios: (energy, multiplicity) rows.
    pub pattern: Option<Vec<(f64, usize)>>,
    pub overall_pass: bool,
    pub wall_time_s: f64,
    pub tool_version: String,
}

impl RunReport {
    pub fn new(scenario: impl Into<String>) -> Self {
        Self {
            scenario: scenario.into(),
            checks: Vec::new(),
            pattern: None,
            overall_pass: true,
            wall_time_s: 0.0,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn absorb_relations(&mut self, relations: RelationReport) {
        for c in relations.checks {
            self.checks.push(CheckRecord::residual(c.name, c.residual, c.pass));
        }
        self.refresh();
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
        self.refresh();
    }

    /// Overall pass is the conjunction of the per-check flags (an empty list
    /// passes).
    pub fn refresh(&mut self) {
        self.overall_pass = self.checks.iter().all(|c| c.pass);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(format!("unknown format `{other}` (expected json, csv or text)")),
        }
    }
}

/// 17 significant digits, locale-free.
fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        // normalize the sign of zero for byte-stable output
        return format!("{:.16e}", 0.0_f64);
    }
    format!("{x:.16e}")
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Serialize a report. `include_wall_time = false` yields the canonical
/// digest form.
pub fn emit_json(report: &RunReport, include_wall_time: bool) -> String {
    let mut out = String::new();
    out.push_str("{\"checks\":[");
    for (i, c) in report.checks.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        // keys in sorted order: expected, name, pass, residual, value
        out.push('{');
        let mut first = true;
        let mut field = |out: &mut String, key: &str, val: String| {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format!("\"{key}\":{val}"));
        };
        if let Some(e) = c.expected {
            field(&mut out, "expected", fmt_float(e));
        }
        field(&mut out, "name", format!("\"{}\"", json_escape(&c.name)));
        field(&mut out, "pass", c.pass.to_string());
        if let Some(r) = c.residual {
            field(&mut out, "residual", fmt_float(r));
        }
        if let Some(v) = c.value {
            field(&mut out, "value", fmt_float(v));
        }
        out.push('}');
    }
    out.push_str("],");
    out.push_str(&format!("\"overall_pass\":{},", report.overall_pass));
    if let Some(pattern) = &report.pattern {
        out.push_str("\"pattern\":[");
        for (i, (e, m)) in pattern.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("{{\"energy\":{},\"multiplicity\":{m}}}", fmt_float(*e)));
        }
        out.push_str("],");
    }
    out.push_str(&format!("\"scenario\":\"{}\",", json_escape(&report.scenario)));
    out.push_str(&format!("\"tool_version\":\"{}\"", json_escape(&report.tool_version)));
    if include_wall_time {
        out.push_str(&format!(",\"wall_time_s\":{}", fmt_float(report.wall_time_s)));
    }
    out.push('}');
    out.push('\n');
    out
}

pub fn emit_csv(report: &RunReport) -> String {
    let mut out = String::new();
    if let Some(pattern) = &report.pattern {
        out.push_str("energy,multiplicity\n");
        for (e, m) in pattern {
            out.push_str(&format!("{},{m}\n", fmt_float(*e)));
        }
        return out;
    }
    out.push_str("relation,residual,pass\n");
    for c in &report.checks {
        let shown = c.residual.or(c.value).unwrap_or(f64::NAN);
        out.push_str(&format!("{},{},{}\n", c.name, fmt_float(shown), c.pass));
    }
    out
}

pub fn emit_text(report: &RunReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("scenario: {}\n", report.scenario));
    let name_width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(8).max(8);
    out.push_str(&format!("{:<name_width$}  {:>13}  {}\n", "check", "residual", "status"));
    for c in &report.checks {
        let shown = c.residual.or(c.value).unwrap_or(f64::NAN);
        let status = if c.pass { "pass" } else { "FAIL" };
        out.push_str(&format!("{:<name_width$}  {:>13.6e}  {}\n", c.name, shown, status));
    }
    if let Some(pattern) = &report.pattern {
        out.push_str("\n  energy  multiplicity\n");
        for (e, m) in pattern {
            out.push_str(&format!("{e:>8.3}  {m}\n"));
        }
    }
    out.push_str(&format!(
        "overall: {} ({} checks, {:.3} s)\n",
        if report.overall_pass { "pass" } else { "FAIL" },
        report.checks.len(),
        report.wall_time_s
    ));
    out
}

pub fn emit(report: &RunReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => emit_json(report, true),
        ReportFormat::Csv => emit_csv(report),
        ReportFormat::Text => emit_text(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_passes_and_serializes() {
        let report = RunReport::new("verify-wk");
        assert!(report.overall_pass);
        let json = emit_json(&report, true);
        assert!(json.contains("\"overall_pass\":true"));
        assert!(json.contains("\"checks\":[]"));
    }

    #[test]
    fn canonical_json_is_bytewise_stable() {
        let mut report = RunReport::new("verify-wk");
        report.push(CheckRecord::residual("alpha", 1.25e-13, true));
        report.push(CheckRecord::value("beta", 3.0, Some(3.0), true));
        report.wall_time_s = 0.123;
        let a = emit_json(&report, false);
        report.wall_time_s = 9.876; // canonical form ignores wall time
        let b = emit_json(&report, false);
        assert_eq!(a, b);
        assert!(a.contains("1.2500000000000000e-13"));
    }

    #[test]
    fn spectrum_csv_has_energy_header() {
        let mut report = RunReport::new("spectrum");
        report.pattern = Some(vec![(-1.0, 1), (1.0, 2)]);
        let csv = emit_csv(&report);
        assert!(csv.starts_with("energy,multiplicity\n"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn failing_check_fails_overall() {
        let mut report = RunReport::new("verify-wk");
        report.push(CheckRecord::residual("bad", 1.0, false));
        assert!(!report.overall_pass);
        let text = emit_text(&report);
        assert!(text.contains("FAIL"));
    }
}
