use std::fmt::{self, Display, Write as _};

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A cited value carried as a constant, not computed.
    RecordedConstant,
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::RecordedConstant => "recorded-constant",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub check: String,
    pub citation: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

impl Row {
    pub fn compare<T: PartialEq + Serialize>(
        check: impl Into<String>,
        citation: impl Into<String>,
        expected: T,
        computed: T,
    ) -> Row {
        let status = if expected == computed {
            Status::Pass
        } else {
            Status::Fail
        };
        Row {
            check: check.into(),
            citation: citation.into(),
            expected: render(&expected),
            computed: render(&computed),
            status,
        }
    }

    pub fn recorded(
        check: impl Into<String>,
        citation: impl Into<String>,
        value: impl Display,
    ) -> Row {
        let value = value.to_string();
        Row {
            check: check.into(),
            citation: citation.into(),
            expected: value.clone(),
            computed: value,
            status: Status::RecordedConstant,
        }
    }

    /// Like [`Row::compare`], with an error in place of the computed value failing the row.
    pub fn compare_result<T: PartialEq + Serialize, E: Display>(
        check: impl Into<String>,
        citation: impl Into<String>,
        expected: T,
        computed: Result<T, E>,
    ) -> Row {
        match computed {
            Ok(v) => Row::compare(check, citation, expected, v),
            Err(e) => Row::failed(check, citation, render(&expected), format!("error: {e}")),
        }
    }

    pub fn failed(
        check: impl Into<String>,
        citation: impl Into<String>,
        expected: impl Display,
        why: impl Display,
    ) -> Row {
        Row {
            check: check.into(),
            citation: citation.into(),
            expected: expected.to_string(),
            computed: why.to_string(),
            status: Status::Fail,
        }
    }
}

/// Compact JSON, except that a bare string is shown without quotes.
fn render<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v).expect("serializable") {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Value,
    pub output: Value,
    pub results: Vec<Row>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, inputs: Value) -> RunManifest {
        RunManifest {
            command: command.into(),
            inputs,
            output: Value::Null,
            results: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Row) {
        self.results.push(row);
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Pretty JSON with object keys sorted.
    pub fn to_json(&self) -> String {
        // serde_json's Map is ordered by key unless `preserve_order` is on.
        let value = serde_json::to_value(self).expect("manifest is serializable");
        serde_json::to_string_pretty(&value).expect("value is serializable")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if !self.inputs.is_null() {
            let _ = writeln!(out, "inputs:  {}", self.inputs);
        }
        if !self.results.is_empty() {
            let headers = ["status", "check", "citation", "expected", "computed"];
            let cells: Vec<[String; 5]> = self
                .results
                .iter()
                .map(|r| {
                    [
                        r.status.to_string(),
                        r.check.clone(),
                        r.citation.clone(),
                        r.expected.clone(),
                        r.computed.clone(),
                    ]
                })
                .collect();
            let mut widths = headers.map(str::len);
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cols: [&str; 5]| {
                let mut s = String::new();
                for (k, (c, w)) in cols.iter().zip(widths).enumerate() {
                    if k > 0 {
                        s.push_str("  ");
                    }
                    let pad = w - c.chars().count();
                    s.push_str(c);
                    if k < 4 {
                        s.extend(std::iter::repeat_n(' ', pad));
                    }
                }
                s.trim_end().to_string()
            };
            out.push('\n');
            let _ = writeln!(out, "{}", line(headers));
            for row in &cells {
                let _ = writeln!(
                    out,
                    "{}",
                    line([&row[0], &row[1], &row[2], &row[3], &row[4]].map(String::as_str))
                );
            }
        }
        if !self.output.is_null() {
            out.push('\n');
            let value = serde_json::to_string_pretty(&self.output).expect("value is serializable");
            let _ = writeln!(out, "{value}");
        }
        let failed = self
            .results
            .iter()
            .filter(|r| r.status == Status::Fail)
            .count();
        let _ = writeln!(out, "\n{} checks, {} failed", self.results.len(), failed);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rows_compare_and_render() {
        let r = Row::compare("x", "here", 3, 3);
        assert_eq!((r.status, r.expected.as_str()), (Status::Pass, "3"));
        let r = Row::compare("y", "here", vec![(4, 2)], vec![]);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.expected, "[[4,2]]");
        let r = Row::compare_result::<_, String>("z", "", Some(7), Err("boom".into()));
        assert_eq!(
            (r.status, r.computed.as_str()),
            (Status::Fail, "error: boom")
        );
        assert_eq!(Row::compare("s", "", "3/4", "3/4").computed, "3/4");
    }

    #[test]
    fn keys_are_sorted_and_exit_codes() {
        let mut m = RunManifest::new("t", json!({"zeta": 1, "alpha": 2}));
        m.push(Row::recorded("c", "there", 2));
        let text = m.to_json();
        assert!(text.find("\"alpha\"").unwrap() < text.find("\"zeta\"").unwrap());
        assert!(text.find("\"command\"").unwrap() < text.find("\"results\"").unwrap());
        assert!(text.contains("\"recorded-constant\""));
        assert_eq!(m.exit_code(), 0);
        m.push(Row::failed("d", "", 1, "error"));
        assert_eq!(m.exit_code(), 1);
        assert!(m.to_human().contains("2 checks, 1 failed"));
    }
}
