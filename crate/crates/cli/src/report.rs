use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Every check passed.
    Pass,
    /// A check failed; the report carries the witness.
    Fail,
    /// A budget ran out before a verdict.
    Inconclusive,
    /// Nothing was checked.
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Info => "info",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Info => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }

    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// The worse of two statuses: fail, then inconclusive, then pass.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (Pass, _) | (_, Pass) => Pass,
            _ => Info,
        }
    }
}

/// A command's result. The same fields feed the text and the JSON forms.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            status: Status::Info,
            fields: Map::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        m.insert("status".into(), self.status.as_str().into());
        m.extend(self.fields.clone());
        Value::Object(m)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        render_map(&mut out, self.to_json().as_object().expect("object"), 0);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object()) => Some(v.to_string()),
        Value::Object(_) | Value::Array(_) => None,
        other => Some(other.to_string()),
    }
}

fn render_map(out: &mut String, m: &Map<String, Value>, indent: usize) {
    let pad = " ".repeat(indent);
    for (k, v) in m {
        match (scalar(v), v) {
            (Some(s), _) => {
                let _ = writeln!(out, "{pad}{k}: {s}");
            }
            (None, Value::Object(inner)) => {
                let _ = writeln!(out, "{pad}{k}:");
                render_map(out, inner, indent + 2);
            }
            (None, Value::Array(items)) => {
                let _ = writeln!(out, "{pad}{k}:");
                for item in items {
                    match item.as_object() {
                        Some(inner) => {
                            let _ = writeln!(out, "{pad}  -");
                            render_map(out, inner, indent + 4);
                        }
                        None => {
                            let _ = writeln!(out, "{pad}  - {}", scalar(item).unwrap_or_default());
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_form() {
        let mut r = Report::new("demo");
        r.status = Status::Fail;
        r.set("pair", json!([0, 2]))
            .set("witness", json!({"found_in": "R∘S"}));
        assert_eq!(
            r.render(),
            "command: demo\nstatus: fail\npair: [0,2]\nwitness:\n  found_in: R∘S\n"
        );
    }

    #[test]
    fn combining_statuses() {
        assert_eq!(Status::Pass.and(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Inconclusive.and(Status::Fail), Status::Fail);
        assert_eq!(Status::Info.and(Status::Info), Status::Info);
    }
}
