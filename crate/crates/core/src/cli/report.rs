use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::exactalg::Rational;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One command result. Fields are declared in key order and every map is
/// ordered, so serialization is canonical.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub notes: Vec<String>,
    pub params: Map<String, Value>,
    pub passes: BTreeMap<String, bool>,
    pub values: Map<String, Value>,
    pub version: String,
    /// Pre-rendered text block shown by the text format (the blow-up tree).
    #[serde(skip)]
    pub text_block: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), version: VERSION.to_string(), ..Default::default() }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn value(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.values.insert(key.to_string(), v.into());
        self
    }

    pub fn rational(&mut self, key: &str, r: &Rational) -> &mut Self {
        self.value(key, rat(r))
    }

    pub fn check(&mut self, key: &str, ok: bool) -> &mut Self {
        self.passes.insert(key.to_string(), ok);
        self
    }

    pub fn note(&mut self, n: impl Into<String>) -> &mut Self {
        self.notes.push(n.into());
        self
    }

    pub fn all_pass(&self) -> bool {
        self.passes.values().all(|&b| b)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        let _ = writeln!(s, "{} {}", self.command, params.join(" "));
        for (k, v) in &self.values {
            match v {
                Value::Array(items) if items.iter().any(|i| !i.is_string() && !i.is_number()) => {
                    let _ = writeln!(s, "  {k}:");
                    for i in items {
                        let _ = writeln!(s, "    {}", plain(i));
                    }
                }
                Value::Object(_) if k == "tree" => {}
                _ => {
                    let _ = writeln!(s, "  {k} = {}", plain(v));
                }
            }
        }
        if let Some(block) = &self.text_block {
            for line in block.lines() {
                let _ = writeln!(s, "  | {line}");
            }
        }
        for (k, ok) in &self.passes {
            let _ = writeln!(s, "  [{}] {k}", if *ok { "PASS" } else { "FAIL" });
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}

/// Canonical exact rendering: `p/q` in lowest terms, integers without `/1`.
pub fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(plain).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}
