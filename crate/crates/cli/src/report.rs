//! JSON reports: sorted keys, exact values as "p/q" strings, floats rounded
//! to 12 significant digits, and a source tag for every numeric field.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use torsion_core::rat::format_rat;
use torsion_core::Rat;

/// Rounds to 12 significant digits so reports are stable across platforms.
pub fn decimal(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(format!("{x}"));
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    json!(rounded)
}

#[derive(Debug, Default)]
pub struct Report {
    fields: BTreeMap<String, Value>,
    sources: BTreeMap<String, String>,
    warnings: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn exact(&mut self, key: &str, q: &Rat, source: &str) -> &mut Self {
        self.fields.insert(key.into(), Value::String(format_rat(q)));
        self.sources.insert(key.into(), source.into());
        self
    }

    pub fn exact_list(&mut self, key: &str, qs: &[Rat], source: &str) -> &mut Self {
        self.fields.insert(key.into(), Value::Array(qs.iter().map(|q| Value::String(format_rat(q))).collect()));
        self.sources.insert(key.into(), source.into());
        self
    }

    pub fn float(&mut self, key: &str, x: f64, source: &str) -> &mut Self {
        self.fields.insert(key.into(), decimal(x));
        self.sources.insert(key.into(), source.into());
        self
    }

    pub fn float_list(&mut self, key: &str, xs: &[f64], source: &str) -> &mut Self {
        self.fields.insert(key.into(), Value::Array(xs.iter().map(|&x| decimal(x)).collect()));
        self.sources.insert(key.into(), source.into());
        self
    }

    pub fn number(&mut self, key: &str, n: impl Into<Value>, source: &str) -> &mut Self {
        self.fields.insert(key.into(), n.into());
        self.sources.insert(key.into(), source.into());
        self
    }

    /// A non-numeric field, or a nested structure whose numbers are sourced
    /// under this key.
    pub fn value(&mut self, key: &str, v: Value) -> &mut Self {
        self.fields.insert(key.into(), v);
        self
    }

    pub fn source(&mut self, key: &str, source: &str) -> &mut Self {
        self.sources.insert(key.into(), source.into());
        self
    }

    pub fn warn(&mut self, msg: impl Into<String>) -> &mut Self {
        self.warnings.push(msg.into());
        self
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (k, v) in &self.fields {
            map.insert(k.clone(), v.clone());
        }
        if !self.sources.is_empty() {
            map.insert("sources".into(), json!(self.sources));
        }
        if !self.warnings.is_empty() {
            map.insert("warnings".into(), json!(self.warnings));
        }
        Value::Object(map)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use torsion_core::rat::rat;

    #[test]
    fn rounding_and_order() {
        assert_eq!(decimal(1.0 / 3.0), json!(0.333333333333));
        assert_eq!(decimal(-0.08333333333333333), json!(-0.0833333333333));
        let mut r = Report::new();
        r.exact("b", &rat(-1, 6), "x").float("a", 0.5, "y");
        let text = r.render();
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert!(text.contains("\"-1/6\""));
    }
}
