//! Report document model and the JSON/CSV writers.
//!
//! Both formats print every float with 17 significant digits
//! (`{:.16e}`), enough to recover the exact `f64`, and identical between
//! formats. Field order is fixed by construction, so identical runs produce
//! byte-identical output.

use std::fmt::Write as _;

/// Formats a float with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// A JSON-serializable value with deterministic field order.
#[derive(Clone, Debug)]
pub enum Value {
    Str(String),
    Int(i64),
    Float(f64),
    Bool(bool),
    List(Vec<Value>),
    Map(Vec<(String, Value)>),
}

impl Value {
    pub fn map(fields: Vec<(&str, Value)>) -> Value {
        Value::Map(
            fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )
    }

    pub fn str(s: impl Into<String>) -> Value {
        Value::Str(s.into())
    }
}

fn escape_json(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

fn write_json(value: &Value, indent: usize, out: &mut String) {
    match value {
        Value::Str(s) => escape_json(s, out),
        Value::Int(i) => {
            let _ = write!(out, "{i}");
        }
        Value::Float(x) => out.push_str(&fmt_float(*x)),
        Value::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Value::List(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent + 1));
                write_json(item, indent + 1, out);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Map(fields) => {
            if fields.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (key, item)) in fields.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent + 1));
                escape_json(key, out);
                out.push_str(": ");
                write_json(item, indent + 1, out);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
    }
}

/// One report: configuration echo, data rows, summary.
pub struct Document {
    pub config: Value,
    pub rows: Vec<Value>,
    pub summary: Value,
}

impl Document {
    pub fn to_json(&self) -> String {
        let doc = Value::map(vec![
            ("config", self.config.clone()),
            ("rows", Value::List(self.rows.clone())),
            ("summary", self.summary.clone()),
            ("version", Value::str("1")),
        ]);
        let mut out = String::new();
        write_json(&doc, 0, &mut out);
        out.push('\n');
        out
    }

    /// CSV with a header row; one line per data row. Nested maps flatten with
    /// underscore-joined keys, lists join with `;`.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = Vec::new();
        if let Some(first) = self.rows.first() {
            flatten_keys(first, "", &mut header);
            writer.write_record(&header)?;
        }
        for row in &self.rows {
            let mut record: Vec<String> = Vec::new();
            flatten_values(row, &mut record);
            writer.write_record(&record)?;
        }
        let bytes = writer.into_inner().expect("in-memory writer");
        Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
    }
}

fn flatten_keys(value: &Value, prefix: &str, out: &mut Vec<String>) {
    match value {
        Value::Map(fields) => {
            for (key, item) in fields {
                let name = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}_{key}")
                };
                flatten_keys(item, &name, out);
            }
        }
        _ => out.push(prefix.to_string()),
    }
}

fn flatten_values(value: &Value, out: &mut Vec<String>) {
    match value {
        Value::Map(fields) => {
            for (_, item) in fields {
                flatten_values(item, out);
            }
        }
        Value::Str(s) => out.push(s.clone()),
        Value::Int(i) => out.push(i.to_string()),
        Value::Float(x) => out.push(fmt_float(*x)),
        Value::Bool(b) => out.push(b.to_string()),
        Value::List(items) => {
            let joined: Vec<String> = items
                .iter()
                .map(|item| match item {
                    Value::Str(s) => s.clone(),
                    Value::Float(x) => fmt_float(*x),
                    Value::Int(i) => i.to_string(),
                    Value::Bool(b) => b.to_string(),
                    _ => String::from("<nested>"),
                })
                .collect();
            out.push(joined.join("; "));
        }
    }
}
