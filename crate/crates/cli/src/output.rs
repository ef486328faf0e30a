use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
    Csv,
}

/// A command result in all three renderings.
pub struct Output {
    pub human: String,
    pub json: Value,
    /// Explicit CSV; when absent, the top-level JSON fields become
    /// `key,value` rows.
    pub csv: Option<String>,
}

impl Output {
    pub fn new(human: String, json: Value) -> Self {
        Output { human, json, csv: None }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => ensure_newline(self.human.clone()),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Csv => match &self.csv {
                Some(c) => ensure_newline(c.clone()),
                None => key_value_csv(&self.json),
            },
        }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn csv_field(v: &Value) -> String {
    let raw = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

fn key_value_csv(v: &Value) -> String {
    let mut out = String::from("key,value\n");
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                out.push_str(&format!("{k},{}\n", csv_field(val)));
            }
        }
        other => out.push_str(&format!("value,{}\n", csv_field(other))),
    }
    out
}
