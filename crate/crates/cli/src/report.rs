//! Output envelopes. JSON objects always carry `pinrep_version` and `seed`;
//! CSV tables start with one `#` metadata line and then a fixed header row.

use serde::Serialize;
use serde_json::{json, Map, Value};

pub fn json_envelope(command: &str, seed: u64, body: impl Serialize) -> String {
    let mut out = Map::new();
    out.insert("pinrep_version".into(), json!(pinrep::VERSION));
    out.insert("command".into(), json!(command));
    out.insert("seed".into(), json!(seed));
    match serde_json::to_value(body).expect("serializable body") {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(out)).expect("json");
    s.push('\n');
    s
}

pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(command: &str, seed: u64, meta: &[(&str, String)], header: &[&str]) -> Self {
        let mut text = format!(
            "# pinrep_version={} command={command} seed={seed}",
            pinrep::VERSION
        );
        for (k, v) in meta {
            text.push_str(&format!(" {k}={v}"));
        }
        text.push('\n');
        text.push_str(&header.join(","));
        text.push('\n');
        Self { text }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub fn rows(m: &pinrep::linalg::Mat4) -> Vec<[f64; 4]> {
    (0..4)
        .map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)], m[(i, 3)]])
        .collect()
}

/// Shortest representation that reads back to the same f64.
pub fn num(x: f64) -> String {
    format!("{x}")
}
