//! Report document and its JSON / CSV / Markdown renderings.
//!
//! CSV and Markdown flatten each result object into one row, joining nested
//! keys with `.`; arrays are kept as compact JSON.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::cli::Format;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub results: Vec<Value>,
    pub seed: u64,
    pub version: &'static str,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            params: BTreeMap::new(),
            results: Vec::new(),
            seed,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.params.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn push(&mut self, row: impl Serialize) {
        self.results.push(serde_json::to_value(row).expect("serializable"));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => render_csv(&self.rows()),
            Format::Md => self.render_md(),
        }
    }

    fn rows(&self) -> Table {
        Table::from_values(&self.results)
    }

    fn render_md(&self) -> String {
        let mut out = format!("## fsdet {}\n\n", self.command);
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", cell(v, Format::Md))).collect();
        out.push_str(&format!("seed {} · version {}", self.seed, self.version));
        if !params.is_empty() {
            out.push_str(&format!(" · {}", params.join(", ")));
        }
        out.push_str("\n\n");
        let t = self.rows();
        if t.columns.is_empty() {
            return out;
        }
        let esc = |s: &str| s.replace('|', "\\|");
        out.push_str(&format!("| {} |\n", t.columns.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | ")));
        out.push_str(&format!("|{}\n", "---|".repeat(t.columns.len())));
        for row in &t.rows {
            let cells: Vec<String> =
                row.iter().map(|v| esc(&v.as_ref().map_or(String::new(), |v| cell(v, Format::Md)))).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        out
    }
}

struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Option<Value>>>,
}

impl Table {
    fn from_values(values: &[Value]) -> Self {
        let flat: Vec<Vec<(String, Value)>> = values
            .iter()
            .map(|v| {
                let mut out = Vec::new();
                flatten("", v, &mut out);
                out
            })
            .collect();
        let mut columns: Vec<String> = Vec::new();
        for row in &flat {
            for (k, _) in row {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
        let rows = flat
            .into_iter()
            .map(|row| {
                let map: Map<String, Value> = row.into_iter().collect();
                columns.iter().map(|c| map.get(c).cloned()).collect()
            })
            .collect();
        Self { columns, rows }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, child, out);
            }
        }
        _ => out.push((if prefix.is_empty() { "value".into() } else { prefix.to_string() }, v.clone())),
    }
}

fn cell(v: &Value, format: Format) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) if format == Format::Md => match n.as_f64() {
            Some(x) if !(n.is_u64() || n.is_i64()) => sig6(x),
            _ => n.to_string(),
        },
        Value::Array(items) if format == Format::Md => {
            format!("[{}]", items.iter().map(|i| cell(i, format)).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn render_csv(t: &Table) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(&t.columns).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row.iter().map(|v| v.as_ref().map_or(String::new(), |v| cell(v, Format::Csv))))
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// Six significant digits, `%g` style.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // rounding may carry into a new digit, e.g. 999999.5
        if s.trim_start_matches('-').split('.').next().map_or(0, str::len) > 6 {
            format!("{x:.5e}")
        } else {
            s
        }
    } else {
        format!("{x:.5e}")
    };
    trim_zeros(&s)
}

fn trim_zeros(s: &str) -> String {
    let (mantissa, exp) = match s.split_once('e') {
        Some((m, e)) => (m, Some(e)),
        None => (s, None),
    };
    let mantissa = if mantissa.contains('.') { mantissa.trim_end_matches('0').trim_end_matches('.') } else { mantissa };
    match exp {
        Some(e) => format!("{mantissa}e{e}"),
        None => mantissa.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(16.0), "16");
        assert_eq!(sig6(1.0 / 3.0), "0.333333");
        assert_eq!(sig6(2.063782934279), "2.06378");
        assert_eq!(sig6(-0.000123456789), "-0.000123457");
        assert_eq!(sig6(1.5e-7), "1.5e-7");
        assert_eq!(sig6(123456789.0), "1.23457e8");
        assert_eq!(sig6(999999.7), "1e6");
    }

    fn sample() -> Report {
        let mut r = Report::new("bound", 42);
        r.param("theorem", "t4");
        r.push(json!({"lambdas": [1.0, 2.0, 2.0], "value": 63.0, "bound": {"branch": "a|b", "alt": null}}));
        r.push(json!({"value": 0.1, "extra": true}));
        r
    }

    #[test]
    fn csv_flattens_and_unions_columns() {
        let csv = sample().render(Format::Csv);
        assert_eq!(csv, "lambdas,value,bound.branch,bound.alt,extra\n\"[1.0,2.0,2.0]\",63.0,a|b,,\n,0.1,,,true\n");
    }

    #[test]
    fn markdown_escapes_pipes() {
        let md = sample().render(Format::Md);
        assert!(md.contains("| lambdas | value | bound.branch | bound.alt | extra |"), "{md}");
        assert!(md.contains("| [1, 2, 2] | 63 | a\\|b |  |  |"), "{md}");
        assert!(md.contains("theorem=t4"));
    }

    #[test]
    fn json_has_required_fields() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        for k in ["command", "params", "results", "seed", "version"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(v["results"][0]["value"], json!(63.0));
    }
}
