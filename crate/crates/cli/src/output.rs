use std::fmt::Write as _;

use gamma0_hecke::{FormalSum, IntMatrix2};
use serde::Serialize;
use serde_json::Value;

/// The result of one subcommand: its JSON payload, the TSV rendering of the
/// same data, and whether any check it ran failed.
pub struct Report {
    pub json: Value,
    pub tsv: String,
    pub passed: bool,
}

impl Report {
    pub fn table<T: Serialize>(data: &T, tsv: String) -> Self {
        Self {
            json: serde_json::to_value(data).expect("output types serialize"),
            tsv,
            passed: true,
        }
    }

    pub fn check<T: Serialize>(data: &T, tsv: String, passed: bool) -> Self {
        Self {
            passed,
            ..Self::table(data, tsv)
        }
    }
}

pub fn matrix_cells(m: &IntMatrix2) -> String {
    let [a, b, c, d] = m.entries();
    format!("{a}\t{b}\t{c}\t{d}")
}

pub fn matrices_tsv<'a>(ms: impl IntoIterator<Item = &'a IntMatrix2>) -> String {
    let mut out = String::from("a\tb\tc\td\n");
    for m in ms {
        writeln!(out, "{}", matrix_cells(m)).unwrap();
    }
    out
}

pub fn formal_sum_tsv(x: &FormalSum) -> String {
    let mut out = String::from("coeff\ta\tb\tc\td\n");
    for (c, m) in x.terms() {
        writeln!(out, "{c}\t{}", matrix_cells(&m)).unwrap();
    }
    out
}

pub fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string() + "\n").collect()
}

/// `key<TAB>value` lines from the top-level fields of a JSON object.
pub fn key_values(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (k, x) in map {
            let shown = match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            writeln!(out, "{k}\t{shown}").unwrap();
        }
    }
    out
}
