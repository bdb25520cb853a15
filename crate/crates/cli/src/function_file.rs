//! The JSON function file format.
//!
//! ```json
//! {"dimension": 2, "lower": [0, 0], "upper": [2, 1],
//!  "entries": [{"point": [0, 0], "value": "1/2"}]}
//! ```
//!
//! Values are strings holding an exact rational (`"3"`, `"-4"`, `"1/2"`) or a
//! finite decimal (`"13.5"`). Box points without an entry are `+∞`.

use std::path::Path;

use icx_core::value::{parse_rational, render_rational};
use icx_core::{table_in_box, FnOracle, IntBox, IntPoint, Value};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub dimension: usize,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub point: Vec<i64>,
    pub value: String,
}

impl FunctionFile {
    /// The finite entries of `f`, lexicographically sorted, on its box.
    pub fn from_oracle(f: &FnOracle) -> FunctionFile {
        let b = f.bbox();
        FunctionFile {
            dimension: f.dim(),
            lower: b.lower().coords().to_vec(),
            upper: b.upper().coords().to_vec(),
            entries: f
                .finite_entries()
                .into_iter()
                .map(|(p, v)| Entry {
                    point: p.0,
                    value: render_rational(&v),
                })
                .collect(),
        }
    }

    pub fn to_oracle(&self) -> CliResult<FnOracle> {
        let n = self.dimension;
        if n == 0 {
            return Err(CliError::Format("dimension must be at least 1".into()));
        }
        for (name, v) in [("lower", &self.lower), ("upper", &self.upper)] {
            if v.len() != n {
                return Err(CliError::Format(format!(
                    "{name} has {} coordinates, expected {n}",
                    v.len()
                )));
            }
        }
        let bbox = IntBox::new(IntPoint(self.lower.clone()), IntPoint(self.upper.clone()))?;
        let mut entries = Vec::with_capacity(self.entries.len());
        for (k, e) in self.entries.iter().enumerate() {
            if e.point.len() != n {
                return Err(CliError::Format(format!(
                    "entry {k}: point has {} coordinates, expected {n}",
                    e.point.len()
                )));
            }
            let v = parse_rational(&e.value)
                .map_err(|err| CliError::Format(format!("entry {k}: {err}")))?;
            entries.push((IntPoint(e.point.clone()), Value::Finite(v)));
        }
        table_in_box(bbox, entries).map_err(|err| CliError::Format(err.to_string()))
    }
}

/// Parses a function file from text.
pub fn parse(text: &str) -> CliResult<FnOracle> {
    let file: FunctionFile = serde_json::from_str(text).map_err(|e| CliError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.to_oracle()
}

/// Renders `f` as a function file, newline terminated.
pub fn render(f: &FnOracle) -> String {
    let mut s =
        serde_json::to_string_pretty(&FunctionFile::from_oracle(f)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn read(path: &Path) -> CliResult<FnOracle> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text).map_err(|e| match e {
        CliError::Json { .. } | CliError::Format(_) => {
            CliError::Format(format!("{}: {e}", path.display()))
        }
        other => other,
    })
}

pub fn write(path: &Path, f: &FnOracle) -> CliResult<()> {
    std::fs::write(path, render(f)).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}
