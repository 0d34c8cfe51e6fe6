use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// One disagreement or invalid witness, with everything needed to replay it.
#[derive(Clone, Debug)]
pub struct Failure {
    pub index: usize,
    pub origin: String,
    pub message: String,
    pub dump: Value,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
    /// Informational lines: skipped instances, counts per origin, etc.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} checked, {} failed",
            self.name,
            self.checked,
            self.failures.len()
        )
    }

    /// Appends another report; its failure indices are shifted past ours.
    pub fn merge(&mut self, other: SuiteReport) {
        let offset = self.checked;
        self.checked += other.checked;
        self.failures.extend(other.failures.into_iter().map(|mut f| {
            f.index += offset;
            f
        }));
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.name,
            "checked": self.checked,
            "passed": self.passed(),
            "notes": self.notes,
            "failures": self.failures.iter().map(|f| json!({
                "index": f.index,
                "origin": f.origin,
                "message": f.message,
            })).collect::<Vec<_>>(),
        })
    }

    /// Writes one JSON bundle per failure into `dir`.
    pub fn write_dumps(&self, dir: &Path) -> Result<usize> {
        let io = |e: std::io::Error| Error::Io {
            path: dir.display().to_string(),
            message: e.to_string(),
        };
        std::fs::create_dir_all(dir).map_err(io)?;
        for f in &self.failures {
            let path = dir.join(format!("{}-{:05}.json", self.name, f.index));
            let body = json!({
                "suite": self.name,
                "index": f.index,
                "origin": f.origin,
                "message": f.message,
                "details": f.dump,
            });
            std::fs::write(&path, serde_json::to_string_pretty(&body).expect("serializes")).map_err(io)?;
        }
        Ok(self.failures.len())
    }
}

/// Runs `check` on every item in parallel and collects the failures in
/// item order. An error from `check` is itself reported as a failure.
pub fn run_checks<T: Sync>(
    name: &str,
    items: &[T],
    origin: impl Fn(&T) -> String + Sync,
    check: impl Fn(&T) -> Result<Option<(String, Value)>> + Sync,
) -> SuiteReport {
    let results: Vec<Option<Failure>> = items
        .par_iter()
        .enumerate()
        .map(|(index, item)| {
            let (message, dump) = match check(item) {
                Ok(None) => return None,
                Ok(Some(f)) => f,
                Err(e) => (format!("error: {e}"), Value::Null),
            };
            Some(Failure {
                index,
                origin: origin(item),
                message,
                dump,
            })
        })
        .collect();
    SuiteReport {
        name: name.to_string(),
        checked: items.len(),
        failures: results.into_iter().flatten().collect(),
        notes: Vec::new(),
    }
}
