//! The clutter file format: `{"n": 6, "edges": [[1,2,5],[1,3,4],...]}`,
//! 1-indexed.

use std::path::Path;

use reeskit_core::clutter::Clutter;
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClutterFile {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl ClutterFile {
    /// Edges in canonical order, each sorted.
    pub fn from_clutter(c: &Clutter) -> Self {
        ClutterFile {
            n: c.n(),
            edges: c.edge_lists().into_iter().map(|e| e.into_iter().map(|v| v + 1).collect()).collect(),
        }
    }

    pub fn to_clutter(&self) -> CliResult<Clutter> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            let mut zero_based = Vec::with_capacity(e.len());
            for &v in e {
                if v == 0 || v > self.n {
                    return Err(CliError::Input(format!("edge {}: vertex {v} outside 1..={}", k + 1, self.n)));
                }
                zero_based.push(v - 1);
            }
            edges.push(zero_based);
        }
        Ok(Clutter::new(self.n, &edges)?)
    }
}

pub fn parse_clutter(text: &str) -> CliResult<Clutter> {
    let file: ClutterFile =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed clutter JSON: {e}")))?;
    file.to_clutter()
}

pub fn read_clutter(path: &Path) -> CliResult<Clutter> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_clutter(&text)
}

pub fn emit_clutter(c: &Clutter) -> String {
    serde_json::to_string(&ClutterFile::from_clutter(c)).expect("clutter serializes")
}
