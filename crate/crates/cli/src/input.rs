use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use planar_turan_core::formats::graph6;
use planar_turan_core::Graph;

use crate::commands::Usage;

/// Reads graph6 lines from `path`, or stdin when `path` is absent or `-`.
pub fn read_graphs(path: Option<&Path>) -> Result<Vec<Graph>> {
    let text = match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            s
        }
    };
    let graphs = graph6::decode_all(&text)?;
    if graphs.is_empty() {
        return Err(Usage("no graphs in input".into()).into());
    }
    Ok(graphs)
}
