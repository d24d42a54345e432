use std::fs;
use std::path::Path;

use nbhd::graph::{graph_from_edge_list, graph_from_json, make_complete, make_cycle, make_edgeless, make_kneser, make_path, petersen, Graph};
use nbhd::{Error, Result};

/// Resolves a graph argument: a builtin such as `cycle:5`, `kneser:5:2` or
/// `petersen`, otherwise a path to a JSON graph or a plain edge list.
pub fn load_graph(spec: &str) -> Result<Graph> {
    if let Some(g) = builtin(spec)? {
        return Ok(g);
    }
    let text = fs::read_to_string(spec).map_err(|e| Error::Parse(format!("cannot read {spec}: {e}")))?;
    if Path::new(spec).extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{') {
        graph_from_json(&text)
    } else {
        graph_from_edge_list(&text)
    }
}

fn builtin(spec: &str) -> Result<Option<Graph>> {
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    let nums = || -> Result<Vec<usize>> {
        args.iter()
            .map(|a| a.parse().map_err(|_| Error::Parse(format!("bad number {a:?} in graph spec {spec:?}"))))
            .collect()
    };
    let g = match (name, args.len()) {
        ("petersen", 0) => petersen(),
        ("cycle", 1) => make_cycle(nums()?[0])?,
        ("path", 1) => make_path(nums()?[0])?,
        ("complete", 1) => make_complete(nums()?[0])?,
        ("edgeless", 1) => make_edgeless(nums()?[0]),
        ("kneser", 2) => {
            let v = nums()?;
            make_kneser(v[0], v[1])?
        }
        _ => return Ok(None),
    };
    Ok(Some(g))
}
