//! Golden-file checks over a directory of graph files.
//!
//! Every `<stem>.json` in the corpus directory is a graph; its expected
//! report lives at `golden/<stem>.report.json` and is the verdict document
//! under default options.

use std::io::Write;
use std::path::{Path, PathBuf};

use gkm_core::format::parse_graph_file;
use gkm_core::verdict::{realizability_report_with, ReportOptions};
use serde_json::Value;

use crate::{Format, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: PathBuf,
    pub golden: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryOutcome {
    Pass,
    /// Path of the first field whose value differs.
    Mismatch(String),
    MissingGolden,
    Error(String),
}

/// Graph files of the corpus, sorted by name.
pub fn entries(dir: &Path) -> std::io::Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for item in std::fs::read_dir(dir)? {
        let path = item?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") || !path.is_file() {
            continue;
        }
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        out.push(CorpusEntry {
            golden: dir.join("golden").join(format!("{name}.report.json")),
            graph: path,
            name,
        });
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

/// The golden document for a graph file: pretty JSON with a final newline.
pub fn report_document(graph: &Path) -> Result<String, String> {
    let text = std::fs::read_to_string(graph).map_err(|e| format!("{}: {e}", graph.display()))?;
    let file = parse_graph_file(&text).map_err(|e| format!("{}: {e}", graph.display()))?;
    let report = realizability_report_with(&file.graph, file.connection.as_ref(), ReportOptions::default())
        .map_err(|e| e.to_string())?;
    Ok(serde_json::to_string_pretty(&report).expect("json") + "\n")
}

/// Dotted path of the first difference between two documents, if any.
pub fn first_difference(expected: &Value, actual: &Value) -> Option<String> {
    fn walk(e: &Value, a: &Value, path: &str) -> Option<String> {
        let here = || if path.is_empty() { "$".to_string() } else { path.to_string() };
        match (e, a) {
            (Value::Object(eo), Value::Object(ao)) => {
                for (k, ev) in eo {
                    let sub = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                    match ao.get(k) {
                        Some(av) => {
                            if let Some(p) = walk(ev, av, &sub) {
                                return Some(p);
                            }
                        }
                        None => return Some(sub),
                    }
                }
                ao.keys()
                    .find(|k| !eo.contains_key(*k))
                    .map(|k| if path.is_empty() { k.clone() } else { format!("{path}.{k}") })
            }
            (Value::Array(ea), Value::Array(aa)) => {
                for (i, (ev, av)) in ea.iter().zip(aa).enumerate() {
                    if let Some(p) = walk(ev, av, &format!("{path}[{i}]")) {
                        return Some(p);
                    }
                }
                (ea.len() != aa.len()).then(|| format!("{path}[{}]", ea.len().min(aa.len())))
            }
            _ => (e != a).then(here),
        }
    }
    walk(expected, actual, "")
}

pub fn check_entry(entry: &CorpusEntry) -> EntryOutcome {
    let actual = match report_document(&entry.graph) {
        Ok(doc) => doc,
        Err(e) => return EntryOutcome::Error(e),
    };
    let Ok(expected) = std::fs::read_to_string(&entry.golden) else {
        return EntryOutcome::MissingGolden;
    };
    if expected == actual {
        return EntryOutcome::Pass;
    }
    let parsed: Result<Value, _> = serde_json::from_str(&expected);
    match parsed {
        Ok(e) => {
            let a: Value = serde_json::from_str(&actual).expect("own output parses");
            EntryOutcome::Mismatch(first_difference(&e, &a).unwrap_or_else(|| "(formatting)".into()))
        }
        Err(err) => EntryOutcome::Error(format!("{}: {err}", entry.golden.display())),
    }
}

pub fn run_corpus(dir: &Path, update: bool, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let list = match entries(dir) {
        Ok(list) => list,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", dir.display());
            return EXIT_INPUT;
        }
    };
    if list.is_empty() {
        let _ = writeln!(err, "error: {}: no entries", dir.display());
        return EXIT_NEGATIVE;
    }
    if update {
        let golden_dir = dir.join("golden");
        if let Err(e) = std::fs::create_dir_all(&golden_dir) {
            let _ = writeln!(err, "error: {}: {e}", golden_dir.display());
            return EXIT_INPUT;
        }
        for entry in &list {
            match report_document(&entry.graph) {
                Ok(doc) => {
                    if let Err(e) = std::fs::write(&entry.golden, doc) {
                        let _ = writeln!(err, "error: {}: {e}", entry.golden.display());
                        return EXIT_INPUT;
                    }
                    let _ = writeln!(out, "updated {}", entry.name);
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_INPUT;
                }
            }
        }
        return EXIT_OK;
    }

    let results: Vec<(String, EntryOutcome)> =
        list.iter().map(|e| (e.name.clone(), check_entry(e))).collect();
    let passed = results.iter().filter(|(_, r)| *r == EntryOutcome::Pass).count();
    match format {
        Format::Json => {
            let doc = serde_json::json!({
                "entries": results.iter().map(|(name, r)| {
                    let (status, detail) = match r {
                        EntryOutcome::Pass => ("pass", None),
                        EntryOutcome::Mismatch(p) => ("mismatch", Some(p.clone())),
                        EntryOutcome::MissingGolden => ("missing-golden", None),
                        EntryOutcome::Error(e) => ("error", Some(e.clone())),
                    };
                    serde_json::json!({"name": name, "status": status, "detail": detail})
                }).collect::<Vec<_>>(),
                "passed": passed,
                "total": results.len(),
            });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        Format::Text => {
            for (name, r) in &results {
                let line = match r {
                    EntryOutcome::Pass => format!("pass  {name}"),
                    EntryOutcome::Mismatch(p) => format!("FAIL  {name}: first difference at {p}"),
                    EntryOutcome::MissingGolden => format!("FAIL  {name}: no golden report"),
                    EntryOutcome::Error(e) => format!("FAIL  {name}: {e}"),
                };
                let _ = writeln!(out, "{line}");
            }
            let _ = writeln!(out, "{passed}/{} entries match", results.len());
        }
    }
    if passed == results.len() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn difference_paths() {
        let a = json!({"x": {"y": [1, 2, {"z": true}]}, "w": 1});
        let mut b = a.clone();
        assert_eq!(first_difference(&a, &b), None);
        b["x"]["y"][2]["z"] = json!(false);
        assert_eq!(first_difference(&a, &b).as_deref(), Some("x.y[2].z"));
        let c = json!({"x": {"y": [1]}, "w": 1});
        assert_eq!(first_difference(&a, &c).as_deref(), Some("x.y[1]"));
        assert_eq!(first_difference(&json!(1), &json!(2)).as_deref(), Some("$"));
    }
}
