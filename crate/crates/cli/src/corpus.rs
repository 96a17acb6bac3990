//! Corpus ingestion: graph6 files checked against a JSON manifest of
//! expected counts and census rows.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use diam2::from_graph6;
use diam2::properties::witness_report;
use diam2::search::{census_rows, Witness};

use crate::commands::{emit, read_lines, Failure, Outcome, EXIT_OK, EXIT_PARSE, EXIT_PREDICATE};

#[derive(Debug, Deserialize, Serialize)]
pub struct CorpusManifest {
    pub files: Vec<CorpusFile>,
}

#[derive(Debug, Deserialize, Serialize)]
pub struct CorpusFile {
    pub path: PathBuf,
    pub s: usize,
    pub t: usize,
    pub expected_count: usize,
    /// Expected census rows; orders absent here are not checked.
    #[serde(default)]
    pub census: Vec<ExpectedRow>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExpectedRow {
    pub n: usize,
    pub edges: usize,
    /// `[degree, multiplicity]` pairs.
    pub degrees: Vec<(usize, usize)>,
    /// `four`, `five` or `other`.
    pub girth: String,
    pub count: usize,
}

pub fn load(path: &Path) -> Result<CorpusManifest, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

pub fn run(manifest_path: &Path, out: &mut dyn Write) -> Outcome {
    let manifest = load(manifest_path)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let mut code = EXIT_OK;
    for file in &manifest.files {
        let path = base.join(&file.path);
        let mut witnesses = Vec::new();
        let mut failures = Vec::new();
        let mut parse_errors = Vec::new();
        for line in read_lines(Some(&path))? {
            match from_graph6(&line.text) {
                Ok(g) => {
                    let r = witness_report(&g, file.s, file.t)?;
                    if !r.is_witness {
                        failures.push(json!({ "line": line.number, "graph6": line.text, "report": r }));
                    }
                    witnesses.push(Witness::from_graph(&g));
                }
                Err(e) => parse_errors.push(json!({ "line": line.number, "error": e.to_string() })),
            }
        }
        let found: Vec<ExpectedRow> = census_rows(&witnesses)
            .into_iter()
            .map(|r| ExpectedRow {
                n: r.n,
                edges: r.edge_count,
                degrees: r.degrees,
                girth: serde_json::to_value(r.girth).expect("serializable").as_str().expect("string").to_string(),
                count: r.count,
            })
            .collect();
        let mut expected = file.census.clone();
        expected.sort();
        let checked: Vec<usize> = {
            let mut v: Vec<usize> = expected.iter().map(|r| r.n).collect();
            v.dedup();
            v
        };
        let found_checked: Vec<&ExpectedRow> = found.iter().filter(|r| checked.contains(&r.n)).collect();
        let mismatched_rows: Vec<&ExpectedRow> = expected.iter().filter(|r| !found_checked.contains(r)).collect();
        let unexpected_rows: Vec<&ExpectedRow> = found_checked.into_iter().filter(|r| !expected.contains(r)).collect();
        let mut per_order: BTreeMap<usize, usize> = BTreeMap::new();
        for w in &witnesses {
            *per_order.entry(w.n).or_default() += 1;
        }
        let ok = parse_errors.is_empty()
            && failures.is_empty()
            && witnesses.len() == file.expected_count
            && mismatched_rows.is_empty()
            && unexpected_rows.is_empty();
        emit(
            out,
            &json!({
                "file": file.path,
                "graphs": witnesses.len(),
                "expected_count": file.expected_count,
                "per_order": per_order.into_iter().collect::<Vec<_>>(),
                "predicate_failures": failures,
                "parse_errors": parse_errors,
                "missing_rows": mismatched_rows,
                "unexpected_rows": unexpected_rows,
                "ok": ok,
            }),
        )?;
        if !parse_errors.is_empty() {
            code = EXIT_PARSE;
        } else if !ok && code == EXIT_OK {
            code = EXIT_PREDICATE;
        }
    }
    Ok(code)
}
