use std::fs;
use std::path::PathBuf;

use caretlab_core::io::{
    coloring_from_rows, measure_deficit, read_coloring_rows, read_measure_rows,
};
use caretlab_core::rational::format_q;
use caretlab_core::{Magma, Q};
use num_traits::{One, Signed, Zero};

use crate::commands::{Outcome, EXIT_NO};
use crate::doc::{Doc, Table};

/// `None` when the file is well formed, otherwise the first violation.
fn check_file(path: &PathBuf) -> (String, Option<String>) {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return ("unknown".into(), Some(format!("cannot read: {e}"))),
    };
    let header = text.lines().next().unwrap_or("").trim();
    match header {
        "tree,weight" => ("measure".into(), check_measure(&text)),
        "tree,value" => ("coloring".into(), check_coloring(&text)),
        _ => (
            "magma".into(),
            text.parse::<Magma>().err().map(|e| e.to_string()),
        ),
    }
}

fn check_measure(text: &str) -> Option<String> {
    let rows = match read_measure_rows(text.as_bytes()) {
        Ok(r) => r,
        Err(e) => return Some(e.to_string()),
    };
    if let Some(r) = rows.iter().find(|r| r.value.is_negative()) {
        return Some(format!(
            "line {}: negative weight {}",
            r.line,
            format_q(&r.value)
        ));
    }
    let mut seen = std::collections::BTreeMap::new();
    for r in &rows {
        if let Some(first) = seen.insert(&r.tree, r.line) {
            return Some(format!(
                "line {}: tree {} already listed on line {first}",
                r.line, r.tree
            ));
        }
    }
    let deficit = measure_deficit(&rows);
    if !deficit.is_zero() {
        let sum = format_q(&(Q::one() - &deficit));
        return Some(if deficit.is_positive() {
            format!("weights sum to {sum}: deficit {}", format_q(&deficit))
        } else {
            format!("weights sum to {sum}: excess {}", format_q(&-deficit))
        });
    }
    None
}

fn check_coloring(text: &str) -> Option<String> {
    read_coloring_rows(text.as_bytes())
        .and_then(coloring_from_rows)
        .err()
        .map(|e| e.to_string())
}

/// One row per path: its detected kind and `ok` or the first violation.
pub fn validate_artifacts(paths: &[PathBuf]) -> Outcome {
    let mut t = Table::new("files", &["path", "kind", "status"]);
    let mut bad = 0;
    for path in paths {
        let (kind, problem) = check_file(path);
        if problem.is_some() {
            bad += 1;
        }
        t.push(vec![
            path.display().to_string(),
            kind,
            problem.unwrap_or_else(|| "ok".into()),
        ]);
    }
    let mut doc = Doc::new();
    doc.record("files", paths.len())
        .record("violations", bad)
        .with_table(t);
    Outcome {
        doc,
        exit_code: if bad > 0 { EXIT_NO } else { 0 },
    }
}
