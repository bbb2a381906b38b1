//! CSV files: measures (`tree,weight`), colorings (`tree,value`) and verdict
//! tables (`n,verdict,certificate_kind,oscillation`). Rationals are `p/q`.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::ramsey::{Coloring, ScanRow};
use crate::rational::{format_q, parse_q, Q};
use crate::tree::{enumerate_trees, parse_tree, Tree};

/// One parsed data row with its 1-based file line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub line: usize,
    pub tree: Tree,
    pub value: Q,
}

fn read_rows(reader: impl Read, value_column: &str) -> Result<Vec<Row>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "tree" || &headers[1] != value_column {
        return Err(Error::Data {
            line: 1,
            message: format!(
                "expected header `tree,{value_column}`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != 2 {
            return Err(Error::Data {
                line,
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let tree = parse_tree(&record[0]).map_err(|e| Error::Data {
            line,
            message: format!("bad tree `{}`: {e}", &record[0]),
        })?;
        let value = parse_q(&record[1]).ok_or_else(|| Error::Data {
            line,
            message: format!("bad rational `{}` (expected p/q)", &record[1]),
        })?;
        rows.push(Row { line, tree, value });
    }
    Ok(rows)
}

/// Rows of a measure file, without the normalization check.
pub fn read_measure_rows(reader: impl Read) -> Result<Vec<Row>> {
    read_rows(reader, "weight")
}

pub fn read_measure(reader: impl Read) -> Result<Measure<Tree>> {
    let rows = read_measure_rows(reader)?;
    let mut seen = BTreeMap::new();
    for r in &rows {
        if r.value.is_negative() {
            return Err(Error::Data {
                line: r.line,
                message: format!("negative weight {}", format_q(&r.value)),
            });
        }
        if let Some(first) = seen.insert(r.tree.clone(), r.line) {
            return Err(Error::Data {
                line: r.line,
                message: format!("tree {} already listed on line {first}", r.tree),
            });
        }
    }
    let sum: Q = rows.iter().map(|r| &r.value).sum();
    if !sum.is_one() {
        return Err(Error::NotNormalized {
            sum: format_q(&sum),
        });
    }
    Measure::new(rows.into_iter().map(|r| (r.tree, r.value)))
}

/// Writes rows in canonical tree order.
pub fn write_measure(mu: &Measure<Tree>, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["tree", "weight"])?;
    for (t, q) in mu.iter() {
        w.write_record([t.to_string(), format_q(q)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_coloring_rows(reader: impl Read) -> Result<Vec<Row>> {
    read_rows(reader, "value")
}

/// Reads a coloring of `T_n`. Every tree of `T_n` must appear exactly once;
/// the first missing tree in canonical order is reported otherwise.
pub fn read_coloring(reader: impl Read) -> Result<Coloring> {
    coloring_from_rows(read_coloring_rows(reader)?)
}

pub fn coloring_from_rows(rows: Vec<Row>) -> Result<Coloring> {
    let first = rows.first().ok_or_else(|| Error::Data {
        line: 1,
        message: "coloring file has no rows".into(),
    })?;
    let n = first.tree.size();
    let mut values: BTreeMap<Tree, (usize, Q)> = BTreeMap::new();
    for r in rows {
        if r.tree.size() != n {
            return Err(Error::Data {
                line: r.line,
                message: format!("tree {} has size {}, expected {n}", r.tree, r.tree.size()),
            });
        }
        if r.value.is_negative() || r.value > Q::one() {
            return Err(Error::Data {
                line: r.line,
                message: format!("value {} outside [0, 1]", format_q(&r.value)),
            });
        }
        if let Some((first, _)) = values.get(&r.tree) {
            return Err(Error::Data {
                line: r.line,
                message: format!("tree {} already listed on line {first}", r.tree),
            });
        }
        values.insert(r.tree, (r.line, r.value));
    }
    let domain = enumerate_trees(n)?;
    let mut ordered = Vec::with_capacity(domain.len());
    for t in &domain {
        match values.remove(t) {
            Some((_, v)) => ordered.push(v),
            None => {
                return Err(Error::Invalid(format!(
                    "coloring of T_{n} is missing tree {t}"
                )))
            }
        }
    }
    Coloring::new(n, ordered)
}

pub fn write_coloring(c: &Coloring, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["tree", "value"])?;
    for (t, v) in enumerate_trees(c.n())?.iter().zip(c.values()) {
        w.write_record([t.to_string(), format_q(v)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_verdicts(rows: &[ScanRow], writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["n", "verdict", "certificate_kind", "oscillation"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.verdict.to_string(),
            r.certificate_kind.to_string(),
            format_q(&r.oscillation),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// The missing mass `1 - Σ weights` of a measure file, zero when normalized.
pub fn measure_deficit(rows: &[Row]) -> Q {
    let sum: Q = rows.iter().map(|r| &r.value).sum();
    Q::one() - sum
}
