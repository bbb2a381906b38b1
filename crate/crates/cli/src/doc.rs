use std::fmt::Write as _;

use crate::config::Format;

/// A named table: one header, rows of equal length.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Table {
        Table {
            name: name.to_string(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// The payload of one run: summary records and at most one table.
///
/// Text renders everything as `key = value` lines, table cells as
/// `name.row.column = value`. CSV renders the table when there is one and
/// the records as `key,value` otherwise; records that do not fit are
/// returned separately so the caller can report them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Doc {
    pub records: Vec<(String, String)>,
    pub table: Option<Table>,
}

impl Doc {
    pub fn new() -> Doc {
        Doc::default()
    }

    pub fn record(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Doc {
        self.records.push((key.into(), value.to_string()));
        self
    }

    pub fn with_table(&mut self, table: Table) -> &mut Doc {
        self.table = Some(table);
        self
    }

    /// Rendered payload and the records left out of it.
    pub fn render(&self, format: Format) -> (String, Vec<(String, String)>) {
        match format {
            Format::Text => {
                let mut out = String::new();
                for (k, v) in &self.records {
                    writeln!(out, "{k} = {v}").unwrap();
                }
                if let Some(t) = &self.table {
                    writeln!(out, "{}.rows = {}", t.name, t.rows.len()).unwrap();
                    for (i, row) in t.rows.iter().enumerate() {
                        for (col, cell) in t.header.iter().zip(row) {
                            writeln!(out, "{}.{i}.{col} = {cell}", t.name).unwrap();
                        }
                    }
                }
                (out, Vec::new())
            }
            Format::Csv => match &self.table {
                Some(t) => (csv_text(&t.header, &t.rows), self.records.clone()),
                None => {
                    let rows: Vec<Vec<String>> = self
                        .records
                        .iter()
                        .map(|(k, v)| vec![k.clone(), v.clone()])
                        .collect();
                    (
                        csv_text(&["key".to_string(), "value".to_string()], &rows),
                        Vec::new(),
                    )
                }
            },
        }
    }
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
