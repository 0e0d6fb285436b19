//! Theorem tables as CSV and as aligned text.

use std::fmt::Write as _;

use bipturan_core::TableRow;

pub const CSV_HEADER: [&str; 6] = ["a", "b", "pattern", "searched", "formula", "match"];

fn fields(r: &TableRow) -> [String; 6] {
    [
        r.a.to_string(),
        r.b.to_string(),
        r.pattern.to_string(),
        r.searched.map(|v| v.to_string()).unwrap_or_default(),
        r.formula.to_string(),
        r.matches.to_string(),
    ]
}

pub fn to_csv(rows: &[TableRow]) -> crate::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(fields(r))?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of ascii fields"))
}

/// Column-aligned table; with `color`, the match column is green or red.
pub fn render(rows: &[TableRow], color: bool) -> String {
    let body: Vec<[String; 6]> = rows.iter().map(fields).collect();
    let mut width = CSV_HEADER.map(str::len);
    for f in &body {
        for (w, cell) in width.iter_mut().zip(f) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: [&str; 6], ok: Option<bool>| {
        for (c, (cell, w)) in cells.iter().zip(width).enumerate() {
            let sep = if c == 0 { "" } else { "  " };
            let padded = format!("{cell:>w$}");
            match ok {
                Some(true) if color && c == 5 => write!(out, "{sep}\x1b[32m{padded}\x1b[0m"),
                Some(false) if color && c == 5 => write!(out, "{sep}\x1b[31m{padded}\x1b[0m"),
                _ => write!(out, "{sep}{padded}"),
            }
            .unwrap();
        }
        out.push('\n');
    };
    line(&mut out, CSV_HEADER, None);
    for (f, r) in body.iter().zip(rows) {
        line(&mut out, f.each_ref().map(String::as_str), Some(r.matches));
    }
    out
}
