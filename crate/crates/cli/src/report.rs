use std::fmt::Write;

use serde_json::Value;

use crate::Format;

/// Output of one subcommand, renderable in each format.
///
/// CSV carries only the table; JSON carries `json`; text shows the summary
/// lines followed by the aligned table.
#[derive(Debug, Default)]
pub struct Report {
    pub summary: Vec<(&'static str, String)>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
    /// Set when a result contradicts a theorem; the process exits with 2.
    pub violation: Option<String>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.summary {
            let _ = writeln!(s, "{k}: {v}");
        }
        if self.header.is_empty() {
            return s;
        }
        if !s.is_empty() {
            s.push('\n');
        }
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let mut l = String::new();
            for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
                if i + 1 == cells.len() {
                    l.push_str(c);
                } else {
                    let _ = write!(l, "{c:<w$}  ");
                }
            }
            l.trim_end().to_string()
        };
        s.push_str(&line(self.header.clone()));
        s.push('\n');
        for row in &self.rows {
            s.push_str(&line(row.iter().map(String::as_str).collect()));
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        let r = Report {
            summary: vec![("count", "2".into())],
            header: vec!["n", "value"],
            rows: vec![vec!["1".into(), "a, b".into()], vec!["10".into(), "c".into()]],
            json: serde_json::json!({"count": 2}),
            violation: None,
        };
        assert_eq!(r.render(Format::Csv), "n,value\n1,\"a, b\"\n10,c\n");
        assert_eq!(r.render(Format::Text), "count: 2\n\nn   value\n1   a, b\n10  c\n");
        assert_eq!(r.render(Format::Json), "{\n  \"count\": 2\n}\n");
    }
}
