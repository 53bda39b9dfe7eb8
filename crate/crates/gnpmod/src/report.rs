//! Rendering of result tables as CSV or aligned text.

use std::time::{Duration, SystemTime, UNIX_EPOCH};

use crate::config::Format;
use crate::error::{CliError, CliResult};

/// Rows of string cells under a fixed header, plus free-form notes that only
/// the text format shows.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

/// Shortest representation that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x}")
}

impl Report {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Report {
            columns: columns.into_iter().map(Into::into).collect(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let internal = |e: csv::Error| CliError::Internal(e.to_string());
        w.write_record(&self.columns).map_err(internal)?;
        for row in &self.rows {
            w.write_record(row).map_err(internal)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
    }

    /// A single row prints as `column value` lines; several rows print as an
    /// aligned grid. Notes follow, prefixed with `# `.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if self.rows.len() == 1 {
            let width = self.columns.iter().map(String::len).max().unwrap_or(0);
            for (col, cell) in self.columns.iter().zip(&self.rows[0]) {
                out.push_str(&format!("{col:<width$}  {cell}\n"));
            }
        } else {
            let mut widths: Vec<usize> = self.columns.iter().map(String::len).collect();
            for row in &self.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c:>w$}"))
                    .collect();
                padded.join("  ") + "\n"
            };
            out.push_str(&line(&self.columns));
            for row in &self.rows {
                out.push_str(&line(row));
            }
        }
        for note in &self.notes {
            out.push_str("# ");
            out.push_str(note);
            out.push('\n');
        }
        out
    }

    /// Renders in `format`. The text format ends with a footer naming the
    /// version and, unless `no_timestamp`, the wall-clock time and the time of
    /// day; CSV output never carries either.
    pub fn render(&self, format: Format, elapsed: Duration, no_timestamp: bool) -> CliResult<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Table => {
                let mut out = self.to_table();
                out.push_str(&footer(elapsed, no_timestamp));
                Ok(out)
            }
        }
    }
}

pub fn footer(elapsed: Duration, no_timestamp: bool) -> String {
    let version = env!("CARGO_PKG_VERSION");
    if no_timestamp {
        format!("# gnpmod {version}\n")
    } else {
        format!(
            "# gnpmod {version}, wall-clock {:.3} s, finished at unix time {}\n",
            elapsed.as_secs_f64(),
            unix_time()
        )
    }
}

pub fn unix_time() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new(["a", "bb"]);
        r.push(vec!["1".into(), "x,y".into()]);
        r.push(vec!["22".into(), "z".into()]);
        r.note("done");
        r
    }

    #[test]
    fn csv_quotes_and_omits_notes() {
        assert_eq!(sample().to_csv().unwrap(), "a,bb\n1,\"x,y\"\n22,z\n");
    }

    #[test]
    fn table_layouts() {
        assert_eq!(sample().to_table(), " a   bb\n 1  x,y\n22    z\n# done\n");
        let mut one = Report::new(["score", "n"]);
        one.push(vec!["0.5".into(), "4".into()]);
        assert_eq!(one.to_table(), "score  0.5\nn      4\n");
    }

    #[test]
    fn footer_suppression() {
        let r = sample();
        let a = r.render(Format::Table, Duration::from_millis(5), true).unwrap();
        assert!(a.ends_with(&format!("# gnpmod {}\n", env!("CARGO_PKG_VERSION"))));
        let b = r.render(Format::Table, Duration::from_millis(5), false).unwrap();
        assert!(b.contains("wall-clock"));
    }

    #[test]
    fn numbers_round_trip() {
        for x in [0.5, 1.0 / 3.0, 0.724_713_522_703_160_3, 1e-12] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }
}
