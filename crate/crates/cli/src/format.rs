//! Number formatting and CSV assembly.

use anyhow::Context;

use crate::RunConfig;

/// Scientific notation with `precision` digits after the point.
pub fn num(x: f64, precision: usize) -> String {
    format!("{x:.precision$e}")
}

/// Fixed notation, for single summary values.
pub fn fixed(x: f64, precision: usize) -> String {
    format!("{x:.precision$}")
}

/// A CSV document: `# config` line, optional further comment lines, header
/// and rows.
pub struct CsvDoc {
    comments: Vec<String>,
    writer: csv::Writer<Vec<u8>>,
}

impl CsvDoc {
    pub fn new(config: &RunConfig, header: &[&str]) -> anyhow::Result<Self> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header)?;
        Ok(CsvDoc {
            comments: vec![config.to_string()],
            writer,
        })
    }

    /// Adds a `# …` line between the config line and the header.
    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn row<I, S>(&mut self, cells: I) -> anyhow::Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(cells).context("writing CSV row")
    }

    pub fn finish(self) -> anyhow::Result<String> {
        let body = self.writer.into_inner().context("flushing CSV")?;
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(std::str::from_utf8(&body)?);
        Ok(out)
    }
}
