//! CSV emission and parsing for curve files.
//!
//! Floats are serialized with 17 significant digits so files round-trip
//! bit-exactly; header comments carry the file kind and the manifest
//! checksum.

use crate::CliError;

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct CsvWriter {
    lines: Vec<String>,
}

impl CsvWriter {
    pub fn new(kind: &str, checksum: &str, columns: &[&str]) -> Self {
        let lines = vec![
            format!("# blockent {kind} v{}", crate::manifest::FORMAT_VERSION),
            format!("# manifest_checksum: {checksum}"),
            columns.join(","),
        ];
        Self { lines }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.lines.push(fields.join(","));
    }

    pub fn finish(self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

/// A parsed curve file: column names and rows of raw fields.
pub struct CsvTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn parse(content: &str) -> Result<Self, CliError> {
        let mut columns = Vec::new();
        let mut rows = Vec::new();
        for line in content.lines() {
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let fields: Vec<String> = line.split(',').map(str::to_string).collect();
            if columns.is_empty() {
                columns = fields;
            } else {
                if fields.len() != columns.len() {
                    return Err(CliError::Usage(format!(
                        "ragged CSV row: expected {} fields, got {}",
                        columns.len(),
                        fields.len()
                    )));
                }
                rows.push(fields);
            }
        }
        if columns.is_empty() {
            return Err(CliError::Usage("CSV has no header row".into()));
        }
        Ok(Self { columns, rows })
    }

    pub fn column_index(&self, name: &str) -> Result<usize, CliError> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| CliError::Usage(format!("CSV is missing column {name}")))
    }

    pub fn f64_column(&self, name: &str) -> Result<Vec<f64>, CliError> {
        let idx = self.column_index(name)?;
        self.rows
            .iter()
            .map(|r| {
                r[idx]
                    .parse::<f64>()
                    .map_err(|e| CliError::Usage(format!("bad float in column {name}: {e}")))
            })
            .collect()
    }

    pub fn usize_column(&self, name: &str) -> Result<Vec<usize>, CliError> {
        let idx = self.column_index(name)?;
        self.rows
            .iter()
            .map(|r| {
                r[idx]
                    .parse::<usize>()
                    .map_err(|e| CliError::Usage(format!("bad integer in column {name}: {e}")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_round_trips() {
        for x in [std::f64::consts::PI, 1.0 / 3.0, 1e-300, 0.0, 12345.6789] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        let bad = "a,b\n1,2\n3\n";
        assert!(CsvTable::parse(bad).is_err());
    }
}
