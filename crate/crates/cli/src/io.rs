//! Single-column CSV input and output.

use std::io::{Read, Write};
use std::path::Path;

use crate::CliError;

/// Reads one numeric column. A non-numeric first row is taken as a header;
/// any later non-numeric, non-finite or multi-field row is an error naming
/// its 1-based line.
pub fn read_series<R: Read>(reader: R) -> Result<Vec<f64>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut values = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Usage(format!("CSV error: {e}")))?;
        let line = rec.position().map_or(i as u64 + 1, |p| p.line());
        if rec.len() != 1 {
            return Err(CliError::Usage(format!(
                "row {line}: expected a single column, found {} fields",
                rec.len()
            )));
        }
        let field = &rec[0];
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(_) => {
                return Err(CliError::Usage(format!("row {line}: value '{field}' is not finite")))
            }
            Err(_) if i == 0 => {}
            Err(_) => {
                return Err(CliError::Usage(format!("row {line}: '{field}' is not a number")))
            }
        }
    }
    Ok(values)
}

pub fn read_series_file(path: &Path) -> Result<Vec<f64>, CliError> {
    let file = std::fs::File::open(path)
        .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?;
    read_series(std::io::BufReader::new(file))
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// One value per line with 17 significant digits, so reading back is exact.
pub fn write_series<W: Write>(mut w: W, values: &[f64]) -> std::io::Result<()> {
    for v in values {
        writeln!(w, "{v:.16e}")?;
    }
    w.flush()
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}
