//! Published reference energies, shipped as CSV inside the binary.

use serde::Deserialize;
use thiserror::Error;

/// The embedded table, comments included.
pub const REFERENCE_CSV: &str = include_str!("../data/table1.csv");
pub const REFERENCE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ReferenceEntry {
    pub n: u32,
    pub l: u32,
    #[serde(rename = "A0")]
    pub a0: u32,
    /// MeV
    #[serde(rename = "E_ref")]
    pub e_ref: f64,
}

#[derive(Debug, Error)]
pub enum ReferenceError {
    #[error("reference table: {0}")]
    Csv(#[from] csv::Error),
    #[error("reference table: header must be n,l,A0,E_ref")]
    Header,
    #[error("reference table: E_ref on row {0} is not finite")]
    NotFinite(usize),
}

/// Parses `n,l,A0,E_ref` rows; lines starting with `#` are comments.
pub fn parse_reference_csv(text: &str) -> Result<Vec<ReferenceEntry>, ReferenceError> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    if rdr.headers()? != vec!["n", "l", "A0", "E_ref"] {
        return Err(ReferenceError::Header);
    }
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<ReferenceEntry>().enumerate() {
        let row = row?;
        if !row.e_ref.is_finite() {
            return Err(ReferenceError::NotFinite(i + 1));
        }
        out.push(row);
    }
    Ok(out)
}

/// The embedded entries. The table is compiled in, so failure to parse is a
/// build defect.
pub fn reference_entries() -> Vec<ReferenceEntry> {
    parse_reference_csv(REFERENCE_CSV).expect("embedded reference table parses")
}
