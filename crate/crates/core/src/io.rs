//! JSON documents for channels and matrices.
//!
//! A matrix is a row-major array of rows, each entry a `[re, im]` pair.
//! A channel is `{"n_in": .., "n_out": .., "kraus": [matrix, ...]}` with an
//! optional `"validation"` block.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{KrausSet, ValidationReport};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

pub type MatrixDoc = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelDocument {
    pub n_in: usize,
    pub n_out: usize,
    pub kraus: Vec<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
}

pub fn matrix_to_doc(m: &ComplexMatrix) -> MatrixDoc {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn matrix_from_doc(doc: &MatrixDoc) -> Result<ComplexMatrix> {
    let rows = doc.len();
    let cols = doc.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 || doc.iter().any(|r| r.len() != cols) {
        return Err(Error::Format("matrix rows must be nonempty and of equal length".into()));
    }
    let data = doc
        .iter()
        .flatten()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    ComplexMatrix::new(rows, cols, data).map_err(|e| Error::Format(e.to_string()))
}

impl ChannelDocument {
    pub fn from_channel(channel: &KrausSet, validation: Option<ValidationReport>) -> Self {
        Self {
            n_in: channel.n_in(),
            n_out: channel.n_out(),
            kraus: channel.operators().iter().map(matrix_to_doc).collect(),
            validation,
        }
    }

    /// Rebuilds the Kraus set, checking the declared dimensions.
    pub fn to_channel(&self) -> Result<KrausSet> {
        let ops = self.kraus.iter().map(matrix_from_doc).collect::<Result<Vec<_>>>()?;
        let channel = KrausSet::new(ops).map_err(|e| Error::Format(e.to_string()))?;
        if (channel.n_in(), channel.n_out()) != (self.n_in, self.n_out) {
            return Err(Error::Format(format!(
                "declared {} -> {} but operators are {}x{}",
                self.n_in,
                self.n_out,
                channel.n_out(),
                channel.n_in()
            )));
        }
        Ok(channel)
    }
}

pub fn channel_to_json(channel: &KrausSet, validation: Option<ValidationReport>) -> String {
    serde_json::to_string(&ChannelDocument::from_channel(channel, validation)).expect("plain data")
}

pub fn channel_from_json(text: &str) -> Result<KrausSet> {
    let doc: ChannelDocument = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    doc.to_channel()
}

pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string(&matrix_to_doc(m)).expect("plain data")
}

pub fn matrix_from_json(text: &str) -> Result<ComplexMatrix> {
    let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    matrix_from_doc(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn channel_round_trip_is_exact() {
        let ch = families::qubit_family_a(0.3, 1.2).unwrap();
        let report = ValidationReport::of(&ch, 1e-10).unwrap();
        let text = channel_to_json(&ch, Some(report));
        assert_eq!(channel_from_json(&text).unwrap(), ch);
        let doc: ChannelDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.validation, Some(report));
    }

    #[test]
    fn reads_minimal_document() {
        let text = r#"{"n_in": 1, "n_out": 2, "kraus": [[[[1, 0]], [[0, 0]]]]}"#;
        let ch = channel_from_json(text).unwrap();
        assert_eq!((ch.n_in(), ch.n_out(), ch.len()), (1, 2, 1));
    }

    #[test]
    fn malformed_documents_are_format_errors() {
        for text in [
            "not json",
            r#"{"n_in": 2}"#,
            r#"{"n_in": 2, "n_out": 2, "kraus": []}"#,
            r#"{"n_in": 3, "n_out": 2, "kraus": [[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#,
            r#"{"n_in": 2, "n_out": 2, "kraus": [[[[1,0],[0,0]],[[0,0]]]]}"#,
            r#"{"n_in": 1, "n_out": 1, "kraus": [[[[1,0],[2,0]]], [[[1,0]]]]}"#,
        ] {
            assert!(matches!(channel_from_json(text), Err(Error::Format(_))), "{text}");
        }
    }

    #[test]
    fn matrix_round_trip() {
        let f = families::fourier(3);
        assert_eq!(matrix_from_json(&matrix_to_json(&f)).unwrap(), f);
        assert!(matrix_from_json("[]").is_err());
    }
}
