use serde::{Deserialize, Serialize};

use super::parser::{parse_expression, ParseError};
use crate::arrangement::{Arrangement, ArrangementError};
use crate::poly::Ring;

pub const FORMAT_VERSION: u32 = 1;

/// On-disk arrangement description.
///
/// ```json
/// {"version": 1, "n": 3, "polynomials": ["x1", "x1^2 + x2^2 - x3^2"], "labels": ["L", "C"]}
/// ```
///
/// `degrees` is optional; when present it must match the parsed degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub version: u32,
    pub n: usize,
    pub polynomials: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("malformed JSON document: {0}")]
    Json(String),
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    UnsupportedVersion(u32),
    #[error("polynomial {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error("polynomial {index} has degree {actual} but the file declares {declared}")]
    DegreeMismatch {
        index: usize,
        declared: u32,
        actual: u32,
    },
    #[error("{got} declared degrees or labels for {expected} polynomials")]
    CountMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

impl ArrangementFile {
    pub fn from_json(doc: &str) -> Result<Self, InputError> {
        serde_json::from_str(doc).map_err(|e| InputError::Json(e.to_string()))
    }

    pub fn to_arrangement(&self) -> Result<Arrangement, InputError> {
        if self.version != FORMAT_VERSION {
            return Err(InputError::UnsupportedVersion(self.version));
        }
        if self.n < 2 {
            return Err(ArrangementError::TooFewVariables(self.n).into());
        }
        let m = self.polynomials.len();
        if m == 0 {
            return Err(ArrangementError::NoPolynomials.into());
        }
        // Parse with the s-variables present so that a stray `s1` is reported
        // as a parameter rather than an unknown token.
        let ring = Ring::new(m, self.n).map_err(ArrangementError::from)?;
        let polys = self
            .polynomials
            .iter()
            .enumerate()
            .map(|(k, text)| {
                parse_expression(text, &ring).map_err(|source| InputError::Parse {
                    index: k + 1,
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let a = Arrangement::new(self.n, polys)?;
        if let Some(declared) = &self.degrees {
            if declared.len() != m {
                return Err(InputError::CountMismatch {
                    expected: m,
                    got: declared.len(),
                });
            }
            for (k, (&d, &actual)) in declared.iter().zip(a.degrees()).enumerate() {
                if d != actual {
                    return Err(InputError::DegreeMismatch {
                        index: k + 1,
                        declared: d,
                        actual,
                    });
                }
            }
        }
        match &self.labels {
            Some(l) if l.len() != m => Err(InputError::CountMismatch {
                expected: m,
                got: l.len(),
            }),
            Some(l) => Ok(a.with_labels(l.clone())),
            None => Ok(a),
        }
    }

    /// The document describing `a`.
    pub fn from_arrangement(a: &Arrangement) -> Self {
        ArrangementFile {
            version: FORMAT_VERSION,
            n: a.n(),
            polynomials: a.polynomials().iter().map(|p| p.to_string()).collect(),
            labels: a.labels().map(<[String]>::to_vec),
            degrees: None,
        }
    }
}

/// Parses a JSON arrangement document.
pub fn parse_arrangement(doc: &str) -> Result<Arrangement, InputError> {
    ArrangementFile::from_json(doc)?.to_arrangement()
}
