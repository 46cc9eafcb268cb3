//! Text input and JSON output.
//!
//! Polynomials are written with the fixed variable tokens `s1..sm`,
//! `x1..xn`; see [`parse_expression`] for the grammar. Arrangements arrive as
//! JSON documents (see [`ArrangementFile`]). Every result type implements
//! [`ToJson`] and is rendered by [`render_report`] with sorted keys.

mod document;
mod parser;

pub use document::{parse_arrangement, ArrangementFile, InputError, FORMAT_VERSION};
pub use parser::{parse_expression, ParseError, ParseErrorKind};

use serde_json::Value;

/// Conversion into a JSON value with canonical polynomial strings.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for Value {
    fn to_json(&self) -> Value {
        self.clone()
    }
}

impl ToJson for crate::arrangement::Arrangement {
    fn to_json(&self) -> Value {
        crate::arrangement::Arrangement::to_json(self)
    }
}

impl ToJson for crate::arrangement::PolyMatrix {
    fn to_json(&self) -> Value {
        crate::arrangement::PolyMatrix::to_json(self)
    }
}

/// Pretty-printed JSON with sorted object keys and a trailing newline.
pub fn render_report<T: ToJson + ?Sized>(value: &T) -> String {
    let mut s =
        serde_json::to_string_pretty(&value.to_json()).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// A JSON number when the value fits in 64 bits, otherwise a decimal string.
pub fn integer_json(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(small) => Value::from(small),
        Err(_) => Value::String(v.to_string()),
    }
}

/// Signed counterpart of [`integer_json`].
pub fn signed_json(v: i128) -> Value {
    match i64::try_from(v) {
        Ok(small) => Value::from(small),
        Err(_) => Value::String(v.to_string()),
    }
}
