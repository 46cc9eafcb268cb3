//! Certification of determinantal generators against the saturation oracle.

use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::detgen::{likelihood_generators, DetgenError, GeneratorOptions, IdealGenerators};
use crate::groebner::{
    all_contained, buchberger, likelihood_ideal_by_saturation, Field, GroebnerBasis, MonomialOrder,
    OracleError, OracleOptions,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Detgen(#[from] DetgenError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl VerifyError {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, VerifyError::Oracle(e) if e.is_inconclusive())
    }
}

/// Both inclusions between the determinantal ideal `K` and the saturated
/// ideal `I_A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub generators: IdealGenerators,
    pub saturated: GroebnerBasis,
    /// `K ⊆ I_A`.
    pub determinantal_in_saturated: bool,
    /// `I_A ⊆ K`.
    pub saturated_in_determinantal: bool,
    pub advisory: bool,
    pub notes: Vec<String>,
}

impl Verification {
    pub fn ideal_equal(&self) -> bool {
        self.determinantal_in_saturated && self.saturated_in_determinantal
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "ideal_equal": self.ideal_equal(),
            "determinantal_in_saturated": self.determinantal_in_saturated,
            "saturated_in_determinantal": self.saturated_in_determinantal,
            "determinantal_generators": self.generators.len(),
            "saturated_basis": self.saturated.to_json(),
        });
        if self.advisory {
            out["advisory"] = json!(true);
        }
        if !self.notes.is_empty() {
            out["notes"] = json!(self.notes);
        }
        out
    }
}

/// Computes `K` by minors and `I_A` by saturation and compares them.
///
/// Linearly dependent linear forms leave no pivot for the column reduction;
/// `K` is then taken from the unreduced matrix, which generates the same
/// ideal, and a note is recorded.
pub fn verify(
    a: &Arrangement,
    gen_opts: &GeneratorOptions,
    opts: &OracleOptions,
) -> Result<Verification, VerifyError> {
    let mut notes = Vec::new();
    let generators = match likelihood_generators(a, gen_opts) {
        Err(DetgenError::DegeneratePivot(i)) if gen_opts.reduce_linear => {
            notes.push(format!(
                "linear form {i} is dependent on earlier ones; minors taken without linear reduction"
            ));
            let plain = GeneratorOptions {
                reduce_linear: false,
                ..*gen_opts
            };
            likelihood_generators(a, &plain)?
        }
        other => other?,
    };
    let saturated = likelihood_ideal_by_saturation(a, opts)?;
    let k = generators.polynomials();
    let determinantal_in_saturated = all_contained(&saturated, &k)?;
    let kb = buchberger(a.ring(), &k, MonomialOrder::Grevlex, opts)?;
    let saturated_in_determinantal = all_contained(&kb, saturated.generators())?;
    Ok(Verification {
        generators,
        saturated,
        determinantal_in_saturated,
        saturated_in_determinantal,
        advisory: matches!(opts.field, Field::Prime(_)),
        notes,
    })
}
