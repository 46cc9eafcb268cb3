use itertools::Itertools;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::InvariantError;
use crate::arrangement::{Arrangement, PolyMatrix};
use crate::detgen::bareiss_det;
use crate::groebner::{projective_dimension, Field, OracleOptions, ProjectiveDimension};
use crate::poly::{Polynomial, Ring};

/// Result of one oracle-backed test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Passed,
    Failed,
    /// The oracle ran out of budget.
    Inconclusive(String),
}

impl Check {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Check::Passed
        } else {
            Check::Failed
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Check::Passed => json!("passed"),
            Check::Failed => json!("failed"),
            Check::Inconclusive(why) => json!({ "inconclusive": why }),
        }
    }
}

/// Codimension and smoothness of one intersection `⋂_{i∈I} V(f_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetCheck {
    /// 1-based, increasing.
    pub subset: Vec<usize>,
    /// Projective dimension `n-1-|I|`, or empty when `|I| = n`.
    pub expected: ProjectiveDimension,
    /// Observed projective dimension of `V(f_i : i ∈ I)`.
    pub dimension: Option<ProjectiveDimension>,
    /// Observed projective dimension of the singular locus: `V(f_I)` cut by
    /// the maximal minors of the Jacobian rows of `I`.
    pub singular_dimension: Option<ProjectiveDimension>,
    pub codimension: Check,
    pub smooth: Check,
}

impl SubsetCheck {
    fn failed(&self) -> Option<&'static str> {
        if self.codimension == Check::Failed {
            Some(if self.expected == ProjectiveDimension::Empty {
                "common zero"
            } else {
                "wrong codimension"
            })
        } else if self.smooth == Check::Failed {
            Some("singular intersection")
        } else {
            None
        }
    }

    fn inconclusive(&self) -> bool {
        matches!(self.codimension, Check::Inconclusive(_))
            || matches!(self.smooth, Check::Inconclusive(_))
    }

    pub fn to_json(&self) -> Value {
        let dim = |d: &Option<ProjectiveDimension>| d.map_or(Value::Null, |d| d.to_json());
        json!({
            "I": self.subset,
            "expected_dimension": self.expected.to_json(),
            "dimension": dim(&self.dimension),
            "singular_dimension": dim(&self.singular_dimension),
            "codimension": self.codimension.to_json(),
            "smooth": self.smooth.to_json(),
        })
    }
}

/// What is known about the irreducibility of one `f_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Linear,
    /// A smooth hypersurface in `P^{n-1}` with `n ≥ 3` is irreducible.
    Smooth,
    /// A squarefree binary form of degree at least two is a set of points,
    /// reducible over the complex numbers.
    SplitsOverC,
    Unchecked,
}

impl Irreducibility {
    pub fn name(&self) -> &'static str {
        match self {
            Irreducibility::Linear => "linear",
            Irreducibility::Smooth => "smooth-hypersurface",
            Irreducibility::SplitsOverC => "splits-over-C",
            Irreducibility::Unchecked => "unchecked",
        }
    }
}

/// Per-polynomial report: squarefreeness via the singular locus, and the
/// irreducibility caveat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialCheck {
    /// 1-based.
    pub index: usize,
    pub squarefree: Check,
    pub irreducible: Irreducibility,
}

impl PolynomialCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "index": self.index,
            "squarefree": self.squarefree.to_json(),
            "irreducible": self.irreducible.name(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SncVerdict {
    Snc,
    /// The first failing subset, by size then lexicographically.
    NotSnc {
        witness: Vec<usize>,
        reason: String,
    },
    /// No failure found, but some checks ran out of budget.
    Inconclusive {
        subsets: Vec<Vec<usize>>,
    },
}

impl SncVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            SncVerdict::Snc => "snc",
            SncVerdict::NotSnc { .. } => "not-snc",
            SncVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SncReport {
    pub subsets: Vec<SubsetCheck>,
    pub polynomials: Vec<PolynomialCheck>,
    pub verdict: SncVerdict,
    /// Set when the oracle worked modulo a prime.
    pub advisory: bool,
    pub warnings: Vec<String>,
}

impl SncReport {
    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "verdict": self.verdict.name(),
            "subsets": self.subsets.iter().map(SubsetCheck::to_json).collect::<Vec<_>>(),
            "polynomials": self.polynomials.iter().map(PolynomialCheck::to_json).collect::<Vec<_>>(),
            "warnings": self.warnings,
        });
        match &self.verdict {
            SncVerdict::NotSnc { witness, reason } => {
                out["witness"] = json!(witness);
                out["reason"] = json!(reason);
            }
            SncVerdict::Inconclusive { subsets } => out["inconclusive"] = json!(subsets),
            SncVerdict::Snc => {}
        }
        if self.advisory {
            out["advisory"] = json!(true);
        }
        out
    }
}

fn oracle_dimension(
    ring: Ring,
    gens: &[Polynomial],
    opts: &OracleOptions,
) -> Result<Result<ProjectiveDimension, String>, InvariantError> {
    match projective_dimension(ring, gens, opts) {
        Ok(d) => Ok(Ok(d)),
        Err(e) if e.is_inconclusive() => Ok(Err(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn check_subset(
    ring: Ring,
    polys: &[Polynomial],
    jac: &PolyMatrix,
    subset: &[usize],
    opts: &OracleOptions,
) -> Result<SubsetCheck, InvariantError> {
    let n = ring.x_vars();
    let k = subset.len();
    let expected = if k >= n {
        ProjectiveDimension::Empty
    } else {
        ProjectiveDimension::Dim(n - 1 - k)
    };
    let mut gens: Vec<Polynomial> = subset.iter().map(|&i| polys[i].clone()).collect();
    let (dimension, codimension) = match oracle_dimension(ring, &gens, opts)? {
        Ok(d) => (Some(d), Check::from_bool(d == expected)),
        Err(why) => (None, Check::Inconclusive(why)),
    };
    if k >= n {
        // an empty intersection is trivially smooth
        return Ok(SubsetCheck {
            subset: subset.iter().map(|i| i + 1).collect(),
            expected,
            dimension,
            singular_dimension: dimension,
            smooth: codimension.clone(),
            codimension,
        });
    }
    for cols in (0..n).combinations(k) {
        let minor = bareiss_det(&jac.submatrix(subset, &cols))?;
        if !minor.is_zero() {
            gens.push(minor);
        }
    }
    let (singular_dimension, smooth) = match oracle_dimension(ring, &gens, opts)? {
        Ok(d) => (Some(d), Check::from_bool(d == ProjectiveDimension::Empty)),
        Err(why) => (None, Check::Inconclusive(why)),
    };
    Ok(SubsetCheck {
        subset: subset.iter().map(|i| i + 1).collect(),
        expected,
        dimension,
        singular_dimension,
        codimension,
        smooth,
    })
}

/// Certifies the SNC conditions with the Gröbner oracle: for every non-empty
/// `I` with `|I| ≤ n`, the intersection has codimension `|I|` and is smooth
/// (its Jacobian minors have no common projective zero on it).
///
/// Cost grows quickly with `n` and the degrees; intended for `n ≤ 3` and low
/// degrees. Subsets are checked in parallel; the report order is fixed.
pub fn snc_check(a: &Arrangement, opts: &OracleOptions) -> Result<SncReport, InvariantError> {
    let n = a.n();
    let m = a.m();
    let ring = Ring::new(0, n)?;
    let polys = a
        .polynomials()
        .iter()
        .map(|p| p.to_ring(ring))
        .collect::<Result<Vec<_>, _>>()?;
    let jac = PolyMatrix::from_rows(
        ring,
        polys
            .iter()
            .map(|p| ring.x_range().map(|v| p.partial_derivative(v)).collect())
            .collect(),
    );
    let subsets: Vec<Vec<usize>> = (1..=n.min(m))
        .flat_map(|k| (0..m).combinations(k))
        .collect();
    let subsets = subsets
        .par_iter()
        .map(|s| check_subset(ring, &polys, &jac, s, opts))
        .collect::<Result<Vec<_>, _>>()?;

    let mut warnings = Vec::new();
    let polynomials: Vec<PolynomialCheck> = (0..m)
        .map(|i| {
            let single = &subsets[i];
            let squarefree = match single.singular_dimension {
                // a repeated factor p^2 puts all of V(p), dimension n-2, in the singular locus
                Some(ProjectiveDimension::Dim(d)) => Check::from_bool(d + 2 < n),
                Some(ProjectiveDimension::Empty) => Check::Passed,
                None => single.smooth.clone(),
            };
            let irreducible = if a.degrees()[i] == 1 {
                Irreducibility::Linear
            } else if n == 2 && squarefree == Check::Passed {
                Irreducibility::SplitsOverC
            } else if n >= 3 && single.smooth == Check::Passed {
                Irreducibility::Smooth
            } else {
                Irreducibility::Unchecked
            };
            PolynomialCheck {
                index: i + 1,
                squarefree,
                irreducible,
            }
        })
        .collect();
    for p in &polynomials {
        match p.irreducible {
            Irreducibility::SplitsOverC => warnings.push(format!(
                "f{} has degree {} in two variables: it is squarefree but splits into points over C",
                p.index,
                a.degrees()[p.index - 1]
            )),
            Irreducibility::Unchecked => {
                warnings.push(format!("irreducibility of f{} is not checked", p.index))
            }
            _ => {}
        }
    }

    let verdict = if let Some((c, why)) = subsets.iter().find_map(|c| c.failed().map(|w| (c, w))) {
        SncVerdict::NotSnc {
            witness: c.subset.clone(),
            reason: why.to_string(),
        }
    } else {
        let open: Vec<Vec<usize>> = subsets
            .iter()
            .filter(|c| c.inconclusive())
            .map(|c| c.subset.clone())
            .collect();
        if open.is_empty() {
            SncVerdict::Snc
        } else {
            SncVerdict::Inconclusive { subsets: open }
        }
    };
    Ok(SncReport {
        subsets,
        polynomials,
        verdict,
        advisory: matches!(opts.field, Field::Prime(_)),
        warnings,
    })
}
