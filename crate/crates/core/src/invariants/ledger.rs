use itertools::Itertools;
use serde_json::{json, Value};

use super::{check_degrees, InvariantError};
use crate::expr::integer_json;

/// Which closed form produced a ledger entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    /// `|I| = 1`: the discriminant of one hypersurface.
    Discriminant,
    /// `n = 3`, `|I| = 2`: the tact invariant of two plane curves.
    Tact,
    /// `|I| = n`: the resultant.
    Resultant,
    /// `1 < |I| < n` outside the plane case: a mixed discriminant whose degree
    /// needs the GKZ face sum over a Cayley polytope. Not computed.
    Mixed,
}

impl FactorKind {
    pub fn name(&self) -> &'static str {
        match self {
            FactorKind::Discriminant => "discriminant",
            FactorKind::Tact => "tact",
            FactorKind::Resultant => "resultant",
            FactorKind::Mixed => "mixed",
        }
    }
}

/// One factor `Δ_I` of the Euler discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerFactor {
    /// 1-based, increasing.
    pub subset: Vec<usize>,
    pub kind: FactorKind,
    /// Degree in the coefficients of each `f_i`; `None` when unsupported.
    pub multidegree: Option<Vec<u128>>,
}

impl LedgerFactor {
    /// Supported with nonzero degree. Zero-degree entries (a lone line, two
    /// lines in the plane) are constant and contribute no factor.
    pub fn is_nontrivial(&self) -> bool {
        self.multidegree
            .as_ref()
            .is_some_and(|d| d.iter().any(|&v| v != 0))
    }

    pub fn to_json(&self) -> Value {
        let degree = match &self.multidegree {
            Some(d) => Value::Array(d.iter().map(|&v| integer_json(v)).collect()),
            None => json!("unsupported"),
        };
        json!({ "I": self.subset, "multidegree": degree })
    }
}

/// Degrees of all factors of the Euler discriminant, in coefficient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantLedger {
    n: usize,
    degrees: Vec<u32>,
    factors: Vec<LedgerFactor>,
    totals: Vec<u128>,
}

impl DiscriminantLedger {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Every non-empty `I ⊆ [m]` with `|I| ≤ n`, by size then lexicographically.
    pub fn factors(&self) -> &[LedgerFactor] {
        &self.factors
    }

    /// Componentwise sum over the supported factors.
    pub fn totals(&self) -> &[u128] {
        &self.totals
    }

    pub fn nontrivial_factor_count(&self) -> usize {
        self.factors.iter().filter(|f| f.is_nontrivial()).count()
    }

    pub fn unsupported_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| f.multidegree.is_none())
            .count()
    }

    /// True when no entry is unsupported, so the totals are the full degree.
    pub fn is_complete(&self) -> bool {
        self.unsupported_count() == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "factors": self.factors.iter().map(LedgerFactor::to_json).collect::<Vec<_>>(),
            "totals": self.totals.iter().map(|&v| integer_json(v)).collect::<Vec<_>>(),
        })
    }
}

fn checked_pow(base: u128, exp: usize) -> Result<u128, InvariantError> {
    let exp = u32::try_from(exp).map_err(|_| InvariantError::Overflow)?;
    base.checked_pow(exp).ok_or(InvariantError::Overflow)
}

fn factor_degree(
    n: usize,
    d: &[u128],
    subset: &[usize],
) -> Result<(FactorKind, Option<Vec<u128>>), InvariantError> {
    let overflow = || InvariantError::Overflow;
    let mut out = vec![0u128; d.len()];
    let kind = match subset.len() {
        1 => {
            let i = subset[0];
            out[i] = (n as u128)
                .checked_mul(checked_pow(d[i] - 1, n - 1)?)
                .ok_or_else(overflow)?;
            FactorKind::Discriminant
        }
        k if k == n => {
            for &i in subset {
                out[i] = subset
                    .iter()
                    .filter(|&&j| j != i)
                    .try_fold(1u128, |acc, &j| acc.checked_mul(d[j]))
                    .ok_or_else(overflow)?;
            }
            FactorKind::Resultant
        }
        2 if n == 3 => {
            let (i, j) = (subset[0], subset[1]);
            // slot i: d_j^2 + 2 d_i d_j - 3 d_j, and symmetrically; degrees are
            // u32 so this cannot overflow
            let tact = |a: u128, b: u128| b * b + 2 * a * b - 3 * b;
            out[i] = tact(d[i], d[j]);
            out[j] = tact(d[j], d[i]);
            FactorKind::Tact
        }
        _ => return Ok((FactorKind::Mixed, None)),
    };
    Ok((kind, Some(out)))
}

/// Degree ledger of the Euler discriminant: one entry per non-empty subset
/// `I` with `|I| ≤ n`, using the closed forms that exist (discriminants,
/// resultants, plane tact invariants) and marking the rest unsupported.
pub fn euler_disc_ledger(n: usize, degrees: &[u32]) -> Result<DiscriminantLedger, InvariantError> {
    check_degrees(n, degrees)?;
    let m = degrees.len();
    let d: Vec<u128> = degrees.iter().map(|&v| v as u128).collect();
    let mut factors = Vec::new();
    let mut totals = vec![0u128; m];
    for size in 1..=n.min(m) {
        for subset in (0..m).combinations(size) {
            let (kind, multidegree) = factor_degree(n, &d, &subset)?;
            if let Some(md) = &multidegree {
                for (t, v) in totals.iter_mut().zip(md) {
                    *t = t.checked_add(*v).ok_or(InvariantError::Overflow)?;
                }
            }
            factors.push(LedgerFactor {
                subset: subset.iter().map(|i| i + 1).collect(),
                kind,
                multidegree,
            });
        }
    }
    Ok(DiscriminantLedger {
        n,
        degrees: degrees.to_vec(),
        factors,
        totals,
    })
}
