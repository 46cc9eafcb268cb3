use itertools::Itertools;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::InvariantError;
use crate::detgen::binomial;
use crate::expr::integer_json;
use crate::linalg::{det, rank, RatMatrix};
use crate::poly::{format_rational, Rational};

/// The `k×k` minors of the coefficient matrix, as a block of the product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinorLayer {
    pub k: usize,
    /// `binom(m,k)·binom(n,k)`.
    pub count: u128,
    /// `k·count`, the degree in the matrix entries.
    pub degree: u128,
}

/// The principal A-determinant of a hyperplane arrangement: the product of
/// all minors of its `m×n` coefficient matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneDeterminant {
    m: usize,
    n: usize,
    layers: Vec<MinorLayer>,
    value: Rational,
    euler_value: Rational,
    zero_minors: usize,
}

impl HyperplaneDeterminant {
    pub fn layers(&self) -> &[MinorLayer] {
        &self.layers
    }

    /// Total degree `Σ_k k·binom(m,k)·binom(n,k)` in the matrix entries.
    pub fn degree(&self) -> u128 {
        self.layers.iter().map(|l| l.degree).sum()
    }

    /// Degree of the Euler-discriminant part, the maximal minors.
    pub fn euler_degree(&self) -> u128 {
        self.layers.last().map_or(0, |l| l.degree)
    }

    /// The product evaluated at the given matrix.
    pub fn value(&self) -> &Rational {
        &self.value
    }

    /// Product of the maximal minors only.
    pub fn euler_value(&self) -> &Rational {
        &self.euler_value
    }

    pub fn zero_minors(&self) -> usize {
        self.zero_minors
    }

    pub fn to_json(&self) -> Value {
        let layers: Vec<Value> = self
            .layers
            .iter()
            .map(|l| json!({"k": l.k, "minors": integer_json(l.count), "degree": integer_json(l.degree)}))
            .collect();
        json!({
            "m": self.m,
            "n": self.n,
            "layers": layers,
            "degree": integer_json(self.degree()),
            "euler_degree": integer_json(self.euler_degree()),
            "value": format_rational(&self.value),
            "euler_value": format_rational(&self.euler_value),
            "zero_minors": self.zero_minors,
        })
    }
}

fn shape(c: &RatMatrix) -> Result<(usize, usize), InvariantError> {
    let m = c.len();
    let n = c.first().map_or(0, Vec::len);
    if m == 0 || n == 0 {
        return Err(InvariantError::BadMatrix("empty coefficient matrix".into()));
    }
    if c.iter().any(|r| r.len() != n) {
        return Err(InvariantError::BadMatrix(
            "rows have different lengths".into(),
        ));
    }
    if let Some(i) = c.iter().position(|r| r.iter().all(Zero::is_zero)) {
        return Err(InvariantError::ZeroRow(i + 1));
    }
    Ok((m, n))
}

fn submatrix(c: &RatMatrix, rows: &[usize], cols: &[usize]) -> RatMatrix {
    rows.iter()
        .map(|&r| cols.iter().map(|&j| c[r][j].clone()).collect())
        .collect()
}

/// Degree ledger and value of the product of all `k×k` minors of `c`,
/// `1 ≤ k ≤ n`. Needs `m ≥ n` and no zero rows.
pub fn hyperplane_ea(c: &RatMatrix) -> Result<HyperplaneDeterminant, InvariantError> {
    let (m, n) = shape(c)?;
    if m < n {
        return Err(InvariantError::BadMatrix(format!(
            "need at least as many hyperplanes as variables, got {m}x{n}"
        )));
    }
    let mut layers = Vec::with_capacity(n);
    let mut value = Rational::one();
    let mut euler_value = Rational::one();
    let mut zero_minors = 0;
    for k in 1..=n {
        let count = binomial(m as u64, k as u64)
            .zip(binomial(n as u64, k as u64))
            .and_then(|(a, b)| a.checked_mul(b))
            .ok_or(InvariantError::Overflow)?;
        let degree = count
            .checked_mul(k as u128)
            .ok_or(InvariantError::Overflow)?;
        layers.push(MinorLayer { k, count, degree });
        for rows in (0..m).combinations(k) {
            for cols in (0..n).combinations(k) {
                let minor = det(&submatrix(c, &rows, &cols));
                if minor.is_zero() {
                    zero_minors += 1;
                }
                if k == n {
                    euler_value *= &minor;
                }
                value *= minor;
            }
        }
    }
    Ok(HyperplaneDeterminant {
        m,
        n,
        layers,
        value,
        euler_value,
        zero_minors,
    })
}

/// Outcome of the uniform-matroid test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyperplaneVerdict {
    Snc,
    /// The first dependent set of rows (1-based), smallest size first.
    NotSnc {
        witness: Vec<usize>,
    },
}

impl HyperplaneVerdict {
    pub fn is_snc(&self) -> bool {
        matches!(self, HyperplaneVerdict::Snc)
    }

    pub fn to_json(&self) -> Value {
        match self {
            HyperplaneVerdict::Snc => json!({"verdict": "snc"}),
            HyperplaneVerdict::NotSnc { witness } => {
                json!({"verdict": "not-snc", "witness": witness})
            }
        }
    }
}

/// A hyperplane arrangement is SNC exactly when every set of at most `n`
/// rows of its coefficient matrix is linearly independent.
pub fn snc_check_hyperplanes(c: &RatMatrix) -> Result<HyperplaneVerdict, InvariantError> {
    let (m, n) = shape(c)?;
    let all_cols: Vec<usize> = (0..n).collect();
    for k in 2..=m.min(n) {
        for rows in (0..m).combinations(k) {
            if rank(&submatrix(c, &rows, &all_cols)) < k {
                return Ok(HyperplaneVerdict::NotSnc {
                    witness: rows.iter().map(|r| r + 1).collect(),
                });
            }
        }
    }
    Ok(HyperplaneVerdict::Snc)
}
