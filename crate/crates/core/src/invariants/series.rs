use serde_json::{json, Value};

use super::{check_degrees, InvariantError};
use crate::expr::signed_json;

/// Multidegree of the likelihood correspondence as a class
/// `c_0 σ^n + c_1 σ^{n-1} τ + … + c_{n-1} σ τ^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultidegreeClass {
    n: usize,
    degrees: Vec<u32>,
    coefficients: Vec<i128>,
}

impl MultidegreeClass {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `c_0, …, c_{n-1}`. Negative values occur when the complement is not
    /// very affine, e.g. a single line in the plane.
    pub fn coefficients(&self) -> &[i128] {
        &self.coefficients
    }

    /// The last coefficient `c_{n-1}`.
    pub fn ml_degree(&self) -> i128 {
        *self.coefficients.last().expect("n >= 2 coefficients")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "degrees": self.degrees,
            "coefficients": self.coefficients.iter().map(|&c| signed_json(c)).collect::<Vec<_>>(),
            "ml_degree": signed_json(self.ml_degree()),
        })
    }
}

/// Taylor coefficients of `(1-z)^n / ∏(1 - d_i z)` up to `z^order`, by
/// truncated convolution in checked 128-bit arithmetic.
pub fn series_coefficients(
    n: usize,
    degrees: &[u32],
    order: usize,
) -> Result<Vec<i128>, InvariantError> {
    let mut out = vec![0i128; order + 1];
    // (1 - z)^n, truncated
    let mut binom: i128 = 1;
    for (k, slot) in out.iter_mut().enumerate() {
        if k > n {
            break;
        }
        *slot = if k % 2 == 0 { binom } else { -binom };
        binom = binom
            .checked_mul((n - k) as i128)
            .ok_or(InvariantError::Overflow)?
            / (k as i128 + 1);
    }
    // multiply by 1/(1 - d z) as a running prefix sum: b_k = a_k + d·b_{k-1}
    for &d in degrees {
        for k in 1..=order {
            out[k] = out[k - 1]
                .checked_mul(d as i128)
                .and_then(|v| v.checked_add(out[k]))
                .ok_or(InvariantError::Overflow)?;
        }
    }
    Ok(out)
}

/// Coefficients `c_0..c_{n-1}` of the multidegree class.
pub fn multidegree_coeffs(n: usize, degrees: &[u32]) -> Result<MultidegreeClass, InvariantError> {
    check_degrees(n, degrees)?;
    let coefficients = series_coefficients(n, degrees, n - 1)?;
    Ok(MultidegreeClass {
        n,
        degrees: degrees.to_vec(),
        coefficients,
    })
}

/// `c_{n-1}`: the ML degree of an SNC arrangement with these degrees, and an
/// upper bound for every arrangement with these degrees.
pub fn ml_degree(n: usize, degrees: &[u32]) -> Result<i128, InvariantError> {
    Ok(multidegree_coeffs(n, degrees)?.ml_degree())
}
