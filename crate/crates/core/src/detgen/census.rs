use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::DetgenError;
use crate::expr::integer_json;

/// Generators of one degree in the predicted minimal generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    /// Number of Jacobian columns in the minors of this group.
    pub jacobian_columns: usize,
    pub count: u128,
    /// x-degree `Σd - i`; negative only outside the range where the
    /// prediction is meaningful.
    pub x_degree: i64,
}

/// Predicted size and degrees of a minimal generating set of the likelihood
/// ideal of an SNC arrangement, Euler relation included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub degrees: Vec<u32>,
    pub ell: usize,
    pub entries: Vec<CensusEntry>,
    /// Minors plus the Euler relation.
    pub total: u128,
}

impl Census {
    pub fn minor_count(&self) -> u128 {
        self.total - 1
    }

    /// x-degree → number of generators, the Euler relation counted at 0.
    pub fn histogram(&self) -> BTreeMap<i64, u128> {
        let mut h = BTreeMap::new();
        *h.entry(0).or_insert(0) += 1;
        for e in &self.entries {
            *h.entry(e.x_degree).or_insert(0) += e.count;
        }
        h
    }

    pub fn to_json(&self) -> Value {
        let by_degree: serde_json::Map<String, Value> = self
            .histogram()
            .into_iter()
            .map(|(d, c)| (d.to_string(), integer_json(c)))
            .collect();
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "jacobian_columns": e.jacobian_columns,
                    "count": integer_json(e.count),
                    "bidegree": [1, e.x_degree],
                })
            })
            .collect();
        json!({
            "n": self.n,
            "m": self.degrees.len(),
            "degrees": self.degrees,
            "ell": self.ell,
            "entries": entries,
            "by_degree": by_degree,
            "minors": integer_json(self.minor_count()),
            "total": integer_json(self.total),
        })
    }
}

/// Binomial coefficient with overflow detection.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        // r * (n - i) is divisible by (i + 1) after the multiplication
        r = r.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(r)
}

/// Counts and degrees of the minimal generators predicted for an SNC
/// arrangement with the given degrees in `n` variables.
pub fn generator_census(n: usize, degrees: &[u32]) -> Result<Census, DetgenError> {
    if n < 2 {
        return Err(DetgenError::BadCensusInput(format!(
            "n must be at least 2, got {n}"
        )));
    }
    if degrees.is_empty() {
        return Err(DetgenError::BadCensusInput(
            "at least one degree is required".into(),
        ));
    }
    if degrees.contains(&0) {
        return Err(DetgenError::BadCensusInput(
            "degrees must be positive".into(),
        ));
    }
    let m = degrees.len() as u64;
    let n64 = n as u64;
    let linear = degrees.iter().filter(|&&d| d == 1).count();
    let ell = linear.min(n);
    let sum: i64 = degrees.iter().map(|&d| d as i64).sum();
    let mut entries = Vec::new();
    let mut total: u128 = 1;
    for i in ell.max(2)..=n {
        let a = binomial(n64 - ell as u64, (i - ell) as u64).ok_or(DetgenError::Overflow)?;
        let b = binomial(m - 1, i as u64 - 2).ok_or(DetgenError::Overflow)?;
        let count = a.checked_mul(b).ok_or(DetgenError::Overflow)?;
        if count == 0 {
            continue;
        }
        total = total.checked_add(count).ok_or(DetgenError::Overflow)?;
        entries.push(CensusEntry {
            jacobian_columns: i,
            count,
            x_degree: sum - i as i64,
        });
    }
    Ok(Census {
        n,
        degrees: degrees.to_vec(),
        ell,
        entries,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_quadrics() {
        let c = generator_census(4, &[2; 5]).unwrap();
        let got: Vec<(usize, u128, i64)> = c
            .entries
            .iter()
            .map(|e| (e.jacobian_columns, e.count, e.x_degree))
            .collect();
        assert_eq!(got, [(2, 6, 8), (3, 16, 7), (4, 6, 6)]);
        assert_eq!(c.total, 29);
    }

    #[test]
    fn line_and_three_conics() {
        let c = generator_census(3, &[1, 2, 2, 2]).unwrap();
        let got: Vec<(usize, u128, i64)> = c
            .entries
            .iter()
            .map(|e| (e.jacobian_columns, e.count, e.x_degree))
            .collect();
        assert_eq!(got, [(2, 2, 5), (3, 3, 4)]);
        assert_eq!(c.total, 6);
    }

    #[test]
    fn plane_case_has_one_minor() {
        let c = generator_census(2, &[3, 1, 4]).unwrap();
        assert_eq!(c.total, 2);
        assert_eq!(c.entries[0].x_degree, 6);
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(binomial(8, 6), Some(28));
        assert_eq!(binomial(3, 5), Some(0));
        assert!(binomial(400, 200).is_none());
    }
}
