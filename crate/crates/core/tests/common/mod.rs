//! Shared test helpers: fixture loading and independent oracles.
#![allow(dead_code)]

use std::path::PathBuf;

use likelihood::arrangement::{Arrangement, PolyMatrix};
use likelihood::expr::parse_arrangement;
use likelihood::poly::Polynomial;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> Arrangement {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    parse_arrangement(&text).expect("fixture parses")
}

/// Fixtures known to be SNC.
pub const SNC_FIXTURES: &[&str] = &["n2_112", "four_lines", "three_conics", "line_three_conics"];

/// Every shipped fixture.
pub const ALL_FIXTURES: &[&str] = &[
    "n2_112",
    "four_lines",
    "three_conics",
    "line_three_conics",
    "five_quadrics",
    "concurrent_lines",
    "tangent_conics",
];

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &PolyMatrix) -> Polynomial {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return Polynomial::one(m.ring());
    }
    let mut acc = Polynomial::zero(m.ring());
    let rest: Vec<usize> = (1..n).collect();
    for c in 0..n {
        let entry = m.get(0, c);
        if entry.is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&j| j != c).collect();
        let term = entry * &cofactor_det(&m.submatrix(&rest, &cols));
        acc = if c % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Taylor coefficients of `(1-z)^n / ∏(1-d_i z)` to `z^order` by explicit
/// multiplication of truncated series.
pub fn brute_series(n: usize, degrees: &[u32], order: usize) -> Vec<i128> {
    let mul = |a: &[i128], b: &[i128]| {
        let mut out = vec![0i128; order + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i + j <= order {
                    out[i + j] += x * y;
                }
            }
        }
        out
    };
    let mut acc = vec![0i128; order + 1];
    acc[0] = 1;
    for _ in 0..n {
        acc = mul(&acc, &[1, -1]);
    }
    for &d in degrees {
        let geometric: Vec<i128> = (0..=order as u32).map(|k| (d as i128).pow(k)).collect();
        acc = mul(&acc, &geometric);
    }
    acc
}
