use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::arrangement::PolyMatrix;
use crate::poly::Polynomial;

use super::DetgenError;

/// Determinant by fraction-free Bareiss elimination with row pivoting.
///
/// Every intermediate division is exact in the polynomial ring.
pub fn bareiss_det(m: &PolyMatrix) -> Result<Polynomial, DetgenError> {
    if !m.is_square() {
        return Err(DetgenError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let ring = m.ring();
    let n = m.rows();
    if n == 0 {
        return Ok(Polynomial::one(ring));
    }
    let mut a: Vec<Vec<Polynomial>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut negate = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(Polynomial::zero(ring));
            };
            a.swap(k, p);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let mut v = if row[j].is_zero() {
                    Polynomial::zero(ring)
                } else {
                    pivot * &row[j]
                };
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v = &v - &(&lead * &pivot_row[j]);
                }
                row[j] = if prev.is_constant() {
                    v.scale(&prev.leading_coefficient().expect("nonzero pivot").recip())
                } else {
                    v.exact_divide(&prev)
                        .expect("same ring")
                        .expect("Bareiss step divides exactly")
                };
            }
            row[k] = Polynomial::zero(ring);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Maximal minors of a `r×c` matrix on the given column sets, by expansion
/// along the rows with every intermediate minor computed once. No polynomial
/// division is needed. Falls back to Bareiss beyond 64 columns.
pub fn maximal_minors(
    m: &PolyMatrix,
    column_sets: &[Vec<usize>],
) -> Result<Vec<Polynomial>, DetgenError> {
    let r = m.rows();
    for cols in column_sets {
        if cols.len() != r || cols.iter().any(|&c| c >= m.cols()) {
            return Err(DetgenError::InvalidSelector(format!(
                "column set {cols:?} does not select a square submatrix"
            )));
        }
    }
    if m.cols() > 64 {
        return column_sets
            .par_iter()
            .map(|cols| bareiss_det(&m.select_columns(cols)))
            .collect();
    }
    let mask = |cols: &[usize]| cols.iter().fold(0u64, |acc, &c| acc | 1 << c);
    let targets: Vec<u64> = column_sets.iter().map(|c| mask(c)).collect();
    if targets.iter().any(|t| t.count_ones() as usize != r) {
        return Err(DetgenError::InvalidSelector("repeated column".into()));
    }
    // needed[k]: column masks of size k whose top-k-row minor is required
    let mut needed: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); r + 1];
    needed[r] = targets.iter().copied().collect();
    for k in (1..=r).rev() {
        let below: BTreeSet<u64> = needed[k]
            .iter()
            .flat_map(|&s| bits(s).map(move |j| s & !(1 << j)))
            .collect();
        needed[k - 1] = below;
    }
    let ring = m.ring();
    let mut level: BTreeMap<u64, Polynomial> = BTreeMap::from([(0, Polynomial::one(ring))]);
    for (k, masks) in needed.iter().enumerate().skip(1) {
        let row = m.row(k - 1);
        let prev = &level;
        level = masks
            .par_iter()
            .map(|&s| {
                let mut acc = Polynomial::zero(ring);
                for (pos, j) in bits(s).enumerate() {
                    let entry = &row[j];
                    let sub = &prev[&(s & !(1 << j))];
                    if entry.is_zero() || sub.is_zero() {
                        continue;
                    }
                    let term = entry * sub;
                    acc = if (k - 1 + pos) % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
                (s, acc)
            })
            .collect();
    }
    Ok(targets.iter().map(|t| level[t].clone()).collect())
}

fn bits(s: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |j| s & (1 << j) != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn mat(ring: Ring, rows: &[&[&str]]) -> PolyMatrix {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| crate::expr::parse_expression(s, &ring).unwrap())
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(ring, rows)
    }

    #[test]
    fn identity_and_repeated_rows() {
        let ring = Ring::new(0, 2).unwrap();
        let id = mat(
            ring,
            &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]],
        );
        assert_eq!(bareiss_det(&id).unwrap().to_string(), "1");
        let rep = mat(ring, &[&["x1", "x2"], &["x1", "x2"]]);
        assert!(bareiss_det(&rep).unwrap().is_zero());
    }

    #[test]
    fn needs_a_row_swap() {
        let ring = Ring::new(0, 2).unwrap();
        let m = mat(
            ring,
            &[&["0", "x1", "1"], &["x2", "0", "0"], &["1", "1", "x1"]],
        );
        // expansion along the second row: -x2 * (x1*x1 - 1)
        assert_eq!(bareiss_det(&m).unwrap().to_string(), "-x1^2*x2 + x2");
    }

    #[test]
    fn rejects_rectangular() {
        let ring = Ring::new(0, 2).unwrap();
        let m = mat(ring, &[&["x1", "x2"]]);
        assert_eq!(
            bareiss_det(&m),
            Err(DetgenError::NotSquare { rows: 1, cols: 2 })
        );
    }

    #[test]
    fn expansion_agrees_with_bareiss() {
        let ring = Ring::new(0, 3).unwrap();
        let m = mat(
            ring,
            &[
                &["x1", "x2^2", "0", "x3 - x1", "2"],
                &["x2", "x1 + x3", "x3^2", "1", "0"],
                &["3", "x2", "x1*x2", "x3", "x1 - x2"],
            ],
        );
        let sets: Vec<Vec<usize>> = (0..5usize)
            .flat_map(|a| (a + 1..5).flat_map(move |b| (b + 1..5).map(move |c| vec![a, b, c])))
            .collect();
        let fast = maximal_minors(&m, &sets).unwrap();
        for (cols, d) in sets.iter().zip(&fast) {
            assert_eq!(
                d,
                &bareiss_det(&m.select_columns(cols)).unwrap(),
                "{cols:?}"
            );
        }
        assert!(maximal_minors(&m, &[vec![0, 0, 1]]).is_err());
        assert!(maximal_minors(&m, &[vec![0, 1]]).is_err());
    }
}
