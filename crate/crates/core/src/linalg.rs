//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::poly::Rational;

pub type RatMatrix = Vec<Vec<Rational>>;

/// Row echelon form in place; returns the pivot columns.
fn echelon(a: &mut RatMatrix) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &RatMatrix) -> usize {
    let mut m = a.clone();
    echelon(&mut m).len()
}

/// Determinant by Gaussian elimination. Panics on a non-square input.
pub fn det(a: &RatMatrix) -> Rational {
    let n = a.len();
    assert!(
        a.iter().all(|r| r.len() == n),
        "determinant of a non-square matrix"
    );
    let mut m = a.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip();
        let pivot = m[c].clone();
        for row in m[c + 1..].iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] * &inv;
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= &factor * p;
            }
        }
    }
    d
}

/// A basis of the right kernel `{v : a v = 0}`.
pub fn nullspace(a: &RatMatrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.clone();
    let pivots = echelon(&mut m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}
