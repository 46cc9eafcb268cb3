use serde_json::{json, Value};

use crate::linalg::{self, RatMatrix};
use crate::poly::{PolyError, Polynomial, Rational, Ring};

/// What a column of an arrangement matrix stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnRole {
    /// Diagonal block column carrying `f_i` (1-based `i`).
    Diagonal(usize),
    /// Jacobian block column of `∂/∂x_j` (1-based `j`).
    Jacobian(usize),
    Plain,
}

/// What a row of an arrangement matrix stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowRole {
    /// Row of hypersurface `f_i` (1-based `i`).
    Hypersurface(usize),
    /// The augmented row of parameters `s_i`.
    Parameters,
    Plain,
}

/// A dense matrix of polynomials over one ring, with optional row and column
/// roles. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    row_roles: Vec<RowRole>,
    col_roles: Vec<ColumnRole>,
}

impl PolyMatrix {
    /// Row-major construction. Panics if the entry count or a ring is wrong.
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Self {
        Self::with_roles(
            ring,
            entries,
            vec![RowRole::Plain; rows],
            vec![ColumnRole::Plain; cols],
        )
    }

    pub fn with_roles(
        ring: Ring,
        entries: Vec<Polynomial>,
        row_roles: Vec<RowRole>,
        col_roles: Vec<ColumnRole>,
    ) -> Self {
        let (rows, cols) = (row_roles.len(), col_roles.len());
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count does not match shape"
        );
        assert!(
            entries.iter().all(|e| e.ring() == ring),
            "entry from a foreign ring"
        );
        PolyMatrix {
            ring,
            rows,
            cols,
            entries,
            row_roles,
            col_roles,
        }
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Self::new(ring, rows, cols, vec![Polynomial::zero(ring); rows * cols])
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of range"
        );
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of range"
        );
        assert_eq!(p.ring(), self.ring, "entry from a foreign ring");
        self.entries[r * self.cols + c] = p;
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_role(&self, r: usize) -> RowRole {
        self.row_roles[r]
    }

    pub fn col_role(&self, c: usize) -> ColumnRole {
        self.col_roles[c]
    }

    pub fn col_roles(&self) -> &[ColumnRole] {
        &self.col_roles
    }

    pub fn row_roles(&self) -> &[RowRole] {
        &self.row_roles
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        PolyMatrix::with_roles(
            self.ring,
            entries,
            rows.iter().map(|&r| self.row_roles[r]).collect(),
            cols.iter().map(|&c| self.col_roles[c]).collect(),
        )
    }

    /// All rows, the given columns.
    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn without_row(&self, r: usize) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn without_column(&self, c: usize) -> PolyMatrix {
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != c).collect();
        self.select_columns(&cols)
    }

    /// Appends a row at the bottom.
    pub fn push_row(&mut self, row: Vec<Polynomial>, role: RowRole) {
        assert_eq!(row.len(), self.cols, "row length does not match");
        assert!(
            row.iter().all(|e| e.ring() == self.ring),
            "entry from a foreign ring"
        );
        self.entries.extend(row);
        self.row_roles.push(role);
        self.rows += 1;
    }

    pub fn transpose(&self) -> PolyMatrix {
        let entries = (0..self.cols)
            .flat_map(|c| (0..self.rows).map(move |r| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        PolyMatrix {
            ring: self.ring,
            rows: self.cols,
            cols: self.rows,
            entries,
            row_roles: vec![RowRole::Plain; self.cols],
            col_roles: vec![ColumnRole::Plain; self.rows],
        }
    }

    /// `self · v`.
    pub fn mul_vector(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>, PolyError> {
        if v.len() != self.cols {
            return Err(PolyError::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        (0..self.rows)
            .map(|r| {
                let mut acc = Polynomial::zero(self.ring);
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.checked_add(&a.checked_mul(b)?)?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    /// Column operation `col_target += factor · col_source`.
    pub fn add_column_multiple(&mut self, target: usize, source: usize, factor: &Polynomial) {
        assert_ne!(
            target, source,
            "column operation needs two distinct columns"
        );
        for r in 0..self.rows {
            let src = self.get(r, source);
            if src.is_zero() {
                continue;
            }
            let updated = self.get(r, target) + &(src * factor);
            self.set(r, target, updated);
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<RatMatrix, PolyError> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|e| e.evaluate(point)).collect())
            .collect()
    }

    /// Exact rank of the matrix evaluated at `point`.
    pub fn rank_at(&self, point: &[Rational]) -> Result<usize, PolyError> {
        Ok(linalg::rank(&self.evaluate(point)?))
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows)
            .map(|r| {
                Value::from(
                    self.row(r)
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }
}
