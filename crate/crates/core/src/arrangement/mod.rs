//! Hypersurface arrangements and the matrices built from them.
//!
//! For `f = (f_1, ..., f_m)` homogeneous in `x_1..x_n`:
//!
//! * `Q = (diag(f_1..f_m) | J_f)`, an `m × (m+n)` matrix;
//! * `Q^s_{\i}` deletes the diagonal column of `f_i` and appends the row
//!   `(s_1, .., ŝ_i, .., s_m, 0, .., 0)`;
//! * the partial-derivative variant replaces the trailing zeros of that row by
//!   markers for `∂ℓ/∂x_j`, where `ℓ = Σ s_i log f_i`.

mod matrix;
mod synth;

pub use matrix::{ColumnRole, PolyMatrix, RowRole};
pub use synth::{synthesize, PlantedPoint, Synthesized};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::linalg::RatMatrix;
use crate::poly::{BiDegree, Monomial, PolyError, Polynomial, Rational, Ring, VarKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("an arrangement needs n >= 2 variables, got {0}")]
    TooFewVariables(usize),
    #[error("an arrangement needs at least one polynomial")]
    NoPolynomials,
    #[error("polynomial {index} is zero")]
    ZeroPolynomial { index: usize },
    #[error("polynomial {index} is not homogeneous; offending terms: {}", offending.join(", "))]
    Inhomogeneous {
        index: usize,
        offending: Vec<String>,
    },
    #[error("polynomial {index} is constant")]
    ConstantPolynomial { index: usize },
    #[error("polynomial {index} involves parameter or auxiliary variables")]
    ForeignVariables { index: usize },
    #[error("polynomial {index} lives in a ring with {got} x-variables, expected {expected}")]
    WrongVariableCount {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("column {0} cannot be deleted: it must name one of the m diagonal columns")]
    BadDeleteColumn(usize),
    #[error("hyperplane row {0} is zero")]
    ZeroRow(usize),
    #[error("synthesis: {0}")]
    Synthesis(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An arrangement of `m` hypersurfaces in `P^{n-1}`.
///
/// Polynomials live in the ring `Q[s_1..s_m, x_1..x_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    ring: Ring,
    f: Vec<Polynomial>,
    degrees: Vec<u32>,
    labels: Option<Vec<String>>,
    jacobian: PolyMatrix,
    ell: usize,
}

impl Arrangement {
    /// Validates and embeds the polynomials. Each input must be a nonzero,
    /// nonconstant homogeneous polynomial in `x_1..x_n` only; its ring may
    /// carry any number of `s` variables as long as they do not occur.
    pub fn new(n: usize, polys: Vec<Polynomial>) -> Result<Self, ArrangementError> {
        if n < 2 {
            return Err(ArrangementError::TooFewVariables(n));
        }
        if polys.is_empty() {
            return Err(ArrangementError::NoPolynomials);
        }
        let m = polys.len();
        let ring = Ring::new(m, n)?;
        let mut f = Vec::with_capacity(m);
        let mut degrees = Vec::with_capacity(m);
        for (k, p) in polys.iter().enumerate() {
            let index = k + 1;
            if p.ring().x_vars() != n {
                return Err(ArrangementError::WrongVariableCount {
                    index,
                    expected: n,
                    got: p.ring().x_vars(),
                });
            }
            if p.is_zero() {
                return Err(ArrangementError::ZeroPolynomial { index });
            }
            if !p.involves_only_x() {
                return Err(ArrangementError::ForeignVariables { index });
            }
            let Some(d) = p.homogeneous_degree() else {
                return Err(ArrangementError::Inhomogeneous {
                    index,
                    offending: offending_terms(p),
                });
            };
            if d == 0 {
                return Err(ArrangementError::ConstantPolynomial { index });
            }
            let src = p.ring();
            let q = p.map_vars(ring, |i| match src.kind(i) {
                VarKind::X(j) => Some(ring.x(j)),
                _ => None,
            })?;
            f.push(q);
            degrees.push(d);
        }
        let linear = degrees.iter().filter(|&&d| d == 1).count();
        let jacobian = jacobian_of(ring, &f);
        Ok(Arrangement {
            ring,
            f,
            degrees,
            labels: None,
            jacobian,
            ell: linear.min(n),
        })
    }

    /// The hyperplane arrangement whose `i`-th form is `Σ_j C[i][j] x_j`.
    pub fn from_hyperplanes(c: &RatMatrix) -> Result<Self, ArrangementError> {
        let n = c.first().map_or(0, Vec::len);
        let ring = Ring::new(0, n)?;
        let mut polys = Vec::with_capacity(c.len());
        for (i, row) in c.iter().enumerate() {
            assert_eq!(row.len(), n, "ragged coefficient matrix");
            let p = Polynomial::from_terms(
                ring,
                row.iter()
                    .enumerate()
                    .map(|(j, v)| (Monomial::var(ring.x(j + 1)), v.clone())),
            );
            if p.is_zero() {
                return Err(ArrangementError::ZeroRow(i + 1));
            }
            polys.push(p);
        }
        Self::new(n, polys)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.m(), "one label per polynomial");
        self.labels = Some(labels);
        self
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.x_vars()
    }

    pub fn m(&self) -> usize {
        self.f.len()
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.f
    }

    /// `f_i`, 1-based.
    pub fn polynomial(&self, i: usize) -> &Polynomial {
        &self.f[i - 1]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree_sum(&self) -> u32 {
        self.degrees.iter().sum()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Number of linear forms among the `f_i`.
    pub fn linear_count(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 1).count()
    }

    /// `min(n, #linear forms)`.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn is_hyperplane_arrangement(&self) -> bool {
        self.degrees.iter().all(|&d| d == 1)
    }

    /// Coefficient matrix of a hyperplane arrangement.
    pub fn hyperplane_matrix(&self) -> Option<RatMatrix> {
        if !self.is_hyperplane_arrangement() {
            return None;
        }
        let n = self.n();
        Some(
            self.f
                .iter()
                .map(|p| {
                    (1..=n)
                        .map(|j| p.coefficient(&Monomial::var(self.ring.x(j))))
                        .collect()
                })
                .collect(),
        )
    }

    /// `f = f_1 ⋯ f_m`.
    pub fn product(&self) -> Polynomial {
        self.f
            .iter()
            .fold(Polynomial::one(self.ring), |acc, p| &acc * p)
    }

    /// `(∂f_i/∂x_j)`, an `m × n` matrix.
    pub fn jacobian(&self) -> &PolyMatrix {
        &self.jacobian
    }

    /// `Q = (diag(f) | J_f)`.
    pub fn build_q(&self) -> PolyMatrix {
        let (m, n) = (self.m(), self.n());
        let zero = Polynomial::zero(self.ring);
        let mut entries = Vec::with_capacity(m * (m + n));
        for i in 0..m {
            for k in 0..m {
                entries.push(if k == i {
                    self.f[i].clone()
                } else {
                    zero.clone()
                });
            }
            entries.extend(self.jacobian.row(i).iter().cloned());
        }
        PolyMatrix::with_roles(
            self.ring,
            entries,
            (1..=m).map(RowRole::Hypersurface).collect(),
            (1..=m)
                .map(ColumnRole::Diagonal)
                .chain((1..=n).map(ColumnRole::Jacobian))
                .collect(),
        )
    }

    /// `Q` with the diagonal column of `f_i` deleted (1-based `i`).
    pub fn build_q_del(&self, i: usize) -> Result<PolyMatrix, ArrangementError> {
        self.check_delete_column(i)?;
        Ok(self.build_q().without_column(i - 1))
    }

    /// `Q^s_{\i}`: `Q` without the diagonal column of `f_i`, augmented by the
    /// parameter row. Shape `(m+1) × (m+n-1)`.
    pub fn build_qs_del(&self, i: usize) -> Result<PolyMatrix, ArrangementError> {
        let mut q = self.build_q_del(i)?;
        let row = q
            .col_roles()
            .iter()
            .map(|role| match role {
                ColumnRole::Diagonal(k) => Polynomial::s(self.ring, *k),
                _ => Polynomial::zero(self.ring),
            })
            .collect();
        q.push_row(row, RowRole::Parameters);
        Ok(q)
    }

    /// `Q^s_{\1}`.
    pub fn build_qs_del1(&self) -> PolyMatrix {
        self.build_qs_del(1).expect("column 1 always exists")
    }

    /// `Q^s_{\i}` with markers for `∂ℓ/∂x_j` in the Jacobian block of the
    /// parameter row.
    pub fn build_qs_partial(&self, i: usize) -> Result<PartialMatrix, ArrangementError> {
        let matrix = self.build_qs_del(i)?;
        let markers = matrix
            .col_roles()
            .iter()
            .map(|role| match role {
                ColumnRole::Jacobian(j) => Some(*j),
                _ => None,
            })
            .collect();
        Ok(PartialMatrix { matrix, markers })
    }

    fn check_delete_column(&self, i: usize) -> Result<(), ArrangementError> {
        if i == 0 || i > self.m() {
            return Err(ArrangementError::BadDeleteColumn(i));
        }
        Ok(())
    }

    /// `Σ d_i s_i`.
    pub fn euler_relation(&self) -> Polynomial {
        Polynomial::from_terms(
            self.ring,
            self.degrees.iter().enumerate().map(|(i, &d)| {
                (
                    Monomial::var(self.ring.s(i + 1)),
                    Rational::from_integer(d.into()),
                )
            }),
        )
    }

    /// The kernel vector `(d_1, .., d_m, -x_1, .., -x_n)` of `Q`.
    pub fn euler_kernel_vector(&self) -> Vec<Polynomial> {
        let consts = self
            .degrees
            .iter()
            .map(|&d| Polynomial::from_int(self.ring, d as i64));
        let xs = (1..=self.n()).map(|j| -Polynomial::x(self.ring, j));
        consts.chain(xs).collect()
    }

    /// `N_j = Σ_i s_i (f / f_i) ∂f_i/∂x_j`, the numerators of `∂ℓ/∂x_j`
    /// over the common denominator `f`.
    pub fn critical_equation_numerators(&self) -> Vec<Polynomial> {
        let cofactors = self.cofactor_products();
        (1..=self.n())
            .map(|j| {
                let mut acc = Polynomial::zero(self.ring);
                for (i, co) in cofactors.iter().enumerate() {
                    let d = self.jacobian.get(i, j - 1);
                    if d.is_zero() {
                        continue;
                    }
                    let term = &(&Polynomial::s(self.ring, i + 1) * co) * d;
                    acc = &acc + &term;
                }
                acc
            })
            .collect()
    }

    /// `f / f_i` for every `i`.
    pub fn cofactor_products(&self) -> Vec<Polynomial> {
        (0..self.m())
            .map(|i| {
                self.f
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .fold(Polynomial::one(self.ring), |acc, (_, p)| &acc * p)
            })
            .collect()
    }

    /// Bidegree an entry in the given row and column must have when nonzero.
    /// `None` means the entry must vanish.
    pub fn expected_bidegree(&self, row: RowRole, col: ColumnRole) -> Option<BiDegree> {
        match (row, col) {
            (RowRole::Hypersurface(i), ColumnRole::Diagonal(k)) if i == k => {
                Some(BiDegree::new(0, self.degrees[i - 1]))
            }
            (RowRole::Hypersurface(i), ColumnRole::Jacobian(_)) => {
                Some(BiDegree::new(0, self.degrees[i - 1] - 1))
            }
            (RowRole::Parameters, ColumnRole::Diagonal(_)) => Some(BiDegree::new(1, 0)),
            _ => None,
        }
    }

    /// `true` when every entry of `q` is zero or has the bidegree dictated
    /// by its row and column roles.
    pub fn grading_consistent(&self, q: &PolyMatrix) -> bool {
        (0..q.rows()).all(|r| {
            (0..q.cols()).all(|c| {
                let e = q.get(r, c);
                if e.is_zero() {
                    return true;
                }
                match self.expected_bidegree(q.row_role(r), q.col_role(c)) {
                    Some(b) => e.bidegree().ok() == Some(b),
                    None => false,
                }
            })
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "n": self.n(),
            "m": self.m(),
            "degrees": self.degrees,
            "polynomials": self.f.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        });
        if let Some(l) = &self.labels {
            v["labels"] = json!(l);
        }
        v
    }
}

fn jacobian_of(ring: Ring, f: &[Polynomial]) -> PolyMatrix {
    let n = ring.x_vars();
    let entries = f
        .iter()
        .flat_map(|p| (1..=n).map(move |j| p.partial_derivative(ring.x(j))))
        .collect();
    PolyMatrix::with_roles(
        ring,
        entries,
        (1..=f.len()).map(RowRole::Hypersurface).collect(),
        (1..=n).map(ColumnRole::Jacobian).collect(),
    )
}

/// Terms whose degree differs from the degree of the leading term.
fn offending_terms(p: &Polynomial) -> Vec<String> {
    let Some(lead) = p.leading_monomial() else {
        return Vec::new();
    };
    let d = lead.total_degree();
    p.terms()
        .filter(|(m, _)| m.total_degree() != d)
        .map(|(m, c)| Polynomial::monomial(p.ring(), *m, c.clone()).to_string())
        .collect()
}

/// `Q^s_{\i}` together with the positions of the symbolic `∂ℓ/∂x_j` entries
/// in its last row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMatrix {
    matrix: PolyMatrix,
    markers: Vec<Option<usize>>,
}

impl PartialMatrix {
    /// The underlying matrix; marker positions hold zero.
    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// `Some(j)` when column `c` of the last row stands for `∂ℓ/∂x_j`.
    pub fn marker(&self, c: usize) -> Option<usize> {
        self.markers[c]
    }

    /// The last row multiplied through by `f`: `f·s_k` on the diagonal block
    /// and `N_j` on the Jacobian block.
    pub fn cleared_last_row(&self, a: &Arrangement) -> Vec<Polynomial> {
        let f = a.product();
        let numerators = a.critical_equation_numerators();
        let last = self.matrix.rows() - 1;
        (0..self.cols())
            .map(|c| match self.markers[c] {
                Some(j) => numerators[j - 1].clone(),
                None => &f * self.matrix.get(last, c),
            })
            .collect()
    }

    /// The matrix with its last row replaced by [`Self::cleared_last_row`].
    /// Each maximal minor equals `f` times the corresponding minor of the
    /// symbolic matrix.
    pub fn cleared(&self, a: &Arrangement) -> PolyMatrix {
        let mut m = self.matrix.clone();
        let last = m.rows() - 1;
        for (c, e) in self.cleared_last_row(a).into_iter().enumerate() {
            m.set(last, c, e);
        }
        m
    }

    /// Evaluates the symbolic matrix at a point off the arrangement, with
    /// markers replaced by the values of `∂ℓ/∂x_j`.
    pub fn evaluate(&self, a: &Arrangement, point: &[Rational]) -> Result<RatMatrix, PolyError> {
        let mut m = self.matrix.evaluate(point)?;
        let f = a.product().evaluate(point)?;
        if f.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let numerators = a.critical_equation_numerators();
        let last = m.len() - 1;
        for (c, marker) in self.markers.iter().enumerate() {
            if let Some(j) = marker {
                m[last][c] = numerators[j - 1].evaluate(point)? / &f;
            }
        }
        Ok(m)
    }
}

/// Number of variables a point must supply for `a`'s ring.
pub fn point_len(a: &Arrangement) -> usize {
    a.ring().nvars()
}

/// A point of `a`'s ring from separate `s` and `x` coordinates.
pub fn make_point(a: &Arrangement, s: &[Rational], x: &[Rational]) -> Vec<Rational> {
    assert_eq!(s.len(), a.m());
    assert_eq!(x.len(), a.n());
    let mut p = Vec::with_capacity(point_len(a));
    p.extend_from_slice(s);
    p.extend_from_slice(x);
    p
}

/// `true` when `p` vanishes at the point.
pub fn vanishes_at(p: &Polynomial, point: &[Rational]) -> bool {
    p.evaluate(point).is_ok_and(|v| v.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn arr(n: usize, src: &[&str]) -> Arrangement {
        let ring = Ring::new(0, n).unwrap();
        let polys = src
            .iter()
            .map(|s| crate::expr::parse_expression(s, &ring).unwrap())
            .collect();
        Arrangement::new(n, polys).unwrap()
    }

    #[test]
    fn jacobian_of_lines_is_identity() {
        let a = arr(2, &["x1", "x2"]);
        let j = a.jacobian();
        assert_eq!(j.get(0, 0).to_string(), "1");
        assert!(j.get(0, 1).is_zero());
        assert_eq!(j.get(1, 1).to_string(), "1");
    }

    #[test]
    fn q_for_single_quadric() {
        let a = arr(2, &["x1^2"]);
        let q = a.build_q();
        assert_eq!((q.rows(), q.cols()), (1, 3));
        let row: Vec<String> = q.row(0).iter().map(|p| p.to_string()).collect();
        assert_eq!(row, ["x1^2", "2*x1", "0"]);
    }

    #[test]
    fn shapes_and_euler() {
        let a = arr(
            3,
            &[
                "x3",
                "x1^2 + x2^2 - x3^2",
                "x1*x2 - x3^2",
                "x1^2 - 2*x2^2 + x1*x3",
            ],
        );
        assert_eq!(a.degrees(), &[1, 2, 2, 2]);
        assert_eq!(a.ell(), 1);
        let qs = a.build_qs_del1();
        assert_eq!((qs.rows(), qs.cols()), (5, 6));
        assert_eq!(a.euler_relation().to_string(), "s1 + 2*s2 + 2*s3 + 2*s4");
        let last: Vec<String> = qs.row(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(last, ["s2", "s3", "s4", "0", "0", "0"]);
        assert!(a.grading_consistent(&qs));
        let kernel = a.build_q().mul_vector(&a.euler_kernel_vector()).unwrap();
        assert!(kernel.iter().all(Polynomial::is_zero));
    }

    #[test]
    fn numerators_for_one_polynomial() {
        let a = arr(2, &["x1^2 + x2^2"]);
        let nums = a.critical_equation_numerators();
        assert_eq!(nums[0].to_string(), "2*s1*x1");
        assert_eq!(nums[1].to_string(), "2*s1*x2");
    }

    #[test]
    fn validation_errors() {
        let ring = Ring::new(0, 3).unwrap();
        let bad = crate::expr::parse_expression("x1 + x2^2", &ring).unwrap();
        match Arrangement::new(3, vec![bad]) {
            Err(ArrangementError::Inhomogeneous {
                index: 1,
                offending,
            }) => {
                assert_eq!(offending, ["x1"]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            Arrangement::new(1, vec![]),
            Err(ArrangementError::TooFewVariables(1))
        );
        assert_eq!(
            Arrangement::new(2, vec![]),
            Err(ArrangementError::NoPolynomials)
        );
        let a = arr(2, &["x1"]);
        assert_eq!(a.build_qs_del(2), Err(ArrangementError::BadDeleteColumn(2)));
    }

    #[test]
    fn hyperplanes_round_trip() {
        let c = vec![vec![rat(1), rat(0)], vec![rat(1), rat(-2)]];
        let a = Arrangement::from_hyperplanes(&c).unwrap();
        assert_eq!(a.polynomial(2).to_string(), "x1 - 2*x2");
        assert_eq!(a.hyperplane_matrix().unwrap(), c);
    }
}
