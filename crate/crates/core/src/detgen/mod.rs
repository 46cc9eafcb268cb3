//! Determinantal generators of the likelihood ideal.
//!
//! The ideal is generated by the Euler relation `Σ d_i s_i` and the maximal
//! minors of `Q^s_{\1}`. When some `f_i` are linear, their rows carry constant
//! Jacobian entries that can be cleared by column operations; the minors of
//! the smaller matrix obtained this way form a minimal generating set.

mod census;
mod det;
mod laplace;

pub use census::{binomial, generator_census, Census, CensusEntry};
pub use det::{bareiss_det, maximal_minors};
pub use laplace::{
    derivation_generators, generator_selectors, laplace_split, laplace_splits,
    split_identity_holds, Derivation, DerivationGenerator, LaplaceSplit,
};

use itertools::Itertools;
use serde_json::{json, Value};

use crate::arrangement::{Arrangement, ArrangementError, ColumnRole, PolyMatrix, RowRole};
use crate::poly::{BiDegree, PolyError, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DetgenError {
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("linear form {0} has no nonzero constant Jacobian entry left to pivot on")]
    DegeneratePivot(usize),
    #[error("invalid column selection: {0}")]
    InvalidSelector(String),
    #[error("generator {0} is not bihomogeneous")]
    NotBihomogeneous(String),
    #[error("census input: {0}")]
    BadCensusInput(String),
    #[error("count does not fit in 128 bits")]
    Overflow,
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A set of `m+1` columns of `Q^s_{\i}`, stored 1-based and increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorSelector {
    columns: Vec<usize>,
    jacobian_columns: usize,
}

impl MinorSelector {
    /// Validates `columns` (1-based) against `matrix`, a `Q^s_{\i}`.
    pub fn new(matrix: &PolyMatrix, columns: Vec<usize>) -> Result<Self, DetgenError> {
        if columns.len() != matrix.rows() {
            return Err(DetgenError::InvalidSelector(format!(
                "expected {} columns, got {}",
                matrix.rows(),
                columns.len()
            )));
        }
        if !columns.windows(2).all(|w| w[0] < w[1]) {
            return Err(DetgenError::InvalidSelector(
                "columns must be strictly increasing".into(),
            ));
        }
        if columns.first() == Some(&0) || columns.last().is_some_and(|&c| c > matrix.cols()) {
            return Err(DetgenError::InvalidSelector(format!(
                "columns must lie in 1..={}",
                matrix.cols()
            )));
        }
        let jacobian_columns = columns
            .iter()
            .filter(|&&c| matches!(matrix.col_role(c - 1), ColumnRole::Jacobian(_)))
            .count();
        Ok(MinorSelector {
            columns,
            jacobian_columns,
        })
    }

    /// 1-based column indices.
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c - 1).collect()
    }

    /// Number of selected Jacobian columns.
    pub fn k(&self) -> usize {
        self.jacobian_columns
    }

    /// Fewer than two Jacobian columns force the minor to vanish.
    pub fn trivially_zero(&self) -> bool {
        self.jacobian_columns < 2
    }

    pub fn to_json(&self) -> Value {
        json!({ "columns": self.columns, "k": self.jacobian_columns })
    }
}

/// All `(m+1)`-subsets of the columns of `Q^s_{\i}`, in lexicographic order.
pub fn enumerate_minors(
    a: &Arrangement,
    delete_column: usize,
) -> Result<Vec<MinorSelector>, DetgenError> {
    let q = a.build_qs_del(delete_column)?;
    Ok((1..=q.cols())
        .combinations(q.rows())
        .map(|cols| MinorSelector::new(&q, cols).expect("combinations are valid selectors"))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Euler,
    Minor(MinorSelector),
}

impl Provenance {
    pub fn to_json(&self) -> Value {
        match self {
            Provenance::Euler => json!("euler"),
            Provenance::Minor(s) => s.to_json(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub polynomial: Polynomial,
    pub bidegree: BiDegree,
    pub provenance: Provenance,
}

impl Generator {
    pub fn to_json(&self) -> Value {
        json!({
            "provenance": self.provenance.to_json(),
            "bidegree": [self.bidegree.s_deg, self.bidegree.x_deg],
            "polynomial": self.polynomial.to_string(),
        })
    }
}

/// How much the generating set can be trusted to be minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorStatus {
    /// The arrangement was not checked for strict normal crossings.
    SncUnchecked,
    /// The arrangement is SNC, so the set is a minimal generating set.
    Minimal,
    /// The arrangement is not SNC; the minors only generate the
    /// determinantal approximation `K`.
    Approximation,
}

impl GeneratorStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            GeneratorStatus::SncUnchecked => "snc-unchecked",
            GeneratorStatus::Minimal => "minimal",
            GeneratorStatus::Approximation => "determinantal-approximation",
        }
    }
}

/// A generating set with per-generator bidegree and provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGenerators {
    pub ring: Ring,
    pub generators: Vec<Generator>,
    pub status: Option<GeneratorStatus>,
    pub warnings: Vec<String>,
}

impl IdealGenerators {
    pub fn empty(ring: Ring) -> Self {
        IdealGenerators {
            ring,
            generators: Vec::new(),
            status: None,
            warnings: Vec::new(),
        }
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators
            .iter()
            .map(|g| g.polynomial.clone())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Number of generators per bidegree.
    pub fn histogram(&self) -> std::collections::BTreeMap<BiDegree, usize> {
        let mut h = std::collections::BTreeMap::new();
        for g in &self.generators {
            *h.entry(g.bidegree).or_insert(0) += 1;
        }
        h
    }

    /// `true` when counts per bidegree equal the census prediction.
    pub fn matches_census(&self, census: &Census) -> bool {
        let mut expected = std::collections::BTreeMap::new();
        expected.insert(BiDegree::new(1, 0), 1usize);
        for e in &census.entries {
            if e.x_degree < 0 {
                return false;
            }
            *expected
                .entry(BiDegree::new(1, e.x_degree as u32))
                .or_insert(0) += e.count as usize;
        }
        expected == self.histogram()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "generators": self.generators.iter().map(Generator::to_json).collect::<Vec<_>>(),
        });
        if let Some(s) = self.status {
            v["status"] = json!(s.as_str());
        }
        if !self.warnings.is_empty() {
            v["warnings"] = json!(self.warnings);
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorOptions {
    /// Which diagonal column to delete (1-based).
    pub delete_column: usize,
    /// What is known about the arrangement being SNC.
    pub snc: SncKnowledge,
    /// Apply the linear-form column reduction.
    pub reduce_linear: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SncKnowledge {
    Unknown,
    Snc,
    NotSnc,
}

impl Default for GeneratorOptions {
    fn default() -> Self {
        GeneratorOptions {
            delete_column: 1,
            snc: SncKnowledge::Unknown,
            reduce_linear: true,
        }
    }
}

/// `Q^s_{\i}` after clearing the constant Jacobian entries of the first
/// `ℓ` linear forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedMatrix {
    /// The reduced matrix, `(m+1-ℓ) × (m+n-1-ℓ)`.
    pub matrix: PolyMatrix,
    /// For each column of `matrix`, its 1-based column in `Q^s_{\i}`.
    pub original_columns: Vec<usize>,
    /// 1-based pivot columns of `Q^s_{\i}` removed by the reduction.
    pub pivot_columns: Vec<usize>,
}

impl ReducedMatrix {
    /// Selector of `Q^s_{\i}` whose minor agrees, up to a nonzero constant,
    /// with the minor of `matrix` on the 0-based columns `cols`.
    pub fn lift(&self, qs: &PolyMatrix, cols: &[usize]) -> MinorSelector {
        let mut full: Vec<usize> = cols.iter().map(|&c| self.original_columns[c]).collect();
        full.extend(&self.pivot_columns);
        full.sort_unstable();
        MinorSelector::new(qs, full).expect("lifted selector is valid")
    }
}

/// Clears the constant Jacobian entries of the first `ℓ` linear forms of
/// `qs = Q^s_{\i}`. Each linear row pivots on its first nonzero constant
/// entry, scanning columns left to right.
pub fn reduce_linear_forms(a: &Arrangement, qs: &PolyMatrix) -> Result<ReducedMatrix, DetgenError> {
    let mut m = qs.clone();
    let mut original: Vec<usize> = (1..=qs.cols()).collect();
    let mut pivots = Vec::new();
    let linear_rows = (1..=a.m())
        .filter(|&i| a.degrees()[i - 1] == 1)
        .take(a.ell());
    for i in linear_rows {
        let r = (0..m.rows())
            .find(|&r| m.row_role(r) == RowRole::Hypersurface(i))
            .expect("every hypersurface has a row");
        let p = (0..m.cols())
            .find(|&c| {
                let e = m.get(r, c);
                !e.is_zero() && e.is_constant()
            })
            .ok_or(DetgenError::DegeneratePivot(i))?;
        let pivot_inv = m.get(r, p).leading_coefficient().expect("nonzero").recip();
        for c in 0..m.cols() {
            if c == p || m.get(r, c).is_zero() {
                continue;
            }
            let factor = -m.get(r, c).scale(&pivot_inv);
            m.add_column_multiple(c, p, &factor);
        }
        m = m.without_row(r).without_column(p);
        pivots.push(original.remove(p));
    }
    pivots.sort_unstable();
    Ok(ReducedMatrix {
        matrix: m,
        original_columns: original,
        pivot_columns: pivots,
    })
}

type GeneratorPlan = (PolyMatrix, Vec<(Vec<usize>, MinorSelector)>);

/// The matrix whose maximal minors are the generators, and for each of its
/// 0-based column sets the corresponding selector of `Q^s_{\i}`.
pub(crate) fn generator_plan(
    a: &Arrangement,
    opts: &GeneratorOptions,
) -> Result<GeneratorPlan, DetgenError> {
    let qs = a.build_qs_del(opts.delete_column)?;
    if opts.reduce_linear && a.ell() > 0 {
        let red = reduce_linear_forms(a, &qs)?;
        let plan = (0..red.matrix.cols())
            .combinations(red.matrix.rows())
            .map(|cols| {
                let sel = red.lift(&qs, &cols);
                (cols, sel)
            })
            .collect();
        Ok((red.matrix, plan))
    } else {
        let plan = (0..qs.cols())
            .combinations(qs.rows())
            .map(|cols| {
                let sel =
                    MinorSelector::new(&qs, cols.iter().map(|c| c + 1).collect()).expect("valid");
                (cols, sel)
            })
            .collect();
        Ok((qs, plan))
    }
}

/// Maximal minors of `m` on the given 0-based column sets, returned in input
/// order.
pub fn minors(m: &PolyMatrix, column_sets: &[Vec<usize>]) -> Result<Vec<Polynomial>, DetgenError> {
    maximal_minors(m, column_sets)
}

/// The Euler relation and the maximal minors of `Q^s_{\i}` (after the linear
/// reduction when enabled), each made primitive.
pub fn likelihood_generators(
    a: &Arrangement,
    opts: &GeneratorOptions,
) -> Result<IdealGenerators, DetgenError> {
    let ring = a.ring();
    let (matrix, plan) = generator_plan(a, opts)?;
    let column_sets: Vec<Vec<usize>> = plan.iter().map(|(cols, _)| cols.clone()).collect();
    let dets = minors(&matrix, &column_sets)?;

    let mut out = IdealGenerators::empty(ring);
    let euler = a.euler_relation();
    out.generators.push(Generator {
        bidegree: euler.bidegree()?,
        polynomial: euler,
        provenance: Provenance::Euler,
    });
    let mut zero = Vec::new();
    for ((_, sel), det) in plan.into_iter().zip(dets) {
        if det.is_zero() {
            zero.push(sel.columns().to_vec());
            continue;
        }
        let polynomial = det.primitive();
        let bidegree = polynomial
            .bidegree()
            .map_err(|_| DetgenError::NotBihomogeneous(polynomial.to_string()))?;
        out.generators.push(Generator {
            polynomial,
            bidegree,
            provenance: Provenance::Minor(sel),
        });
    }
    if !zero.is_empty() {
        out.warnings.push(format!(
            "{} minor(s) vanish identically and were dropped: {:?}",
            zero.len(),
            zero
        ));
    }
    out.status = Some(match opts.snc {
        SncKnowledge::Unknown => {
            out.warnings
                .push("SNC was not checked; minimality holds only for SNC arrangements".into());
            GeneratorStatus::SncUnchecked
        }
        SncKnowledge::Snc => GeneratorStatus::Minimal,
        SncKnowledge::NotSnc => GeneratorStatus::Approximation,
    });
    Ok(out)
}

/// Signed maximal minors of the `g × (g+1)` submatrix of `m` on `columns`
/// (0-based): entry `k` is `(-1)^k` times the minor omitting column `k`.
/// The result is annihilated by that submatrix.
pub fn circuit(m: &PolyMatrix, columns: &[usize]) -> Result<Vec<Polynomial>, DetgenError> {
    let g = m.rows();
    if columns.len() != g + 1 {
        return Err(DetgenError::InvalidSelector(format!(
            "a circuit of a {g}-row matrix needs {} columns, got {}",
            g + 1,
            columns.len()
        )));
    }
    if let Some(&bad) = columns.iter().find(|&&c| c >= m.cols()) {
        return Err(DetgenError::InvalidSelector(format!(
            "column {bad} out of range"
        )));
    }
    let sets: Vec<Vec<usize>> = (0..=g)
        .map(|k| {
            columns
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &c)| c)
                .collect()
        })
        .collect();
    let dets = minors(m, &sets)?;
    Ok(dets
        .into_iter()
        .enumerate()
        .map(|(k, d)| if k % 2 == 1 { -d } else { d })
        .collect())
}
