use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arrangement::{Arrangement, ColumnRole, PolyMatrix};
use crate::poly::{Polynomial, Ring};

use super::{
    bareiss_det, generator_plan, maximal_minors, DetgenError, GeneratorOptions, MinorSelector,
    Provenance,
};

/// A vector field `θ = Σ θ_j ∂/∂x_j` with polynomial coefficients in `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    coefficients: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(coefficients: Vec<Polynomial>) -> Self {
        assert!(
            !coefficients.is_empty(),
            "a derivation needs at least one coefficient"
        );
        let ring = coefficients[0].ring();
        assert!(coefficients.iter().all(|c| c.ring() == ring), "mixed rings");
        assert_eq!(
            coefficients.len(),
            ring.x_vars(),
            "one coefficient per x-variable"
        );
        Derivation { coefficients }
    }

    /// `Σ x_j ∂/∂x_j`.
    pub fn euler(ring: Ring) -> Self {
        Self::new(
            (1..=ring.x_vars())
                .map(|j| Polynomial::x(ring, j))
                .collect(),
        )
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coefficients
    }

    pub fn ring(&self) -> Ring {
        self.coefficients[0].ring()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Polynomial::is_zero)
    }

    /// `θ(p) = Σ θ_j ∂p/∂x_j`.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let ring = self.ring();
        let mut acc = Polynomial::zero(ring);
        for (j, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = p.partial_derivative(ring.x(j + 1));
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    /// Quotients `q_i` with `θ(f_i) = q_i f_i`, or `None` if some `f_i` does
    /// not divide `θ(f_i)`.
    pub fn tangency_quotients(&self, a: &Arrangement) -> Option<Vec<Polynomial>> {
        a.polynomials()
            .iter()
            .map(|f| self.apply(f).exact_divide(f).expect("same ring"))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .coefficients
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>())
    }
}

/// The expansion of a maximal minor of the partial-derivative matrix along
/// its last row: `D = D(s,0) + θ(ℓ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplaceSplit {
    pub selector: MinorSelector,
    /// `Σ A_i s_i`, the part from the parameter entries.
    pub d_s0: Polynomial,
    /// The part from the `∂ℓ/∂x_j` entries.
    pub theta: Derivation,
}

impl LaplaceSplit {
    pub fn to_json(&self) -> Value {
        json!({
            "selector": self.selector.to_json(),
            "d_s0": self.d_s0.to_string(),
            "theta": self.theta.to_json(),
        })
    }
}

/// Splits the minor of `Q^{s,∂}_{\i}` on `selector` into its parameter part
/// and its derivation part.
pub fn laplace_split(
    a: &Arrangement,
    selector: &MinorSelector,
    delete_column: usize,
) -> Result<LaplaceSplit, DetgenError> {
    Ok(laplace_splits(a, std::slice::from_ref(selector), delete_column)?.remove(0))
}

/// [`laplace_split`] for many selectors at once. The cofactors along the
/// last row are maximal minors of the upper block, so they are computed in
/// one memoized pass.
pub fn laplace_splits(
    a: &Arrangement,
    selectors: &[MinorSelector],
    delete_column: usize,
) -> Result<Vec<LaplaceSplit>, DetgenError> {
    let partial = a.build_qs_partial(delete_column)?;
    let q = partial.matrix();
    let last = q.rows() - 1;
    let upper = q.submatrix(
        &(0..last).collect::<Vec<_>>(),
        &(0..q.cols()).collect::<Vec<_>>(),
    );
    let selectors: Vec<MinorSelector> = selectors
        .iter()
        .map(|s| MinorSelector::new(q, s.columns().to_vec()))
        .collect::<Result<_, _>>()?;
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for sel in &selectors {
        let cols = sel.zero_based();
        for p in 0..cols.len() {
            let rest: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != p)
                .map(|(_, &c)| c)
                .collect();
            let next = index.len();
            index.entry(rest).or_insert(next);
        }
    }
    let mut sets = vec![Vec::new(); index.len()];
    for (set, &k) in &index {
        sets[k] = set.clone();
    }
    let cofactor_minors = maximal_minors(&upper, &sets)?;
    let ring = a.ring();
    Ok(selectors
        .into_iter()
        .map(|selector| {
            let cols = selector.zero_based();
            let mut d_s0 = Polynomial::zero(ring);
            let mut theta = vec![Polynomial::zero(ring); a.n()];
            for (p, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != p)
                    .map(|(_, &c)| c)
                    .collect();
                let minor = &cofactor_minors[index[&rest]];
                let cofactor = if (last + p) % 2 == 1 {
                    -minor
                } else {
                    minor.clone()
                };
                match q.col_role(c) {
                    ColumnRole::Diagonal(i) => {
                        d_s0 = &d_s0 + &(&Polynomial::s(ring, i) * &cofactor)
                    }
                    ColumnRole::Jacobian(j) => theta[j - 1] = cofactor,
                    ColumnRole::Plain => unreachable!("arrangement matrices carry roles"),
                }
            }
            LaplaceSplit {
                selector,
                d_s0,
                theta: Derivation::new(theta),
            }
        })
        .collect())
}

/// Checks `f·D = f·D(s,0) + Σ θ_j N_j` exactly, where the left side is the
/// minor of the matrix whose last row has been multiplied by `f`.
pub fn split_identity_holds(
    a: &Arrangement,
    split: &LaplaceSplit,
    delete_column: usize,
) -> Result<bool, DetgenError> {
    let partial = a.build_qs_partial(delete_column)?;
    let cleared: PolyMatrix = partial
        .cleared(a)
        .select_columns(&split.selector.zero_based());
    let lhs = bareiss_det(&cleared)?;
    let numerators = a.critical_equation_numerators();
    let mut rhs = &a.product() * &split.d_s0;
    for (t, nj) in split.theta.coefficients().iter().zip(&numerators) {
        if !t.is_zero() {
            rhs = &rhs + &(t * nj);
        }
    }
    Ok(lhs == rhs)
}

/// A derivation with its origin and tangency certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationGenerator {
    pub provenance: Provenance,
    pub derivation: Derivation,
    /// `q_i` with `θ(f_i) = q_i f_i`; `None` when tangency fails.
    pub quotients: Option<Vec<Polynomial>>,
}

impl DerivationGenerator {
    pub fn is_tangent(&self) -> bool {
        self.quotients.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "provenance": self.provenance.to_json(),
            "theta": self.derivation.to_json(),
            "tangent": self.is_tangent(),
            "quotients": self.quotients.as_ref().map(|q| q.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        })
    }
}

/// The selectors of `Q^s_{\i}` behind the generators produced by
/// [`super::likelihood_generators`] with the same options.
pub fn generator_selectors(
    a: &Arrangement,
    opts: &GeneratorOptions,
) -> Result<Vec<MinorSelector>, DetgenError> {
    Ok(generator_plan(a, opts)?
        .1
        .into_iter()
        .map(|(_, s)| s)
        .collect())
}

/// The Euler derivation followed by the derivation part of every generator
/// minor, each with its tangency certificate.
pub fn derivation_generators(
    a: &Arrangement,
    opts: &GeneratorOptions,
) -> Result<Vec<DerivationGenerator>, DetgenError> {
    let euler = Derivation::euler(a.ring());
    let mut out = vec![DerivationGenerator {
        provenance: Provenance::Euler,
        quotients: euler.tangency_quotients(a),
        derivation: euler,
    }];
    let selectors = generator_selectors(a, opts)?;
    let splits = laplace_splits(a, &selectors, opts.delete_column)?;
    out.par_extend(splits.into_par_iter().map(|split| DerivationGenerator {
        quotients: split.theta.tangency_quotients(a),
        provenance: Provenance::Minor(split.selector),
        derivation: split.theta,
    }));
    Ok(out)
}
