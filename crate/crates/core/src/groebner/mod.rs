//! Independent verification engine: reduced Gröbner bases, normal forms,
//! ideal membership and equality, saturation and projective dimension.
//!
//! Computations are budgeted. Exceeding a budget yields
//! [`OracleError::BudgetExceeded`], which callers report as inconclusive.
//! Over a prime field ([`Field::Prime`]) results are advisory only.

mod arith;
mod engine;
mod order;

pub use order::MonomialOrder;

use std::time::Duration;

use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::poly::{
    Monomial, PolyError, Polynomial, PrimeField, PrimeFieldError, Ring, DEFAULT_PRIME,
};
use arith::{Arith, Integers, Modular, Rationals, Terms};
use engine::{sort_terms, Engine, Poly, Reducer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Prime(PrimeFieldError),
    #[error("ideal must live in the x-variables only")]
    NotInX,
    #[error("operation needs a homogeneous ideal")]
    NotHomogeneous,
}

impl OracleError {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, OracleError::BudgetExceeded(_))
    }
}

/// Coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// Advisory modular computation.
    Prime(u64),
}

impl Field {
    pub fn default_prime() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

/// Caps on a single basis computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_basis_size: usize,
    pub max_degree: u32,
    pub max_coeff_bits: u64,
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_basis_size: 5_000,
            max_degree: 60,
            max_coeff_bits: 100_000,
            time_limit: Some(Duration::from_secs(600)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub field: Field,
    pub budget: Budget,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            field: Field::Rationals,
            budget: Budget::default(),
        }
    }
}

/// A reduced Gröbner basis. Generators are primitive integer polynomials
/// with positive leading coefficient (or symmetric residues over a prime),
/// sorted by increasing leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    field: Field,
    generators: Vec<Polynomial>,
}

fn run_engine<A: Arith>(
    ar: &A,
    ring: Ring,
    gens: &[Polynomial],
    order: MonomialOrder,
    budget: Budget,
) -> Result<Vec<Polynomial>, OracleError> {
    let input = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ar.import(g))
        .collect::<Result<Vec<_>, _>>()?;
    let out = Engine::new(ar, order, budget).run(input)?;
    Ok(out.iter().map(|t| ar.export(ring, t)).collect())
}

fn modular(p: u64) -> Result<Modular, OracleError> {
    Ok(Modular(PrimeField::new(p).map_err(OracleError::Prime)?))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(
    ring: Ring,
    gens: &[Polynomial],
    order: MonomialOrder,
    opts: &OracleOptions,
) -> Result<GroebnerBasis, OracleError> {
    for g in gens {
        if g.ring() != ring {
            return Err(PolyError::RingMismatch(g.ring(), ring).into());
        }
    }
    let generators = match opts.field {
        Field::Rationals => run_engine(&Integers, ring, gens, order, opts.budget)?,
        Field::Prime(p) => run_engine(&modular(p)?, ring, gens, order, opts.budget)?,
    };
    let generators = generators
        .into_iter()
        .map(|g| match opts.field {
            Field::Rationals => g.primitive(),
            Field::Prime(_) => g,
        })
        .collect();
    Ok(GroebnerBasis {
        ring,
        order,
        field: opts.field,
        generators,
    })
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `true` for the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    fn leading(&self, p: &Polynomial) -> Monomial {
        *p.terms()
            .map(|(m, _)| m)
            .max_by(|a, b| self.order.cmp(a, b))
            .expect("basis elements are nonzero")
    }

    /// Leading monomials under the basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().map(|g| self.leading(g)).collect()
    }

    fn polys<A: Arith>(&self, ar: &A) -> Result<Vec<Poly<A::C>>, OracleError> {
        self.generators
            .iter()
            .map(|g| {
                let mut terms = ar.import(g)?;
                sort_terms(&mut terms, self.order);
                Ok(Poly { terms, sugar: 0 })
            })
            .collect()
    }

    fn reduce_with<A: Arith>(&self, ar: &A, p: &Polynomial) -> Result<Terms<A::C>, OracleError> {
        if p.ring() != self.ring {
            return Err(PolyError::RingMismatch(p.ring(), self.ring).into());
        }
        let basis = self.polys(ar)?;
        let refs: Vec<&Poly<A::C>> = basis.iter().collect();
        let mut t = ar.import(p)?;
        sort_terms(&mut t, self.order);
        let red = Reducer {
            ar,
            order: self.order,
        };
        Ok(red.reduce(t, &refs, true))
    }

    /// Remainder of `p` on division by the basis. Exact over the rationals;
    /// a residue lift over a prime.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, OracleError> {
        match self.field {
            Field::Rationals => {
                let r = self.reduce_with(&Rationals, p)?;
                Ok(Rationals.export(self.ring, &r))
            }
            Field::Prime(q) => {
                let ar = modular(q)?;
                let r = self.reduce_with(&ar, p)?;
                Ok(ar.export(self.ring, &r))
            }
        }
    }

    /// Ideal membership.
    pub fn contains(&self, p: &Polynomial) -> Result<bool, OracleError> {
        match self.field {
            Field::Rationals => Ok(self.reduce_with(&Integers, p)?.is_empty()),
            Field::Prime(q) => Ok(self.reduce_with(&modular(q)?, p)?.is_empty()),
        }
    }

    /// Checks that every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> Result<bool, OracleError> {
        fn check<A: Arith>(gb: &GroebnerBasis, ar: &A) -> Result<bool, OracleError> {
            let basis = gb.polys(ar)?;
            let refs: Vec<&Poly<A::C>> = basis.iter().collect();
            let red = Reducer {
                ar,
                order: gb.order,
            };
            for i in 0..basis.len() {
                for j in i + 1..basis.len() {
                    let s = red.spoly(&basis[i], &basis[j]);
                    if !red.reduce(s, &refs, true).is_empty() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        match self.field {
            Field::Rationals => check(self, &Integers),
            Field::Prime(q) => check(self, &modular(q)?),
        }
    }

    /// `true` when no leading monomial divides another and no tail term is
    /// divisible by a leading monomial.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.generators.iter().enumerate().all(|(i, g)| {
            g.terms().all(|(m, _)| {
                lms.iter()
                    .enumerate()
                    .all(|(j, l)| !l.divides(m) || (i == j && *m == lms[i]))
            })
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "order": self.order.name(),
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        });
        if let Field::Prime(p) = self.field {
            v["modulus"] = json!(p);
            v["advisory"] = json!(true);
        }
        v
    }
}

/// Membership of every polynomial in `ps`.
pub fn all_contained(gb: &GroebnerBasis, ps: &[Polynomial]) -> Result<bool, OracleError> {
    for p in ps {
        if !gb.contains(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality of the ideals generated by `g1` and `g2`, by mutual membership.
pub fn ideal_equal(
    ring: Ring,
    g1: &[Polynomial],
    g2: &[Polynomial],
    opts: &OracleOptions,
) -> Result<bool, OracleError> {
    let b1 = buchberger(ring, g1, MonomialOrder::Grevlex, opts)?;
    if !all_contained(&b1, g2)? {
        return Ok(false);
    }
    let b2 = buchberger(ring, g2, MonomialOrder::Grevlex, opts)?;
    all_contained(&b2, g1)
}

/// `(⟨gens⟩ : h^∞)` as a reduced grevlex basis, computed by adjoining
/// `t·h − 1` for a fresh variable `t` and eliminating `t`.
pub fn saturate(
    ring: Ring,
    gens: &[Polynomial],
    h: &Polynomial,
    opts: &OracleOptions,
) -> Result<GroebnerBasis, OracleError> {
    if h.is_zero() {
        return Err(PolyError::DivisionByZero.into());
    }
    let big = Ring::with_aux(ring.s_vars(), ring.x_vars(), ring.aux_vars() + 1)?;
    let t = big.aux(big.aux_vars());
    let mut lifted = gens
        .iter()
        .map(|g| g.to_ring(big))
        .collect::<Result<Vec<_>, _>>()?;
    let th = &Polynomial::var(big, t) * &h.to_ring(big)?;
    lifted.push(&th - &Polynomial::one(big));
    let gb = buchberger(
        big,
        &lifted,
        MonomialOrder::Elimination { block: 1 << t },
        opts,
    )?;
    let kept = gb
        .generators
        .iter()
        .filter(|g| g.terms().all(|(m, _)| m.exponent(t) == 0))
        .map(|g| g.to_ring(ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroebnerBasis {
        ring,
        order: MonomialOrder::Grevlex,
        field: opts.field,
        generators: kept,
    })
}

/// Dimension of the projective zero set of a homogeneous ideal in the
/// x-variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectiveDimension {
    Empty,
    Dim(usize),
}

impl ProjectiveDimension {
    pub fn to_json(&self) -> Value {
        match self {
            ProjectiveDimension::Empty => json!("empty"),
            ProjectiveDimension::Dim(d) => json!(d),
        }
    }
}

/// Krull dimension of `k[x]/I` from a grevlex basis of `I`, via the largest
/// set of x-variables containing the support of no leading monomial.
/// Returns `None` for the unit ideal.
pub fn affine_dimension(gb: &GroebnerBasis) -> Option<usize> {
    if gb.is_unit() {
        return None;
    }
    let ring = gb.ring();
    let xs: Vec<usize> = ring.x_range().collect();
    let masks: Vec<u32> = gb
        .leading_monomials()
        .iter()
        .map(Monomial::support_mask)
        .collect();
    let mut best = 0;
    for subset in 0u32..(1 << xs.len()) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        let vmask: u32 = xs
            .iter()
            .enumerate()
            .filter(|(k, _)| subset & (1 << k) != 0)
            .map(|(_, &v)| 1u32 << v)
            .sum();
        if masks.iter().all(|&lm| lm & !vmask != 0) {
            best = size;
        }
    }
    Some(best)
}

/// Projective dimension of `V(gens) ⊆ P^{n-1}` for homogeneous `gens` in the
/// x-variables. Affine dimension zero means the zero set is empty.
pub fn projective_dimension(
    ring: Ring,
    gens: &[Polynomial],
    opts: &OracleOptions,
) -> Result<ProjectiveDimension, OracleError> {
    for g in gens {
        if !g.involves_only_x() {
            return Err(OracleError::NotInX);
        }
        if !g.is_zero() && g.homogeneous_degree().is_none() {
            return Err(OracleError::NotHomogeneous);
        }
    }
    let gb = buchberger(ring, gens, MonomialOrder::Grevlex, opts)?;
    Ok(match affine_dimension(&gb) {
        None | Some(0) => ProjectiveDimension::Empty,
        Some(d) => ProjectiveDimension::Dim(d - 1),
    })
}

/// The likelihood ideal computed the slow way: the Euler relation and the
/// critical equation numerators, saturated by each distinct `f_i` in turn
/// (linear forms first).
pub fn likelihood_ideal_by_saturation(
    a: &Arrangement,
    opts: &OracleOptions,
) -> Result<GroebnerBasis, OracleError> {
    let ring = a.ring();
    let mut gens = vec![a.euler_relation()];
    gens.extend(a.critical_equation_numerators());
    let mut factors: Vec<Polynomial> = Vec::new();
    let mut by_degree: Vec<(u32, usize)> = a.degrees().iter().copied().zip(0..).collect();
    by_degree.sort();
    for (_, i) in by_degree {
        let p = a.polynomials()[i].primitive();
        if !factors.contains(&p) {
            factors.push(p);
        }
    }
    let mut current = buchberger(ring, &gens, MonomialOrder::Grevlex, opts)?;
    for h in &factors {
        current = saturate(ring, current.generators(), h, opts)?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression;

    fn ring() -> Ring {
        Ring::new(0, 3).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_expression(s, &ring()).unwrap()
    }

    fn gb(gens: &[&str]) -> GroebnerBasis {
        let g: Vec<Polynomial> = gens.iter().map(|s| p(s)).collect();
        buchberger(
            ring(),
            &g,
            MonomialOrder::Grevlex,
            &OracleOptions::default(),
        )
        .unwrap()
    }

    fn strings(g: &GroebnerBasis) -> Vec<String> {
        g.generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn trivial_bases() {
        assert_eq!(strings(&gb(&["x1", "x2"])), ["x2", "x1"]);
        assert_eq!(strings(&gb(&["x1^2 - x2^2", "x1 - x2"])), ["x1 - x2"]);
        assert!(gb(&["x1", "x1 + 1"]).is_unit());
    }

    #[test]
    fn normal_forms() {
        let g = gb(&["x1*x2 - x3^2", "x2^2 - x1*x3"]);
        assert!(g.is_groebner().unwrap());
        assert!(g.is_reduced());
        for s in ["x1*x2 - x3^2", "x2^2 - x1*x3"] {
            assert!(g.normal_form(&p(s)).unwrap().is_zero());
        }
        let irr = gb(&["x1", "x2", "x3"]);
        assert_eq!(irr.normal_form(&p("1")).unwrap().to_string(), "1");
        assert_eq!(
            irr.normal_form(&p("1/2*x1 + 3/4")).unwrap().to_string(),
            "3/4"
        );
    }

    #[test]
    fn twisted_cubic() {
        let g = gb(&["x1*x3 - x2^2", "x2*x3 - x1^2"]);
        assert!(g.is_groebner().unwrap());
        assert!(g.contains(&p("x1^3*x3 - x2^2*x1^2")).unwrap());
    }

    #[test]
    fn saturations() {
        let opts = OracleOptions::default();
        let s = saturate(ring(), &[p("x1*x2")], &p("x1"), &opts).unwrap();
        assert_eq!(strings(&s), ["x2"]);
        let s = saturate(ring(), &[p("x1")], &p("x2"), &opts).unwrap();
        assert_eq!(strings(&s), ["x1"]);
    }

    #[test]
    fn equality() {
        let opts = OracleOptions::default();
        assert!(ideal_equal(ring(), &[p("x1 - x2")], &[p("2*x1 - 2*x2")], &opts).unwrap());
        assert!(!ideal_equal(ring(), &[p("x1")], &[p("x1^2")], &opts).unwrap());
    }

    #[test]
    fn dimensions() {
        let opts = OracleOptions::default();
        assert_eq!(
            projective_dimension(ring(), &[p("x1")], &opts).unwrap(),
            ProjectiveDimension::Dim(1)
        );
        assert_eq!(
            projective_dimension(ring(), &[p("x1"), p("x2"), p("x3")], &opts).unwrap(),
            ProjectiveDimension::Empty
        );
        assert_eq!(
            projective_dimension(ring(), &[p("x1^2 + x2^2 - x3^2"), p("x1*x2 - x3^2")], &opts)
                .unwrap(),
            ProjectiveDimension::Dim(0)
        );
    }

    #[test]
    fn modular_mode_matches_leading_terms() {
        let gens: Vec<Polynomial> = ["x1*x3 - x2^2", "x2*x3 - x1^2", "x1 + 2*x2 + 3*x3"]
            .iter()
            .map(|s| p(s))
            .collect();
        let q = buchberger(
            ring(),
            &gens,
            MonomialOrder::Grevlex,
            &OracleOptions::default(),
        )
        .unwrap();
        let opts = OracleOptions {
            field: Field::default_prime(),
            ..OracleOptions::default()
        };
        let r = buchberger(ring(), &gens, MonomialOrder::Grevlex, &opts).unwrap();
        assert_eq!(q.leading_monomials(), r.leading_monomials());
    }

    #[test]
    fn budget_is_reported() {
        let opts = OracleOptions {
            budget: Budget {
                max_basis_size: 1,
                ..Budget::default()
            },
            ..OracleOptions::default()
        };
        let gens = [p("x1*x3 - x2^2"), p("x2*x3 - x1^2")];
        let err = buchberger(ring(), &gens, MonomialOrder::Grevlex, &opts).unwrap_err();
        assert!(err.is_inconclusive());
    }
}
