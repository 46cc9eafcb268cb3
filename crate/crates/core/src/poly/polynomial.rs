use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{
    format_rational, gcd_of_numerators, lcm_of_denominators, BiDegree, Monomial, PolyError,
    Rational, Ring, VarKind,
};

/// A sparse polynomial with exact rational coefficients.
///
/// Stored coefficients are never zero; the zero polynomial has no terms.
/// Iteration via [`Polynomial::terms`] runs from the leading term down.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: Ring, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn from_int(ring: Ring, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(ring: Ring, m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring, terms }
    }

    /// The variable with the given index (see [`Ring::s`], [`Ring::x`]).
    pub fn var(ring: Ring, index: usize) -> Self {
        assert!(
            index < ring.nvars(),
            "variable index {index} out of range for {ring}"
        );
        Self::monomial(ring, Monomial::var(index), Rational::one())
    }

    pub fn s(ring: Ring, i: usize) -> Self {
        Self::var(ring, ring.s(i))
    }

    pub fn x(ring: Ring, j: usize) -> Self {
        Self::var(ring, ring.x(j))
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading one down, in the ring's order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last_key_value().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.last_key_value().map(|(_, c)| c)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// `Some(d)` if every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::total_degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Whether any term involves a variable outside `x1..xn`.
    pub fn involves_only_x(&self) -> bool {
        let r = self.ring;
        self.terms.keys().all(|m| {
            (0..r.nvars()).all(|i| m.exponent(i) == 0 || matches!(r.kind(i), VarKind::X(_)))
        })
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.ring));
        }
        let mut acc: std::collections::HashMap<Monomial, Rational> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb)).and_modify(|e| *e += &c).or_insert(c);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Polynomial {
            ring: self.ring,
            terms,
        })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.ring);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact quotient `self / q`, or `Ok(None)` when `q` does not divide `self`.
    pub fn exact_divide(&self, q: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
        self.check_ring(q)?;
        let (lm_q, lc_q) = q.leading_term().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.ring);
        while let Some((lm, lc)) = rem.leading_term() {
            let Some(m) = lm_q.divide_into(lm) else {
                return Ok(None);
            };
            let c = lc / lc_q;
            for (qm, qc) in &q.terms {
                rem.add_term(qm.mul(&m), -(qc * &c));
            }
            quot.add_term(m, c);
        }
        Ok(Some(quot))
    }

    /// Formal partial derivative with respect to the variable `index`.
    pub fn partial_derivative(&self, index: usize) -> Polynomial {
        assert!(
            index < self.ring.nvars(),
            "variable index {index} out of range"
        );
        let mut out = Polynomial::zero(self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.set_exponent(index, e - 1);
            out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(PolyError::LengthMismatch {
                expected: n,
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, pt) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    v *= num_traits::pow(pt.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// The common bidegree of all terms.
    pub fn bidegree(&self) -> Result<BiDegree, PolyError> {
        let mut it = self.terms.keys().map(|m| self.ring.bidegree(m));
        let first = it.next().ok_or(PolyError::ZeroPolynomial)?;
        if it.all(|b| b == first) {
            Ok(first)
        } else {
            Err(PolyError::NotBihomogeneous)
        }
    }

    /// Scales to integer coefficients with content one and a positive
    /// leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let l = lcm_of_denominators(self.terms.values());
        let scaled: Vec<Rational> = self
            .terms
            .values()
            .map(|c| c * Rational::from_integer(l.clone()))
            .collect();
        let mut g = gcd_of_numerators(scaled.iter());
        if self.leading_coefficient().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let factor = Rational::from_integer(l) / Rational::from_integer(g);
        self.scale(&factor)
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Moves the polynomial into `target`, sending each variable of
    /// `self.ring()` through `map`. Fails when a variable that actually occurs
    /// has no image.
    pub fn map_vars(
        &self,
        target: Ring,
        map: impl Fn(usize) -> Option<usize>,
    ) -> Result<Polynomial, PolyError> {
        let n = self.ring.nvars();
        let images: Vec<Option<usize>> = (0..n).map(&map).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one();
            for (i, img) in images.iter().enumerate() {
                let e = m.exponent(i);
                if e == 0 {
                    continue;
                }
                match img {
                    Some(j) if *j < target.nvars() => {
                        nm.set_exponent(*j, nm.exponent(*j) + e);
                    }
                    _ => return Err(PolyError::CannotEmbed(self.ring.var_name(i))),
                }
            }
            out.add_term(nm, c.clone());
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in `target`, matching `s_i`, `x_j` and `t_k`
    /// by name.
    pub fn to_ring(&self, target: Ring) -> Result<Polynomial, PolyError> {
        let src = self.ring;
        self.map_vars(target, |i| match src.kind(i) {
            VarKind::S(k) => (k <= target.s_vars()).then(|| target.s(k)),
            VarKind::X(k) => (k <= target.x_vars()).then(|| target.x(k)),
            VarKind::Aux(k) => (k <= target.aux_vars()).then(|| target.aux(k)),
        })
    }

    /// Substitutes `value` for the variable `index`.
    pub fn substitute(&self, index: usize, value: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(value)?;
        let mut out = Polynomial::zero(self.ring);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(self.ring)];
        for (m, c) in &self.terms {
            let e = m.exponent(index) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = *m;
            rest.set_exponent(index, 0);
            out = &out + &powers[e].mul_term(&rest, c);
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form: terms in the ring's order, `3/2*x1^2*s1`, `-x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format_rational(&abs));
            }
            for i in 0..self.ring.nvars() {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(self.ring.var_name(i)),
                    e => factors.push(format!("{}^{}", self.ring.var_name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics if the operands live in different rings; use the
        /// `checked_*` methods to get an error instead.
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
