//! Coefficient arithmetic behind the Buchberger engine.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::OracleError;
use crate::poly::{abs_bits, Monomial, Polynomial, PrimeField, Rational, Ring};

/// Terms in ascending monomial order; the leading term is last.
pub(crate) type Terms<C> = Vec<(Monomial, C)>;

pub(crate) trait Arith: Sync {
    type C: Clone + Debug + PartialEq + Send + Sync;

    /// Terms of `p` in ascending order of the ring's default order; the
    /// engine re-sorts for other orders.
    fn import(&self, p: &Polynomial) -> Result<Terms<Self::C>, OracleError>;
    fn export(&self, ring: Ring, t: &[(Monomial, Self::C)]) -> Polynomial;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn is_one(&self, c: &Self::C) -> bool;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn sub(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    /// `(a, b)` with `a·lc_f = b·lc_g`, `a` as small as possible.
    fn cancel(&self, lc_f: &Self::C, lc_g: &Self::C) -> (Self::C, Self::C);
    /// Canonical scaling: primitive with positive leading coefficient, or monic.
    fn normalize(&self, t: &mut Terms<Self::C>);
    /// Removes a common constant factor from two term lists at once.
    fn joint_content(&self, _a: &mut Terms<Self::C>, _b: &mut Terms<Self::C>) {}
    fn bits(&self, c: &Self::C) -> u64;
}

/// Fraction-free arithmetic on integer coefficients.
pub(crate) struct Integers;

fn content(it: impl Iterator<Item = BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for c in it {
        g = g.gcd(&c);
        if g.is_one() {
            break;
        }
    }
    g
}

impl Arith for Integers {
    type C = BigInt;

    fn import(&self, p: &Polynomial) -> Result<Terms<BigInt>, OracleError> {
        let q = p.primitive();
        Ok(q.terms()
            .rev()
            .map(|(m, c)| (*m, c.numer().clone()))
            .collect())
    }

    fn export(&self, ring: Ring, t: &[(Monomial, BigInt)]) -> Polynomial {
        Polynomial::from_terms(
            ring,
            t.iter()
                .map(|(m, c)| (*m, Rational::from_integer(c.clone()))),
        )
    }

    fn is_zero(&self, c: &BigInt) -> bool {
        c.is_zero()
    }

    fn is_one(&self, c: &BigInt) -> bool {
        c.is_one()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn cancel(&self, lc_f: &BigInt, lc_g: &BigInt) -> (BigInt, BigInt) {
        let g = lc_f.gcd(lc_g);
        let (mut a, mut b) = (lc_g / &g, lc_f / &g);
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        (a, b)
    }

    fn normalize(&self, t: &mut Terms<BigInt>) {
        if t.is_empty() {
            return;
        }
        let mut g = content(t.iter().map(|(_, c)| c.clone()));
        if t.last().expect("nonempty").1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in t.iter_mut() {
                *c /= &g;
            }
        }
    }

    fn joint_content(&self, a: &mut Terms<BigInt>, b: &mut Terms<BigInt>) {
        let g = content(a.iter().chain(b.iter()).map(|(_, c)| c.clone()));
        if g.is_zero() || g.is_one() {
            return;
        }
        for (_, c) in a.iter_mut().chain(b.iter_mut()) {
            *c /= &g;
        }
    }

    fn bits(&self, c: &BigInt) -> u64 {
        abs_bits(c)
    }
}

/// Exact rational arithmetic; used for normal forms that must not be scaled.
pub(crate) struct Rationals;

impl Arith for Rationals {
    type C = Rational;

    fn import(&self, p: &Polynomial) -> Result<Terms<Rational>, OracleError> {
        Ok(p.terms().rev().map(|(m, c)| (*m, c.clone())).collect())
    }

    fn export(&self, ring: Ring, t: &[(Monomial, Rational)]) -> Polynomial {
        Polynomial::from_terms(ring, t.iter().cloned())
    }

    fn is_zero(&self, c: &Rational) -> bool {
        c.is_zero()
    }

    fn is_one(&self, c: &Rational) -> bool {
        c.is_one()
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn cancel(&self, lc_f: &Rational, lc_g: &Rational) -> (Rational, Rational) {
        (Rational::one(), lc_f / lc_g)
    }

    fn normalize(&self, t: &mut Terms<Rational>) {
        if let Some((_, lc)) = t.last() {
            let inv = lc.recip();
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
    }

    fn bits(&self, c: &Rational) -> u64 {
        abs_bits(c.numer()).max(abs_bits(c.denom()))
    }
}

/// Arithmetic modulo a word-sized prime. Advisory only.
pub(crate) struct Modular(pub PrimeField);

impl Arith for Modular {
    type C = u64;

    fn import(&self, p: &Polynomial) -> Result<Terms<u64>, OracleError> {
        let mut out = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms().rev() {
            let v = self.0.reduce(c).map_err(OracleError::Prime)?;
            if v != 0 {
                out.push((*m, v));
            }
        }
        Ok(out)
    }

    fn export(&self, ring: Ring, t: &[(Monomial, u64)]) -> Polynomial {
        Polynomial::from_terms(ring, t.iter().map(|(m, c)| (*m, self.0.lift(*c))))
    }

    fn is_zero(&self, c: &u64) -> bool {
        *c == 0
    }

    fn is_one(&self, c: &u64) -> bool {
        *c == 1
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.0.mul(*a, *b)
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.0.sub(*a, *b)
    }

    fn neg(&self, a: &u64) -> u64 {
        self.0.neg(*a)
    }

    fn cancel(&self, lc_f: &u64, lc_g: &u64) -> (u64, u64) {
        (1, self.0.mul(*lc_f, self.0.inv(*lc_g)))
    }

    fn normalize(&self, t: &mut Terms<u64>) {
        if let Some(&(_, lc)) = t.last() {
            let inv = self.0.inv(lc);
            for (_, c) in t.iter_mut() {
                *c = self.0.mul(*c, inv);
            }
        }
    }

    fn bits(&self, _c: &u64) -> u64 {
        0
    }
}
