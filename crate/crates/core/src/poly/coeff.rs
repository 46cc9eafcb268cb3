//! Coefficient helpers: exact rationals and a single-word prime field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// The default prime for the advisory modular mode, 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"3"`, `"-3/2"`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn lcm_of_denominators<'a>(it: impl Iterator<Item = &'a Rational>) -> BigInt {
    it.fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub(crate) fn gcd_of_numerators<'a>(it: impl Iterator<Item = &'a Rational>) -> BigInt {
    it.fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}

/// Arithmetic modulo a prime that fits in 32 bits, so products fit in `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrimeFieldError {
    #[error("modulus {0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("denominator is divisible by the modulus")]
    BadReduction,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, PrimeFieldError> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(PrimeFieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = n.mod_floor(&p);
        r.try_into().expect("residue fits in u64")
    }

    pub fn reduce(&self, q: &Rational) -> Result<u64, PrimeFieldError> {
        let d = self.reduce_int(q.denom());
        if d == 0 {
            return Err(PrimeFieldError::BadReduction);
        }
        Ok(self.mul(self.reduce_int(q.numer()), self.inv(d)))
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> Rational {
        let v = if a > self.p / 2 {
            BigInt::from(a) - BigInt::from(self.p)
        } else {
            BigInt::from(a)
        };
        Rational::from_integer(v)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn abs_bits(n: &BigInt) -> u64 {
    n.abs().bits()
}
