//! Exact sparse multivariate polynomials over the rationals.
//!
//! Every polynomial lives in a [`Ring`] with `m` parameter variables
//! `s1..sm`, `n` coordinate variables `x1..xn` and optionally a few auxiliary
//! variables `t1..` used by elimination. The ring is bigraded with
//! `deg(s_i) = (1, 0)` and `deg(x_j) = (0, 1)`; auxiliary variables carry no
//! bidegree. Terms are ordered degree-reverse-lexicographically with
//! `s1 > ... > sm > x1 > ... > xn > t1 > ...`.

mod coeff;
mod monomial;
mod polynomial;

pub use coeff::{
    format_rational, rat, rat_frac, PrimeField, PrimeFieldError, Rational, DEFAULT_PRIME,
};
pub use monomial::{Monomial, MAX_VARS};
pub use polynomial::Polynomial;

pub(crate) use coeff::{abs_bits, gcd_of_numerators, lcm_of_denominators};

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings ({0} vs {1})")]
    RingMismatch(Ring, Ring),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("evaluation point has {got} coordinates, ring has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("ring with {0} variables exceeds the supported maximum of {MAX_VARS}")]
    RingTooLarge(usize),
    #[error("the zero polynomial has no bidegree")]
    ZeroPolynomial,
    #[error("polynomial is not bihomogeneous")]
    NotBihomogeneous,
    #[error("variable {0} cannot be mapped into the target ring")]
    CannotEmbed(String),
}

/// Which block a variable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    /// `s_i`, 1-based.
    S(usize),
    /// `x_j`, 1-based.
    X(usize),
    /// `t_k`, 1-based.
    Aux(usize),
}

/// Variable layout of a polynomial ring: `s1..sm, x1..xn, t1..ta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    s_vars: usize,
    x_vars: usize,
    aux_vars: usize,
}

impl Ring {
    pub fn new(s_vars: usize, x_vars: usize) -> Result<Self, PolyError> {
        Self::with_aux(s_vars, x_vars, 0)
    }

    pub fn with_aux(s_vars: usize, x_vars: usize, aux_vars: usize) -> Result<Self, PolyError> {
        let total = s_vars + x_vars + aux_vars;
        if total > MAX_VARS {
            return Err(PolyError::RingTooLarge(total));
        }
        Ok(Ring {
            s_vars,
            x_vars,
            aux_vars,
        })
    }

    pub fn s_vars(&self) -> usize {
        self.s_vars
    }

    pub fn x_vars(&self) -> usize {
        self.x_vars
    }

    pub fn aux_vars(&self) -> usize {
        self.aux_vars
    }

    pub fn nvars(&self) -> usize {
        self.s_vars + self.x_vars + self.aux_vars
    }

    /// Index of `s_i` (1-based `i`).
    pub fn s(&self, i: usize) -> usize {
        assert!(
            i >= 1 && i <= self.s_vars,
            "s{i} is not a variable of {self}"
        );
        i - 1
    }

    /// Index of `x_j` (1-based `j`).
    pub fn x(&self, j: usize) -> usize {
        assert!(
            j >= 1 && j <= self.x_vars,
            "x{j} is not a variable of {self}"
        );
        self.s_vars + j - 1
    }

    /// Index of `t_k` (1-based `k`).
    pub fn aux(&self, k: usize) -> usize {
        assert!(
            k >= 1 && k <= self.aux_vars,
            "t{k} is not a variable of {self}"
        );
        self.s_vars + self.x_vars + k - 1
    }

    pub fn s_range(&self) -> std::ops::Range<usize> {
        0..self.s_vars
    }

    pub fn x_range(&self) -> std::ops::Range<usize> {
        self.s_vars..self.s_vars + self.x_vars
    }

    pub fn kind(&self, index: usize) -> VarKind {
        if index < self.s_vars {
            VarKind::S(index + 1)
        } else if index < self.s_vars + self.x_vars {
            VarKind::X(index - self.s_vars + 1)
        } else {
            assert!(index < self.nvars(), "variable index {index} out of range");
            VarKind::Aux(index - self.s_vars - self.x_vars + 1)
        }
    }

    pub fn var_name(&self, index: usize) -> String {
        match self.kind(index) {
            VarKind::S(i) => format!("s{i}"),
            VarKind::X(j) => format!("x{j}"),
            VarKind::Aux(k) => format!("t{k}"),
        }
    }

    /// Bidegree of a monomial, ignoring auxiliary variables.
    pub fn bidegree(&self, m: &Monomial) -> BiDegree {
        BiDegree {
            s_deg: m.degree_in(self.s_range()),
            x_deg: m.degree_in(self.x_range()),
        }
    }

    /// The same ring without auxiliary variables.
    pub fn without_aux(&self) -> Ring {
        Ring {
            aux_vars: 0,
            ..*self
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[s:{}, x:{}", self.s_vars, self.x_vars)?;
        if self.aux_vars > 0 {
            write!(f, ", t:{}", self.aux_vars)?;
        }
        write!(f, "]")
    }
}

/// Bidegree `(s_deg, x_deg)` in the grading `deg s_i = (1,0)`, `deg x_j = (0,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiDegree {
    pub s_deg: u32,
    pub x_deg: u32,
}

impl BiDegree {
    pub const fn new(s_deg: u32, x_deg: u32) -> Self {
        BiDegree { s_deg, x_deg }
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.s_deg + o.s_deg, self.x_deg + o.x_deg)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s_deg, self.x_deg)
    }
}
