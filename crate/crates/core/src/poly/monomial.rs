use std::cmp::Ordering;
use std::fmt;

/// Hard cap on the number of variables a ring may carry (s, x and auxiliary
/// variables together).
pub const MAX_VARS: usize = 24;

/// An exponent vector. Positions beyond the ring's variable count are zero.
///
/// The `Ord` implementation is degree-reverse-lexicographic with variable 0 the
/// largest, which is the default order of every ring in this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
        }
    }

    pub fn var(index: usize) -> Self {
        let mut m = Self::one();
        m.exps[index] = 1;
        m
    }

    /// Builds a monomial from an exponent slice. Panics if the slice is longer
    /// than [`MAX_VARS`] or an exponent does not fit in 16 bits.
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables for a monomial");
        let mut m = Self::one();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m
    }

    #[inline]
    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index] as u32
    }

    pub fn exponents(&self, len: usize) -> &[u16] {
        &self.exps[..len]
    }

    pub fn set_exponent(&mut self, index: usize, e: u32) {
        self.exps[index] = u16::try_from(e).expect("exponent overflow");
    }

    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Indices of variables with a nonzero exponent, as a bit mask.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, &b) in out.exps.iter_mut().zip(&other.exps) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    #[inline]
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *other;
        for (a, &b) in out.exps.iter_mut().zip(&self.exps) {
            *a = a.checked_sub(b)?;
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, &b) in out.exps.iter_mut().zip(&other.exps) {
            *a = (*a).max(b);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Removes variable `index`, shifting later exponents down by one slot.
    pub fn remove_var(&self, index: usize) -> Monomial {
        let mut out = Self::one();
        let mut k = 0;
        for (i, &e) in self.exps.iter().enumerate() {
            if i != index {
                out.exps[k] = e;
                k += 1;
            }
        }
        out
    }

    /// Reverse-lexicographic tie break restricted to the variables in `mask`.
    #[inline]
    pub(crate) fn revlex_masked(&self, other: &Monomial, mask: u32) -> Ordering {
        for i in (0..MAX_VARS).rev() {
            if mask & (1 << i) == 0 {
                continue;
            }
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable is larger
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    #[inline]
    pub(crate) fn degree_masked(&self, mask: u32) -> u32 {
        let mut d = 0;
        for i in 0..MAX_VARS {
            if mask & (1 << i) != 0 {
                d += self.exps[i] as u32;
            }
        }
        d
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "Monomial({:?})", &self.exps[..last])
    }
}
