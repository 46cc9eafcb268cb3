use std::cmp::Ordering;

use crate::poly::Monomial;

/// A monomial order on the variables of one ring (variable 0 largest).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic.
    Grevlex,
    /// Block order: the variables in `block` (bit mask of indices) are
    /// compared first by degree then reverse-lexicographically; ties fall back
    /// to grevlex on the remaining variables. Eliminates the block.
    Elimination { block: u32 },
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.cmp(b),
            MonomialOrder::Elimination { block } => a
                .degree_masked(block)
                .cmp(&b.degree_masked(block))
                .then_with(|| a.revlex_masked(b, block))
                .then_with(|| a.cmp(b)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Elimination { .. } => "elimination",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elimination_puts_block_first() {
        let ord = MonomialOrder::Elimination { block: 1 << 2 };
        let t = Monomial::var(2);
        let big = Monomial::from_exponents(&[5, 5]);
        assert_eq!(ord.cmp(&t, &big), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&t, &big), Ordering::Less);
        let a = Monomial::from_exponents(&[1, 0, 1]);
        let b = Monomial::from_exponents(&[0, 1, 1]);
        assert_eq!(ord.cmp(&a, &b), Ordering::Greater);
    }
}
