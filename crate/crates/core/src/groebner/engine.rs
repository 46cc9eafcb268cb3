//! Buchberger's algorithm with the Gebauer–Möller criteria and the sugar
//! selection strategy, generic over the coefficient arithmetic.

use std::cmp::Ordering;
use std::time::Instant;

use super::arith::{Arith, Terms};
use super::{Budget, MonomialOrder, OracleError};
use crate::poly::Monomial;

#[derive(Debug, Clone)]
pub(crate) struct Poly<C> {
    /// Ascending; the leading term is last.
    pub terms: Terms<C>,
    pub sugar: u32,
}

impl<C> Poly<C> {
    pub fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero polynomial").0
    }

    pub fn lc(&self) -> &C {
        &self.terms.last().expect("nonzero polynomial").1
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

pub(crate) fn sort_terms<C>(t: &mut Terms<C>, order: MonomialOrder) {
    if order != MonomialOrder::Grevlex {
        t.sort_by(|a, b| order.cmp(&a.0, &b.0));
    }
}

/// `a·f − b·(m·g)`, all inputs ascending.
fn combine<A: Arith>(
    ar: &A,
    order: MonomialOrder,
    a: &A::C,
    f: &[(Monomial, A::C)],
    b: &A::C,
    m: &Monomial,
    g: &[(Monomial, A::C)],
) -> Terms<A::C> {
    let a_one = ar.is_one(a);
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let scaled_f = |c: &A::C| if a_one { c.clone() } else { ar.mul(a, c) };
    let mut gm = g.first().map(|(mm, _)| mm.mul(m));
    while i < f.len() || j < g.len() {
        let ord = match (f.get(i), &gm) {
            (Some((fm, _)), Some(gmm)) => order.cmp(fm, gmm),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Less => {
                out.push((f[i].0, scaled_f(&f[i].1)));
                i += 1;
            }
            Ordering::Greater => {
                out.push((gm.expect("pending"), ar.neg(&ar.mul(b, &g[j].1))));
                j += 1;
                gm = g.get(j).map(|(mm, _)| mm.mul(m));
            }
            Ordering::Equal => {
                let c = ar.sub(&scaled_f(&f[i].1), &ar.mul(b, &g[j].1));
                if !ar.is_zero(&c) {
                    out.push((f[i].0, c));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|(mm, _)| mm.mul(m));
            }
        }
    }
    out
}

pub(crate) struct Reducer<'a, A: Arith> {
    pub ar: &'a A,
    pub order: MonomialOrder,
}

impl<A: Arith> Reducer<'_, A> {
    fn find_divisor<'b>(
        &self,
        m: &Monomial,
        basis: &'b [&'b Poly<A::C>],
    ) -> Option<&'b Poly<A::C>> {
        let mask = m.support_mask();
        basis.iter().copied().find(|g| {
            let lm = g.lm();
            lm.support_mask() & !mask == 0 && lm.divides(m)
        })
    }

    /// Fully reduces `f` modulo `basis`. Over the integers the result is a
    /// nonzero constant multiple of the true remainder.
    pub fn reduce(&self, mut f: Terms<A::C>, basis: &[&Poly<A::C>], full: bool) -> Terms<A::C> {
        // remainder collected in descending order
        let mut r: Terms<A::C> = Vec::new();
        let mut steps = 0usize;
        while let Some((lm, lc)) = f.last() {
            match self.find_divisor(lm, basis) {
                Some(g) => {
                    let q = g.lm().divide_into(lm).expect("divides");
                    let (a, b) = self.ar.cancel(lc, g.lc());
                    let n = f.len() - 1;
                    let gl = g.terms.len() - 1;
                    f = combine(self.ar, self.order, &a, &f[..n], &b, &q, &g.terms[..gl]);
                    if !self.ar.is_one(&a) {
                        for (_, c) in r.iter_mut() {
                            *c = self.ar.mul(&a, c);
                        }
                    }
                    steps += 1;
                    if steps.is_multiple_of(16) {
                        self.ar.joint_content(&mut f, &mut r);
                    }
                }
                None if full => {
                    r.push(f.pop().expect("nonempty"));
                }
                None => break,
            }
        }
        if !full {
            return f;
        }
        r.reverse();
        r
    }

    /// S-polynomial of `f` and `g`, ascending.
    pub fn spoly(&self, f: &Poly<A::C>, g: &Poly<A::C>) -> Terms<A::C> {
        let lcm = f.lm().lcm(g.lm());
        let mf = f.lm().divide_into(&lcm).expect("divides");
        let mg = g.lm().divide_into(&lcm).expect("divides");
        let (a, b) = self.ar.cancel(f.lc(), g.lc());
        // a·mf·f − b·mg·g, dropping the cancelling leading terms
        let nf = f.terms.len() - 1;
        let ng = g.terms.len() - 1;
        let fm: Terms<A::C> = f.terms[..nf]
            .iter()
            .map(|(m, c)| (m.mul(&mf), c.clone()))
            .collect();
        combine(self.ar, self.order, &a, &fm, &b, &mg, &g.terms[..ng])
    }
}

pub(crate) struct Engine<'a, A: Arith> {
    red: Reducer<'a, A>,
    budget: Budget,
    basis: Vec<Poly<A::C>>,
    redundant: Vec<bool>,
    pairs: Vec<Pair>,
    start: Instant,
}

impl<'a, A: Arith> Engine<'a, A> {
    pub fn new(ar: &'a A, order: MonomialOrder, budget: Budget) -> Self {
        Engine {
            red: Reducer { ar, order },
            budget,
            basis: Vec::new(),
            redundant: Vec::new(),
            pairs: Vec::new(),
            start: Instant::now(),
        }
    }

    fn active(&self) -> Vec<&Poly<A::C>> {
        self.basis
            .iter()
            .zip(&self.redundant)
            .filter(|(_, r)| !**r)
            .map(|(p, _)| p)
            .collect()
    }

    fn check_budget(&self, p: &Poly<A::C>) -> Result<(), OracleError> {
        if self.basis.len() >= self.budget.max_basis_size {
            return Err(OracleError::BudgetExceeded(format!(
                "basis size exceeds {}",
                self.budget.max_basis_size
            )));
        }
        let deg = p.lm().total_degree().max(
            p.terms
                .iter()
                .map(|(m, _)| m.total_degree())
                .max()
                .unwrap_or(0),
        );
        if deg > self.budget.max_degree {
            return Err(OracleError::BudgetExceeded(format!(
                "polynomial degree {deg} exceeds {}",
                self.budget.max_degree
            )));
        }
        let bits = p
            .terms
            .iter()
            .map(|(_, c)| self.red.ar.bits(c))
            .max()
            .unwrap_or(0);
        if bits > self.budget.max_coeff_bits {
            return Err(OracleError::BudgetExceeded(format!(
                "coefficient size {bits} bits exceeds {}",
                self.budget.max_coeff_bits
            )));
        }
        self.check_time()
    }

    fn check_time(&self) -> Result<(), OracleError> {
        if let Some(limit) = self.budget.time_limit {
            if self.start.elapsed() > limit {
                return Err(OracleError::BudgetExceeded(format!(
                    "time limit of {limit:?} reached"
                )));
            }
        }
        Ok(())
    }

    /// Adds a reduced, normalized polynomial and updates the pair set.
    fn insert(&mut self, p: Poly<A::C>) -> Result<(), OracleError> {
        self.check_budget(&p)?;
        let k = self.basis.len();
        let h = *p.lm();

        // candidate pairs with the new element
        let mut fresh: Vec<(Pair, bool)> = Vec::new();
        for (i, g) in self.basis.iter().enumerate() {
            if self.redundant[i] {
                continue;
            }
            let lm = g.lm();
            let lcm = lm.lcm(&h);
            let sugar = (g.sugar + lm.divide_into(&lcm).expect("divides").total_degree())
                .max(p.sugar + h.divide_into(&lcm).expect("divides").total_degree());
            fresh.push((
                Pair {
                    i,
                    j: k,
                    lcm,
                    sugar,
                },
                lm.is_coprime(&h),
            ));
        }

        // old pairs (i, j) whose lcm is a multiple of h and differs from both
        // new lcms are redundant
        let lcm_with: std::collections::HashMap<usize, Monomial> =
            fresh.iter().map(|(pr, _)| (pr.i, pr.lcm)).collect();
        self.pairs.retain(|pr| {
            if !h.divides(&pr.lcm) {
                return true;
            }
            let li = lcm_with.get(&pr.i);
            let lj = lcm_with.get(&pr.j);
            match (li, lj) {
                (Some(a), Some(b)) => *a == pr.lcm || *b == pr.lcm,
                _ => true,
            }
        });

        // among new pairs, drop those whose lcm is a proper multiple of another
        let lcms: Vec<Monomial> = fresh.iter().map(|(pr, _)| pr.lcm).collect();
        let mut keep: Vec<bool> = fresh
            .iter()
            .map(|(pr, _)| !lcms.iter().any(|l| *l != pr.lcm && l.divides(&pr.lcm)))
            .collect();
        // of pairs sharing an lcm keep one, and none if any of them is coprime
        for a in 0..fresh.len() {
            if !keep[a] {
                continue;
            }
            let group: Vec<usize> = (a..fresh.len())
                .filter(|&b| keep[b] && fresh[b].0.lcm == fresh[a].0.lcm)
                .collect();
            let coprime = group.iter().any(|&b| fresh[b].1);
            for (pos, &b) in group.iter().enumerate() {
                if coprime || pos > 0 {
                    keep[b] = false;
                }
            }
        }
        for ((pr, _), kept) in fresh.into_iter().zip(keep) {
            if kept {
                self.pairs.push(pr);
            }
        }

        for (i, g) in self.basis.iter().enumerate() {
            if !self.redundant[i] && h.divides(g.lm()) {
                self.redundant[i] = true;
            }
        }
        self.basis.push(p);
        self.redundant.push(false);
        Ok(())
    }

    fn make_poly(&self, mut terms: Terms<A::C>, sugar: u32) -> Poly<A::C> {
        self.red.ar.normalize(&mut terms);
        Poly { terms, sugar }
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar
                .cmp(&q.sugar)
                .then(p.lcm.total_degree().cmp(&q.lcm.total_degree()))
                .then((p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    /// Runs the algorithm and returns the reduced basis, ascending by
    /// leading monomial.
    pub fn run(mut self, input: Vec<Terms<A::C>>) -> Result<Vec<Terms<A::C>>, OracleError> {
        for mut t in input {
            sort_terms(&mut t, self.red.order);
            let sugar = t.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0);
            let active = self.active();
            let r = self.red.reduce(t, &active, true);
            if r.is_empty() {
                continue;
            }
            let p = self.make_poly(r, sugar);
            if p.lm().is_one() {
                return Ok(vec![p.terms]);
            }
            self.insert(p)?;
        }
        while let Some(pair) = self.next_pair() {
            self.check_time()?;
            let s = self.red.spoly(&self.basis[pair.i], &self.basis[pair.j]);
            if s.is_empty() {
                continue;
            }
            let active = self.active();
            let r = self.red.reduce(s, &active, true);
            if r.is_empty() {
                continue;
            }
            let p = self.make_poly(r, pair.sugar);
            if p.lm().is_one() {
                return Ok(vec![p.terms]);
            }
            self.insert(p)?;
        }
        Ok(self.interreduce())
    }

    fn interreduce(self) -> Vec<Terms<A::C>> {
        let order = self.red.order;
        let mut minimal: Vec<&Poly<A::C>> = self.active();
        minimal.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
        let mut out = Vec::with_capacity(minimal.len());
        for (k, g) in minimal.iter().enumerate() {
            let others: Vec<&Poly<A::C>> = minimal
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, p)| *p)
                .collect();
            // the lead is irreducible by minimality, so only the tail changes
            let mut whole = self.red.reduce(g.terms.clone(), &others, true);
            self.red.ar.normalize(&mut whole);
            out.push(whole);
        }
        out
    }
}
