//! Seeded synthesis of arrangements through prescribed rational points.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{Arrangement, ArrangementError};
use crate::expr::ArrangementFile;
use crate::linalg::{nullspace, RatMatrix};
use crate::poly::{format_rational, rat, Monomial, Polynomial, Rational, Ring};

/// A point planted on `⋂_{i∈I} V(f_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedPoint {
    /// 1-based, increasing.
    pub subset: Vec<usize>,
    pub coordinates: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synthesized {
    pub arrangement: Arrangement,
    pub points: Vec<PlantedPoint>,
    pub seed: u64,
}

impl Synthesized {
    /// A loadable arrangement document with extra `seed` and `planted` keys.
    pub fn to_json(&self) -> Value {
        let points: Vec<Value> = self
            .points
            .iter()
            .map(|p| json!({"I": p.subset, "point": p.coordinates.iter().map(format_rational).collect::<Vec<_>>()}))
            .collect();
        let mut doc = serde_json::to_value(ArrangementFile::from_arrangement(&self.arrangement))
            .expect("arrangement documents serialize");
        doc["seed"] = json!(self.seed);
        doc["planted"] = json!(points);
        doc
    }
}

/// Monomials of degree `d` in the x-variables of `ring`.
fn monomials(ring: Ring, d: u32) -> Vec<Monomial> {
    ring.x_range()
        .combinations_with_replacement(d as usize)
        .map(|vars| {
            let mut m = Monomial::one();
            for v in vars {
                m.set_exponent(v, m.exponent(v) + 1);
            }
            m
        })
        .collect()
}

fn eval_monomial(m: &Monomial, point: &[Rational]) -> Rational {
    point.iter().enumerate().fold(rat(1), |acc, (v, c)| {
        acc * num_traits::pow(c.clone(), m.exponent(v) as usize)
    })
}

/// An arrangement of the given degrees in `n` variables whose members in each
/// `subsets[k]` (1-based) all vanish at a random integer point. Coefficients
/// are small random integer combinations of a kernel basis, so equal seeds
/// give equal output.
pub fn synthesize(
    n: usize,
    degrees: &[u32],
    subsets: &[Vec<usize>],
    seed: u64,
) -> Result<Synthesized, ArrangementError> {
    let ring = Ring::new(0, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(bad) = subsets
        .iter()
        .flatten()
        .find(|&&i| i == 0 || i > degrees.len())
    {
        return Err(ArrangementError::Synthesis(format!(
            "planted subset index {bad} out of range"
        )));
    }
    let points: Vec<PlantedPoint> = subsets
        .iter()
        .map(|s| {
            let mut subset = s.clone();
            subset.sort_unstable();
            subset.dedup();
            let mut coordinates: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            if coordinates.iter().all(|&c| c == 0) {
                coordinates[0] = 1;
            }
            PlantedPoint {
                subset,
                coordinates: coordinates.into_iter().map(rat).collect(),
            }
        })
        .collect();
    let mut polys = Vec::with_capacity(degrees.len());
    for (i, &d) in degrees.iter().enumerate() {
        let basis_monomials = monomials(ring, d);
        let conditions: RatMatrix = points
            .iter()
            .filter(|p| p.subset.contains(&(i + 1)))
            .map(|p| {
                basis_monomials
                    .iter()
                    .map(|m| eval_monomial(m, &p.coordinates))
                    .collect()
            })
            .collect();
        let kernel = nullspace(&conditions, basis_monomials.len());
        if kernel.is_empty() {
            return Err(ArrangementError::Synthesis(format!(
                "too many planted points for f{} of degree {d}",
                i + 1
            )));
        }
        let p = loop {
            let coeffs: Vec<Rational> = kernel.iter().map(|_| rat(rng.gen_range(-4..=4))).collect();
            let p = Polynomial::from_terms(
                ring,
                basis_monomials.iter().enumerate().map(|(k, m)| {
                    let c = kernel
                        .iter()
                        .zip(&coeffs)
                        .fold(rat(0), |acc, (v, c)| acc + &v[k] * c);
                    (*m, c)
                }),
            );
            if !p.is_zero() {
                break p.primitive();
            }
        };
        polys.push(p);
    }
    Ok(Synthesized {
        arrangement: Arrangement::new(n, polys)?,
        points,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::vanishes_at;

    #[test]
    fn planted_points_lie_on_their_subsets() {
        let s = synthesize(3, &[1, 2, 2], &[vec![1, 2], vec![2, 3]], 7).unwrap();
        for p in &s.points {
            for &i in &p.subset {
                let f = s.arrangement.polynomial(i);
                assert!(vanishes_at(
                    &f.to_ring(Ring::new(0, 3).unwrap()).unwrap(),
                    &p.coordinates
                ));
            }
        }
    }

    #[test]
    fn seed_determines_output() {
        let a = synthesize(3, &[2, 2], &[vec![1, 2]], 11).unwrap();
        let b = synthesize(3, &[2, 2], &[vec![1, 2]], 11).unwrap();
        assert_eq!(a, b);
        let c = synthesize(3, &[2, 2], &[vec![1, 2]], 12).unwrap();
        assert_ne!(a.arrangement.polynomials(), c.arrangement.polynomials());
    }

    #[test]
    fn output_is_a_loadable_document() {
        let s = synthesize(3, &[1, 2], &[vec![1, 2]], 3).unwrap();
        let doc = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(crate::expr::parse_arrangement(&doc).unwrap(), s.arrangement);
    }

    #[test]
    fn overdetermined_request_fails() {
        let planted: Vec<Vec<usize>> = (0..4).map(|_| vec![1]).collect();
        assert!(synthesize(3, &[1], &planted, 1).is_err());
    }
}
