//! Property tests over random inputs.

mod common;

use likelihood::arrangement::{Arrangement, PolyMatrix};
use likelihood::detgen::{
    bareiss_det, binomial, circuit, derivation_generators, generator_census, generator_selectors,
    laplace_split, likelihood_generators, minors, split_identity_holds, DetgenError,
    GeneratorOptions,
};
use likelihood::expr::{
    integer_json, parse_arrangement, parse_expression, render_report, ArrangementFile,
};
use likelihood::groebner::{
    buchberger, likelihood_ideal_by_saturation, saturate, Budget, GroebnerBasis, MonomialOrder,
    OracleError, OracleOptions,
};
use likelihood::invariants::{
    euler_disc_ledger, hyperplane_ea, ml_degree, multidegree_coeffs, series_coefficients,
    snc_check_hyperplanes, HyperplaneVerdict,
};
use likelihood::linalg::{rank, RatMatrix};
use likelihood::poly::{rat, BiDegree, Monomial, Polynomial, Rational, Ring};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::sample::subsequence;
use std::time::Duration;

fn ring(m: usize, n: usize) -> Ring {
    Ring::new(m, n).unwrap()
}

/// Arbitrary polynomial with exponents up to `max_exp` in every variable.
fn poly(r: Ring, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, r.nvars()), -5i64..=5),
        0..=max_terms,
    )
    .prop_map(move |ts| {
        Polynomial::from_terms(
            r,
            ts.into_iter()
                .map(|(e, c)| (Monomial::from_exponents(&e), rat(c))),
        )
    })
}

/// Monomial with the given degrees in the s- and x-blocks.
fn bigraded_monomial(r: Ring, a: u32, b: u32) -> impl Strategy<Value = Monomial> {
    let s_count = r.s_vars().max(1);
    (
        prop::collection::vec(0..s_count, a as usize),
        prop::collection::vec(0..r.x_vars(), b as usize),
    )
        .prop_map(move |(ss, xs)| {
            let mut m = Monomial::one();
            for i in ss {
                let v = r.s(i + 1);
                m.set_exponent(v, m.exponent(v) + 1);
            }
            for j in xs {
                let v = r.x(j + 1);
                m.set_exponent(v, m.exponent(v) + 1);
            }
            m
        })
}

/// Bihomogeneous polynomial of bidegree `(a, b)`, possibly zero.
fn bihomogeneous(r: Ring, a: u32, b: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((bigraded_monomial(r, a, b), -5i64..=5), 1..=max_terms)
        .prop_map(move |ts| Polynomial::from_terms(r, ts.into_iter().map(|(m, c)| (m, rat(c)))))
}

fn homogeneous(r: Ring, d: u32) -> impl Strategy<Value = Polynomial> {
    bihomogeneous(r, 0, d, 6)
}

fn arrangement(n: usize, max_m: usize, max_d: u32) -> impl Strategy<Value = Arrangement> {
    let r = ring(0, n);
    prop::collection::vec(1..=max_d, 1..=max_m)
        .prop_flat_map(move |degs| {
            degs.into_iter()
                .map(|d| homogeneous(r, d).prop_filter("nonzero", |p| !p.is_zero()))
                .collect::<Vec<_>>()
        })
        .prop_map(move |ps| Arrangement::new(n, ps).unwrap())
}

fn poly_matrix(r: Ring, rows: usize, cols: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(poly(r, 2, 3), cols), rows)
        .prop_map(move |rows| PolyMatrix::from_rows(r, rows))
}

fn small_matrix(r: Ring, k: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(poly(r, 1, 2), k), k)
        .prop_map(move |rows| PolyMatrix::from_rows(r, rows))
}

fn rat_matrix(m: usize, n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), m)
        .prop_filter("no zero rows", |rows| {
            rows.iter().all(|r| r.iter().any(|&v| v != 0))
        })
        .prop_map(|rows| {
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect()
        })
}

fn small_budget() -> OracleOptions {
    OracleOptions {
        budget: Budget {
            max_basis_size: 300,
            max_degree: 20,
            max_coeff_bits: 4_000,
            time_limit: Some(Duration::from_secs(10)),
        },
        ..Default::default()
    }
}

/// `None` when the oracle gave up within its budget.
fn conclusive<T>(r: Result<T, OracleError>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) if e.is_inconclusive() => None,
        Err(e) => panic!("oracle error: {e}"),
    }
}

fn point(r: Ring) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-4i64..=4, 1i64..=3), r.nvars()).prop_map(|v| {
        v.into_iter()
            .map(|(a, b)| Rational::new(a.into(), b.into()))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(p in poly(ring(1, 2), 2, 4), q in poly(ring(1, 2), 2, 4), s in poly(ring(1, 2), 2, 4)) {
        prop_assert_eq!(&(&p + &q) + &s, &p + &(&q + &s));
        prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
        prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert!((&p - &p).is_zero());
        prop_assert!((&p * &q).terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn multiply_then_divide(p in poly(ring(1, 2), 2, 4), q in poly(ring(1, 2), 2, 3)) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_divide(&q).unwrap(), Some(p));
    }

    #[test]
    fn bidegrees_add(
        ((a1, b1, a2, b2), p, q) in (0u32..3, 0u32..3, 0u32..3, 0u32..3).prop_flat_map(|(a1, b1, a2, b2)| {
            (Just((a1, b1, a2, b2)), bihomogeneous(ring(2, 2), a1, b1, 4), bihomogeneous(ring(2, 2), a2, b2, 4))
        })
    ) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assert_eq!((&p * &q).bidegree().unwrap(), BiDegree::new(a1 + a2, b1 + b2));
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(ring(1, 2), 2, 4), q in poly(ring(1, 2), 2, 4), x in point(ring(1, 2))) {
        let pv = p.evaluate(&x).unwrap();
        let qv = q.evaluate(&x).unwrap();
        prop_assert_eq!((&p * &q).evaluate(&x).unwrap(), &pv * &qv);
        prop_assert_eq!((&p + &q).evaluate(&x).unwrap(), pv + qv);
    }

    #[test]
    fn render_then_parse(p in poly(ring(2, 3), 3, 6)) {
        let back = parse_expression(&p.to_string(), &ring(2, 3)).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn parser_never_panics(text in "[x0-9s+\\-*/^() .a]{0,24}") {
        match parse_expression(&text, &ring(2, 3)) {
            Ok(_) => {}
            Err(e) => {
                prop_assert!(e.position >= 1 && e.position <= text.chars().count() + 1, "{e} in {text:?}");
                prop_assert!(!e.to_string().is_empty());
            }
        }
    }

    #[test]
    fn arrangement_file_round_trip(a in arrangement(3, 3, 3)) {
        let doc = serde_json::to_string(&ArrangementFile::from_arrangement(&a)).unwrap();
        prop_assert_eq!(parse_arrangement(&doc).unwrap(), a);
    }

    #[test]
    fn euler_kernel(a in arrangement(3, 4, 3)) {
        let q = a.build_q();
        let v = a.euler_kernel_vector();
        prop_assert!(q.mul_vector(&v).unwrap().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn qs_entries_are_graded(a in arrangement(3, 4, 3), del in 1usize..=4) {
        prop_assume!(del <= a.m());
        let qs = a.build_qs_del(del).unwrap();
        prop_assert!(a.grading_consistent(&qs));
    }

    #[test]
    fn q_has_full_rank_off_the_arrangement(a in arrangement(3, 4, 3), x in prop::collection::vec(-5i64..=5, 3)) {
        let s = vec![rat(0); a.m()];
        let xr: Vec<Rational> = x.into_iter().map(rat).collect();
        let p = likelihood::arrangement::make_point(&a, &s, &xr);
        prop_assume!(a.polynomials().iter().all(|f| !f.evaluate(&p).unwrap().is_zero()));
        prop_assert_eq!(a.build_q().rank_at(&p).unwrap(), a.m());
    }

    #[test]
    fn bareiss_matches_cofactors(m in (1usize..=5).prop_flat_map(|k| small_matrix(ring(0, 2), k))) {
        prop_assert_eq!(bareiss_det(&m).unwrap(), common::cofactor_det(&m));
    }

    #[test]
    fn expansion_minors_match_bareiss(m in poly_matrix(ring(0, 2), 3, 5)) {
        let sets: Vec<Vec<usize>> = (0..5).flat_map(|a| (a + 1..5).flat_map(move |b| (b + 1..5).map(move |c| vec![a, b, c]))).collect();
        for (cols, d) in sets.iter().zip(minors(&m, &sets).unwrap()) {
            prop_assert_eq!(d, bareiss_det(&m.select_columns(cols)).unwrap());
        }
    }

    #[test]
    fn generators_are_bihomogeneous(a in arrangement(3, 3, 2)) {
        let g = match likelihood_generators(&a, &GeneratorOptions::default()) {
            Err(DetgenError::DegeneratePivot(_)) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert_eq!(g.generators[0].bidegree, BiDegree::new(1, 0));
        for gen in &g.generators {
            prop_assert_eq!(gen.polynomial.bidegree().unwrap(), gen.bidegree);
            prop_assert_eq!(gen.bidegree.s_deg, 1);
        }
    }

    #[test]
    fn census_total_formula(n in 2usize..=5, degrees in prop::collection::vec(1u32..=4, 1..=7)) {
        let c = generator_census(n, &degrees).unwrap();
        let m = degrees.len() as u64;
        let ell = c.ell as u64;
        let expected = binomial(m + n as u64 - 1 - ell, n as u64 - 2).unwrap() + 1;
        prop_assert_eq!(c.total, expected);
        prop_assert_eq!(c.total, c.minor_count() + 1);
    }

    #[test]
    fn series_matches_brute_force(n in 2usize..=4, degrees in prop::collection::vec(1u32..=6, 1..=6), extra in 0usize..4) {
        let order = n - 1 + extra;
        prop_assert_eq!(series_coefficients(n, &degrees, order).unwrap(), common::brute_series(n, &degrees, order));
        let c = multidegree_coeffs(n, &degrees).unwrap();
        prop_assert_eq!(c.coefficients()[0], 1);
    }

    #[test]
    fn plane_closed_forms(degrees in prop::collection::vec(1u32..=9, 1..=8)) {
        let d: Vec<i128> = degrees.iter().map(|&v| v as i128).collect();
        let sum: i128 = d.iter().sum();
        let pairs: i128 = (0..d.len()).flat_map(|i| (i..d.len()).map(move |j| (i, j))).map(|(i, j)| d[i] * d[j]).sum();
        let c = multidegree_coeffs(3, &degrees).unwrap();
        prop_assert_eq!(c.coefficients()[1], sum - 3);
        prop_assert_eq!(c.coefficients()[2], pairs - 3 * sum + 3);
        prop_assert_eq!(ml_degree(2, &degrees).unwrap(), sum - 2);
    }

    #[test]
    fn plane_ledger_totals(degrees in prop::collection::vec(1u32..=6, 1..=6)) {
        let d: Vec<u128> = degrees.iter().map(|&v| v as u128).collect();
        let m = d.len();
        let l = euler_disc_ledger(3, &degrees).unwrap();
        for i in 0..m {
            let mut slot = 3 * (d[i] - 1) * (d[i] - 1);
            for j in (0..m).filter(|&j| j != i) {
                slot += d[j] * d[j] + 2 * d[i] * d[j] - 3 * d[j];
                for k in (j + 1..m).filter(|&k| k != i) {
                    slot += d[j] * d[k];
                }
            }
            prop_assert_eq!(l.totals()[i], slot);
        }
        prop_assert!(l.is_complete());
        let expected = m + m * m.saturating_sub(1) / 2 + if m >= 3 { m * (m - 1) * (m - 2) / 6 } else { 0 };
        prop_assert_eq!(l.factors().len(), expected);
    }

    #[test]
    fn hyperplane_verdict_matches_maximal_minors(c in (3usize..=5, 2usize..=3).prop_flat_map(|(m, n)| rat_matrix(m, n))) {
        let (m, n) = (c.len(), c[0].len());
        let ea = hyperplane_ea(&c).unwrap();
        let verdict = snc_check_hyperplanes(&c).unwrap();
        prop_assert_eq!(verdict.is_snc(), !ea.euler_value().is_zero());
        if !ea.value().is_zero() {
            prop_assert!(verdict.is_snc());
        }
        let total: u128 = (1..=n).map(|k| k as u128 * binomial(m as u64, k as u64).unwrap() * binomial(n as u64, k as u64).unwrap()).sum();
        prop_assert_eq!(ea.degree(), total);
        if let HyperplaneVerdict::NotSnc { witness } = verdict {
            let rows: RatMatrix = witness.iter().map(|&i| c[i - 1].clone()).collect();
            prop_assert!(rank(&rows) < witness.len());
        }
    }

    #[test]
    fn rendering_is_stable(a in arrangement(3, 3, 2)) {
        prop_assert_eq!(render_report(&a), render_report(&a.clone()));
        let v = render_report(&a);
        prop_assert!(v.ends_with('\n'));
    }

    #[test]
    fn integer_json_round_trip(v in any::<u128>()) {
        let j = integer_json(v);
        let back: u128 = match &j {
            serde_json::Value::Number(n) => n.as_u64().unwrap() as u128,
            serde_json::Value::String(s) => s.parse().unwrap(),
            _ => unreachable!(),
        };
        prop_assert_eq!(back, v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn euler_identity((d, f) in (0u32..=4).prop_flat_map(|d| (Just(d), homogeneous(ring(2, 3), d)))) {
        let r = ring(2, 3);
        let mut lhs = Polynomial::zero(r);
        for j in 1..=3 {
            lhs = &lhs + &(&Polynomial::x(r, j) * &f.partial_derivative(r.x(j)));
        }
        prop_assert_eq!(lhs, f.scale(&rat(d as i64)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn circuits_are_annihilated(
        (m, chosen) in (1usize..=3, 1usize..=2).prop_flat_map(|(g, extra)| {
            (poly_matrix(ring(1, 2), g, g + extra), subsequence((0..g + extra).collect::<Vec<_>>(), g + 1))
        })
    ) {
        let v = circuit(&m, &chosen).unwrap();
        let product = m.select_columns(&chosen).mul_vector(&v).unwrap();
        prop_assert!(product.iter().all(Polynomial::is_zero));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn derivations_are_logarithmic(a in arrangement(3, 3, 2)) {
        let ders = match derivation_generators(&a, &GeneratorOptions::default()) {
            Err(DetgenError::DegeneratePivot(_)) => return Ok(()),
            other => other.unwrap(),
        };
        for d in &ders {
            for f in a.polynomials() {
                let theta_f = d.derivation.apply(f);
                prop_assert!(theta_f.exact_divide(f).unwrap().is_some(), "{f} does not divide {theta_f}");
            }
        }
    }

    #[test]
    fn laplace_split_identity(a in arrangement(3, 3, 2)) {
        let opts = GeneratorOptions::default();
        let sels = match generator_selectors(&a, &opts) {
            Err(DetgenError::DegeneratePivot(_)) => return Ok(()),
            other => other.unwrap(),
        };
        for sel in &sels {
            let split = laplace_split(&a, sel, 1).unwrap();
            prop_assert!(split_identity_holds(&a, &split, 1).unwrap());
        }
    }

    #[test]
    fn minors_lie_in_the_saturation_for_binary_forms(a in arrangement(2, 3, 2)) {
        let Some(gb) = conclusive(likelihood_ideal_by_saturation(&a, &small_budget())) else { return Ok(()) };
        let q = a.build_qs_del1();
        let sets: Vec<Vec<usize>> = likelihood::detgen::enumerate_minors(&a, 1).unwrap().iter().map(|s| s.zero_based()).collect();
        for m in minors(&q, &sets).unwrap() {
            prop_assert!(gb.normal_form(&m).unwrap().is_zero());
        }
    }

    #[test]
    fn groebner_bases_are_reduced(gens in prop::collection::vec(poly(ring(0, 3), 2, 3), 1..=3)) {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let Some(gb) = conclusive(buchberger(ring(0, 3), &gens, MonomialOrder::Grevlex, &small_budget())) else { return Ok(()) };
        check_basis(&gb, &gens)?;
    }

    #[test]
    fn saturation_is_ascending_and_idempotent(gens in prop::collection::vec(poly(ring(0, 3), 2, 3), 1..=2), h in poly(ring(0, 3), 1, 2)) {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty() && !h.is_zero());
        let r = ring(0, 3);
        let opts = small_budget();
        let Some(once) = conclusive(saturate(r, &gens, &h, &opts)) else { return Ok(()) };
        for g in &gens {
            prop_assert!(once.contains(g).unwrap());
        }
        let Some(twice) = conclusive(saturate(r, once.generators(), &h, &opts)) else { return Ok(()) };
        prop_assert_eq!(once.generators(), twice.generators());
    }
}

fn check_basis(gb: &GroebnerBasis, gens: &[Polynomial]) -> Result<(), TestCaseError> {
    prop_assert!(gb.is_groebner().unwrap());
    prop_assert!(gb.is_reduced());
    for g in gens {
        prop_assert!(gb.normal_form(g).unwrap().is_zero());
    }
    for g in gb.generators() {
        let nf = gb.normal_form(g).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf);
    }
    Ok(())
}
