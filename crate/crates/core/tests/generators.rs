mod common;

use std::collections::BTreeMap;

use likelihood::detgen::{
    bareiss_det, derivation_generators, enumerate_minors, generator_census, laplace_split,
    likelihood_generators, split_identity_holds, GeneratorOptions, GeneratorStatus, Provenance,
    SncKnowledge,
};
use likelihood::invariants::multidegree_coeffs;
use likelihood::poly::BiDegree;

fn histogram(name: &str) -> BTreeMap<(u32, u32), usize> {
    let a = common::fixture(name);
    let g = likelihood_generators(&a, &GeneratorOptions::default()).unwrap();
    g.histogram()
        .into_iter()
        .map(|(b, c)| ((b.s_deg, b.x_deg), c))
        .collect()
}

#[test]
fn line_and_three_conics_bidegrees() {
    let expected = BTreeMap::from([((1, 0), 1), ((1, 4), 3), ((1, 5), 2)]);
    assert_eq!(histogram("line_three_conics"), expected);
}

#[test]
fn five_quadrics_materialize_all_minors() {
    let a = common::fixture("five_quadrics");
    let g = likelihood_generators(&a, &GeneratorOptions::default()).unwrap();
    assert_eq!(g.len(), 29);
    let h = g.histogram();
    assert_eq!(h[&BiDegree::new(1, 8)], 6);
    assert_eq!(h[&BiDegree::new(1, 7)], 16);
    assert_eq!(h[&BiDegree::new(1, 6)], 6);
    assert_eq!(h[&BiDegree::new(1, 0)], 1);
    assert!(g.matches_census(&generator_census(4, a.degrees()).unwrap()));
}

#[test]
fn census_agrees_with_generate_on_snc_fixtures() {
    for name in common::SNC_FIXTURES {
        let a = common::fixture(name);
        let g = likelihood_generators(&a, &GeneratorOptions::default()).unwrap();
        let c = generator_census(a.n(), a.degrees()).unwrap();
        assert!(g.matches_census(&c), "{name}");
        assert_eq!(g.len() as u128, c.total, "{name}");
    }
}

#[test]
fn generic_lines_give_minors_of_degree_m_minus_n() {
    let expected = BTreeMap::from([((1, 0), 1), ((1, 1), 3)]);
    assert_eq!(histogram("four_lines"), expected);
}

#[test]
fn square_case_has_the_predicted_x_degree() {
    let a = common::fixture("n2_112");
    let q = a.build_qs_del1();
    assert!(q.is_square());
    let det = bareiss_det(&q).unwrap();
    let c1 = multidegree_coeffs(2, a.degrees()).unwrap().coefficients()[1];
    assert_eq!(det.bidegree().unwrap().x_deg as i128, c1);
    assert_eq!(c1, 2);
}

#[test]
fn bareiss_agrees_with_cofactor_expansion_on_fixture_minors() {
    for name in ["n2_112", "four_lines", "three_conics", "line_three_conics"] {
        let a = common::fixture(name);
        let q = a.build_qs_del1();
        for sel in enumerate_minors(&a, 1).unwrap() {
            let sub = q.select_columns(&sel.zero_based());
            assert_eq!(
                bareiss_det(&sub).unwrap(),
                common::cofactor_det(&sub),
                "{name} {:?}",
                sel.columns()
            );
        }
    }
}

#[test]
fn every_deleted_column_gives_the_same_counts() {
    let a = common::fixture("three_conics");
    let base = likelihood_generators(&a, &GeneratorOptions::default())
        .unwrap()
        .histogram();
    for i in 2..=a.m() {
        let opts = GeneratorOptions {
            delete_column: i,
            ..Default::default()
        };
        assert_eq!(
            likelihood_generators(&a, &opts).unwrap().histogram(),
            base,
            "column {i}"
        );
    }
}

#[test]
fn status_follows_snc_knowledge() {
    let a = common::fixture("line_three_conics");
    let known = GeneratorOptions {
        snc: SncKnowledge::Snc,
        ..Default::default()
    };
    let g = likelihood_generators(&a, &known).unwrap();
    assert_eq!(g.status, Some(GeneratorStatus::Minimal));
    assert!(g.warnings.is_empty());
    let g = likelihood_generators(&a, &GeneratorOptions::default()).unwrap();
    assert_eq!(g.status, Some(GeneratorStatus::SncUnchecked));
}

#[test]
fn provenance_is_euler_then_lifted_minors() {
    let a = common::fixture("line_three_conics");
    let g = likelihood_generators(&a, &GeneratorOptions::default()).unwrap();
    assert_eq!(g.generators[0].provenance, Provenance::Euler);
    let q = a.build_qs_del1();
    for gen in &g.generators[1..] {
        let Provenance::Minor(sel) = &gen.provenance else {
            panic!("expected a minor")
        };
        assert_eq!(sel.columns().len(), q.rows());
        // the lifted minor of the full matrix is the generator up to a unit
        let full = bareiss_det(&q.select_columns(&sel.zero_based())).unwrap();
        assert_eq!(full.primitive(), gen.polynomial, "{:?}", sel.columns());
    }
}

#[test]
fn derivations_of_the_line_and_conics_are_tangent() {
    let a = common::fixture("line_three_conics");
    let opts = GeneratorOptions::default();
    let ders = derivation_generators(&a, &opts).unwrap();
    assert_eq!(ders.len(), 6);
    for d in &ders {
        assert!(d.is_tangent(), "{:?}", d.provenance);
        let q = d.quotients.as_ref().unwrap();
        for (i, f) in a.polynomials().iter().enumerate() {
            assert_eq!(d.derivation.apply(f), &q[i] * f);
        }
    }
    for d in &ders[1..] {
        let Provenance::Minor(sel) = &d.provenance else {
            unreachable!()
        };
        let split = laplace_split(&a, sel, 1).unwrap();
        assert!(split_identity_holds(&a, &split, 1).unwrap());
    }
}
