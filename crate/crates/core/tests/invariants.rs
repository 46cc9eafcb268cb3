mod common;

use likelihood::arrangement::{make_point, synthesize, Arrangement};
use likelihood::groebner::OracleOptions;
use likelihood::invariants::{
    euler_disc_ledger, hyperplane_ea, ml_degree, snc_check, snc_check_hyperplanes,
    HyperplaneVerdict, Irreducibility, SncVerdict,
};
use likelihood::poly::rat;

fn verdict(name: &str) -> SncVerdict {
    snc_check(&common::fixture(name), &OracleOptions::default())
        .unwrap()
        .verdict
}

#[test]
fn snc_fixtures_are_certified() {
    for name in common::SNC_FIXTURES {
        assert_eq!(verdict(name), SncVerdict::Snc, "{name}");
    }
}

#[test]
fn tangent_conics_fail_pair_smoothness() {
    let report = snc_check(
        &common::fixture("tangent_conics"),
        &OracleOptions::default(),
    )
    .unwrap();
    assert_eq!(
        report.verdict,
        SncVerdict::NotSnc {
            witness: vec![1, 2],
            reason: "singular intersection".into()
        }
    );
    assert_eq!(report.to_json()["witness"], serde_json::json!([1, 2]));
}

#[test]
fn concurrent_lines_fail_emptiness() {
    let SncVerdict::NotSnc { witness, reason } = verdict("concurrent_lines") else {
        panic!("expected a failure")
    };
    assert_eq!(witness, vec![1, 2, 3]);
    assert_eq!(reason, "common zero");
}

#[test]
fn hyperplane_test_agrees_with_the_oracle() {
    for name in ["four_lines", "concurrent_lines"] {
        let a = common::fixture(name);
        let c = a.hyperplane_matrix().unwrap();
        let fast = snc_check_hyperplanes(&c).unwrap();
        let slow = snc_check(&a, &OracleOptions::default()).unwrap().verdict;
        match (fast, slow) {
            (HyperplaneVerdict::Snc, SncVerdict::Snc) => {}
            (HyperplaneVerdict::NotSnc { witness: w1 }, SncVerdict::NotSnc { witness: w2, .. }) => {
                assert_eq!(w1, w2, "{name}")
            }
            other => panic!("{name}: {other:?}"),
        }
    }
}

#[test]
fn smooth_plane_curves_are_irreducible() {
    let report = snc_check(
        &common::fixture("line_three_conics"),
        &OracleOptions::default(),
    )
    .unwrap();
    let kinds: Vec<Irreducibility> = report.polynomials.iter().map(|p| p.irreducible).collect();
    assert_eq!(
        kinds,
        [
            Irreducibility::Linear,
            Irreducibility::Smooth,
            Irreducibility::Smooth,
            Irreducibility::Smooth
        ]
    );
    assert!(report.warnings.is_empty());
}

#[test]
fn binary_quadric_carries_a_caveat() {
    let report = snc_check(&common::fixture("n2_112"), &OracleOptions::default()).unwrap();
    assert_eq!(
        report.polynomials[2].irreducible,
        Irreducibility::SplitsOverC
    );
    assert_eq!(report.warnings.len(), 1);
}

#[test]
fn double_conic_is_not_squarefree() {
    let ring = likelihood::poly::Ring::new(0, 3).unwrap();
    let p = likelihood::expr::parse_expression("(x1^2 + x2^2 - x3^2)^2", &ring).unwrap();
    let a = Arrangement::new(3, vec![p]).unwrap();
    let report = snc_check(&a, &OracleOptions::default()).unwrap();
    assert_eq!(
        report.polynomials[0].squarefree,
        likelihood::invariants::Check::Failed
    );
    assert!(matches!(report.verdict, SncVerdict::NotSnc { .. }));
}

#[test]
fn fixture_ml_degrees() {
    let a = common::fixture("line_three_conics");
    assert_eq!(ml_degree(a.n(), a.degrees()).unwrap(), 13);
    let a = common::fixture("five_quadrics");
    assert_eq!(ml_degree(a.n(), a.degrees()).unwrap(), 96);
}

#[test]
fn ledger_of_the_line_and_conics_fixture() {
    let a = common::fixture("line_three_conics");
    let l = euler_disc_ledger(a.n(), a.degrees()).unwrap();
    assert_eq!(l.totals(), &[18, 25, 25, 25]);
    assert_eq!(l.nontrivial_factor_count(), 13);
}

#[test]
fn four_lines_determinant() {
    let c = common::fixture("four_lines").hyperplane_matrix().unwrap();
    let ea = hyperplane_ea(&c).unwrap();
    assert_eq!((ea.euler_degree(), ea.degree()), (12, 60));
}

#[test]
fn rank_at_planted_points() {
    // one point on each pair and on a single curve
    let planted = vec![vec![1, 2], vec![2, 3], vec![1, 3], vec![3]];
    let s = synthesize(3, &[1, 2, 2], &planted, 1).unwrap();
    let a = &s.arrangement;
    assert_eq!(
        snc_check(a, &OracleOptions::default()).unwrap().verdict,
        SncVerdict::Snc
    );
    let q = a.build_q();
    let s_zero = vec![rat(0); a.m()];
    for p in &s.points {
        let point = make_point(a, &s_zero, &p.coordinates);
        assert_eq!(q.rank_at(&point).unwrap(), a.m(), "Q at {:?}", p.subset);
        let rows: Vec<usize> = p.subset.iter().map(|i| i - 1).collect();
        let cols: Vec<usize> = (0..a.n()).collect();
        let jac = a.jacobian().submatrix(&rows, &cols);
        assert_eq!(
            jac.rank_at(&point).unwrap(),
            p.subset.len().min(a.n()),
            "J at {:?}",
            p.subset
        );
    }
}
