mod common;

use holoform::classify::{enumerate_basis, OperatorBasis, OperatorSignature};
use holoform::form::Form;
use holoform::graded::GradedPolynomial;
use holoform::jet::random_automorphism;
use holoform::poly::Polynomial;
use holoform::scalar::Scalar;
use holoform::verify::*;

/// Number of `(case, p, s)` with `q ≤ max_q`, counted directly from the
/// degree formulas.
fn expected_case_count(max_q: usize) -> usize {
    let mut count = 0;
    for p in 1..=max_q {
        for s in 0..=max_q {
            let qs = if p % 2 == 1 {
                [s * (p + 1), p + s * (p + 1)]
            } else {
                [s * p, s * p + p + 1]
            };
            count += qs.iter().filter(|&&q| q <= max_q).count();
        }
    }
    count
}

#[test]
fn every_witness_case_evaluates_to_the_volume_form() {
    let cases = witness_cases(6);
    assert_eq!(cases.len(), expected_case_count(6));
    for c in &cases {
        let o = check_witness(c).unwrap();
        assert!(o.passed, "{c}: expected {}, got {}", o.expected, o.actual);
    }
    let report = witness_suite(6);
    assert!(report.passed);
    assert_eq!(report.checks.len(), cases.len());
}

#[test]
fn witness_values_by_hand() {
    // v² on z1 dz2 + z3 dz4 is (dz1∧dz2 + dz3∧dz4)² = 2·dz1∧dz2∧dz3∧dz4.
    let c = WitnessCase::new(WitnessKind::OddPEvenQ, 1, 2, 4).unwrap();
    let w = witness_form(&c);
    let expected_w = Form::monomial(4, &[1], Polynomial::var(4, 0))
        .add(&Form::monomial(4, &[3], Polynomial::var(4, 2)));
    assert_eq!(w, expected_w);
    let o = check_witness(&c).unwrap();
    assert_eq!(o.actual, "2*dz1 /\\ dz2 /\\ dz3 /\\ dz4");

    // u·v on dz1 + z2 dz3: (dz1 + z2 dz3)∧(dz2∧dz3) = dz1∧dz2∧dz3.
    let c = WitnessCase::new(WitnessKind::OddPOddQ, 1, 1, 3).unwrap();
    assert_eq!(check_witness(&c).unwrap().actual, "dz1 /\\ dz2 /\\ dz3");
}

#[test]
fn wrong_monomials_do_not_pass_a_witness() {
    let c = WitnessCase::new(WitnessKind::EvenPOddQ, 2, 1, 5).unwrap();
    let w = witness_form(&c);
    let u = c.signature().universe();
    let wrong = GradedPolynomial::var(u.clone(), "u").unwrap();
    let value = holoform::classify::apply_operator(&wrong, &[w]).unwrap();
    assert_ne!(value.degree(), c.q());
}

#[test]
fn independence_certificates_reach_full_rank() {
    for (p, q, n) in [(vec![1], 2, 3), (vec![1, 1], 2, 3), (vec![2, 1], 3, 4), (vec![1, 2], 4, 4), (vec![2, 2], 4, 4)] {
        let basis = enumerate_basis(&OperatorSignature::new(p.clone(), q, n).unwrap());
        let cert = independence_certificate(&basis, basis.len() + 2, 11).unwrap();
        assert!(cert.passed, "{p:?} q={q} n={n}: rank {} of {}", cert.rank, basis.len());
        assert!(cert.trials <= basis.len() + 2);
    }
}

#[test]
fn dependent_families_are_detected() {
    let sig = OperatorSignature::new(vec![1, 1], 2, 3).unwrap();
    let mut basis = enumerate_basis(&sig);
    let dup = basis.monomials[0].clone();
    basis.monomials.push(dup);
    let cert = independence_certificate(&basis, 6, 3).unwrap();
    assert!(!cert.passed);
    assert_eq!(cert.rank, 3);
}

#[test]
fn empty_basis_is_trivially_independent() {
    let sig = OperatorSignature::new(vec![2], 1, 3).unwrap();
    let basis: OperatorBasis = enumerate_basis(&sig);
    let cert = independence_certificate(&basis, 2, 0).unwrap();
    assert!(cert.passed);
    assert_eq!(cert.rank, 0);
}

#[test]
fn homogeneity_and_naturality_on_examples() {
    let sig = OperatorSignature::new(vec![1, 1], 2, 3).unwrap();
    let basis = enumerate_basis(&sig);
    let mut rng = common::rng(9);
    let p = random_operator(&basis, &mut rng);
    let forms = random_forms(&sig, &mut rng);
    for l in homogeneity_lambdas() {
        assert!(homogeneity_certificate(&p, &forms, &l).unwrap().passed());
    }
    assert!(homogeneity_certificate(&p, &forms, &Scalar::from_int(0)).is_err());
    let phi = random_automorphism(3, 2, 4);
    assert!(naturality_check(&p, &forms, &phi.map).unwrap());
}

#[test]
fn suites_are_deterministic() {
    let a = serde_json::to_string(&naturality_suite(5, 6)).unwrap();
    let b = serde_json::to_string(&naturality_suite(5, 6)).unwrap();
    assert_eq!(a, b);
    let a = serde_json::to_string(&homogeneity_suite(5, 2)).unwrap();
    let b = serde_json::to_string(&homogeneity_suite(5, 2)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn small_suites_pass() {
    assert!(naturality_suite(DEFAULT_SEED, 10).passed);
    assert!(homogeneity_suite(DEFAULT_SEED, 3).passed);
}
