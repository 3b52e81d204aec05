use holoform::error::HoloformError;
use holoform::form::Form;
use holoform::graded::{GradedMonomial, GradedPolynomial, Universe};
use holoform::parse::{parse_form, parse_graded, parse_map, parse_polynomial};
use holoform::poly::Polynomial;
use holoform::scalar::Scalar;
use proptest::prelude::*;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(a, b, c, d)| Scalar::from_ratios(a, b, c, d))
}

fn poly_strategy(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, n), scalar_strategy()), 0..4)
        .prop_map(move |terms| Polynomial::from_terms(n, terms))
}

fn form_strategy(n: usize) -> impl Strategy<Value = Form> {
    (0..=n).prop_flat_map(move |p| {
        prop::collection::vec((prop::sample::subsequence((0..n).collect::<Vec<_>>(), p), poly_strategy(n)), 1..4)
            .prop_map(move |terms| {
                terms
                    .into_iter()
                    .fold(Form::zero(n, p), |acc, (idx, f)| acc.add(&Form::monomial(n, &idx, f)))
            })
    })
}

proptest! {
    #[test]
    fn forms_round_trip(w in form_strategy(3)) {
        let text = w.to_string();
        let back = parse_form(&text, Some(3)).unwrap();
        if w.is_zero() {
            prop_assert!(back.is_zero());
        } else {
            prop_assert_eq!(back, w, "{}", text);
        }
    }

    #[test]
    fn polynomials_round_trip(f in poly_strategy(2)) {
        prop_assert_eq!(parse_polynomial(&f.to_string(), Some(2)).unwrap(), f);
    }

    #[test]
    fn scalars_round_trip(c in scalar_strategy()) {
        let w = Form::constant(1, c.clone());
        prop_assert_eq!(parse_form(&c.to_string(), Some(1)).unwrap(), w);
    }

    #[test]
    fn graded_round_trip(
        terms in prop::collection::vec((prop::collection::vec(0u32..3, 4), scalar_strategy()), 0..5)
    ) {
        let u = Universe::for_sources(&[1, 2]).unwrap();
        let mut p = GradedPolynomial::zero(u.clone());
        for (mut e, c) in terms {
            e[0] = e[0].min(1);
            e[3] = e[3].min(1);
            p = p.try_add(&GradedPolynomial::monomial(u.clone(), GradedMonomial(e), c)).unwrap();
        }
        let text = p.to_string();
        prop_assert_eq!(parse_graded(&text, u).unwrap(), p, "{}", text);
    }
}

#[test]
fn documented_examples() {
    assert_eq!(
        parse_form("z1*dz2", None).unwrap(),
        Form::monomial(2, &[1], Polynomial::var(2, 0))
    );
    let w = parse_form("dz1 /\\ dz2 + (1+i)*dz1 /\\ dz3", None).unwrap();
    assert_eq!(w.num_terms(), 2);
    assert_eq!(w.degree(), 2);
    assert_eq!(w.coefficient(&[0, 2]), Polynomial::constant(3, Scalar::gaussian(1, 1)));
    assert!(parse_form("dz1 /\\ dz1", None).unwrap().is_zero());
}

#[test]
fn whitespace_is_insignificant() {
    assert_eq!(
        parse_form("  z1 *dz2+dz1", None).unwrap(),
        parse_form("z1*dz2 + dz1", None).unwrap()
    );
}

#[test]
fn errors_carry_positions() {
    match parse_form("dz1 + dz1 /\\ dz2", None) {
        Err(HoloformError::Parse { pos, msg }) => {
            assert_eq!(pos, 4);
            assert!(msg.contains("degrees 1 and 2"), "{msg}");
        }
        other => panic!("{other:?}"),
    }
    match parse_form("z1 + ", None) {
        Err(HoloformError::Parse { pos, .. }) => assert_eq!(pos, 5),
        other => panic!("{other:?}"),
    }
}

#[test]
fn dimension_override_and_inference() {
    assert_eq!(parse_form("dz2", None).unwrap().dim(), 2);
    assert_eq!(parse_form("dz2", Some(5)).unwrap().dim(), 5);
    assert_eq!(parse_form("3", None).unwrap().dim(), 1);
}

#[test]
fn caret_is_power_before_integers_and_wedge_otherwise() {
    assert_eq!(
        parse_form("z1^2*dz1", None).unwrap(),
        Form::monomial(1, &[0], Polynomial::var(1, 0).pow(2))
    );
    assert_eq!(parse_form("dz1^dz2", None).unwrap(), Form::basis(2, &[0, 1]));
    let u = Universe::for_sources(&[2]).unwrap();
    let p = parse_graded("u^2", u.clone()).unwrap();
    assert_eq!(p, GradedPolynomial::monomial(u, GradedMonomial(vec![2, 0]), Scalar::from_int(1)));
}

#[test]
fn maps_parse() {
    let phi = parse_map("(z1 + z2^2, 2*z2)").unwrap();
    assert_eq!(phi.dim(), 2);
    let w = parse_form("z1*dz2", None).unwrap();
    let pulled = w.pullback(&phi).unwrap();
    assert_eq!(pulled, parse_form("2*z1*dz2 + 2*z2^2*dz2", None).unwrap());
}
