mod common;

use std::sync::Arc;

use holoform::form::Form;
use holoform::graded::{monomial_product, GradedMonomial, GradedPolynomial, GradedVariable, Universe};
use holoform::jet::small_gaussian;
use holoform::scalar::Scalar;
use proptest::prelude::*;
use rand::Rng;

fn universe(degrees: &[usize]) -> Arc<Universe> {
    Universe::new(
        degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| GradedVariable {
                name: format!("x{}", i + 1),
                degree: d,
            })
            .collect(),
    )
    .unwrap()
}

/// Independent sign oracle: spell out both monomials as words, concatenate
/// and bubble-sort, with one sign per swap of two odd letters.
fn bubble_product(degrees: &[usize], a: &[u32], b: &[u32]) -> Option<(Vec<u32>, i64)> {
    let mut word: Vec<usize> = Vec::new();
    for m in [a, b] {
        for (i, &k) in m.iter().enumerate() {
            word.extend(std::iter::repeat(i).take(k as usize));
        }
    }
    let mut sign = 1;
    for end in (1..word.len()).rev() {
        for j in 0..end {
            if word[j] > word[j + 1] {
                if degrees[word[j]] % 2 == 1 && degrees[word[j + 1]] % 2 == 1 {
                    sign = -sign;
                }
                word.swap(j, j + 1);
            }
        }
    }
    let mut e = vec![0u32; degrees.len()];
    for i in word {
        e[i] += 1;
    }
    if e.iter().zip(degrees).any(|(&k, &d)| d % 2 == 1 && k > 1) {
        return None;
    }
    Some((e, sign))
}

fn admissible(degrees: &[usize]) -> impl Strategy<Value = Vec<u32>> {
    let degrees = degrees.to_vec();
    prop::collection::vec(0u32..3, degrees.len()).prop_map(move |mut e| {
        for (k, d) in e.iter_mut().zip(&degrees) {
            if d % 2 == 1 {
                *k = (*k).min(1);
            }
        }
        e
    })
}

proptest! {
    #[test]
    fn product_sign_matches_bubble_sort(
        (degrees, a, b) in prop::collection::vec(1usize..4, 1..5)
            .prop_flat_map(|d| (Just(d.clone()), admissible(&d), admissible(&d)))
    ) {
        let u = universe(&degrees);
        let got = monomial_product(&u, &GradedMonomial(a.clone()), &GradedMonomial(b.clone()))
            .map(|(m, s)| (m.0, s));
        prop_assert_eq!(got, bubble_product(&degrees, &a, &b));
    }
}

fn random_homogeneous(u: &Arc<Universe>, degree: usize, rng: &mut impl Rng) -> GradedPolynomial {
    let degrees: Vec<usize> = u.vars().iter().map(|v| v.degree).collect();
    let mut p = GradedPolynomial::zero(u.clone());
    let mut stack = vec![(0usize, 0usize, Vec::new())];
    while let Some((i, deg, e)) = stack.pop() {
        if i == degrees.len() {
            if deg == degree && rng.gen_bool(0.7) {
                let m = GradedPolynomial::monomial(u.clone(), GradedMonomial(e), small_gaussian(rng));
                p = p.try_add(&m).unwrap();
            }
            continue;
        }
        let cap = if degrees[i] % 2 == 1 { 1 } else { 3 };
        for k in 0..=cap {
            if deg + k * degrees[i] <= degree {
                let mut e2 = e.clone();
                e2.push(k as u32);
                stack.push((i + 1, deg + k * degrees[i], e2));
            }
        }
    }
    p
}

#[test]
fn graded_commutation_rule() {
    let u = universe(&[1, 2, 3]);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let x = GradedPolynomial::var(u.clone(), &format!("x{}", i + 1)).unwrap();
        let y = GradedPolynomial::var(u.clone(), &format!("x{}", j + 1)).unwrap();
        let d = u.vars()[i].degree * u.vars()[j].degree;
        assert_eq!(x.gmul(&y).unwrap(), y.gmul(&x).unwrap().scale(&common::sign(d)));
    }
    let x3 = GradedPolynomial::var(u.clone(), "x3").unwrap();
    assert!(x3.gmul(&x3).unwrap().is_zero());
}

#[test]
fn associativity_and_evaluation_morphism() {
    let u = universe(&[1, 2, 1]);
    for seed in 0..100 {
        let mut rng = common::rng(seed);
        let n = 4;
        let (da, db, dc) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=2));
        let a = random_homogeneous(&u, da, &mut rng);
        let b = random_homogeneous(&u, db, &mut rng);
        let c = random_homogeneous(&u, dc, &mut rng);
        let left = a.gmul(&b).unwrap().gmul(&c).unwrap();
        let right = a.gmul(&b.gmul(&c).unwrap()).unwrap();
        assert_eq!(left, right, "seed {seed}");

        let assignment: Vec<Form> = u.vars().iter().map(|v| common::sparse_form(n, v.degree, &mut rng)).collect();
        let ab = a.gmul(&b).unwrap().evaluate_in_degree(&assignment, da + db).unwrap();
        let ea = a.evaluate_in_degree(&assignment, da).unwrap();
        let eb = b.evaluate_in_degree(&assignment, db).unwrap();
        assert_eq!(ab, ea.wedge(&eb).unwrap(), "seed {seed}");
    }
}

#[test]
fn evaluation_rejects_bad_assignments() {
    let u = universe(&[1, 2]);
    let x = GradedPolynomial::var(u.clone(), "x1").unwrap();
    assert!(x.evaluate(&[Form::dz(2, 0)]).is_err());
    assert!(x.evaluate(&[Form::dz(2, 0), Form::dz(2, 1)]).is_err());
    let mixed = x.try_add(&GradedPolynomial::constant(u, Scalar::from_int(1))).unwrap();
    assert!(!mixed.is_homogeneous());
}
