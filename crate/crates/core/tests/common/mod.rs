#![allow(dead_code)]

use holoform::form::Form;
use holoform::jet::{exponents_up_to, small_gaussian};
use holoform::poly::{PolyMap, Polynomial};
use holoform::scalar::Scalar;
use holoform::tensor::CovariantTensor;
use holoform::verify::random_form;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A sparse polynomial with at most `terms` monomials of degree ≤ `max_degree`.
pub fn sparse_poly(n: usize, max_degree: u32, terms: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let monomials = exponents_up_to(n, max_degree);
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let e = monomials[rng.gen_range(0..monomials.len())].clone();
        p.add_term(e, small_gaussian(rng));
    }
    p
}

/// A sparse `p`-form: a few random basis terms with sparse coefficients.
pub fn sparse_form(n: usize, p: usize, rng: &mut ChaCha8Rng) -> Form {
    let mut w = Form::zero(n, p);
    if p > n {
        return w;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let mut idx: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            idx.swap(i, rng.gen_range(0..=i));
        }
        idx.truncate(p);
        w = w.add(&Form::monomial(n, &idx, sparse_poly(n, 2, 3, rng)));
    }
    w
}

/// Dense random form, as used by the verification suites.
pub fn dense_form(n: usize, p: usize, rng: &mut ChaCha8Rng) -> Form {
    random_form(n, p, rng)
}

/// A polynomial self-map: random linear part plus one quadratic term per
/// component. Not necessarily invertible.
pub fn random_map(n: usize, rng: &mut ChaCha8Rng) -> PolyMap {
    let comps = (0..n)
        .map(|_| {
            let mut f = sparse_poly(n, 1, n, rng);
            let mut e = vec![0; n];
            e[rng.gen_range(0..n)] += 1;
            e[rng.gen_range(0..n)] += 1;
            f.add_term(e, small_gaussian(rng));
            f
        })
        .collect();
    PolyMap::new(comps).unwrap()
}

pub fn random_tensor(n: usize, order: usize, rng: &mut ChaCha8Rng) -> CovariantTensor {
    let mut t = CovariantTensor::zero(n, order);
    for _ in 0..rng.gen_range(1..=3) {
        let idx: Vec<usize> = (0..order).map(|_| rng.gen_range(0..n)).collect();
        t = t
            .try_add(&CovariantTensor::monomial(n, &idx, sparse_poly(n, 2, 2, rng)))
            .unwrap();
    }
    t
}

pub fn sign(k: usize) -> Scalar {
    Scalar::from_int(if k % 2 == 0 { 1 } else { -1 })
}

/// Outcome of one seeded DGA check: which law failed, if any.
pub fn dga_laws(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = 1 + (seed % 3) as usize;
    let p = r.gen_range(0..=n);
    let q = r.gen_range(0..=n);
    let a = sparse_form(n, p, &mut r);
    let b = sparse_form(n, q, &mut r);
    let phi = random_map(n, &mut r);
    let psi = random_map(n, &mut r);

    let fail = |law: &str| Err(format!("seed {seed}: {law} (n={n}, a={a}, b={b})"));
    if !a.d().d().is_zero() {
        return fail("d∘d = 0");
    }
    let ab = a.wedge(&b).unwrap();
    let leibniz = a.d().wedge(&b).unwrap().add(&a.wedge(&b.d()).unwrap().scale(&sign(p)));
    if ab.d() != leibniz {
        return fail("graded Leibniz");
    }
    if ab != b.wedge(&a).unwrap().scale(&sign(p * q)) {
        return fail("graded anticommutativity");
    }
    let pa = a.pullback(&phi).unwrap();
    let pb = b.pullback(&phi).unwrap();
    if ab.pullback(&phi).unwrap() != pa.wedge(&pb).unwrap() {
        return fail("pullback respects wedge");
    }
    if a.d().pullback(&phi).unwrap() != pa.d() {
        return fail("pullback commutes with d");
    }
    let composed = phi.compose(&psi).unwrap();
    if a.pullback(&composed).unwrap() != pa.pullback(&psi).unwrap() {
        return fail("(φ∘ψ)* = ψ*∘φ*");
    }
    Ok(())
}

/// One seeded check of the skew-symmetrization identities.
pub fn tensor_identities(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = 1 + (seed % 3) as usize;
    let k = r.gen_range(0..=3);
    let l = r.gen_range(0..=3);
    let t = random_tensor(n, k, &mut r);
    let t2 = random_tensor(n, l, &mut r);
    let fail = |law: &str| Err(format!("seed {seed}: {law} (n={n}, T order {k}, T' order {l})"));
    if t.tensor_product(&t2).unwrap().skew_symmetrize()
        != t.skew_symmetrize().wedge(&t2.skew_symmetrize()).unwrap()
    {
        return fail("h(T⊗T') = h(T)∧h(T')");
    }
    let qd = r.gen_range(0..=n.min(3));
    let w = sparse_form(n, qd, &mut r);
    let fact = Scalar::factorial(qd as u32);
    let embedded = CovariantTensor::alt_embed(&w);
    if embedded.skew_symmetrize() != w.scale(&fact) {
        return fail("h(alt ω) = q!·ω");
    }
    if embedded.nabla().skew_symmetrize() != w.d().scale(&fact) {
        return fail("h(∇ alt ω) = q!·dω");
    }
    Ok(())
}
