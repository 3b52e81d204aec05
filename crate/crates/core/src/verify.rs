//! Executable certificates for the classification.
//!
//! * Witness forms: for each parity case the unique monomial of degree `q`
//!   evaluates on an explicit `p`-form to exactly `s!·dz₁∧⋯∧dz_q`.
//! * Independence: the basis monomials, evaluated on witness and seeded
//!   random forms, give an evaluation matrix of full rank, so no nontrivial
//!   combination of them is the zero operator.
//! * Homogeneity and naturality: exact pullback identities under homotheties
//!   and polynomial automorphisms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{apply_operator, enumerate_basis, OperatorBasis, OperatorSignature};
use crate::error::{HoloformError, Result};
use crate::form::Form;
use crate::graded::{GradedMonomial, GradedPolynomial, Universe};
use crate::jet::{exponents_up_to, random_automorphism, small_gaussian, Automorphism};
use crate::linalg::{rank, Matrix};
use crate::oracle::wedge_basis;
use crate::poly::{PolyMap, Polynomial};
use crate::scalar::Scalar;

/// Default seed when none is supplied.
pub const DEFAULT_SEED: u64 = 20_151_028;

/// Mixes a base seed with a tag and an index (splitmix64 finalizer).
pub fn sub_seed(seed: u64, tag: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(tag.wrapping_mul(0x9e37_79b9_7f4a_7c15))
        .wrapping_add(index.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `u⁰vˢ`
    OddPEvenQ,
    /// `u¹vˢ`
    OddPOddQ,
    /// `uˢv⁰`
    EvenPEvenQ,
    /// `uˢv¹`
    EvenPOddQ,
}

impl WitnessKind {
    pub const ALL: [WitnessKind; 4] = [
        WitnessKind::OddPEvenQ,
        WitnessKind::OddPOddQ,
        WitnessKind::EvenPEvenQ,
        WitnessKind::EvenPOddQ,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            WitnessKind::OddPEvenQ => "odd_p_even_q",
            WitnessKind::OddPOddQ => "odd_p_odd_q",
            WitnessKind::EvenPEvenQ => "even_p_even_q",
            WitnessKind::EvenPOddQ => "even_p_odd_q",
        }
    }

    fn p_is_odd(self) -> bool {
        matches!(self, WitnessKind::OddPEvenQ | WitnessKind::OddPOddQ)
    }

    /// Exponents `(a, b)` of `uᵃvᵇ`.
    fn exponents(self, s: usize) -> (u32, u32) {
        let s = s as u32;
        match self {
            WitnessKind::OddPEvenQ => (0, s),
            WitnessKind::OddPOddQ => (1, s),
            WitnessKind::EvenPEvenQ => (s, 0),
            WitnessKind::EvenPOddQ => (s, 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WitnessCase {
    pub kind: WitnessKind,
    pub p: usize,
    pub s: usize,
    pub n: usize,
}

impl WitnessCase {
    pub fn new(kind: WitnessKind, p: usize, s: usize, n: usize) -> Result<Self> {
        if p == 0 {
            return Err(HoloformError::InvalidWitness("p must be positive".into()));
        }
        if kind.p_is_odd() != (p % 2 == 1) {
            return Err(HoloformError::InvalidWitness(format!(
                "case {} needs p {}, got p = {p}",
                kind.tag(),
                if kind.p_is_odd() { "odd" } else { "even" }
            )));
        }
        let c = WitnessCase { kind, p, s, n };
        if c.q() > n {
            return Err(HoloformError::InvalidWitness(format!(
                "target degree {} exceeds n = {n}",
                c.q()
            )));
        }
        if n == 0 {
            return Err(HoloformError::InvalidWitness("n must be positive".into()));
        }
        Ok(c)
    }

    /// Degree of the case's monomial.
    pub fn q(&self) -> usize {
        let (a, b) = self.kind.exponents(self.s);
        a as usize * self.p + b as usize * (self.p + 1)
    }

    pub fn signature(&self) -> OperatorSignature {
        OperatorSignature::new(vec![self.p], self.q(), self.n).expect("validated case")
    }

    pub fn monomial(&self) -> GradedPolynomial {
        let (a, b) = self.kind.exponents(self.s);
        let universe = Universe::for_sources(&[self.p]).expect("p > 0");
        GradedPolynomial::monomial(universe, GradedMonomial(vec![a, b]), Scalar::one())
    }
}

impl fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(p={}, s={}, q={}, n={})", self.kind.tag(), self.p, self.s, self.q(), self.n)
    }
}

/// `z_{start}·dz_{start+1}∧⋯∧dz_{start+p}` (zero-based variable positions).
fn leading_block(n: usize, start: usize, p: usize) -> Form {
    let idx: Vec<usize> = (start + 1..=start + p).collect();
    Form::monomial(n, &idx, Polynomial::var(n, start))
}

/// `dz_{start}∧⋯∧dz_{start+p−1}`.
fn closed_block(n: usize, start: usize, p: usize) -> Form {
    let idx: Vec<usize> = (start..start + p).collect();
    Form::basis(n, &idx)
}

/// The witness `p`-form of a case, on `q` consecutive coordinates.
pub fn witness_form(c: &WitnessCase) -> Form {
    let (n, p, s) = (c.n, c.p, c.s);
    let mut w = Form::zero(n, p);
    match c.kind {
        WitnessKind::OddPEvenQ => {
            for j in 0..s {
                w = w.add(&leading_block(n, j * (p + 1), p));
            }
        }
        WitnessKind::OddPOddQ => {
            w = w.add(&closed_block(n, 0, p));
            for j in 0..s {
                w = w.add(&leading_block(n, p + j * (p + 1), p));
            }
        }
        WitnessKind::EvenPEvenQ => {
            for j in 0..s {
                w = w.add(&closed_block(n, j * p, p));
            }
        }
        WitnessKind::EvenPOddQ => {
            w = w.add(&leading_block(n, 0, p));
            for j in 0..s {
                w = w.add(&closed_block(n, p + 1 + j * p, p));
            }
        }
    }
    w
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessOutcome {
    pub case: WitnessCase,
    pub q: usize,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

/// Applies the case's monomial to its witness and compares with
/// `s!·dz₁∧⋯∧dz_q`.
pub fn check_witness(c: &WitnessCase) -> Result<WitnessOutcome> {
    let w = witness_form(c);
    let actual = apply_operator(&c.monomial(), &[w])?;
    let q = c.q();
    let idx: Vec<usize> = (0..q).collect();
    let expected = Form::basis(c.n, &idx).scale(&Scalar::factorial(c.s as u32));
    Ok(WitnessOutcome {
        case: *c,
        q,
        passed: actual == expected,
        expected: expected.to_string(),
        actual: actual.to_string(),
    })
}

/// Every case with `1 ≤ q ≤ max_q`, `n = q`, plus the `q = 0` cases on `ℂ¹`.
pub fn witness_cases(max_q: usize) -> Vec<WitnessCase> {
    let mut out = Vec::new();
    for kind in WitnessKind::ALL {
        for p in 1..=max_q.max(1) {
            if kind.p_is_odd() != (p % 2 == 1) {
                continue;
            }
            for s in 0..=max_q {
                let probe = WitnessCase { kind, p, s, n: 1 };
                let q = probe.q();
                if q > max_q {
                    break;
                }
                out.push(WitnessCase::new(kind, p, s, q.max(1)).expect("parities match"));
            }
        }
    }
    out
}

/// Seeded random `p`-form on ℂⁿ: every coefficient a polynomial of total
/// degree ≤ 2 with coefficients in `{−2..2} + {−2..2}·i`.
pub fn random_form(n: usize, p: usize, rng: &mut impl Rng) -> Form {
    let mut w = Form::zero(n, p);
    if p > n {
        return w;
    }
    let monomials = exponents_up_to(n, 2);
    for idx in wedge_basis(p, n) {
        let coef = Polynomial::from_terms(n, monomials.iter().map(|e| (e.clone(), small_gaussian(rng))));
        w = w.add(&Form::monomial(n, &idx, coef));
    }
    w
}

pub fn random_forms(sig: &OperatorSignature, rng: &mut impl Rng) -> Vec<Form> {
    sig.source_degrees()
        .iter()
        .map(|&p| random_form(sig.ambient_dim(), p, rng))
        .collect()
}

/// Random combination of the basis with small Gaussian coefficients, never
/// zero when the basis is nonempty.
pub fn random_operator(basis: &OperatorBasis, rng: &mut impl Rng) -> GradedPolynomial {
    let mut p = GradedPolynomial::zero(basis.universe.clone());
    for i in 0..basis.len() {
        let c = small_gaussian(rng);
        p = p.try_add(&basis.polynomial(i).scale(&c)).expect("same universe");
    }
    if p.is_zero() && !basis.is_empty() {
        p = basis.polynomial(0);
    }
    p
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceCertificate {
    pub signature: OperatorSignature,
    pub basis: Vec<String>,
    pub rank: usize,
    pub trials: usize,
    pub witness_rows: bool,
    pub seed: u64,
    pub passed: bool,
}

/// Rank of the matrix whose rows are the evaluations of the basis
/// monomials on a common family of inputs, columns indexed by
/// `(trial, wedge index, exponent)`. Single-source signatures start with the
/// witness form as a deterministic input; random inputs are then added until
/// the rank is full or `trials` random inputs have been used.
pub fn independence_certificate(basis: &OperatorBasis, trials: usize, seed: u64) -> Result<IndependenceCertificate> {
    let sig = &basis.signature;
    let polys = basis.polynomials();
    let mut inputs: Vec<Vec<Form>> = Vec::new();
    let mut witness_rows = false;
    if let [p] = sig.source_degrees() {
        if let Some(case) = witness_for(*p, sig.target_degree(), sig.ambient_dim()) {
            inputs.push(vec![witness_form(&case)]);
            witness_rows = true;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut columns: BTreeMap<(usize, Vec<usize>, Vec<u32>), usize> = BTreeMap::new();
    let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); polys.len()];
    let mut r = 0;
    let mut random_used = 0;
    let mut t = 0;
    loop {
        if t == inputs.len() {
            if random_used == trials || r == polys.len() {
                break;
            }
            inputs.push(random_forms(sig, &mut rng));
            random_used += 1;
        }
        let forms = &inputs[t];
        let values: Vec<Form> = polys
            .par_iter()
            .map(|p| apply_operator(p, forms))
            .collect::<Result<_>>()?;
        for (row, value) in rows.iter_mut().zip(&values) {
            for (idx, coef) in value.terms() {
                for (e, c) in coef.terms() {
                    let next = columns.len();
                    let col = *columns.entry((t, idx.clone(), e.clone())).or_insert(next);
                    row.insert(col, c.clone());
                }
            }
        }
        let mut m = Matrix::zeros(0, columns.len());
        for row in &rows {
            let mut dense = vec![Scalar::default(); columns.len()];
            for (c, x) in row {
                dense[*c] = x.clone();
            }
            m.push_row(dense);
        }
        r = if polys.is_empty() { 0 } else { rank(&m) };
        t += 1;
    }
    Ok(IndependenceCertificate {
        signature: sig.clone(),
        basis: basis.rendered(),
        rank: r,
        trials: inputs.len(),
        witness_rows,
        seed,
        passed: r == polys.len(),
    })
}

/// The single-source witness case of degree `q` on ℂⁿ, if any.
pub fn witness_for(p: usize, q: usize, n: usize) -> Option<WitnessCase> {
    WitnessKind::ALL.into_iter().find_map(|kind| {
        if kind.p_is_odd() != (p % 2 == 1) {
            return None;
        }
        (0..=q).find_map(|s| {
            let c = WitnessCase { kind, p, s, n };
            (c.q() == q && q <= n).then_some(c)
        })
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HomogeneityOutcome {
    pub lambda: String,
    /// `P(τ*ω) = τ*P(ω)` as forms.
    pub pullback_law: bool,
    /// `P(τ*ω)₀ = λ^q·P(ω)₀`.
    pub origin_scaling: bool,
}

impl HomogeneityOutcome {
    pub fn passed(&self) -> bool {
        self.pullback_law && self.origin_scaling
    }
}

/// Checks the homogeneity law of `P` under the homothety of ratio `lambda`
/// on the given inputs.
pub fn homogeneity_certificate(p: &GradedPolynomial, forms: &[Form], lambda: &Scalar) -> Result<HomogeneityOutcome> {
    let value = apply_operator(p, forms)?;
    homogeneity_against(p, forms, &value, lambda)
}

/// As [`homogeneity_certificate`], reusing a precomputed `P(ω)`.
fn homogeneity_against(p: &GradedPolynomial, forms: &[Form], value: &Form, lambda: &Scalar) -> Result<HomogeneityOutcome> {
    if num_traits::Zero::is_zero(lambda) {
        return Err(HoloformError::InvalidGerm("homothety ratio must be nonzero".into()));
    }
    let pulled: Vec<Form> = forms.iter().map(|w| w.pullback_homothety(lambda)).collect();
    let lhs = apply_operator(p, &pulled)?;
    let rhs = value.pullback_homothety(lambda);
    let q = value.degree() as u32;
    let origin_scaling = lhs.at_origin() == value.at_origin().scale(&lambda.pow(q));
    Ok(HomogeneityOutcome {
        lambda: lambda.to_string(),
        pullback_law: lhs == rhs,
        origin_scaling,
    })
}

/// `φ*(P(ω, dω)) = P(φ*ω, d(φ*ω))`, exactly.
pub fn naturality_check(p: &GradedPolynomial, forms: &[Form], phi: &PolyMap) -> Result<bool> {
    let lhs = apply_operator(p, forms)?.pullback(phi)?;
    let pulled: Vec<Form> = forms.iter().map(|w| w.pullback(phi)).collect::<Result<_>>()?;
    let rhs = apply_operator(p, &pulled)?;
    Ok(lhs == rhs)
}

/// One line of a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionReport {
    pub section: String,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl SectionReport {
    fn new(section: &str, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        SectionReport {
            section: section.to_string(),
            checks,
            passed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub sections: Vec<SectionReport>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(seed: u64, sections: Vec<SectionReport>) -> Self {
        let passed = sections.iter().all(|s| s.passed);
        VerificationReport { seed, sections, passed }
    }
}

fn failure(name: String, e: HoloformError) -> CheckRecord {
    CheckRecord {
        name,
        passed: false,
        detail: format!("error: {e}"),
    }
}

pub fn witness_suite(max_q: usize) -> SectionReport {
    let checks = witness_cases(max_q)
        .par_iter()
        .map(|c| match check_witness(c) {
            Ok(o) => CheckRecord {
                name: c.to_string(),
                passed: o.passed,
                detail: if o.passed {
                    o.actual
                } else {
                    format!("expected {}, got {}", o.expected, o.actual)
                },
            },
            Err(e) => failure(c.to_string(), e),
        })
        .collect();
    SectionReport::new("witnesses", checks)
}

/// Signatures with `m ≤ max_sources`, `pᵢ ≤ max_p`, `q ≤ n ≤ max_n`.
pub fn small_signatures(max_sources: usize, max_p: usize, max_n: usize) -> Vec<OperatorSignature> {
    let mut sources: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_sources {
        frontier = frontier
            .iter()
            .flat_map(|s| {
                (1..=max_p).map(move |p| {
                    let mut t = s.clone();
                    t.push(p);
                    t
                })
            })
            .collect();
        sources.extend(frontier.iter().cloned());
    }
    let mut out = Vec::new();
    for src in sources {
        for n in 1..=max_n {
            for q in 0..=n {
                out.push(OperatorSignature::new(src.clone(), q, n).expect("valid ranges"));
            }
        }
    }
    out
}

pub fn independence_suite(seed: u64) -> SectionReport {
    let checks = small_signatures(2, 3, 4)
        .par_iter()
        .enumerate()
        .filter_map(|(i, sig)| {
            let basis = enumerate_basis(sig);
            if basis.is_empty() {
                return None;
            }
            let name = format!("{:?} -> q={} on n={}", sig.source_degrees(), sig.target_degree(), sig.ambient_dim());
            let trials = basis.len() + 2;
            Some(match independence_certificate(&basis, trials, sub_seed(seed, 1, i as u64)) {
                Ok(c) => CheckRecord {
                    name,
                    passed: c.passed,
                    detail: format!("rank {} of {} [{}] in {} trial(s)", c.rank, basis.len(), c.basis.join(", "), c.trials),
                },
                Err(e) => failure(name, e),
            })
        })
        .collect();
    SectionReport::new("independence", checks)
}

/// Ratios used by the homogeneity suite.
pub fn homogeneity_lambdas() -> Vec<Scalar> {
    vec![Scalar::from_int(2), Scalar::from_int(3), Scalar::gaussian(1, 1), Scalar::from_int(-1)]
}

/// Single-source signatures with `p ≤ 2`, `q ≤ 4` on ℂ⁴, `pairs` seeded
/// `(P, ω)` per signature, every ratio of [`homogeneity_lambdas`].
pub fn homogeneity_suite(seed: u64, pairs: usize) -> SectionReport {
    let n = 4;
    let sigs: Vec<OperatorSignature> = (1..=2)
        .flat_map(|p| (0..=4).map(move |q| OperatorSignature::new(vec![p], q, n).expect("valid")))
        .collect();
    let lambdas = homogeneity_lambdas();
    let checks = sigs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(si, sig)| {
            let basis = enumerate_basis(sig);
            let lambdas = lambdas.clone();
            (0..pairs).map(move |j| {
                let name = format!("p={} q={} pair {}", sig.source_degrees()[0], sig.target_degree(), j);
                let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 2, (si * 10_000 + j) as u64));
                let p = random_operator(&basis, &mut rng);
                let forms = random_forms(sig, &mut rng);
                let value = match apply_operator(&p, &forms) {
                    Ok(v) => v,
                    Err(e) => return failure(name, e),
                };
                let mut ok = true;
                let mut detail = format!("P = {p}");
                for l in &lambdas {
                    match homogeneity_against(&p, &forms, &value, l) {
                        Ok(o) if o.passed() => {}
                        Ok(o) => {
                            ok = false;
                            detail.push_str(&format!("; failed at lambda = {}", o.lambda));
                        }
                        Err(e) => return failure(name, e),
                    }
                }
                CheckRecord { name, passed: ok, detail }
            })
        })
        .collect();
    SectionReport::new("homogeneity", checks)
}

/// `count` seeded triples `(P, ω, φ)` over signatures on ℂⁿ, `n ≤ 3`, with
/// `φ` a unitriangular∘linear automorphism.
pub fn naturality_suite(seed: u64, count: usize) -> SectionReport {
    let sigs: Vec<OperatorSignature> = small_signatures(2, 2, 3)
        .into_iter()
        .filter(|s| !enumerate_basis(s).is_empty())
        .collect();
    let checks = (0..count)
        .into_par_iter()
        .map(|j| {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 3, j as u64));
            let sig = &sigs[rng.gen_range(0..sigs.len())];
            let basis = enumerate_basis(sig);
            let p = random_operator(&basis, &mut rng);
            let forms = random_forms(sig, &mut rng);
            let phi: Automorphism = random_automorphism(sig.ambient_dim(), 2, rng.gen());
            let name = format!(
                "#{j} {:?} -> q={} on n={}",
                sig.source_degrees(),
                sig.target_degree(),
                sig.ambient_dim()
            );
            match naturality_check(&p, &forms, &phi.map) {
                Ok(ok) => CheckRecord {
                    name,
                    passed: ok,
                    detail: format!("P = {p}"),
                },
                Err(e) => failure(name, e),
            }
        })
        .collect();
    SectionReport::new("naturality", checks)
}
