//! Brute-force computation of `GLₙ`-equivariant linear maps
//! `E → Λ^q V*` for `E ⊆ ⊗^k V*`.
//!
//! The space of maps is cut out by the linear constraints
//! `L(X·e) = X·L(e)` for the generators `X = E_ab` of `gl_n`, acting on
//! covariant slots through the contragredient `−Xᵀ`: `E_ab·dz_a = −dz_b` and
//! `E_ab·dz_j = 0` for `j ≠ a`. For these polynomial representations,
//! infinitesimal equivariance is the same as equivariance under the connected
//! group; found maps are additionally spot-checked against random
//! unimodular Gaussian-integer matrices acting by
//! `g·dz_j = Σ_c (g⁻¹)_{jc} dz_c`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{HoloformError, Result};
use crate::form::sort_with_sign;
use crate::jet::random_unimodular_matrix;
use crate::linalg::{gauss_jordan, nullspace_fraction_free, nullspace_naive, Matrix};
use crate::scalar::Scalar;
use crate::tensor::signed_permutations;

/// Largest admissible `n^k`.
pub const MAX_DOMAIN_DIM: usize = 4096;

/// Number of random group elements used by the finite spot check.
pub const GROUP_SPOT_CHECKS: usize = 20;

/// All index tuples of length `k` over `0..n`, in lexicographic order; the
/// position of a tuple is its base-`n` value.
pub fn tensor_basis(k: usize, n: usize) -> Vec<Vec<usize>> {
    let total = n.pow(k as u32);
    (0..total)
        .map(|mut x| {
            let mut t = vec![0; k];
            for slot in (0..k).rev() {
                t[slot] = x % n;
                x /= n;
            }
            t
        })
        .collect()
}

fn tensor_position(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &j| acc * n + j)
}

/// Strictly increasing tuples of length `q` over `0..n`, lexicographic.
pub fn wedge_basis(q: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, q: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, q, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, q, n, &mut Vec::new(), &mut out);
    out
}

/// Action of `E_ab` on a dense vector of `⊗^k V*`.
fn generator_on_tensor(v: &[Scalar], a: usize, b: usize, k: usize, n: usize, basis: &[Vec<usize>]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); v.len()];
    for (pos, val) in v.iter().enumerate() {
        if val.is_zero() {
            continue;
        }
        let t = &basis[pos];
        for slot in 0..k {
            if t[slot] == a {
                let mut t2 = t.clone();
                t2[slot] = b;
                out[tensor_position(&t2, n)] -= val;
            }
        }
    }
    out
}

/// Matrix of `E_ab` on `Λ^q V*` in the wedge basis, as sparse columns:
/// `column[I'] = [(I, coefficient)]`.
fn generator_on_wedge(a: usize, b: usize, wbasis: &[Vec<usize>]) -> Vec<Vec<(usize, Scalar)>> {
    let index: BTreeMap<&Vec<usize>, usize> = wbasis.iter().enumerate().map(|(i, t)| (t, i)).collect();
    wbasis
        .iter()
        .map(|t| {
            let mut col = Vec::new();
            for slot in 0..t.len() {
                if t[slot] != a {
                    continue;
                }
                let mut t2 = t.clone();
                t2[slot] = b;
                if let Some(sign) = sort_with_sign(&mut t2) {
                    col.push((index[&t2], Scalar::from_int(-sign)));
                }
            }
            col
        })
        .collect()
}

/// Skew-symmetrization of a dense tensor vector into wedge coordinates.
pub fn skew_vector(v: &[Scalar], basis: &[Vec<usize>], wbasis: &[Vec<usize>]) -> Vec<Scalar> {
    let index: BTreeMap<&Vec<usize>, usize> = wbasis.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut out = vec![Scalar::zero(); wbasis.len()];
    for (pos, val) in v.iter().enumerate() {
        if val.is_zero() {
            continue;
        }
        let mut t = basis[pos].clone();
        if let Some(sign) = sort_with_sign(&mut t) {
            if let Some(&i) = index.get(&t) {
                out[i] += &(val * &Scalar::from_int(sign));
            }
        }
    }
    out
}

/// An invariant subspace of `⊗^k V*` in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub k: usize,
    pub n: usize,
    /// Reduced basis rows (dense tensor vectors).
    pub basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    /// Nonzero positions of each basis row.
    support: Vec<Vec<usize>>,
}

impl Subspace {
    pub fn full(k: usize, n: usize) -> Self {
        let d = n.pow(k as u32);
        let basis = (0..d)
            .map(|i| {
                let mut v = vec![Scalar::zero(); d];
                v[i] = Scalar::one();
                v
            })
            .collect();
        Subspace {
            k,
            n,
            basis,
            pivots: (0..d).collect(),
            support: (0..d).map(|i| vec![i]).collect(),
        }
    }

    /// Span of the given vectors (any spanning set).
    pub fn span(k: usize, n: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        let d = n.pow(k as u32);
        assert!(vectors.iter().all(|v| v.len() == d), "vector length must be n^k");
        if vectors.is_empty() {
            return Subspace {
                k,
                n,
                basis: Vec::new(),
                pivots: Vec::new(),
                support: Vec::new(),
            };
        }
        let (rref, pivots) = gauss_jordan(&Matrix::from_rows(vectors));
        let basis: Vec<Vec<Scalar>> = (0..pivots.len()).map(|r| rref.row(r).to_vec()).collect();
        let support: Vec<Vec<usize>> = basis
            .iter()
            .map(|row: &Vec<Scalar>| (0..row.len()).filter(|&i| !row[i].is_zero()).collect())
            .collect();
        Subspace {
            k,
            n,
            basis,
            pivots,
            support,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in the reduced basis, `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![Scalar::zero(); v.len()];
        for ((c, row), support) in coords.iter().zip(&self.basis).zip(&self.support) {
            if c.is_zero() {
                continue;
            }
            for &i in support {
                recon[i] += &(c * &row[i]);
            }
        }
        (recon == v).then_some(coords)
    }
}

/// Spanning set of the image of `S^{d₀}(Λᵖ) ⊗ S^{d₁}(V* ⊗ Λᵖ)` in
/// `⊗^q V*`, `q = p·d₀ + (p+1)·d₁`: symmetrized products of the embedded
/// basis elements `alt(dz_I)` and `dz_i ⊗ alt(dz_I)`.
pub fn jet_component_subspace(p: usize, d0: usize, d1: usize, n: usize) -> Result<Subspace> {
    let q = p * d0 + (p + 1) * d1;
    let total = n.checked_pow(q as u32).unwrap_or(usize::MAX);
    if total > MAX_DOMAIN_DIM {
        return Err(HoloformError::TooLarge(format!("n^k = {n}^{q} exceeds {MAX_DOMAIN_DIM}")));
    }
    let alt = |idx: &[usize]| -> BTreeMap<Vec<usize>, i64> {
        signed_permutations(idx.len())
            .into_iter()
            .map(|(perm, s)| (perm.iter().map(|&j| idx[j]).collect(), s))
            .collect()
    };
    let lambda: Vec<BTreeMap<Vec<usize>, i64>> = wedge_basis(p, n).iter().map(|i| alt(i)).collect();
    let first_order: Vec<BTreeMap<Vec<usize>, i64>> = (0..n)
        .flat_map(|i| {
            lambda.iter().map(move |w| {
                w.iter()
                    .map(|(t, s)| {
                        let mut t2 = vec![i];
                        t2.extend_from_slice(t);
                        (t2, *s)
                    })
                    .collect()
            })
        })
        .collect();

    fn multisets(len: usize, count: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, len: usize, count: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == count {
                out.push(cur.clone());
                return;
            }
            for i in start..len {
                cur.push(i);
                rec(i, len, count, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, len, count, &mut Vec::new(), &mut out);
        out
    }

    fn tensor(a: &BTreeMap<Vec<usize>, i64>, b: &BTreeMap<Vec<usize>, i64>) -> BTreeMap<Vec<usize>, i64> {
        let mut out = BTreeMap::new();
        for (ta, sa) in a {
            for (tb, sb) in b {
                let mut t = ta.clone();
                t.extend_from_slice(tb);
                *out.entry(t).or_insert(0) += sa * sb;
            }
        }
        out
    }

    // sum over orderings of the factors (block permutations)
    fn symmetrized(factors: &[&BTreeMap<Vec<usize>, i64>]) -> BTreeMap<Vec<usize>, i64> {
        let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for (perm, _) in signed_permutations(factors.len()) {
            let mut acc: BTreeMap<Vec<usize>, i64> = BTreeMap::from([(Vec::new(), 1)]);
            for &j in &perm {
                acc = tensor(&acc, factors[j]);
            }
            for (t, s) in acc {
                *out.entry(t).or_insert(0) += s;
            }
        }
        out
    }

    let mut vectors = Vec::new();
    for m0 in multisets(lambda.len(), d0) {
        for m1 in multisets(first_order.len(), d1) {
            let f0: Vec<&BTreeMap<Vec<usize>, i64>> = m0.iter().map(|&i| &lambda[i]).collect();
            let f1: Vec<&BTreeMap<Vec<usize>, i64>> = m1.iter().map(|&i| &first_order[i]).collect();
            let t = tensor(&symmetrized(&f0), &symmetrized(&f1));
            let mut v = vec![Scalar::zero(); total];
            for (idx, s) in t {
                if s != 0 {
                    v[tensor_position(&idx, n)] = Scalar::from_int(s);
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                vectors.push(v);
            }
        }
    }
    Ok(Subspace::span(q, n, vectors))
}

/// Result of an equivariant-map computation.
#[derive(Clone, Debug)]
pub struct EquivariantSolution {
    pub k: usize,
    pub q: usize,
    pub n: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub unknowns: usize,
    pub constraint_rows: usize,
    /// Dimension of the space of equivariant maps.
    pub dimension: usize,
    /// Basis maps as `codomain_dim × domain_dim` matrices in the reduced
    /// basis of the domain.
    pub basis_maps: Vec<Matrix>,
    /// Whether the solution space is exactly the span of `h` restricted to
    /// the domain.
    pub matches_skew_symmetrization: bool,
    /// Whether the naive elimination reproduced the rank and nullspace.
    pub naive_agrees: bool,
    /// Outcome of the finite group spot check, when it was run.
    pub group_check: Option<bool>,
    pub elapsed: Duration,
}

/// Constraint system for equivariant maps `E → Λ^q`.
struct System {
    domain: Subspace,
    wbasis: Vec<Vec<usize>>,
    tbasis: Vec<Vec<usize>>,
    rows: Vec<BTreeMap<usize, Scalar>>,
}

impl System {
    fn unknowns(&self) -> usize {
        self.wbasis.len() * self.domain.dim()
    }

    fn col(&self, i: usize, beta: usize) -> usize {
        i * self.domain.dim() + beta
    }
}

fn build_system(q: usize, domain: Subspace) -> Result<System> {
    let (k, n) = (domain.k, domain.n);
    let tbasis = tensor_basis(k, n);
    let wbasis = wedge_basis(q, n);
    let dim_e = domain.dim();
    let mut sys = System {
        domain,
        wbasis,
        tbasis,
        rows: Vec::new(),
    };
    let gens: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let per_gen: Vec<Result<Vec<BTreeMap<usize, Scalar>>>> = gens
        .par_iter()
        .map(|&(a, b)| {
            let rho = generator_on_wedge(a, b, &sys.wbasis);
            let mut rows = Vec::new();
            for beta in 0..dim_e {
                let image = generator_on_tensor(&sys.domain.basis[beta], a, b, k, n, &sys.tbasis);
                let coords = sys
                    .domain
                    .coordinates(&image)
                    .ok_or(HoloformError::NotInvariant { a: a + 1, b: b + 1 })?;
                for i in 0..sys.wbasis.len() {
                    let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (beta2, c) in coords.iter().enumerate() {
                        if !c.is_zero() {
                            *row.entry(sys.col(i, beta2)).or_default() += c;
                        }
                    }
                    for (i2, col) in rho.iter().enumerate() {
                        for (target, c) in col {
                            if *target == i {
                                *row.entry(sys.col(i2, beta)).or_default() -= c;
                            }
                        }
                    }
                    row.retain(|_, v| !v.is_zero());
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
            Ok(rows)
        })
        .collect();
    for r in per_gen {
        sys.rows.extend(r?);
    }
    Ok(sys)
}

/// Incrementally reduces sparse rows to an independent set spanning the
/// same row space (each kept row is normalized and reduced against the
/// earlier ones).
pub fn compact_rows(rows: &[BTreeMap<usize, Scalar>]) -> Vec<BTreeMap<usize, Scalar>> {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for row in rows {
        let mut r = row.clone();
        loop {
            let Some((&lead, _)) = r.iter().find(|(c, _)| pivots.contains_key(c)) else {
                break;
            };
            let factor = r[&lead].clone();
            for (c, v) in &pivots[&lead] {
                let e = r.entry(*c).or_default();
                *e -= &(&factor * v);
            }
            r.retain(|_, v| !v.is_zero());
        }
        if let Some((&lead, lv)) = r.iter().next() {
            let inv = lv.inverse().expect("nonzero");
            for v in r.values_mut() {
                *v *= &inv;
            }
            pivots.insert(lead, r);
        }
    }
    pivots.into_values().collect()
}

fn dense(rows: &[BTreeMap<usize, Scalar>], cols: usize) -> Matrix {
    let mut m = Matrix::zeros(0, cols);
    for r in rows {
        let mut v = vec![Scalar::zero(); cols];
        for (c, x) in r {
            v[*c] = x.clone();
        }
        m.push_row(v);
    }
    m
}

/// Matrix of `h` on the domain basis, `codomain_dim × domain_dim`.
fn skew_matrix(sys: &System) -> Matrix {
    let mut m = Matrix::zeros(sys.wbasis.len(), sys.domain.dim());
    for (beta, v) in sys.domain.basis.iter().enumerate() {
        let h = skew_vector(v, &sys.tbasis, &sys.wbasis);
        for (i, x) in h.into_iter().enumerate() {
            m[(i, beta)] = x;
        }
    }
    m
}

fn flatten(sys: &System, m: &Matrix) -> Vec<Scalar> {
    let mut x = vec![Scalar::zero(); sys.unknowns()];
    for i in 0..m.rows() {
        for beta in 0..m.cols() {
            x[sys.col(i, beta)] = m[(i, beta)].clone();
        }
    }
    x
}

fn satisfies(sys: &System, x: &[Scalar]) -> bool {
    sys.rows.iter().all(|row| {
        let mut acc = Scalar::zero();
        for (c, v) in row {
            if !x[*c].is_zero() {
                acc += &(v * &x[*c]);
            }
        }
        acc.is_zero()
    })
}

fn check_size(k: usize, n: usize) -> Result<()> {
    match n.checked_pow(k as u32) {
        Some(d) if d <= MAX_DOMAIN_DIM => Ok(()),
        _ => Err(HoloformError::TooLarge(format!(
            "n^k = {n}^{k} exceeds the limit of {MAX_DOMAIN_DIM} domain dimensions"
        ))),
    }
}

/// Computes the space of equivariant linear maps `E → Λ^q V*`, where `E` is
/// `subspace` or all of `⊗^k V*`.
pub fn equivariant_hom_dimension(k: usize, q: usize, n: usize, subspace: Option<Subspace>) -> Result<EquivariantSolution> {
    if n == 0 {
        return Err(HoloformError::InvalidSignature("n must be positive".into()));
    }
    check_size(k, n)?;
    let start = Instant::now();
    let domain = match subspace {
        Some(s) => {
            if s.k != k || s.n != n {
                return Err(HoloformError::DimensionMismatch { left: k, right: s.k });
            }
            s
        }
        None => Subspace::full(k, n),
    };
    let sys = build_system(q, domain)?;
    let unknowns = sys.unknowns();
    let compact = compact_rows(&sys.rows);
    let matrix = dense(&compact, unknowns);
    let (rank, null) = nullspace_fraction_free(&matrix);
    let (rank_naive, null_naive) = nullspace_naive(&matrix);
    let naive_agrees = rank == rank_naive && null == null_naive && null.iter().all(|x| satisfies(&sys, x));

    let codim = sys.wbasis.len();
    let dim_e = sys.domain.dim();
    let basis_maps: Vec<Matrix> = null
        .iter()
        .map(|x| {
            let mut m = Matrix::zeros(codim, dim_e);
            for i in 0..codim {
                for beta in 0..dim_e {
                    m[(i, beta)] = x[sys.col(i, beta)].clone();
                }
            }
            m
        })
        .collect();

    let h = skew_matrix(&sys);
    let h_vec = flatten(&sys, &h);
    let h_solves = satisfies(&sys, &h_vec);
    let h_rank = usize::from(!h.is_zero());
    let matches = h_solves
        && null.len() == h_rank
        && null.iter().all(|x| {
            let m = Matrix::from_rows(vec![x.clone(), h_vec.clone()]);
            crate::linalg::rank(&m) == h_rank.max(1)
        });

    let group_check = (n.pow(k as u32) <= 729 && !basis_maps.is_empty())
        .then(|| group_spot_check(&sys, &basis_maps, 0x0a11_ce5e_ed));

    Ok(EquivariantSolution {
        k,
        q,
        n,
        domain_dim: dim_e,
        codomain_dim: codim,
        unknowns,
        constraint_rows: sys.rows.len(),
        dimension: null.len(),
        basis_maps,
        matches_skew_symmetrization: matches,
        naive_agrees,
        group_check: group_check.map(|r| r.unwrap_or(false)),
        elapsed: start.elapsed(),
    })
}

/// Whether the matrix of `h` on `⊗^q V*` satisfies every generated
/// equivariance constraint.
pub fn verify_h_is_solution(q: usize, n: usize) -> Result<bool> {
    check_size(q, n)?;
    let sys = build_system(q, Subspace::full(q, n))?;
    let h = skew_matrix(&sys);
    Ok(satisfies(&sys, &flatten(&sys, &h)))
}

/// `g · v` on `⊗^k V*` with `g·dz_j = Σ_c (g⁻¹)_{jc} dz_c` in each slot.
fn group_on_tensor(ginv: &Matrix, v: &[Scalar], basis: &[Vec<usize>], n: usize) -> Vec<Scalar> {
    let mut cur: Vec<Scalar> = v.to_vec();
    let k = basis.first().map_or(0, |t| t.len());
    for slot in 0..k {
        let mut next = vec![Scalar::zero(); cur.len()];
        for (pos, val) in cur.iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            let t = &basis[pos];
            let j = t[slot];
            for c in 0..n {
                let g = &ginv[(j, c)];
                if g.is_zero() {
                    continue;
                }
                let mut t2 = t.clone();
                t2[slot] = c;
                next[tensor_position(&t2, n)] += &(val * g);
            }
        }
        cur = next;
    }
    cur
}

/// `g` on `Λ^q V*`: entry `(I, J)` is the minor `det((g⁻¹)_{J,I})`
/// (rows `J`, columns `I`), the coefficient of `dz_I` in `g·dz_J`.
fn group_on_wedge(ginv: &Matrix, wbasis: &[Vec<usize>]) -> Matrix {
    let mut m = Matrix::zeros(wbasis.len(), wbasis.len());
    for (jj, jt) in wbasis.iter().enumerate() {
        for (ii, it) in wbasis.iter().enumerate() {
            let mut det = Scalar::zero();
            for (perm, sign) in signed_permutations(jt.len()) {
                let mut term = Scalar::from_int(sign);
                for (r, &p) in perm.iter().enumerate() {
                    term *= &ginv[(jt[r], it[p])];
                }
                det += &term;
            }
            m[(ii, jj)] = det;
        }
    }
    m
}

fn group_spot_check(sys: &System, maps: &[Matrix], seed: u64) -> Result<bool> {
    let outcomes: Vec<Result<bool>> = (0..GROUP_SPOT_CHECKS as u64)
        .into_par_iter()
        .map(|i| group_element_check(sys, maps, seed.wrapping_add(i)))
        .collect();
    for o in outcomes {
        if !o? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn group_element_check(sys: &System, maps: &[Matrix], seed: u64) -> Result<bool> {
    let n = sys.domain.n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    {
        let g = Matrix::from_rows(random_unimodular_matrix(n, &mut rng));
        let ginv = g.inverse()?;
        let rho = group_on_wedge(&ginv, &sys.wbasis);
        for beta in 0..sys.domain.dim() {
            let moved = group_on_tensor(&ginv, &sys.domain.basis[beta], &sys.tbasis, n);
            let Some(coords) = sys.domain.coordinates(&moved) else {
                return Ok(false);
            };
            for l in maps {
                let lhs = l.mul_vec(&coords);
                let col: Vec<Scalar> = (0..l.rows()).map(|i| l[(i, beta)].clone()).collect();
                let rhs = rho.mul_vec(&col);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
