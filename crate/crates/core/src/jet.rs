//! The jet group `G^k₀`: `k`-jets at the origin of biholomorphism germs of
//! `ℂⁿ` fixing the origin, stored as truncated polynomial maps.
//!
//! Also provides seeded unitriangular polynomial automorphisms, which are
//! exactly invertible and need no truncation.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HoloformError, Result};
use crate::form::Form;
use crate::linalg::Matrix;
use crate::poly::{PolyMap, Polynomial};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct JetGerm {
    order: u32,
    map: PolyMap,
}

impl JetGerm {
    /// Validates: order ≥ 1, no constant terms, degrees ≤ order, invertible
    /// linear part.
    pub fn new(components: Vec<Polynomial>, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(HoloformError::InvalidGerm("jet order must be at least 1".into()));
        }
        let map = PolyMap::new(components)?;
        for (i, c) in map.components().iter().enumerate() {
            if !c.constant_term().is_zero() {
                return Err(HoloformError::InvalidGerm(format!(
                    "component {} does not fix the origin",
                    i + 1
                )));
            }
            if c.total_degree().unwrap_or(0) > order {
                return Err(HoloformError::InvalidGerm(format!(
                    "component {} has degree above the jet order {order}",
                    i + 1
                )));
            }
        }
        Matrix::from_rows(map.linear_part()).inverse()?;
        Ok(JetGerm { order, map })
    }

    /// Truncates an origin-fixing polynomial map to its `k`-jet.
    pub fn from_map(map: &PolyMap, order: u32) -> Result<Self> {
        JetGerm::new(map.components().iter().map(|c| c.truncate(order)).collect(), order)
    }

    pub fn identity(n: usize, order: u32) -> Self {
        JetGerm {
            order: order.max(1),
            map: PolyMap::identity(n),
        }
    }

    pub fn linear(matrix: &[Vec<Scalar>], order: u32) -> Result<Self> {
        JetGerm::new(PolyMap::linear(matrix)?.components().to_vec(), order)
    }

    /// The homothety `τ_λ(z) = λz`.
    pub fn scaling(lambda: &Scalar, n: usize, order: u32) -> Result<Self> {
        if lambda.is_zero() {
            return Err(HoloformError::InvalidGerm("homothety ratio must be nonzero".into()));
        }
        JetGerm::new(PolyMap::scaling(n, lambda).components().to_vec(), order)
    }

    pub fn dim(&self) -> usize {
        self.map.dim()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn as_map(&self) -> &PolyMap {
        &self.map
    }

    fn check_compatible(&self, other: &JetGerm) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(HoloformError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        if self.order != other.order {
            return Err(HoloformError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    /// `j^k(self ∘ other)`.
    pub fn compose(&self, other: &JetGerm) -> Result<JetGerm> {
        self.check_compatible(other)?;
        let components = self
            .map
            .components()
            .iter()
            .map(|c| c.compose_truncated(other.map.components(), self.order))
            .collect::<Result<Vec<_>>>()?;
        Ok(JetGerm {
            order: self.order,
            map: PolyMap::new(components)?,
        })
    }

    /// Group inverse. The linear part is inverted exactly, then
    /// `g⁻¹ ← L⁻¹(id − N∘g⁻¹)` with `N = g − L` is iterated; each pass fixes
    /// one more degree, so `k` passes suffice.
    pub fn invert(&self) -> Result<JetGerm> {
        let n = self.dim();
        let k = self.order;
        let lin = self.map.linear_part();
        let lin_inv = Matrix::from_rows(lin.clone()).inverse()?;
        let lin_inv_map = PolyMap::linear(&lin_inv.to_rows())?;
        let linear_map = PolyMap::linear(&lin)?;
        let nonlinear: Vec<Polynomial> = self
            .map
            .components()
            .iter()
            .zip(linear_map.components())
            .map(|(g, l)| g.try_add(&l.scale(&Scalar::from_int(-1))))
            .collect::<Result<_>>()?;

        let mut inv = lin_inv_map.components().to_vec();
        for _ in 0..k {
            // z − N(inv(z))
            let rhs: Vec<Polynomial> = (0..n)
                .map(|i| {
                    let ni = nonlinear[i].compose_truncated(&inv, k)?;
                    Polynomial::var(n, i).try_add(&ni.scale(&Scalar::from_int(-1)))
                })
                .collect::<Result<_>>()?;
            let next: Vec<Polynomial> = lin_inv_map
                .components()
                .iter()
                .map(|c| c.compose_truncated(&rhs, k))
                .collect::<Result<_>>()?;
            if next == inv {
                break;
            }
            inv = next;
        }
        JetGerm::new(inv, k)
    }

    /// Pullback of a form by the germ, with coefficients reduced modulo
    /// degree ≥ `k`, the part determined by a `k`-jet.
    pub fn pullback(&self, w: &Form) -> Result<Form> {
        Ok(w.pullback(&self.map)?.jet(self.order - 1))
    }
}

/// A polynomial automorphism together with its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub map: PolyMap,
    pub inverse: PolyMap,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism {
            map: PolyMap::identity(n),
            inverse: PolyMap::identity(n),
        }
    }

    /// `self.map ∘ other.map`, with inverse `other⁻¹ ∘ self⁻¹`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        Ok(Automorphism {
            map: self.map.compose(&other.map)?,
            inverse: other.inverse.compose(&self.inverse)?,
        })
    }

    /// A linear automorphism; fails on singular matrices.
    pub fn linear(matrix: &[Vec<Scalar>]) -> Result<Self> {
        let inv = Matrix::from_rows(matrix.to_vec()).inverse()?;
        Ok(Automorphism {
            map: PolyMap::linear(matrix)?,
            inverse: PolyMap::linear(&inv.to_rows())?,
        })
    }
}

/// Small Gaussian integer with parts in `-2..=2`.
pub fn small_gaussian(rng: &mut impl Rng) -> Scalar {
    Scalar::gaussian(rng.gen_range(-2..=2), rng.gen_range(-2..=2))
}

/// Random polynomial in the first `vars` of `n` variables, degrees
/// `min_degree..=max_degree`, each monomial present with probability 1/2.
fn random_poly_in(rng: &mut impl Rng, n: usize, vars: usize, min_degree: u32, max_degree: u32) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for e in exponents_up_to(vars, max_degree) {
        let d: u32 = e.iter().sum();
        if d < min_degree || !rng.gen_bool(0.5) {
            continue;
        }
        let mut full = e;
        full.resize(n, 0);
        p.add_term(full, small_gaussian(rng));
    }
    p
}

/// All exponent vectors of length `n` with total degree ≤ `max_degree`.
pub fn exponents_up_to(n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=budget {
            cur.push(e);
            rec(n, budget - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_degree, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Seeded shear `(z₁, z₂ + f₂(z₁), z₃ + f₃(z₁,z₂), …)` with random `f_i` of
/// degree `2..=max_degree` in the earlier variables, and its exact inverse
/// `w_i = z_i − f_i(w₁,…,w_{i−1})`.
pub fn random_unitriangular_automorphism(n: usize, max_degree: u32, seed: u64) -> Automorphism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shifts: Vec<Polynomial> = (0..n)
        .map(|i| {
            if i == 0 || max_degree < 2 {
                Polynomial::zero(n)
            } else {
                random_poly_in(&mut rng, n, i, 2, max_degree)
            }
        })
        .collect();
    unitriangular_from_shifts(n, &shifts)
}

/// Builds the shear with `φ_i = z_i + shifts[i]`, where `shifts[i]` only
/// involves `z₁..z_{i}` (zero-based `< i`).
pub fn unitriangular_from_shifts(n: usize, shifts: &[Polynomial]) -> Automorphism {
    let map: Vec<Polynomial> = (0..n)
        .map(|i| Polynomial::var(n, i).try_add(&shifts[i]).expect("dims agree"))
        .collect();
    let mut inverse: Vec<Polynomial> = Vec::with_capacity(n);
    for i in 0..n {
        // substitute the already-built inverse components into f_i
        let mut args: Vec<Polynomial> = inverse.clone();
        args.extend((i..n).map(|j| Polynomial::var(n, j)));
        let fi = shifts[i].compose(&args).expect("arity n");
        inverse.push(Polynomial::var(n, i).try_add(&fi.scale(&Scalar::from_int(-1))).expect("dims agree"));
    }
    Automorphism {
        map: PolyMap::new(map).expect("n components"),
        inverse: PolyMap::new(inverse).expect("n components"),
    }
}

/// Seeded invertible matrix with small Gaussian-integer entries.
pub fn random_invertible_matrix(n: usize, rng: &mut impl Rng) -> Vec<Vec<Scalar>> {
    loop {
        let m: Vec<Vec<Scalar>> = (0..n)
            .map(|_| (0..n).map(|_| small_gaussian(rng)).collect())
            .collect();
        if Matrix::from_rows(m.clone()).inverse().is_ok() {
            return m;
        }
    }
}

/// Seeded matrix `L·U·P·D` with `L`, `U` unitriangular over the small
/// Gaussian integers, `P` a permutation and `D` a diagonal of units
/// `±1, ±i`. Its determinant is a unit, so the inverse is again a
/// Gaussian-integer matrix.
pub fn random_unimodular_matrix(n: usize, rng: &mut impl Rng) -> Vec<Vec<Scalar>> {
    let units = [Scalar::from_int(1), Scalar::from_int(-1), Scalar::i(), -Scalar::i()];
    fn triangular(n: usize, rng: &mut impl Rng, lower: bool) -> Matrix {
        let mut m = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                if (lower && j < i) || (!lower && j > i) {
                    m[(i, j)] = small_gaussian(rng);
                }
            }
        }
        m
    }
    let l = triangular(n, rng, true);
    let u = triangular(n, rng, false);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut pd = Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        pd[(i, j)] = units[rng.gen_range(0..4)].clone();
    }
    l.mul(&u).and_then(|m| m.mul(&pd)).expect("square factors").to_rows()
}

/// `unitriangular ∘ linear`, both seeded from `seed`.
pub fn random_automorphism(n: usize, max_degree: u32, seed: u64) -> Automorphism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let lin = Automorphism::linear(&random_invertible_matrix(n, &mut rng)).expect("invertible");
    random_unitriangular_automorphism(n, max_degree, seed)
        .compose(&lin)
        .expect("same dimension")
}

/// Seeded random `k`-jet: invertible linear part plus random higher terms.
pub fn random_germ(n: usize, order: u32, seed: u64) -> JetGerm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lin = random_invertible_matrix(n, &mut rng);
    let linear = PolyMap::linear(&lin).expect("square");
    let components = linear
        .components()
        .iter()
        .map(|l| {
            let higher = random_poly_in(&mut rng, n, n, 2, order);
            l.try_add(&higher).expect("dims agree")
        })
        .collect();
    JetGerm::new(components, order).expect("valid by construction")
}
