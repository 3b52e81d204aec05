//! Holomorphic differential forms on ℂⁿ with polynomial coefficients.
//!
//! A `p`-form is stored as a map from strictly increasing index tuples
//! `I = (i₁ < … < i_p)` (zero-based) to the coefficient of
//! `dz_{i₁+1} ∧ ⋯ ∧ dz_{i_p+1}`. With coefficients truncated at total degree
//! `r` the same type represents the jet `j^r₀ω`, and a form whose coefficients
//! are homogeneous of degree `s` represents an element of `Sˢ ⊗ Λᵖ`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{HoloformError, Result};
use crate::poly::{PolyMap, Polynomial};
use crate::scalar::Scalar;

/// Strictly increasing, zero-based index tuple of a basis form.
pub type WedgeIndex = Vec<usize>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    dim: usize,
    degree: usize,
    terms: BTreeMap<WedgeIndex, Polynomial>,
}

/// Sorts `indices` in place and returns the permutation sign, or `None` when
/// an index repeats.
pub fn sort_with_sign(indices: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    // insertion sort; tuples are short
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Sign of the shuffle merging two sorted disjoint tuples, or `None` if they
/// share an index.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(WedgeIndex, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining a's
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((out, sign))
}

impl Form {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Form {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn function(f: Polynomial) -> Self {
        let mut w = Form::zero(f.dim(), 0);
        w.add_term(Vec::new(), f);
        w
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        Form::function(Polynomial::constant(dim, c))
    }

    /// `dz_{i+1}` for the zero-based index `i`.
    pub fn dz(dim: usize, i: usize) -> Self {
        Form::basis(dim, &[i])
    }

    /// `dz_{i₁+1} ∧ ⋯ ∧ dz_{i_p+1}` for indices in any order.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        Form::monomial(dim, indices, Polynomial::one(dim))
    }

    /// `f · dz_{i₁+1} ∧ ⋯` with the wedge indices in any order.
    pub fn monomial(dim: usize, indices: &[usize], f: Polynomial) -> Self {
        assert!(indices.iter().all(|&i| i < dim), "wedge index out of range");
        let mut w = Form::zero(dim, indices.len());
        let mut idx = indices.to_vec();
        if let Some(sign) = sort_with_sign(&mut idx) {
            w.add_term(idx, f.scale(&Scalar::from_int(sign)));
        }
        w
    }

    /// Builds from `(indices, coefficient)` pairs; indices may be unsorted.
    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial)>,
    {
        let mut w = Form::zero(dim, degree);
        for (idx, f) in terms {
            assert_eq!(idx.len(), degree, "index tuple length must equal degree");
            w = w.add(&Form::monomial(dim, &idx, f));
        }
        w
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeIndex, &Polynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, indices: &[usize]) -> Polynomial {
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.dim))
    }

    /// Adds `f · dz_I` for a sorted tuple `I`.
    fn add_term(&mut self, idx: WedgeIndex, f: Polynomial) {
        debug_assert_eq!(idx.len(), self.degree);
        if f.is_zero() || self.degree > self.dim {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().try_add(&f).expect("coefficient dims agree");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_same(&self, other: &Form) -> Result<()> {
        if self.dim != other.dim {
            return Err(HoloformError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.degree != other.degree {
            return Err(HoloformError::DegreeMismatch {
                what: "sum of forms".into(),
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Form) -> Result<Form> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (idx, f) in &other.terms {
            out.add_term(idx.clone(), f.clone());
        }
        Ok(out)
    }

    /// Panics on mismatched dimension or degree; see [`Form::try_add`].
    pub fn add(&self, other: &Form) -> Form {
        self.try_add(other).expect("adding incompatible forms")
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        self.map_coefficients(|f| f.scale(c))
    }

    /// Multiplies every coefficient by the function `g`.
    pub fn mul_function(&self, g: &Polynomial) -> Result<Form> {
        if g.dim() != self.dim {
            return Err(HoloformError::DimensionMismatch {
                left: self.dim,
                right: g.dim(),
            });
        }
        Ok(self.map_coefficients(|f| f.try_mul(g).expect("dims checked")))
    }

    fn map_coefficients(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Form {
        let mut out = Form::zero(self.dim, self.degree);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), f(c));
        }
        out
    }

    /// Exterior product. The result has degree `deg a + deg b` and is zero
    /// once that exceeds the ambient dimension.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        if self.dim != other.dim {
            return Err(HoloformError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut out = Form::zero(self.dim, self.degree + other.degree);
        if out.degree > self.dim {
            return Ok(out);
        }
        for (i, f) in &self.terms {
            for (j, g) in &other.terms {
                if let Some((idx, sign)) = merge_sign(i, j) {
                    let coef = f.try_mul(g)?;
                    out.add_term(idx, coef.scale(&Scalar::from_int(sign)));
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative `d`.
    pub fn d(&self) -> Form {
        let mut out = Form::zero(self.dim, self.degree + 1);
        for (idx, f) in &self.terms {
            for j in 0..self.dim {
                let df = f.partial(j);
                if df.is_zero() {
                    continue;
                }
                // dz_j ∧ dz_I
                if let Some((merged, sign)) = merge_sign(&[j], idx) {
                    out.add_term(merged, df.scale(&Scalar::from_int(sign)));
                }
            }
        }
        out
    }

    /// Pullback `φ*ω`: coefficients are composed with `φ` and each `dz_i`
    /// becomes `Σ_j ∂φ_i/∂z_j dz_j`.
    pub fn pullback(&self, phi: &PolyMap) -> Result<Form> {
        if phi.dim() != self.dim {
            return Err(HoloformError::ArityMismatch {
                expected: self.dim,
                found: phi.dim(),
            });
        }
        let n = self.dim;
        let jac = phi.jacobian();
        let differentials: Vec<Form> = jac
            .iter()
            .map(|row| {
                let mut w = Form::zero(n, 1);
                for (j, c) in row.iter().enumerate() {
                    w.add_term(vec![j], c.clone());
                }
                w
            })
            .collect();
        let mut out = Form::zero(n, self.degree);
        for (idx, f) in &self.terms {
            let mut piece = Form::function(f.compose(phi.components())?);
            for &i in idx {
                piece = piece.wedge(&differentials[i])?;
                if piece.is_zero() {
                    break;
                }
            }
            out = out.add(&piece);
        }
        Ok(out)
    }

    /// Pullback by the homothety `z ↦ λz`: the term `z^e dz_I` picks up
    /// `λ^{|e| + |I|}`. Agrees with `pullback(&PolyMap::scaling(n, λ))`.
    pub fn pullback_homothety(&self, lambda: &Scalar) -> Form {
        let p = self.degree as u32;
        self.map_coefficients(|f| {
            Polynomial::from_terms(
                f.dim(),
                f.terms()
                    .map(|(e, c)| (e.clone(), c * &lambda.pow(e.iter().sum::<u32>() + p))),
            )
        })
    }

    /// The homogeneous Taylor component of order `s` at the origin:
    /// every coefficient keeps only its total-degree-`s` part.
    pub fn taylor_component(&self, s: u32) -> Form {
        self.map_coefficients(|f| f.homogeneous_part(s))
    }

    /// The jet `j^r₀ω`: coefficients truncated above total degree `r`.
    pub fn jet(&self, r: u32) -> Form {
        self.map_coefficients(|f| f.truncate(r))
    }

    /// Largest coefficient degree, `None` for the zero form.
    pub fn coefficient_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(|f| f.total_degree()).max()
    }

    /// The value `ω₀` at the origin, as a form with constant coefficients.
    pub fn at_origin(&self) -> Form {
        self.taylor_component(0)
    }
}

impl fmt::Display for Form {
    /// `z1*dz2 + (1+i)*dz1 /\ dz3`; the zero form of any degree prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            let c = self
                .terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(|| Polynomial::zero(self.dim));
            return write!(f, "{c}");
        }
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            let basis = idx
                .iter()
                .map(|i| format!("dz{}", i + 1))
                .collect::<Vec<_>>()
                .join(" /\\ ");
            let mut coef = c.to_string();
            let mut negative = false;
            if c.is_single_term() {
                if let Some(stripped) = coef.strip_prefix('-') {
                    negative = true;
                    coef = stripped.to_string();
                }
            } else {
                coef = format!("({coef})");
            }
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if coef != "1" {
                out.push_str(&coef);
                out.push('*');
            }
            out.push_str(&basis);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[n={}, p={}]({})", self.dim, self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn wedge_basics() {
        let n = 3;
        let e12 = Form::dz(n, 0).wedge(&Form::dz(n, 1)).unwrap();
        assert_eq!(e12, Form::basis(n, &[0, 1]));
        assert!(Form::dz(n, 0).wedge(&Form::dz(n, 0)).unwrap().is_zero());

        let a = Form::monomial(n, &[1], z(n, 0));
        let b = Form::basis(n, &[0, 2]);
        let expected = Form::monomial(n, &[0, 1, 2], z(n, 0).scale(&Scalar::from_int(-1)));
        assert_eq!(a.wedge(&b).unwrap(), expected);
    }

    #[test]
    fn wedge_dimension_mismatch() {
        assert!(matches!(
            Form::dz(2, 0).wedge(&Form::dz(3, 0)),
            Err(HoloformError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn wedge_past_top_degree_is_zero() {
        let top = Form::basis(2, &[0, 1]);
        let w = top.wedge(&Form::dz(2, 0)).unwrap();
        assert_eq!(w.degree(), 3);
        assert!(w.is_zero());
    }

    #[test]
    fn exterior_derivative_examples() {
        let n = 3;
        let w = Form::monomial(n, &[1], z(n, 0));
        assert_eq!(w.d(), Form::basis(n, &[0, 1]));
        assert!(Form::dz(n, 0).d().is_zero());

        let w = Form::monomial(n, &[2], z(n, 0).try_mul(&z(n, 1)).unwrap());
        let expected = Form::monomial(n, &[0, 2], z(n, 1)).add(&Form::monomial(n, &[1, 2], z(n, 0)));
        assert_eq!(w.d(), expected);
    }

    #[test]
    fn pullback_examples() {
        let swap = PolyMap::new(vec![z(2, 1), z(2, 0)]).unwrap();
        assert_eq!(Form::dz(2, 0).pullback(&swap).unwrap(), Form::dz(2, 1));

        let tau = PolyMap::scaling(2, &Scalar::from_int(2));
        let top = Form::basis(2, &[0, 1]);
        assert_eq!(top.pullback(&tau).unwrap(), top.scale(&Scalar::from_int(4)));

        let shear = PolyMap::new(vec![z(2, 0), z(2, 1).try_add(&z(2, 0).pow(2)).unwrap()]).unwrap();
        let expected = Form::dz(2, 1).add(&Form::monomial(2, &[0], z(2, 0).scale(&Scalar::from_int(2))));
        assert_eq!(Form::dz(2, 1).pullback(&shear).unwrap(), expected);
    }

    #[test]
    fn pullback_arity_mismatch() {
        assert!(matches!(
            Form::dz(3, 0).pullback(&PolyMap::identity(2)),
            Err(HoloformError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn taylor_components() {
        let n = 2;
        let w = Form::monomial(n, &[1], z(n, 0)).add(&Form::dz(n, 0));
        assert_eq!(w.taylor_component(0), Form::dz(n, 0));
        assert_eq!(w.taylor_component(1), Form::monomial(n, &[1], z(n, 0)));
        assert!(Form::dz(n, 0).taylor_component(3).is_zero());
    }

    #[test]
    fn merge_sign_counts_shuffles() {
        assert_eq!(merge_sign(&[1], &[0]), Some((vec![0, 1], -1)));
        assert_eq!(merge_sign(&[0, 2], &[1, 3]), Some((vec![0, 1, 2, 3], -1)));
        assert_eq!(merge_sign(&[1, 2], &[0]), Some((vec![0, 1, 2], 1)));
        assert_eq!(merge_sign(&[1], &[1]), None);
    }

    #[test]
    fn display() {
        let n = 3;
        let w = Form::monomial(n, &[1], z(n, 0).scale(&Scalar::from_int(-1)))
            .add(&Form::monomial(n, &[2], z(n, 0).try_add(&z(n, 1)).unwrap()));
        assert_eq!(w.to_string(), "-z1*dz2 + (z1 + z2)*dz3");
        assert_eq!(Form::basis(3, &[0, 1]).to_string(), "dz1 /\\ dz2");
        assert_eq!(Form::zero(3, 2).to_string(), "0");
    }
}
