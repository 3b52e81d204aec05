//! Covariant tensors with polynomial coefficients, the flat covariant
//! derivative `∇`, and skew-symmetrization `h`.
//!
//! Conventions: `∇` prepends the differentiation index,
//! `(∇T)_{i,J} = ∂T_J/∂z_i`, and `h` sums over all signed permutations
//! without dividing by `k!`:
//!
//! ```text
//! h(T)_I = Σ_{σ ∈ S_k} sgn(σ) · T_{(i_σ(1), …, i_σ(k))}
//! ```
//!
//! With these choices `h(T ⊗ T') = h(T) ∧ h(T')`, `h(ω) = q!·ω` and
//! `h(∇ω) = q!·dω` hold as literal equalities.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{HoloformError, Result};
use crate::form::{sort_with_sign, Form};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Zero-based index tuple; repeats allowed.
pub type TensorIndex = Vec<usize>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CovariantTensor {
    dim: usize,
    order: usize,
    terms: BTreeMap<TensorIndex, Polynomial>,
}

impl CovariantTensor {
    pub fn zero(dim: usize, order: usize) -> Self {
        CovariantTensor {
            dim,
            order,
            terms: BTreeMap::new(),
        }
    }

    /// The order-0 tensor `f`.
    pub fn scalar(f: Polynomial) -> Self {
        let mut t = CovariantTensor::zero(f.dim(), 0);
        t.add_term(Vec::new(), f);
        t
    }

    /// `f · dz_{j₁+1} ⊗ ⋯ ⊗ dz_{j_k+1}`.
    pub fn monomial(dim: usize, indices: &[usize], f: Polynomial) -> Self {
        assert!(indices.iter().all(|&i| i < dim), "tensor index out of range");
        let mut t = CovariantTensor::zero(dim, indices.len());
        t.add_term(indices.to_vec(), f);
        t
    }

    pub fn from_terms<I>(dim: usize, order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (TensorIndex, Polynomial)>,
    {
        let mut t = CovariantTensor::zero(dim, order);
        for (idx, f) in terms {
            assert_eq!(idx.len(), order, "index length must equal order");
            assert!(idx.iter().all(|&i| i < dim), "tensor index out of range");
            t.add_term(idx, f);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorIndex, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, indices: &[usize]) -> Polynomial {
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.dim))
    }

    fn add_term(&mut self, idx: TensorIndex, f: Polynomial) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&idx) {
            Some(old) => old.try_add(&f).expect("coefficient dims agree"),
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(idx, sum);
        }
    }

    pub fn try_add(&self, other: &CovariantTensor) -> Result<CovariantTensor> {
        if self.dim != other.dim {
            return Err(HoloformError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.order != other.order {
            return Err(HoloformError::DegreeMismatch {
                what: "sum of tensors".into(),
                expected: self.order,
                found: other.order,
            });
        }
        let mut out = self.clone();
        for (idx, f) in &other.terms {
            out.add_term(idx.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> CovariantTensor {
        let mut out = CovariantTensor::zero(self.dim, self.order);
        for (idx, f) in &self.terms {
            out.add_term(idx.clone(), f.scale(c));
        }
        out
    }

    /// `T ⊗ T'`: orders add, entries multiply.
    pub fn tensor_product(&self, other: &CovariantTensor) -> Result<CovariantTensor> {
        if self.dim != other.dim {
            return Err(HoloformError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut out = CovariantTensor::zero(self.dim, self.order + other.order);
        for (i, f) in &self.terms {
            for (j, g) in &other.terms {
                let mut idx = i.clone();
                idx.extend_from_slice(j);
                out.add_term(idx, f.try_mul(g)?);
            }
        }
        Ok(out)
    }

    /// Flat covariant derivative; the new index comes first.
    pub fn nabla(&self) -> CovariantTensor {
        let mut out = CovariantTensor::zero(self.dim, self.order + 1);
        for (idx, f) in &self.terms {
            for i in 0..self.dim {
                let df = f.partial(i);
                if df.is_zero() {
                    continue;
                }
                let mut new_idx = Vec::with_capacity(idx.len() + 1);
                new_idx.push(i);
                new_idx.extend_from_slice(idx);
                out.add_term(new_idx, df);
            }
        }
        out
    }

    /// Skew-symmetrization `h`. Order above the dimension gives the zero form.
    ///
    /// Each entry `T_J` with distinct indices contributes `sgn(σ)·T_J` to the
    /// sorted tuple, where `σ` sorts `J`; entries with a repeated index drop
    /// out. This is the signed permutation sum read column by column.
    pub fn skew_symmetrize(&self) -> Form {
        let mut out = Form::zero(self.dim, self.order);
        if self.order > self.dim {
            return out;
        }
        let mut grouped: BTreeMap<Vec<usize>, Polynomial> = BTreeMap::new();
        for (idx, f) in &self.terms {
            let mut sorted = idx.clone();
            if let Some(sign) = sort_with_sign(&mut sorted) {
                let contrib = f.scale(&Scalar::from_int(sign));
                let entry = grouped
                    .entry(sorted)
                    .or_insert_with(|| Polynomial::zero(self.dim));
                *entry = entry.try_add(&contrib).expect("dims agree");
            }
        }
        for (idx, f) in grouped {
            out = out.add(&Form::monomial(self.dim, &idx, f));
        }
        out
    }

    /// Embeds a `q`-form as the alternating tensor
    /// `T_{(j₁,…,j_q)} = sgn(σ)·ω_{sorted}` (zero on repeated indices).
    pub fn alt_embed(w: &Form) -> CovariantTensor {
        let mut out = CovariantTensor::zero(w.dim(), w.degree());
        for (idx, f) in w.terms() {
            for (perm, sign) in signed_permutations(idx.len()) {
                let permuted: Vec<usize> = perm.iter().map(|&k| idx[k]).collect();
                out.add_term(permuted, f.scale(&Scalar::from_int(sign)));
            }
        }
        out
    }
}

/// All permutations of `0..k` with their signs (Heap's algorithm).
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut out = vec![(perm.clone(), 1)];
    let mut c = vec![0usize; k];
    let mut sign = 1;
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            out.push((perm.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

impl fmt::Debug for CovariantTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CovariantTensor[n={}, k={}]{{", self.dim, self.order)?;
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            let one_based: Vec<usize> = idx.iter().map(|i| i + 1).collect();
            write!(f, "{one_based:?} => {c}")?;
        }
        f.write_str("}")
    }
}
