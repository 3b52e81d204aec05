//! Enumeration of the natural operators
//! `Λ^{p₁} ⊕ ⋯ ⊕ Λ^{p_m} ⤳ Λ^q` on ℂⁿ.
//!
//! Every such operator is `P(ω₁, dω₁, …, ω_m, dω_m)` for a unique
//! homogeneous `P` of degree `q` in the graded algebra with
//! `deg uᵢ = pᵢ`, `deg vᵢ = pᵢ + 1`. The basis is therefore the set of
//! admissible monomials `∏ uᵢ^{aᵢ} vᵢ^{bᵢ}` with
//! `Σ aᵢpᵢ + bᵢ(pᵢ+1) = q`, where odd-degree variables appear at most once.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{HoloformError, Result};
use crate::form::Form;
use crate::graded::{basis_order, GradedMonomial, GradedPolynomial, Universe};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OperatorSignature {
    source_degrees: Vec<usize>,
    target_degree: usize,
    ambient_dim: usize,
}

impl OperatorSignature {
    pub fn new(source_degrees: Vec<usize>, target_degree: usize, ambient_dim: usize) -> Result<Self> {
        if source_degrees.is_empty() {
            return Err(HoloformError::InvalidSignature("at least one source degree is required".into()));
        }
        if source_degrees.contains(&0) {
            return Err(HoloformError::ZeroSourceDegree);
        }
        if ambient_dim == 0 {
            return Err(HoloformError::InvalidSignature("ambient dimension must be positive".into()));
        }
        if target_degree > ambient_dim {
            return Err(HoloformError::InvalidSignature(format!(
                "target degree {target_degree} exceeds the dimension {ambient_dim}"
            )));
        }
        Ok(OperatorSignature {
            source_degrees,
            target_degree,
            ambient_dim,
        })
    }

    pub fn source_degrees(&self) -> &[usize] {
        &self.source_degrees
    }

    pub fn target_degree(&self) -> usize {
        self.target_degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn universe(&self) -> Arc<Universe> {
        Universe::for_sources(&self.source_degrees).expect("degrees validated")
    }
}

/// The monomial basis for a signature, in canonical order.
#[derive(Clone, Debug)]
pub struct OperatorBasis {
    pub signature: OperatorSignature,
    pub universe: Arc<Universe>,
    pub monomials: Vec<GradedMonomial>,
}

impl OperatorBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// The basis element as a polynomial with coefficient 1.
    pub fn polynomial(&self, index: usize) -> GradedPolynomial {
        GradedPolynomial::monomial(
            self.universe.clone(),
            self.monomials[index].clone(),
            Scalar::from_int(1),
        )
    }

    pub fn polynomials(&self) -> Vec<GradedPolynomial> {
        (0..self.len()).map(|i| self.polynomial(i)).collect()
    }

    /// Rendered monomials, `1` for the empty product.
    pub fn rendered(&self) -> Vec<String> {
        self.monomials
            .iter()
            .map(|m| m.render(&self.universe).unwrap_or_else(|| "1".into()))
            .collect()
    }
}

/// All admissible exponent vectors `(a₁,b₁,…,a_m,b_m)` with
/// `Σ aᵢpᵢ + bᵢ(pᵢ+1) = q`, in canonical basis order.
pub fn solve_degree_equation(sig: &OperatorSignature) -> Vec<Vec<u32>> {
    let weights: Vec<usize> = sig
        .source_degrees
        .iter()
        .flat_map(|&p| [p, p + 1])
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(weights.len());
    solve_rec(&weights, sig.target_degree, &mut cur, &mut out);
    out.sort_by(|a, b| basis_order(&GradedMonomial(a.clone()), &GradedMonomial(b.clone())));
    out
}

fn solve_rec(weights: &[usize], remaining: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let i = cur.len();
    if i == weights.len() {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let w = weights[i];
    let cap = if w % 2 == 1 { 1 } else { remaining / w };
    for e in 0..=cap.min(remaining / w) {
        cur.push(e as u32);
        solve_rec(weights, remaining - e * w, cur, out);
        cur.pop();
    }
}

pub fn enumerate_basis(sig: &OperatorSignature) -> OperatorBasis {
    let monomials = solve_degree_equation(sig)
        .into_iter()
        .map(GradedMonomial)
        .collect();
    OperatorBasis {
        signature: sig.clone(),
        universe: sig.universe(),
        monomials,
    }
}

/// The assignment `uᵢ ↦ ωᵢ, vᵢ ↦ dωᵢ`.
pub fn jet_assignment(forms: &[Form]) -> Vec<Form> {
    forms.iter().flat_map(|w| [w.clone(), w.d()]).collect()
}

/// Evaluates `P(ω₁, dω₁, …)`. The universe of `P` must pair with the forms
/// (`deg uᵢ = deg ωᵢ`) and the forms must share one dimension.
pub fn apply_operator(p: &GradedPolynomial, forms: &[Form]) -> Result<Form> {
    let universe = p.universe();
    if universe.len() != 2 * forms.len() {
        return Err(HoloformError::ArityMismatch {
            expected: universe.len() / 2,
            found: forms.len(),
        });
    }
    if let Some(first) = forms.first() {
        if let Some(bad) = forms.iter().find(|w| w.dim() != first.dim()) {
            return Err(HoloformError::DimensionMismatch {
                left: first.dim(),
                right: bad.dim(),
            });
        }
    }
    p.evaluate(&jet_assignment(forms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn sig(p: &[usize], q: usize, n: usize) -> OperatorSignature {
        OperatorSignature::new(p.to_vec(), q, n).unwrap()
    }

    #[test]
    fn single_source_solutions() {
        assert_eq!(solve_degree_equation(&sig(&[1], 2, 4)), vec![vec![0, 1]]);
        assert_eq!(solve_degree_equation(&sig(&[1], 4, 4)), vec![vec![0, 2]]);
        assert_eq!(solve_degree_equation(&sig(&[2], 5, 5)), vec![vec![1, 1]]);
        assert_eq!(solve_degree_equation(&sig(&[1], 3, 3)), vec![vec![1, 1]]);
    }

    #[test]
    fn general_small_case() {
        let b = enumerate_basis(&sig(&[1, 1], 2, 3));
        assert_eq!(b.rendered(), vec!["u1*u2", "v1", "v2"]);
    }

    #[test]
    fn constants_for_q_zero() {
        let b = enumerate_basis(&sig(&[1], 0, 2));
        assert_eq!(b.rendered(), vec!["1"]);
    }

    #[test]
    fn signature_errors() {
        assert_eq!(
            OperatorSignature::new(vec![0], 1, 2),
            Err(HoloformError::ZeroSourceDegree)
        );
        assert!(matches!(
            OperatorSignature::new(vec![1], 3, 2),
            Err(HoloformError::InvalidSignature(_))
        ));
        let msg = HoloformError::ZeroSourceDegree.to_string();
        assert!(msg.contains("f*df"));
    }

    #[test]
    fn apply_examples() {
        let n = 3;
        let u = sig(&[1], 2, n).universe();
        let v = GradedPolynomial::var(u.clone(), "v").unwrap();
        let w = Form::monomial(n, &[1], Polynomial::var(n, 0));
        assert_eq!(apply_operator(&v, &[w.clone()]).unwrap(), Form::basis(n, &[0, 1]));

        let one = GradedPolynomial::one(u.clone());
        assert_eq!(apply_operator(&one, &[w.clone()]).unwrap(), Form::constant(n, Scalar::from_int(1)));

        let w2 = Form::dz(2, 0);
        assert!(apply_operator(&v, &[w, w2]).is_err());
    }
}
