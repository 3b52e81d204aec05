//! Sparse multivariate polynomials over ℚ(i) and polynomial self-maps of ℂⁿ.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{HoloformError, Result};
use crate::scalar::Scalar;

/// Exponent vector `(e₁,…,eₙ)` standing for `z₁^e₁ ⋯ zₙ^eₙ`.
pub type Exponent = Vec<u32>;

/// A polynomial in `z₁,…,zₙ`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut p = Polynomial::zero(dim);
        p.add_term(vec![0; dim], c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Polynomial::constant(dim, Scalar::one())
    }

    /// The coordinate function `z_{index+1}` (indices are zero-based).
    pub fn var(dim: usize, index: usize) -> Self {
        assert!(index < dim, "variable index {index} out of range for dim {dim}");
        let mut e = vec![0; dim];
        e[index] = 1;
        Polynomial::monomial(e, Scalar::one())
    }

    pub fn monomial(exponent: Exponent, c: Scalar) -> Self {
        let mut p = Polynomial::zero(exponent.len());
        p.add_term(exponent, c);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Scalar)>,
    {
        let mut p = Polynomial::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.len(), dim, "exponent length must equal dim");
            p.add_term(e, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&vec![0; self.dim])
    }

    /// Adds `c·z^e` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, e: Exponent, c: Scalar) {
        debug_assert_eq!(e.len(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous_of(&self, s: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == s)
    }

    /// The homogeneous component of total degree `s`.
    pub fn homogeneous_part(&self, s: u32) -> Self {
        self.filter_terms(|e| e.iter().sum::<u32>() == s)
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        self.filter_terms(|e| e.iter().sum::<u32>() <= max_degree)
    }

    fn filter_terms(&self, keep: impl Fn(&Exponent) -> bool) -> Self {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_dim(&self, other: &Polynomial) -> Result<()> {
        if self.dim != other.dim {
            return Err(HoloformError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Self {
        let mut out = Polynomial::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Product truncated above total degree `max_degree`, without forming the
    /// discarded terms.
    pub fn mul_truncated(&self, other: &Polynomial, max_degree: u32) -> Self {
        let mut out = Polynomial::zero(self.dim);
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            if d1 > max_degree {
                continue;
            }
            for (e2, c2) in &other.terms {
                if d1 + e2.iter().sum::<u32>() > max_degree {
                    continue;
                }
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Polynomial::one(self.dim);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// `∂/∂z_{index+1}`.
    pub fn partial(&self, index: usize) -> Self {
        let mut out = Polynomial::zero(self.dim);
        for (e, c) in &self.terms {
            if e[index] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[index] -= 1;
            out.add_term(e2, c * &Scalar::from_int(e[index] as i64));
        }
        out
    }

    /// Substitutes `z_i ↦ args[i]`. The result lives in the variables of the
    /// arguments, which must all share one dimension.
    pub fn compose(&self, args: &[Polynomial]) -> Result<Self> {
        if args.len() != self.dim {
            return Err(HoloformError::ArityMismatch {
                expected: self.dim,
                found: args.len(),
            });
        }
        let target_dim = args.first().map_or(0, |a| a.dim);
        if let Some(bad) = args.iter().find(|a| a.dim != target_dim) {
            return Err(HoloformError::DimensionMismatch {
                left: target_dim,
                right: bad.dim,
            });
        }
        Ok(self.compose_with(args, target_dim, None))
    }

    /// Composition truncated above total degree `max_degree`.
    pub fn compose_truncated(&self, args: &[Polynomial], max_degree: u32) -> Result<Self> {
        if args.len() != self.dim {
            return Err(HoloformError::ArityMismatch {
                expected: self.dim,
                found: args.len(),
            });
        }
        let target_dim = args.first().map_or(0, |a| a.dim);
        Ok(self.compose_with(args, target_dim, Some(max_degree)))
    }

    fn compose_with(&self, args: &[Polynomial], target_dim: usize, cap: Option<u32>) -> Self {
        let mul = |a: &Polynomial, b: &Polynomial| match cap {
            Some(m) => a.mul_truncated(b, m),
            None => a.mul_unchecked(b),
        };
        // powers[i][k] = args[i]^k, filled lazily up to the largest exponent needed
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target_dim)]; self.dim];
        let mut out = Polynomial::zero(target_dim);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target_dim, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = mul(powers[i].last().unwrap(), &args[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    term = mul(&term, &powers[i][k as usize]);
                }
            }
            for (e2, c2) in term.terms {
                out.add_term(e2, c2);
            }
        }
        out
    }

    /// Sets every variable to zero.
    pub fn at_origin(&self) -> Scalar {
        self.constant_term()
    }

    /// Renders with the variable names `z1..zn`.
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Terms in display order: descending total degree, then descending
    /// lexicographic exponent.
    pub(crate) fn display_terms(&self) -> Vec<(&Exponent, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    pub(crate) fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }
}

pub(crate) fn render_monomial(e: &[u32]) -> Option<String> {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("z{}", i + 1)
            } else {
                format!("z{}^{}", i + 1, k)
            }
        })
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

/// Writes `coef*body` terms joined with ` + ` / ` - `; `body` is `None` for
/// the unit.
pub(crate) fn render_sum<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a Scalar, Option<String>)>,
{
    let mut out = String::new();
    for (idx, (c, body)) in terms.into_iter().enumerate() {
        let negative = c.has_leading_minus();
        let mag = if negative { -c } else { c.clone() };
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        match body {
            None if mag.is_real() || mag.re().is_zero() => out.push_str(&mag.to_string()),
            None => out.push_str(&format!("({mag})")),
            Some(b) if mag.is_one() => out.push_str(&b),
            Some(b) => {
                out.push_str(&mag.render_factor());
                out.push('*');
                out.push_str(&b);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render_sum(
            self.display_terms()
                .into_iter()
                .map(|(e, c)| (c, render_monomial(e))),
        );
        f.write_str(&s)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.dim, self)
    }
}

/// An `n`-tuple of polynomials in `n` variables, read as a map `ℂⁿ → ℂⁿ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMap {
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|c| c.dim() != n) {
            return Err(HoloformError::ArityMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        Ok(PolyMap { components })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap {
            components: (0..n).map(|i| Polynomial::var(n, i)).collect(),
        }
    }

    /// `z ↦ A z` with `matrix[i][j] = A_{ij}`.
    pub fn linear(matrix: &[Vec<Scalar>]) -> Result<Self> {
        let n = matrix.len();
        let mut components = Vec::with_capacity(n);
        for row in matrix {
            if row.len() != n {
                return Err(HoloformError::ArityMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            let mut p = Polynomial::zero(n);
            for (j, a) in row.iter().enumerate() {
                let mut e = vec![0; n];
                e[j] = 1;
                p.add_term(e, a.clone());
            }
            components.push(p);
        }
        Ok(PolyMap { components })
    }

    /// The homothety `z ↦ λz`.
    pub fn scaling(n: usize, lambda: &Scalar) -> Self {
        PolyMap {
            components: (0..n).map(|i| Polynomial::var(n, i).scale(lambda)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// `self ∘ inner`, i.e. `z ↦ self(inner(z))`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if self.dim() != inner.dim() {
            return Err(HoloformError::DimensionMismatch {
                left: self.dim(),
                right: inner.dim(),
            });
        }
        let components = self
            .components
            .iter()
            .map(|c| c.compose(&inner.components))
            .collect::<Result<_>>()?;
        Ok(PolyMap { components })
    }

    /// `jacobian[i][j] = ∂φ_i/∂z_j`.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial>> {
        let n = self.dim();
        self.components
            .iter()
            .map(|c| (0..n).map(|j| c.partial(j)).collect())
            .collect()
    }

    /// The linear coefficients `∂φ_i/∂z_j (0)`.
    pub fn linear_part(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        self.components
            .iter()
            .map(|c| {
                (0..n)
                    .map(|j| {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        c.coefficient(&e)
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = z(2, 0).try_add(&z(2, 0).scale(&Scalar::from_int(-1))).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn product_and_partials() {
        let p = z(2, 0).try_mul(&z(2, 1)).unwrap().pow(2); // z1²z2²
        assert_eq!(p.total_degree(), Some(4));
        let dp = p.partial(0);
        assert_eq!(dp.coefficient(&[1, 2]), Scalar::from_int(2));
        assert!(Polynomial::one(3).partial(1).is_zero());
    }

    #[test]
    fn composition_substitutes() {
        // (z1 + z1²)(z1 + z1²) truncated at 3
        let f = z(1, 0).try_add(&z(1, 0).pow(2)).unwrap();
        let full = f.compose(std::slice::from_ref(&f)).unwrap();
        assert_eq!(full.coefficient(&[4]), Scalar::one());
        let t = f.compose_truncated(std::slice::from_ref(&f), 3).unwrap();
        assert_eq!(t, full.truncate(3));
    }

    #[test]
    fn compose_arity_error() {
        let f = z(2, 0);
        assert!(matches!(
            f.compose(&[z(2, 0)]),
            Err(HoloformError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn rendering() {
        let p = Polynomial::from_terms(
            2,
            vec![
                (vec![2, 0], Scalar::from_int(3)),
                (vec![0, 1], Scalar::from_int(-1)),
                (vec![0, 0], Scalar::gaussian(1, 1)),
            ],
        );
        assert_eq!(p.to_string(), "3*z1^2 - z2 + (1+i)");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn map_composition_is_substitution() {
        let swap = PolyMap::new(vec![z(2, 1), z(2, 0)]).unwrap();
        assert_eq!(swap.compose(&swap).unwrap(), PolyMap::identity(2));
        let lam = PolyMap::scaling(2, &Scalar::from_int(2));
        assert_eq!(lam.linear_part()[0][0], Scalar::from_int(2));
    }
}
