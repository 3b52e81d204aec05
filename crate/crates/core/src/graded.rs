//! The graded anti-commutative polynomial algebra `ℂ{u₁,…,u_m}`.
//!
//! Variables carry positive degrees and satisfy `xy = (−1)^{deg x·deg y} yx`,
//! so odd variables square to zero and even variables commute with
//! everything. Monomials are stored with variables in declaration order;
//! multiplying two of them brings the result back into that order and picks
//! up one sign per odd–odd transposition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{HoloformError, Result};
use crate::form::Form;
use crate::poly::render_sum;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GradedVariable {
    pub name: String,
    pub degree: usize,
}

/// Ordered list of variables; the order is the canonical monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    vars: Vec<GradedVariable>,
}

impl Universe {
    pub fn new(vars: Vec<GradedVariable>) -> Result<Arc<Self>> {
        if let Some(v) = vars.iter().find(|v| v.degree == 0) {
            return Err(HoloformError::InvalidSignature(format!(
                "variable `{}` has degree 0",
                v.name
            )));
        }
        let names: BTreeSet<&str> = vars.iter().map(|v| v.name.as_str()).collect();
        if names.len() != vars.len() {
            return Err(HoloformError::InvalidSignature("duplicate variable names".into()));
        }
        Ok(Arc::new(Universe { vars }))
    }

    /// `u, v` for one source form, `u1, v1, u2, v2, …` otherwise, with
    /// `deg uᵢ = pᵢ` and `deg vᵢ = pᵢ + 1`.
    pub fn for_sources(source_degrees: &[usize]) -> Result<Arc<Self>> {
        let single = source_degrees.len() == 1;
        let mut vars = Vec::with_capacity(2 * source_degrees.len());
        for (i, &p) in source_degrees.iter().enumerate() {
            let suffix = if single { String::new() } else { (i + 1).to_string() };
            vars.push(GradedVariable {
                name: format!("u{suffix}"),
                degree: p,
            });
            vars.push(GradedVariable {
                name: format!("v{suffix}"),
                degree: p + 1,
            });
        }
        Universe::new(vars)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[GradedVariable] {
        &self.vars
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    fn is_odd(&self, i: usize) -> bool {
        self.vars[i].degree % 2 == 1
    }
}

/// Exponent vector aligned with a [`Universe`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradedMonomial(pub Vec<u32>);

impl GradedMonomial {
    pub fn unit(universe: &Universe) -> Self {
        GradedMonomial(vec![0; universe.len()])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self, universe: &Universe) -> usize {
        self.0
            .iter()
            .zip(universe.vars())
            .map(|(&e, v)| e as usize * v.degree)
            .sum()
    }

    /// Whether the monomial is nonzero in the algebra (no odd square).
    pub fn is_admissible(&self, universe: &Universe) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &e)| e <= 1 || !universe.is_odd(i))
    }

    pub fn render(&self, universe: &Universe) -> Option<String> {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(universe.vars())
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| {
                if e == 1 {
                    v.name.clone()
                } else {
                    format!("{}^{}", v.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            None
        } else {
            Some(parts.join("*"))
        }
    }
}

/// Product of two canonical monomials: the canonical result and its sign, or
/// `None` if an odd variable ends up squared.
pub fn monomial_product(
    universe: &Universe,
    a: &GradedMonomial,
    b: &GradedMonomial,
) -> Option<(GradedMonomial, i64)> {
    let m = universe.len();
    let mut odd_swaps = 0u64;
    for j in 0..m {
        if b.0[j] == 0 || !universe.is_odd(j) {
            continue;
        }
        // x_j^{b_j} travels left past x_i^{a_i} for every i > j
        for i in (j + 1)..m {
            if universe.is_odd(i) {
                odd_swaps += (a.0[i] * b.0[j]) as u64;
            }
        }
    }
    let exps: Vec<u32> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
    let out = GradedMonomial(exps);
    if !out.is_admissible(universe) {
        return None;
    }
    Some((out, if odd_swaps % 2 == 0 { 1 } else { -1 }))
}

#[derive(Clone, PartialEq, Eq)]
pub struct GradedPolynomial {
    universe: Arc<Universe>,
    terms: BTreeMap<GradedMonomial, Scalar>,
}

impl GradedPolynomial {
    pub fn zero(universe: Arc<Universe>) -> Self {
        GradedPolynomial {
            universe,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(universe: Arc<Universe>, c: Scalar) -> Self {
        let unit = GradedMonomial::unit(&universe);
        let mut p = GradedPolynomial::zero(universe);
        p.add_term(unit, c);
        p
    }

    pub fn one(universe: Arc<Universe>) -> Self {
        GradedPolynomial::constant(universe, Scalar::from_int(1))
    }

    pub fn var(universe: Arc<Universe>, name: &str) -> Result<Self> {
        let pos = universe
            .position(name)
            .ok_or_else(|| HoloformError::MissingAssignment(name.to_string()))?;
        let mut e = GradedMonomial::unit(&universe);
        e.0[pos] = 1;
        Ok(GradedPolynomial::monomial(universe, e, Scalar::from_int(1)))
    }

    /// `c · m`; inadmissible monomials (odd squares) give zero.
    pub fn monomial(universe: Arc<Universe>, m: GradedMonomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), universe.len(), "monomial arity");
        let mut p = GradedPolynomial::zero(universe);
        if m.is_admissible(&p.universe) {
            p.add_term(m, c);
        }
        p
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GradedMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &GradedMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: GradedMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check_universe(&self, other: &GradedPolynomial) -> Result<()> {
        if self.universe != other.universe {
            return Err(HoloformError::UniverseMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &GradedPolynomial) -> Result<Self> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = GradedPolynomial::zero(self.universe.clone());
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// Product in the graded algebra.
    pub fn gmul(&self, other: &GradedPolynomial) -> Result<Self> {
        self.check_universe(other)?;
        let mut out = GradedPolynomial::zero(self.universe.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, sign)) = monomial_product(&self.universe, ma, mb) {
                    out.add_term(m, &(ca * cb) * &Scalar::from_int(sign));
                }
            }
        }
        Ok(out)
    }

    /// Set of degrees of the terms; empty for zero.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|m| m.degree(&self.universe)).collect()
    }

    /// Homogeneous iff at most one term degree occurs (zero counts).
    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// Replaces each variable by the form at the same position of
    /// `assignment` and products by wedges.
    ///
    /// The result has degree `degree`; pass it explicitly because the zero
    /// polynomial has no intrinsic degree. Use [`GradedPolynomial::evaluate`]
    /// when `P` is nonzero and homogeneous.
    pub fn evaluate_in_degree(&self, assignment: &[Form], degree: usize) -> Result<Form> {
        let dim = self.check_assignment(assignment)?;
        let mut out = Form::zero(dim, degree);
        // powers[i][k] = assignment[i]^{∧k}
        let mut powers: Vec<Vec<Form>> = vec![vec![Form::constant(dim, Scalar::from_int(1))]; self.universe.len()];
        for (m, c) in &self.terms {
            let md = m.degree(&self.universe);
            if md != degree {
                return Err(HoloformError::DegreeMismatch {
                    what: format!("term {}", m.render(&self.universe).unwrap_or_else(|| "1".into())),
                    expected: degree,
                    found: md,
                });
            }
            if md > dim {
                continue;
            }
            let mut value = Form::constant(dim, c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().wedge(&assignment[i])?;
                    powers[i].push(next);
                }
                value = value.wedge(&powers[i][k as usize])?;
                if value.is_zero() {
                    break;
                }
            }
            if value.is_zero() {
                continue;
            }
            out = out.try_add(&value)?;
        }
        Ok(out)
    }

    /// Evaluation of a homogeneous polynomial; the zero polynomial yields the
    /// zero 0-form.
    pub fn evaluate(&self, assignment: &[Form]) -> Result<Form> {
        let degrees = self.degrees();
        if degrees.len() > 1 {
            let mut it = degrees.iter();
            let expected = *it.next().unwrap();
            return Err(HoloformError::DegreeMismatch {
                what: "non-homogeneous polynomial".into(),
                expected,
                found: *it.next().unwrap(),
            });
        }
        self.evaluate_in_degree(assignment, degrees.into_iter().next().unwrap_or(0))
    }

    fn check_assignment(&self, assignment: &[Form]) -> Result<usize> {
        let vars = self.universe.vars();
        if assignment.len() < vars.len() {
            return Err(HoloformError::MissingAssignment(vars[assignment.len()].name.clone()));
        }
        if assignment.len() > vars.len() {
            return Err(HoloformError::ArityMismatch {
                expected: vars.len(),
                found: assignment.len(),
            });
        }
        let dim = assignment.first().map_or(1, |w| w.dim());
        for (v, w) in vars.iter().zip(assignment) {
            if w.degree() != v.degree {
                return Err(HoloformError::DegreeMismatch {
                    what: format!("variable `{}`", v.name),
                    expected: v.degree,
                    found: w.degree(),
                });
            }
            if w.dim() != dim {
                return Err(HoloformError::DimensionMismatch {
                    left: dim,
                    right: w.dim(),
                });
            }
        }
        Ok(dim)
    }

    /// Terms in display order: larger exponent sum first, then descending
    /// lexicographic exponent vector.
    pub fn display_terms(&self) -> Vec<(&GradedMonomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| basis_order(a, b));
        v
    }
}

/// Canonical basis order: larger total exponent first, ties broken by
/// descending lexicographic exponent vector.
pub fn basis_order(a: &GradedMonomial, b: &GradedMonomial) -> std::cmp::Ordering {
    let sa: u32 = a.0.iter().sum();
    let sb: u32 = b.0.iter().sum();
    sb.cmp(&sa).then_with(|| b.0.cmp(&a.0))
}

impl fmt::Display for GradedPolynomial {
    /// Plain-text rendering such as `3*u^2*v - (1+i)*v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render_sum(
            self.display_terms()
                .into_iter()
                .map(|(m, c)| (c, m.render(&self.universe))),
        );
        f.write_str(&s)
    }
}

impl fmt::Debug for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn uni(degrees: &[(&str, usize)]) -> Arc<Universe> {
        Universe::new(
            degrees
                .iter()
                .map(|(n, d)| GradedVariable {
                    name: n.to_string(),
                    degree: *d,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn sign_rules() {
        let u = uni(&[("u", 1), ("v", 2)]);
        let x = GradedPolynomial::var(u.clone(), "u").unwrap();
        let y = GradedPolynomial::var(u.clone(), "v").unwrap();
        assert_eq!(x.gmul(&y).unwrap(), y.gmul(&x).unwrap());
        assert!(x.gmul(&x).unwrap().is_zero());
        assert_eq!(y.gmul(&y).unwrap().to_string(), "v^2");

        let u = uni(&[("u1", 1), ("u2", 1)]);
        let a = GradedPolynomial::var(u.clone(), "u1").unwrap();
        let b = GradedPolynomial::var(u.clone(), "u2").unwrap();
        assert_eq!(b.gmul(&a).unwrap(), a.gmul(&b).unwrap().scale(&Scalar::from_int(-1)));
        assert_eq!(b.gmul(&a).unwrap().to_string(), "-u1*u2");
    }

    #[test]
    fn degree_sets() {
        let u = uni(&[("u", 1), ("v", 2)]);
        let x = GradedPolynomial::var(u.clone(), "u").unwrap();
        let y = GradedPolynomial::var(u.clone(), "v").unwrap();
        assert_eq!(x.gmul(&y).unwrap().degrees(), BTreeSet::from([3]));
        let s = x.try_add(&y).unwrap();
        assert_eq!(s.degrees(), BTreeSet::from([1, 2]));
        assert!(!s.is_homogeneous());
        let z = GradedPolynomial::zero(u);
        assert!(z.degrees().is_empty());
        assert!(z.is_homogeneous());
    }

    #[test]
    fn universe_mismatch() {
        let a = GradedPolynomial::one(uni(&[("u", 1)]));
        let b = GradedPolynomial::one(uni(&[("u", 2)]));
        assert_eq!(a.gmul(&b), Err(HoloformError::UniverseMismatch));
    }

    #[test]
    fn evaluation_examples() {
        let u = Universe::for_sources(&[1]).unwrap();
        let n = 3;
        let omega = Form::monomial(n, &[1], Polynomial::var(n, 0));
        let d_omega = omega.d();
        let v = GradedPolynomial::var(u.clone(), "v").unwrap();
        assert_eq!(v.evaluate(&[omega.clone(), d_omega.clone()]).unwrap(), Form::basis(n, &[0, 1]));

        let uv = GradedPolynomial::var(u.clone(), "u")
            .unwrap()
            .gmul(&v)
            .unwrap();
        // z1 dz2 ∧ dz1 ∧ dz2 = 0
        let top = Form::basis(n, &[0, 1]);
        assert!(uv.evaluate(&[omega.clone(), top]).unwrap().is_zero());
    }

    #[test]
    fn evaluation_errors() {
        let u = Universe::for_sources(&[1]).unwrap();
        let v = GradedPolynomial::var(u, "v").unwrap();
        let w = Form::dz(2, 0);
        assert!(matches!(v.evaluate(&[w.clone()]), Err(HoloformError::MissingAssignment(n)) if n == "v"));
        assert!(matches!(
            v.evaluate(&[w.clone(), w]),
            Err(HoloformError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn rendering() {
        let u = Universe::for_sources(&[1]).unwrap();
        let x = GradedPolynomial::var(u.clone(), "u").unwrap();
        let y = GradedPolynomial::var(u.clone(), "v").unwrap();
        let p = x
            .gmul(&y)
            .unwrap()
            .gmul(&y)
            .unwrap()
            .scale(&Scalar::from_int(3))
            .try_add(&y.scale(&-Scalar::gaussian(1, 1)))
            .unwrap();
        assert_eq!(p.to_string(), "3*u*v^2 - (1+i)*v");
    }
}
