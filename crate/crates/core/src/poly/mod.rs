//! Exact bivariate polynomials with rational coefficients.
//!
//! Polynomials are stored sparsely, keyed by exponent pair, in lexicographic
//! order of `(α₁, α₂)`. Zero coefficients are never stored, so structural
//! equality is polynomial equality.

mod gcd;
mod parse;
mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use gcd::{gcd as bivariate_gcd, multiple_root_factor};
pub use parse::{parse_polynomial, parse_polynomial_with_limit, ParseError};
pub use univariate::{RealRoot, UniPoly};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Default bound on the total degree of parsed and sheared polynomials.
pub const DEFAULT_MAX_DEGREE: u32 = 64;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Lossless `"num/den"` (or `"num"`) rendering used in reports.
pub fn rational_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge numerator or denominator: scale down by a common power of two.
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Exponent pair `(α₁, α₂)` of the monomial `x₁^α₁ x₂^α₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub e1: u32,
    pub e2: u32,
}

impl Monomial {
    pub const fn new(e1: u32, e2: u32) -> Self {
        Self { e1, e2 }
    }

    pub fn total_degree(&self) -> u32 {
        self.e1 + self.e2
    }
}

/// One term `b·x₁^m` of a shear jet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetTerm {
    pub coefficient: Rational,
    pub exponent: u32,
}

impl JetTerm {
    pub fn new(coefficient: Rational, exponent: u32) -> Self {
        assert!(!coefficient.is_zero(), "jet coefficients are nonzero");
        Self { coefficient, exponent }
    }
}

/// The univariate polynomial `Σ bₗ x₁^{mₗ}` described by a jet, as a bivariate polynomial.
pub fn jet_polynomial(jet: &[JetTerm]) -> BivariatePolynomial {
    BivariatePolynomial::from_terms(
        jet.iter()
            .map(|t| (Monomial::new(t.exponent, 0), t.coefficient.clone())),
    )
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: Rational, e1: u32, e2: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(e1, e2), c);
        }
        Self { terms }
    }

    pub fn x1() -> Self {
        Self::term(Rational::one(), 1, 0)
    }

    pub fn x2() -> Self {
        Self::term(Rational::one(), 0, 1)
    }

    /// Builds a polynomial from possibly repeated monomials; coefficients are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from small integer data `(α₁, α₂, num, den)`.
    pub fn from_small(terms: &[(u32, u32, i64, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(a, b, n, d)| (Monomial::new(a, b), rat(n, d))),
        )
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The Taylor support: all exponent pairs with nonzero coefficient.
    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, e1: u32, e2: u32) -> Rational {
        self.terms
            .get(&Monomial::new(e1, e2))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_x1(&self) -> u32 {
        self.terms.keys().map(|m| m.e1).max().unwrap_or(0)
    }

    pub fn degree_x2(&self) -> u32 {
        self.terms.keys().map(|m| m.e2).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiplies by `x₁^a x₂^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (Monomial::new(m.e1 + a, m.e2 + b), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Keeps only the terms selected by `keep`.
    pub fn filter<F>(&self, mut keep: F) -> Self
    where
        F: FnMut(&Monomial) -> bool,
    {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Exact formal derivative `∂₁^{o1} ∂₂^{o2}`.
    pub fn partial_derivative(&self, order1: u32, order2: u32) -> Self {
        let falling = |e: u32, k: u32| -> BigInt { (0..k).map(|i| BigInt::from(e - i)).product() };
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| {
            if m.e1 < order1 || m.e2 < order2 {
                return None;
            }
            let f = falling(m.e1, order1) * falling(m.e2, order2);
            Some((
                Monomial::new(m.e1 - order1, m.e2 - order2),
                c * Rational::from_integer(f),
            ))
        }))
    }

    /// Floating-point evaluation with compensated (Neumaier) summation of the terms.
    pub fn evaluate(&self, x1: f64, x2: f64) -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (m, c) in &self.terms {
            let t = rational_to_f64(c) * x1.powi(m.e1 as i32) * x2.powi(m.e2 as i32);
            let s = sum + t;
            if sum.abs() >= t.abs() {
                comp += (sum - s) + t;
            } else {
                comp += (t - s) + sum;
            }
            sum = s;
        }
        sum + comp
    }

    pub fn evaluate_exact(&self, x1: &Rational, x2: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * num_traits::pow(x1.clone(), m.e1 as usize) * num_traits::pow(x2.clone(), m.e2 as usize);
        }
        acc
    }

    /// Substitutes `x₂ ↦ q(x₁, x₂)` and `x₁ ↦ p(x₁, x₂)`.
    pub fn compose(&self, p: &Self, q: &Self) -> Self {
        let mut p_pows = vec![Self::one()];
        let mut q_pows = vec![Self::one()];
        for _ in 0..self.degree_x1() {
            let next = p_pows.last().unwrap() * p;
            p_pows.push(next);
        }
        for _ in 0..self.degree_x2() {
            let next = q_pows.last().unwrap() * q;
            q_pows.push(next);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let t = (&p_pows[m.e1 as usize] * &q_pows[m.e2 as usize]).scale(c);
            out = &out + &t;
        }
        out
    }

    /// `φ(y₁, y₂ + Σ bₗ y₁^{mₗ})`: the shear `y₂ = x₂ − ψ(x₁)` applied to `φ`.
    pub fn shear_substitute(&self, jet: &[JetTerm]) -> Self {
        if jet.is_empty() {
            return self.clone();
        }
        let q = &Self::x2() + &jet_polynomial(jet);
        self.compose(&Self::x1(), &q)
    }

    /// Like [`shear_substitute`](Self::shear_substitute) but fails when the result exceeds
    /// `max_degree`.
    pub fn shear_substitute_checked(
        &self,
        jet: &[JetTerm],
        max_degree: u32,
    ) -> Result<Self, crate::error::PolyError> {
        let bound = jet.iter().map(|t| t.exponent).max().unwrap_or(1).max(1);
        let predicted = self
            .terms
            .keys()
            .map(|m| m.e1 + m.e2 * bound)
            .max()
            .unwrap_or(0);
        if predicted > max_degree {
            let out = self.shear_substitute(jet);
            if out.total_degree() > max_degree {
                return Err(crate::error::PolyError::DegreeLimit {
                    degree: out.total_degree(),
                    limit: max_degree,
                });
            }
            return Ok(out);
        }
        Ok(self.shear_substitute(jet))
    }

    /// Shear by an arbitrary `x₁`-polynomial, discarding every term with `α₁ > max_e1`.
    pub fn shear_truncated(&self, shift: &[Rational], max_e1: u32) -> Self {
        // shift[k] is the coefficient of x₁^k.
        let trunc = |p: Self| p.filter(|m| m.e1 <= max_e1);
        let q = trunc(&Self::x2()
            + &Self::from_terms(
                shift
                    .iter()
                    .enumerate()
                    .map(|(k, c)| (Monomial::new(k as u32, 0), c.clone())),
            ));
        let mut q_pows = vec![Self::one()];
        for _ in 0..self.degree_x2() {
            let next = trunc(q_pows.last().unwrap() * &q);
            q_pows.push(next);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.e1 > max_e1 {
                continue;
            }
            let t = q_pows[m.e2 as usize].shift(m.e1, 0).scale(c);
            out = &out + &trunc(t);
        }
        out
    }

    /// Linear change of variables `x ↦ M x`, i.e. `φ(a x₁ + b x₂, c x₁ + d x₂)`.
    pub fn linear_substitute(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Self {
        let p = Self::from_terms([
            (Monomial::new(1, 0), a.clone()),
            (Monomial::new(0, 1), b.clone()),
        ]);
        let q = Self::from_terms([
            (Monomial::new(1, 0), c.clone()),
            (Monomial::new(0, 1), d.clone()),
        ]);
        self.compose(&p, &q)
    }

    /// Exchanges the roles of `x₁` and `x₂`.
    pub fn swap_variables(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.e2, m.e1), c.clone()))
                .collect(),
        }
    }

    /// Divides by `x₁^a x₂^b`; every term must be divisible.
    pub fn unshift(&self, a: u32, b: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    assert!(m.e1 >= a && m.e2 >= b, "monomial not divisible");
                    (Monomial::new(m.e1 - a, m.e2 - b), c.clone())
                })
                .collect(),
        }
    }

    /// Coefficients as polynomials in `x₁`, indexed by the power of `x₂`.
    pub fn coefficients_in_x2(&self) -> Vec<UniPoly> {
        let mut rows = vec![Vec::<Rational>::new(); self.degree_x2() as usize + 1];
        for (m, c) in &self.terms {
            let row = &mut rows[m.e2 as usize];
            if row.len() <= m.e1 as usize {
                row.resize(m.e1 as usize + 1, Rational::zero());
            }
            row[m.e1 as usize] = c.clone();
        }
        if self.is_zero() {
            return Vec::new();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_coefficients_in_x2(rows: &[UniPoly]) -> Self {
        Self::from_terms(rows.iter().enumerate().flat_map(|(j, row)| {
            row.coefficients()
                .iter()
                .enumerate()
                .map(move |(i, c)| (Monomial::new(i as u32, j as u32), c.clone()))
        }))
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (m.e1 == 0 && m.e2 == 0) {
                factors.push(rational_string(&mag));
            }
            for (name, e) in [("x1", m.e1), ("x2", m.e2)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePolynomial({self})")
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(Monomial::new(ma.e1 + mb.e1, ma.e2 + mb.e2), ca * cb);
            }
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $method(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BivariatePolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn shear_of_paper_example() {
        let phi = p("(x2 - x1^2)^2 + x1^5");
        let out = phi.shear_substitute(&[JetTerm::new(int(1), 2)]);
        assert_eq!(out, p("x2^2 + x1^5"));
    }

    #[test]
    fn shear_identity_and_linear() {
        let phi = p("(x1 + x2)^2 + x1^4");
        assert_eq!(phi.shear_substitute(&[]), phi);
        let out = phi.shear_substitute(&[JetTerm::new(int(-1), 1)]);
        assert_eq!(out, p("x2^2 + x1^4"));
    }

    #[test]
    fn shear_inverts() {
        let phi = p("x1^3*x2 - 2*x2^3 + 5/7*x1^2*x2^2 + x1^6");
        let j = [JetTerm::new(rat(3, 2), 2)];
        let back = phi.shear_substitute(&j).shear_substitute(&[JetTerm::new(rat(-3, 2), 2)]);
        assert_eq!(back, phi);
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("x1^2*x2^2").evaluate(2.0, 3.0), 36.0);
        assert_eq!(p("(x2 - x1^2)^2").evaluate(1.0, 1.0), 0.0);
        assert_eq!(
            p("x1^4 + x2^2").evaluate_exact(&rat(1, 2), &rat(1, 2)),
            rat(5, 16)
        );
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x2^2").partial_derivative(0, 1), p("2*x2"));
        assert_eq!(p("x1^2*x2^2").partial_derivative(1, 1), p("4*x1*x2"));
        assert_eq!(
            p("(x2 - x1^2)^2").partial_derivative(2, 0),
            p("-4*x2 + 12*x1^2")
        );
        let q = p("x1^3*x2^4 - x1*x2 + 7");
        assert_eq!(
            q.partial_derivative(1, 0).partial_derivative(0, 1),
            q.partial_derivative(0, 1).partial_derivative(1, 0)
        );
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("(x2 - x1^2)^2 + x1^5").to_string(), "x2^2 - 2*x1^2*x2 + x1^4 + x1^5");
        assert_eq!(p("3/2*x1 - x2^3").to_string(), "-x2^3 + 3/2*x1");
        assert_eq!(p("0*x1").to_string(), "0");
        assert_eq!(p("-7/3").to_string(), "-7/3");
    }

    #[test]
    fn truncated_shear_agrees_below_cut() {
        let phi = p("(x2 - x1^2 - x1^3)^3 + x1^2*x2^4");
        let full = phi.shear_substitute(&[JetTerm::new(int(1), 2), JetTerm::new(int(1), 3)]);
        let shift = vec![int(0), int(0), int(1), int(1)];
        let cut = phi.shear_truncated(&shift, 7);
        assert_eq!(cut, full.filter(|m| m.e1 <= 7));
    }

    #[test]
    fn coefficient_rows_roundtrip() {
        let q = p("x1^3*x2^4 - x1*x2 + 7 + x2^2");
        assert_eq!(
            BivariatePolynomial::from_coefficients_in_x2(&q.coefficients_in_x2()),
            q
        );
    }
}
