//! Factorization of κ-homogeneous polynomials into
//! `c·x₁^{ν₁}·x₂^{ν₂}·∏(x₂^q − λ x₁^p)^{n}` and the derived circle order and
//! homogeneous height.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::FactorError;
use crate::newton::{is_kappa_homogeneous, Weight};
use crate::poly::{rat, BivariatePolynomial, Monomial, Rational, RealRoot, UniPoly};

/// Width below which isolating intervals of real roots are refined.
fn isolation_width() -> Rational {
    rat(1, 1 << 32)
}

/// A real root `λ` of the reduced univariate polynomial, with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorRoot {
    pub root: RealRoot,
    /// Monic square-free factor whose root this is.
    pub defining: UniPoly,
    pub multiplicity: usize,
}

impl FactorRoot {
    pub fn approx(&self) -> f64 {
        self.root.approx()
    }

    pub fn rational(&self) -> Option<Rational> {
        self.root.as_rational(&self.defining)
    }

    pub fn sign(&self) -> Ordering {
        self.root.signum(&self.defining)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousFactorization {
    pub constant: Rational,
    pub trivial_order1: u32,
    pub trivial_order2: u32,
    pub p: u32,
    pub q: u32,
    pub real_roots: Vec<FactorRoot>,
    /// `(multiplicity, number of non-real roots with it)`; conjugate pairs counted twice.
    pub complex_roots: Vec<(usize, usize)>,
    /// Square-free decomposition `R = c·∏ Sₖ^k` of the reduced polynomial in `t = x₂^q/x₁^p`.
    pub square_free: Vec<(UniPoly, usize)>,
}

impl HomogeneousFactorization {
    /// Multiplies the factors back together.
    pub fn expand(&self) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::term(
            self.constant.clone(),
            self.trivial_order1,
            self.trivial_order2,
        );
        for (s, k) in &self.square_free {
            let h = homogenize(s, self.p, self.q);
            out = &out * &h.pow(*k as u32);
        }
        out
    }

    /// Total multiplicity of real roots of `R`.
    pub fn real_root_count(&self) -> usize {
        self.real_roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Degree of `R` in `t`, i.e. the number of roots with multiplicity.
    pub fn root_degree(&self) -> usize {
        self.square_free.iter().map(|(s, k)| s.degree() * k).sum()
    }

    /// Whether the curve `x₂^q = λ x₁^p` meets the unit circle at a real point.
    pub fn has_circle_zero(&self, root: &FactorRoot) -> bool {
        if self.q % 2 == 1 {
            return true;
        }
        match root.sign() {
            Ordering::Greater => true,
            Ordering::Less => self.p % 2 == 1,
            Ordering::Equal => false,
        }
    }
}

/// `x₁^{p·deg s} s(x₂^q / x₁^p)`.
fn homogenize(s: &UniPoly, p: u32, q: u32) -> BivariatePolynomial {
    let n = s.degree() as u32;
    BivariatePolynomial::from_terms(
        s.coefficients()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (Monomial::new(p * (n - j as u32), q * j as u32), c.clone())),
    )
}

/// Reduced `(p, q)` with `p/q = κ₂/κ₁`.
fn exponent_ratio(kappa: &Weight) -> Result<(u32, u32), FactorError> {
    if kappa.kappa1.is_zero() {
        return Err(FactorError::DegenerateWeight);
    }
    let a = &kappa.kappa2 / &kappa.kappa1;
    let p = a.numer().to_u32().expect("small exponent ratio");
    let q = a.denom().to_u32().expect("small exponent ratio");
    let g = p.gcd(&q).max(1);
    Ok((p / g, q / g))
}

pub fn factorize_homogeneous(
    poly: &BivariatePolynomial,
    kappa: &Weight,
) -> Result<HomogeneousFactorization, FactorError> {
    if poly.is_zero() {
        return Err(FactorError::Zero);
    }
    if !is_kappa_homogeneous(poly, kappa) {
        return Err(FactorError::NotHomogeneous(kappa.to_string()));
    }
    let (p, q) = exponent_ratio(kappa)?;
    let nu1 = poly.terms().map(|(m, _)| m.e1).min().unwrap();
    let nu2 = poly.terms().map(|(m, _)| m.e2).min().unwrap();
    let reduced = poly.unshift(nu1, nu2);
    // After removing the axis powers every term is x₁^{p(N-j)} x₂^{qj}.
    let n_top = reduced.terms().map(|(m, _)| m.e2 / q).max().unwrap() as usize;
    let mut coeffs = vec![Rational::zero(); n_top + 1];
    for (m, c) in reduced.terms() {
        debug_assert_eq!(m.e2 % q, 0);
        coeffs[(m.e2 / q) as usize] = c.clone();
    }
    let r = UniPoly::new(coeffs);
    let constant = r.leading();
    let square_free = r.square_free_decomposition();

    let mut real_roots = Vec::new();
    let mut complex_roots = Vec::new();
    for (s, k) in &square_free {
        let roots = s.isolate_real_roots();
        let complex = s.degree() - roots.len();
        if complex > 0 {
            complex_roots.push((*k, complex));
        }
        for root in roots {
            let root = match root.as_rational(s) {
                Some(x) => RealRoot::Exact(x),
                None => root.refine(s, &isolation_width()),
            };
            real_roots.push(FactorRoot {
                root,
                defining: s.clone(),
                multiplicity: *k,
            });
        }
    }
    Ok(HomogeneousFactorization {
        constant,
        trivial_order1: nu1,
        trivial_order2: nu2,
        p,
        q,
        real_roots,
        complex_roots,
        square_free,
    })
}

/// Maximal order of vanishing on the unit circle of a κ-homogeneous polynomial.
pub fn circle_order_of(f: &HomogeneousFactorization) -> u32 {
    let mut m = f.trivial_order1.max(f.trivial_order2);
    for root in &f.real_roots {
        if f.has_circle_zero(root) {
            m = m.max(root.multiplicity as u32);
        }
    }
    m
}

pub fn circle_order(poly: &BivariatePolynomial, kappa: &Weight) -> Result<u32, FactorError> {
    Ok(circle_order_of(&factorize_homogeneous(poly, kappa)?))
}

/// `h(P) = max(m(P), 1/(κ₁+κ₂))`.
pub fn homogeneous_height(poly: &BivariatePolynomial, kappa: &Weight) -> Result<Rational, FactorError> {
    let m = Rational::from_integer(circle_order(poly, kappa)?.into());
    Ok(m.max(kappa.homogeneous_distance()))
}

/// Roots of the factorization with multiplicity strictly above `bound`.
pub fn roots_above<'a>(f: &'a HomogeneousFactorization, bound: &Rational) -> Vec<(&'a UniPoly, usize)> {
    f.square_free
        .iter()
        .filter(|(_, k)| Rational::from_integer((*k as i64).into()) > *bound)
        .map(|(s, k)| (s, *k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_polynomial};

    fn poly(s: &str) -> BivariatePolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn factorization_examples() {
        let f = factorize_homogeneous(&poly("(x2 - x1^2)^2"), &Weight::new(rat(1, 4), rat(1, 2))).unwrap();
        assert_eq!(f.constant, int(1));
        assert_eq!((f.trivial_order1, f.trivial_order2, f.p, f.q), (0, 0, 2, 1));
        assert_eq!(f.real_roots.len(), 1);
        assert_eq!(f.real_roots[0].rational(), Some(int(1)));
        assert_eq!(f.real_roots[0].multiplicity, 2);

        let f = factorize_homogeneous(&poly("x1^2*x2^2"), &Weight::new(rat(1, 4), rat(1, 4))).unwrap();
        assert_eq!((f.trivial_order1, f.trivial_order2), (2, 2));
        assert!(f.real_roots.is_empty() && f.complex_roots.is_empty());

        let f = factorize_homogeneous(&poly("x2^3 - x1^2*x2"), &Weight::new(rat(1, 3), rat(1, 3))).unwrap();
        assert_eq!((f.trivial_order1, f.trivial_order2, f.p, f.q), (0, 1, 1, 1));
        let mut roots: Vec<_> = f.real_roots.iter().map(|r| (r.rational().unwrap(), r.multiplicity)).collect();
        roots.sort();
        assert_eq!(roots, vec![(int(-1), 1), (int(1), 1)]);
    }

    #[test]
    fn errors() {
        let w = Weight::new(rat(1, 4), rat(1, 2));
        assert_eq!(
            factorize_homogeneous(&poly("x2^2 + x1^5"), &w),
            Err(FactorError::NotHomogeneous(w.to_string()))
        );
        assert_eq!(
            factorize_homogeneous(&poly("x2^2"), &Weight::new(int(0), rat(1, 2))),
            Err(FactorError::DegenerateWeight)
        );
        assert_eq!(factorize_homogeneous(&BivariatePolynomial::zero(), &w), Err(FactorError::Zero));
    }

    #[test]
    fn circle_orders_and_heights() {
        let w = Weight::new(rat(1, 4), rat(1, 2));
        assert_eq!(circle_order(&poly("(x2 - x1^2)^2"), &w), Ok(2));
        assert_eq!(circle_order(&poly("x1^4 + x2^2"), &w), Ok(0));
        assert_eq!(circle_order(&poly("x2^3 - x1^2*x2"), &Weight::new(rat(1, 3), rat(1, 3))), Ok(1));
        assert_eq!(homogeneous_height(&poly("(x2 - x1^2)^2"), &w), Ok(int(2)));
        assert_eq!(homogeneous_height(&poly("x1^4 + x2^2"), &w), Ok(rat(4, 3)));
        assert_eq!(
            homogeneous_height(&poly("x1^2*x2^2"), &Weight::new(rat(1, 4), rat(1, 4))),
            Ok(int(2))
        );
    }

    #[test]
    fn sign_rule_all_cases() {
        // Coprime p, q: an even q forces an odd p, so every real λ gives a zero.
        // κ₂/κ₁ = 3/2: p = 3, q = 2.
        let w = Weight::new(rat(1, 6), rat(1, 4));
        assert_eq!(circle_order(&poly("(x2^2 - x1^3)^2"), &w), Ok(2));
        assert_eq!(circle_order(&poly("(x2^2 + x1^3)^2"), &w), Ok(2));
        // p = 1, q = 2: x₂² = λ x₁.
        let w = Weight::new(rat(1, 3), rat(1, 6));
        assert_eq!(circle_order(&poly("(x2^2 - x1)^3"), &w), Ok(3));
        assert_eq!(circle_order(&poly("(x2^2 + x1)^3"), &w), Ok(3));
        // q odd always meets the circle, for either sign.
        let w = Weight::new(rat(1, 6), rat(1, 3));
        assert_eq!(circle_order(&poly("(x2 + x1^2)^3"), &w), Ok(3));
        assert_eq!(circle_order(&poly("(x2 - x1^2)^3"), &w), Ok(3));
    }

    #[test]
    fn irrational_roots_are_isolated() {
        let w = Weight::new(rat(1, 4), rat(1, 2));
        let f = factorize_homogeneous(&poly("x2^2 - 2*x1^4"), &w).unwrap();
        assert_eq!(f.real_roots.len(), 2);
        for r in &f.real_roots {
            assert!(r.rational().is_none());
            assert!((r.approx().abs() - 2f64.sqrt()).abs() < 1e-9);
        }
        assert_eq!(f.expand(), poly("x2^2 - 2*x1^4"));
    }
}
