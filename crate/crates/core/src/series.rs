//! Truncated power series in `x₁` with rational coefficients.
//!
//! A series is a coefficient vector `s[k]` for `x₁^k`, always of length `order + 1`.

use num_traits::Zero;

use crate::poly::{BivariatePolynomial, Rational, UniPoly};

pub type Series = Vec<Rational>;

pub fn zero(order: usize) -> Series {
    vec![Rational::zero(); order + 1]
}

pub fn truncate(mut s: Series, order: usize) -> Series {
    s.resize(order + 1, Rational::zero());
    s
}

pub fn add(a: &[Rational], b: &[Rational]) -> Series {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Series {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Series {
    let order = a.len().min(b.len()) - 1;
    let mut out = zero(order);
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `1/a`; requires `a[0] ≠ 0`.
pub fn inverse(a: &[Rational]) -> Series {
    let order = a.len() - 1;
    let a0 = a[0].clone();
    assert!(!a0.is_zero(), "series is not invertible");
    let mut out = zero(order);
    out[0] = a0.recip();
    for k in 1..=order {
        let mut acc = Rational::zero();
        for j in 1..=k {
            if !a[j].is_zero() {
                acc += &a[j] * &out[k - j];
            }
        }
        out[k] = -acc / &a0;
    }
    out
}

/// `p(x₁, s(x₁)) mod x₁^{order+1}` by Horner's rule in `x₂`.
pub fn substitute(p: &BivariatePolynomial, s: &[Rational], order: usize) -> Series {
    let rows = p.coefficients_in_x2();
    let s = truncate(s.to_vec(), order);
    let mut acc = zero(order);
    for row in rows.iter().rev() {
        acc = mul(&acc, &s);
        for (k, c) in row.coefficients().iter().enumerate().take(order + 1) {
            acc[k] += c;
        }
    }
    acc
}

/// The unique series `r` with `r(0) = 0` and `f(x₁, r(x₁)) = 0`, computed by Newton
/// iteration with doubling precision. Requires `f(0,0) = 0` and `∂₂f(0,0) ≠ 0`.
pub fn implicit_root(f: &BivariatePolynomial, order: usize) -> Option<Series> {
    if !f.coeff(0, 0).is_zero() || f.coeff(0, 1).is_zero() {
        return None;
    }
    let fy = f.partial_derivative(0, 1);
    let mut r = zero(order);
    let mut prec = 1;
    while prec < order + 1 {
        prec = (2 * prec).min(order + 1);
        let p = prec - 1;
        let cur = truncate(r.clone(), p);
        let value = substitute(f, &cur, p);
        let slope = substitute(&fy, &cur, p);
        let step = mul(&value, &inverse(&slope));
        let next = sub(&cur, &step);
        r = truncate(next, order);
    }
    r[0] = Rational::zero();
    Some(r)
}

/// Index of the first nonzero coefficient.
pub fn order_of(s: &[Rational]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

/// Coefficient rows of `φ(y₁, y₂ + ψ(y₁))` for a polynomial `ψ`: entry `j` is the
/// exact coefficient of `y₂^j`, computed up to and including row `max_row`.
pub fn shear_rows(phi: &BivariatePolynomial, psi: &UniPoly, max_row: usize) -> Vec<UniPoly> {
    let rows = phi.coefficients_in_x2();
    let n = rows.len();
    let mut psi_pows = vec![UniPoly::constant(Rational::from_integer(1.into()))];
    for _ in 1..n {
        let next = psi_pows.last().unwrap().mul(psi);
        psi_pows.push(next);
    }
    let mut out = Vec::new();
    for j in 0..=max_row.min(n.saturating_sub(1)) {
        let mut acc = UniPoly::zero();
        let mut binom = Rational::from_integer(1.into());
        for (b, row) in rows.iter().enumerate().skip(j) {
            if b > j {
                binom = binom * Rational::from_integer((b as i64).into())
                    / Rational::from_integer(((b - j) as i64).into());
            }
            if row.is_zero() {
                continue;
            }
            acc = acc.add(&row.mul(&psi_pows[b - j]).scale(&binom));
        }
        out.push(acc);
    }
    out
}
