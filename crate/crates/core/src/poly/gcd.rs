//! Greatest common divisors in `Q[x₁][x₂]` by primitive pseudo-remainder sequences.

use num_traits::One;

use super::{BivariatePolynomial, Rational, UniPoly};

type Rows = Vec<UniPoly>;

fn trim(mut rows: Rows) -> Rows {
    while rows.last().is_some_and(|r| r.is_zero()) {
        rows.pop();
    }
    rows
}

fn content(rows: &Rows) -> UniPoly {
    let mut acc = UniPoly::zero();
    // Rows of lowest degree first, so a constant content is usually found early.
    let mut order: Vec<&UniPoly> = rows.iter().filter(|r| !r.is_zero()).collect();
    order.sort_by_key(|r| r.degree());
    for r in order {
        acc = acc.gcd(r);
        if acc.degree() == 0 {
            return UniPoly::constant(Rational::one());
        }
    }
    acc
}

fn primitive(rows: &Rows) -> Rows {
    let c = content(rows);
    if c.is_zero() {
        return Vec::new();
    }
    let rows: Rows = rows.iter().map(|r| r.exact_div(&c)).collect();
    // Normalize the leading x₁-coefficient of the leading x₂-row to be monic.
    let lead = rows.last().map(|r| r.leading()).unwrap_or_else(Rational::one);
    rows.iter().map(|r| r.scale(&lead.recip())).collect()
}

fn pseudo_rem(a: &Rows, b: &Rows) -> Rows {
    let m = b.len() - 1;
    let lb = &b[m];
    let mut r = a.clone();
    while r.len() > m && !r.is_empty() {
        let n = r.len() - 1;
        let lr = r[n].clone();
        let shift = n - m;
        let mut next: Rows = r.iter().map(|c| c.mul(lb)).collect();
        for (j, bc) in b.iter().enumerate() {
            next[j + shift] = next[j + shift].sub(&bc.mul(&lr));
        }
        r = trim(next);
    }
    r
}

fn degree(rows: &Rows) -> usize {
    rows.len() - 1
}

/// Subresultant remainder sequence: the exact divisions by `g·h^δ` keep coefficient
/// growth linear without a content computation per step.
fn gcd_rows(a: &Rows, b: &Rows) -> Rows {
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    let c = content(a).gcd(&content(b));
    let (mut p, mut q) = (primitive(a), primitive(b));
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    let one = UniPoly::constant(Rational::one());
    let (mut g, mut h) = (one.clone(), one.clone());
    let g_rows = loop {
        if degree(&q) == 0 {
            break vec![one.clone()];
        }
        let delta = degree(&p) - degree(&q);
        let r = pseudo_rem(&p, &q);
        if r.is_empty() {
            break primitive(&q);
        }
        let div = g.mul(&h.pow(delta));
        p = q;
        q = r.iter().map(|x| x.exact_div(&div)).collect();
        g = p[degree(&p)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1)),
        };
    };
    g_rows.iter().map(|r| r.mul(&c)).collect()
}

/// Greatest common divisor over `Q`, normalized so that the leading coefficient
/// (in `x₂`, then `x₁`) is one.
pub fn gcd(a: &BivariatePolynomial, b: &BivariatePolynomial) -> BivariatePolynomial {
    let g = gcd_rows(&trim(a.coefficients_in_x2()), &trim(b.coefficients_in_x2()));
    BivariatePolynomial::from_coefficients_in_x2(&g)
}

/// `gcd(p, ∂₂p, …, ∂₂^{n-1} p)` with `x₁`-content removed. A factor of `p` with
/// multiplicity `k ≥ n` survives with multiplicity `k - n + 1`.
pub fn multiple_root_factor(p: &BivariatePolynomial, n: u32) -> BivariatePolynomial {
    let mut g = trim(p.coefficients_in_x2());
    for k in 1..n {
        if g.len() <= 1 {
            break;
        }
        let d = trim(p.partial_derivative(0, k).coefficients_in_x2());
        g = gcd_rows(&g, &d);
    }
    if g.is_empty() {
        return BivariatePolynomial::zero();
    }
    BivariatePolynomial::from_coefficients_in_x2(&primitive(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> BivariatePolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn common_factor_found() {
        let g = gcd(&p("(x2 - x1^2)^2*(x1 + x2)"), &p("(x2 - x1^2)*(x2 + 3)"));
        assert_eq!(g, p("x2 - x1^2"));
        let g = gcd(&p("x1*(x2 - x1)"), &p("x1^2*(x2 + x1)"));
        assert_eq!(g, p("x1"));
        assert_eq!(gcd(&p("x2^2 + x1"), &p("x2 + 1")), p("1"));
    }

    #[test]
    fn multiple_roots() {
        let f = p("(x2 - x1^2 + x2^2)^3 * (x2 + x1) * x1^2");
        assert_eq!(multiple_root_factor(&f, 3), p("x2^2 + x2 - x1^2"));
        assert_eq!(multiple_root_factor(&f, 2), p("x2^2 + x2 - x1^2").pow(2));
        assert!(multiple_root_factor(&f, 4).total_degree() == 0);
        let u = multiple_root_factor(&p("x2^2 + x1^3"), 2);
        assert!(u.total_degree() == 0 && !u.is_zero());
    }
}
