//! Floating-point evaluation of bivariate polynomials: compensated Horner for point
//! values and interval enclosures over boxes.

use num_traits::ToPrimitive;

use crate::poly::BivariatePolynomial;

/// `a + b = s + e` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// `a · b = p + e` exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Horner's rule with error-free transformations; the result is as accurate as if
/// computed in twice the working precision.
pub fn comp_horner(coeffs: &[f64], x: f64) -> f64 {
    let mut s = match coeffs.last() {
        Some(&c) => c,
        None => return 0.0,
    };
    let mut err = 0.0;
    for &c in coeffs.iter().rev().skip(1) {
        let (p, pe) = two_prod(s, x);
        let (t, se) = two_sum(p, c);
        s = t;
        err = err * x + (pe + se);
    }
    s + err
}

/// A closed interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Distance from zero, i.e. `inf |x|`.
    pub fn mig(&self) -> f64 {
        if self.lo <= 0.0 && self.hi >= 0.0 {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn scale(self, c: f64) -> Self {
        if c >= 0.0 {
            Self::new(c * self.lo, c * self.hi)
        } else {
            Self::new(c * self.hi, c * self.lo)
        }
    }

    /// `xⁿ`, tight for even powers of intervals containing zero.
    pub fn powi(self, n: u32) -> Self {
        if n == 0 {
            return Self::point(1.0);
        }
        let a = self.lo.powi(n as i32);
        let b = self.hi.powi(n as i32);
        if n % 2 == 1 || self.lo >= 0.0 {
            Self::new(a, b)
        } else if self.hi <= 0.0 {
            Self::new(b, a)
        } else {
            Self::new(0.0, a.max(b))
        }
    }

    pub fn intersect(self, o: Self) -> Self {
        let lo = self.lo.max(o.lo);
        let hi = self.hi.min(o.hi);
        if lo <= hi {
            Self::new(lo, hi)
        } else {
            // Both are valid enclosures, so an empty meet is rounding noise.
            Self::new(lo.min(hi), lo.max(hi))
        }
    }

    /// Outward widening by a relative and absolute slack to cover rounding.
    fn widen(self, slack: f64) -> Self {
        Self::new(self.lo - slack, self.hi + slack)
    }
}

impl std::ops::Add for Interval {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.lo + o.lo, self.hi + o.hi)
    }
}

impl std::ops::Mul for Interval {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        Self::new(
            c.iter().copied().fold(f64::INFINITY, f64::min),
            c.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    }
}

/// Dense `f64` copy of a bivariate polynomial, `rows[e₂][e₁]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoly {
    rows: Vec<Vec<f64>>,
    abs_sum: f64,
    degree: usize,
}

impl FloatPoly {
    pub fn from_poly(p: &BivariatePolynomial) -> Self {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        let mut abs_sum = 0.0;
        for (m, c) in p.terms() {
            let (e1, e2) = (m.e1 as usize, m.e2 as usize);
            if rows.len() <= e2 {
                rows.resize(e2 + 1, Vec::new());
            }
            if rows[e2].len() <= e1 {
                rows[e2].resize(e1 + 1, 0.0);
            }
            let v = c.to_f64().unwrap_or(0.0);
            rows[e2][e1] = v;
            abs_sum += v.abs();
        }
        Self::assemble(rows, abs_sum)
    }

    fn assemble(rows: Vec<Vec<f64>>, abs_sum: f64) -> Self {
        let degree = rows
            .iter()
            .enumerate()
            .flat_map(|(e2, row)| row.iter().enumerate().filter(|(_, &c)| c != 0.0).map(move |(e1, _)| e1 + e2))
            .max()
            .unwrap_or(0);
        Self { rows, abs_sum, degree }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&c| c == 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(e2, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0.0)
                .map(move |(e1, &c)| (e1 as u32, e2 as u32, c))
        })
    }

    /// Compensated evaluation.
    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        let mut rows = self.rows.iter().rev();
        let mut s = match rows.next() {
            Some(r) => comp_horner(r, x1),
            None => return 0.0,
        };
        let mut err = 0.0;
        for row in rows {
            let c = comp_horner(row, x1);
            let (p, pe) = two_prod(s, x2);
            let (t, se) = two_sum(p, c);
            s = t;
            err = err * x2 + (pe + se);
        }
        s + err
    }

    /// Plain Horner evaluation, for hot loops where the extra accuracy is not needed.
    pub fn eval_fast(&self, x1: f64, x2: f64) -> f64 {
        let mut acc = 0.0;
        for row in self.rows.iter().rev() {
            let mut r = 0.0;
            for &c in row.iter().rev() {
                r = r * x1 + c;
            }
            acc = acc * x2 + r;
        }
        acc
    }

    pub fn derivative(&self, o1: u32, o2: u32) -> Self {
        let mut rows = Vec::new();
        let mut abs_sum = 0.0;
        for (e2, row) in self.rows.iter().enumerate().skip(o2 as usize) {
            let mut out = Vec::new();
            for (e1, &c) in row.iter().enumerate().skip(o1 as usize) {
                let f = falling(e1 as u32, o1) * falling(e2 as u32, o2);
                out.push(c * f);
                abs_sum += (c * f).abs();
            }
            rows.push(out);
        }
        Self::assemble(rows, abs_sum)
    }

    /// Enclosure of the polynomial over the box `X₁ × X₂` by the natural extension.
    pub fn range_natural(&self, x1: Interval, x2: Interval) -> Interval {
        let mut acc = Interval::point(0.0);
        let mut x2p = Interval::point(1.0);
        for (e2, row) in self.rows.iter().enumerate() {
            if e2 > 0 {
                x2p = x2.powi(e2 as u32);
            }
            for (e1, &c) in row.iter().enumerate() {
                if c != 0.0 {
                    acc = acc + (x1.powi(e1 as u32) * x2p).scale(c);
                }
            }
        }
        acc.widen(4.0 * f64::EPSILON * self.abs_sum.max(1.0) * x1.mag().max(x2.mag()).max(1.0).powi(self.degree() as i32))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn abs_coefficient_sum(&self) -> f64 {
        self.abs_sum
    }
}

fn falling(n: u32, k: u32) -> f64 {
    (0..k).map(|i| (n - i) as f64).product()
}

/// A polynomial bundled with its first partials, for mean-value enclosures.
#[derive(Clone, Debug)]
pub struct EnclosurePoly {
    pub f: FloatPoly,
    pub d1: FloatPoly,
    pub d2: FloatPoly,
}

impl EnclosurePoly {
    pub fn new(p: &BivariatePolynomial) -> Self {
        let f = FloatPoly::from_poly(p);
        let d1 = f.derivative(1, 0);
        let d2 = f.derivative(0, 1);
        Self { f, d1, d2 }
    }

    /// Intersection of the natural and the mean-value enclosures on a box.
    pub fn range(&self, x1: Interval, x2: Interval) -> Interval {
        let natural = self.f.range_natural(x1, x2);
        let c1 = 0.5 * (x1.lo + x1.hi);
        let c2 = 0.5 * (x2.lo + x2.hi);
        let centre = self.f.eval(c1, c2);
        let g1 = self.d1.range_natural(x1, x2);
        let g2 = self.d2.range_natural(x1, x2);
        let r1 = 0.5 * x1.width();
        let r2 = 0.5 * x2.width();
        let spread = g1.mag() * r1 + g2.mag() * r2;
        let slack = 4.0 * f64::EPSILON * self.f.abs_coefficient_sum();
        let mean_value = Interval::new(centre - spread - slack, centre + spread + slack);
        natural.intersect(mean_value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn compensated_horner_beats_cancellation() {
        // (x − 1)⁸ expanded, evaluated near its root.
        let p = parse_polynomial("(x1 - 1)^8").unwrap();
        let f = FloatPoly::from_poly(&p);
        let x = 1.0 + 1e-3;
        let exact = 1e-24;
        assert!((f.eval(x, 0.0) - exact).abs() < 1e-30);
    }

    #[test]
    fn enclosures_contain_samples() {
        let p = parse_polynomial("(x2 - x1^2)^2 + x1^5 - 3*x1*x2").unwrap();
        let e = EnclosurePoly::new(&p);
        let boxes = [(-0.5, 0.1, -0.2, 0.3), (0.01, 0.02, 0.0001, 0.0002), (-1.0, 1.0, -1.0, 1.0)];
        for &(a, b, c, d) in &boxes {
            let r = e.range(Interval::new(a, b), Interval::new(c, d));
            for i in 0..=20 {
                for j in 0..=20 {
                    let x = a + (b - a) * i as f64 / 20.0;
                    let y = c + (d - c) * j as f64 / 20.0;
                    let v = e.f.eval(x, y);
                    assert!(r.lo <= v && v <= r.hi, "{v} not in {r:?}");
                }
            }
        }
    }

    #[test]
    fn derivative_matches_exact() {
        let p = parse_polynomial("x1^3*x2^2 - 2*x2 + x1").unwrap();
        let f = FloatPoly::from_poly(&p).derivative(1, 1);
        let g = FloatPoly::from_poly(&p.partial_derivative(1, 1));
        assert_eq!(f.eval(0.3, -0.7), g.eval(0.3, -0.7));
    }
}
