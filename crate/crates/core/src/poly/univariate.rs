//! Dense univariate polynomials over the rationals: Euclidean arithmetic,
//! square-free decomposition and Sturm-sequence real-root isolation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rational_to_f64, Rational};

/// Coefficients are stored lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`
    pub fn linear(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Order of vanishing at zero (index of the lowest nonzero coefficient).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dn = d.coeffs.len();
        if r.len() < dn {
            return (Self::zero(), self.clone());
        }
        let lc_inv = d.leading().recip();
        let mut q = vec![Rational::zero(); r.len() - dn + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dn - 1] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dn - 1);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Scales to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -1 } else { 1 };
        ints.into_iter().map(|c| c / &g * sign).collect()
    }

    /// Yun's square-free decomposition: monic square-free, pairwise coprime `aᵢ` with
    /// `self = lc · Π aᵢ^i`. Constant factors are omitted.
    pub fn square_free_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let mut c = df.exact_div(&a0);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            d = c.sub(&b.derivative());
            if a.degree() > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-Rational::one()));
        }
        seq
    }

    /// Cauchy bound: every complex root has modulus below the returned value.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let m = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    /// Isolates the real roots of a square-free polynomial in increasing order.
    pub fn isolate_real_roots(&self) -> Vec<RealRoot> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let sturm = self.sturm_sequence();
        let bound = self.root_bound();
        let mut out = Vec::new();
        let lo = -bound.clone();
        let total = sturm_count(&sturm, &lo, &bound);
        isolate(self, &sturm, lo, bound, total, &mut out);
        out
    }

    /// Rational roots of the polynomial (each listed once).
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for (factor, _) in self.square_free_decomposition() {
            for root in factor.isolate_real_roots() {
                if let Some(q) = root.as_rational(&factor) {
                    out.push(q);
                }
            }
        }
        out.sort();
        out
    }
}

fn sign_variations(sturm: &[UniPoly], x: &Rational) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for p in sturm {
        let s = p.eval(x).cmp(&Rational::zero());
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots in `(a, b]`.
fn sturm_count(sturm: &[UniPoly], a: &Rational, b: &Rational) -> usize {
    sign_variations(sturm, a).saturating_sub(sign_variations(sturm, b))
}

fn isolate(
    f: &UniPoly,
    sturm: &[UniPoly],
    lo: Rational,
    hi: Rational,
    count: usize,
    out: &mut Vec<RealRoot>,
) {
    match count {
        0 => {}
        1 => {
            if f.eval(&hi).is_zero() {
                out.push(RealRoot::Exact(hi));
            } else {
                out.push(RealRoot::Isolated { lo, hi });
            }
        }
        _ => {
            let mid = (&lo + &hi) / Rational::from_integer(2.into());
            let left = sturm_count(sturm, &lo, &mid);
            isolate(f, sturm, lo, mid.clone(), left, out);
            isolate(f, sturm, mid, hi, count - left, out);
        }
    }
}

/// A real algebraic number given exactly or by an isolating interval `(lo, hi]`
/// of its square-free defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rational),
    Isolated { lo: Rational, hi: Rational },
}

impl RealRoot {
    pub fn approx(&self) -> f64 {
        match self {
            RealRoot::Exact(q) => rational_to_f64(q),
            RealRoot::Isolated { lo, hi } => 0.5 * (rational_to_f64(lo) + rational_to_f64(hi)),
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            RealRoot::Exact(q) => Some(q),
            RealRoot::Isolated { .. } => None,
        }
    }

    /// Bisects the isolating interval of `f` until its width is at most `width`.
    pub fn refine(&self, f: &UniPoly, width: &Rational) -> RealRoot {
        let RealRoot::Isolated { lo, hi } = self else {
            return self.clone();
        };
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        let two = Rational::from_integer(2.into());
        // Endpoints other than `hi` are never roots of the square-free factor here,
        // except `lo`, which belongs to a neighbouring interval; use signs at `hi`.
        let s_hi = f.eval(&hi).cmp(&Rational::zero());
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / &two;
            let s = f.eval(&mid).cmp(&Rational::zero());
            if s == Ordering::Equal {
                return RealRoot::Exact(mid);
            }
            if s == s_hi {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        RealRoot::Isolated { lo, hi }
    }

    /// Sign of the root, refining as needed.
    pub fn signum(&self, f: &UniPoly) -> Ordering {
        match self {
            RealRoot::Exact(q) => q.cmp(&Rational::zero()),
            RealRoot::Isolated { lo, hi } => {
                if *lo >= Rational::zero() {
                    return Ordering::Greater;
                }
                if *hi <= Rational::zero() {
                    return Ordering::Less;
                }
                // 0 lies strictly inside; decide by the sign change on (lo, 0].
                let s0 = f.eval(&Rational::zero()).cmp(&Rational::zero());
                if s0 == Ordering::Equal {
                    return Ordering::Equal;
                }
                let s_hi = f.eval(hi).cmp(&Rational::zero());
                if s0 == s_hi {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    /// The root as a rational number if it is one.
    pub fn as_rational(&self, f: &UniPoly) -> Option<Rational> {
        if let RealRoot::Exact(q) = self {
            return Some(q.clone());
        }
        let ints = f.primitive_integer();
        let lead = ints.last()?.abs();
        // Rational roots have denominators dividing the leading coefficient, so
        // candidates k/lead are spaced 1/lead apart.
        let width = Rational::new(BigInt::one(), lead.clone() * 2);
        let refined = self.refine(f, &width);
        let (lo, hi) = match refined {
            RealRoot::Exact(q) => return Some(q),
            RealRoot::Isolated { lo, hi } => (lo, hi),
        };
        let lead_q = Rational::from_integer(lead.clone());
        let k = (&lo * &lead_q).floor() + Rational::one();
        let cand = k / lead_q;
        if cand > lo && cand <= hi && f.eval(&cand).is_zero() {
            Some(cand)
        } else {
            None
        }
    }
}
