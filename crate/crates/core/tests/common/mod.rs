//! Shared inputs for the integration suites.
#![allow(dead_code)]

pub mod exact;

use newtonpoly::poly::{int, rat};
use newtonpoly::{parse_polynomial, BivariatePolynomial, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn poly(s: &str) -> BivariatePolynomial {
    parse_polynomial(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Phases with known decay rates, all in adapted or linearly adaptable form except the last.
pub const DECAY_CORPUS: &[(&str, i64, i64)] = &[
    ("x1^2+x2^2", 1, 1),
    ("x1^4+x2^2", 3, 4),
    ("x1^3+x2^3", 2, 3),
    ("(x2-x1^2)^2+x1^5", 7, 10),
];

/// The family `(x₂ − x₁^m)^n`.
pub const POWER_FAMILY: &[(u32, u32)] = &[(2, 2), (2, 3), (2, 4), (3, 2), (3, 5)];

pub fn power_family(m: u32, n: u32) -> BivariatePolynomial {
    poly(&format!("(x2-x1^{m})^{n}"))
}

/// Hand-picked inputs covering adapted, linearly adaptable and non-adapted phases.
pub fn named_corpus() -> Vec<BivariatePolynomial> {
    let mut v: Vec<BivariatePolynomial> = [
        "x1^2+x2^2",
        "x1^4+x2^2",
        "x1^3+x2^3",
        "x1^2*x2^2",
        "x1^2*x2+x2^4",
        "x1^3-3*x1*x2^2",
        "(x1-x2)^2+x1^5",
        "(x1+2*x2)^3+x2^7",
        "(x2-x1^2)^2+x1^5",
        "(x2-x1^2)^2+x1^7*x2",
        "(x2-x1^2-x1^3)^3+x1^10",
        "(x2-x1^2)^3+x1^5*x2",
        "x2^2*(x2-x1^2)^2+x1^9",
        "((x2-x1^2)^2-x1^5)^2+x1^11",
    ]
    .iter()
    .map(|s| poly(s))
    .collect();
    v.extend(POWER_FAMILY.iter().map(|&(m, n)| power_family(m, n)));
    v
}

fn small_rational<R: Rng>(r: &mut R) -> Rational {
    let mut n = r.gen_range(-5..=5);
    if n == 0 {
        n = 1;
    }
    rat(n, r.gen_range(1..=3))
}

/// `Q(x₁, x₂ − ψ(x₁))` with `ψ = c x₁^m (+ c' x₁^{m+1})` and `Q = y₂^n + a y₁^A + Σ` terms above
/// the line through `(0, n)` and `(nm, 0)`. The substitution hides the jet, so the phase is not
/// adapted in its original coordinates. Total degree stays at most 12.
pub fn planted_nonadapted<R: Rng>(r: &mut R) -> BivariatePolynomial {
    loop {
        let m: u32 = r.gen_range(2..=3);
        let n: u32 = r.gen_range(2..=3);
        let extra = n * (m + 1) <= 12 && r.gen_bool(0.4);
        let deg_psi = if extra { m + 1 } else { m };
        if n * deg_psi > 12 {
            continue;
        }
        let big_a: u32 = r.gen_range(n * m + 1..=12);
        let mut q = &BivariatePolynomial::term(int(1), 0, n) + &BivariatePolynomial::term(small_rational(r), big_a, 0);
        for _ in 0..r.gen_range(0..=2) {
            let j = r.gen_range(1..n);
            let i = r.gen_range((n - j) * m + 1..=12);
            if i + j * deg_psi <= 12 {
                q = &q + &BivariatePolynomial::term(small_rational(r), i, j);
            }
        }
        let mut psi = BivariatePolynomial::term(small_rational(r), m, 0);
        if extra {
            psi = &psi + &BivariatePolynomial::term(small_rational(r), m + 1, 0);
        }
        let y2 = &BivariatePolynomial::x2() - &psi;
        let phi = q.compose(&BivariatePolynomial::x1(), &y2);
        if !phi.is_zero() && phi.total_degree() <= 12 {
            return phi;
        }
    }
}

/// Fixed seed so every run sees the same corpus.
pub fn planted_corpus(count: usize) -> Vec<BivariatePolynomial> {
    let mut r = rng(0x9e37_79b9);
    (0..count).map(|_| planted_nonadapted(&mut r)).collect()
}

/// Named inputs followed by 50 planted non-adapted phases.
pub fn full_corpus() -> Vec<BivariatePolynomial> {
    let mut v = named_corpus();
    v.extend(planted_corpus(50));
    v
}

/// A random invertible integer matrix `[[a, b], [c, d]]` with small entries.
pub fn random_linear<R: Rng>(r: &mut R) -> [Rational; 4] {
    loop {
        let e: Vec<i64> = (0..4).map(|_| r.gen_range(-2..=2)).collect();
        if e[0] * e[3] - e[1] * e[2] != 0 {
            return [int(e[0]), int(e[1]), int(e[2]), int(e[3])];
        }
    }
}
