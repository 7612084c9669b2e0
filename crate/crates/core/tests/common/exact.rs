//! Exact-arithmetic suites shared by the property tests and the acceptance run.
//! Each check returns a one-line summary or the first counterexample.

use newtonpoly::adapt::adapt_coordinates;
use newtonpoly::homog::factorize_homogeneous;
use newtonpoly::invariants::{augmented_polyhedron, critical_exponents, BoundaryPiece};
use newtonpoly::poly::{int, rat};
use newtonpoly::{build_polyhedron, parse_polynomial, BivariatePolynomial, ExponentPoint, Rational, Weight};
use num_traits::{One, Zero};
use rand::Rng;

use super::{planted_nonadapted, random_linear, rng};

pub type Check = Result<String, String>;

fn random_rational<R: Rng>(r: &mut R) -> Rational {
    let n: i64 = r.gen_range(-40..=40);
    let d: i64 = *[1, 1, 1, 2, 3, 7, 12].get(r.gen_range(0..7)).unwrap();
    rat(n, d)
}

/// A random sparse polynomial with exponents up to 12 and mixed-sign rational coefficients.
pub fn random_polynomial<R: Rng>(r: &mut R) -> BivariatePolynomial {
    let mut p = BivariatePolynomial::zero();
    for _ in 0..r.gen_range(1..=8) {
        let c = random_rational(r);
        p = &p + &BivariatePolynomial::term(c, r.gen_range(0..=12), r.gen_range(0..=12));
    }
    p
}

pub fn parser_round_trip(count: usize) -> Check {
    let mut r = rng(1);
    for i in 0..count {
        let p = random_polynomial(&mut r);
        let text = p.to_string();
        let back = parse_polynomial(&text).map_err(|e| format!("case {i}: {text:?} does not parse: {e}"))?;
        if back != p {
            return Err(format!("case {i}: {text:?} reparses as {back}"));
        }
    }
    Ok(format!("{count} random polynomials survive print → parse"))
}

/// `c·x₁^a·x₂^b·∏(x₂^q − λᵢx₁^p)^{nᵢ}·(x₂^{2q} + μx₁^{2p})^e` with distinct rational `λᵢ ≠ 0`.
pub fn factorization_round_trip(count: usize) -> Check {
    let mut r = rng(2);
    let ratios = [(1u32, 1u32), (2, 1), (1, 2), (3, 1), (3, 2), (2, 3)];
    for i in 0..count {
        let (p, q) = ratios[r.gen_range(0..ratios.len())];
        let (a, b) = (r.gen_range(0..=2u32), r.gen_range(0..=2u32));
        let constant = loop {
            let c = random_rational(&mut r);
            if !c.is_zero() {
                break c;
            }
        };
        let mut roots: Vec<(Rational, usize)> = Vec::new();
        while roots.len() < r.gen_range(1..=3) {
            let l = random_rational(&mut r);
            if !l.is_zero() && roots.iter().all(|(x, _)| *x != l) {
                roots.push((l, r.gen_range(1..=3)));
            }
        }
        let complex = r.gen_bool(0.3);
        let mut poly = BivariatePolynomial::term(constant.clone(), a, b);
        let mut degree_units = a * q + b * p;
        for (l, n) in &roots {
            let f = &BivariatePolynomial::term(int(1), 0, q) - &BivariatePolynomial::term(l.clone(), p, 0);
            poly = &poly * &f.pow(*n as u32);
            degree_units += p * q * *n as u32;
        }
        if complex {
            let mu = rat(r.gen_range(1..=9), r.gen_range(1..=4));
            let f = &BivariatePolynomial::term(int(1), 0, 2 * q) + &BivariatePolynomial::term(mu, 2 * p, 0);
            poly = &poly * &f;
            degree_units += 2 * p * q;
        }
        let s = rat(1, degree_units as i64);
        let kappa = Weight::new(int(q as i64) * &s, int(p as i64) * &s);
        let f = factorize_homogeneous(&poly, &kappa).map_err(|e| format!("case {i}: {poly}: {e}"))?;
        let ctx = || format!("case {i}: {poly} with κ = ({kappa})");
        if f.expand() != poly {
            return Err(format!("{}: factors multiply to {}", ctx(), f.expand()));
        }
        if (f.p, f.q) != (p, q) || (f.trivial_order1, f.trivial_order2) != (a, b) {
            return Err(format!("{}: exponents {:?}", ctx(), (f.p, f.q, f.trivial_order1, f.trivial_order2)));
        }
        let mut found: Vec<(Rational, usize)> = f
            .real_roots
            .iter()
            .map(|x| (x.rational().expect("planted roots are rational"), x.multiplicity))
            .collect();
        found.sort();
        roots.sort();
        if found != roots {
            return Err(format!("{}: real roots {found:?}, planted {roots:?}", ctx()));
        }
        let nonreal: usize = f.complex_roots.iter().map(|(_, k)| k).sum();
        if nonreal != if complex { 2 } else { 0 } {
            return Err(format!("{}: {nonreal} non-real roots", ctx()));
        }
    }
    Ok(format!("{count} planted mixed-homogeneous factorizations reproduced exactly"))
}

/// `{h, ν, hʳ, p'_c}` must not change under `x ↦ Mx` for invertible rational `M`.
pub fn linear_invariance(bases: &[BivariatePolynomial], count: usize) -> Check {
    let mut r = rng(3);
    for i in 0..count {
        let phi = &bases[i % bases.len()];
        let [a, b, c, d] = random_linear(&mut r);
        let moved = phi.linear_substitute(&a, &b, &c, &d);
        let x = critical_exponents(phi).map_err(|e| format!("{phi}: {e}"))?;
        let y = critical_exponents(&moved).map_err(|e| format!("{moved} (from {phi}): {e}"))?;
        let key = |rep: &newtonpoly::invariants::InvariantReport| {
            (
                rep.h.clone(),
                rep.nu,
                rep.r_height.as_ref().map(|r| r.value.clone()),
                rep.restriction_pc_prime.clone(),
            )
        };
        if key(&x) != key(&y) {
            return Err(format!(
                "case {i}: {phi} gives {:?} but M = [[{a}, {b}], [{c}, {d}]] gives {:?}",
                key(&x),
                key(&y)
            ));
        }
    }
    Ok(format!("{count} random linear changes leave h, ν, hʳ, p'_c unchanged"))
}

/// Each Varchenko step raises the Newton distance strictly and the last one reaches `h`.
pub fn distance_monotonicity(corpus: &[BivariatePolynomial]) -> Check {
    let mut steps = 0;
    for phi in corpus {
        let rep = critical_exponents(phi).map_err(|e| format!("{phi}: {e}"))?;
        let a = &rep.adaptation;
        let mut prev = a.normalized_verdict.distance.clone();
        if rep.d_linear < rep.d {
            return Err(format!("{phi}: linear normalization lowered d from {} to {}", rep.d, rep.d_linear));
        }
        for s in &a.step_log {
            if s.distance <= prev {
                return Err(format!("{phi}: step to {} does not exceed {prev}", s.distance));
            }
            prev = s.distance.clone();
            steps += 1;
        }
        if a.truncation.is_none() && prev != rep.h {
            return Err(format!("{phi}: final distance {prev} differs from h = {}", rep.h));
        }
        if rep.h < rep.d {
            return Err(format!("{phi}: h = {} below d = {}", rep.h, rep.d));
        }
    }
    Ok(format!("{} phases, {steps} adaptation steps, distance strictly increasing", corpus.len()))
}

fn on_piece(p: &ExponentPoint, piece: &BoundaryPiece, line: &Weight) -> bool {
    match piece {
        BoundaryPiece::PrincipalRay { end } => line.degree_at(p) == Rational::one() && p.t1 <= end.t1,
        BoundaryPiece::Segment { from, to } => {
            let cross = (&to.t1 - &from.t1) * (&p.t2 - &from.t2) - (&to.t2 - &from.t2) * (&p.t1 - &from.t1);
            cross.is_zero() && from.t1 <= p.t1 && p.t1 <= to.t1
        }
        BoundaryPiece::HorizontalRay { start } => p.t2 == start.t2 && p.t1 >= start.t1,
    }
}

/// On planted non-adapted phases, compares `max(d, max_{a_l>m} h_l)`, computed here from the
/// adapted Newton polygon, with the crossing of `t₂ = t₁ + m + 1` and the augmented boundary.
pub fn r_height_geometry(count: usize) -> Check {
    let mut r = rng(4);
    for i in 0..count {
        let phi = planted_nonadapted(&mut r);
        let rep = critical_exponents(&phi).map_err(|e| format!("case {i}: {phi}: {e}"))?;
        let a = adapt_coordinates(&phi, 64).map_err(|e| format!("case {i}: {e}"))?;
        let m = a.m().filter(|&m| m >= 2).ok_or_else(|| format!("case {i}: {phi} is linearly adaptable"))?;
        let mq = int(m as i64);
        let d = rep.d_linear.clone();
        let adapted = build_polyhedron(&a.adapted_polynomial).map_err(|e| e.to_string())?;
        let mut formula = d.clone();
        for e in adapted.edge_sequence() {
            let steep = e.slope_reciprocal.as_ref().is_none_or(|al| *al > mq);
            if steep {
                let w = &e.weight;
                let hl = (Rational::one() + &mq * &w.kappa1 - &w.kappa2) / (&w.kappa1 + &w.kappa2);
                formula = formula.max(hl);
            }
        }
        let line = a.principal_weight().ok_or("no principal line")?.clone();
        let aug = augmented_polyhedron(&a, &line).map_err(|e| format!("case {i}: {e}"))?;
        let x = &aug.intersection;
        if &x.t2 - &x.t1 != &mq + Rational::one() || !aug.boundary.iter().any(|b| on_piece(x, b, &line)) {
            return Err(format!("case {i}: {phi}: crossing {x} is not on Δ and the boundary"));
        }
        let geometric = &x.t2 - Rational::one();
        if geometric != formula {
            return Err(format!("case {i}: {phi}: formula {formula} vs geometry {geometric}"));
        }
        let hr = rep.r_height.as_ref().map(|r| r.value.clone());
        if hr.as_ref() != Some(&formula) || !(d <= formula && formula < rep.h) {
            return Err(format!("case {i}: {phi}: d = {d}, hʳ = {formula}, h = {}", rep.h));
        }
    }
    Ok(format!("{count} planted non-adapted phases: formula = geometry, d ≤ hʳ < h"))
}
