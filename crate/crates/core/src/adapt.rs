//! Adaptedness, linear normalization and Varchenko's algorithm.
//!
//! The algorithm repeatedly shears `y₂ = x₂ − b x₁^m` along the unique real root
//! of the principal part whose multiplicity exceeds the Newton distance. Shears
//! never lower `α₁`, so the loop keeps every intermediate polynomial truncated to
//! `α₁ ≤ T` and verifies exactly that the truncation cannot change the polyhedron.
//!
//! When the principal root follows a branch `x₂ = r(x₁)` of the phase that is an
//! exact multiple factor but not a polynomial, the classical loop never ends. In
//! that case the shear along the whole branch is computed as a power series and
//! the limiting polyhedron, which is then known exactly, is used instead.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use crate::error::AdaptError;
use crate::homog::{circle_order_of, factorize_homogeneous, HomogeneousFactorization};
use crate::newton::{build_polyhedron, principal_part, Face, FaceKind, PrincipalFace, Weight};
use crate::poly::{multiple_root_factor, BivariatePolynomial, JetTerm, Rational, UniPoly};
use crate::series;

pub const DEFAULT_MAX_STEPS: usize = 64;

/// Initial `α₁` truncation for intermediate polynomials.
const INITIAL_TRUNCATION: u32 = 64;
/// Largest `α₁` truncation before giving up.
const MAX_TRUNCATION: u32 = 4096;
/// Series order used first when following a non-polynomial branch.
const INITIAL_BRANCH_ORDER: usize = 24;
const MAX_BRANCH_ORDER: usize = 768;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdaptCondition {
    /// Compact principal edge with `m(φ_pr) ≤ d`.
    A,
    /// Principal face is a vertex.
    B,
    /// Principal face is an unbounded edge.
    C,
    None,
}

impl AdaptCondition {
    pub fn as_str(&self) -> &'static str {
        match self {
            AdaptCondition::A => "a",
            AdaptCondition::B => "b",
            AdaptCondition::C => "c",
            AdaptCondition::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptednessVerdict {
    pub adapted: bool,
    pub condition: AdaptCondition,
    pub principal_face: Face,
    pub distance: Rational,
    pub circle_order: Option<u32>,
    /// Set when a compact principal edge has `κ₁ > κ₂`.
    pub swap: bool,
}

impl AdaptednessVerdict {
    pub fn weight(&self) -> Option<&Weight> {
        match self.principal_face.kind {
            FaceKind::CompactEdge => self.principal_face.weight.as_ref(),
            _ => None,
        }
    }
}

fn require_finite_type(phi: &BivariatePolynomial) -> Result<(), AdaptError> {
    if phi.is_zero() {
        return Err(AdaptError::NotFiniteType("the phase is identically zero".into()));
    }
    if let Some((m, _)) = phi.terms().find(|(m, _)| m.total_degree() < 2) {
        let what = if m.total_degree() == 0 {
            "nonzero constant term"
        } else {
            "nonzero linear term"
        };
        return Err(AdaptError::NotFiniteType(what.into()));
    }
    Ok(())
}

/// Verdict on an arbitrary nonzero polynomial, without the finite-type precondition.
pub(crate) fn verdict_of(phi: &BivariatePolynomial) -> Result<AdaptednessVerdict, AdaptError> {
    let poly = build_polyhedron(phi)?;
    let pf = poly.principal_face();
    verdict_from_face(phi, pf)
}

fn verdict_from_face(phi: &BivariatePolynomial, pf: PrincipalFace) -> Result<AdaptednessVerdict, AdaptError> {
    let PrincipalFace { face, distance, swap } = pf;
    let (adapted, condition, circle_order) = match face.kind {
        FaceKind::Vertex => (true, AdaptCondition::B, None),
        FaceKind::UnboundedHorizontal | FaceKind::UnboundedVertical => (true, AdaptCondition::C, None),
        FaceKind::CompactEdge => {
            let w = face.weight.as_ref().expect("compact edge weight");
            let part = principal_part(phi, &PrincipalFace {
                face: face.clone(),
                distance: distance.clone(),
                swap,
            });
            let m = circle_order_of(&factorize_homogeneous(&part, w)?);
            let ok = Rational::from_integer(m.into()) <= distance;
            (ok, if ok { AdaptCondition::A } else { AdaptCondition::None }, Some(m))
        }
    };
    Ok(AdaptednessVerdict {
        adapted,
        condition,
        principal_face: face,
        distance,
        circle_order,
        swap,
    })
}

pub fn check_adapted(phi: &BivariatePolynomial) -> Result<AdaptednessVerdict, AdaptError> {
    require_finite_type(phi)?;
    verdict_of(phi)
}

/// The root `λ` of the principal part with multiplicity above `d`, for a compact
/// principal edge with integer `m = κ₂/κ₁`. Returns `(λ, m, multiplicity, factorization)`.
fn principal_root(
    phi: &BivariatePolynomial,
    verdict: &AdaptednessVerdict,
) -> Result<(Rational, u32, usize, HomogeneousFactorization), AdaptError> {
    let w = verdict.weight().ok_or(AdaptError::NoPrincipalRoot)?;
    let a = w
        .slope_reciprocal()
        .ok_or_else(|| AdaptError::Unsupported("principal edge has κ₁ = 0".into()))?;
    if !a.is_integer() {
        return Err(AdaptError::Unsupported(format!(
            "principal edge has non-integral κ₂/κ₁ = {a} but is not adapted"
        )));
    }
    let m = a.to_integer().to_u32().expect("small exponent");
    let pf = PrincipalFace {
        face: verdict.principal_face.clone(),
        distance: verdict.distance.clone(),
        swap: verdict.swap,
    };
    let part = principal_part(phi, &pf);
    let f = factorize_homogeneous(&part, w)?;
    let d = &verdict.distance;
    let candidates: Vec<&(UniPoly, usize)> = f
        .square_free
        .iter()
        .filter(|(_, k)| Rational::from_integer((*k as i64).into()) > *d)
        .collect();
    let (s, k) = match candidates.as_slice() {
        [] => return Err(AdaptError::NoPrincipalRoot),
        [one] => (&one.0, one.1),
        _ => return Err(AdaptError::Unsupported("several roots exceed the Newton distance".into())),
    };
    // A unique root of multiplicity k is the only root of the rational factor Sₖ,
    // so Sₖ is linear and the root is rational.
    if s.degree() != 1 {
        return Err(AdaptError::IrrationalRoot);
    }
    let root = -s.coeff(0) / s.coeff(1);
    Ok((root, m, k, f))
}

/// Result of the linear part of the normalization: an optional swap of the
/// variables followed by an optional shear `y₂ = x₂ − b x₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearNormalization {
    pub polynomial: BivariatePolynomial,
    pub swapped: bool,
    pub shear: Option<JetTerm>,
}

pub fn linearly_adapt(phi: &BivariatePolynomial) -> Result<LinearNormalization, AdaptError> {
    require_finite_type(phi)?;
    let mut poly = phi.clone();
    let mut swapped = false;
    let mut shear: Option<Rational> = None;
    for _ in 0..4 {
        let v = verdict_of(&poly)?;
        if v.adapted {
            break;
        }
        let w = v.weight().expect("non-adapted faces are compact edges").clone();
        if w.kappa1 > w.kappa2 {
            if swapped || shear.is_some() {
                return Err(AdaptError::Unsupported("second variable swap requested".into()));
            }
            poly = poly.swap_variables();
            swapped = true;
            continue;
        }
        if w.kappa1 != w.kappa2 {
            break;
        }
        let (b, _, _, _) = principal_root(&poly, &v)?;
        poly = poly.shear_substitute(&[JetTerm::new(b.clone(), 1)]);
        shear = Some(shear.unwrap_or_else(Rational::zero) + b);
    }
    let v = verdict_of(&poly)?;
    if !v.adapted && v.weight().is_some_and(|w| w.kappa1 >= w.kappa2) {
        return Err(AdaptError::StepLimit { steps: 4 });
    }
    Ok(LinearNormalization {
        polynomial: poly,
        swapped,
        shear: shear.filter(|b| !b.is_zero()).map(|b| JetTerm::new(b, 1)),
    })
}

/// One exact Varchenko step on a non-adapted polynomial with integer `m ≥ 2`.
pub fn varchenko_step(phi: &BivariatePolynomial) -> Result<(JetTerm, BivariatePolynomial), AdaptError> {
    require_finite_type(phi)?;
    let v = verdict_of(phi)?;
    if v.adapted {
        return Err(AdaptError::NoPrincipalRoot);
    }
    let (b, m, _, _) = principal_root(phi, &v)?;
    if m < 2 {
        return Err(AdaptError::Unsupported("linear step: use linearly_adapt".into()));
    }
    let term = JetTerm::new(b, m);
    let next = phi.shear_substitute(std::slice::from_ref(&term));
    Ok((term, next))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootJet {
    pub terms: Vec<JetTerm>,
    /// Exponent of the first term, when the jet is nonempty.
    pub leading_exponent: Option<u32>,
    /// When the jet is the truncation of an infinite series, the order kept.
    pub truncated_at: Option<u32>,
}

impl RootJet {
    fn from_coefficients(coeffs: &BTreeMap<u32, Rational>, truncated_at: Option<u32>) -> Self {
        let terms: Vec<JetTerm> = coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| JetTerm::new(c.clone(), *e))
            .collect();
        Self {
            leading_exponent: terms.first().map(|t| t.exponent),
            terms,
            truncated_at,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Dense coefficient vector indexed by the power of `x₁`.
    pub fn dense(&self) -> Vec<Rational> {
        let top = self.terms.last().map(|t| t.exponent as usize).unwrap_or(0);
        let mut out = vec![Rational::zero(); top + 1];
        for t in &self.terms {
            out[t.exponent as usize] = t.coefficient.clone();
        }
        out
    }

    pub fn evaluate(&self, x1: f64) -> f64 {
        self.terms
            .iter()
            .rev()
            .map(|t| crate::poly::rational_to_f64(&t.coefficient) * x1.powi(t.exponent as i32))
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Shear,
    BranchLimit,
}

impl StepKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StepKind::Shear => "shear",
            StepKind::BranchLimit => "branch-limit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub coefficient: Rational,
    pub exponent: u32,
    /// Newton distance after the step.
    pub distance: Rational,
    pub kind: StepKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptationResult {
    pub original_verdict: AdaptednessVerdict,
    pub normalization: LinearNormalization,
    /// Verdict in the linearly normalized coordinates.
    pub normalized_verdict: AdaptednessVerdict,
    pub jet: RootJet,
    /// `φᵃ`: the normalized phase after the jet shear.
    pub adapted_polynomial: BivariatePolynomial,
    /// When set, `φᵃ` only holds the terms with `α₁ ≤` this bound; its Newton
    /// polyhedron is nonetheless exact.
    pub truncation: Option<u32>,
    pub step_log: Vec<StepRecord>,
    pub final_verdict: AdaptednessVerdict,
}

impl AdaptationResult {
    pub fn original_adapted(&self) -> bool {
        self.original_verdict.adapted
    }

    /// Whether some linear coordinate system is adapted.
    pub fn linearly_adaptable(&self) -> bool {
        self.jet.is_empty()
    }

    /// Leading exponent `m` of the principal root jet.
    pub fn m(&self) -> Option<u32> {
        self.jet.leading_exponent
    }

    /// Principal weight of the normalized coordinates (defines the line `L`).
    pub fn principal_weight(&self) -> Option<&Weight> {
        self.normalized_verdict.weight()
    }

    pub fn linear_shear(&self) -> Option<&JetTerm> {
        self.normalization.shear.as_ref()
    }
}

enum Truncation {
    /// Nothing was dropped.
    Exact,
    /// Terms were dropped, but none of them can change the Newton polyhedron.
    Safe,
    /// The last vertex lies at this `α₁`, beyond the truncation.
    NeedsOrder(u32),
}

/// `φ₀(y₁, y₂ + ψ(y₁))` truncated to `α₁ ≤ t`, classified by whether the truncation
/// preserves the Newton polyhedron.
fn truncated_shear(
    phi0: &BivariatePolynomial,
    jet: &BTreeMap<u32, Rational>,
    t: u32,
) -> (BivariatePolynomial, Truncation) {
    let top_exp = jet.keys().next_back().copied().unwrap_or(0);
    let max_e1 = phi0
        .terms()
        .map(|(m, _)| m.e1 + m.e2 * top_exp)
        .max()
        .unwrap_or(0);
    let dense: Vec<Rational> = (0..=top_exp)
        .map(|k| jet.get(&k).cloned().unwrap_or_else(Rational::zero))
        .collect();
    if max_e1 <= t {
        let full = phi0.shear_truncated(&dense, max_e1);
        return (full, Truncation::Exact);
    }
    let trunc = phi0.shear_truncated(&dense, t);
    // The lowest nonzero exact row fixes the last vertex; everything dropped lies
    // above it and to its right when that vertex is kept.
    let psi = UniPoly::new(dense);
    let rows = series::shear_rows(phi0, &psi, phi0.degree_x2() as usize);
    let lowest = rows.iter().find(|r| !r.is_zero()).expect("nonzero shear");
    let order = lowest.order().expect("nonzero row") as u32;
    if order <= t {
        (trunc, Truncation::Safe)
    } else {
        (trunc, Truncation::NeedsOrder(order))
    }
}

struct BranchLimit {
    jet: BTreeMap<u32, Rational>,
    polynomial: BivariatePolynomial,
    order: u32,
}

/// Follows an exact `n`-fold branch through the current jet to its limit, when the
/// branch is not a polynomial.
fn try_branch_limit(
    phi0: &BivariatePolynomial,
    jet: &BTreeMap<u32, Rational>,
    b: &Rational,
    m: u32,
    n: usize,
    cache: &mut BTreeMap<usize, BivariatePolynomial>,
) -> Result<Option<BranchLimit>, AdaptError> {
    let g = cache
        .entry(n)
        .or_insert_with(|| multiple_root_factor(phi0, n as u32))
        .clone();
    if g.total_degree() == 0 || !g.coeff(0, 0).is_zero() || g.coeff(0, 1).is_zero() {
        return Ok(None);
    }
    let mut order = INITIAL_BRANCH_ORDER.max(2 * m as usize);
    while order <= MAX_BRANCH_ORDER {
        let r = series::implicit_root(&g, order).expect("checked implicit-function hypotheses");
        // The branch must extend the current jet by b·x₁^m.
        let agrees = (0..=m as usize).all(|k| {
            let expect = if k == m as usize {
                b.clone()
            } else {
                jet.get(&(k as u32)).cloned().unwrap_or_else(Rational::zero)
            };
            r[k] == expect
        });
        if !agrees {
            return Ok(None);
        }
        // A polynomial branch is reached by ordinary shears.
        let last = r.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        if last < order / 2 {
            let psi = UniPoly::new(r[..=last].to_vec());
            let on_branch = series::shear_rows(&g, &psi, 0);
            if on_branch[0].is_zero() {
                return Ok(None);
            }
        }
        let t = order as u32;
        let limit = phi0.shear_truncated(&r, t);
        let rows = limit.coefficients_in_x2();
        if rows.iter().take(n).any(|row| !row.is_zero()) {
            return Err(AdaptError::Unsupported(
                "branch limit left terms below the branch multiplicity".into(),
            ));
        }
        if rows.get(n).is_some_and(|row| !row.is_zero()) {
            let jet = r
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as u32, c.clone()))
                .collect();
            return Ok(Some(BranchLimit {
                jet,
                polynomial: limit,
                order: t,
            }));
        }
        order *= 2;
    }
    Err(AdaptError::Unsupported(
        "branch limit needs a series order beyond the supported bound".into(),
    ))
}

pub fn adapt_coordinates(phi: &BivariatePolynomial, max_steps: usize) -> Result<AdaptationResult, AdaptError> {
    let original_verdict = check_adapted(phi)?;
    let normalization = linearly_adapt(phi)?;
    let phi0 = normalization.polynomial.clone();
    let normalized_verdict = verdict_of(&phi0)?;

    let mut jet: BTreeMap<u32, Rational> = BTreeMap::new();
    let mut t = INITIAL_TRUNCATION.max(2 * phi0.total_degree());
    let mut current = phi0.clone();
    let mut truncated = false;
    let mut verdict = normalized_verdict.clone();
    let mut log = Vec::new();
    let mut cache = BTreeMap::new();
    let mut truncated_at = None;

    while !verdict.adapted {
        if log.len() >= max_steps {
            return Err(AdaptError::StepLimit { steps: log.len() });
        }
        let (b, m, n, _) = principal_root(&current, &verdict)?;
        if m < 2 || jet.keys().next_back().is_some_and(|&e| e >= m) {
            return Err(AdaptError::Unsupported(format!(
                "shear exponent {m} does not increase the jet"
            )));
        }
        if let Some(limit) = try_branch_limit(&phi0, &jet, &b, m, n, &mut cache)? {
            let v = verdict_of(&limit.polynomial)?;
            if !v.adapted {
                return Err(AdaptError::Unsupported(
                    "coordinates along the branch limit are not adapted".into(),
                ));
            }
            log.push(StepRecord {
                coefficient: b,
                exponent: m,
                distance: v.distance.clone(),
                kind: StepKind::BranchLimit,
            });
            jet = limit.jet;
            current = limit.polynomial;
            truncated = true;
            truncated_at = Some(limit.order);
            verdict = v;
            break;
        }
        jet.insert(m, b.clone());
        loop {
            let (poly, exact) = truncated_shear(&phi0, &jet, t);
            match exact {
                Truncation::Exact | Truncation::Safe => {
                    truncated = matches!(exact, Truncation::Safe);
                    current = poly;
                    break;
                }
                Truncation::NeedsOrder(needed) => {
                    if needed > MAX_TRUNCATION {
                        return Err(AdaptError::Unsupported(format!(
                            "truncation order {needed} exceeds {MAX_TRUNCATION}"
                        )));
                    }
                    t = (2 * t).max(needed + 8);
                }
            }
        }
        let v = verdict_of(&current)?;
        if v.distance <= verdict.distance {
            return Err(AdaptError::Unsupported("Newton distance did not increase".into()));
        }
        log.push(StepRecord {
            coefficient: b,
            exponent: m,
            distance: v.distance.clone(),
            kind: StepKind::Shear,
        });
        verdict = v;
    }
    let truncation = if truncated_at.is_some() {
        truncated_at
    } else if truncated {
        Some(t)
    } else {
        None
    };
    Ok(AdaptationResult {
        original_verdict,
        normalization,
        normalized_verdict,
        jet: RootJet::from_coefficients(&jet, truncated_at),
        adapted_polynomial: current,
        truncation,
        step_log: log,
        final_verdict: verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightData {
    pub h: Rational,
    pub nu: u8,
    pub d_original: Rational,
    /// In the edge case `m(φᵃ_pr) = d(φᵃ)`, whether one more shear produced a vertex
    /// principal face; `None` when no such shear was attempted.
    pub vertex_form_confirmed: Option<bool>,
}

/// Extra shear along the root realizing `m(φᵃ_pr) = d(φᵃ)`.
fn vertex_form_check(result: &AdaptationResult) -> Option<bool> {
    let v = &result.final_verdict;
    let w = v.weight()?;
    let a = w.slope_reciprocal()?;
    if !a.is_integer() || result.truncation.is_some() {
        return None;
    }
    let pf = PrincipalFace {
        face: v.principal_face.clone(),
        distance: v.distance.clone(),
        swap: v.swap,
    };
    let part = principal_part(&result.adapted_polynomial, &pf);
    let f = factorize_homogeneous(&part, w).ok()?;
    let target = v.distance.clone();
    let root = f
        .real_roots
        .iter()
        .find(|r| Rational::from_integer((r.multiplicity as i64).into()) == target)?
        .rational()?;
    let m = a.to_integer().to_u32()?;
    let next = result
        .adapted_polynomial
        .shear_substitute(&[JetTerm::new(root, m)]);
    let pf = build_polyhedron(&next).ok()?.principal_face();
    Some(pf.face.kind == FaceKind::Vertex && pf.distance == v.distance)
}

pub fn height_from(result: &AdaptationResult) -> HeightData {
    let v = &result.final_verdict;
    let h = v.distance.clone();
    let two = Rational::from_integer(2.into());
    let edge_equality = v.principal_face.kind == FaceKind::CompactEdge
        && v.circle_order.map(|m| Rational::from_integer(m.into()) == v.distance) == Some(true);
    let nu = if h >= two && (v.principal_face.kind == FaceKind::Vertex || edge_equality) {
        1
    } else {
        0
    };
    HeightData {
        h,
        nu,
        d_original: result.original_verdict.distance.clone(),
        vertex_form_confirmed: if edge_equality { vertex_form_check(result) } else { None },
    }
}

pub fn height(phi: &BivariatePolynomial) -> Result<HeightData, AdaptError> {
    Ok(height_from(&adapt_coordinates(phi, DEFAULT_MAX_STEPS)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_polynomial, rat};

    fn poly(s: &str) -> BivariatePolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn verdicts() {
        let v = check_adapted(&poly("(x2 - x1^2)^2 + x1^5")).unwrap();
        assert!(!v.adapted);
        assert_eq!(v.condition, AdaptCondition::None);
        assert_eq!(v.circle_order, Some(2));
        assert_eq!(v.distance, rat(4, 3));
        let v = check_adapted(&poly("x1^2*x2^2")).unwrap();
        assert!(v.adapted);
        assert_eq!(v.condition, AdaptCondition::B);
        let v = check_adapted(&poly("x1^4 + x2^2")).unwrap();
        assert_eq!((v.adapted, v.condition, v.circle_order), (true, AdaptCondition::A, Some(0)));
        assert!(matches!(check_adapted(&poly("x1 + x2^2")), Err(AdaptError::NotFiniteType(_))));
        assert!(matches!(check_adapted(&poly("1 + x2^2")), Err(AdaptError::NotFiniteType(_))));
    }

    #[test]
    fn linear_normalization() {
        let n = linearly_adapt(&poly("(x1 + x2)^2 + x1^4")).unwrap();
        assert_eq!(n.polynomial, poly("x2^2 + x1^4"));
        assert_eq!(n.shear, Some(JetTerm::new(int(-1), 1)));
        assert!(!n.swapped);
        let phi = poly("(x2 - x1^2)^2 + x1^5");
        let n = linearly_adapt(&phi).unwrap();
        assert_eq!((n.polynomial, n.shear), (phi, None));
        let phi = poly("x1^4 + x2^2");
        assert_eq!(linearly_adapt(&phi).unwrap().polynomial, phi);
        let n = linearly_adapt(&poly("(x1 - x2^2)^2 + x2^5")).unwrap();
        assert!(n.swapped);
        assert_eq!(n.polynomial, poly("(x2 - x1^2)^2 + x1^5"));
    }

    #[test]
    fn single_steps() {
        let (t, next) = varchenko_step(&poly("(x2 - x1^2)^2 + x1^5")).unwrap();
        assert_eq!(t, JetTerm::new(int(1), 2));
        assert_eq!(next, poly("x2^2 + x1^5"));
        let (t, next) = varchenko_step(&poly("(x2 - 2*x1^3)^3")).unwrap();
        assert_eq!(t, JetTerm::new(int(2), 3));
        assert_eq!(next, poly("x2^3"));
        // d = 2 on the edge of weight (1/6, 1/3): the double root does not exceed it.
        let phi = poly("(x2 - x1^2)^2*(x2 + x1^2) + x1^9");
        assert_eq!(varchenko_step(&phi), Err(AdaptError::NoPrincipalRoot));
        assert_eq!(check_adapted(&phi).unwrap().condition, AdaptCondition::A);
    }

    #[test]
    fn full_adaptation() {
        let r = adapt_coordinates(&poly("(x2 - x1^2)^2 + x1^5"), 64).unwrap();
        assert_eq!(r.jet.terms, vec![JetTerm::new(int(1), 2)]);
        assert_eq!(r.adapted_polynomial, poly("x2^2 + x1^5"));
        assert_eq!(r.truncation, None);
        assert_eq!(r.step_log.len(), 1);
        assert_eq!(r.step_log[0].distance, rat(10, 7));

        let r = adapt_coordinates(&poly("(x2 - x1 - x1^2)^2"), 64).unwrap();
        assert_eq!(r.linear_shear(), Some(&JetTerm::new(int(1), 1)));
        assert_eq!(r.jet.terms, vec![JetTerm::new(int(1), 2)]);
        assert_eq!(r.adapted_polynomial, poly("x2^2"));
        assert_eq!(r.final_verdict.condition, AdaptCondition::C);

        let phi = poly("x1^4 + x2^2");
        let r = adapt_coordinates(&phi, 64).unwrap();
        assert!(r.jet.is_empty());
        assert_eq!(r.adapted_polynomial, phi);
    }

    #[test]
    fn heights() {
        let h = height(&poly("(x2 - x1^2)^4")).unwrap();
        assert_eq!((h.h, h.nu), (int(4), 0));
        let h = height(&poly("(x2 - x1^2)^2 + x1^5")).unwrap();
        assert_eq!((h.h, h.nu), (rat(10, 7), 0));
        let h = height(&poly("x1^2 + x2^2")).unwrap();
        assert_eq!((h.h, h.nu), (int(1), 0));
        let h = height(&poly("x1^2*x2^2")).unwrap();
        assert_eq!((h.h, h.nu), (int(2), 1));
    }

    #[test]
    fn edge_equality_gives_log() {
        // Principal edge (x₂ − x₁)²·x₁x₂ style: d = 2 with a double root of the edge.
        let phi = poly("(x2 - x1^2)^2*(x2 + x1^2)");
        let r = adapt_coordinates(&phi, 64).unwrap();
        let h = height_from(&r);
        assert_eq!(h.h, int(2));
        assert_eq!(h.nu, 1);
        assert_eq!(h.vertex_form_confirmed, Some(true));
    }

    #[test]
    fn non_polynomial_branch_reaches_its_limit() {
        // (x₂ − x₁²)⁴ after a generic linear change: the fourfold branch is a power series.
        let phi = poly("(x2 - x1^2)^4").linear_substitute(&int(1), &int(1), &int(2), &int(3));
        let r = adapt_coordinates(&phi, 64).unwrap();
        let h = height_from(&r);
        assert_eq!((h.h, h.nu), (int(4), 0));
        assert_eq!(r.step_log.last().unwrap().kind, StepKind::BranchLimit);
        assert!(r.jet.truncated_at.is_some());
    }
}
