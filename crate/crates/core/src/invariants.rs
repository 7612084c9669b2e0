//! Edge invariants, the restriction height and its geometric reading, the critical
//! exponents, normal-form classification for small distance, and the vertex
//! identities satisfied by the root clusters of the adapted phase.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::adapt::{adapt_coordinates, height_from, linearly_adapt, AdaptationResult, HeightData, DEFAULT_MAX_STEPS};
use crate::error::InvariantError;
use crate::homog::factorize_homogeneous;
use crate::newton::{build_polyhedron, kappa_principal_part, ExponentPoint, NewtonPolyhedron, Weight};
use crate::poly::{int, BivariatePolynomial, JetTerm, Rational};
use crate::series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeInvariant {
    pub index: usize,
    pub weight: Weight,
    /// `a_l = κ₂/κ₁`, `None` for the horizontal edge (infinite).
    pub slope_reciprocal: Option<Rational>,
    pub compact: bool,
    /// `h_l`, present exactly when `a_l > m`.
    pub h_l: Option<Rational>,
}

/// `h_l = (1 + mκ₁ − κ₂)/(κ₁ + κ₂)`.
pub fn edge_height(w: &Weight, m: u32) -> Rational {
    (Rational::one() + int(m as i64) * &w.kappa1 - &w.kappa2) / (&w.kappa1 + &w.kappa2)
}

fn require_jet(adapted: &AdaptationResult) -> Result<u32, InvariantError> {
    match adapted.m() {
        Some(m) if m >= 2 => Ok(m),
        _ => Err(InvariantError::Precondition(
            "the coordinates are linearly adaptable; edge invariants need a nonlinear jet".into(),
        )),
    }
}

fn adapted_polyhedron(adapted: &AdaptationResult) -> Result<NewtonPolyhedron, InvariantError> {
    Ok(build_polyhedron(&adapted.adapted_polynomial)?)
}

pub fn edge_invariants(adapted: &AdaptationResult) -> Result<Vec<EdgeInvariant>, InvariantError> {
    let m = require_jet(adapted)?;
    let mq = int(m as i64);
    Ok(adapted_polyhedron(adapted)?
        .edge_sequence()
        .into_iter()
        .map(|e| {
            let steeper = e.slope_reciprocal.as_ref().is_none_or(|a| *a > mq);
            EdgeInvariant {
                index: e.index,
                h_l: steeper.then(|| edge_height(&e.weight, m)),
                weight: e.weight,
                slope_reciprocal: e.slope_reciprocal,
                compact: e.compact,
            }
        })
        .collect())
}

/// One piece of the boundary of the augmented polyhedron, listed from upper left
/// to lower right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryPiece {
    /// The half-line on the principal line ending at the given point.
    PrincipalRay { end: ExponentPoint },
    Segment { from: ExponentPoint, to: ExponentPoint },
    HorizontalRay { start: ExponentPoint },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedPolyhedron {
    pub base: NewtonPolyhedron,
    pub principal_line: Weight,
    /// Vertex of `𝒩(φᵃ)` on the principal line with the smallest second coordinate.
    pub touching_vertex: ExponentPoint,
    pub boundary: Vec<BoundaryPiece>,
    /// Where `t₂ = t₁ + m + 1` crosses the boundary.
    pub intersection: ExponentPoint,
}

impl AugmentedPolyhedron {
    /// The r-height read off the boundary: second coordinate of the crossing minus one.
    pub fn r_height(&self) -> Rational {
        &self.intersection.t2 - Rational::one()
    }
}

pub fn augmented_polyhedron(
    adapted: &AdaptationResult,
    principal_line: &Weight,
) -> Result<AugmentedPolyhedron, InvariantError> {
    let m = require_jet(adapted)?;
    let base = adapted_polyhedron(adapted)?;
    if !base.is_supporting(principal_line) {
        return Err(InvariantError::Inconsistent(format!(
            "principal line ({principal_line}) does not support the adapted polyhedron"
        )));
    }
    let one = Rational::one();
    let start = base
        .vertices
        .iter()
        .rposition(|v| principal_line.degree_at(v) == one)
        .expect("supporting line touches a vertex");
    let touching = base.vertices[start].clone();
    let mut boundary = vec![BoundaryPiece::PrincipalRay { end: touching.clone() }];
    for w in base.vertices[start..].windows(2) {
        boundary.push(BoundaryPiece::Segment {
            from: w[0].clone(),
            to: w[1].clone(),
        });
    }
    boundary.push(BoundaryPiece::HorizontalRay {
        start: base.last_vertex().clone(),
    });

    // g = t₂ − t₁ − (m+1) decreases strictly along the boundary.
    let shift = int(m as i64 + 1);
    let g = |p: &ExponentPoint| &p.t2 - &p.t1 - &shift;
    let intersection = if g(&touching).is_negative() {
        // On the principal ray: κ₁t₁ + κ₂(t₁ + m + 1) = 1.
        let k = principal_line;
        let t1 = (&one - &k.kappa2 * &shift) / (&k.kappa1 + &k.kappa2);
        ExponentPoint::new(t1.clone(), t1 + &shift)
    } else {
        let mut found = None;
        for w in base.vertices[start..].windows(2) {
            let (ga, gb) = (g(&w[0]), g(&w[1]));
            if !gb.is_positive() {
                // Crossing at s ∈ [0,1] along w[0] → w[1].
                let s = &ga / (&ga - &gb);
                let t1 = &w[0].t1 + &s * (&w[1].t1 - &w[0].t1);
                let t2 = &w[0].t2 + &s * (&w[1].t2 - &w[0].t2);
                found = Some(ExponentPoint::new(t1, t2));
                break;
            }
        }
        found.unwrap_or_else(|| {
            let b = base.last_vertex().t2.clone();
            ExponentPoint::new(&b - &shift, b)
        })
    };
    Ok(AugmentedPolyhedron {
        base,
        principal_line: principal_line.clone(),
        touching_vertex: touching,
        boundary,
        intersection,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RHeight {
    pub value: Rational,
    pub augmented: AugmentedPolyhedron,
}

/// `hʳ = max(d, max_{a_l > m} h_l)`, checked against the augmented polyhedron.
pub fn r_height(adapted: &AdaptationResult, d: &Rational) -> Result<RHeight, InvariantError> {
    let edges = edge_invariants(adapted)?;
    let value = edges
        .iter()
        .filter_map(|e| e.h_l.clone())
        .fold(d.clone(), |acc, h| acc.max(h));
    let line = adapted
        .principal_weight()
        .ok_or_else(|| InvariantError::Inconsistent("normalized principal face is not an edge".into()))?
        .clone();
    let augmented = augmented_polyhedron(adapted, &line)?;
    let geometric = augmented.r_height();
    if geometric != value {
        return Err(InvariantError::Inconsistent(format!(
            "r-height formula gives {value}, augmented polyhedron gives {geometric}"
        )));
    }
    Ok(RHeight { value, augmented })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularityClass {
    /// `A_{n−1}`; the field is `n`.
    A(u32),
    AInfinity,
    D,
    Unknown,
}

impl SingularityClass {
    pub fn tag(&self) -> String {
        match self {
            SingularityClass::A(n) => format!("A{}", n - 1),
            SingularityClass::AInfinity => "Ainfinity".into(),
            SingularityClass::D => "D".into(),
            SingularityClass::Unknown => "unknown".into(),
        }
    }
}

fn homogeneous_part(phi: &BivariatePolynomial, degree: u32) -> BivariatePolynomial {
    phi.filter(|m| m.total_degree() == degree)
}

/// Normal-form class of a phase whose Newton distance in linearly normalized
/// coordinates is below two.
pub fn classify_singularity(phi: &BivariatePolynomial) -> Result<SingularityClass, InvariantError> {
    classify_with_order(phi, None)
}

/// Like [`classify_singularity`], but uses the known height to bound the series order.
/// An `A_k` point has `h = 2(k+1)/(k+3)`, so `k + 1 = 2h/(2 − h)`.
fn classify_with_height(phi: &BivariatePolynomial, h: &Rational) -> Result<SingularityClass, InvariantError> {
    let two = int(2);
    if *h >= two {
        return classify_singularity(phi);
    }
    let k1 = (&two * h / (&two - h)).ceil().to_integer().to_usize().unwrap_or(usize::MAX - 2);
    match classify_with_order(phi, Some(k1 + 2))? {
        SingularityClass::AInfinity => classify_singularity(phi),
        c => Ok(c),
    }
}

fn classify_with_order(phi: &BivariatePolynomial, order: Option<usize>) -> Result<SingularityClass, InvariantError> {
    let norm = linearly_adapt(phi)?;
    let d = build_polyhedron(&norm.polynomial)?.newton_distance();
    if d >= int(2) {
        return Err(InvariantError::Precondition(format!(
            "Newton distance {d} in linearly normalized coordinates is not below 2"
        )));
    }
    let mut f = norm.polynomial;
    let q = homogeneous_part(&f, 2);
    if q.is_zero() {
        let c = homogeneous_part(&f, 3);
        if c.is_zero() {
            return Ok(SingularityClass::Unknown);
        }
        // A binary cubic is the cube of a linear form iff its Hessian vanishes.
        let hess = &(&c.partial_derivative(2, 0) * &c.partial_derivative(0, 2))
            - &c.partial_derivative(1, 1).pow(2);
        return Ok(if hess.is_zero() {
            SingularityClass::Unknown
        } else {
            SingularityClass::D
        });
    }
    let (c20, c11, c02) = (q.coeff(2, 0), q.coeff(1, 1), q.coeff(0, 2));
    let disc = &c11 * &c11 - int(4) * &c20 * &c02;
    if !disc.is_zero() {
        return Ok(SingularityClass::A(2));
    }
    if c02.is_zero() {
        f = f.swap_variables();
    }
    let q = homogeneous_part(&f, 2);
    let (c11, c02) = (q.coeff(1, 1), q.coeff(0, 2));
    // q = c02 (x₂ + c11/(2c02) x₁)²: shear the square onto x₂².
    let beta = -c11 / (int(2) * &c02);
    if !beta.is_zero() {
        f = f.shear_substitute(&[JetTerm::new(beta, 1)]);
    }
    let deg = f.total_degree() as usize;
    // The Milnor number is at most (deg − 1)², which bounds k + 1.
    let order = order.unwrap_or((deg.saturating_sub(1)).pow(2) + 2);
    let fy = f.partial_derivative(0, 1);
    let psi = series::implicit_root(&fy, order)
        .ok_or_else(|| InvariantError::Inconsistent("critical branch does not exist".into()))?;
    let b0 = series::substitute(&f, &psi, order);
    Ok(match series::order_of(&b0) {
        Some(n) => SingularityClass::A(n as u32),
        None => SingularityClass::AInfinity,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterEdge {
    pub index: usize,
    pub weight: Weight,
    pub left: ExponentPoint,
    pub right: ExponentPoint,
    /// Axis orders of the edge's principal part.
    pub order1: u32,
    pub order2: u32,
    /// Number of Puiseux roots with leading exponent `a_l`, with multiplicity.
    pub cluster_size: u32,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterCheck {
    pub edges: Vec<ClusterEdge>,
    pub all_hold: bool,
}

/// Checks `A_{l−1} = ν₁ + Σ_{l₁<l}|[l₁]| a_{l₁}` and `B_l = ν₂ + Σ_{l₁>l}|[l₁]|` on
/// every compact edge of `𝒩(φᵃ)`, with the cluster sizes read off the factorized
/// edge principal parts.
pub fn verify_cluster_identities(adapted: &AdaptationResult) -> Result<ClusterCheck, InvariantError> {
    let phi = &adapted.adapted_polynomial;
    let poly = build_polyhedron(phi)?;
    let mut edges = Vec::new();
    for (i, e) in poly.compact_edges.iter().enumerate() {
        let w = e.weight.clone().expect("compact edges carry weights");
        let part = kappa_principal_part(phi, &w)?;
        let f = factorize_homogeneous(&part, &w)?;
        let cluster_size = (f.q as usize * f.root_degree()) as u32;
        edges.push(ClusterEdge {
            index: i + 1,
            left: e.endpoints[0].clone(),
            right: e.endpoints[1].clone(),
            weight: w,
            order1: f.trivial_order1,
            order2: f.trivial_order2,
            cluster_size,
            holds: false,
        });
    }
    let nu1 = poly.first_vertex().t1.clone();
    let nu2 = poly.last_vertex().t2.clone();
    let n = edges.len();
    for l in 0..n {
        let a_sum: Rational = edges[..l]
            .iter()
            .map(|e| int(e.cluster_size as i64) * e.weight.slope_reciprocal().expect("compact"))
            .sum();
        let b_sum: Rational = edges[l + 1..].iter().map(|e| int(e.cluster_size as i64)).sum();
        let e = &edges[l];
        let vertical = &e.left.t2 - &e.right.t2;
        let holds = e.left.t1 == int(e.order1 as i64)
            && e.right.t2 == int(e.order2 as i64)
            && e.left.t1 == &nu1 + a_sum
            && e.right.t2 == &nu2 + b_sum
            && vertical == int(e.cluster_size as i64);
        edges[l].holds = holds;
    }
    let all_hold = edges.iter().all(|e| e.holds);
    if !all_hold {
        return Err(InvariantError::Inconsistent("cluster/vertex identity violated".into()));
    }
    Ok(ClusterCheck { edges, all_hold })
}

/// Everything the exact pipeline knows about a phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub phi: BivariatePolynomial,
    pub polyhedron: NewtonPolyhedron,
    /// Newton distance in the given coordinates.
    pub d: Rational,
    /// Newton distance after linear normalization (the `d` of the restriction theory).
    pub d_linear: Rational,
    pub adaptation: AdaptationResult,
    pub height: HeightData,
    pub h: Rational,
    pub nu: u8,
    pub m: Option<u32>,
    pub linearly_adaptable: bool,
    pub edge_invariants: Vec<EdgeInvariant>,
    pub r_height: Option<RHeight>,
    /// Oscillatory decay exponent `1/h`.
    pub decay_rate: Rational,
    pub log_exponent: u8,
    /// Maximal-operator boundedness holds for `p` above this value.
    pub maximal_threshold: Rational,
    pub restriction_pc_prime: Rational,
    /// `p_c`, the dual of `p'_c`.
    pub restriction_pc: Rational,
    pub contact_index: Rational,
    pub singularity_class: Option<SingularityClass>,
    pub cluster_check: ClusterCheck,
}

impl InvariantReport {
    pub fn h_r(&self) -> Option<&Rational> {
        self.r_height.as_ref().map(|r| &r.value)
    }
}

pub fn critical_exponents(phi: &BivariatePolynomial) -> Result<InvariantReport, InvariantError> {
    critical_exponents_with(phi, DEFAULT_MAX_STEPS)
}

pub fn critical_exponents_with(phi: &BivariatePolynomial, max_steps: usize) -> Result<InvariantReport, InvariantError> {
    let adaptation = adapt_coordinates(phi, max_steps)?;
    let height = height_from(&adaptation);
    let polyhedron = build_polyhedron(phi)?;
    let d = adaptation.original_verdict.distance.clone();
    let d_linear = adaptation.normalized_verdict.distance.clone();
    let h = height.h.clone();
    let linearly_adaptable = adaptation.linearly_adaptable();
    let (edge_invs, r_height) = if linearly_adaptable {
        (Vec::new(), None)
    } else {
        let r = r_height(&adaptation, &d_linear)?;
        if r.value < d_linear || r.value >= h {
            return Err(InvariantError::Inconsistent(format!(
                "r-height {} outside [d, h) = [{d_linear}, {h})",
                r.value
            )));
        }
        (edge_invariants(&adaptation)?, Some(r))
    };
    let two = int(2);
    let pc_prime = match &r_height {
        Some(r) => &two * &r.value + &two,
        None => &two * &h + &two,
    };
    let pc = &pc_prime / (&pc_prime - Rational::one());
    let singularity_class = if d_linear < two {
        Some(classify_with_height(phi, &h)?)
    } else {
        None
    };
    let cluster_check = verify_cluster_identities(&adaptation)?;
    Ok(InvariantReport {
        phi: phi.clone(),
        polyhedron,
        d,
        d_linear,
        nu: height.nu,
        m: adaptation.m(),
        decay_rate: h.recip(),
        log_exponent: height.nu,
        maximal_threshold: h.clone().max(two.clone()),
        restriction_pc_prime: pc_prime,
        restriction_pc: pc,
        contact_index: h.recip(),
        h,
        height,
        linearly_adaptable,
        edge_invariants: edge_invs,
        r_height,
        singularity_class,
        cluster_check,
        adaptation,
    })
}
