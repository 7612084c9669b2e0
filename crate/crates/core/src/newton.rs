//! Newton polyhedron, Newton diagram and the weights of its edges.
//!
//! The polyhedron of `φ` is the convex hull of `∪ (α + ℝ²₊)` over the Taylor
//! support. Its boundary is a convex staircase: a vertical ray, compact edges
//! `γ₁ … γₙ` joining vertices `(A₀,B₀) … (Aₙ,Bₙ)` with `A` increasing and `B`
//! decreasing, and a horizontal ray.

use num_traits::{One, Signed, Zero};

use crate::error::GeometryError;
use crate::poly::{int, rational_string, BivariatePolynomial, Monomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentPoint {
    pub t1: Rational,
    pub t2: Rational,
}

impl ExponentPoint {
    pub fn new(t1: Rational, t2: Rational) -> Self {
        Self { t1, t2 }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(int(a), int(b))
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        Self::from_ints(m.e1 as i64, m.e2 as i64)
    }
}

impl std::fmt::Display for ExponentPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", rational_string(&self.t1), rational_string(&self.t2))
    }
}

/// A weight `κ` with supporting line `κ₁t₁ + κ₂t₂ = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub kappa1: Rational,
    pub kappa2: Rational,
}

impl Weight {
    pub fn new(kappa1: Rational, kappa2: Rational) -> Self {
        assert!(
            !kappa1.is_negative() && !kappa2.is_negative(),
            "weights are nonnegative"
        );
        assert!(
            !(kappa1.is_zero() && kappa2.is_zero()),
            "weights are not both zero"
        );
        Self { kappa1, kappa2 }
    }

    /// The weight whose line passes through two distinct points.
    pub fn through(p: &ExponentPoint, q: &ExponentPoint) -> Self {
        let det = &p.t1 * &q.t2 - &q.t1 * &p.t2;
        assert!(!det.is_zero(), "points are collinear with the origin");
        Self::new((&q.t2 - &p.t2) / &det, (&p.t1 - &q.t1) / &det)
    }

    /// κ-degree `κ₁α₁ + κ₂α₂` of a monomial.
    pub fn degree(&self, m: &Monomial) -> Rational {
        &self.kappa1 * int(m.e1 as i64) + &self.kappa2 * int(m.e2 as i64)
    }

    pub fn degree_at(&self, p: &ExponentPoint) -> Rational {
        &self.kappa1 * &p.t1 + &self.kappa2 * &p.t2
    }

    /// `a = κ₂/κ₁`, or `None` for `κ₁ = 0` (infinite).
    pub fn slope_reciprocal(&self) -> Option<Rational> {
        if self.kappa1.is_zero() {
            None
        } else {
            Some(&self.kappa2 / &self.kappa1)
        }
    }

    /// `1/(κ₁+κ₂)`: where the line meets the bisectrix.
    pub fn homogeneous_distance(&self) -> Rational {
        (&self.kappa1 + &self.kappa2).recip()
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.kappa2.clone(), self.kappa1.clone())
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}, {}", rational_string(&self.kappa1), rational_string(&self.kappa2))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceKind {
    Vertex,
    CompactEdge,
    UnboundedHorizontal,
    UnboundedVertical,
}

impl FaceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FaceKind::Vertex => "vertex",
            FaceKind::CompactEdge => "compact-edge",
            FaceKind::UnboundedHorizontal => "unbounded-edge-horizontal",
            FaceKind::UnboundedVertical => "unbounded-edge-vertical",
        }
    }
}

/// A vertex or an edge of the polyhedron. Unbounded edges list their single
/// finite endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub kind: FaceKind,
    pub endpoints: Vec<ExponentPoint>,
    pub weight: Option<Weight>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    pub vertices: Vec<ExponentPoint>,
    pub compact_edges: Vec<Face>,
    /// Vertical ray first, then the horizontal ray.
    pub unbounded_edges: Vec<Face>,
}

/// The principal face together with the distance and the coordinate-swap flag
/// (set when a compact principal edge has `κ₁ > κ₂`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalFace {
    pub face: Face,
    pub distance: Rational,
    pub swap: bool,
}

/// One edge of the diagram, indexed from 1, with its weight and `a = κ₂/κ₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeInfo {
    pub index: usize,
    pub weight: Weight,
    pub slope_reciprocal: Option<Rational>,
    pub compact: bool,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Extreme points of the lower-left staircase of a finite point set.
pub fn staircase_vertices(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut pareto: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        if pareto.last().is_none_or(|last| p.1 < last.1) {
            pareto.push(p);
        }
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pareto {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

pub fn build_polyhedron(phi: &BivariatePolynomial) -> Result<NewtonPolyhedron, GeometryError> {
    if phi.is_zero() {
        return Err(GeometryError::ZeroPolynomial);
    }
    let pts: Vec<(i64, i64)> = phi
        .support()
        .iter()
        .map(|m| (m.e1 as i64, m.e2 as i64))
        .collect();
    Ok(NewtonPolyhedron::from_vertices(
        staircase_vertices(&pts)
            .into_iter()
            .map(|(a, b)| ExponentPoint::from_ints(a, b))
            .collect(),
    ))
}

impl NewtonPolyhedron {
    /// Builds the polyhedron from its ordered extreme points.
    pub fn from_vertices(vertices: Vec<ExponentPoint>) -> Self {
        let compact_edges = vertices
            .windows(2)
            .map(|w| Face {
                kind: FaceKind::CompactEdge,
                endpoints: vec![w[0].clone(), w[1].clone()],
                weight: Some(Weight::through(&w[0], &w[1])),
            })
            .collect();
        let first = vertices.first().expect("nonempty").clone();
        let last = vertices.last().expect("nonempty").clone();
        let vertical = Face {
            kind: FaceKind::UnboundedVertical,
            endpoints: vec![first],
            weight: None,
        };
        let horizontal_weight = if last.t2.is_positive() {
            Some(Weight::new(Rational::zero(), last.t2.recip()))
        } else {
            None
        };
        let horizontal = Face {
            kind: FaceKind::UnboundedHorizontal,
            endpoints: vec![last],
            weight: horizontal_weight,
        };
        Self {
            vertices,
            compact_edges,
            unbounded_edges: vec![vertical, horizontal],
        }
    }

    pub fn first_vertex(&self) -> &ExponentPoint {
        &self.vertices[0]
    }

    pub fn last_vertex(&self) -> &ExponentPoint {
        self.vertices.last().unwrap()
    }

    /// Whether a point lies in the (closed) polyhedron.
    pub fn contains(&self, p: &ExponentPoint) -> bool {
        let first = self.first_vertex();
        let last = self.last_vertex();
        if p.t1 < first.t1 || p.t2 < last.t2 {
            return false;
        }
        self.compact_edges.iter().all(|e| {
            e.weight
                .as_ref()
                .map(|w| w.degree_at(p) >= Rational::one())
                .unwrap_or(true)
        })
    }

    /// Point where the bisectrix `t₁ = t₂` meets the boundary.
    pub fn newton_distance(&self) -> Rational {
        self.principal_face().distance
    }

    pub fn principal_face(&self) -> PrincipalFace {
        let first = self.first_vertex();
        let last = self.last_vertex();
        if first.t1 >= first.t2 {
            let kind_face = if first.t1 == first.t2 {
                Face {
                    kind: FaceKind::Vertex,
                    endpoints: vec![first.clone()],
                    weight: None,
                }
            } else {
                self.unbounded_edges[0].clone()
            };
            return PrincipalFace {
                face: kind_face,
                distance: first.t1.clone(),
                swap: false,
            };
        }
        if last.t2 >= last.t1 {
            let face = if last.t1 == last.t2 {
                Face {
                    kind: FaceKind::Vertex,
                    endpoints: vec![last.clone()],
                    weight: None,
                }
            } else {
                self.unbounded_edges[1].clone()
            };
            return PrincipalFace {
                face,
                distance: last.t2.clone(),
                swap: false,
            };
        }
        // The bisectrix crosses the staircase strictly between the first and last vertex.
        for v in &self.vertices {
            if v.t1 == v.t2 {
                return PrincipalFace {
                    face: Face {
                        kind: FaceKind::Vertex,
                        endpoints: vec![v.clone()],
                        weight: None,
                    },
                    distance: v.t1.clone(),
                    swap: false,
                };
            }
        }
        for e in &self.compact_edges {
            let (p, q) = (&e.endpoints[0], &e.endpoints[1]);
            if p.t1 < p.t2 && q.t1 > q.t2 {
                let w = e.weight.clone().expect("compact edges carry weights");
                let swap = w.kappa1 > w.kappa2;
                return PrincipalFace {
                    face: e.clone(),
                    distance: w.homogeneous_distance(),
                    swap,
                };
            }
        }
        unreachable!("bisectrix must meet the boundary")
    }

    /// Compact edges `γ₁ … γₙ`, followed by the horizontal ray as `γₙ₊₁` when `Bₙ ≥ 1`.
    pub fn edge_sequence(&self) -> Vec<EdgeInfo> {
        let mut out: Vec<EdgeInfo> = self
            .compact_edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let w = e.weight.clone().unwrap();
                EdgeInfo {
                    index: i + 1,
                    slope_reciprocal: w.slope_reciprocal(),
                    weight: w,
                    compact: true,
                }
            })
            .collect();
        if let Some(w) = &self.unbounded_edges[1].weight {
            out.push(EdgeInfo {
                index: self.compact_edges.len() + 1,
                weight: w.clone(),
                slope_reciprocal: None,
                compact: false,
            });
        }
        out
    }

    /// Whether `κ₁t₁ + κ₂t₂ = 1` is a supporting line touching the polyhedron.
    pub fn is_supporting(&self, w: &Weight) -> bool {
        let degrees: Vec<Rational> = self.vertices.iter().map(|v| w.degree_at(v)).collect();
        let one = Rational::one();
        degrees.iter().all(|d| *d >= one) && degrees.contains(&one)
    }
}

/// Sum of the terms of `φ` on the line `L_κ`.
pub fn kappa_principal_part(
    phi: &BivariatePolynomial,
    kappa: &Weight,
) -> Result<BivariatePolynomial, GeometryError> {
    let one = Rational::one();
    let mut touches = false;
    for (m, _) in phi.terms() {
        let deg = kappa.degree(m);
        if deg < one {
            return Err(GeometryError::NotSupporting(kappa.to_string()));
        }
        touches |= deg == one;
    }
    if !touches {
        return Err(GeometryError::NotSupporting(kappa.to_string()));
    }
    Ok(phi.filter(|m| kappa.degree(m) == one))
}

/// Whether every term of `p` has κ-degree exactly one.
pub fn is_kappa_homogeneous(p: &BivariatePolynomial, kappa: &Weight) -> bool {
    !p.is_zero() && p.terms().all(|(m, _)| kappa.degree(m).is_one())
}

/// The principal part `φ_pr`: terms of `φ` on the principal face.
pub fn principal_part(phi: &BivariatePolynomial, pf: &PrincipalFace) -> BivariatePolynomial {
    match pf.face.kind {
        FaceKind::CompactEdge => {
            kappa_principal_part(phi, pf.face.weight.as_ref().unwrap()).expect("principal edge supports")
        }
        FaceKind::Vertex => {
            let v = &pf.face.endpoints[0];
            phi.filter(|m| int(m.e1 as i64) == v.t1 && int(m.e2 as i64) == v.t2)
        }
        FaceKind::UnboundedHorizontal => {
            let v = &pf.face.endpoints[0];
            phi.filter(|m| int(m.e2 as i64) == v.t2)
        }
        FaceKind::UnboundedVertical => {
            let v = &pf.face.endpoints[0];
            phi.filter(|m| int(m.e1 as i64) == v.t1)
        }
    }
}
