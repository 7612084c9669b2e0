//! The JSON analysis report. Exact quantities are serialized as `"num/den"` strings,
//! so nothing is lost to floating point.

use serde::{Serialize, Serializer};

use crate::adapt::{AdaptednessVerdict, StepRecord};
use crate::invariants::{BoundaryPiece, InvariantReport};
use crate::newton::{ExponentPoint, Face, Weight};
use crate::poly::{rational_string, JetTerm, Rational};

pub const SCHEMA_VERSION: &str = "1.0.0";

pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(q))
}

fn point(p: &ExponentPoint) -> [String; 2] {
    [rational_string(&p.t1), rational_string(&p.t2)]
}

fn weight(w: &Weight) -> [String; 2] {
    [rational_string(&w.kappa1), rational_string(&w.kappa2)]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InputEcho {
    pub expression: String,
    pub normalized: String,
    pub total_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FaceJson {
    pub kind: &'static str,
    pub endpoints: Vec<[String; 2]>,
    pub weight: Option<[String; 2]>,
}

impl From<&Face> for FaceJson {
    fn from(f: &Face) -> Self {
        Self {
            kind: f.kind.as_str(),
            endpoints: f.endpoints.iter().map(point).collect(),
            weight: f.weight.as_ref().map(weight),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PolyhedronJson {
    pub vertices: Vec<[String; 2]>,
    pub edges: Vec<FaceJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PrincipalFaceJson {
    #[serde(flatten)]
    pub face: FaceJson,
    pub swap: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictJson {
    pub adapted: bool,
    pub condition: &'static str,
    pub circle_order: Option<u32>,
    pub principal_face: PrincipalFaceJson,
    pub distance: String,
}

impl From<&AdaptednessVerdict> for VerdictJson {
    fn from(v: &AdaptednessVerdict) -> Self {
        Self {
            adapted: v.adapted,
            condition: v.condition.as_str(),
            circle_order: v.circle_order,
            principal_face: PrincipalFaceJson {
                face: (&v.principal_face).into(),
                swap: v.swap,
            },
            distance: rational_string(&v.distance),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JetTermJson {
    pub coefficient: String,
    pub exponent: u32,
}

impl From<&JetTerm> for JetTermJson {
    fn from(t: &JetTerm) -> Self {
        Self {
            coefficient: rational_string(&t.coefficient),
            exponent: t.exponent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LinearNormalizationJson {
    pub swapped: bool,
    pub shear: Option<JetTermJson>,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RootJetJson {
    pub terms: Vec<JetTermJson>,
    pub leading_exponent: Option<u32>,
    pub truncated_at: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AdaptedPolynomialJson {
    pub expression: String,
    /// When present, only terms with `α₁` up to this bound are listed.
    pub truncated_at: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StepJson {
    pub coefficient: String,
    pub exponent: u32,
    pub distance: String,
    pub kind: &'static str,
}

impl From<&StepRecord> for StepJson {
    fn from(s: &StepRecord) -> Self {
        Self {
            coefficient: rational_string(&s.coefficient),
            exponent: s.exponent,
            distance: rational_string(&s.distance),
            kind: s.kind.as_str(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HeightJson {
    pub h: String,
    pub nu: u8,
    pub distance_original: String,
    pub distance_linear: String,
    pub vertex_form_confirmed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EdgeInvariantJson {
    pub index: usize,
    pub weight: [String; 2],
    /// `a_l`; `null` for the horizontal edge.
    pub slope_reciprocal: Option<String>,
    pub compact: bool,
    pub h_l: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum BoundaryJson {
    PrincipalRay { end: [String; 2] },
    Segment { from: [String; 2], to: [String; 2] },
    HorizontalRay { start: [String; 2] },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RHeightJson {
    pub value: String,
    pub principal_line: [String; 2],
    pub touching_vertex: [String; 2],
    pub intersection: [String; 2],
    pub boundary: Vec<BoundaryJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriticalExponentsJson {
    pub decay_rate: String,
    pub log_exponent: u8,
    pub maximal_threshold: String,
    pub restriction_pc_prime: String,
    pub restriction_pc: String,
    pub contact_index: String,
    pub linearly_adaptable: bool,
    pub m: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClusterEdgeJson {
    pub index: usize,
    pub weight: [String; 2],
    pub left: [String; 2],
    pub right: [String; 2],
    pub order1: u32,
    pub order2: u32,
    pub cluster_size: u32,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClusterCheckJson {
    pub all_hold: bool,
    pub edges: Vec<ClusterEdgeJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub schema_version: &'static str,
    pub tool: ToolInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub input: InputEcho,
    pub newton_polyhedron: PolyhedronJson,
    pub distance: String,
    pub principal_face: PrincipalFaceJson,
    pub adaptedness: VerdictJson,
    pub linear_normalization: LinearNormalizationJson,
    pub root_jet: RootJetJson,
    pub adapted_polynomial: AdaptedPolynomialJson,
    pub adaptation_steps: Vec<StepJson>,
    pub height_data: HeightJson,
    pub edge_invariants: Vec<EdgeInvariantJson>,
    pub r_height: Option<RHeightJson>,
    pub critical_exponents: CriticalExponentsJson,
    pub singularity_class: Option<String>,
    pub cluster_identity_check: ClusterCheckJson,
}

impl AnalysisReport {
    pub fn new(expression: &str, rep: &InvariantReport, generated_at: Option<u64>) -> Self {
        let a = &rep.adaptation;
        let verdict = &a.original_verdict;
        let mut edges: Vec<FaceJson> = rep.polyhedron.compact_edges.iter().map(Into::into).collect();
        edges.extend(rep.polyhedron.unbounded_edges.iter().map(FaceJson::from));
        Self {
            schema_version: SCHEMA_VERSION,
            tool: ToolInfo {
                name: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
            },
            generated_at,
            input: InputEcho {
                expression: expression.to_string(),
                normalized: rep.phi.to_string(),
                total_degree: rep.phi.total_degree(),
            },
            newton_polyhedron: PolyhedronJson {
                vertices: rep.polyhedron.vertices.iter().map(point).collect(),
                edges,
            },
            distance: rational_string(&rep.d),
            principal_face: PrincipalFaceJson {
                face: (&verdict.principal_face).into(),
                swap: verdict.swap,
            },
            adaptedness: verdict.into(),
            linear_normalization: LinearNormalizationJson {
                swapped: a.normalization.swapped,
                shear: a.normalization.shear.as_ref().map(Into::into),
                polynomial: a.normalization.polynomial.to_string(),
            },
            root_jet: RootJetJson {
                terms: a.jet.terms.iter().map(Into::into).collect(),
                leading_exponent: a.jet.leading_exponent,
                truncated_at: a.jet.truncated_at,
            },
            adapted_polynomial: AdaptedPolynomialJson {
                expression: a.adapted_polynomial.to_string(),
                truncated_at: a.truncation,
            },
            adaptation_steps: a.step_log.iter().map(Into::into).collect(),
            height_data: HeightJson {
                h: rational_string(&rep.h),
                nu: rep.nu,
                distance_original: rational_string(&rep.d),
                distance_linear: rational_string(&rep.d_linear),
                vertex_form_confirmed: rep.height.vertex_form_confirmed,
            },
            edge_invariants: rep
                .edge_invariants
                .iter()
                .map(|e| EdgeInvariantJson {
                    index: e.index,
                    weight: weight(&e.weight),
                    slope_reciprocal: e.slope_reciprocal.as_ref().map(rational_string),
                    compact: e.compact,
                    h_l: e.h_l.as_ref().map(rational_string),
                })
                .collect(),
            r_height: rep.r_height.as_ref().map(|r| RHeightJson {
                value: rational_string(&r.value),
                principal_line: weight(&r.augmented.principal_line),
                touching_vertex: point(&r.augmented.touching_vertex),
                intersection: point(&r.augmented.intersection),
                boundary: r
                    .augmented
                    .boundary
                    .iter()
                    .map(|b| match b {
                        BoundaryPiece::PrincipalRay { end } => BoundaryJson::PrincipalRay { end: point(end) },
                        BoundaryPiece::Segment { from, to } => BoundaryJson::Segment {
                            from: point(from),
                            to: point(to),
                        },
                        BoundaryPiece::HorizontalRay { start } => BoundaryJson::HorizontalRay { start: point(start) },
                    })
                    .collect(),
            }),
            critical_exponents: CriticalExponentsJson {
                decay_rate: rational_string(&rep.decay_rate),
                log_exponent: rep.log_exponent,
                maximal_threshold: rational_string(&rep.maximal_threshold),
                restriction_pc_prime: rational_string(&rep.restriction_pc_prime),
                restriction_pc: rational_string(&rep.restriction_pc),
                contact_index: rational_string(&rep.contact_index),
                linearly_adaptable: rep.linearly_adaptable,
                m: rep.m,
            },
            singularity_class: rep.singularity_class.as_ref().map(|c| c.tag()),
            cluster_identity_check: ClusterCheckJson {
                all_hold: rep.cluster_check.all_hold,
                edges: rep
                    .cluster_check
                    .edges
                    .iter()
                    .map(|e| ClusterEdgeJson {
                        index: e.index,
                        weight: weight(&e.weight),
                        left: point(&e.left),
                        right: point(&e.right),
                        order1: e.order1,
                        order2: e.order2,
                        cluster_size: e.cluster_size,
                        holds: e.holds,
                    })
                    .collect(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::critical_exponents;
    use crate::poly::parse_polynomial;

    fn report(s: &str) -> serde_json::Value {
        let rep = critical_exponents(&parse_polynomial(s).unwrap()).unwrap();
        serde_json::from_str(&AnalysisReport::new(s, &rep, None).to_json()).unwrap()
    }

    #[test]
    fn pure_power_report() {
        let v = report("(x2-x1^2)^4");
        assert_eq!(v["heightData"]["h"], "4");
        assert_eq!(v["rHeight"]["value"], "3");
        assert_eq!(v["criticalExponents"]["restrictionPcPrime"], "8");
        assert_eq!(v["schemaVersion"], SCHEMA_VERSION);
        assert!(v.get("generatedAt").is_none());
    }

    #[test]
    fn cross_report() {
        let v = report("x1^2*x2^2");
        assert_eq!(v["heightData"]["h"], "2");
        assert_eq!(v["heightData"]["nu"], 1);
        assert_eq!(v["criticalExponents"]["restrictionPcPrime"], "6");
        assert!(v["rHeight"].is_null());
    }

    #[test]
    fn model_example_report() {
        let v = report("(x2-x1^2)^2+x1^5");
        assert_eq!(v["adaptedness"]["adapted"], false);
        assert_eq!(v["rootJet"]["terms"][0]["coefficient"], "1");
        assert_eq!(v["rootJet"]["terms"][0]["exponent"], 2);
        assert_eq!(v["heightData"]["h"], "10/7");
        assert_eq!(v["rHeight"]["value"], "4/3");
        assert_eq!(v["criticalExponents"]["restrictionPcPrime"], "14/3");
        assert_eq!(v["criticalExponents"]["restrictionPc"], "14/11");
    }
}
