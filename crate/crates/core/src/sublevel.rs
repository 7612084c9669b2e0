//! Sublevel-set measures `|{x ∈ [−r,r]² : |φ(x)| < ε}|`, their growth exponent,
//! Knapp boxes along the edges of the adapted Newton polyhedron, and the
//! Iosevich–Sawyer shell-sum integrability check.
//!
//! Measures come from an adaptive quadtree. A cell is settled when an interval
//! enclosure of `φ` over it lies inside or outside `(−ε, ε)`. Refinement stops once
//! the unsettled area is a small fraction of the settled interior. The leftover
//! cells are then estimated by stratified sampling. If the quadtree outgrows its
//! budget, the leftover cells are sampled by seeded Monte Carlo instead.

use std::fmt;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::NumericError;
use crate::invariants::InvariantReport;
use crate::numeric::fit::{fit_log_model, least_squares, power_fit, FitResult};
use crate::numeric::{pairwise_sum, EnclosurePoly, FloatPoly, Interval};
use crate::poly::{int, BivariatePolynomial, JetTerm, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SublevelMethod {
    Grid,
    MonteCarlo,
}

impl SublevelMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SublevelMethod::Grid => "grid",
            SublevelMethod::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SublevelConfig {
    /// Cells per axis of the starting grid.
    pub initial_grid: usize,
    /// Refinement stops when the unsettled area is at most this fraction of the interior.
    pub rel_tol: f64,
    pub max_depth: u32,
    /// Largest number of unsettled cells carried into the next level.
    pub max_level_cells: usize,
    /// Points per axis for stratified sampling of the final unsettled cells.
    pub strata: usize,
    /// Samples for the Monte-Carlo fallback (at least 10⁶ are used).
    pub mc_samples: u64,
    pub seed: u64,
    /// Skip the quadtree and use plain Monte Carlo over the square.
    pub force_monte_carlo: bool,
}

impl Default for SublevelConfig {
    fn default() -> Self {
        Self {
            initial_grid: 64,
            rel_tol: 1e-3,
            max_depth: 40,
            max_level_cells: 1 << 22,
            strata: 4,
            mc_samples: 1 << 21,
            seed: 0x5eed,
            force_monte_carlo: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SublevelEstimate {
    pub epsilon: f64,
    pub measure: f64,
    pub standard_error: f64,
    pub method: SublevelMethod,
    /// Cells classified by the quadtree.
    pub cells: u64,
}

impl SublevelEstimate {
    pub fn csv_row(&self) -> String {
        format!("{:e},{:e},{:e}", self.epsilon, self.measure, self.standard_error)
    }
}

pub const SUBLEVEL_CSV_HEADER: &str = "epsilon,measure,stderr";

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Inside,
    Outside,
    Unsettled,
}

/// Sublevel measures of one phase on `[−r, r]²`.
pub struct SublevelProbe {
    enc: EnclosurePoly,
    radius: f64,
    config: SublevelConfig,
}

impl SublevelProbe {
    pub fn new(phi: &BivariatePolynomial, radius: f64, config: SublevelConfig) -> Result<Self, NumericError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(NumericError::Precondition(format!("domain radius {radius} must be positive")));
        }
        Ok(Self {
            enc: EnclosurePoly::new(phi),
            radius,
            config,
        })
    }

    fn phase(&self) -> &FloatPoly {
        &self.enc.f
    }

    fn classify(&self, x: f64, y: f64, w: f64, eps: f64) -> Class {
        let r = self.enc.range(Interval::new(x, x + w), Interval::new(y, y + w));
        if r.lo > -eps && r.hi < eps {
            Class::Inside
        } else if r.lo >= eps || r.hi <= -eps {
            Class::Outside
        } else {
            Class::Unsettled
        }
    }

    pub fn measure(&self, eps: f64) -> Result<SublevelEstimate, NumericError> {
        if !(eps > 0.0) {
            return Err(NumericError::Precondition(format!("ε = {eps} must be positive")));
        }
        if self.config.force_monte_carlo {
            return Ok(self.plain_monte_carlo(eps));
        }
        let cfg = &self.config;
        let r = self.radius;
        let n0 = cfg.initial_grid.max(1);
        let mut w = 2.0 * r / n0 as f64;
        let mut cells: Vec<(f64, f64)> = (0..n0 * n0)
            .map(|k| (-r + (k / n0) as f64 * w, -r + (k % n0) as f64 * w))
            .collect();
        let mut inside_parts = Vec::new();
        let mut classified = 0u64;
        let mut depth = 0;
        let floor = 1e-15 * (2.0 * r) * (2.0 * r);
        loop {
            classified += cells.len() as u64;
            let classes: Vec<Class> = cells.par_iter().map(|&(x, y)| self.classify(x, y, w, eps)).collect();
            let n_in = classes.iter().filter(|c| **c == Class::Inside).count();
            inside_parts.push(n_in as f64 * w * w);
            cells = cells
                .into_iter()
                .zip(&classes)
                .filter(|(_, c)| **c == Class::Unsettled)
                .map(|(p, _)| p)
                .collect();
            let inside = pairwise_sum(&inside_parts, 0.0);
            let unsettled = cells.len() as f64 * w * w;
            if unsettled <= cfg.rel_tol * inside + floor || depth >= cfg.max_depth {
                let (est, se) = self.stratified(&cells, w, eps);
                return Ok(SublevelEstimate {
                    epsilon: eps,
                    measure: inside + est,
                    standard_error: se.max(f64::MIN_POSITIVE),
                    method: SublevelMethod::Grid,
                    cells: classified,
                });
            }
            if 4 * cells.len() > cfg.max_level_cells {
                let (est, se) = self.monte_carlo_cells(&cells, w, eps);
                return Ok(SublevelEstimate {
                    epsilon: eps,
                    measure: inside + est,
                    standard_error: se.max(f64::MIN_POSITIVE),
                    method: SublevelMethod::MonteCarlo,
                    cells: classified,
                });
            }
            w *= 0.5;
            cells = cells
                .into_iter()
                .flat_map(|(x, y)| [(x, y), (x + w, y), (x, y + w), (x + w, y + w)])
                .collect();
            depth += 1;
        }
    }

    /// Midpoint sampling of the unsettled cells. The error estimate treats each
    /// cell's boundary as a single stratum of `s²` points.
    fn stratified(&self, cells: &[(f64, f64)], w: f64, eps: f64) -> (f64, f64) {
        let s = self.config.strata.max(1);
        let h = w / s as f64;
        let f = self.phase();
        let parts: Vec<(f64, f64)> = cells
            .par_iter()
            .map(|&(x, y)| {
                let mut hits = 0usize;
                for i in 0..s {
                    for j in 0..s {
                        let v = f.eval(x + (i as f64 + 0.5) * h, y + (j as f64 + 0.5) * h);
                        if v.abs() < eps {
                            hits += 1;
                        }
                    }
                }
                let frac = hits as f64 / (s * s) as f64;
                let var = frac * (1.0 - frac) / (s * s) as f64 + 1.0 / ((s * s) as f64).powi(2);
                (frac * w * w, var * w.powi(4))
            })
            .collect();
        let est = pairwise_sum(&parts.iter().map(|p| p.0).collect::<Vec<_>>(), 0.0);
        let var = pairwise_sum(&parts.iter().map(|p| p.1).collect::<Vec<_>>(), 0.0);
        (est, var.sqrt())
    }

    fn monte_carlo_cells(&self, cells: &[(f64, f64)], w: f64, eps: f64) -> (f64, f64) {
        let total = self.config.mc_samples.max(1_000_000);
        let per = (total / cells.len().max(1) as u64).max(16);
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ eps.to_bits());
        let f = self.phase();
        let mut est = 0.0;
        let mut var = 0.0;
        for &(x, y) in cells {
            let mut hits = 0u64;
            for _ in 0..per {
                let px = x + w * rng.gen::<f64>();
                let py = y + w * rng.gen::<f64>();
                if f.eval(px, py).abs() < eps {
                    hits += 1;
                }
            }
            let p = hits as f64 / per as f64;
            est += p * w * w;
            var += (p * (1.0 - p) / per as f64).max(1.0 / (per * per) as f64) * w.powi(4);
        }
        (est, var.sqrt())
    }

    fn plain_monte_carlo(&self, eps: f64) -> SublevelEstimate {
        let n = self.config.mc_samples.max(1_000_000);
        let r = self.radius;
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ eps.to_bits());
        let f = self.phase();
        let mut hits = 0u64;
        for _ in 0..n {
            let x = rng.gen_range(-r..r);
            let y = rng.gen_range(-r..r);
            if f.eval(x, y).abs() < eps {
                hits += 1;
            }
        }
        let area = 4.0 * r * r;
        let p = hits as f64 / n as f64;
        SublevelEstimate {
            epsilon: eps,
            measure: p * area,
            standard_error: area * (p * (1.0 - p) / n as f64).sqrt().max(1.0 / n as f64),
            method: SublevelMethod::MonteCarlo,
            cells: 0,
        }
    }
}

pub fn sublevel_measure(
    phi: &BivariatePolynomial,
    r: f64,
    eps: f64,
    config: &SublevelConfig,
) -> Result<SublevelEstimate, NumericError> {
    SublevelProbe::new(phi, r, config.clone())?.measure(eps)
}

/// `2^{−k}` for `k = k_max, …, k_min`, i.e. increasing.
pub fn dyadic_eps(k_min: u32, k_max: u32) -> Vec<f64> {
    (k_min..=k_max).rev().map(|k| 2f64.powi(-(k as i32))).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SublevelFit {
    /// Two-term fit `log|{|φ|<ε}| ≈ σ log ε + b log log(1/ε) + c`.
    pub fit: FitResult,
    /// Pure power-law exponent over the same grid.
    pub power_exponent: f64,
    pub estimates: Vec<SublevelEstimate>,
}

impl SublevelFit {
    /// The fitted growth exponent.
    pub fn sigma(&self) -> f64 {
        self.fit.slope
    }
}

/// Fits the growth exponent over a dyadic grid spanning at least three decades.
pub fn sublevel_fit(
    phi: &BivariatePolynomial,
    r: f64,
    eps_grid: &[f64],
    config: &SublevelConfig,
) -> Result<SublevelFit, NumericError> {
    if eps_grid.len() < 3 || eps_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(NumericError::Precondition("ε grid must be increasing with ≥ 3 points".into()));
    }
    if eps_grid[eps_grid.len() - 1] / eps_grid[0] < 1000.0 {
        return Err(NumericError::Precondition("ε grid must span at least three decades".into()));
    }
    if eps_grid.iter().any(|&e| e >= 1.0) {
        return Err(NumericError::Precondition("ε grid must lie below 1".into()));
    }
    let probe = SublevelProbe::new(phi, r, config.clone())?;
    let estimates: Vec<SublevelEstimate> = eps_grid.iter().map(|&e| probe.measure(e)).collect::<Result<_, _>>()?;
    let samples: Vec<(f64, f64)> = estimates.iter().map(|e| (e.epsilon, e.measure)).collect();
    let fit = fit_log_model(&samples, None)?;
    let (power_exponent, _) = power_fit(&samples)?;
    Ok(SublevelFit {
        fit,
        power_exponent,
        estimates,
    })
}

/// The closed form `|{|x₁x₂| < a}| = 4(a + a ln(1/a))` on `[−1,1]²`, `a = √ε < 1`,
/// for `φ = x₁²x₂²`.
pub fn cross_closed_form(eps: f64) -> f64 {
    let a = eps.sqrt();
    4.0 * (a + a * (1.0 / a).ln())
}

/// Which face of the adapted Newton polyhedron a Knapp box follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "index")]
pub enum KnappEdge {
    /// Edge `l` of the adapted polyhedron, numbered as in the edge invariants.
    Edge(usize),
    /// The horizontal unbounded edge.
    Horizontal,
    /// The principal line `L` of the linearly normalized phase.
    PrincipalLine,
}

impl fmt::Display for KnappEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnappEdge::Edge(l) => write!(f, "{l}"),
            KnappEdge::Horizontal => write!(f, "horizontal"),
            KnappEdge::PrincipalLine => write!(f, "principal"),
        }
    }
}

impl std::str::FromStr for KnappEdge {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "horizontal" => Ok(KnappEdge::Horizontal),
            "principal" | "principal-line" => Ok(KnappEdge::PrincipalLine),
            _ => s
                .parse()
                .map(KnappEdge::Edge)
                .map_err(|_| format!("edge must be an index, 'horizontal' or 'principal', got {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KnappConfig {
    /// Sample points per box (a square grid including the corners).
    pub samples: usize,
    /// Half-width in `x₁` used when `κ₁ = 0`.
    pub rho0: f64,
}

impl Default for KnappConfig {
    fn default() -> Self {
        Self {
            samples: 1_000_000,
            rho0: 0.25,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KnappBox {
    pub edge: KnappEdge,
    pub epsilon: f64,
    /// `(κ₁, κ₂)` of the face, as exact strings.
    pub weight: (String, String),
    pub half_widths: (f64, f64),
    /// The jet `ψ` the box is centred on, in the linearly normalized coordinates.
    pub jet: Vec<(String, u32)>,
    pub sup_phi: f64,
    pub ratio: f64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lower_bound_pc_prime: Rational,
}

impl KnappBox {
    pub fn csv_row(&self) -> String {
        format!("{:e},{:e}", self.epsilon, self.sup_phi)
    }
}

pub const KNAPP_CSV_HEADER: &str = "epsilon,supPhi";

/// Face weight and exponent bound for a Knapp box, or why it is not eligible.
fn knapp_face(report: &InvariantReport, edge: KnappEdge) -> Result<(Rational, Rational, Rational), NumericError> {
    if report.linearly_adaptable {
        return Err(NumericError::Precondition(
            "Knapp boxes need a phase that is not linearly adaptable".into(),
        ));
    }
    let two = int(2);
    match edge {
        KnappEdge::PrincipalLine => {
            let w = report
                .adaptation
                .principal_weight()
                .ok_or_else(|| NumericError::Precondition("no principal line".into()))?;
            Ok((w.kappa1.clone(), w.kappa2.clone(), &two * &report.d_linear + &two))
        }
        KnappEdge::Edge(_) | KnappEdge::Horizontal => {
            let found = report.edge_invariants.iter().find(|e| match edge {
                KnappEdge::Edge(l) => e.index == l,
                _ => !e.compact && e.weight.kappa1 == int(0),
            });
            let e = found.ok_or_else(|| NumericError::Precondition(format!("edge {edge} does not exist")))?;
            let hl = e
                .h_l
                .as_ref()
                .ok_or_else(|| NumericError::Precondition(format!("edge {edge} has a_l ≤ m and is not eligible")))?;
            Ok((e.weight.kappa1.clone(), e.weight.kappa2.clone(), &two * hl + &two))
        }
    }
}

fn pow_rational(eps: f64, k: &Rational) -> f64 {
    eps.powf(k.to_f64().unwrap_or(0.0))
}

/// Builds the box `|y₁| ≤ ε^{κ₁}`, `|y₂| ≤ ε^{κ₂}` with `x = (y₁, y₂ + ψ(y₁))` in the
/// linearly normalized coordinates, and samples `sup |φ|` over it.
pub fn knapp_box(
    report: &InvariantReport,
    edge: KnappEdge,
    eps: f64,
    config: &KnappConfig,
) -> Result<KnappBox, NumericError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(NumericError::Precondition(format!("ε = {eps} must lie in (0, 1)")));
    }
    let (k1, k2, bound) = knapp_face(report, edge)?;
    let w1 = if k1 == int(0) { config.rho0 } else { pow_rational(eps, &k1) };
    let w2 = pow_rational(eps, &k2);
    let phase = FloatPoly::from_poly(&report.adaptation.normalization.polynomial);
    let jet = &report.adaptation.jet;
    let n = ((config.samples as f64).sqrt().ceil() as usize).max(2);
    let sup = (0..n)
        .into_par_iter()
        .map(|i| {
            let y1 = -w1 + 2.0 * w1 * i as f64 / (n - 1) as f64;
            let psi = jet.evaluate(y1);
            (0..n)
                .map(|j| {
                    let y2 = -w2 + 2.0 * w2 * j as f64 / (n - 1) as f64;
                    phase.eval(y1, y2 + psi).abs()
                })
                .fold(0.0, f64::max)
        })
        .collect::<Vec<f64>>()
        .into_iter()
        .fold(0.0, f64::max);
    Ok(KnappBox {
        edge,
        epsilon: eps,
        weight: (k1.to_string(), k2.to_string()),
        half_widths: (w1, w2),
        jet: jet.terms.iter().map(|t: &JetTerm| (t.coefficient.to_string(), t.exponent)).collect(),
        sup_phi: sup,
        ratio: sup / eps,
        lower_bound_pc_prime: bound,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KnappSeries {
    pub edge: KnappEdge,
    pub boxes: Vec<KnappBox>,
    /// Smallest and largest `supPhi/ε`.
    pub c1: f64,
    pub c2: f64,
    /// Whether `c₁ > 0` and `c₂/c₁` stays below the spread tolerance.
    pub bounded: bool,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lower_bound_pc_prime: Rational,
}

/// Largest admissible `c₂/c₁` for a box sequence to count as `supPhi ≍ ε`.
pub const KNAPP_SPREAD_TOLERANCE: f64 = 4.0;

pub fn knapp_series(
    report: &InvariantReport,
    edge: KnappEdge,
    eps_seq: &[f64],
    config: &KnappConfig,
) -> Result<KnappSeries, NumericError> {
    let boxes: Vec<KnappBox> = eps_seq
        .iter()
        .map(|&e| knapp_box(report, edge, e, config))
        .collect::<Result<_, _>>()?;
    let c1 = boxes.iter().map(|b| b.ratio).fold(f64::INFINITY, f64::min);
    let c2 = boxes.iter().map(|b| b.ratio).fold(0.0, f64::max);
    let lower_bound_pc_prime = knapp_face(report, edge)?.2;
    Ok(KnappSeries {
        edge,
        bounded: c1 > 0.0 && c2 / c1 <= KNAPP_SPREAD_TOLERANCE,
        boxes,
        c1,
        c2,
        lower_bound_pc_prime,
    })
}

/// All faces that yield a Knapp box: the principal line and every edge with `a_l > m`.
pub fn eligible_knapp_edges(report: &InvariantReport) -> Vec<KnappEdge> {
    if report.linearly_adaptable {
        return Vec::new();
    }
    let mut out = vec![KnappEdge::PrincipalLine];
    for e in &report.edge_invariants {
        if e.h_l.is_some() {
            out.push(if e.compact { KnappEdge::Edge(e.index) } else { KnappEdge::Horizontal });
        }
    }
    out
}

/// The largest necessary-condition bound over all eligible boxes.
pub fn knapp_necessity_bound(report: &InvariantReport) -> Result<Option<Rational>, NumericError> {
    let mut best: Option<Rational> = None;
    for e in eligible_knapp_edges(report) {
        let b = knapp_face(report, e)?.2;
        best = Some(match best {
            Some(x) if x >= b => x,
            _ => b,
        });
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegrabilityPrediction {
    Convergent,
    Divergent,
    /// `p = h`: divergent for polynomial phases.
    BoundaryDivergent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    Convergent,
    Divergent,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntegrabilityVerdict {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub p: Rational,
    pub predicted_convergent: bool,
    pub prediction: IntegrabilityPrediction,
    pub numeric_trend: Trend,
    /// Fitted growth rate of `log₂` of the shell terms per dyadic step, with its standard error.
    pub shell_slope: f64,
    pub shell_slope_error: f64,
    /// `(k, |{2^{−k} ≤ |φ| < 2^{−k+1}}|, shell term)`.
    pub shells: Vec<(u32, f64, f64)>,
}

/// Slopes within this distance of zero are not called either way.
pub const TREND_TOLERANCE: f64 = 0.01;

/// Compares the exact threshold `1/p < 1/h` with the growth of
/// `Σ_k |{2^{−k} ≤ |φ| < 2^{−k+1}}| · 2^{k/p}` over `k ∈ [k_min, k_max]`.
pub fn iosevich_sawyer_check(
    phi: &BivariatePolynomial,
    h: &Rational,
    r: f64,
    p: &Rational,
    k_range: (u32, u32),
    config: &SublevelConfig,
) -> Result<IntegrabilityVerdict, NumericError> {
    if *p <= int(1) {
        return Err(NumericError::Precondition(format!("p = {p} must exceed 1")));
    }
    let (k_min, k_max) = k_range;
    if k_min < 1 || k_max < k_min + 3 {
        return Err(NumericError::Precondition("need at least four dyadic shells".into()));
    }
    let inv_p = p.recip();
    let inv_h = h.recip();
    let prediction = if inv_p < inv_h {
        IntegrabilityPrediction::Convergent
    } else if inv_p > inv_h {
        IntegrabilityPrediction::Divergent
    } else {
        IntegrabilityPrediction::BoundaryDivergent
    };
    let probe = SublevelProbe::new(phi, r, config.clone())?;
    let levels: Vec<f64> = ((k_min - 1)..=k_max)
        .map(|k| probe.measure(2f64.powi(-(k as i32))).map(|e| e.measure))
        .collect::<Result<_, _>>()?;
    let pf = inv_p.to_f64().unwrap_or(0.0);
    let mut shells = Vec::new();
    for (i, k) in (k_min..=k_max).enumerate() {
        let shell = (levels[i] - levels[i + 1]).max(0.0);
        shells.push((k, shell, shell * 2f64.powf(k as f64 * pf)));
    }
    let usable: Vec<&(u32, f64, f64)> = shells.iter().filter(|s| s.2 > 0.0).collect();
    let (slope, slope_err) = if usable.len() >= 3 {
        let ks: Vec<f64> = usable.iter().map(|s| s.0 as f64).collect();
        let ys: Vec<f64> = usable.iter().map(|s| s.2.log2()).collect();
        let (c, rms) = least_squares(&[ks.clone(), vec![1.0; ks.len()]], &ys)?;
        let mean = ks.iter().sum::<f64>() / ks.len() as f64;
        let sxx: f64 = ks.iter().map(|k| (k - mean).powi(2)).sum();
        let dof = (ks.len() as f64 - 2.0).max(1.0);
        (c[0], rms * (ks.len() as f64 / dof).sqrt() / sxx.sqrt())
    } else {
        (f64::NAN, f64::INFINITY)
    };
    let trend = if slope - 3.0 * slope_err > TREND_TOLERANCE {
        Trend::Divergent
    } else if slope + 3.0 * slope_err < -TREND_TOLERANCE {
        Trend::Convergent
    } else {
        Trend::Inconclusive
    };
    Ok(IntegrabilityVerdict {
        p: p.clone(),
        predicted_convergent: prediction == IntegrabilityPrediction::Convergent,
        prediction,
        numeric_trend: trend,
        shell_slope: slope,
        shell_slope_error: slope_err,
        shells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::critical_exponents;
    use crate::poly::{parse_polynomial, rat};

    fn poly(s: &str) -> BivariatePolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn strip_area() {
        let e = sublevel_measure(&poly("x1"), 1.0, 0.1, &SublevelConfig::default()).unwrap();
        assert!((e.measure - 0.4).abs() < 1e-4, "{e:?}");
        assert_eq!(e.method, SublevelMethod::Grid);
    }

    #[test]
    fn disc_and_anisotropic_areas() {
        let cfg = SublevelConfig::default();
        for &eps in &[1e-2, 1e-4, 2f64.powi(-20)] {
            let e = sublevel_measure(&poly("x1^2 + x2^2"), 1.0, eps, &cfg).unwrap();
            let exact = std::f64::consts::PI * eps;
            assert!((e.measure / exact - 1.0).abs() < 2e-3, "ε={eps}: {} vs {exact}", e.measure);
            // ∫2√(ε − x⁴)dx = 2 ε^{3/4} ∫_{-1}^{1} √(1−u⁴) du.
            let e = sublevel_measure(&poly("x1^4 + x2^2"), 1.0, eps, &cfg).unwrap();
            let exact = 2.0 * eps.powf(0.75) * 1.748_038_369_528_080_7;
            assert!((e.measure / exact - 1.0).abs() < 2e-3, "ε={eps}: {} vs {exact}", e.measure);
        }
    }

    #[test]
    fn cross_matches_closed_form() {
        let cfg = SublevelConfig::default();
        for &eps in &[1e-2, 1e-4, 1e-6] {
            let e = sublevel_measure(&poly("x1^2*x2^2"), 1.0, eps, &cfg).unwrap();
            let exact = cross_closed_form(eps);
            assert!((e.measure / exact - 1.0).abs() < 2e-3, "ε={eps}: {} vs {exact}", e.measure);
        }
    }

    #[test]
    fn grid_and_monte_carlo_agree() {
        let phi = poly("(x2 - x1^2)^2 + x1^5");
        let grid = sublevel_measure(&phi, 1.0, 1e-3, &SublevelConfig::default()).unwrap();
        let mc_cfg = SublevelConfig { force_monte_carlo: true, ..Default::default() };
        let mc = sublevel_measure(&phi, 1.0, 1e-3, &mc_cfg).unwrap();
        assert_eq!(mc.method, SublevelMethod::MonteCarlo);
        let combined = grid.standard_error.hypot(mc.standard_error);
        assert!((grid.measure - mc.measure).abs() < 3.0 * combined, "{grid:?} {mc:?}");
        // The tight-budget fallback samples the unsettled cells and stays accurate.
        let tight = SublevelConfig { max_level_cells: 4096, ..Default::default() };
        let fb = sublevel_measure(&phi, 1.0, 1e-3, &tight).unwrap();
        assert_eq!(fb.method, SublevelMethod::MonteCarlo);
        assert!((fb.measure - grid.measure).abs() < 3.0 * fb.standard_error.hypot(grid.standard_error) + 1e-4 * grid.measure);
    }

    #[test]
    fn measure_is_monotone_in_eps() {
        let probe = SublevelProbe::new(&poly("x1^3 + x2^3 - x1*x2^4"), 1.0, SublevelConfig::default()).unwrap();
        let values: Vec<f64> = dyadic_eps(2, 16).iter().map(|&e| probe.measure(e).unwrap().measure).collect();
        assert!(values.windows(2).all(|w| w[1] >= w[0]), "{values:?}");
    }

    #[test]
    fn knapp_boxes_for_pure_power() {
        let rep = critical_exponents(&poly("(x2 - x1^2)^4")).unwrap();
        let cfg = KnappConfig { samples: 10_000, ..Default::default() };
        let b = knapp_box(&rep, KnappEdge::Horizontal, 2f64.powi(-8), &cfg).unwrap();
        assert!((b.ratio - 1.0).abs() < 1e-9, "{b:?}");
        assert_eq!(b.lower_bound_pc_prime, int(8));
        let b = knapp_box(&rep, KnappEdge::PrincipalLine, 2f64.powi(-8), &cfg).unwrap();
        assert_eq!(b.lower_bound_pc_prime, &int(2) * &rep.d_linear + int(2));
        assert_eq!(knapp_necessity_bound(&rep).unwrap(), Some(int(8)));
    }

    #[test]
    fn knapp_boxes_for_the_model_example() {
        let rep = critical_exponents(&poly("(x2 - x1^2)^2 + x1^5")).unwrap();
        let edges = eligible_knapp_edges(&rep);
        assert_eq!(edges, vec![KnappEdge::PrincipalLine, KnappEdge::Edge(1)]);
        let cfg = KnappConfig { samples: 40_000, ..Default::default() };
        let s = knapp_series(&rep, KnappEdge::Edge(1), &dyadic_eps(4, 20), &cfg).unwrap();
        assert_eq!(s.lower_bound_pc_prime, rat(32, 7));
        assert!(s.c2 <= 2.0 + 1e-9 && s.bounded, "{s:?}");
        assert_eq!(knapp_necessity_bound(&rep).unwrap(), Some(rep.restriction_pc_prime.clone()));
        assert!(matches!(
            knapp_box(&rep, KnappEdge::Horizontal, 0.01, &cfg),
            Err(NumericError::Precondition(_))
        ));
    }

    #[test]
    fn integrability_verdicts() {
        let phi = poly("x1^4 + x2^2");
        let h = rat(4, 3);
        let cfg = SublevelConfig::default();
        let v = iosevich_sawyer_check(&phi, &h, 1.0, &int(2), (5, 16), &cfg).unwrap();
        assert_eq!((v.prediction, v.numeric_trend), (IntegrabilityPrediction::Convergent, Trend::Convergent));
        let v = iosevich_sawyer_check(&phi, &h, 1.0, &rat(5, 4), (5, 16), &cfg).unwrap();
        assert_eq!((v.prediction, v.numeric_trend), (IntegrabilityPrediction::Divergent, Trend::Divergent));
        let v = iosevich_sawyer_check(&phi, &h, 1.0, &rat(4, 3), (5, 16), &cfg).unwrap();
        assert_eq!(v.prediction, IntegrabilityPrediction::BoundaryDivergent);
        assert!(!v.predicted_convergent);
    }
}
