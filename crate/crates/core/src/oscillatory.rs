//! Oscillatory integrals `I(λ;s) = ∫ e^{iλ(φ(x)+s·x)} η(x) dx` with a smooth bump
//! cutoff, and decay-exponent fits against the exact height.
//!
//! # Quadrature
//!
//! The disc `|x| < r` is covered by a coarse grid of cells. Each cell is split into
//! square panels small enough that the phase deviates from its tangent plane at the
//! panel centre by at most `phase_per_panel` radians. That bound uses an interval
//! enclosure of the Hessian over the cell. On each panel the linear part of the phase
//! is integrated exactly by Filon-type weights. The smooth remainder
//! `e^{iλ(φ − tangent)} η` is handled by a tensor Gauss–Legendre rule. Two panel sizes
//! are computed, differing by a factor of two, and their difference is the reported
//! error estimate.
//!
//! A plain Gauss–Legendre mode resolves every oscillation directly. It is usable only
//! for small `λ` and serves as an independent cross-check.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::NumericError;
use crate::numeric::fit::{fit_log_model, FitResult, Prediction};
use crate::numeric::{pairwise_sum, FloatPoly, GaussLegendre, Interval};
use crate::poly::{BivariatePolynomial, UniPoly};

/// Radially symmetric bump `η(x) = exp(1 − 1/(1 − |x/r|²))` supported in `|x| < r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CutoffSpec {
    pub radius: f64,
}

impl Default for CutoffSpec {
    fn default() -> Self {
        Self { radius: 1.0 }
    }
}

impl CutoffSpec {
    pub fn new(radius: f64) -> Result<Self, NumericError> {
        if !(radius > 0.0 && radius <= 1.0) {
            return Err(NumericError::Precondition(format!("cutoff radius {radius} must lie in (0, 1]")));
        }
        Ok(Self { radius })
    }

    pub fn kind(&self) -> &'static str {
        "smooth-bump"
    }

    /// `η` as a function of `|x|²`.
    #[inline]
    pub fn eval_sq(&self, rho_sq: f64) -> f64 {
        let u = rho_sq / (self.radius * self.radius);
        if u >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - u)).exp()
        }
    }

    #[inline]
    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        self.eval_sq(x1 * x1 + x2 * x2)
    }

    /// `∫_{ℝ²} η = π r² · e · E₂(1)`.
    pub fn integral_2d(&self) -> f64 {
        std::f64::consts::PI * self.radius * self.radius * BUMP_RADIAL_CONSTANT
    }
}

/// `e·E₂(1) = 1 − e·E₁(1)`.
const BUMP_RADIAL_CONSTANT: f64 = 0.403_652_637_676_805_9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureMethod {
    /// Filon-type panels; cost grows linearly in `λ`.
    Filon,
    /// Plain Gauss–Legendre resolving every period; cost grows like `λ²`.
    Gauss,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuadratureConfig {
    pub method: QuadratureMethod,
    pub gauss_order: usize,
    /// Bound on the non-linear part of `λ·phase` across a coarse panel (Filon mode).
    pub phase_per_panel: f64,
    /// Nodes per oscillation period factor (Gauss mode), on top of eight.
    pub oversample: f64,
    /// Maximal node evaluations per integral, both refinement levels included.
    pub budget: u64,
    /// Coarse cells per axis.
    pub cells: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            method: QuadratureMethod::Filon,
            gauss_order: 12,
            phase_per_panel: 12.0,
            oversample: 1.25,
            budget: 1 << 30,
            cells: 32,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OscillatoryResult {
    pub lambda: f64,
    pub s: (f64, f64),
    #[serde(serialize_with = "serialize_complex")]
    pub value: Complex64,
    pub estimated_error: f64,
    pub node_evaluations: u64,
}

fn serialize_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

impl OscillatoryResult {
    pub fn abs(&self) -> f64 {
        self.value.norm()
    }

    /// `lambda,s1,s2,reI,imI,absI,estErr`.
    pub fn csv_row(&self) -> String {
        format!(
            "{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            self.lambda,
            self.s.0,
            self.s.1,
            self.value.re,
            self.value.im,
            self.abs(),
            self.estimated_error
        )
    }
}

pub const CSV_HEADER: &str = "lambda,s1,s2,reI,imI,absI,estErr";

/// Phase data prepared once per polynomial.
struct Phase {
    f: FloatPoly,
    d1: FloatPoly,
    d2: FloatPoly,
    d11: FloatPoly,
    d12: FloatPoly,
    d22: FloatPoly,
}

impl Phase {
    fn new(phi: &BivariatePolynomial) -> Self {
        let f = FloatPoly::from_poly(phi);
        Self {
            d1: f.derivative(1, 0),
            d2: f.derivative(0, 1),
            d11: f.derivative(2, 0),
            d12: f.derivative(1, 1),
            d22: f.derivative(0, 2),
            f,
        }
    }

    /// Gershgorin bound on the spectral norm of the Hessian over a box.
    fn hessian_bound(&self, x1: Interval, x2: Interval) -> f64 {
        let a = self.d11.range_natural(x1, x2).mag();
        let b = self.d12.range_natural(x1, x2).mag();
        let c = self.d22.range_natural(x1, x2).mag();
        a.max(c) + b
    }

    fn gradient_bound(&self, x1: Interval, x2: Interval, s: (f64, f64)) -> f64 {
        let g1 = (self.d1.range_natural(x1, x2) + Interval::point(s.0)).mag();
        let g2 = (self.d2.range_natural(x1, x2) + Interval::point(s.1)).mag();
        g1.hypot(g2)
    }
}

/// One coarse cell with its panel count at the coarse refinement level.
#[derive(Clone, Copy)]
struct Cell {
    x0: f64,
    y0: f64,
    width: f64,
    panels: usize,
}

struct Integrator<'a> {
    phase: &'a Phase,
    cutoff: CutoffSpec,
    rule: GaussLegendre,
    lambda: f64,
    s: (f64, f64),
    method: QuadratureMethod,
}

impl Integrator<'_> {
    /// Integral over one cell split into `n × n` panels.
    fn cell(&self, c: &Cell, n: usize) -> Complex64 {
        let order = self.rule.order();
        let a = c.width / (2 * n) as f64;
        let mut w1 = vec![Complex64::new(0.0, 0.0); order];
        let mut w2 = vec![Complex64::new(0.0, 0.0); order];
        let mut vals = vec![Complex64::new(0.0, 0.0); order * order];
        let mut panels = Vec::with_capacity(n * n);
        for i in 0..n {
            let cx = c.x0 + (2 * i + 1) as f64 * a;
            for j in 0..n {
                let cy = c.y0 + (2 * j + 1) as f64 * a;
                panels.push(self.panel(cx, cy, a, &mut w1, &mut w2, &mut vals));
            }
        }
        pairwise_sum(&panels, Complex64::new(0.0, 0.0))
    }

    fn panel(
        &self,
        cx: f64,
        cy: f64,
        a: f64,
        w1: &mut [Complex64],
        w2: &mut [Complex64],
        vals: &mut [Complex64],
    ) -> Complex64 {
        let r = self.cutoff.radius;
        // Panels wholly outside the support contribute nothing.
        let near = (cx.abs() - a).max(0.0).hypot((cy.abs() - a).max(0.0));
        if near >= r {
            return Complex64::new(0.0, 0.0);
        }
        let order = self.rule.order();
        let nodes = &self.rule.nodes;
        let lam = self.lambda;
        match self.method {
            QuadratureMethod::Filon => {
                let f0 = self.phase.f.eval(cx, cy);
                let g1 = self.phase.d1.eval(cx, cy);
                let g2 = self.phase.d2.eval(cx, cy);
                self.rule.filon_weights(lam * (g1 + self.s.0) * a, w1);
                self.rule.filon_weights(lam * (g2 + self.s.1) * a, w2);
                for (j, &tj) in nodes.iter().enumerate() {
                    let x = cx + a * tj;
                    for (k, &tk) in nodes.iter().enumerate() {
                        let y = cy + a * tk;
                        let eta = self.cutoff.eval(x, y);
                        vals[j * order + k] = if eta == 0.0 {
                            Complex64::new(0.0, 0.0)
                        } else {
                            let rem = self.phase.f.eval(x, y) - f0 - g1 * (x - cx) - g2 * (y - cy);
                            Complex64::from_polar(eta, lam * rem)
                        };
                    }
                }
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..order {
                    let mut row = Complex64::new(0.0, 0.0);
                    for k in 0..order {
                        row += w2[k] * vals[j * order + k];
                    }
                    acc += w1[j] * row;
                }
                let centre = Complex64::from_polar(a * a, lam * (f0 + self.s.0 * cx + self.s.1 * cy));
                centre * acc
            }
            QuadratureMethod::Gauss => {
                let w = &self.rule.weights;
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, &tj) in nodes.iter().enumerate() {
                    let x = cx + a * tj;
                    let mut row = Complex64::new(0.0, 0.0);
                    for (k, &tk) in nodes.iter().enumerate() {
                        let y = cy + a * tk;
                        let eta = self.cutoff.eval(x, y);
                        if eta != 0.0 {
                            let ph = self.phase.f.eval(x, y) + self.s.0 * x + self.s.1 * y;
                            row += Complex64::from_polar(eta * w[k], lam * ph);
                        }
                    }
                    acc += row * w[j];
                }
                acc * (a * a)
            }
        }
    }
}

fn plan_cells(
    phase: &Phase,
    cutoff: CutoffSpec,
    lambda: f64,
    s: (f64, f64),
    config: &QuadratureConfig,
) -> Vec<Cell> {
    let r = cutoff.radius;
    let nc = config.cells.max(1);
    let width = 2.0 * r / nc as f64;
    let lam = lambda.abs();
    let mut cells = Vec::new();
    for i in 0..nc {
        let x0 = -r + i as f64 * width;
        for j in 0..nc {
            let y0 = -r + j as f64 * width;
            let near = near_axis(x0, width).hypot(near_axis(y0, width));
            if near >= r {
                continue;
            }
            let bx = Interval::new(x0, x0 + width);
            let by = Interval::new(y0, y0 + width);
            let half = match config.method {
                QuadratureMethod::Filon => {
                    let hb = phase.hessian_bound(bx, by);
                    if hb * lam == 0.0 {
                        f64::INFINITY
                    } else {
                        (config.phase_per_panel / (lam * hb)).sqrt()
                    }
                }
                QuadratureMethod::Gauss => {
                    let g = phase.gradient_bound(bx, by, s);
                    if g * lam == 0.0 {
                        f64::INFINITY
                    } else {
                        let period = 2.0 * std::f64::consts::PI / (lam * g);
                        0.5 * period * config.gauss_order as f64 / (8.0 * config.oversample)
                    }
                }
            };
            let panels = ((width / (2.0 * half)).ceil() as usize).max(1);
            cells.push(Cell { x0, y0, width, panels });
        }
    }
    cells
}

fn near_axis(lo: f64, width: f64) -> f64 {
    if lo <= 0.0 && lo + width >= 0.0 {
        0.0
    } else {
        lo.abs().min((lo + width).abs())
    }
}

/// `∫ e^{iλ(φ(x) + s·x)} η(x) dx`.
pub fn oscillatory_integral(
    phi: &BivariatePolynomial,
    cutoff: CutoffSpec,
    lambda: f64,
    s: (f64, f64),
    config: &QuadratureConfig,
) -> Result<OscillatoryResult, NumericError> {
    if !lambda.is_finite() {
        return Err(NumericError::Precondition(format!("λ = {lambda} is not finite")));
    }
    let phase = Phase::new(phi);
    integrate_prepared(&phase, cutoff, lambda, s, config)
}

fn integrate_prepared(
    phase: &Phase,
    cutoff: CutoffSpec,
    lambda: f64,
    s: (f64, f64),
    config: &QuadratureConfig,
) -> Result<OscillatoryResult, NumericError> {
    let cells = plan_cells(phase, cutoff, lambda, s, config);
    let order = config.gauss_order as u64;
    let needed: u64 = cells
        .iter()
        .map(|c| {
            let n = c.panels as u64;
            5 * n * n * order * order
        })
        .sum();
    if needed > config.budget {
        return Err(NumericError::BudgetExceeded { needed, budget: config.budget });
    }
    let integrator = Integrator {
        phase,
        cutoff,
        rule: GaussLegendre::new(config.gauss_order),
        lambda,
        s,
        method: config.method,
    };
    let parts: Vec<(Complex64, Complex64)> = cells
        .par_iter()
        .map(|c| (integrator.cell(c, c.panels), integrator.cell(c, 2 * c.panels)))
        .collect();
    let coarse: Vec<Complex64> = parts.iter().map(|p| p.0).collect();
    let fine: Vec<Complex64> = parts.iter().map(|p| p.1).collect();
    let zero = Complex64::new(0.0, 0.0);
    let coarse = pairwise_sum(&coarse, zero);
    let fine = pairwise_sum(&fine, zero);
    // Rounding floor: every node carries a relative error of a few ulps of λ·phase.
    let floor = 1e-14 * cutoff.integral_2d() * (1.0 + lambda.abs() * 1e-6);
    Ok(OscillatoryResult {
        lambda,
        s,
        value: fine,
        estimated_error: (fine - coarse).norm() + floor,
        node_evaluations: needed,
    })
}

/// `2^{k}` for `k = lo..=hi`.
pub fn dyadic_grid(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|k| 2f64.powi(k)).collect()
}

/// Integrals over a λ grid at a fixed `s`, in parallel.
pub fn sweep(
    phi: &BivariatePolynomial,
    cutoff: CutoffSpec,
    lambdas: &[f64],
    s: (f64, f64),
    config: &QuadratureConfig,
) -> Result<Vec<OscillatoryResult>, NumericError> {
    let phase = Phase::new(phi);
    lambdas
        .iter()
        .map(|&l| integrate_prepared(&phase, cutoff, l, s, config))
        .collect()
}

/// Checks that every value is well above its error estimate.
fn samples_of(results: &[OscillatoryResult]) -> Result<Vec<(f64, f64)>, NumericError> {
    results
        .iter()
        .map(|r| {
            if r.abs() <= 10.0 * r.estimated_error {
                Err(NumericError::IllConditioned(format!(
                    "|I| = {:e} at λ = {} is below ten times its error estimate {:e}",
                    r.abs(),
                    r.lambda,
                    r.estimated_error
                )))
            } else {
                Ok((r.lambda, r.abs()))
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DecayFit {
    pub fit: FitResult,
    pub results: Vec<OscillatoryResult>,
}

/// Fits `|I(λ;s)|` over `lambda_grid`. When `prediction` holds the exact `(−1/h, ν)`,
/// the slope is fitted with the log power pinned to `ν` and vice versa.
pub fn decay_fit(
    phi: &BivariatePolynomial,
    cutoff: CutoffSpec,
    lambda_grid: &[f64],
    s: (f64, f64),
    prediction: Option<Prediction>,
    config: &QuadratureConfig,
) -> Result<DecayFit, NumericError> {
    check_grid(lambda_grid)?;
    let results = sweep(phi, cutoff, lambda_grid, s, config)?;
    let fit = fit_log_model(&samples_of(&results)?, prediction)?;
    Ok(DecayFit { fit, results })
}

fn check_grid(grid: &[f64]) -> Result<(), NumericError> {
    if grid.len() < 3 || grid.windows(2).any(|w| !(w[1] > w[0])) || grid[0] <= 0.0 {
        return Err(NumericError::Precondition("λ grid must be positive, increasing, with ≥ 3 points".into()));
    }
    if grid[grid.len() - 1] / grid[0] < 100.0 {
        return Err(NumericError::Precondition("λ grid must span at least two decades".into()));
    }
    Ok(())
}

/// `s` samples: the origin, then a sunflower spiral filling the disc of radius `radius`.
pub fn s_samples(radius: f64, count: usize) -> Vec<(f64, f64)> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count.max(1))
        .map(|k| {
            if k == 0 {
                return (0.0, 0.0);
            }
            let rho = radius * (k as f64 / (count - 1).max(1) as f64).sqrt();
            let t = golden * k as f64;
            (rho * t.cos(), rho * t.sin())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UniformProbe {
    pub fit: FitResult,
    /// Per λ, the `s` attaining the maximum.
    pub worst: Vec<OscillatoryResult>,
    pub all: Vec<OscillatoryResult>,
}

/// Maximum of `|I(λ;s)|` over sampled `|s| ≤ s_radius`, fitted across λ.
pub fn uniform_decay_probe(
    phi: &BivariatePolynomial,
    cutoff: CutoffSpec,
    lambda_grid: &[f64],
    s_radius: f64,
    s_count: usize,
    prediction: Option<Prediction>,
    config: &QuadratureConfig,
) -> Result<UniformProbe, NumericError> {
    check_grid(lambda_grid)?;
    let phase = Phase::new(phi);
    let ss = s_samples(s_radius, s_count);
    let mut all = Vec::new();
    let mut worst = Vec::new();
    for &l in lambda_grid {
        let row: Vec<OscillatoryResult> = ss
            .iter()
            .map(|&s| integrate_prepared(&phase, cutoff, l, s, config))
            .collect::<Result<_, _>>()?;
        let best = *row
            .iter()
            .max_by(|a, b| a.abs().total_cmp(&b.abs()))
            .expect("at least one s sample");
        worst.push(best);
        all.extend(row);
    }
    let fit = fit_log_model(&samples_of(&worst)?, prediction)?;
    Ok(UniformProbe { fit, worst, all })
}

/// The log-doubling statistic `λ₂^{1/h}|I(λ₂)| / (λ^{1/h}|I(λ)|)` with `λ₂ = λ²`.
/// It tends to 1 without a log factor and to 2 with `log λ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LogDoubling {
    pub lambda: f64,
    pub scaled_at_lambda: f64,
    pub scaled_at_square: f64,
    pub ratio: f64,
}

pub fn log_doubling_test(
    phi: &BivariatePolynomial,
    cutoff: CutoffSpec,
    inverse_height: f64,
    lambda: f64,
    config: &QuadratureConfig,
) -> Result<LogDoubling, NumericError> {
    let res = sweep(phi, cutoff, &[lambda, lambda * lambda], (0.0, 0.0), config)?;
    let samples = samples_of(&res)?;
    let a = samples[0].1 * lambda.powf(inverse_height);
    let b = samples[1].1 * (lambda * lambda).powf(inverse_height);
    Ok(LogDoubling { lambda, scaled_at_lambda: a, scaled_at_square: b, ratio: b / a })
}

/// Result of the one-dimensional van der Corput probe.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VdcReport {
    pub n: u32,
    /// `(λ, |∫e^{iλf}g|, |∫e^{iλf}g|·(1+λ)^{1/n})`.
    pub values: Vec<(f64, f64, f64)>,
    pub sup_ratio: f64,
    /// Slope of `log(ratio)` against `log λ`; near zero when the bound holds.
    pub trend: f64,
    pub bounded: bool,
    pub derivative_bounds: (f64, f64),
}

/// One-dimensional Filon quadrature of `∫ e^{iλf(t)} g(t) dt` with the bump `g` of
/// radius `cutoff.radius`.
fn integrate_1d(f: &[f64], cutoff: CutoffSpec, lambda: f64, rule: &GaussLegendre, panels: usize) -> Complex64 {
    let r = cutoff.radius;
    let a = r / panels as f64;
    let order = rule.order();
    let horner = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, &k| acc * x + k);
    let d1: Vec<f64> = f.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect();
    let mut w = vec![Complex64::new(0.0, 0.0); order];
    let mut parts = Vec::with_capacity(panels * 2);
    for p in 0..2 * panels {
        let c = -r + (2 * p + 1) as f64 * a;
        let f0 = horner(f, c);
        let g = horner(&d1, c);
        rule.filon_weights(lambda * g * a, &mut w);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &t) in rule.nodes.iter().enumerate() {
            let x = c + a * t;
            let eta = cutoff.eval(x, 0.0);
            if eta != 0.0 {
                acc += w[j] * Complex64::from_polar(eta, lambda * (horner(f, x) - f0 - g * (x - c)));
            }
        }
        parts.push(Complex64::from_polar(a, lambda * f0) * acc);
    }
    pairwise_sum(&parts, Complex64::new(0.0, 0.0))
}

/// Checks `|∫ e^{iλf} g| ≲ (1+λ)^{−1/n}` over a λ grid, after verifying that
/// `Σ_{j=2}^{n} |f^{(j)}|` stays between positive constants on the support.
pub fn vdc_probe_1d(
    f: &UniPoly,
    cutoff: CutoffSpec,
    n: u32,
    lambda_grid: &[f64],
) -> Result<VdcReport, NumericError> {
    use num_traits::ToPrimitive;
    if n < 2 {
        return Err(NumericError::Precondition("polynomial type needs n ≥ 2".into()));
    }
    check_grid(lambda_grid)?;
    let coeffs: Vec<f64> = f.coefficients().iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    let derivs: Vec<UniPoly> = (2..=n)
        .scan(f.derivative(), |d, _| {
            *d = d.derivative();
            Some(d.clone())
        })
        .collect();
    let r = cutoff.radius;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    let mut worst = 0.0;
    for i in 0..=2000 {
        let t = -r + 2.0 * r * i as f64 / 2000.0;
        let v: f64 = derivs.iter().map(|d| d.eval_f64(t).abs()).sum();
        if v < lo {
            lo = v;
            worst = t;
        }
        hi = hi.max(v);
    }
    if lo <= 1e-12 {
        return Err(NumericError::Precondition(format!(
            "Σ|f^(j)| vanishes at t = {worst} on the support"
        )));
    }
    let rule = GaussLegendre::new(8);
    let fmax_d2 = hi;
    let mut values = Vec::new();
    for &l in lambda_grid {
        let panels = (((l * fmax_d2 / 2.0).sqrt() * r).ceil() as usize).clamp(8, 1 << 22);
        let v = integrate_1d(&coeffs, cutoff, l, &rule, panels).norm();
        values.push((l, v, v * (1.0 + l).powf(1.0 / n as f64)));
    }
    let sup_ratio = values.iter().map(|v| v.2).fold(0.0, f64::max);
    let samples: Vec<(f64, f64)> = values.iter().map(|v| (v.0, v.2)).collect();
    let (trend, _) = crate::numeric::fit::power_fit(&samples)?;
    Ok(VdcReport {
        n,
        values,
        sup_ratio,
        trend,
        bounded: trend < 0.05,
        derivative_bounds: (lo, hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_polynomial};

    fn poly(s: &str) -> BivariatePolynomial {
        parse_polynomial(s).unwrap()
    }

    /// `π ∫_0^{r²} e^{iλu} η(√u) du`, the exact reduction for `φ = |x|²`.
    fn radial_oracle(cut: CutoffSpec, lambda: f64) -> Complex64 {
        let rule = GaussLegendre::new(16);
        let top = cut.radius * cut.radius;
        let n = ((lambda * top).ceil() as usize).max(64) * 4;
        let h = top / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..n {
            let c = (p as f64 + 0.5) * h;
            for (t, w) in rule.nodes.iter().zip(&rule.weights) {
                let u = c + 0.5 * h * t;
                acc += Complex64::from_polar(w * 0.5 * h * cut.eval_sq(u), lambda * u);
            }
        }
        acc * std::f64::consts::PI
    }

    #[test]
    fn zero_phase_gives_bump_mass() {
        let cut = CutoffSpec::default();
        for &l in &[1.0, 1e3, 1e6] {
            let r = oscillatory_integral(&BivariatePolynomial::zero(), cut, l, (0.0, 0.0), &Default::default()).unwrap();
            assert!((r.value.re - cut.integral_2d()).abs() < 1e-10, "{}", r.value);
            assert!(r.value.im.abs() < 1e-12);
        }
    }

    #[test]
    fn matches_radial_oracle() {
        let cut = CutoffSpec::default();
        let phi = poly("x1^2 + x2^2");
        for k in [0, 4, 8, 12, 16] {
            let l = 2f64.powi(k);
            let r = oscillatory_integral(&phi, cut, l, (0.0, 0.0), &Default::default()).unwrap();
            let exact = radial_oracle(cut, l);
            let err = (r.value - exact).norm();
            assert!(err <= r.estimated_error, "λ=2^{k}: err {err:e} > est {:e}", r.estimated_error);
            assert!(err < 4e-6 * exact.norm() + 1e-13, "λ=2^{k}: err {err:e}, |I| {:e}", exact.norm());
        }
    }

    #[test]
    fn filon_agrees_with_plain_gauss() {
        let cut = CutoffSpec::default();
        let phi = poly("(x2 - x1^2)^2 + x1^5 - x1*x2");
        let gauss = QuadratureConfig { method: QuadratureMethod::Gauss, ..Default::default() };
        for &(l, s) in &[(16.0, (0.0, 0.0)), (100.0, (0.1, -0.05))] {
            let a = oscillatory_integral(&phi, cut, l, s, &Default::default()).unwrap();
            let b = oscillatory_integral(&phi, cut, l, s, &gauss).unwrap();
            assert!((a.value - b.value).norm() < 1e-9, "{} vs {}", a.value, b.value);
        }
    }

    #[test]
    fn conjugation_symmetry() {
        let cut = CutoffSpec::default();
        let phi = poly("x1^4 + x2^2 + x1*x2^2");
        let cfg = QuadratureConfig::default();
        let a = oscillatory_integral(&phi, cut, 300.0, (0.02, 0.01), &cfg).unwrap();
        let b = oscillatory_integral(&phi, cut, -300.0, (0.02, 0.01), &cfg).unwrap();
        assert!((a.value - b.value.conj()).norm() < 1e-12);
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = QuadratureConfig { budget: 1000, ..Default::default() };
        let r = oscillatory_integral(&poly("x1^2 + x2^2"), CutoffSpec::default(), 1e6, (0.0, 0.0), &cfg);
        assert!(matches!(r, Err(NumericError::BudgetExceeded { .. })));
    }

    #[test]
    fn paraboloid_scaled_value_is_stable() {
        let cut = CutoffSpec::default();
        let res = sweep(&poly("x1^2 + x2^2"), cut, &dyadic_grid(8, 14), (0.0, 0.0), &Default::default()).unwrap();
        let scaled: Vec<f64> = res.iter().map(|r| r.lambda * r.abs()).collect();
        let (lo, hi) = scaled.iter().fold((f64::MAX, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
        assert!(hi / lo < 1.05, "{scaled:?}");
    }

    #[test]
    fn vdc_probe_examples() {
        let cut = CutoffSpec::default();
        let grid = dyadic_grid(4, 16);
        let s2 = UniPoly::new(vec![int(0), int(0), int(1)]);
        let s3 = UniPoly::new(vec![int(0), int(0), int(0), int(1)]);
        let s23 = UniPoly::new(vec![int(0), int(0), int(1), int(1)]);
        for (f, n) in [(&s2, 2), (&s3, 3), (&s23, 2)] {
            let rep = vdc_probe_1d(f, cut, n, &grid).unwrap();
            assert!(rep.bounded, "n={n}: {rep:?}");
        }
        let bad = UniPoly::new(vec![int(0), int(0), int(0), int(1)]);
        assert!(matches!(vdc_probe_1d(&bad, cut, 2, &grid), Err(NumericError::Precondition(_))));
    }

    #[test]
    fn s_samples_fill_disc() {
        let ss = s_samples(0.1, 25);
        assert_eq!(ss.len(), 25);
        assert_eq!(ss[0], (0.0, 0.0));
        assert!(ss.iter().all(|(a, b)| a.hypot(*b) <= 0.1 + 1e-15));
        assert_eq!(s_samples(0.1, 1), vec![(0.0, 0.0)]);
    }
}
