//! Gauss–Legendre rules and their Filon-type modification for integrands of the form
//! `e^{iωt} F(t)` on `[-1, 1]`.
//!
//! The Filon weights integrate the Legendre interpolant of `F` at the Gauss nodes
//! against `e^{iωt}` exactly, using `∫ e^{iωt} P_k(t) dt = 2 i^k j_k(ω)`. For `ω = 0`
//! they reduce to the plain Gauss weights.

use std::f64::consts::PI;

use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `legendre[j][k] = P_k(t_j)`.
    legendre: Vec<Vec<f64>>,
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        let legendre = nodes
            .iter()
            .map(|&t| {
                let mut row = vec![1.0; n];
                if n > 1 {
                    row[1] = t;
                }
                for k in 1..n.saturating_sub(1) {
                    row[k + 1] = ((2 * k + 1) as f64 * t * row[k] - k as f64 * row[k - 1]) / (k + 1) as f64;
                }
                row
            })
            .collect();
        Self { nodes, weights, legendre }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Weights `w_j(ω)` with `∫_{-1}^{1} e^{iωt} F(t) dt ≈ Σ_j w_j F(t_j)`.
    pub fn filon_weights(&self, omega: f64, out: &mut [Complex64]) {
        let n = self.order();
        if omega == 0.0 {
            for (o, &w) in out.iter_mut().zip(&self.weights) {
                *o = Complex64::new(w, 0.0);
            }
            return;
        }
        let mut j = [0.0f64; 64];
        spherical_bessel(omega, &mut j[..n]);
        // c_k = (2k+1) i^k j_k(ω)
        let mut c = [Complex64::new(0.0, 0.0); 64];
        for k in 0..n {
            let m = (2 * k + 1) as f64 * j[k];
            c[k] = match k % 4 {
                0 => Complex64::new(m, 0.0),
                1 => Complex64::new(0.0, m),
                2 => Complex64::new(-m, 0.0),
                _ => Complex64::new(0.0, -m),
            };
        }
        for (idx, o) in out.iter_mut().enumerate().take(n) {
            let row = &self.legendre[idx];
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += c[k] * row[k];
            }
            *o = acc * self.weights[idx];
        }
    }
}

/// Spherical Bessel functions `j_0(x), …, j_{n-1}(x)` for real `x`.
pub fn spherical_bessel(x: f64, out: &mut [f64]) {
    let n = out.len();
    if n == 0 {
        return;
    }
    if x < 0.0 {
        spherical_bessel(-x, out);
        for (k, v) in out.iter_mut().enumerate() {
            if k % 2 == 1 {
                *v = -*v;
            }
        }
        return;
    }
    if x < 1.0 {
        // Power series; terms decay at least like (x²/2)^m / m!.
        let mut lead = 1.0; // x^k / (2k+1)!!
        for (k, v) in out.iter_mut().enumerate() {
            if k > 0 {
                lead *= x / (2 * k + 1) as f64;
            }
            let mut term = 1.0;
            let mut sum = 1.0;
            for m in 1..30 {
                term *= -0.5 * x * x / (m as f64 * (2 * k + 2 * m + 1) as f64);
                sum += term;
                if term.abs() < 1e-18 {
                    break;
                }
            }
            *v = lead * sum;
        }
        return;
    }
    let (s, c) = x.sin_cos();
    if x >= n as f64 {
        // Upward recurrence is stable while k < x.
        out[0] = s / x;
        if n > 1 {
            out[1] = s / (x * x) - c / x;
        }
        for k in 1..n - 1 {
            out[k + 1] = (2 * k + 1) as f64 / x * out[k] - out[k - 1];
        }
        return;
    }
    // Miller's backward recurrence, normalized against the closed forms of j₀ or j₁.
    let start = n + 20 + x.ceil() as usize;
    let (mut next, mut cur) = (0.0f64, 1e-30f64);
    for k in (0..start).rev() {
        let prev = (2 * k + 3) as f64 / x * cur - next;
        next = cur;
        cur = prev;
        if k < n {
            out[k] = cur;
        }
        if cur.abs() > 1e200 {
            next *= 1e-200;
            cur *= 1e-200;
            for v in out.iter_mut().skip(k) {
                *v *= 1e-200;
            }
        }
    }
    let j0 = s / x;
    let j1 = s / (x * x) - c / x;
    let scale = if j0.abs() >= j1.abs() || n == 1 { j0 / out[0] } else { j1 / out[1] };
    for v in out.iter_mut() {
        *v *= scale;
    }
}
