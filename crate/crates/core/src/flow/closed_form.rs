//! Closed-form solutions of the flow on the symmetric subspaces.
//!
//! All formulas are stated for `R² = 4`; another squared radius only rescales
//! time by `R²/4`. The removable `1/α` and `1/β` singularities are folded into
//! `atan(q)/q` and `atanh(q)/q`, which are evaluated by series near `q = 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{MetricCoeffs, DEFAULT_R_SQUARED};

/// Largest turtle non-sphericity accepted. Precision of the closed form
/// degrades noticeably beyond 0.999.
pub const MAX_TURTLE_BETA: f64 = 1.0 - 1e-12;

const SERIES_CUTOFF: f64 = 1e-6;

fn atan_over(q: f64) -> f64 {
    if q.abs() < SERIES_CUTOFF {
        let q2 = q * q;
        1.0 - q2 / 3.0 + q2 * q2 / 5.0
    } else {
        q.atan() / q
    }
}

fn atanh_over(q: f64) -> f64 {
    if q.abs() < SERIES_CUTOFF {
        let q2 = q * q;
        1.0 + q2 / 3.0 + q2 * q2 / 5.0
    } else {
        q.atanh() / q
    }
}

fn check_r_squared(r_squared: f64) -> Result<()> {
    if r_squared.is_finite() && r_squared > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("r_squared must be positive and finite, got {r_squared}")))
    }
}

/// Linear stretch factor `√(1 − 4t/R²)` of a round sphere that starts at
/// `λ = 1`.
pub fn isotropic_lambda(t: f64, r_squared: f64) -> Result<f64> {
    check_r_squared(r_squared)?;
    let collapse_time = r_squared / 4.0;
    if !(t >= 0.0) {
        return Err(Error::domain(format!("time must be non-negative, got {t}")));
    }
    if t >= collapse_time {
        return Err(Error::CollapseReached { t, collapse_time });
    }
    Ok((1.0 - 4.0 * t / r_squared).sqrt())
}

/// Inverts a strictly decreasing map `g: [0, 1] → [g(1), g(0)]` by bisection.
fn invert_decreasing(g: impl Fn(f64) -> f64, target: f64, tol: f64) -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn check_time(t: f64, collapse_time: f64) -> Result<()> {
    if t >= 0.0 && t <= collapse_time {
        Ok(())
    } else {
        Err(Error::domain(format!("time {t} outside [0, {collapse_time}]")))
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("tolerance must be positive, got {tol}")))
    }
}

/// Snake flow (`a = b`, so `u = v <= w`) from initial `w = W` and
/// `W/V = 1 + α²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnakeSolution {
    w0: f64,
    alpha: f64,
    r_squared: f64,
    collapse_time: f64,
}

impl SnakeSolution {
    pub fn new(w0: f64, alpha: f64) -> Result<Self> {
        Self::with_r_squared(w0, alpha, DEFAULT_R_SQUARED)
    }

    pub fn with_r_squared(w0: f64, alpha: f64, r_squared: f64) -> Result<Self> {
        if !(w0.is_finite() && w0 > 0.0) {
            return Err(Error::domain(format!("W must be positive, got {w0}")));
        }
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::domain(format!("alpha must be non-negative, got {alpha}")));
        }
        check_r_squared(r_squared)?;
        let a2 = alpha * alpha;
        let collapse_time = r_squared / 4.0 * 0.5 * w0 * (1.0 / (1.0 + a2) + atan_over(alpha));
        Ok(Self { w0, alpha, r_squared, collapse_time })
    }

    /// Reads `(W, α)` off snake initial data; needs `|u − v| <= rel_tol · w`
    /// and `w >= v`.
    pub fn from_metric(m: &MetricCoeffs, r_squared: f64, rel_tol: f64) -> Result<Self> {
        let (u, v, w) = (m.u(), m.v(), m.w());
        if (u - v).abs() > rel_tol * w || w < v {
            return Err(Error::domain(format!("({u}, {v}, {w}) is not snake data (u = v <= w)")));
        }
        Self::with_r_squared(w, (w / v - 1.0).max(0.0).sqrt(), r_squared)
    }

    pub fn w0(&self) -> f64 {
        self.w0
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn r_squared(&self) -> f64 {
        self.r_squared
    }

    pub fn collapse_time(&self) -> f64 {
        self.collapse_time
    }

    /// `(V, V, W)` with `V = W/(1 + α²)`.
    pub fn initial_metric(&self) -> MetricCoeffs {
        let v = self.w0 / (1.0 + self.alpha * self.alpha);
        MetricCoeffs { u: v, v, w: self.w0 }
    }

    /// Time at which `w/W` has dropped to `lambda`.
    pub fn time_of_lambda(&self, lambda: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::domain(format!("lambda must lie in [0, 1], got {lambda}")));
        }
        Ok(self.time_unchecked(lambda))
    }

    fn time_unchecked(&self, lambda: f64) -> f64 {
        let (a, l) = (self.alpha, lambda);
        let a2 = a * a;
        let gap = 1.0 - l;
        let algebraic = gap * (1.0 - l * a2) / ((1.0 + a2) * (1.0 + a2 * l * l));
        let denom = 1.0 + a2 * l;
        let angular = gap / denom * atan_over(a * gap / denom);
        self.r_squared / 4.0 * 0.5 * self.w0 * (algebraic + angular)
    }

    /// `(w, v) = (Wλ, Wλ/(1 + α²λ²))`.
    pub fn profile(&self, lambda: f64) -> Result<(f64, f64)> {
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Error::domain(format!("lambda must lie in (0, 1], got {lambda}")));
        }
        let w = self.w0 * lambda;
        let al = self.alpha * lambda;
        Ok((w, w / (1.0 + al * al)))
    }

    /// Inverse of [`SnakeSolution::time_of_lambda`] to `|Δλ| <= tol`.
    pub fn lambda_of_time(&self, t: f64, tol: f64) -> Result<f64> {
        check_tol(tol)?;
        check_time(t, self.collapse_time)?;
        if t == 0.0 {
            return Ok(1.0);
        }
        Ok(invert_decreasing(|l| self.time_unchecked(l), t, tol))
    }
}

/// Turtle flow (`b = c`, so `u <= v = w`) from initial `u = U` and
/// `U/V = 1 − β²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TurtleSolution {
    u0: f64,
    beta: f64,
    r_squared: f64,
    collapse_time: f64,
}

impl TurtleSolution {
    pub fn new(u0: f64, beta: f64) -> Result<Self> {
        Self::with_r_squared(u0, beta, DEFAULT_R_SQUARED)
    }

    pub fn with_r_squared(u0: f64, beta: f64, r_squared: f64) -> Result<Self> {
        if !(u0.is_finite() && u0 > 0.0) {
            return Err(Error::domain(format!("U must be positive, got {u0}")));
        }
        if !(0.0..=MAX_TURTLE_BETA).contains(&beta) {
            return Err(Error::domain(format!("beta must lie in [0, {MAX_TURTLE_BETA}], got {beta}")));
        }
        check_r_squared(r_squared)?;
        let b2 = beta * beta;
        let collapse_time = r_squared / 4.0 * 0.5 * u0 * (1.0 / (1.0 - b2) + atanh_over(beta));
        Ok(Self { u0, beta, r_squared, collapse_time })
    }

    /// Reads `(U, β)` off turtle initial data; needs `|v − w| <= rel_tol · w`
    /// and `u <= v`.
    pub fn from_metric(m: &MetricCoeffs, r_squared: f64, rel_tol: f64) -> Result<Self> {
        let (u, v, w) = (m.u(), m.v(), m.w());
        if (v - w).abs() > rel_tol * w || u > v {
            return Err(Error::domain(format!("({u}, {v}, {w}) is not turtle data (u <= v = w)")));
        }
        Self::with_r_squared(u, (1.0 - u / v).max(0.0).sqrt(), r_squared)
    }

    pub fn u0(&self) -> f64 {
        self.u0
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn r_squared(&self) -> f64 {
        self.r_squared
    }

    pub fn collapse_time(&self) -> f64 {
        self.collapse_time
    }

    /// `(U, V, V)` with `V = U/(1 − β²)`.
    pub fn initial_metric(&self) -> MetricCoeffs {
        let v = self.u0 / (1.0 - self.beta * self.beta);
        MetricCoeffs { u: self.u0, v, w: v }
    }

    /// Time at which `u/U` has dropped to `mu`.
    pub fn time_of_mu(&self, mu: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(Error::domain(format!("mu must lie in [0, 1], got {mu}")));
        }
        Ok(self.time_unchecked(mu))
    }

    fn time_unchecked(&self, mu: f64) -> f64 {
        let b = self.beta;
        let b2 = b * b;
        let gap = 1.0 - mu;
        let algebraic = gap * (1.0 + b2 * mu) / (2.0 * (1.0 - b2) * (1.0 - b2 * mu * mu));
        let denom = 1.0 - b2 * mu;
        let logarithmic = gap / (2.0 * denom) * atanh_over(b * gap / denom);
        self.r_squared / 4.0 * self.u0 * (algebraic + logarithmic)
    }

    /// `(u, v) = (Uμ, Uμ/(1 − β²μ²))`, with `w = v`.
    pub fn profile(&self, mu: f64) -> Result<(f64, f64)> {
        if !(mu > 0.0 && mu <= 1.0) {
            return Err(Error::domain(format!("mu must lie in (0, 1], got {mu}")));
        }
        let u = self.u0 * mu;
        let bm = self.beta * mu;
        Ok((u, u / (1.0 - bm * bm)))
    }

    /// Inverse of [`TurtleSolution::time_of_mu`] to `|Δμ| <= tol`.
    pub fn mu_of_time(&self, t: f64, tol: f64) -> Result<f64> {
        check_tol(tol)?;
        check_time(t, self.collapse_time)?;
        if t == 0.0 {
            return Ok(1.0);
        }
        Ok(invert_decreasing(|m| self.time_unchecked(m), t, tol))
    }
}
