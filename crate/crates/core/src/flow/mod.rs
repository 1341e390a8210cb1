//! Ricci flow `∂g/∂t = −2 Ric(g)` restricted to the deformed 3-spheres.
//!
//! The flow reduces to an autonomous system for the metric coefficients
//! `(u, v, w)`. The right-hand side is homogeneous of degree zero, so the
//! flow commutes with scaling: if `m(t)` solves it, so does `λ m(t/λ)`.

mod closed_form;
pub(crate) mod dopri;

pub use closed_form::{isotropic_lambda, SnakeSolution, TurtleSolution, MAX_TURTLE_BETA};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{MetricCoeffs, DEFAULT_R_SQUARED};
use dopri::{Outcome, Run, Segment, Settings, State};

/// Time derivatives `(u̇, v̇, ẇ)` in the σ-product form
/// `u̇ = −16 (σ − v)(σ − w) / (R² v w)` and cyclic, `σ = (u + v + w)/2`.
pub fn rhs(m: &MetricCoeffs, r_squared: f64) -> [f64; 3] {
    rhs_state(&m.as_array(), r_squared)
}

pub(crate) fn rhs_state(y: &State, r_squared: f64) -> State {
    let [u, v, w] = *y;
    let sigma = 0.5 * (u + v + w);
    let k = -16.0 / r_squared;
    [
        k * (sigma - v) * (sigma - w) / (v * w),
        k * (sigma - u) * (sigma - w) / (u * w),
        k * (sigma - u) * (sigma - v) / (u * v),
    ]
}

/// `ẋ` for the shape coordinate `x = (u + v)/w`. Requires `u <= v <= w`;
/// the result is then non-negative and vanishes only for `u = v = w`.
pub fn x_rate(m: &MetricCoeffs, r_squared: f64) -> Result<f64> {
    if !m.is_ordered() {
        return Err(Error::domain(format!(
            "x_rate requires u <= v <= w, got ({}, {}, {})",
            m.u, m.v, m.w
        )));
    }
    let (u, v, w) = (m.u, m.v, m.w);
    let num = u * (w - v).powi(2) + u * u * (v - u) + v * (w * w - v * v);
    Ok((4.0 / r_squared) * 2.0 * num / (u * v * w * w))
}

/// Integrator and stopping configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowParams {
    pub r_squared: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Forward runs stop once `min(u, v, w) <= collapse_eps`.
    pub collapse_eps: f64,
    pub max_steps: usize,
    /// Number of uniform intervals of dense output added to the step samples.
    pub grid: usize,
    /// Backward runs stop once `max(u, v, w) >= growth_cap`.
    pub growth_cap: f64,
}

impl Default for FlowParams {
    fn default() -> Self {
        Self {
            r_squared: DEFAULT_R_SQUARED,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            collapse_eps: 1e-9,
            max_steps: 1_000_000,
            grid: 200,
            growth_cap: 1e6,
        }
    }
}

impl FlowParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("r_squared", self.r_squared),
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("collapse_eps", self.collapse_eps),
            ("growth_cap", self.growth_cap),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::domain(format!("{name} must be positive and finite, got {value}")));
            }
        }
        if self.max_steps == 0 {
            return Err(Error::domain("max_steps must be positive"));
        }
        Ok(())
    }

    fn settings(&self) -> Settings {
        Settings { rel_tol: self.rel_tol, abs_tol: self.abs_tol, max_steps: self.max_steps }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub m: MetricCoeffs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Collapsed,
    MaxSteps,
    /// Backward run left the box `collapse_eps < u, v, w < growth_cap`.
    GrowthCapped,
}

/// Samples of a flow solution at strictly increasing times, plus the dense
/// interpolant of the underlying steps.
#[derive(Debug, Clone)]
pub struct Trajectory {
    samples: Vec<Sample>,
    collapse_time: Option<f64>,
    terminated: Termination,
    segments: Vec<Segment>,
}

impl Trajectory {
    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn collapse_time(&self) -> Option<f64> {
        self.collapse_time
    }

    pub fn terminated(&self) -> Termination {
        self.terminated
    }

    /// Number of accepted integrator steps.
    pub fn steps(&self) -> usize {
        self.segments.len()
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory always holds the initial sample")
    }

    /// Dense output at `t`, `None` outside the integrated range.
    pub fn interpolate(&self, t: f64) -> Option<MetricCoeffs> {
        let end = self.segments.last()?.t1();
        if !(t >= 0.0 && t <= end) {
            return None;
        }
        let idx = self.segments.partition_point(|s| s.t1() < t).min(self.segments.len() - 1);
        let [u, v, w] = self.segments[idx].eval(t);
        MetricCoeffs::new(u, v, w).ok()
    }

    fn from_run(run: Run, terminated: Termination, collapse_time: Option<f64>, grid: usize) -> Self {
        let mut traj = Trajectory {
            samples: Vec::with_capacity(run.points.len() + grid + 1),
            collapse_time,
            terminated,
            segments: run.segments,
        };
        let t_end = run.points.last().map_or(0.0, |p| p.0);
        let mut grid_times = (0..=grid)
            .map(|k| if k == grid { t_end } else { t_end * k as f64 / grid as f64 })
            .peekable();
        if grid == 0 || t_end <= 0.0 {
            grid_times.by_ref().for_each(drop);
        }

        let push = |samples: &mut Vec<Sample>, t: f64, m: MetricCoeffs| {
            if samples.last().is_none_or(|s| t > s.t) {
                samples.push(Sample { t, m });
            }
        };
        for (t, y) in run.points {
            while let Some(&tg) = grid_times.peek() {
                if tg >= t {
                    break;
                }
                grid_times.next();
                if let Some(m) = traj.interpolate(tg) {
                    push(&mut traj.samples, tg, m);
                }
            }
            // step endpoints are positive by construction
            let m = MetricCoeffs { u: y[0], v: y[1], w: y[2] };
            push(&mut traj.samples, t, m);
        }
        traj
    }
}

fn admissible(y: &State) -> bool {
    y.iter().all(|x| x.is_finite() && *x > 0.0)
}

fn integration_error(failure: dopri::Failure, p: &FlowParams) -> Error {
    let partial = Trajectory::from_run(failure.partial, Termination::MaxSteps, None, p.grid);
    Error::Integration { t: failure.t, reason: failure.reason, partial: Box::new(partial) }
}

/// Integrates the flow forward from `m0` until collapse or `max_steps`.
///
/// The collapse time is the zero crossing of the line through the last two
/// step values of the smallest coefficient.
pub fn integrate(m0: &MetricCoeffs, p: &FlowParams) -> Result<Trajectory> {
    p.validate()?;
    if !(p.collapse_eps < m0.min()) {
        return Err(Error::domain(format!(
            "collapse_eps {} must be below the initial min(u, v, w) = {}",
            p.collapse_eps,
            m0.min()
        )));
    }
    let r2 = p.r_squared;
    let eps = p.collapse_eps;
    let run = dopri::solve(
        |y| rhs_state(y, r2),
        admissible,
        |y| y.iter().any(|x| *x <= eps),
        m0.as_array(),
        &p.settings(),
    )
    .map_err(|f| integration_error(f, p))?;

    let (terminated, collapse_time) = match run.outcome {
        Outcome::MaxSteps => (Termination::MaxSteps, None),
        Outcome::Stopped => (Termination::Collapsed, Some(extrapolate_collapse(&run.points))),
    };
    Ok(Trajectory::from_run(run, terminated, collapse_time, p.grid))
}

fn extrapolate_collapse(points: &[(f64, State)]) -> f64 {
    let n = points.len();
    let (t1, y1) = points[n - 1];
    if n < 2 {
        return t1;
    }
    let (t0, y0) = points[n - 2];
    let k = (0..3).min_by(|&i, &j| y1[i].total_cmp(&y1[j])).unwrap_or(0);
    let drop = y0[k] - y1[k];
    if drop > 0.0 {
        t1 + y1[k] * (t1 - t0) / drop
    } else {
        t1
    }
}

/// Integrates the time-reversed flow from `m0`. Sample times are elapsed
/// backward time, so sample `t = s` corresponds to flow time `−s`.
///
/// Stops when a coefficient leaves `(collapse_eps, growth_cap)`. A step-size
/// failure (finite-time blow-up in reverse time) ends the run at the last
/// accepted step instead of raising an error.
pub fn integrate_backward(m0: &MetricCoeffs, p: &FlowParams) -> Result<Trajectory> {
    p.validate()?;
    let r2 = p.r_squared;
    let (eps, cap) = (p.collapse_eps, p.growth_cap);
    let run = dopri::solve(
        |y| rhs_state(y, r2).map(|d| -d),
        admissible,
        |y| y.iter().any(|x| *x <= eps || *x >= cap),
        m0.as_array(),
        &p.settings(),
    );
    let (run, terminated) = match run {
        Ok(run) => {
            let term = match run.outcome {
                Outcome::Stopped => Termination::GrowthCapped,
                Outcome::MaxSteps => Termination::MaxSteps,
            };
            (run, term)
        }
        Err(failure) => (failure.partial, Termination::GrowthCapped),
    };
    Ok(Trajectory::from_run(run, terminated, None, p.grid))
}
