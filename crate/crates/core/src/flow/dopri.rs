//! Dormand–Prince 5(4) for the three-component flow system.
//!
//! Explicit, adaptive, FSAL, with the standard 4th-order continuous extension
//! used for dense output. States that leave the admissible set (a stage or the
//! step result fails `admissible`) cause the step to be rejected and retried
//! with a smaller step, the same way an error-test failure would.

pub(crate) type State = [f64; 3];

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// difference between the 5th and 4th order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

// continuous extension
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

fn axpy(y: &State, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (coef, k) in terms {
        for i in 0..3 {
            out[i] += coef * k[i];
        }
    }
    out
}

/// One accepted step with its interpolation polynomial.
#[derive(Debug, Clone)]
pub(crate) struct Segment {
    pub t0: f64,
    pub h: f64,
    cont: [State; 5],
}

impl Segment {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    /// Dense output at `t`, valid for `t` inside `[t0, t0 + h]`.
    pub fn eval(&self, t: f64) -> State {
        let theta = (t - self.t0) / self.h;
        let theta1 = 1.0 - theta;
        let c = &self.cont;
        std::array::from_fn(|i| {
            c[0][i] + theta * (c[1][i] + theta1 * (c[2][i] + theta * (c[3][i] + theta1 * c[4][i])))
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Settings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Stopped,
    MaxSteps,
}

#[derive(Debug, Clone)]
pub(crate) struct Run {
    /// Step endpoints, starting with the initial state at `t = 0`.
    pub points: Vec<(f64, State)>,
    pub segments: Vec<Segment>,
    pub outcome: Outcome,
}

#[derive(Debug, Clone)]
pub(crate) struct Failure {
    pub partial: Run,
    pub t: f64,
    pub reason: String,
}

struct Solver<'a, F, A> {
    f: F,
    admissible: A,
    settings: &'a Settings,
}

impl<F, A> Solver<'_, F, A>
where
    F: Fn(&State) -> State,
    A: Fn(&State) -> bool,
{
    fn error_norm(&self, y0: &State, y1: &State, err: &State) -> f64 {
        let s = self.settings;
        let sum: f64 = (0..3)
            .map(|i| {
                let sc = s.abs_tol + s.rel_tol * y0[i].abs().max(y1[i].abs());
                (err[i] / sc).powi(2)
            })
            .sum();
        (sum / 3.0).sqrt()
    }

    fn weighted_norm(&self, y: &State, v: &State) -> f64 {
        let s = self.settings;
        let sum: f64 = (0..3)
            .map(|i| (v[i] / (s.abs_tol + s.rel_tol * y[i].abs())).powi(2))
            .sum();
        (sum / 3.0).sqrt()
    }

    fn initial_step(&self, y0: &State, f0: &State) -> f64 {
        let d0 = self.weighted_norm(y0, y0);
        let d1 = self.weighted_norm(y0, f0);
        let mut h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        loop {
            let y1 = axpy(y0, &[(h0, f0)]);
            if (self.admissible)(&y1) {
                let f1 = (self.f)(&y1);
                let diff: State = std::array::from_fn(|i| f1[i] - f0[i]);
                let d2 = self.weighted_norm(y0, &diff) / h0;
                let h1 = if d1.max(d2) <= 1e-15 {
                    (h0 * 1e-3).max(1e-6)
                } else {
                    (0.01 / d1.max(d2)).powf(0.2)
                };
                return (100.0 * h0).min(h1);
            }
            h0 *= 0.1;
            if h0 < f64::MIN_POSITIVE {
                return h0;
            }
        }
    }

    /// One trial step. `None` when a stage leaves the admissible set.
    fn attempt(&self, y0: &State, k1: &State, h: f64) -> Option<(State, [State; 7], f64)> {
        let f = &self.f;
        let ok = |y: &State| (self.admissible)(y);
        let y = axpy(y0, &[(h * A21, k1)]);
        if !ok(&y) {
            return None;
        }
        let k2 = f(&y);
        let y = axpy(y0, &[(h * A31, k1), (h * A32, &k2)]);
        if !ok(&y) {
            return None;
        }
        let k3 = f(&y);
        let y = axpy(y0, &[(h * A41, k1), (h * A42, &k2), (h * A43, &k3)]);
        if !ok(&y) {
            return None;
        }
        let k4 = f(&y);
        let y = axpy(y0, &[(h * A51, k1), (h * A52, &k2), (h * A53, &k3), (h * A54, &k4)]);
        if !ok(&y) {
            return None;
        }
        let k5 = f(&y);
        let y = axpy(
            y0,
            &[(h * A61, k1), (h * A62, &k2), (h * A63, &k3), (h * A64, &k4), (h * A65, &k5)],
        );
        if !ok(&y) {
            return None;
        }
        let k6 = f(&y);
        let y1 = axpy(
            y0,
            &[(h * A71, k1), (h * A73, &k3), (h * A74, &k4), (h * A75, &k5), (h * A76, &k6)],
        );
        if !ok(&y1) {
            return None;
        }
        let k7 = f(&y1);
        if k7.iter().any(|x| !x.is_finite()) {
            return None;
        }
        let err: State = std::array::from_fn(|i| {
            h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
        });
        let norm = self.error_norm(y0, &y1, &err);
        Some((y1, [*k1, k2, k3, k4, k5, k6, k7], norm))
    }
}

/// Integrates `y' = f(y)` from `t = 0` until `stop` returns true on an
/// accepted state or `max_steps` steps have been accepted.
pub(crate) fn solve<F, A, S>(
    f: F,
    admissible: A,
    mut stop: S,
    y0: State,
    settings: &Settings,
) -> Result<Run, Failure>
where
    F: Fn(&State) -> State,
    A: Fn(&State) -> bool,
    S: FnMut(&State) -> bool,
{
    let solver = Solver { f, admissible, settings };
    let mut run = Run { points: vec![(0.0, y0)], segments: Vec::new(), outcome: Outcome::MaxSteps };
    let mut t = 0.0_f64;
    let mut y = y0;
    let mut k1 = (solver.f)(&y);
    let mut h = solver.initial_step(&y, &k1);
    let mut last_rejected = false;

    while run.segments.len() < settings.max_steps {
        if !(h > 4.0 * f64::EPSILON * t.abs().max(1.0)) {
            return Err(Failure { partial: run, t, reason: format!("step size underflow (h = {h:e})") });
        }
        let Some((y1, k, err)) = solver.attempt(&y, &k1, h) else {
            h *= 0.25;
            last_rejected = true;
            continue;
        };
        if !(err <= 1.0) {
            let fac = if err.is_finite() { (SAFETY * err.powf(-0.2)).max(FAC_MIN) } else { FAC_MIN };
            h *= fac.min(1.0);
            last_rejected = true;
            continue;
        }

        let cont = dense_coefficients(&y, &y1, &k, h);
        run.segments.push(Segment { t0: t, h, cont });
        t += h;
        y = y1;
        k1 = k[6];
        run.points.push((t, y));
        if stop(&y) {
            run.outcome = Outcome::Stopped;
            return Ok(run);
        }

        let mut fac = if err > 0.0 { SAFETY * err.powf(-0.2) } else { FAC_MAX };
        fac = fac.clamp(FAC_MIN, FAC_MAX);
        if last_rejected {
            fac = fac.min(1.0);
        }
        last_rejected = false;
        h *= fac;
    }
    Ok(run)
}

fn dense_coefficients(y0: &State, y1: &State, k: &[State; 7], h: f64) -> [State; 5] {
    let mut cont = [[0.0; 3]; 5];
    for i in 0..3 {
        let ydiff = y1[i] - y0[i];
        let bspl = h * k[0][i] - ydiff;
        cont[0][i] = y0[i];
        cont[1][i] = ydiff;
        cont[2][i] = bspl;
        cont[3][i] = ydiff - h * k[6][i] - bspl;
        cont[4][i] = h
            * (D1 * k[0][i] + D3 * k[2][i] + D4 * k[3][i] + D5 * k[4][i] + D6 * k[5][i] + D7 * k[6][i]);
    }
    cont
}
