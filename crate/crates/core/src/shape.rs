//! Shape space: the triangle of ordered stretch ratios and the flow lines
//! that fiber it.
//!
//! For ordered factors `a <= b <= c` the point `(x, y) = ((a + b)/c, (b − a)/c)`
//! lies in the triangle with vertices `A = (0, 0)`, `B = (2, 0)`,
//! `C = (1, 1)`. The base `y = 0` holds snakes, the right edge `y = 2 − x`
//! turtles and the left edge `y = x` the excluded degenerate shapes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{integrate, integrate_backward, FlowParams, Trajectory};
use crate::geometry::{principal_curvatures_raw, ricci_eigenvalues_raw, MetricCoeffs, StretchFactors};

const SLOPE_SINGULAR: f64 = 1e-14;
const EDGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapePoint {
    pub x: f64,
    pub y: f64,
}

impl ShapePoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Projection of metric coefficients: `x = (u + v)/w`, `y = (v − u)/w`.
    pub fn from_metric(m: &MetricCoeffs) -> Self {
        let (u, v, w) = (m.u(), m.v(), m.w());
        Self { x: (u + v) / w, y: (v - u) / w }
    }

    pub fn radius_squared(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }
}

/// Triangle coordinates of ordered stretch factors.
pub fn to_xy(f: &StretchFactors) -> Result<ShapePoint> {
    if !f.is_ordered() {
        let [a, b, c] = f.abc();
        return Err(Error::domain(format!("to_xy requires a <= b <= c, got ({a}, {b}, {c})")));
    }
    let [a, b, c] = f.abc();
    Ok(ShapePoint { x: (a + b) / c, y: (b - a) / c })
}

/// Lifts a triangle point to stretch factors with largest factor `c`, on a
/// sphere of squared radius `r_squared`.
pub fn from_xy(p: ShapePoint, c: f64, r_squared: f64) -> Result<StretchFactors> {
    let ShapePoint { x, y } = p;
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::domain(format!("c must be positive, got {c}")));
    }
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::domain(format!("non-finite shape point ({x}, {y})")));
    }
    if y >= x {
        return Err(Error::Degenerate(format!("({x}, {y}) lies on or beyond the edge y = x")));
    }
    if y < 0.0 || x + y > 2.0 + EDGE_SLACK {
        return Err(Error::domain(format!("({x}, {y}) lies outside the shape triangle")));
    }
    let a = 0.5 * c * (x - y);
    let b = (0.5 * c * (x + y)).min(c);
    StretchFactors::ordered(a, b, c, r_squared)
}

/// Flow-line slope `dy/dx = y(x² + y² − 2) / (y²(2x − 1) + x(x − 2))`.
pub fn slope(p: ShapePoint) -> Result<f64> {
    let ShapePoint { x, y } = p;
    let den = y * y * (2.0 * x - 1.0) + x * (x - 2.0);
    if den.abs() < SLOPE_SINGULAR {
        return Err(Error::SingularSlope { x, y });
    }
    Ok(y * (x * x + y * y - 2.0) / den)
}

/// Ricci eigenvalue ratios `ρ = R₂₂/R₃₃`, `τ = R₁₁/R₃₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RicciRatios {
    pub rho: f64,
    pub tau: f64,
}

pub fn to_rho_tau(p: ShapePoint) -> Result<RicciRatios> {
    let ShapePoint { x, y } = p;
    if y == 1.0 {
        return Err(Error::SingularMap { x, y });
    }
    Ok(RicciRatios { rho: (x - 1.0) / (1.0 - y), tau: (x - 1.0) / (1.0 + y) })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Boundary {
    pub label: &'static str,
    pub points: Vec<ShapePoint>,
}

fn normalized(x: f64, y: f64) -> (f64, f64, f64) {
    (0.5 * (x - y), 0.5 * (x + y), 1.0)
}

/// Smallest principal curvature of an ordered shape, `c = 1`, `R² = 4`.
pub(crate) fn min_curvature_at(x: f64, y: f64) -> f64 {
    let (a, b, c) = normalized(x, y);
    principal_curvatures_raw(a, b, c, 4.0)[2]
}

pub(crate) fn scalar_at(x: f64, y: f64) -> f64 {
    let (a, b, c) = normalized(x, y);
    2.0 * principal_curvatures_raw(a, b, c, 4.0).iter().sum::<f64>()
}

pub(crate) fn ricci11_at(x: f64, y: f64) -> f64 {
    let (a, b, c) = normalized(x, y);
    ricci_eigenvalues_raw(a, b, c, 4.0)[0]
}

/// Root of `g` on `[lo, hi]` given a sign change, by bisection to adjacent floats.
fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut g_lo = g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return mid;
        }
        if (g_mid > 0.0) == (g_lo > 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    if g(lo).abs() <= g(hi).abs() {
        lo
    } else {
        hi
    }
}

fn sign_change(f0: f64, f1: f64) -> bool {
    (f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)
}

/// Zero locus of `q` over the triangle by bisection along vertical segments,
/// plus its endpoint on the base `y = 0`.
fn vertical_locus(q: impl Fn(f64, f64) -> f64, resolution: usize) -> Vec<ShapePoint> {
    let mut points = Vec::new();
    let xs: Vec<f64> = (0..=resolution).map(|k| 2.0 * k as f64 / resolution as f64).collect();
    for &x in &xs {
        let top = x.min(2.0 - x);
        if top <= 0.0 {
            continue;
        }
        let (f0, f1) = (q(x, 0.0), q(x, top));
        if f0 == 0.0 {
            points.push(ShapePoint::new(x, 0.0));
        } else if f1 == 0.0 {
            points.push(ShapePoint::new(x, top));
        } else if sign_change(f0, f1) {
            points.push(ShapePoint::new(x, bisect(|y| q(x, y), 0.0, top)));
        }
    }
    for pair in xs.windows(2) {
        let (f0, f1) = (q(pair[0], 0.0), q(pair[1], 0.0));
        if sign_change(f0, f1) {
            points.push(ShapePoint::new(bisect(|x| q(x, 0.0), pair[0], pair[1]), 0.0));
        }
    }
    points.sort_by(|p, q| p.x.total_cmp(&q.x));
    points
}

/// Region boundaries of the shape triangle, each as a polyline:
///
/// * `CE`: the Ricci scalar vanishes,
/// * `CF`: the smallest principal curvature vanishes,
/// * `CD`: the two smallest Ricci eigenvalues vanish (`x = 1`).
pub fn region_boundaries(resolution: usize) -> Result<Vec<Boundary>> {
    if resolution < 16 {
        return Err(Error::domain(format!("resolution must be at least 16, got {resolution}")));
    }
    let ce = vertical_locus(scalar_at, resolution);
    let cf = vertical_locus(min_curvature_at, resolution);

    // CD along horizontal segments x ∈ [y, 2 − y]
    let mut cd = Vec::with_capacity(resolution + 1);
    for k in 0..=resolution {
        let y = k as f64 / resolution as f64;
        let (lo, hi) = (y, 2.0 - y);
        let (f0, f1) = (ricci11_at(lo, y), ricci11_at(hi, y));
        if lo == hi {
            cd.push(ShapePoint::new(lo, y));
        } else if sign_change(f0, f1) {
            cd.push(ShapePoint::new(bisect(|x| ricci11_at(x, y), lo, hi), y));
        }
    }
    Ok(vec![
        Boundary { label: "CE", points: ce },
        Boundary { label: "CF", points: cf },
        Boundary { label: "CD", points: cd },
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowPoint {
    /// Flow time; negative on the backward extension.
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

impl FlowPoint {
    pub fn shape(&self) -> ShapePoint {
        ShapePoint::new(self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowLine {
    pub start: ShapePoint,
    /// Ordered by increasing `x`, i.e. by increasing flow time.
    pub points: Vec<FlowPoint>,
    /// Point of maximal `y`.
    pub apex: ShapePoint,
    pub collapse_time: Option<f64>,
}

impl FlowLine {
    pub fn end(&self) -> ShapePoint {
        self.points.last().map_or(self.start, FlowPoint::shape)
    }
}

const APEX_REFINE: usize = 64;

struct Lifted {
    forward: Trajectory,
    backward: Trajectory,
}

impl Lifted {
    fn shape_at(&self, t: f64) -> Option<ShapePoint> {
        let m = if t >= 0.0 { self.forward.interpolate(t) } else { self.backward.interpolate(-t) };
        m.as_ref().map(ShapePoint::from_metric)
    }
}

/// Traces the flow line through `start`.
///
/// The start is lifted to stretch factors with largest factor `c0`, the full
/// metric flow is integrated forward to collapse and backward until the
/// growth cap, and every sample is projected back to the triangle.
pub fn trace_flowline(start: ShapePoint, c0: f64, p: &FlowParams) -> Result<FlowLine> {
    let f = from_xy(start, c0, p.r_squared)?;
    let m0 = f.metric_coeffs();
    let forward = integrate(&m0, p)?;
    let backward = integrate_backward(&m0, p)?;

    let mut points: Vec<FlowPoint> = Vec::with_capacity(forward.samples().len() + backward.samples().len());
    let mut push = |t: f64, m: &MetricCoeffs| {
        let s = ShapePoint::from_metric(m);
        if points.last().is_none_or(|last| s.x > last.x) {
            points.push(FlowPoint { t, x: s.x, y: s.y });
        }
    };
    for s in backward.samples().iter().skip(1).rev() {
        push(-s.t, &s.m);
    }
    for s in forward.samples() {
        push(s.t, &s.m);
    }

    let collapse_time = forward.collapse_time();
    let lifted = Lifted { forward, backward };
    let apex = locate_apex(&points, &lifted);
    Ok(FlowLine { start, points, apex, collapse_time })
}

fn argmax_y(points: impl Iterator<Item = ShapePoint>) -> Option<(usize, ShapePoint)> {
    points.enumerate().fold(None, |best, (i, p)| match best {
        Some((_, b)) if b.y >= p.y => best,
        _ => Some((i, p)),
    })
}

/// Vertex of the parabola through three points with distinct `x`, if concave.
fn parabola_vertex(p0: ShapePoint, p1: ShapePoint, p2: ShapePoint) -> Option<ShapePoint> {
    let d01 = (p1.y - p0.y) / (p1.x - p0.x);
    let d12 = (p2.y - p1.y) / (p2.x - p1.x);
    let curv = (d12 - d01) / (p2.x - p0.x);
    if !(curv < 0.0) {
        return None;
    }
    let x = 0.5 * (p0.x + p1.x) - d01 / (2.0 * curv);
    let y = p0.y + d01 * (x - p0.x) + curv * (x - p0.x) * (x - p1.x);
    (x.is_finite() && y.is_finite() && x >= p0.x && x <= p2.x).then_some(ShapePoint::new(x, y))
}

fn locate_apex(points: &[FlowPoint], lifted: &Lifted) -> ShapePoint {
    let Some((i, best)) = argmax_y(points.iter().map(FlowPoint::shape)) else {
        return ShapePoint::new(f64::NAN, f64::NAN);
    };
    if i == 0 || i + 1 == points.len() {
        return best;
    }
    // resample the dense output across the bracketing interval, then fit
    let (t0, t1) = (points[i - 1].t, points[i + 1].t);
    let fine: Vec<ShapePoint> = (0..=APEX_REFINE)
        .filter_map(|k| lifted.shape_at(t0 + (t1 - t0) * k as f64 / APEX_REFINE as f64))
        .collect();
    let (j, fine_best) = match argmax_y(fine.iter().copied()) {
        Some((j, p)) if p.y >= best.y => (j, p),
        _ => return parabola_vertex(points[i - 1].shape(), best, points[i + 1].shape()).unwrap_or(best),
    };
    if j == 0 || j + 1 == fine.len() {
        return fine_best;
    }
    parabola_vertex(fine[j - 1], fine_best, fine[j + 1]).unwrap_or(fine_best)
}

/// Uniform interior starts: `x = 2i/(n+1)`, `y = min(x, 2 − x) j/(n+1)` for
/// `i, j` in `1..=n`.
pub fn start_grid(n: usize) -> Vec<ShapePoint> {
    let mut starts = Vec::with_capacity(n * n);
    let d = (n + 1) as f64;
    for i in 1..=n {
        let x = 2.0 * i as f64 / d;
        let top = x.min(2.0 - x);
        for j in 1..=n {
            starts.push(ShapePoint::new(x, top * j as f64 / d));
        }
    }
    starts
}
