//! Static geometry of a homogeneously deformed 3-sphere.
//!
//! The round metric `ω₁² + ω₂² + ω₃²` of an S³ of radius `R` is deformed to
//! `ω₁²/(bc) + ω₂²/(ac) + ω₃²/(ab)` by three positive stretch factors. All
//! curvature quantities below are evaluated in the orthonormal left-invariant
//! frame, where both the Riemann and the Ricci tensor are diagonal.

use serde::Serialize;

use crate::error::{Error, Result};

/// Squared radius of the undeformed sphere used when none is given.
pub const DEFAULT_R_SQUARED: f64 = 4.0;

/// Default relative tolerance for shape equality and sign deadbands.
pub const DEFAULT_EQ_TOL: f64 = 1e-9;

fn check_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {value}")))
    }
}

/// Deformation parameters `(a, b, c)` together with the squared base radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StretchFactors {
    a: f64,
    b: f64,
    c: f64,
    r_squared: f64,
}

impl StretchFactors {
    /// Factors on a sphere with the default squared radius of 4.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::with_r_squared(a, b, c, DEFAULT_R_SQUARED)
    }

    pub fn with_r_squared(a: f64, b: f64, c: f64, r_squared: f64) -> Result<Self> {
        check_positive("a", a)?;
        check_positive("b", b)?;
        check_positive("c", c)?;
        check_positive("r_squared", r_squared)?;
        Ok(Self { a, b, c, r_squared })
    }

    /// Like [`StretchFactors::with_r_squared`] but also requires `a <= b <= c`.
    pub fn ordered(a: f64, b: f64, c: f64, r_squared: f64) -> Result<Self> {
        let f = Self::with_r_squared(a, b, c, r_squared)?;
        if !f.is_ordered() {
            return Err(Error::domain(format!(
                "stretch factors must satisfy a <= b <= c, got ({a}, {b}, {c})"
            )));
        }
        Ok(f)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn r_squared(&self) -> f64 {
        self.r_squared
    }

    pub fn abc(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn is_ordered(&self) -> bool {
        self.a <= self.b && self.b <= self.c
    }

    /// The same factors sorted ascending.
    pub fn sorted(&self) -> Self {
        let mut v = self.abc();
        v.sort_by(f64::total_cmp);
        Self { a: v[0], b: v[1], c: v[2], r_squared: self.r_squared }
    }

    pub fn semiperimeter(&self) -> f64 {
        0.5 * (self.a + self.b + self.c)
    }

    /// Principal curvatures `κ_r = 4/R² [a_r (s − a_r) − (s − a_p)(s − a_q)]`.
    pub fn principal_curvatures(&self) -> [f64; 3] {
        principal_curvatures_raw(self.a, self.b, self.c, self.r_squared)
    }

    /// Ricci eigenvalues from the product form `8/R² (s − b)(s − c)` and its
    /// cyclic images. These equal the pairwise sums of principal curvatures.
    pub fn ricci_eigenvalues(&self) -> [f64; 3] {
        ricci_eigenvalues_raw(self.a, self.b, self.c, self.r_squared)
    }

    /// Ricci scalar, twice the sum of the principal curvatures.
    pub fn scalar_curvature(&self) -> f64 {
        let [k1, k2, k3] = self.principal_curvatures();
        2.0 * (k1 + k2 + k3)
    }

    /// Diagonal coefficients of the vectorial connection form,
    /// `((a − b − c)/R, (b − a − c)/R, (c − a − b)/R)`.
    pub fn connection_coefficients(&self) -> [f64; 3] {
        let r = self.r_squared.sqrt();
        let (a, b, c) = (self.a, self.b, self.c);
        [(a - b - c) / r, (b - a - c) / r, (c - a - b) / r]
    }

    /// Metric coefficients `(1/bc, 1/ac, 1/ab)`.
    pub fn metric_coeffs(&self) -> MetricCoeffs {
        MetricCoeffs {
            u: 1.0 / (self.b * self.c),
            v: 1.0 / (self.a * self.c),
            w: 1.0 / (self.a * self.b),
        }
    }

    pub fn curvature(&self) -> CurvatureSummary {
        let [kappa1, kappa2, kappa3] = self.principal_curvatures();
        let [ricci11, ricci22, ricci33] = self.ricci_eigenvalues();
        CurvatureSummary {
            kappa1,
            kappa2,
            kappa3,
            ricci11,
            ricci22,
            ricci33,
            scalar: 2.0 * (kappa1 + kappa2 + kappa3),
        }
    }
}

pub(crate) fn principal_curvatures_raw(a: f64, b: f64, c: f64, r_squared: f64) -> [f64; 3] {
    let s = 0.5 * (a + b + c);
    let k = 4.0 / r_squared;
    [
        k * (a * (s - a) - (s - b) * (s - c)),
        k * (b * (s - b) - (s - a) * (s - c)),
        k * (c * (s - c) - (s - a) * (s - b)),
    ]
}

pub(crate) fn ricci_eigenvalues_raw(a: f64, b: f64, c: f64, r_squared: f64) -> [f64; 3] {
    let s = 0.5 * (a + b + c);
    let k = 8.0 / r_squared;
    [k * (s - b) * (s - c), k * (s - a) * (s - c), k * (s - a) * (s - b)]
}

/// The flow variables: coefficients of `ω₁², ω₂², ω₃²` in the deformed metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricCoeffs {
    pub(crate) u: f64,
    pub(crate) v: f64,
    pub(crate) w: f64,
}

impl MetricCoeffs {
    pub fn new(u: f64, v: f64, w: f64) -> Result<Self> {
        check_positive("u", u)?;
        check_positive("v", v)?;
        check_positive("w", w)?;
        Ok(Self { u, v, w })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.u, self.v, self.w]
    }

    pub fn sigma(&self) -> f64 {
        0.5 * (self.u + self.v + self.w)
    }

    pub fn min(&self) -> f64 {
        self.u.min(self.v).min(self.w)
    }

    pub fn max(&self) -> f64 {
        self.u.max(self.v).max(self.w)
    }

    /// `u <= v <= w`, the image of `a <= b <= c`.
    pub fn is_ordered(&self) -> bool {
        self.u <= self.v && self.v <= self.w
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.u * factor, self.v * factor, self.w * factor)
    }

    /// Inverts [`StretchFactors::metric_coeffs`]: `a = u / √(uvw)` and cyclic.
    pub fn stretch_factors(&self) -> [f64; 3] {
        let root = (self.u * self.v * self.w).sqrt();
        [self.u / root, self.v / root, self.w / root]
    }
}

/// Recovers `(a, b, c)` from metric coefficients, rejecting non-positive input.
pub fn stretch_from_metric(u: f64, v: f64, w: f64) -> Result<[f64; 3]> {
    Ok(MetricCoeffs::new(u, v, w)?.stretch_factors())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSummary {
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
    pub ricci11: f64,
    pub ricci22: f64,
    pub ricci33: f64,
    pub scalar: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Isotropic,
    Snake,
    Turtle,
    Dragon,
    Degenerate,
}

impl Shape {
    pub fn as_str(&self) -> &'static str {
        match self {
            Shape::Isotropic => "isotropic",
            Shape::Snake => "snake",
            Shape::Turtle => "turtle",
            Shape::Dragon => "dragon",
            Shape::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(into = "i8")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    /// Sign of `value` with `|value| <= deadband` mapped to zero.
    pub fn with_deadband(value: f64, deadband: f64) -> Self {
        if value.abs() <= deadband {
            Sign::Zero
        } else if value > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub shape: Shape,
    pub curvature_signs: [Sign; 3],
    pub ricci_signs: [Sign; 3],
    pub scalar_sign: Sign,
}

/// Shape kind and curvature sign data.
///
/// Shape equality uses `|b − a|/c` and `|c − b|/c` against `eq_tol` after
/// sorting; `a/c <= eq_tol` counts as the excluded degenerate edge. Signs are
/// reported in the input order with a deadband of `eq_tol · max|κ|`.
pub fn classify(f: &StretchFactors, eq_tol: f64) -> Result<Classification> {
    if !(eq_tol >= 0.0) {
        return Err(Error::domain(format!("eq_tol must be non-negative, got {eq_tol}")));
    }
    let sorted = f.sorted();
    let (a, b, c) = (sorted.a, sorted.b, sorted.c);
    let low_eq = (b - a) / c <= eq_tol;
    let high_eq = (c - b) / c <= eq_tol;
    let shape = if a / c <= eq_tol {
        Shape::Degenerate
    } else {
        match (low_eq, high_eq) {
            (true, true) => Shape::Isotropic,
            (true, false) => Shape::Snake,
            (false, true) => Shape::Turtle,
            (false, false) => Shape::Dragon,
        }
    };

    let kappa = f.principal_curvatures();
    let ricci = f.ricci_eigenvalues();
    let scale = kappa.iter().fold(0.0_f64, |m, k| m.max(k.abs()));
    let deadband = eq_tol * scale;
    let signs = |v: [f64; 3]| v.map(|x| Sign::with_deadband(x, deadband));
    Ok(Classification {
        shape,
        curvature_signs: signs(kappa),
        ricci_signs: signs(ricci),
        scalar_sign: Sign::with_deadband(2.0 * kappa.iter().sum::<f64>(), deadband),
    })
}
