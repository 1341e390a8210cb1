//! Curvature, Ricci flow and flow-line portraits for homogeneously deformed
//! 3-spheres (Bianchi IX spaces).
//!
//! * [`geometry`]: stretch factors, metric coefficients, curvature, classification.
//! * [`flow`]: the reduced flow system, an adaptive integrator with collapse
//!   detection, and the closed-form isotropic, snake and turtle solutions.
//! * [`shape`]: triangle coordinates, flow-line tracing, the Ricci ratio map
//!   and region boundaries.
//! * [`cli`]: the command-line front end and its CSV/JSON emitters.

pub mod cli;
pub mod error;
pub mod flow;
pub mod geometry;
pub mod shape;

pub use error::{Error, Result};
pub use flow::{integrate, FlowParams, SnakeSolution, Trajectory, TurtleSolution};
pub use geometry::{classify, Classification, MetricCoeffs, Shape, StretchFactors};
pub use shape::{trace_flowline, FlowLine, ShapePoint};
