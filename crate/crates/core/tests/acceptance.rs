//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion does.

use std::time::{Duration, Instant};

use dante_flow::flow::{integrate, rhs, FlowParams, SnakeSolution, Trajectory, TurtleSolution};
use dante_flow::geometry::{MetricCoeffs, StretchFactors};
use dante_flow::shape::{from_xy, slope, start_grid, to_rho_tau, trace_flowline, ShapePoint};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

// mpmath, 50 digits
const SNAKE_GOLDEN: [(f64, f64); 3] = [
    (0.25, 0.960_545_561_547_845_955_4),
    (1.0, 0.642_699_081_698_724_154_81),
    (4.0, 0.195_138_972_664_386_411_07),
];
const TURTLE_GOLDEN: [(f64, f64, f64); 3] = [
    (0.25, 1.044_158_957_099_324_016_5, 1e-6),
    (0.5, 1.215_972_811_000_721_512_4, 1e-6),
    (0.9, 3.449_478_663_803_543_402_6, 1e-5),
];

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f()?;
    let elapsed = start.elapsed();
    check(elapsed < limit, format!("{out}; {elapsed:.2?} (limit {limit:?})"))
}

fn params() -> FlowParams {
    FlowParams::default()
}

fn collapse(traj: &Trajectory) -> Result<f64, String> {
    traj.collapse_time().ok_or_else(|| "no collapse".to_owned())
}

fn isotropic() -> Outcome {
    timed(Duration::from_secs(1), || {
        let m0 = StretchFactors::new(1.0, 1.0, 1.0).unwrap().metric_coeffs();
        let traj = integrate(&m0, &params()).map_err(|e| e.to_string())?;
        let t_c = collapse(&traj)?;
        let dev = traj
            .samples()
            .iter()
            .map(|s| (s.m.u() - (1.0 - s.t)).abs())
            .fold(0.0, f64::max);
        check(
            (t_c - 1.0).abs() < 1e-6 && dev < 1e-9,
            format!("collapse {t_c:.12}, max |u - (1 - t)| {dev:.2e}"),
        )
    })
}

fn snakes() -> Outcome {
    timed(Duration::from_secs(5), || {
        let mut notes = Vec::new();
        let mut ok = true;
        for (alpha, golden) in SNAKE_GOLDEN {
            let sol = SnakeSolution::new(1.0, alpha).map_err(|e| e.to_string())?;
            let traj = integrate(&sol.initial_metric(), &params()).map_err(|e| e.to_string())?;
            let mut dev = 0.0_f64;
            for s in traj.samples() {
                let t_cf = sol.time_of_lambda(s.m.w().min(1.0)).map_err(|e| e.to_string())?;
                dev = dev.max((t_cf - s.t).abs());
            }
            let t_err = (collapse(&traj)? - golden).abs();
            let closed_err = (sol.collapse_time() - golden).abs();
            ok &= dev < 1e-6 && t_err < 1e-6 && closed_err < 1e-14;
            notes.push(format!("alpha={alpha}: dev {dev:.1e}, collapse err {t_err:.1e}"));
        }
        check(ok, notes.join("; "))
    })
}

fn turtles() -> Outcome {
    timed(Duration::from_secs(5), || {
        let mut notes = Vec::new();
        let mut ok = true;
        for (beta, golden, tol) in TURTLE_GOLDEN {
            let sol = TurtleSolution::new(1.0, beta).map_err(|e| e.to_string())?;
            let traj = integrate(&sol.initial_metric(), &params()).map_err(|e| e.to_string())?;
            let mut dev = 0.0_f64;
            for s in traj.samples() {
                let t_cf = sol.time_of_mu(s.m.u().min(1.0)).map_err(|e| e.to_string())?;
                dev = dev.max((t_cf - s.t).abs());
            }
            let t_err = (collapse(&traj)? - golden).abs();
            let closed_err = (sol.collapse_time() - golden).abs();
            ok &= dev < tol && t_err < tol && closed_err < 1e-13;
            notes.push(format!("beta={beta}: dev {dev:.1e}, collapse err {t_err:.1e}"));
        }
        check(ok, notes.join("; "))
    })
}

fn degenerate_line() -> Outcome {
    let f = StretchFactors::new(1.0, 1.0, 2.0).unwrap();
    let k = f.principal_curvatures();
    let r = f.ricci_eigenvalues();
    let dk = k.iter().zip([1.0, 1.0, -1.0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let dr = r.iter().zip([0.0, 0.0, 2.0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    check(dk <= 1e-12 && dr <= 1e-12, format!("kappa {k:?}, ricci {r:?}"))
}

fn apex_law() -> Outcome {
    let starts = start_grid(5);
    if starts.len() != 25 {
        return Err(format!("expected 25 starts, got {}", starts.len()));
    }
    let p = params();
    let mut worst_apex = 0.0_f64;
    let mut worst_end = 0.0_f64;
    for s in starts {
        let line = trace_flowline(s, 1.0, &p).map_err(|e| format!("start {s:?}: {e}"))?;
        worst_apex = worst_apex.max((line.apex.radius_squared() - 2.0).abs());
        let end = line.end();
        worst_end = worst_end.max(((end.x - 2.0).powi(2) + end.y.powi(2)).sqrt());
    }
    check(
        worst_apex < 1e-4 && worst_end < 1e-4,
        format!("max |r^2 - 2| {worst_apex:.1e}, max end distance {worst_end:.1e}"),
    )
}

fn ordering_and_subspaces() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let p = params();
    let mut worst_order = 0.0_f64;
    for _ in 0..100 {
        let mut f = [rng.gen_range(0.2..2.0), rng.gen_range(0.2..2.0), rng.gen_range(0.2..2.0)];
        f.sort_by(f64::total_cmp);
        let m0 = StretchFactors::new(f[0], f[1], f[2]).unwrap().metric_coeffs();
        let traj = integrate(&m0, &p).map_err(|e| e.to_string())?;
        for s in traj.samples() {
            worst_order = worst_order.max(s.m.u() - s.m.v()).max(s.m.v() - s.m.w());
        }
    }
    let mut worst_sub = 0.0_f64;
    for _ in 0..10 {
        let snake = SnakeSolution::new(rng.gen_range(0.5..2.0), rng.gen_range(0.1..3.0)).unwrap();
        for s in integrate(&snake.initial_metric(), &p).map_err(|e| e.to_string())?.samples() {
            worst_sub = worst_sub.max((s.m.u() - s.m.v()).abs());
        }
        let turtle = TurtleSolution::new(rng.gen_range(0.5..2.0), rng.gen_range(0.0..0.9)).unwrap();
        for s in integrate(&turtle.initial_metric(), &p).map_err(|e| e.to_string())?.samples() {
            worst_sub = worst_sub.max((s.m.v() - s.m.w()).abs());
        }
    }
    check(
        worst_order <= 1e-10 && worst_sub <= 1e-9,
        format!("max ordering violation {worst_order:.1e}, max subspace drift {worst_sub:.1e}"),
    )
}

/// Uniform point strictly inside the triangle (0,0), (2,0), (1,1).
fn interior_point(rng: &mut StdRng) -> ShapePoint {
    loop {
        let x: f64 = rng.gen_range(0.0..2.0);
        let y: f64 = rng.gen_range(0.0..1.0);
        if y > 1e-6 && y < x.min(2.0 - x) - 1e-6 {
            return ShapePoint::new(x, y);
        }
    }
}

/// Independent projection of the metric flow onto the shape plane, with
/// w = 1, u = (x - y)/2, v = (x + y)/2.
fn projected_slope(p: ShapePoint) -> f64 {
    let (u, v, w) = ((p.x - p.y) / 2.0, (p.x + p.y) / 2.0, 1.0);
    let [du, dv, dw] = rhs(&MetricCoeffs::new(u, v, w).unwrap(), 4.0);
    let xdot = (du + dv) / w - (u + v) * dw / (w * w);
    let ydot = (dv - du) / w - (v - u) * dw / (w * w);
    ydot / xdot
}

fn slope_ode() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let p = interior_point(&mut rng);
        let s = slope(p).map_err(|e| e.to_string())?;
        let oracle = projected_slope(p);
        worst = worst.max((s - oracle).abs() / oracle.abs().max(f64::MIN_POSITIVE));
    }
    check(worst <= 1e-9, format!("max relative error {worst:.1e} over 1000 points"))
}

fn scale_covariance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let p = params();
    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let mut f = [rng.gen_range(0.3..1.5), rng.gen_range(0.3..1.5), rng.gen_range(0.3..1.5)];
        f.sort_by(f64::total_cmp);
        let m0 = StretchFactors::new(f[0], f[1], f[2]).unwrap().metric_coeffs();
        let t1 = collapse(&integrate(&m0, &p).map_err(|e| e.to_string())?)?;
        let t2 = collapse(&integrate(&m0.scaled(2.0).unwrap(), &p).map_err(|e| e.to_string())?)?;
        worst = worst.max((t2 / (2.0 * t1) - 1.0).abs());
    }
    check(worst <= 1e-5, format!("max relative error {worst:.1e}"))
}

fn map_consistency() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut worst = 0.0_f64;
    let mut used = 0;
    for _ in 0..1000 {
        let p = interior_point(&mut rng);
        let f = from_xy(p, rng.gen_range(0.5..2.0), 4.0).map_err(|e| e.to_string())?;
        let [r11, r22, r33] = f.ricci_eigenvalues();
        if r33 == 0.0 {
            continue;
        }
        used += 1;
        let m = to_rho_tau(p).map_err(|e| e.to_string())?;
        worst = worst.max((m.rho - r22 / r33).abs()).max((m.tau - r11 / r33).abs());
    }
    check(worst <= 1e-10, format!("max error {worst:.1e} over {used} shapes"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("isotropic collapse", isotropic),
        ("snake closed form", snakes),
        ("turtle closed form", turtles),
        ("degenerate-line curvature", degenerate_line),
        ("apex law", apex_law),
        ("ordering and subspace preservation", ordering_and_subspaces),
        ("slope ODE cross-validation", slope_ode),
        ("scale covariance", scale_covariance),
        ("map consistency", map_consistency),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[{}] PASS {name}: {detail}", i + 1),
            Err(detail) => {
                println!("[{}] FAIL {name}: {detail}", i + 1);
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
