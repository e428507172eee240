//! Perpendicular wall hits solved from the wall.
//!
//! Integrating toward a wall amplifies direction errors like
//! `(theta / wall_eps)^m` with `m` the multiplicity on that side, so forward
//! shooting from `p_M` cannot reach the wall once `m` is moderately large.
//! Starting on the regular branch at the wall and integrating away from it is
//! stable; the wall point `r_hit` is then adjusted until the curve passes
//! through `p_M`.

use serde::{Deserialize, Serialize};

use super::{integrate, integrate_until, CurveState, IntegrateOptions, Termination, Wall};
use crate::angle;
use crate::error::{Error, Result};
use crate::foliation::FoliationParams;
use crate::orbit_space::OrbitPoint;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnchoredHit {
    /// Direction at `p_M` of the curve that runs into the wall.
    pub alpha: f64,
    pub wall: Wall,
    pub r_hit: f64,
    /// Euclidean distance between `p_M` and the anchored curve's crossing.
    pub miss: f64,
}

/// Start of the regular solution leaving `theta = 0` perpendicularly at
/// `r_hit`: `alpha = (n - h r) theta / (m1 + 1) + O(theta^3)`.
fn regular_start(p: &FoliationParams, h_tilde: f64, r_hit: f64, theta0: f64) -> CurveState {
    let k = (p.n as f64 - h_tilde * r_hit) / (p.m1 as f64 + 1.0);
    let r = r_hit * (1.0 + 0.5 * k * theta0 * theta0);
    CurveState::new(0.0, r, theta0, k * theta0)
}

/// First crossing of the ray `theta = theta_m` by the regular curve from
/// `(r_hit, 0)`: returns `(r, alpha)` there.
fn crossing(
    p: &FoliationParams,
    h_tilde: f64,
    r_hit: f64,
    theta_m: f64,
    opts: &IntegrateOptions,
) -> Option<(f64, f64)> {
    let theta0 = (1e-4 * theta_m).max(10.0 * opts.wall_eps);
    let init = regular_start(p, h_tilde, r_hit, theta0);
    let c = integrate_until(p, h_tilde, init, opts, |st| st.theta >= theta_m).ok()?;
    if c.termination != Termination::Stopped {
        return None;
    }
    let n = c.samples.len();
    let (a, b) = (c.samples[n - 2], c.samples[n - 1]);
    // secant on the step length from `a` to land on the ray
    let sub = IntegrateOptions { s_max: 1.0, ..*opts };
    let land = |ds: f64| -> Option<CurveState> {
        if ds <= 0.0 {
            return Some(a);
        }
        let c = integrate(p, h_tilde, a, &IntegrateOptions { s_max: ds, ..sub }).ok()?;
        (c.termination == Termination::ArcLengthLimit).then(|| *c.last())
    };
    let (mut d0, mut f0) = (0.0, a.theta - theta_m);
    let (mut d1, mut f1) = (b.s - a.s, b.theta - theta_m);
    let mut best = b;
    for _ in 0..30 {
        if f1 == f0 {
            break;
        }
        let d2 = d1 - f1 * (d1 - d0) / (f1 - f0);
        let st = land(d2)?;
        best = st;
        let f2 = st.theta - theta_m;
        if f2.abs() < 1e-14 {
            break;
        }
        (d0, f0, d1, f1) = (d1, f1, d2, f2);
    }
    Some((best.r, best.alpha))
}

fn lower_wall_solve(
    p: &FoliationParams,
    h_tilde: f64,
    p_m: OrbitPoint,
    r_guess: f64,
    opts: &IntegrateOptions,
) -> Option<(f64, f64, f64)> {
    let f = |log_r: f64| crossing(p, h_tilde, log_r.exp(), p_m.theta, opts);
    let mut x0 = r_guess.ln();
    let (r0, _) = f(x0)?;
    let mut g0 = r0.ln() - p_m.r.ln();
    // for h = 0 the map is a dilation, so one corrected step is exact
    let mut x1 = x0 - g0;
    let mut last = None;
    for _ in 0..60 {
        let (r1, a1) = f(x1)?;
        let g1 = r1.ln() - p_m.r.ln();
        last = Some((x1.exp(), r1, a1));
        if g1.abs() < 1e-13 || g1 == g0 {
            break;
        }
        let x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
        (x0, g0, x1) = (x1, g1, x2);
    }
    let (r_hit, r_cross, alpha) = last?;
    let miss = (r_cross - p_m.r).abs();
    Some((r_hit, alpha, miss))
}

/// Solves for the direction at `p_M` whose curve meets `wall`
/// perpendicularly, by integrating from the wall toward `p_M`.
///
/// `r_guess` seeds the search for the wall point. Returns `Ok(None)` when the
/// regular curve from the wall never reaches the ray through `p_M`.
pub fn anchor_perpendicular(
    p: &FoliationParams,
    h_tilde: f64,
    p_m: OrbitPoint,
    wall: Wall,
    r_guess: f64,
    opts: &IntegrateOptions,
) -> Result<Option<AnchoredHit>> {
    if !p_m.is_interior(p) {
        return Err(Error::Domain(format!("p_M = {p_m:?} not interior")));
    }
    if !(r_guess > 0.0 && r_guess.is_finite()) {
        return Err(Error::Domain(format!("r_guess = {r_guess} must be positive")));
    }
    // The curve from the wall to p_M is the reversal of the curve from p_M,
    // which solves the system with -h. The upper wall is handled in the
    // mirrored wedge, where (theta, alpha, h) -> (pi/g - theta, pi - alpha, -h).
    let hit = match wall {
        Wall::Lower => lower_wall_solve(p, -h_tilde, p_m, r_guess, opts)
            .map(|(r, a, miss)| (r, angle::normalize(a + std::f64::consts::PI), miss)),
        Wall::Upper => {
            let q = p.mirrored();
            let qm = OrbitPoint::new(p_m.r, p.wedge_angle() - p_m.theta);
            lower_wall_solve(&q, h_tilde, qm, r_guess, opts).map(|(r, a, miss)| (r, angle::normalize(-a), miss))
        }
    };
    Ok(hit.map(|(r_hit, alpha, miss)| AnchoredHit {
        alpha,
        wall,
        r_hit,
        miss,
    }))
}
