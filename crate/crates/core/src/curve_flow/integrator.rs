//! Dormand–Prince 5(4) with a PI step-size controller and wedge events.

use serde::{Deserialize, Serialize};

use super::{rhs_unchecked, CurveState, SolutionCurve, Termination, Wall};
use crate::angle;
use crate::error::{Error, Result};
use crate::foliation::FoliationParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrateOptions {
    pub s_max: f64,
    pub r_min: f64,
    pub r_max: f64,
    /// Wall event fires at `theta < wall_eps` or `theta > pi/g - wall_eps`.
    pub wall_eps: f64,
    pub rtol: f64,
    pub atol: f64,
    /// Steps never exceed `max_step_rel * r`; keeps the `1/r` terms resolved
    /// and the integration covariant under `r -> lambda r`.
    pub max_step_rel: f64,
    pub max_step: f64,
    pub min_step: f64,
    pub max_steps: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self {
            s_max: 100.0,
            r_min: 1e-3,
            r_max: 1e3,
            wall_eps: 1e-6,
            rtol: 1e-10,
            atol: 1e-10,
            max_step_rel: 0.02,
            max_step: f64::INFINITY,
            min_step: 1e-14,
            max_steps: 2_000_000,
        }
    }
}

// Dormand & Prince (1980) tableau; row 6 holds the fifth-order weights.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth-order minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const BETA: f64 = 0.04;
const ALPHA_EXP: f64 = 0.2 - 0.75 * BETA;
const MAX_GROW: f64 = 10.0;
const MIN_SHRINK: f64 = 0.2;

fn admissible(p: &FoliationParams, y: &[f64; 3]) -> bool {
    y.iter().all(|v| v.is_finite()) && y[0] > 0.0 && y[1] > 0.0 && y[1] < p.wedge_angle()
}

/// Integrates the profile system from `init` until the first event.
///
/// Every accepted sample is recorded. A trial step whose stages leave the
/// open wedge is rejected and retried with a quarter of the step.
pub fn integrate(
    p: &FoliationParams,
    h_tilde: f64,
    init: CurveState,
    opts: &IntegrateOptions,
) -> Result<SolutionCurve> {
    integrate_until(p, h_tilde, init, opts, |_| false)
}

/// [`integrate`] with an extra stop condition, checked on every accepted
/// state before the wedge events. Fires as [`Termination::Stopped`].
pub fn integrate_until<F>(
    p: &FoliationParams,
    h_tilde: f64,
    init: CurveState,
    opts: &IntegrateOptions,
    stop: F,
) -> Result<SolutionCurve>
where
    F: Fn(&CurveState) -> bool,
{
    super::check_state(p, &init)?;
    if !(opts.wall_eps > 0.0 && 2.0 * opts.wall_eps < p.wedge_angle()) {
        return Err(Error::Domain(format!("wall_eps = {} out of range", opts.wall_eps)));
    }
    if !(opts.r_min >= 0.0 && opts.r_max > opts.r_min && opts.s_max > 0.0) {
        return Err(Error::Domain("need 0 <= r_min < r_max and s_max > 0".into()));
    }
    if !h_tilde.is_finite() {
        return Err(Error::Domain(format!("h_tilde = {h_tilde} is not finite")));
    }

    let rhs = |y: &[f64; 3]| rhs_unchecked(p, h_tilde, y[0], y[1], y[2]);
    let wedge = p.wedge_angle();

    let mut y = [init.r, init.theta, init.alpha];
    let mut s = init.s;
    let s_end = init.s + opts.s_max;
    let mut samples = vec![CurveState::new(s, y[0], y[1], angle::normalize(y[2]))];
    let mut k = [[0.0; 3]; 7];
    k[0] = rhs(&y);
    let mut max_speed_defect = speed_defect(&y, &k[0]);

    let mut step = (0.01 * y[0]).min(opts.max_step_rel * y[0]).min(opts.max_step);
    let mut err_prev: f64 = 1e-4;
    let mut rejected_last = false;

    let termination = loop {
        if samples.len() > opts.max_steps {
            break Termination::StepLimit;
        }
        if s >= s_end {
            break Termination::ArcLengthLimit;
        }
        step = step.min(opts.max_step_rel * y[0]).min(opts.max_step).min(s_end - s);
        if !(step >= opts.min_step * y[0].max(1.0)) {
            return Err(Error::StepSizeUnderflow { s, step });
        }

        let mut stage_ok = true;
        let mut ys = [0.0; 3];
        for i in 1..7 {
            for c in 0..3 {
                let mut acc = y[c];
                for j in 0..i {
                    acc += step * A[i][j] * k[j][c];
                }
                ys[c] = acc;
            }
            if !admissible(p, &ys) {
                stage_ok = false;
                break;
            }
            k[i] = rhs(&ys);
        }
        if !stage_ok {
            step *= 0.25;
            rejected_last = true;
            continue;
        }
        // the last stage is evaluated at the fifth-order solution (FSAL)
        let y_new = ys;

        let mut err_sq = 0.0;
        for c in 0..3 {
            let mut e = 0.0;
            for i in 0..7 {
                e += E[i] * k[i][c];
            }
            e *= step;
            let scale = opts.atol + opts.rtol * y[c].abs().max(y_new[c].abs());
            err_sq += (e / scale).powi(2);
        }
        let err = (err_sq / 3.0).sqrt();
        if !err.is_finite() {
            step *= 0.25;
            rejected_last = true;
            continue;
        }

        if err <= 1.0 {
            s = if s_end - s <= step { s_end } else { s + step };
            let prev = y;
            y = y_new;
            k[0] = k[6];
            if y.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite { s });
            }
            max_speed_defect = max_speed_defect.max(speed_defect(&y, &k[0]));
            let st = CurveState::new(s, y[0], y[1], angle::normalize(y[2]));
            samples.push(st);

            let mut factor = SAFETY * err.max(1e-10).powf(-ALPHA_EXP) * err_prev.powf(BETA);
            factor = factor.clamp(MIN_SHRINK, MAX_GROW);
            if rejected_last {
                factor = factor.min(1.0);
            }
            err_prev = err.max(1e-4);
            rejected_last = false;
            step *= factor;

            if stop(&st) {
                break Termination::Stopped;
            }
            if y[1] < opts.wall_eps {
                break wall_event(Wall::Lower, 0.0, &prev, &y);
            }
            if y[1] > wedge - opts.wall_eps {
                break wall_event(Wall::Upper, wedge, &prev, &y);
            }
            if y[0] < opts.r_min {
                break Termination::Origin;
            }
            if y[0] > opts.r_max {
                break Termination::RadiusLimit;
            }
        } else {
            let factor = (SAFETY * err.powf(-0.2)).max(MIN_SHRINK);
            step *= factor;
            rejected_last = true;
        }
    };

    Ok(SolutionCurve {
        params: *p,
        h_tilde,
        samples,
        termination,
        max_speed_defect,
    })
}

fn speed_defect(y: &[f64; 3], dy: &[f64; 3]) -> f64 {
    (dy[0] * dy[0] + (y[0] * dy[1]).powi(2) - 1.0).abs()
}

fn wall_event(wall: Wall, theta_wall: f64, prev: &[f64; 3], cur: &[f64; 3]) -> Termination {
    let dtheta = cur[1] - prev[1];
    let (r_at_wall, alpha_at_wall) = if dtheta.abs() > 0.0 {
        let t = (theta_wall - cur[1]) / dtheta;
        let dalpha = cur[2] - prev[2];
        (cur[0] + t * (cur[0] - prev[0]), cur[2] + t * dalpha)
    } else {
        (cur[0], cur[2])
    };
    Termination::Wall {
        wall,
        r_at_wall,
        alpha_at_wall: angle::normalize(alpha_at_wall),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::validate_params;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn cone_ray_reaches_origin_exactly() {
        let p = validate_params(2, 3, 3).unwrap();
        let tc = p.minimal_cone_angle().unwrap();
        let init = CurveState::new(0.0, 2f64.sqrt(), tc, -FRAC_PI_2);
        let c = integrate(&p, 0.0, init, &IntegrateOptions::default()).unwrap();
        assert_eq!(c.termination, Termination::Origin);
        for st in &c.samples {
            assert!((st.theta - tc).abs() < 1e-9);
        }
        assert!(c.last().r < 1e-3);
    }

    #[test]
    fn circle_when_h_dominates() {
        // With huge h~ the curve is a small circle of radius ~1/h~.
        let p = validate_params(2, 1, 1).unwrap();
        let init = CurveState::new(0.0, 10.0, 0.7, 0.0);
        let opts = IntegrateOptions {
            s_max: 2.0 * std::f64::consts::PI / 1e4,
            ..Default::default()
        };
        let c = integrate(&p, 1e4, init, &opts).unwrap();
        assert_eq!(c.termination, Termination::ArcLengthLimit);
        let (x0, y0) = c.first().to_cartesian();
        let (x1, y1) = c.last().to_cartesian();
        assert!((x1 - x0).hypot(y1 - y0) < 1e-5);
    }

    #[test]
    fn rejects_bad_options() {
        let p = validate_params(2, 1, 1).unwrap();
        let init = CurveState::new(0.0, 1.0, 0.7, 0.0);
        let bad = IntegrateOptions {
            wall_eps: 1.0,
            ..Default::default()
        };
        assert!(integrate(&p, 0.0, init, &bad).is_err());
        assert!(integrate(&p, f64::NAN, init, &IntegrateOptions::default()).is_err());
        let outside = CurveState::new(0.0, 1.0, 2.0, 0.0);
        assert!(integrate(&p, 0.0, outside, &IntegrateOptions::default()).is_err());
    }
}
