//! Trajectory classification.

use serde::{Deserialize, Serialize};

use super::{SolutionCurve, Termination, Wall};
use crate::angle;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum CurveClass {
    ToOrigin { s_end: f64 },
    HitsWallPerpendicular { wall: Wall, r_hit: f64, angle_defect: f64 },
    AsymptoticToCone { theta_c: f64, final_deviation: f64 },
    AsymptoticLine { wall: Wall, estimated_offset: f64 },
    Undetermined { reason: String },
}

impl CurveClass {
    pub fn kind(&self) -> &'static str {
        match self {
            CurveClass::ToOrigin { .. } => "ToOrigin",
            CurveClass::HitsWallPerpendicular { .. } => "HitsWallPerpendicular",
            CurveClass::AsymptoticToCone { .. } => "AsymptoticToCone",
            CurveClass::AsymptoticLine { .. } => "AsymptoticLine",
            CurveClass::Undetermined { .. } => "Undetermined",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyTolerances {
    /// Largest `|sin alpha|` at the extrapolated wall still counted as a
    /// perpendicular hit.
    pub perpendicular: f64,
    /// Fraction of the arc length examined for asymptotic behaviour.
    pub window_fraction: f64,
    /// Largest `|theta - theta_c|` at the end of a cone-asymptotic curve.
    pub cone_deviation: f64,
    /// Largest slope of distance-to-wall against the wall coordinate.
    pub line_slope: f64,
    /// The second half of the window may have at most this factor times the
    /// residual variance of the first half.
    pub line_variance_growth: f64,
}

impl Default for ClassifyTolerances {
    fn default() -> Self {
        Self {
            perpendicular: 1e-3,
            window_fraction: 0.25,
            cone_deviation: 0.1,
            line_slope: 1e-3,
            line_variance_growth: 1.1,
        }
    }
}

pub fn classify(c: &SolutionCurve, tol: &ClassifyTolerances) -> CurveClass {
    match c.termination {
        Termination::Origin => CurveClass::ToOrigin { s_end: c.last().s },
        Termination::Wall {
            wall,
            r_at_wall,
            alpha_at_wall,
        } => {
            let defect = angle::sin(alpha_at_wall).abs();
            if defect < tol.perpendicular && r_at_wall.is_finite() {
                CurveClass::HitsWallPerpendicular {
                    wall,
                    r_hit: r_at_wall,
                    angle_defect: defect,
                }
            } else {
                undetermined(format!("oblique wall event, |sin alpha| = {defect:.3e}"))
            }
        }
        Termination::StepLimit => undetermined("step budget exhausted".into()),
        Termination::Stopped => undetermined("stopped by caller".into()),
        Termination::RadiusLimit | Termination::ArcLengthLimit => {
            if c.h_tilde == 0.0 {
                cone_test(c, tol)
            } else {
                line_test(c, tol)
            }
        }
    }
}

fn undetermined(reason: String) -> CurveClass {
    CurveClass::Undetermined { reason }
}

/// Indices of the samples in the trailing `fraction` of the arc length.
fn trailing(c: &SolutionCurve, fraction: f64) -> &[super::CurveState] {
    let s0 = c.first().s;
    let s1 = c.last().s;
    let cut = s1 - fraction * (s1 - s0);
    let start = c.samples.partition_point(|st| st.s < cut);
    &c.samples[start..]
}

fn cone_test(c: &SolutionCurve, tol: &ClassifyTolerances) -> CurveClass {
    let theta_c = match c.params.minimal_cone_angle() {
        Ok(t) => t,
        Err(e) => return undetermined(e.to_string()),
    };
    let w = trailing(c, tol.window_fraction);
    if w.len() < 6 {
        return undetermined(format!("only {} samples in trailing window", w.len()));
    }
    // envelope of the deviation over three consecutive thirds of the window
    let third = w.len() / 3;
    let env: Vec<f64> = [&w[..third], &w[third..2 * third], &w[2 * third..]]
        .iter()
        .map(|part| part.iter().map(|st| (st.theta - theta_c).abs()).fold(0.0, f64::max))
        .collect();
    let final_deviation = (c.last().theta - theta_c).abs();
    if env[1] <= env[0] && env[2] <= env[1] && final_deviation < tol.cone_deviation {
        CurveClass::AsymptoticToCone {
            theta_c,
            final_deviation,
        }
    } else {
        undetermined(format!(
            "cone deviation not decreasing: window maxima {:.3e}, {:.3e}, {:.3e}",
            env[0], env[1], env[2]
        ))
    }
}

fn line_test(c: &SolutionCurve, tol: &ClassifyTolerances) -> CurveClass {
    let p = &c.params;
    let last = c.last().point();
    let wall = if Wall::Lower.distance(p, last) <= Wall::Upper.distance(p, last) {
        Wall::Lower
    } else {
        Wall::Upper
    };
    let w = trailing(c, tol.window_fraction);
    if w.len() < 8 {
        return undetermined(format!("only {} samples in trailing window", w.len()));
    }
    let x: Vec<f64> = w.iter().map(|st| wall.along(p, st.point())).collect();
    let y: Vec<f64> = w.iter().map(|st| wall.distance(p, st.point())).collect();
    // arc-length weights so that step-size clustering does not bias the fit
    let wts: Vec<f64> = (0..w.len())
        .map(|i| {
            let lo = if i == 0 { w[0].s } else { 0.5 * (w[i - 1].s + w[i].s) };
            let hi = if i + 1 == w.len() {
                w[i].s
            } else {
                0.5 * (w[i].s + w[i + 1].s)
            };
            hi - lo
        })
        .collect();
    let Some((slope, offset)) = weighted_line_fit(&x, &y, &wts) else {
        return undetermined("degenerate wall-coordinate range".into());
    };
    let half = w.len() / 2;
    let var = |range: std::ops::Range<usize>| {
        let (mut sw, mut acc) = (0.0, 0.0);
        for i in range {
            let res = y[i] - (offset + slope * x[i]);
            sw += wts[i];
            acc += wts[i] * res * res;
        }
        acc / sw
    };
    let (v1, v2) = (var(0..half), var(half..w.len()));
    let mean = {
        let sw: f64 = wts.iter().sum();
        wts.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() / sw
    };
    if slope.abs() < tol.line_slope && v2 <= tol.line_variance_growth * v1 + 1e-24 {
        CurveClass::AsymptoticLine {
            wall,
            estimated_offset: mean,
        }
    } else {
        undetermined(format!(
            "no asymptotic line: slope {slope:.3e}, residual variance {v1:.3e} -> {v2:.3e}"
        ))
    }
}

fn weighted_line_fit(x: &[f64], y: &[f64], w: &[f64]) -> Option<(f64, f64)> {
    let sw: f64 = w.iter().sum();
    let mx = w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() / sw;
    let my = w.iter().zip(y).map(|(a, b)| a * b).sum::<f64>() / sw;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..x.len() {
        sxx += w[i] * (x[i] - mx).powi(2);
        sxy += w[i] * (x[i] - mx) * (y[i] - my);
    }
    if !(sxx > 0.0) {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_flow::{integrate, CurveState, IntegrateOptions};
    use crate::foliation::validate_params;
    use std::f64::consts::FRAC_PI_2;

    fn synthetic(p: crate::FoliationParams, h_tilde: f64, pts: &[(f64, f64)]) -> SolutionCurve {
        SolutionCurve {
            params: p,
            h_tilde,
            samples: pts
                .iter()
                .enumerate()
                .map(|(i, &(r, t))| CurveState::new(i as f64, r, t, 0.0))
                .collect(),
            termination: Termination::ArcLengthLimit,
            max_speed_defect: 0.0,
        }
    }

    #[test]
    fn cone_ray_is_to_origin() {
        let p = validate_params(2, 3, 3).unwrap();
        let tc = p.minimal_cone_angle().unwrap();
        let init = CurveState::new(0.0, 2f64.sqrt(), tc, -FRAC_PI_2);
        let c = integrate(&p, 0.0, init, &IntegrateOptions::default()).unwrap();
        assert!(matches!(
            classify(&c, &ClassifyTolerances::default()),
            CurveClass::ToOrigin { .. }
        ));
    }

    #[test]
    fn perpendicular_wall_event() {
        let p = validate_params(2, 1, 1).unwrap();
        let mut c = synthetic(p, 0.0, &[(1.0, 0.1), (1.0, 1e-6)]);
        c.termination = Termination::Wall {
            wall: Wall::Lower,
            r_at_wall: 1.0,
            alpha_at_wall: std::f64::consts::PI - 5e-4,
        };
        let k = classify(&c, &ClassifyTolerances::default());
        assert!(matches!(k, CurveClass::HitsWallPerpendicular { wall: Wall::Lower, .. }));
        c.termination = Termination::Wall {
            wall: Wall::Lower,
            r_at_wall: 1.0,
            alpha_at_wall: 2.0,
        };
        let k = classify(&c, &ClassifyTolerances::default());
        assert_eq!(k.kind(), "Undetermined");
    }

    #[test]
    fn synthetic_cone_and_line() {
        let p = validate_params(2, 1, 1).unwrap();
        let tc = p.minimal_cone_angle().unwrap();
        let pts: Vec<_> = (0..400)
            .map(|i| {
                let r = 1.0 + i as f64;
                (r, tc + 0.3 * (0.2 * i as f64).cos() / r)
            })
            .collect();
        let c = synthetic(p, 0.0, &pts);
        assert_eq!(classify(&c, &ClassifyTolerances::default()).kind(), "AsymptoticToCone");

        // points at constant distance 0.5 from theta = 0, undulating
        let pts: Vec<_> = (0..4000)
            .map(|i| {
                let x = 1.0 + 0.05 * i as f64;
                let y = 0.5 + 0.1 * (3.0 * x).sin();
                ((x * x + y * y).sqrt(), y.atan2(x))
            })
            .collect();
        let c = synthetic(p, 1.0, &pts);
        match classify(&c, &ClassifyTolerances::default()) {
            CurveClass::AsymptoticLine { wall, estimated_offset } => {
                assert_eq!(wall, Wall::Lower);
                assert!((estimated_offset - 0.5).abs() < 1e-2);
            }
            other => panic!("{other:?}"),
        }

        // drifting away linearly from the wall is not asymptotic
        let pts: Vec<_> = (0..4000)
            .map(|i| {
                let x = 1.0 + 0.05 * i as f64;
                let y = 0.5 + 0.1 * x;
                ((x * x + y * y).sqrt(), y.atan2(x))
            })
            .collect();
        let c = synthetic(p, 1.0, &pts);
        assert_eq!(classify(&c, &ClassifyTolerances::default()).kind(), "Undetermined");
    }
}
