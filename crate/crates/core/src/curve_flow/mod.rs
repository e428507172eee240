//! Profile curves in the orbit-space wedge.
//!
//! A unit-speed curve `(r(s), theta(s))` with direction angle `alpha`
//! measured from `d/dtheta` generates a hypersurface of constant mean
//! curvature `h~` in `R^{n+1}` iff
//!
//! ```text
//! r'     = sin(alpha)
//! theta' = cos(alpha) / r
//! alpha' = -h~ + n cos(alpha)/r - h(theta) sin(alpha)/r
//! ```
//!
//! with `h` the leaf mean curvature from [`crate::foliation`]. `h~ = 0` gives
//! minimal hypersurfaces, i.e. geodesics of the conformal metric.

mod anchor;
mod classify;
mod integrator;
mod shoot;

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::angle;
use crate::error::{Error, Result};
use crate::foliation::FoliationParams;
use crate::orbit_space::{OrbitPoint, Polyline};

pub use anchor::{anchor_perpendicular, AnchoredHit};
pub use classify::{classify, ClassifyTolerances, CurveClass};
pub use integrator::{integrate, integrate_until, IntegrateOptions};
pub use shoot::{
    shoot_perpendicular, sweep, sweep_direction, sweep_with_curves, wall_defect, PerpendicularHit, ShootOptions,
    ShootOutcome, SweepEntry, SweepOutcome,
};

/// State of the reduced system at arc length `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveState {
    pub s: f64,
    pub r: f64,
    pub theta: f64,
    pub alpha: f64,
}

impl CurveState {
    pub fn new(s: f64, r: f64, theta: f64, alpha: f64) -> Self {
        Self { s, r, theta, alpha }
    }

    pub fn point(&self) -> OrbitPoint {
        OrbitPoint::new(self.r, self.theta)
    }

    pub fn is_interior(&self, p: &FoliationParams) -> bool {
        self.point().is_interior(p) && self.alpha.is_finite()
    }

    pub fn to_cartesian(&self) -> (f64, f64) {
        self.point().to_cartesian()
    }
}

/// Boundary line of the wedge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Wall {
    /// `theta = 0`, the side of the focal submanifold `M_+`.
    #[serde(rename = "theta=0")]
    Lower,
    /// `theta = pi/g`, the side of `M_-`.
    #[serde(rename = "theta=pi/g")]
    Upper,
}

impl Wall {
    pub fn theta(self, p: &FoliationParams) -> f64 {
        match self {
            Wall::Lower => 0.0,
            Wall::Upper => p.wedge_angle(),
        }
    }

    /// Euclidean distance from `q` to the wall line.
    pub fn distance(self, p: &FoliationParams, q: OrbitPoint) -> f64 {
        match self {
            Wall::Lower => q.r * angle::sin(q.theta),
            Wall::Upper => q.r * angle::sin(p.wedge_angle() - q.theta),
        }
    }

    /// Coordinate of `q` along the wall direction.
    pub fn along(self, p: &FoliationParams, q: OrbitPoint) -> f64 {
        match self {
            Wall::Lower => q.r * angle::cos(q.theta),
            Wall::Upper => q.r * angle::cos(p.wedge_angle() - q.theta),
        }
    }

    pub fn all() -> [Wall; 2] {
        [Wall::Lower, Wall::Upper]
    }
}

/// Why an integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Termination {
    /// Came within `wall_eps` of a wall. `alpha_at_wall` and `r_at_wall` are
    /// linear extrapolations in `theta` from the last two samples.
    Wall {
        wall: Wall,
        r_at_wall: f64,
        alpha_at_wall: f64,
    },
    /// `r < r_min`.
    Origin,
    /// `r > r_max`.
    RadiusLimit,
    /// `s` reached `s_max`.
    ArcLengthLimit,
    /// Hit the step budget before any other event.
    StepLimit,
    /// A caller-supplied stop condition fired.
    Stopped,
}

impl Termination {
    pub fn is_escape(&self) -> bool {
        matches!(self, Termination::RadiusLimit | Termination::ArcLengthLimit)
    }
}

/// An integrated, event-terminated trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionCurve {
    pub params: FoliationParams,
    pub h_tilde: f64,
    pub samples: Vec<CurveState>,
    pub termination: Termination,
    /// `max |r'^2 + (r theta')^2 - 1|` over accepted steps.
    pub max_speed_defect: f64,
}

impl SolutionCurve {
    pub fn first(&self) -> &CurveState {
        &self.samples[0]
    }

    pub fn last(&self) -> &CurveState {
        self.samples.last().expect("solution has at least the initial state")
    }

    /// Samples as a polyline parametrised by the integrator's arc length.
    /// Consecutive samples that coincide (zero-length steps) are dropped.
    pub fn to_polyline(&self) -> Result<Polyline> {
        let mut pts = Vec::with_capacity(self.samples.len());
        let mut s = Vec::with_capacity(self.samples.len());
        for st in &self.samples {
            if s.last().is_some_and(|&last: &f64| st.s <= last) {
                continue;
            }
            pts.push(st.point());
            s.push(st.s);
        }
        Polyline::new(pts, s)
    }

    /// CSV with header `s,r,theta,alpha,x,y`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,r,theta,alpha,x,y\n");
        for st in &self.samples {
            let (x, y) = st.to_cartesian();
            let _ = writeln!(out, "{},{},{},{},{},{}", st.s, st.r, st.theta, st.alpha, x, y);
        }
        out
    }
}

fn check_state(p: &FoliationParams, st: &CurveState) -> Result<()> {
    if st.is_interior(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "state (r = {}, theta = {}, alpha = {}) not interior to C(pi/{})",
            st.r, st.theta, st.alpha, p.g
        )))
    }
}

/// Right-hand side `(dr/ds, dtheta/ds, dalpha/ds)` of the profile system.
pub fn ode_rhs(p: &FoliationParams, h_tilde: f64, st: &CurveState) -> Result<[f64; 3]> {
    check_state(p, st)?;
    Ok(rhs_unchecked(p, h_tilde, st.r, st.theta, st.alpha))
}

#[inline]
pub(crate) fn rhs_unchecked(p: &FoliationParams, h_tilde: f64, r: f64, theta: f64, alpha: f64) -> [f64; 3] {
    let (sa, ca) = angle::sin_cos(alpha);
    let h = p.mean_curvature_unchecked(theta);
    let n = p.n as f64;
    [sa, ca / r, -h_tilde + n * ca / r - h * sa / r]
}

/// Which way the lifted conormal `N` points in the wedge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConormalOrientation {
    /// `N` lifts to `+d/(r dtheta)`.
    Positive,
    /// `N` lifts to `-d/(r dtheta)`.
    Negative,
}

impl ConormalOrientation {
    pub fn from_sign(sign: i32) -> Result<Self> {
        match sign {
            1 => Ok(Self::Positive),
            -1 => Ok(Self::Negative),
            other => Err(Error::Domain(format!("orientation must be +1 or -1, got {other}"))),
        }
    }
}

/// Initial state for a profile curve leaving the boundary leaf at
/// `(R, theta0)` with the given contact angle.
///
/// The curve starts along `-n` where `n = -sin(c) X/R + cos(c) N` is the
/// outward conormal, so `alpha = pi - c` for `N = +d/(r dtheta)` and
/// `alpha = pi + c` otherwise. Conformality of `g_c` means the Euclidean
/// direction in the wedge is the `g_c` direction.
pub fn initial_state_from_contact(
    p: &FoliationParams,
    radius: f64,
    theta0: f64,
    contact_angle: f64,
    orientation: ConormalOrientation,
) -> Result<CurveState> {
    if !contact_angle.is_finite() {
        return Err(Error::Domain(format!("contact angle {contact_angle} is not finite")));
    }
    let alpha = match orientation {
        ConormalOrientation::Positive => PI - contact_angle,
        ConormalOrientation::Negative => PI + contact_angle,
    };
    let st = CurveState::new(0.0, radius, theta0, angle::normalize(alpha));
    check_state(p, &st)?;
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::validate_params;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn rhs_examples() {
        let p = validate_params(2, 2, 6).unwrap();
        let tc = p.minimal_cone_angle().unwrap();
        for r in [0.1, 1.0, 7.0] {
            let d = ode_rhs(&p, 0.0, &CurveState::new(0.0, r, tc, -FRAC_PI_2)).unwrap();
            assert!((d[0] + 1.0).abs() < 1e-15);
            assert!(d[1].abs() < 1e-15);
            assert!(d[2].abs() < 1e-13, "{}", d[2]);
        }
        let st = CurveState::new(0.0, 1.0, FRAC_PI_4, 0.0);
        let d = ode_rhs(&p, 0.0, &st).unwrap();
        assert_eq!(d[0], 0.0);
        assert!((d[1] - 1.0).abs() < 1e-15);
        assert!((d[2] - 9.0).abs() < 1e-13);
        let d1 = ode_rhs(&p, 1.0, &st).unwrap();
        assert!((d1[2] - 8.0).abs() < 1e-13);
        assert!(ode_rhs(&p, 0.0, &CurveState::new(0.0, 1.0, 0.0, 0.0)).is_err());
        assert!(ode_rhs(&p, 0.0, &CurveState::new(0.0, -1.0, 0.3, 0.0)).is_err());
    }

    #[test]
    fn contact_angle_to_direction() {
        let p = validate_params(2, 1, 1).unwrap();
        let pos = ConormalOrientation::Positive;
        let a = |c: f64, o| initial_state_from_contact(&p, 1.0, 0.4, c, o).unwrap().alpha;
        assert!((a(FRAC_PI_2, pos) - FRAC_PI_2).abs() < 1e-15);
        assert!((a(0.0, pos) - PI).abs() < 1e-15);
        assert!((a(FRAC_PI_4, pos) - 3.0 * FRAC_PI_4).abs() < 1e-15);
        let neg = a(FRAC_PI_4, ConormalOrientation::Negative);
        assert!((neg + 3.0 * FRAC_PI_4).abs() < 1e-15);
        assert!(initial_state_from_contact(&p, 1.0, 0.0, 0.1, pos).is_err());
    }

    /// Rebuild nu and the conormal from the contact-angle frame relations and
    /// project the start direction -n onto (e_r, e_theta).
    #[test]
    fn contact_direction_matches_frame_reconstruction() {
        let p = validate_params(2, 1, 1).unwrap();
        for c in [-2.5, -0.7, 0.0, 0.3, FRAC_PI_4, 1.9, 3.0] {
            // X/R -> e_r = (1, 0); N -> e_theta = (0, 1)
            let conormal = (-c.sin(), c.cos());
            let start = (-conormal.0, -conormal.1);
            let st = initial_state_from_contact(&p, 2.0, 0.5, c, ConormalOrientation::Positive).unwrap();
            assert!((st.alpha.sin() - start.0).abs() < 1e-14);
            assert!((st.alpha.cos() - start.1).abs() < 1e-14);
        }
    }

    #[test]
    fn csv_header_and_columns() {
        let p = validate_params(2, 1, 1).unwrap();
        let c = SolutionCurve {
            params: p,
            h_tilde: 0.0,
            samples: vec![CurveState::new(0.0, 2.0, FRAC_PI_2 / 2.0, 0.1)],
            termination: Termination::Origin,
            max_speed_defect: 0.0,
        };
        let csv = c.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("s,r,theta,alpha,x,y"));
        let cols: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(cols.len(), 6);
        assert!((cols[4] - 2f64.sqrt()).abs() < 1e-15);
        assert!((cols[5] - 2f64.sqrt()).abs() < 1e-15);
    }
}
