//! Isoparametric foliations of the unit sphere, encoded by `(g, m1, m2)`.
//!
//! Leaves `M_theta` are the tubes of radius `theta in (0, pi/g)` around the
//! focal submanifold `M_+`. Their relative volume is
//! `sin^m1(g theta/2) cos^m2(g theta/2)` and their mean curvature with respect
//! to the normal toward `M_+` is the logarithmic derivative of that profile.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::angle;
use crate::error::{Error, Result};

/// Multiplicity data of an isoparametric foliation of `S^n(1)`.
///
/// `n - 1 = g (m1 + m2) / 2` is the dimension of a regular leaf, and the
/// sphere sits in `R^{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FoliationParams {
    pub g: u32,
    pub m1: u32,
    pub m2: u32,
    pub n: u32,
    pub ambient_dim: u32,
}

/// Checks `(g, m1, m2)` and derives the dimensions.
pub fn validate_params(g: i64, m1: i64, m2: i64) -> Result<FoliationParams> {
    validate_params_with(g, m1, m2, false)
}

/// Like [`validate_params`]; `allow_degenerate_g1` additionally accepts
/// `g = 1, m2 = 0` (great-sphere foliation with a point-like focal set).
pub fn validate_params_with(g: i64, m1: i64, m2: i64, allow_degenerate_g1: bool) -> Result<FoliationParams> {
    if !matches!(g, 1 | 2 | 3 | 4 | 6) {
        return Err(Error::InvalidG(g));
    }
    if m1 < 1 {
        return Err(Error::InvalidMultiplicity(format!("m1 = {m1} must be >= 1")));
    }
    let m2_floor = if g == 1 && allow_degenerate_g1 { 0 } else { 1 };
    if m2 < m2_floor {
        return Err(Error::InvalidMultiplicity(format!("m2 = {m2} must be >= {m2_floor}")));
    }
    if g % 2 == 1 && m1 != m2 && !(g == 1 && m2 == 0) {
        return Err(Error::OddGMismatch { g, m1, m2 });
    }
    let sum = m1 + m2;
    if (g * sum) % 2 != 0 {
        return Err(Error::NonIntegerDimension { g, sum });
    }
    let leaf_dim = g * sum / 2;
    let n = leaf_dim + 1;
    let narrow = |v: i64| u32::try_from(v).map_err(|_| Error::Domain(format!("{v} overflows")));
    Ok(FoliationParams {
        g: narrow(g)?,
        m1: narrow(m1)?,
        m2: narrow(m2)?,
        n: narrow(n)?,
        ambient_dim: narrow(n + 1)?,
    })
}

impl FoliationParams {
    pub fn new(g: i64, m1: i64, m2: i64) -> Result<Self> {
        validate_params(g, m1, m2)
    }

    /// Opening angle `pi/g` of the orbit-space wedge.
    pub fn wedge_angle(&self) -> f64 {
        match self.g {
            1 => PI,
            2 => FRAC_PI_2,
            g => PI / g as f64,
        }
    }

    fn gf(&self) -> f64 {
        self.g as f64
    }

    fn check_open(&self, theta: f64) -> Result<()> {
        if theta.is_finite() && theta > 0.0 && theta < self.wedge_angle() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "theta = {theta} outside (0, {})",
                self.wedge_angle()
            )))
        }
    }

    /// Relative leaf volume `sin^m1(g theta/2) cos^m2(g theta/2)`.
    pub fn leaf_volume_profile(&self, theta: f64) -> Result<f64> {
        self.check_open(theta)?;
        Ok(self.volume_factor_unchecked(theta))
    }

    pub(crate) fn volume_factor_unchecked(&self, theta: f64) -> f64 {
        let (s, c) = angle::sin_cos(0.5 * self.gf() * theta);
        s.powi(self.m1 as i32) * c.powi(self.m2 as i32)
    }

    /// Mean curvature `h(theta) = (g/2)(m1 cot(g theta/2) - m2 tan(g theta/2))`
    /// of the leaf at distance `theta` from `M_+`.
    pub fn spherical_mean_curvature(&self, theta: f64) -> Result<f64> {
        self.check_open(theta)?;
        Ok(self.mean_curvature_unchecked(theta))
    }

    /// Same as [`spherical_mean_curvature`](Self::spherical_mean_curvature)
    /// without the domain check. Written as
    /// `(g/2)((m1-m2) + (m1+m2) cos(g theta)) / sin(g theta)` so the value at
    /// the cone angle of an equal-multiplicity foliation is exactly zero.
    pub(crate) fn mean_curvature_unchecked(&self, theta: f64) -> f64 {
        let g = self.gf();
        let (m1, m2) = (self.m1 as f64, self.m2 as f64);
        let (s, c) = angle::sin_cos(g * theta);
        0.5 * g * ((m1 - m2) + (m1 + m2) * c) / s
    }

    /// `dh/dtheta = -(g^2/4)(m1/sin^2(g theta/2) + m2/cos^2(g theta/2))`.
    pub fn mean_curvature_derivative(&self, theta: f64) -> Result<f64> {
        self.check_open(theta)?;
        let g = self.gf();
        let (s, c) = angle::sin_cos(0.5 * g * theta);
        Ok(-0.25 * g * g * (self.m1 as f64 / (s * s) + self.m2 as f64 / (c * c)))
    }

    /// The unique zero `theta_c = (2/g) arctan(sqrt(m1/m2))` of `h` in
    /// `(0, pi/g)`: the angle of the minimal cone.
    pub fn minimal_cone_angle(&self) -> Result<f64> {
        if self.m2 == 0 {
            return Err(Error::Domain("minimal cone needs m2 >= 1".into()));
        }
        if self.m1 == self.m2 {
            return Ok(FRAC_PI_2 / self.gf());
        }
        Ok(2.0 / self.gf() * (self.m1 as f64 / self.m2 as f64).sqrt().atan())
    }

    /// Mirror data `(m2, m1)`, which describes the same foliation seen from
    /// `M_-`: `h_(m1,m2)(theta) = -h_(m2,m1)(pi/g - theta)`.
    pub fn mirrored(&self) -> Self {
        Self {
            m1: self.m2,
            m2: self.m1,
            ..*self
        }
    }
}
