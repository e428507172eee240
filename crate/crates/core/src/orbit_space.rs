//! The orbit-space wedge `C(pi/g)` with conformal metric
//! `g_c = V^2 (dr^2 + r^2 dtheta^2)`, `V(r, theta) = r^{n-1} sin^m1(g theta/2) cos^m2(g theta/2)`.
//!
//! The length of a curve under `g_c` equals (up to the constant suppressed in
//! `V`) the volume of the hypersurface it generates, so minimal hypersurfaces
//! correspond to `g_c`-geodesics and a curve generating constant mean
//! curvature `h~` has `g_c`-curvature `h~ / V`.

use serde::{Deserialize, Serialize};

use crate::angle;
use crate::curve_flow::CurveState;
use crate::error::{Error, Result};
use crate::fd::fornberg_weights;
use crate::foliation::FoliationParams;
use crate::quadrature::simpson_nonuniform;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub r: f64,
    pub theta: f64,
}

impl OrbitPoint {
    pub fn new(r: f64, theta: f64) -> Self {
        Self { r, theta }
    }

    pub fn to_cartesian(self) -> (f64, f64) {
        let (s, c) = angle::sin_cos(self.theta);
        (self.r * c, self.r * s)
    }

    pub fn from_cartesian(x: f64, y: f64) -> Self {
        Self {
            r: x.hypot(y),
            theta: y.atan2(x),
        }
    }

    pub fn is_interior(self, p: &FoliationParams) -> bool {
        self.r.is_finite() && self.r > 0.0 && self.theta > 0.0 && self.theta < p.wedge_angle()
    }
}

/// Ordered samples of a curve in the wedge together with a strictly
/// increasing Euclidean arc-length parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    points: Vec<OrbitPoint>,
    s: Vec<f64>,
}

impl Polyline {
    pub fn new(points: Vec<OrbitPoint>, s: Vec<f64>) -> Result<Self> {
        if points.len() != s.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                got: s.len(),
            });
        }
        if points.is_empty() {
            return Err(Error::TooFewSamples { needed: 1, got: 0 });
        }
        for w in s.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Domain(format!(
                    "arc-length parameter not strictly increasing: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        for w in points.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Domain("consecutive polyline points coincide".into()));
            }
        }
        Ok(Self { points, s })
    }

    /// Parametrises by cumulative chord length. Exact for straight segments;
    /// second-order accurate for curved ones.
    pub fn from_points(points: Vec<OrbitPoint>) -> Result<Self> {
        let mut s = Vec::with_capacity(points.len());
        let mut acc = 0.0;
        for (i, p) in points.iter().enumerate() {
            if i > 0 {
                let (x0, y0) = points[i - 1].to_cartesian();
                let (x1, y1) = p.to_cartesian();
                acc += (x1 - x0).hypot(y1 - y0);
            }
            s.push(acc);
        }
        Self::new(points, s)
    }

    pub fn points(&self) -> &[OrbitPoint] {
        &self.points
    }

    pub fn arc_lengths(&self) -> &[f64] {
        &self.s
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let total = self.s.last().copied().unwrap_or(0.0);
        let points = self.points.iter().rev().copied().collect();
        let s = self.s.iter().rev().map(|s| total - s).collect();
        Self { points, s }
    }

    /// Sub-polyline of samples satisfying `keep`, restricted to the longest
    /// contiguous run.
    pub fn longest_run<F: Fn(&OrbitPoint) -> bool>(&self, keep: F) -> Option<Self> {
        let mut best: Option<(usize, usize)> = None;
        let mut start = None;
        for (i, p) in self.points.iter().enumerate() {
            match (keep(p), start) {
                (true, None) => start = Some(i),
                (false, Some(a)) => {
                    if best.is_none_or(|(b0, b1)| i - a > b1 - b0) {
                        best = Some((a, i));
                    }
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(a) = start {
            let i = self.points.len();
            if best.is_none_or(|(b0, b1)| i - a > b1 - b0) {
                best = Some((a, i));
            }
        }
        best.map(|(a, b)| Self {
            points: self.points[a..b].to_vec(),
            s: self.s[a..b].to_vec(),
        })
    }
}

fn check_interior(p: &FoliationParams, q: OrbitPoint) -> Result<()> {
    if q.is_interior(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "orbit point (r = {}, theta = {}) not interior to C(pi/{})",
            q.r, q.theta, p.g
        )))
    }
}

/// `V(r, theta) = r^{n-1} sin^m1(g theta/2) cos^m2(g theta/2)`.
///
/// On the walls `V` vanishes; that is reported as a domain error.
pub fn volume_density(p: &FoliationParams, q: OrbitPoint) -> Result<f64> {
    check_interior(p, q)?;
    Ok(q.r.powi(p.n as i32 - 1) * p.volume_factor_unchecked(q.theta))
}

/// `g_c`-length of a polyline, by composite Simpson in the arc-length
/// parameter of `integral V ds`.
pub fn curve_length_gc(p: &FoliationParams, c: &Polyline) -> Result<f64> {
    let density = c
        .points
        .iter()
        .map(|q| volume_density(p, *q))
        .collect::<Result<Vec<_>>>()?;
    Ok(simpson_nonuniform(&c.s, &density))
}

/// Signed geodesic curvature under `g_c` of a unit-speed (Euclidean) curve in
/// state `(r, theta, alpha)` with `d alpha/ds = alpha_rate`, measured against
/// the left normal:
///
/// `kappa_gc = (n cos(alpha)/r - h(theta) sin(alpha)/r - alpha') / V`.
pub fn curvature_gc(p: &FoliationParams, state: &CurveState, alpha_rate: f64) -> Result<f64> {
    let q = OrbitPoint::new(state.r, state.theta);
    let v = volume_density(p, q)?;
    let (sa, ca) = angle::sin_cos(state.alpha);
    let h = p.mean_curvature_unchecked(state.theta);
    let n = p.n as f64;
    Ok((n * ca / state.r - h * sa / state.r - alpha_rate) / v)
}

/// Angle between two tangent vectors at `q`, each given in the orthonormal
/// polar frame `(e_r, e_theta)`, measured with the conformal metric. Equal to
/// the Euclidean angle; kept separate so callers can assert conformality.
pub fn conformal_angle(p: &FoliationParams, q: OrbitPoint, a: [f64; 2], b: [f64; 2]) -> Result<f64> {
    let v2 = volume_density(p, q)?.powi(2);
    let dot = v2 * (a[0] * b[0] + a[1] * b[1]);
    let na = (v2 * (a[0] * a[0] + a[1] * a[1])).sqrt();
    let nb = (v2 * (b[0] * b[0] + b[1] * b[1])).sqrt();
    Ok((dot / (na * nb)).clamp(-1.0, 1.0).acos())
}

pub fn euclidean_angle(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dot = a[0] * b[0] + a[1] * b[1];
    let na = a[0].hypot(a[1]);
    let nb = b[0].hypot(b[1]);
    (dot / (na * nb)).clamp(-1.0, 1.0).acos()
}

/// Pointwise `|kappa_gc|` at interior samples, estimated from the polyline
/// alone by nine-point finite differences in the arc-length parameter
/// (five-point on polylines shorter than nine samples).
pub fn geodesic_curvatures(p: &FoliationParams, c: &Polyline) -> Result<Vec<f64>> {
    const NEEDED: usize = 5;
    const WIDE: usize = 4;
    if c.len() < NEEDED {
        return Err(Error::TooFewSamples {
            needed: NEEDED,
            got: c.len(),
        });
    }
    for q in &c.points {
        check_interior(p, *q)?;
    }
    let xy: Vec<(f64, f64)> = c.points.iter().map(|q| q.to_cartesian()).collect();
    let n = p.n as f64;
    let half = if c.len() > 2 * WIDE { WIDE } else { 2 };
    let mut out = Vec::with_capacity(c.len() - 2 * half);
    for i in half..c.len() - half {
        let w = fornberg_weights(c.s[i], &c.s[i - half..=i + half], 2);
        let d = |k: usize, f: &dyn Fn(&(f64, f64)) -> f64| -> f64 {
            (0..=2 * half).map(|j| w[k][j] * f(&xy[i - half + j])).sum()
        };
        let (x1, y1) = (d(1, &|p| p.0), d(1, &|p| p.1));
        let (x2, y2) = (d(2, &|p| p.0), d(2, &|p| p.1));
        let speed = x1.hypot(y1);
        let kappa_e = (x1 * y2 - y1 * x2) / speed.powi(3);
        // left unit normal and the gradient of log V in Cartesian components
        let (nx, ny) = (-y1 / speed, x1 / speed);
        let q = c.points[i];
        let (st, ct) = angle::sin_cos(q.theta);
        let h = p.mean_curvature_unchecked(q.theta);
        let grad_r = (n - 1.0) / q.r;
        let grad_t = h / q.r;
        let gx = grad_r * ct - grad_t * st;
        let gy = grad_r * st + grad_t * ct;
        let v = volume_density(p, q)?;
        out.push(((kappa_e - (nx * gx + ny * gy)) / v).abs());
    }
    Ok(out)
}

/// `max |kappa_gc|` over interior samples; close to zero certifies a
/// `g_c`-geodesic.
pub fn geodesic_residual(p: &FoliationParams, c: &Polyline) -> Result<f64> {
    Ok(geodesic_curvatures(p, c)?.into_iter().fold(0.0, f64::max))
}
