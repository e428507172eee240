//! Boundary faces on a sphere `S^n(R)`, contact angles and Cauchy data.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{check_generator, normal_component, SkewGenerator};
use crate::angle;
use crate::curve_flow::ConormalOrientation;
use crate::error::{Error, Result};
use crate::fd;
use crate::report::{AuditEntry, AuditReport};
use crate::shape::{frame, tensor, Frame, ParamSurface, FD_REL_STEP};

/// Rows of the contact-angle definition must agree to this.
pub const FRAME_TOL: f64 = 1e-8;
/// Boundary points must lie on the sphere to this.
pub const SPHERE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Face {
    Lower,
    Upper,
}

/// The chart face `u[axis] = lo` or `hi`, lying on the sphere of radius
/// `radius` about the origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryData {
    pub axis: usize,
    pub face: Face,
    pub radius: f64,
    pub orientation: ConormalOrientation,
    value: f64,
    /// Chart boxes of the remaining coordinates.
    face_lo: Vec<f64>,
    face_hi: Vec<f64>,
    face_periodic: Vec<bool>,
}

impl BoundaryData {
    pub fn new<S: ParamSurface + ?Sized>(
        s: &S,
        axis: usize,
        face: Face,
        radius: f64,
        orientation: ConormalOrientation,
    ) -> Result<Self> {
        let d = s.domain();
        if axis >= d.dim() {
            return Err(Error::Index(format!("axis {axis} in a {}-dimensional chart", d.dim())));
        }
        if d.periodic[axis] {
            return Err(Error::Domain(format!("axis {axis} is periodic and has no face")));
        }
        if !(radius > 0.0) {
            return Err(Error::Domain(format!("sphere radius {radius} must be positive")));
        }
        let keep = |v: &Vec<f64>| -> Vec<f64> {
            v.iter()
                .enumerate()
                .filter(|(i, _)| *i != axis)
                .map(|(_, x)| *x)
                .collect()
        };
        let b = Self {
            axis,
            face,
            radius,
            orientation,
            value: if face == Face::Lower { d.lo[axis] } else { d.hi[axis] },
            face_lo: keep(&d.lo),
            face_hi: keep(&d.hi),
            face_periodic: d
                .periodic
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != axis)
                .map(|(_, p)| *p)
                .collect(),
        };
        for u in b.samples(64) {
            let off = (s.position(&u).norm() - radius).abs();
            if off > SPHERE_TOL {
                return Err(Error::Domain(format!(
                    "boundary point {u:?} is {off:e} off the sphere of radius {radius}"
                )));
            }
        }
        Ok(b)
    }

    pub fn face_dim(&self) -> usize {
        self.face_lo.len()
    }

    /// Chart point of the face coordinates `t`.
    pub fn point(&self, t: &[f64]) -> Vec<f64> {
        let mut u = t.to_vec();
        u.insert(self.axis, self.value);
        u
    }

    /// `+1` when the surface lies at larger `u[axis]` than the face.
    pub fn interior_sign(&self) -> f64 {
        match self.face {
            Face::Lower => 1.0,
            Face::Upper => -1.0,
        }
    }

    /// About `n_samples` chart points on the face (a tensor grid).
    pub fn samples(&self, n_samples: usize) -> Vec<Vec<f64>> {
        let k = self.face_dim();
        if k == 0 {
            return vec![self.point(&[])];
        }
        let per = ((n_samples.max(1) as f64).powf(1.0 / k as f64).ceil() as usize).max(1);
        let axes: Vec<Vec<f64>> = (0..k)
            .map(|i| {
                (0..per)
                    .map(|j| {
                        let t = if self.face_periodic[i] {
                            j as f64 / per as f64
                        } else {
                            (j as f64 + 0.5) / per as f64
                        };
                        self.face_lo[i] + t * (self.face_hi[i] - self.face_lo[i])
                    })
                    .collect()
            })
            .collect();
        tensor(&axes).iter().map(|t| self.point(t)).collect()
    }

    pub(crate) fn face_box(&self) -> (&[f64], &[f64], &[bool]) {
        (&self.face_lo, &self.face_hi, &self.face_periodic)
    }

    fn face_columns(&self, f: &Frame) -> DMatrix<f64> {
        let n = f.dim();
        let cols: Vec<DVector<f64>> = (0..n)
            .filter(|i| *i != self.axis)
            .map(|i| f.jacobian.column(i).into_owned())
            .collect();
        if cols.is_empty() {
            DMatrix::zeros(n + 1, 0)
        } else {
            DMatrix::from_columns(&cols)
        }
    }

    /// Outward unit conormal of the face in the surface.
    pub fn conormal(&self, f: &Frame) -> DVector<f64> {
        let t = self.face_columns(f);
        let mut v = f.jacobian.column(self.axis).into_owned();
        if t.ncols() > 0 {
            let coeff = (t.transpose() * &t)
                .cholesky()
                .expect("face tangents independent")
                .solve(&(t.transpose() * &v));
            v -= &t * coeff;
        }
        v.normalize() * -self.interior_sign()
    }

    /// Boundary measure `sqrt(det(T^T T))` of the face at `f`.
    pub fn line_element(&self, f: &Frame) -> f64 {
        let t = self.face_columns(f);
        if t.ncols() == 0 {
            return 1.0;
        }
        (t.transpose() * &t).determinant().max(0.0).sqrt()
    }

    /// Derivative of `field` along the outward conormal, by a one-sided
    /// four-point stencil into the interior.
    pub fn conormal_derivative<S: ParamSurface + ?Sized>(
        &self,
        s: &S,
        f: &Frame,
        field: &dyn Fn(&[f64]) -> f64,
    ) -> f64 {
        let nu_out = self.conormal(f);
        let w = f.pull_back(&-nu_out);
        let h = FD_REL_STEP * s.domain().scale()[self.axis] / w[self.axis].abs();
        let at = |k: f64| {
            let v: Vec<f64> = f.u.iter().zip(w.iter()).map(|(a, b)| a + k * h * b).collect();
            field(&v)
        };
        fd::one_sided_backward(at(0.0), at(1.0), at(2.0), at(3.0), h)
    }
}

/// Frames entering the contact angle at one boundary point.
#[derive(Debug, Clone, Serialize)]
pub struct ContactFrame {
    pub theta: f64,
    pub x_hat: Vec<f64>,
    pub n_sphere: Vec<f64>,
    pub nu: Vec<f64>,
    pub conormal: Vec<f64>,
    /// Disagreement of the two defining rows.
    pub row_residual: f64,
}

/// Solves `nu = cos(theta) X/R + sin(theta) N` and
/// `conormal = -sin(theta) X/R + cos(theta) N`.
///
/// `N` is the unit normal of the boundary inside the sphere. With positive
/// orientation it points along the part of the outward conormal orthogonal
/// to `X`; when that part vanishes (the surface meets the sphere
/// orthogonally) it is `-sign(<conormal, X>) nu`. Negative orientation
/// reverses `N`.
pub fn contact_frame<S: ParamSurface + ?Sized>(b: &BoundaryData, s: &S, t: &[f64]) -> Result<ContactFrame> {
    if t.len() != b.face_dim() {
        return Err(Error::DimensionMismatch {
            expected: b.face_dim(),
            got: t.len(),
        });
    }
    let u = b.point(t);
    let f = frame(s, &u)?;
    let off = (f.position.norm() - b.radius).abs();
    if off > SPHERE_TOL {
        return Err(Error::Domain(format!("boundary point is {off:e} off the sphere")));
    }
    let x_hat = &f.position / b.radius;
    let co = b.conormal(&f);
    let nu = &f.normal;
    let perp = |v: &DVector<f64>| v - &x_hat * v.dot(&x_hat);
    let cp = perp(&co);
    let n_ref = if cp.norm() > 1e-6 {
        cp.normalize()
    } else {
        perp(nu).normalize() * -co.dot(&x_hat).signum()
    };
    let n_sphere = n_ref
        * match b.orientation {
            ConormalOrientation::Positive => 1.0,
            ConormalOrientation::Negative => -1.0,
        };
    let theta1 = angle::normalize(nu.dot(&n_sphere).atan2(nu.dot(&x_hat)));
    let theta2 = (-co.dot(&x_hat)).atan2(co.dot(&n_sphere));
    let row_residual = angle::normalize(theta1 - theta2).abs();
    if !(row_residual <= FRAME_TOL) {
        return Err(Error::FrameInconsistent { residual: row_residual });
    }
    let v = |x: &DVector<f64>| x.iter().copied().collect::<Vec<f64>>();
    Ok(ContactFrame {
        theta: theta1,
        x_hat: v(&x_hat),
        n_sphere: v(&n_sphere),
        nu: v(nu),
        conormal: v(&co),
        row_residual,
    })
}

/// Contact angle in `(-pi, pi]` at face coordinates `t`.
pub fn contact_angle<S: ParamSurface + ?Sized>(b: &BoundaryData, s: &S, t: &[f64]) -> Result<f64> {
    Ok(contact_frame(b, s, t)?.theta)
}

fn face_coords(b: &BoundaryData, u: &[f64]) -> Vec<f64> {
    u.iter()
        .enumerate()
        .filter(|(i, _)| *i != b.axis)
        .map(|(_, x)| *x)
        .collect()
}

/// Rate of change of the contact angle along the boundary in the direction
/// of the tangential part of `phi X`.
fn orbit_derivative<S: ParamSurface + ?Sized>(b: &BoundaryData, s: &S, phi: &SkewGenerator, f: &Frame) -> Result<f64> {
    let t = b.face_columns(f);
    if t.ncols() == 0 {
        return Ok(0.0);
    }
    let field = phi.apply(&f.position);
    let w = (t.transpose() * &t)
        .cholesky()
        .expect("face tangents independent")
        .solve(&(t.transpose() * field));
    if w.amax() == 0.0 {
        return Ok(0.0);
    }
    let eps = 1e-4 / w.amax();
    let t0 = face_coords(b, &f.u);
    let shift = |k: f64| -> Vec<f64> { t0.iter().zip(w.iter()).map(|(a, d)| a + k * eps * d).collect() };
    let plus = contact_angle(b, s, &shift(1.0))?;
    let minus = contact_angle(b, s, &shift(-1.0))?;
    Ok(angle::normalize(plus - minus) / (2.0 * eps))
}

/// `max |Phi|` and `max |d_conormal Phi|` over boundary samples, together
/// with the variation of the contact angle along the orbits of `phi`.
pub fn boundary_cauchy_check<S: ParamSurface + ?Sized>(
    s: &S,
    b: &BoundaryData,
    phi: &SkewGenerator,
    n_samples: usize,
    tol: f64,
) -> Result<AuditReport> {
    check_generator(s, phi)?;
    let field = |v: &[f64]| normal_component(s, phi, v).unwrap_or(f64::NAN);
    let mut values = Vec::new();
    let mut normal = Vec::new();
    let mut orbit = Vec::new();
    for u in b.samples(n_samples) {
        let f = frame(s, &u)?;
        contact_angle(b, s, &face_coords(b, &u))?;
        values.push(phi.apply(&f.position).dot(&f.normal));
        normal.push(b.conormal_derivative(s, &f, &field));
        orbit.push(orbit_derivative(b, s, phi, &f)?);
    }
    let mut report = AuditReport::new(format!("boundary Cauchy data on {}", s.label()));
    report.push(AuditEntry::from_residuals("phi", &values, tol));
    report.push(AuditEntry::from_residuals("conormal_derivative_phi", &normal, tol));
    report.push(AuditEntry::from_residuals("contact_angle_orbit_variation", &orbit, tol));
    Ok(report)
}
