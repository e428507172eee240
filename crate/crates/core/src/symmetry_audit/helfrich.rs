//! Helfrich energy `int (H + c)^2` with its first variation and
//! Euler–Lagrange residual.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DVector;

use super::BoundaryData;
use crate::error::Result;
use crate::exec::Execution;
use crate::quadrature::{composite_gauss, periodic_trapezoid};
use crate::sampling;
use crate::shape::{self, curvature_from_frame, frame, tensor, Domain, ParamSurface, VectorField};

/// Gauss–Legendre order used on each panel of a non-periodic axis.
const GAUSS_ORDER: usize = 8;

/// Relative step for `Delta H`. `H` already carries second derivatives of
/// `X`, so a wider stencil keeps rounding noise near `1e-12`.
pub const LAPLACE_H_REL_STEP: f64 = 1e-2;

/// Tensor-product rule on a chart box: trapezoid on periodic axes,
/// composite Gauss–Legendre otherwise.
#[derive(Debug, Clone)]
pub struct ChartQuadrature {
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

fn axis_rule(lo: f64, hi: f64, periodic: bool, per_axis: usize) -> (Vec<f64>, Vec<f64>) {
    if periodic {
        periodic_trapezoid(lo, hi, per_axis)
    } else {
        composite_gauss(lo, hi, per_axis.div_ceil(GAUSS_ORDER).max(1), GAUSS_ORDER)
    }
}

impl ChartQuadrature {
    fn from_box(lo: &[f64], hi: &[f64], periodic: &[bool], per_axis: usize) -> Self {
        let rules: Vec<_> = (0..lo.len())
            .map(|i| axis_rule(lo[i], hi[i], periodic[i], per_axis))
            .collect();
        let nodes = tensor(&rules.iter().map(|r| r.0.clone()).collect::<Vec<_>>());
        let weights = tensor(&rules.iter().map(|r| r.1.clone()).collect::<Vec<_>>())
            .into_iter()
            .map(|w| w.iter().product())
            .collect();
        Self { nodes, weights }
    }

    /// About `per_axis` nodes along every chart axis.
    pub fn new(domain: &Domain, per_axis: usize) -> Self {
        Self::from_box(&domain.lo, &domain.hi, &domain.periodic, per_axis)
    }

    /// Rule on a boundary face; nodes are full chart points.
    pub fn face(b: &BoundaryData, per_axis: usize) -> Self {
        let (lo, hi, periodic) = b.face_box();
        let mut q = Self::from_box(lo, hi, periodic, per_axis);
        q.nodes = q.nodes.iter().map(|t| b.point(t)).collect();
        q
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

fn sum_ordered(v: Result<Vec<f64>>) -> Result<f64> {
    Ok(v?.iter().sum())
}

/// `int (H + c)^2 dSigma`.
pub fn helfrich_energy<S: ParamSurface + ?Sized>(
    s: &S,
    c: f64,
    quad: &ChartQuadrature,
    execution: Execution,
) -> Result<f64> {
    let idx: Vec<usize> = (0..quad.len()).collect();
    sum_ordered(
        execution
            .map_slice(&idx, |&k| {
                let f = frame(s, &quad.nodes[k])?;
                let h = curvature_from_frame(&f).mean_curvature();
                Ok(quad.weights[k] * (h + c).powi(2) * f.area_element())
            })
            .into_iter()
            .collect(),
    )
}

fn mean_field<S: ParamSurface + ?Sized>(s: &S) -> impl Fn(&[f64]) -> f64 + Sync + '_ {
    move |v: &[f64]| shape::mean_curvature(s, v).unwrap_or(f64::NAN)
}

/// `Delta H + (H + c)(|A|^2 - (n^2/2)(H + c) H)`.
pub fn helfrich_el_residual<S: ParamSurface + ?Sized>(s: &S, c: f64, u: &[f64]) -> Result<f64> {
    let f = frame(s, u)?;
    let cd = curvature_from_frame(&f);
    Ok(el_with(s, c, &f, &cd))
}

fn el_with<S: ParamSurface + ?Sized>(s: &S, c: f64, f: &shape::Frame, cd: &shape::CurvatureData) -> f64 {
    let n = f.dim() as f64;
    let h = cd.mean_curvature();
    let lap = shape::l_r_with(s, &mean_field(s), f, cd, 0, LAPLACE_H_REL_STEP);
    lap + (h + c) * (cd.norm_a2 - 0.5 * n * n * (h + c) * h)
}

/// First variation of the Helfrich energy along the ambient field `w`:
///
/// `-(2/n) int EL * Phi dSigma`
/// `+ sum over faces of int (H + c)^2 <w, conormal> + (2/n)(Phi d_co H - (H + c) d_co Phi) ds`
///
/// with `Phi = <w, nu>`. Closed charts pass no faces.
pub fn helfrich_first_variation<S: ParamSurface + ?Sized>(
    s: &S,
    c: f64,
    w: &(dyn Fn(&[f64]) -> DVector<f64> + Sync),
    faces: &[BoundaryData],
    per_axis: usize,
    execution: Execution,
) -> Result<f64> {
    let n = s.dim() as f64;
    let quad = ChartQuadrature::new(s.domain(), per_axis);
    let idx: Vec<usize> = (0..quad.len()).collect();
    let interior = sum_ordered(
        execution
            .map_slice(&idx, |&k| {
                let f = frame(s, &quad.nodes[k])?;
                let cd = curvature_from_frame(&f);
                let phi = w(&quad.nodes[k]).dot(&f.normal);
                Ok(quad.weights[k] * el_with(s, c, &f, &cd) * phi * f.area_element())
            })
            .into_iter()
            .collect(),
    )?;
    let mut total = -2.0 / n * interior;
    let h_field = mean_field(s);
    let phi_field = |v: &[f64]| match frame(s, v) {
        Ok(f) => w(v).dot(&f.normal),
        Err(_) => f64::NAN,
    };
    for b in faces {
        let fq = ChartQuadrature::face(b, per_axis);
        let idx: Vec<usize> = (0..fq.len()).collect();
        total += sum_ordered(
            execution
                .map_slice(&idx, |&k| {
                    let u = &fq.nodes[k];
                    let f = frame(s, u)?;
                    let h = curvature_from_frame(&f).mean_curvature();
                    let co = b.conormal(&f);
                    let wv = w(u);
                    let phi = wv.dot(&f.normal);
                    let dh = b.conormal_derivative(s, &f, &h_field);
                    let dphi = b.conormal_derivative(s, &f, &phi_field);
                    let integrand = (h + c).powi(2) * wv.dot(&co) + 2.0 / n * (phi * dh - (h + c) * dphi);
                    Ok(fq.weights[k] * integrand * b.line_element(&f))
                })
                .into_iter()
                .collect(),
        )?;
    }
    Ok(total)
}

/// EL residual below `tol` on an interior grid, and `H = -c`,
/// `d_co H = 0` on every face.
pub fn is_helfrich_type<S: ParamSurface + ?Sized>(s: &S, faces: &[BoundaryData], c: f64, tol: f64) -> Result<bool> {
    for u in s.domain().grid(9, 0.05) {
        if !(helfrich_el_residual(s, c, &u)?.abs() <= tol) {
            return Ok(false);
        }
    }
    let h_field = mean_field(s);
    for b in faces {
        for u in b.samples(32) {
            let f = frame(s, &u)?;
            let h = curvature_from_frame(&f).mean_curvature();
            if !((h + c).abs() <= tol && b.conormal_derivative(s, &f, &h_field).abs() <= tol) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Seeded smooth ambient field: each component is a sum of low-frequency
/// cosines of the chart coordinates rescaled to `[0, 2 pi]`, so it is
/// periodic on periodic axes.
pub fn smooth_random_field(seed: u64, domain: &Domain, ambient_dim: usize, max_freq: usize) -> VectorField {
    let n = domain.dim();
    let freqs: Vec<Vec<f64>> = tensor(&vec![(0..=max_freq).map(|k| k as f64).collect::<Vec<_>>(); n]);
    let coeffs = sampling::gaussian_vectors(seed, ambient_dim * freqs.len(), 2);
    let lo = domain.lo.clone();
    let scale = domain.scale();
    let decay: Vec<f64> = freqs
        .iter()
        .map(|f| 1.0 / (1.0 + f.iter().map(|x| x * x).sum::<f64>()))
        .collect();
    Arc::new(move |u: &[f64]| {
        let x: Vec<f64> = (0..n).map(|i| 2.0 * PI * (u[i] - lo[i]) / scale[i]).collect();
        DVector::from_fn(ambient_dim, |a, _| {
            freqs
                .iter()
                .enumerate()
                .map(|(m, f)| {
                    let phase: f64 = f.iter().zip(&x).map(|(k, v)| k * v).sum();
                    let c = &coeffs[a * freqs.len() + m];
                    decay[m] * (c[0] * phase.cos() + c[1] * phase.sin())
                })
                .sum()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_flow::ConormalOrientation;
    use crate::shape::{Deformed, Revolution, Sphere};
    use crate::symmetry_audit::Face;

    #[test]
    fn unit_sphere_energy() {
        let s = Sphere::new(2, 1.0);
        let q = ChartQuadrature::new(s.domain(), 24);
        let e = helfrich_energy(&s, 0.0, &q, Execution::Sequential).unwrap();
        assert!((e - 4.0 * PI).abs() < 1e-10, "{e}");
        // quadratic in c: E(c) = (1 + c)^2 * 4 pi
        let e2 = helfrich_energy(&s, 0.5, &q, Execution::Sequential).unwrap();
        assert!((e2 - 2.25 * 4.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn willmore_spheres_are_critical() {
        for n in 2..=4 {
            let rho = 1.7;
            let s = Sphere::new(n, rho);
            let c = (2.0 / n as f64 - 1.0) / rho;
            for u in s.domain().sample(1, 5, 0.1) {
                assert!(helfrich_el_residual(&s, c, &u).unwrap().abs() < 1e-8);
                assert!(helfrich_el_residual(&s, c + 0.3, &u).unwrap().abs() > 1e-3);
            }
        }
    }

    #[test]
    fn cmc_with_matching_c_is_trivial() {
        let cyl = Revolution::cylinder(2, 0.5, 1.0);
        let c = -1.0;
        let q = ChartQuadrature::new(cyl.domain(), 16);
        assert!(helfrich_energy(&cyl, c, &q, Execution::Sequential).unwrap().abs() < 1e-10);
        for u in cyl.domain().sample(3, 5, 0.1) {
            assert!(helfrich_el_residual(&cyl, c, &u).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn first_variation_matches_energy_difference_on_torus() {
        let t = Revolution::torus(2, 2.0, 0.7);
        let w = smooth_random_field(7, t.domain(), 3, 2);
        let c = 0.3;
        let per = 48;
        let q = ChartQuadrature::new(t.domain(), per);
        let formula = helfrich_first_variation(&t, c, &*w, &[], per, Execution::default()).unwrap();
        let dt = 1e-4;
        let ep = helfrich_energy(&Deformed::new(&t, w.clone(), dt), c, &q, Execution::default()).unwrap();
        let em = helfrich_energy(&Deformed::new(&t, w.clone(), -dt), c, &q, Execution::default()).unwrap();
        let fdv = (ep - em) / (2.0 * dt);
        assert!(
            (formula - fdv).abs() / formula.abs().max(1.0) < 1e-3,
            "{formula} vs {fdv}"
        );
    }

    #[test]
    fn compactly_supported_tangent_variation_vanishes() {
        let disk = Revolution::disk(2, 1.0, 0.0);
        let b = BoundaryData::new(&disk, 0, Face::Upper, 1.0, ConormalOrientation::Positive).unwrap();
        let w = |u: &[f64]| {
            let s = u[0];
            let bump = if s < 0.8 { (s * (0.8 - s)).powi(3) } else { 0.0 };
            DVector::from_vec(vec![bump * u[1].cos(), bump * (2.0 * u[1]).sin(), 0.0])
        };
        let v = helfrich_first_variation(&disk, 0.2, &w, &[b], 16, Execution::Sequential).unwrap();
        assert!(v.abs() < 1e-8);
    }

    #[test]
    fn helfrich_type_cap() {
        let cap = Revolution::cap_on_sphere(2, 0.8, 1.0, 1.0);
        let b = BoundaryData::new(&cap, 0, Face::Upper, 1.0, ConormalOrientation::Positive).unwrap();
        assert!(is_helfrich_type(&cap, std::slice::from_ref(&b), -1.25, 1e-8).unwrap());
        assert!(!is_helfrich_type(&cap, &[b], 0.0, 1e-8).unwrap());
    }
}
