//! Chart-based curvature of hypersurfaces `X: U -> R^{n+1}`.
//!
//! Sign convention throughout: `h_ij = -<d_i d_j X, nu>`, so a round sphere
//! with outward normal has every principal curvature positive and `H = 1/rho`.
//! `H` is the normalised mean curvature `S_1 / n`.

mod surfaces;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fd;
use crate::sampling;

pub use surfaces::{
    unit_sphere_chart, Deformed, Ellipsoid, Flipped, Graph, Plane, Revolution, Rigid, Sphere, VectorField,
};

/// Scalar function on a chart.
pub type ScalarField<'a> = &'a (dyn Fn(&[f64]) -> f64 + Sync);

/// Relative step of the chart finite differences.
pub const FD_REL_STEP: f64 = 1e-3;

/// Coordinate box of a chart; periodic axes wrap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Domain {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub periodic: Vec<bool>,
}

impl Domain {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, periodic: Vec<bool>) -> Self {
        assert!(lo.len() == hi.len() && lo.len() == periodic.len());
        Self { lo, hi, periodic }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn scale(&self) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).collect()
    }

    /// Box with every non-periodic side pulled in by `margin` of its length.
    pub fn inset(&self, margin: f64) -> (Vec<f64>, Vec<f64>) {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        for i in 0..self.dim() {
            if !self.periodic[i] {
                let d = margin * (self.hi[i] - self.lo[i]);
                lo[i] += d;
                hi[i] -= d;
            }
        }
        (lo, hi)
    }

    /// Seeded uniform samples of the inset box.
    pub fn sample(&self, seed: u64, n: usize, margin: f64) -> Vec<Vec<f64>> {
        let (lo, hi) = self.inset(margin);
        sampling::uniform_points(seed, n, &lo, &hi)
    }

    /// Tensor grid with `per_axis` nodes per axis (cell centres on periodic
    /// axes, endpoints of the inset box otherwise).
    pub fn grid(&self, per_axis: usize, margin: f64) -> Vec<Vec<f64>> {
        let (lo, hi) = self.inset(margin);
        let axes: Vec<Vec<f64>> = (0..self.dim())
            .map(|i| {
                (0..per_axis)
                    .map(|k| {
                        let t = if self.periodic[i] {
                            k as f64 / per_axis as f64
                        } else if per_axis == 1 {
                            0.5
                        } else {
                            k as f64 / (per_axis - 1) as f64
                        };
                        lo[i] + t * (hi[i] - lo[i])
                    })
                    .collect()
            })
            .collect();
        tensor(&axes)
    }
}

/// All points of the tensor product of `axes`, first axis slowest.
pub(crate) fn tensor(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(*v);
                    q
                })
            })
            .collect();
    }
    out
}

/// A parametrised hypersurface.
///
/// `nu` is `orientation()` times the normalised cofactor vector of
/// `d_1 X, ..., d_n X` (for `n = 2` the cross product `d_1 X x d_2 X`).
pub trait ParamSurface: Send + Sync {
    fn dim(&self) -> usize;
    fn domain(&self) -> &Domain;
    fn position(&self, u: &[f64]) -> DVector<f64>;

    /// Analytic `(d_i X as columns, d_i d_j X at i*n + j)`; `None` falls back
    /// to central differences.
    fn partials(&self, _u: &[f64]) -> Option<(DMatrix<f64>, Vec<DVector<f64>>)> {
        None
    }

    fn orientation(&self) -> f64 {
        1.0
    }

    fn label(&self) -> String;
}

impl<S: ParamSurface + ?Sized> ParamSurface for &S {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn domain(&self) -> &Domain {
        (**self).domain()
    }
    fn position(&self, u: &[f64]) -> DVector<f64> {
        (**self).position(u)
    }
    fn partials(&self, u: &[f64]) -> Option<(DMatrix<f64>, Vec<DVector<f64>>)> {
        (**self).partials(u)
    }
    fn orientation(&self) -> f64 {
        (**self).orientation()
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

impl<S: ParamSurface + ?Sized> ParamSurface for std::sync::Arc<S> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn domain(&self) -> &Domain {
        (**self).domain()
    }
    fn position(&self, u: &[f64]) -> DVector<f64> {
        (**self).position(u)
    }
    fn partials(&self, u: &[f64]) -> Option<(DMatrix<f64>, Vec<DVector<f64>>)> {
        (**self).partials(u)
    }
    fn orientation(&self) -> f64 {
        (**self).orientation()
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

/// Central-difference partials with per-axis steps `FD_REL_STEP * scale`.
pub fn fd_partials<S: ParamSurface + ?Sized>(s: &S, u: &[f64]) -> (DMatrix<f64>, Vec<DVector<f64>>) {
    let scale = s.domain().scale();
    let n = u.len();
    let x = |v: &[f64]| {
        let w: Vec<f64> = (0..n).map(|i| u[i] + scale[i] * v[i]).collect();
        s.position(&w)
    };
    let (mut jac, mut second) = fd::vector_partials(x, &vec![0.0; n], 0.1 * FD_REL_STEP);
    for i in 0..n {
        jac.column_mut(i).unscale_mut(scale[i]);
        for j in 0..n {
            second[i * n + j] /= scale[i] * scale[j];
        }
    }
    (jac, second)
}

/// Cofactor normal `nu_i = (-1)^i det(J without row i)`, not normalised.
pub fn cofactor_normal(jac: &DMatrix<f64>) -> DVector<f64> {
    let m = jac.nrows();
    DVector::from_fn(m, |i, _| {
        let minor = jac.clone().remove_row(i);
        let d = minor.determinant();
        if i % 2 == 0 {
            d
        } else {
            -d
        }
    })
}

/// `+1` or `-1` so that the cofactor normal of `s` at `u` has a
/// non-negative component along `toward`.
pub fn orientation_toward<S: ParamSurface + ?Sized>(s: &S, u: &[f64], toward: &DVector<f64>) -> f64 {
    let (jac, _) = s.partials(u).unwrap_or_else(|| fd_partials(s, u));
    if cofactor_normal(&jac).dot(toward) >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Position, partials, unit normal and both fundamental forms at a point.
#[derive(Debug, Clone)]
pub struct Frame {
    pub u: Vec<f64>,
    pub position: DVector<f64>,
    pub jacobian: DMatrix<f64>,
    pub second: Vec<DVector<f64>>,
    pub normal: DVector<f64>,
    pub metric: DMatrix<f64>,
    pub second_form: DMatrix<f64>,
    /// Lower Cholesky factor of the metric.
    chol: DMatrix<f64>,
}

impl Frame {
    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn area_element(&self) -> f64 {
        self.chol.diagonal().product()
    }

    pub fn metric_inverse(&self) -> DMatrix<f64> {
        let li = self.chol.clone().try_inverse().expect("cholesky factor is invertible");
        li.transpose() * li
    }

    /// Chart vector `w` with `J w` the tangential projection of `v`.
    pub fn pull_back(&self, v: &DVector<f64>) -> DVector<f64> {
        self.metric_inverse() * (self.jacobian.transpose() * v)
    }
}

pub fn frame<S: ParamSurface + ?Sized>(s: &S, u: &[f64]) -> Result<Frame> {
    let n = s.dim();
    if u.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.len(),
        });
    }
    let position = s.position(u);
    if position.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: position.len(),
        });
    }
    let (jacobian, second) = s.partials(u).unwrap_or_else(|| fd_partials(s, u));
    let metric = jacobian.transpose() * &jacobian;
    let degenerate = || Error::DegenerateMetric {
        det: metric.determinant(),
        at: u.to_vec(),
    };
    let chol = metric.clone().cholesky().ok_or_else(degenerate)?.l();
    let size = metric.diagonal().max().sqrt();
    if chol.diagonal().min() <= 1e-9 * size {
        return Err(degenerate());
    }
    let raw = cofactor_normal(&jacobian);
    let normal = raw.normalize() * s.orientation();
    let second_form = DMatrix::from_fn(n, n, |i, j| -second[i * n + j].dot(&normal));
    Ok(Frame {
        u: u.to_vec(),
        position,
        jacobian,
        second,
        normal,
        metric,
        second_form,
        chol,
    })
}

/// `(g_ij, h_ij, nu)` at `u`.
pub fn fundamental_forms<S: ParamSurface + ?Sized>(
    s: &S,
    u: &[f64],
) -> Result<(DMatrix<f64>, DMatrix<f64>, DVector<f64>)> {
    let f = frame(s, u)?;
    Ok((f.metric, f.second_form, f.normal))
}

/// `S_0, ..., S_n` of the given numbers.
pub fn elementary_symmetric(kappa: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; kappa.len() + 1];
    e[0] = 1.0;
    for (k, x) in kappa.iter().enumerate() {
        for r in (1..=k + 1).rev() {
            e[r] += x * e[r - 1];
        }
    }
    e
}

pub fn binomial(n: usize, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Diagonal of `T^r` in the principal frame:
/// `t^0 = 1`, `t^r_i = S_r - kappa_i t^{r-1}_i`.
pub fn newton_diagonal(kappa: &[f64], r: usize) -> Vec<f64> {
    let s = elementary_symmetric(kappa);
    let mut t = vec![1.0; kappa.len()];
    for k in 1..=r.min(kappa.len()) {
        for (ti, ki) in t.iter_mut().zip(kappa) {
            *ti = s[k] - ki * *ti;
        }
    }
    if r > kappa.len() {
        t.iter_mut().for_each(|v| *v = 0.0);
    }
    t
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureData {
    pub u: Vec<f64>,
    pub metric: Vec<Vec<f64>>,
    pub second_form: Vec<Vec<f64>>,
    pub normal: Vec<f64>,
    /// Ascending principal curvatures.
    pub kappa: Vec<f64>,
    /// `S_0, ..., S_n`.
    pub s: Vec<f64>,
    /// `H_0, ..., H_n` with `H_r = S_r / C(n, r)`.
    pub h: Vec<f64>,
    /// `|A|^2`.
    pub norm_a2: f64,
    /// Columns are `g`-orthonormal principal directions in chart coordinates.
    #[serde(skip)]
    pub principal_frame: DMatrix<f64>,
}

impl CurvatureData {
    pub fn dim(&self) -> usize {
        self.kappa.len()
    }

    pub fn mean_curvature(&self) -> f64 {
        self.h[1]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("finite curvature data")
    }
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

pub fn curvature_from_frame(f: &Frame) -> CurvatureData {
    let n = f.dim();
    let li = f.chol.clone().try_inverse().expect("cholesky factor is invertible");
    let sym = &li * &f.second_form * li.transpose();
    let sym = (&sym + sym.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let kappa: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let q = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    let principal_frame = li.transpose() * q;
    let s = elementary_symmetric(&kappa);
    let h = s.iter().enumerate().map(|(r, v)| v / binomial(n, r)).collect();
    CurvatureData {
        u: f.u.clone(),
        metric: rows(&f.metric),
        second_form: rows(&f.second_form),
        normal: f.normal.iter().copied().collect(),
        norm_a2: kappa.iter().map(|k| k * k).sum(),
        kappa,
        s,
        h,
        principal_frame,
    }
}

pub fn curvature_data<S: ParamSurface + ?Sized>(s: &S, u: &[f64]) -> Result<CurvatureData> {
    Ok(curvature_from_frame(&frame(s, u)?))
}

/// `H = S_1 / n` at `u`.
pub fn mean_curvature<S: ParamSurface + ?Sized>(s: &S, u: &[f64]) -> Result<f64> {
    Ok(curvature_data(s, u)?.mean_curvature())
}

/// `T^r` in the principal frame (diagonal).
pub fn newton_transform<S: ParamSurface + ?Sized>(s: &S, u: &[f64], r: usize) -> Result<DMatrix<f64>> {
    let n = s.dim();
    if r > n {
        return Err(Error::Index(format!("r = {r} exceeds n = {n}")));
    }
    let c = curvature_data(s, u)?;
    Ok(DMatrix::from_diagonal(&DVector::from_vec(newton_diagonal(&c.kappa, r))))
}

/// Chart gradient and covariant Hessian `f_{;ij} = f_ij - <d_i d_j X, J g^{-1} grad f>`
/// by fourth-order differences with steps `rel_step * scale`.
pub fn covariant_hessian<S: ParamSurface + ?Sized>(
    s: &S,
    f: ScalarField,
    fr: &Frame,
    rel_step: f64,
) -> (DVector<f64>, DMatrix<f64>) {
    let n = fr.dim();
    let u = &fr.u;
    let scale = s.domain().scale();
    let g = |v: &[f64]| {
        let w: Vec<f64> = (0..n).map(|i| u[i] + scale[i] * v[i]).collect();
        f(&w)
    };
    let (mut grad, mut hess) = fd::gradient_hessian(g, &vec![0.0; n], rel_step);
    for i in 0..n {
        grad[i] /= scale[i];
        for j in 0..n {
            hess[(i, j)] /= scale[i] * scale[j];
        }
    }
    let ambient = &fr.jacobian * (fr.metric_inverse() * &grad);
    for i in 0..n {
        for j in 0..n {
            hess[(i, j)] -= fr.second[i * n + j].dot(&ambient);
        }
    }
    (grad, hess)
}

/// `L_r f = tr(T^r Hess f)`; `L_0` is the Laplace–Beltrami operator.
pub fn l_r_apply<S: ParamSurface + ?Sized>(s: &S, f: ScalarField, u: &[f64], r: usize) -> Result<f64> {
    let n = s.dim();
    if r > n {
        return Err(Error::Index(format!("r = {r} exceeds n = {n}")));
    }
    let fr = frame(s, u)?;
    let c = curvature_from_frame(&fr);
    Ok(l_r_with(s, f, &fr, &c, r, FD_REL_STEP))
}

pub(crate) fn l_r_with<S: ParamSurface + ?Sized>(
    s: &S,
    f: ScalarField,
    fr: &Frame,
    c: &CurvatureData,
    r: usize,
    rel_step: f64,
) -> f64 {
    let (_, hess) = covariant_hessian(s, f, fr, rel_step);
    let e = &c.principal_frame;
    let he = e.transpose() * hess * e;
    newton_diagonal(&c.kappa, r)
        .iter()
        .enumerate()
        .map(|(i, t)| t * he[(i, i)])
        .sum()
}

/// Residual of the Minkowski-type identity for the fixed vector `a`.
///
/// Since `<X, a>_{;ij} = -h_ij <nu, a>` here, the identity reads
/// `L_{r-1} <X, a> = -r S_r <nu, a>`; the residual is
/// `L_{r-1} <X, a> + r S_r <nu, a>`. With the opposite sign of `h` it takes the
/// form `L_{r-1} <X, a> = r S_r <nu, a>`; the choice of `nu` does not matter.
pub fn minkowski_residual<S: ParamSurface + ?Sized>(s: &S, u: &[f64], r: usize, a: &[f64]) -> Result<f64> {
    let n = s.dim();
    if r == 0 || r > n {
        return Err(Error::Index(format!("r = {r} outside 1..={n}")));
    }
    if a.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: a.len(),
        });
    }
    let av = DVector::from_column_slice(a);
    let fr = frame(s, u)?;
    let c = curvature_from_frame(&fr);
    let support = |v: &[f64]| s.position(v).dot(&av);
    let lhs = l_r_with(s, &support, &fr, &c, r - 1, FD_REL_STEP);
    Ok(lhs + r as f64 * c.s[r] * fr.normal.dot(&av))
}

/// All principal curvatures non-zero and of one sign. Degenerate charts
/// report `false`.
pub fn is_elliptic_point<S: ParamSurface + ?Sized>(s: &S, u: &[f64]) -> bool {
    match curvature_data(s, u) {
        Ok(c) => c.kappa[0] * c.kappa[c.dim() - 1] > 0.0,
        Err(_) => false,
    }
}

/// `max - min` of `H_r` over a `per_axis^n` grid of the inset domain.
pub fn hr_spread<S: ParamSurface + ?Sized>(s: &S, r: usize, per_axis: usize) -> Result<f64> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for u in s.domain().grid(per_axis, 0.05) {
        let v = curvature_data(s, &u)?.h[r];
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok(hi - lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn symmetric_functions_and_newton() {
        let k = [1.0, 2.0, -3.0];
        assert_eq!(elementary_symmetric(&k), vec![1.0, 0.0, -7.0, -6.0]);
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(newton_diagonal(&k, 0), vec![1.0; 3]);
        // t^1_i = S_1 - kappa_i
        assert_eq!(newton_diagonal(&k, 1), vec![-1.0, -2.0, 3.0]);
        assert_eq!(newton_diagonal(&k, 3), vec![0.0; 3]);
    }

    #[test]
    fn unit_sphere_curvature() {
        for n in 2..=4 {
            let s = Sphere::new(n, 1.0);
            let u = s.domain().sample(3, 1, 0.1).remove(0);
            let c = curvature_data(&s, &u).unwrap();
            for k in &c.kappa {
                assert!((k - 1.0).abs() < 1e-12);
            }
            for r in 0..=n {
                assert!((c.s[r] - binomial(n, r)).abs() < 1e-9);
                assert!((c.h[r] - 1.0).abs() < 1e-10);
            }
            let (g, h, nu) = fundamental_forms(&s, &u).unwrap();
            assert!((&g - &h).abs().max() < 1e-12);
            assert!((nu - s.position(&u)).norm() < 1e-12);
            let t1 = newton_transform(&s, &u, 1).unwrap();
            assert!((t1 - DMatrix::identity(n, n) * (n as f64 - 1.0)).abs().max() < 1e-12);
        }
    }

    #[test]
    fn plane_and_cylinder() {
        let p = Plane::new(3);
        let c = curvature_data(&p, &[0.1, 0.2, -0.3]).unwrap();
        assert_eq!(c.s[1..], [0.0; 3]);
        let cyl = Revolution::cylinder(2, 0.5, 2.0);
        let c = curvature_data(&cyl, &[0.3, 0.7]).unwrap();
        assert!(c.kappa[0].abs() < 1e-14 && (c.kappa[1] - 2.0).abs() < 1e-12);
        assert!(c.s[2].abs() < 1e-14);
        assert!(!is_elliptic_point(&cyl, &[0.3, 0.7]));
        assert!(is_elliptic_point(&Sphere::new(2, 2.0), &[1.0, 1.0]));
    }

    #[test]
    fn saddle_is_not_elliptic() {
        let g = Graph::new(2, "u1^2 - u2^2", |u| u[0] * u[0] - u[1] * u[1], 1.0);
        let c = curvature_data(&g, &[0.0, 0.0]).unwrap();
        assert!((c.kappa[0] + 2.0).abs() < 1e-6 && (c.kappa[1] - 2.0).abs() < 1e-6);
        assert!(!is_elliptic_point(&g, &[0.0, 0.0]));
    }

    #[test]
    fn fd_partials_agree_with_analytic() {
        let e = Ellipsoid::new(vec![1.0, 1.5, 0.7, 2.0]);
        for u in e.domain().sample(5, 10, 0.1) {
            let (j, s2) = e.partials(&u).unwrap();
            let (jf, sf) = fd_partials(&e, &u);
            assert!((j - jf).abs().max() < 1e-6);
            for (a, b) in s2.iter().zip(&sf) {
                assert!((a - b).amax() < 1e-5);
            }
        }
    }

    #[test]
    fn laplacian_oracles() {
        let s = Sphere::new(3, 1.0);
        let coord = |u: &[f64]| s.position(u)[1];
        for u in s.domain().sample(8, 5, 0.1) {
            let l0 = l_r_apply(&s, &coord, &u, 0).unwrap();
            assert!((l0 + 3.0 * coord(&u)).abs() < 1e-5);
            assert!(l_r_apply(&s, &|_: &[f64]| 2.5, &u, 0).unwrap().abs() < 1e-9);
        }
        let p = Plane::new(3);
        let q = |u: &[f64]| 0.5 * u.iter().map(|v| v * v).sum::<f64>();
        assert!((l_r_apply(&p, &q, &[0.2, -0.1, 0.3], 0).unwrap() - 3.0).abs() < 1e-7);
        assert!(matches!(l_r_apply(&p, &q, &[0.2, -0.1, 0.3], 4), Err(Error::Index(_))));
    }

    #[test]
    fn minkowski_examples() {
        let s = Sphere::new(2, 1.0);
        let r = minkowski_residual(&s, &[1.0, 2.0], 1, &[1.0, 0.0, 0.0]).unwrap();
        assert!(r.abs() < 1e-5);
        let e = Ellipsoid::new(vec![1.0, 1.3, 0.8]);
        let a = [0.3, -0.5, 0.9];
        for u in e.domain().sample(2, 5, 0.1) {
            assert!(minkowski_residual(&e, &u, 2, &a).unwrap().abs() < 1e-4);
        }
        let p = Plane::new(2);
        assert!(minkowski_residual(&p, &[0.3, 0.1], 2, &[0.0, 0.0, 1.0]).unwrap().abs() < 1e-12);
        assert!(matches!(
            minkowski_residual(&p, &[0.3, 0.1], 0, &[0.0, 0.0, 1.0]),
            Err(Error::Index(_))
        ));
    }

    #[test]
    fn degenerate_metric_at_pole() {
        let s = Sphere::new(2, 1.0);
        assert!(matches!(frame(&s, &[0.0, 1.0]), Err(Error::DegenerateMetric { .. })));
    }

    #[test]
    fn flip_negates_odd_symmetric_functions() {
        let t = Revolution::torus(2, 2.0, 0.7);
        let f = Flipped(t.clone());
        let u = [0.4, 1.3];
        let a = curvature_data(&t, &u).unwrap();
        let b = curvature_data(&f, &u).unwrap();
        for r in 0..=2 {
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            assert!((a.s[r] - sign * b.s[r]).abs() < 1e-12);
        }
        assert!((a.norm_a2 - (a.s[1] * a.s[1] - 2.0 * a.s[2])).abs() < 1e-12);
        let _ = PI;
    }

    #[test]
    fn grid_and_tensor() {
        let d = Domain::new(vec![0.0, 0.0], vec![1.0, 2.0 * PI], vec![false, true]);
        let g = d.grid(4, 0.0);
        assert_eq!(g.len(), 16);
        assert_eq!(g[1], vec![0.0, PI / 2.0]);
        assert_eq!(g[15][0], 1.0);
    }

    #[test]
    fn curvature_json_shape() {
        let c = curvature_data(&Sphere::new(2, 1.0), &[1.0, 1.0]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert!(v.get("principal_frame").is_none());
        assert_eq!(v["s"].as_array().unwrap().len(), 3);
    }
}
