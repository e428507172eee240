//! Closed-form test surfaces with analytic first and second partials.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{fd_partials, orientation_toward, Domain, ParamSurface, FD_REL_STEP};
use crate::fd;

type Partials = (DVector<f64>, DMatrix<f64>, Vec<DVector<f64>>);

#[derive(Clone, Copy)]
enum Factor {
    Sin,
    Cos,
    One,
}

fn factor(f: Factor, x: f64, order: usize) -> f64 {
    match f {
        Factor::Sin => (x + order as f64 * FRAC_PI_2).sin(),
        Factor::Cos => (x + order as f64 * FRAC_PI_2).cos(),
        Factor::One => {
            if order == 0 {
                1.0
            } else {
                0.0
            }
        }
    }
}

/// Hyperspherical chart of the unit `S^k` in `R^{k+1}`:
/// `x_i = sin(a_0) ... sin(a_{i-1}) cos(a_i)`, `x_k = sin(a_0) ... sin(a_{k-1})`.
/// The last angle is the periodic one. Returns `(x, d_j x, d_j d_l x)`.
pub fn unit_sphere_chart(a: &[f64]) -> Partials {
    let k = a.len();
    let kind = |i: usize, j: usize| {
        if j < i {
            Factor::Sin
        } else if j == i && i < k {
            Factor::Cos
        } else {
            Factor::One
        }
    };
    let eval = |i: usize, orders: &[usize]| -> f64 { (0..k).map(|j| factor(kind(i, j), a[j], orders[j])).product() };
    let mut ord = vec![0; k];
    let x = DVector::from_fn(k + 1, |i, _| eval(i, &ord));
    let mut jac = DMatrix::zeros(k + 1, k);
    let mut second = vec![DVector::zeros(k + 1); k * k];
    for j in 0..k {
        ord[j] += 1;
        for i in 0..=k {
            jac[(i, j)] = eval(i, &ord);
        }
        for l in 0..k {
            ord[l] += 1;
            second[j * k + l] = DVector::from_fn(k + 1, |i, _| eval(i, &ord));
            ord[l] -= 1;
        }
        ord[j] -= 1;
    }
    (x, jac, second)
}

fn sphere_domain(k: usize) -> Domain {
    let mut lo = vec![0.0; k];
    let mut hi = vec![PI; k];
    let mut periodic = vec![false; k];
    hi[k - 1] = 2.0 * PI;
    periodic[k - 1] = true;
    lo[k - 1] = 0.0;
    Domain::new(lo, hi, periodic)
}

fn centre(d: &Domain) -> Vec<f64> {
    d.lo.iter().zip(&d.hi).map(|(a, b)| 0.5 * (a + b)).collect()
}

/// Round `n`-sphere of radius `radius` about `center`, outward normal.
#[derive(Debug, Clone)]
pub struct Sphere {
    pub radius: f64,
    pub center: DVector<f64>,
    domain: Domain,
    sign: f64,
}

impl Sphere {
    pub fn new(n: usize, radius: f64) -> Self {
        Self::with_center(radius, DVector::zeros(n + 1))
    }

    pub fn with_center(radius: f64, center: DVector<f64>) -> Self {
        assert!(center.len() >= 2 && radius > 0.0);
        let mut s = Self {
            radius,
            domain: sphere_domain(center.len() - 1),
            center,
            sign: 1.0,
        };
        let u = centre(&s.domain);
        let out = s.position(&u) - &s.center;
        s.sign = orientation_toward(&s, &u, &out);
        s
    }
}

impl ParamSurface for Sphere {
    fn dim(&self) -> usize {
        self.center.len() - 1
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn position(&self, u: &[f64]) -> DVector<f64> {
        &self.center + unit_sphere_chart(u).0 * self.radius
    }
    fn partials(&self, u: &[f64]) -> Option<(DMatrix<f64>, Vec<DVector<f64>>)> {
        let (_, j, s) = unit_sphere_chart(u);
        Some((j * self.radius, s.into_iter().map(|v| v * self.radius).collect()))
    }
    fn orientation(&self) -> f64 {
        self.sign
    }
    fn label(&self) -> String {
        format!("sphere(n={}, radius={})", self.dim(), self.radius)
    }
}

/// `X = diag(axes) omega` with `omega` on the unit sphere; outward normal.
#[derive(Debug, Clone)]
pub struct Ellipsoid {
    pub axes: Vec<f64>,
    domain: Domain,
    sign: f64,
}

impl Ellipsoid {
    pub fn new(axes: Vec<f64>) -> Self {
        assert!(axes.len() >= 2 && axes.iter().all(|a| *a > 0.0));
        let mut s = Self {
            domain: sphere_domain(axes.len() - 1),
            axes,
            sign: 1.0,
        };
        let u = centre(&s.domain);
        let out = unit_sphere_chart(&u).0;
        s.sign = orientation_toward(&s, &u, &out);
        s
    }

    fn scale(&self, v: DVector<f64>) -> DVector<f64> {
        v.component_mul(&DVector::from_column_slice(&self.axes))
    }
}

impl ParamSurface for Ellipsoid {
    fn dim(&self) -> usize {
        self.axes.len() - 1
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn position(&self, u: &[f64]) -> DVector<f64> {
        self.scale(unit_sphere_chart(u).0)
    }
    fn partials(&self, u: &[f64]) -> Option<(DMatrix<f64>, Vec<DVector<f64>>)> {
        let (_, mut j, s) = unit_sphere_chart(u);
        for (i, a) in self.axes.iter().enumerate() {
            j.row_mut(i).scale_mut(*a);
        }
        Some((j, s.into_iter().map(|v| self.scale(v)).collect()))
    }
    fn orientation(&self) -> f64 {
        self.sign
    }
    fn label(&self) -> String {
        format!("ellipsoid(axes={:?})", self.axes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Profile {
    Cap { rho: f64, height: f64 },
    Disk { height: f64 },
    Cylinder { rho: f64 },
    Torus { big: f64, small: f64 },
}

impl Profile {
    /// `(a, a', a'', b, b', b'')` for `X = (a(s) omega, b(s))`.
    fn eval(self, s: f64) -> [f64; 6] {
        match self {
            Profile::Cap { rho, height } => {
                let (sn, cs) = s.sin_cos();
                [rho * sn, rho * cs, -rho * sn, height + rho * cs, -rho * sn, -rho * cs]
            }
            Profile::Disk { height } => [s, 1.0, 0.0, height, 0.0, 0.0],
            Profile::Cylinder { rho } => [rho, 0.0, 0.0, s, 1.0, 0.0],
            Profile::Torus { big, small } => {
                let (sn, cs) = s.sin_cos();
                [
                    big + small * cs,
                    -small * sn,
                    -small * cs,
                    small * sn,
                    small * cs,
                    -small * sn,
                ]
            }
        }
    }
}

/// Hypersurface of revolution `X(s, phi) = (a(s) omega(phi), b(s))` about the
/// last coordinate axis, `omega` on the unit `S^{n-1}`. Chart `u = (s, phi)`.
#[derive(Debug, Clone)]
pub struct Revolution {
    n: usize,
    profile: Profile,
    domain: Domain,
    sign: f64,
    name: String,
}

impl Revolution {
    fn build(n: usize, profile: Profile, s_range: (f64, f64, bool), name: String) -> Self {
        assert!(n >= 2);
        let sd = sphere_domain(n - 1);
        let mut lo = vec![s_range.0];
        let mut hi = vec![s_range.1];
        let mut periodic = vec![s_range.2];
        lo.extend(sd.lo);
        hi.extend(sd.hi);
        periodic.extend(sd.periodic);
        let mut r = Self {
            n,
            profile,
            domain: Domain::new(lo, hi, periodic),
            sign: 1.0,
            name,
        };
        let (lo, hi) = r.domain.inset(0.25);
        let u: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
        let x = r.position(&u);
        let mut out = x.clone();
        match profile {
            Profile::Cap { height, .. } => out[n] -= height,
            Profile::Disk { .. } => {
                out.fill(0.0);
                out[n] = 1.0;
            }
            Profile::Cylinder { .. } => out[n] = 0.0,
            Profile::Torus { big, .. } => {
                let w = unit_sphere_chart(&u[1..]).0;
                for i in 0..n {
                    out[i] -= big * w[i];
                }
            }
        }
        r.sign = orientation_toward(&r, &u, &out);
        r
    }

    /// Cap `psi <= psi_max` of the sphere of radius `rho` centred at
    /// `height e_{n+1}`; outward normal.
    pub fn cap(n: usize, rho: f64, height: f64, psi_max: f64) -> Self {
        assert!(rho > 0.0 && psi_max > 0.0 && psi_max <= PI);
        Self::build(
            n,
            Profile::Cap { rho, height },
            (0.0, psi_max, false),
            format!("cap(n={n}, rho={rho}, height={height}, psi_max={psi_max})"),
        )
    }

    /// Cap of radius `rho` whose boundary `psi = psi_max` lies on the sphere
    /// of radius `big_r` about the origin.
    pub fn cap_on_sphere(n: usize, rho: f64, psi_max: f64, big_r: f64) -> Self {
        let (sn, cs) = psi_max.sin_cos();
        let height = -rho * cs + (big_r * big_r - rho * rho * sn * sn).sqrt();
        Self::cap(n, rho, height, psi_max)
    }

    /// Flat disk of radius `radius` at height `height`, normal `+e_{n+1}`.
    pub fn disk(n: usize, radius: f64, height: f64) -> Self {
        assert!(radius > 0.0);
        Self::build(
            n,
            Profile::Disk { height },
            (0.0, radius, false),
            format!("disk(n={n}, radius={radius}, height={height})"),
        )
    }

    /// `S^{n-1}(rho) x [-length/2, length/2]`, outward normal.
    pub fn cylinder(n: usize, rho: f64, length: f64) -> Self {
        assert!(rho > 0.0 && length > 0.0);
        Self::build(
            n,
            Profile::Cylinder { rho },
            (-0.5 * length, 0.5 * length, false),
            format!("cylinder(n={n}, rho={rho}, length={length})"),
        )
    }

    /// Torus of revolution with tube radius `small` around a circle of
    /// radius `big`; outward normal.
    pub fn torus(n: usize, big: f64, small: f64) -> Self {
        assert!(big > small && small > 0.0);
        Self::build(
            n,
            Profile::Torus { big, small },
            (0.0, 2.0 * PI, true),
            format!("torus(n={n}, big={big}, small={small})"),
        )
    }

    fn all(&self, u: &[f64]) -> Partials {
        let n = self.n;
        let [a, da, dda, b, db, ddb] = self.profile.eval(u[0]);
        let (w, wj, ws) = unit_sphere_chart(&u[1..]);
        let lift = |v: &DVector<f64>, scale: f64, last: f64| {
            let mut out = DVector::zeros(n + 1);
            out.rows_mut(0, n).copy_from(&(v * scale));
            out[n] = last;
            out
        };
        let x = lift(&w, a, b);
        let mut jac = DMatrix::zeros(n + 1, n);
        jac.set_column(0, &lift(&w, da, db));
        for j in 1..n {
            jac.set_column(j, &lift(&wj.column(j - 1).into_owned(), a, 0.0));
        }
        let mut second = vec![DVector::zeros(n + 1); n * n];
        second[0] = lift(&w, dda, ddb);
        for j in 1..n {
            let d = lift(&wj.column(j - 1).into_owned(), da, 0.0);
            second[j] = d.clone();
            second[j * n] = d;
            for l in 1..n {
                second[j * n + l] = lift(&ws[(j - 1) * (n - 1) + (l - 1)], a, 0.0);
            }
        }
        (x, jac, second)
    }
}

impl ParamSurface for Revolution {
    fn dim(&self) -> usize {
        self.n
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn position(&self, u: &[f64]) -> DVector<f64> {
        self.all(u).0
    }
    fn partials(&self, u: &[f64]) -> Option<(DMatrix<f64>, Vec<DVector<f64>>)> {
        let (_, j, s) = self.all(u);
        Some((j, s))
    }
    fn orientation(&self) -> f64 {
        self.sign
    }
    fn label(&self) -> String {
        self.name.clone()
    }
}

/// The coordinate hyperplane `X = (u, 0)` over `[-1, 1]^n`, normal `+e_{n+1}`.
#[derive(Debug, Clone)]
pub struct Plane {
    domain: Domain,
    sign: f64,
}

impl Plane {
    pub fn new(n: usize) -> Self {
        let mut p = Self {
            domain: Domain::new(vec![-1.0; n], vec![1.0; n], vec![false; n]),
            sign: 1.0,
        };
        let mut up = DVector::zeros(n + 1);
        up[n] = 1.0;
        p.sign = orientation_toward(&p, &vec![0.0; n], &up);
        p
    }
}

impl ParamSurface for Plane {
    fn dim(&self) -> usize {
        self.domain.dim()
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn position(&self, u: &[f64]) -> DVector<f64> {
        let mut x = DVector::zeros(u.len() + 1);
        x.rows_mut(0, u.len()).copy_from_slice(u);
        x
    }
    fn partials(&self, u: &[f64]) -> Option<(DMatrix<f64>, Vec<DVector<f64>>)> {
        let n = u.len();
        Some((DMatrix::identity(n + 1, n), vec![DVector::zeros(n + 1); n * n]))
    }
    fn orientation(&self) -> f64 {
        self.sign
    }
    fn label(&self) -> String {
        format!("plane(n={})", self.dim())
    }
}

type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Graph `X = (u, f(u))` over `[-half_width, half_width]^n`, normal with
/// positive last component. Partials of `f` by fourth-order differences.
#[derive(Clone)]
pub struct Graph {
    f: ScalarFn,
    expr: String,
    domain: Domain,
    sign: f64,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("Graph").field("expr", &self.expr).finish()
    }
}

impl Graph {
    pub fn new<F>(n: usize, expr: impl Into<String>, f: F, half_width: f64) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        let mut g = Self {
            f: Arc::new(f),
            expr: expr.into(),
            domain: Domain::new(vec![-half_width; n], vec![half_width; n], vec![false; n]),
            sign: 1.0,
        };
        let mut up = DVector::zeros(n + 1);
        up[n] = 1.0;
        g.sign = orientation_toward(&g, &vec![0.0; n], &up);
        g
    }
}

impl ParamSurface for Graph {
    fn dim(&self) -> usize {
        self.domain.dim()
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn position(&self, u: &[f64]) -> DVector<f64> {
        let mut x = DVector::zeros(u.len() + 1);
        x.rows_mut(0, u.len()).copy_from_slice(u);
        x[u.len()] = (self.f)(u);
        x
    }
    fn partials(&self, u: &[f64]) -> Option<(DMatrix<f64>, Vec<DVector<f64>>)> {
        let n = u.len();
        let h = FD_REL_STEP * self.domain.scale()[0];
        let (g, hs) = fd::gradient_hessian(|v| (self.f)(v), u, h);
        let mut jac = DMatrix::identity(n + 1, n);
        for i in 0..n {
            jac[(n, i)] = g[i];
        }
        let second = (0..n * n)
            .map(|k| {
                let mut v = DVector::zeros(n + 1);
                v[n] = hs[(k / n, k % n)];
                v
            })
            .collect();
        Some((jac, second))
    }
    fn orientation(&self) -> f64 {
        self.sign
    }
    fn label(&self) -> String {
        format!("graph(n={}, f={})", self.dim(), self.expr)
    }
}

/// Same chart with the opposite unit normal.
#[derive(Debug, Clone)]
pub struct Flipped<S>(pub S);

impl<S: ParamSurface> ParamSurface for Flipped<S> {
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn domain(&self) -> &Domain {
        self.0.domain()
    }
    fn position(&self, u: &[f64]) -> DVector<f64> {
        self.0.position(u)
    }
    fn partials(&self, u: &[f64]) -> Option<(DMatrix<f64>, Vec<DVector<f64>>)> {
        self.0.partials(u)
    }
    fn orientation(&self) -> f64 {
        -self.0.orientation()
    }
    fn label(&self) -> String {
        format!("flipped({})", self.0.label())
    }
}

/// `X -> Q X + b` for orthogonal `Q`; the normal is carried along.
#[derive(Debug, Clone)]
pub struct Rigid<S> {
    pub base: S,
    pub rotation: DMatrix<f64>,
    pub translation: DVector<f64>,
    det_sign: f64,
}

impl<S: ParamSurface> Rigid<S> {
    pub fn new(base: S, rotation: DMatrix<f64>, translation: DVector<f64>) -> Self {
        let det_sign = rotation.determinant().signum();
        Self {
            base,
            rotation,
            translation,
            det_sign,
        }
    }
}

impl<S: ParamSurface> ParamSurface for Rigid<S> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn domain(&self) -> &Domain {
        self.base.domain()
    }
    fn position(&self, u: &[f64]) -> DVector<f64> {
        &self.rotation * self.base.position(u) + &self.translation
    }
    fn partials(&self, u: &[f64]) -> Option<(DMatrix<f64>, Vec<DVector<f64>>)> {
        let (j, s) = self.base.partials(u).unwrap_or_else(|| fd_partials(&self.base, u));
        Some((&self.rotation * j, s.iter().map(|v| &self.rotation * v).collect()))
    }
    fn orientation(&self) -> f64 {
        self.base.orientation() * self.det_sign
    }
    fn label(&self) -> String {
        format!("rigid({})", self.base.label())
    }
}

/// Ambient vector field on a chart.
pub type VectorField = Arc<dyn Fn(&[f64]) -> DVector<f64> + Send + Sync>;

/// `X + t W`. Partials of `W` by central differences.
#[derive(Clone)]
pub struct Deformed<S> {
    pub base: S,
    pub field: VectorField,
    pub t: f64,
}

impl<S: ParamSurface> Deformed<S> {
    pub fn new(base: S, field: VectorField, t: f64) -> Self {
        Self { base, field, t }
    }
}

impl<S: ParamSurface> ParamSurface for Deformed<S> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn domain(&self) -> &Domain {
        self.base.domain()
    }
    fn position(&self, u: &[f64]) -> DVector<f64> {
        self.base.position(u) + (self.field)(u) * self.t
    }
    fn partials(&self, u: &[f64]) -> Option<(DMatrix<f64>, Vec<DVector<f64>>)> {
        let (j, s) = self.base.partials(u).unwrap_or_else(|| fd_partials(&self.base, u));
        let n = u.len();
        let scale = self.domain().scale();
        let w = |v: &[f64]| {
            let p: Vec<f64> = (0..n).map(|i| u[i] + scale[i] * v[i]).collect();
            (self.field)(&p)
        };
        let (wj, ws) = fd::vector_partials(w, &vec![0.0; n], 0.1 * FD_REL_STEP);
        let mut jac = j;
        for i in 0..n {
            jac.column_mut(i).axpy(self.t / scale[i], &wj.column(i), 1.0);
        }
        let second = s
            .into_iter()
            .enumerate()
            .map(|(k, v)| v + &ws[k] * (self.t / (scale[k / n] * scale[k % n])))
            .collect();
        Some((jac, second))
    }
    fn orientation(&self) -> f64 {
        self.base.orientation()
    }
    fn label(&self) -> String {
        format!("deformed({}, t={})", self.base.label(), self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{curvature_data, frame};

    #[test]
    fn sphere_chart_is_unit_and_fd_consistent() {
        for k in 1..=4 {
            let a: Vec<f64> = (0..k).map(|i| 0.4 + 0.3 * i as f64).collect();
            let (x, j, s) = unit_sphere_chart(&a);
            assert!((x.norm() - 1.0).abs() < 1e-15);
            let h = 1e-6;
            for c in 0..k {
                let mut p = a.clone();
                p[c] += h;
                let xp = unit_sphere_chart(&p).0;
                p[c] -= 2.0 * h;
                let xm = unit_sphere_chart(&p).0;
                assert!(((xp - xm) / (2.0 * h) - j.column(c)).amax() < 1e-9);
                let (_, jp, _) = unit_sphere_chart(&{
                    let mut q = a.clone();
                    q[c] += h;
                    q
                });
                for l in 0..k {
                    let d = (jp.column(l) - j.column(l)) / h;
                    assert!((d - &s[c * k + l]).amax() < 1e-5);
                }
            }
        }
    }

    #[test]
    fn revolution_partials_match_fd() {
        let surfaces = [
            Revolution::cap(3, 0.8, 0.2, 1.0),
            Revolution::disk(2, 1.0, 0.0),
            Revolution::cylinder(3, 0.5, 2.0),
            Revolution::torus(2, 2.0, 0.5),
        ];
        for s in &surfaces {
            for u in s.domain().sample(1, 5, 0.1) {
                let (j, sec) = s.partials(&u).unwrap();
                let (jf, sf) = fd_partials(s, &u);
                assert!((j - jf).amax() < 1e-6, "{}", s.label());
                for (a, b) in sec.iter().zip(&sf) {
                    assert!((a - b).amax() < 1e-5, "{}", s.label());
                }
            }
        }
    }

    #[test]
    fn natural_orientations() {
        let cap = Revolution::cap(2, 1.0, 0.0, 1.0);
        let c = curvature_data(&cap, &[0.5, 1.0]).unwrap();
        assert!(c.kappa.iter().all(|k| (k - 1.0).abs() < 1e-12));
        let disk = Revolution::disk(2, 1.0, 0.0);
        assert!((frame(&disk, &[0.5, 1.0]).unwrap().normal[2] - 1.0).abs() < 1e-15);
        let t = Revolution::torus(2, 2.0, 0.5);
        // outer equator: kappa = (1/r, 1/(R+r))
        let c = curvature_data(&t, &[0.0, 0.3]).unwrap();
        assert!((c.kappa[0] - 1.0 / 2.5).abs() < 1e-12 && (c.kappa[1] - 2.0).abs() < 1e-12);
        let p = Plane::new(2);
        assert_eq!(frame(&p, &[0.0, 0.0]).unwrap().normal[2], 1.0);
    }

    #[test]
    fn cap_on_sphere_boundary() {
        let cap = Revolution::cap_on_sphere(2, 0.7, 1.2, 1.0);
        for phi in [0.0, 1.0, 4.0] {
            assert!((cap.position(&[1.2, phi]).norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rigid_motion_preserves_curvature() {
        let e = Ellipsoid::new(vec![1.0, 1.4, 0.6]);
        let q = nalgebra::Rotation3::from_euler_angles(0.3, -0.7, 1.1);
        let m = DMatrix::from_fn(3, 3, |i, j| q.matrix()[(i, j)]);
        let r = Rigid::new(e.clone(), m.clone(), DVector::from_vec(vec![1.0, 2.0, 3.0]));
        let u = [1.0, 2.0];
        let a = frame(&e, &u).unwrap();
        let b = frame(&r, &u).unwrap();
        assert!((&m * &a.normal - &b.normal).amax() < 1e-14);
        assert!((a.second_form - b.second_form).amax() < 1e-12);
    }

    #[test]
    fn deformation_with_zero_field_is_identity() {
        let t = Revolution::torus(2, 2.0, 0.5);
        let d = Deformed::new(t.clone(), Arc::new(|_: &[f64]| DVector::from_element(3, 1.0)), 0.0);
        let u = [0.3, 0.9];
        let (a, b) = (curvature_data(&t, &u).unwrap(), curvature_data(&d, &u).unwrap());
        assert_eq!(a.kappa, b.kappa);
        let shifted = Deformed::new(t.clone(), Arc::new(|_: &[f64]| DVector::from_element(3, 1.0)), 0.5);
        let c = curvature_data(&shifted, &u).unwrap();
        assert!((a.kappa[0] - c.kappa[0]).abs() < 1e-9);
    }
}
