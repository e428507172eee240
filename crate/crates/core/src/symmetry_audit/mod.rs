//! Numerical checks of rotational symmetry on test surfaces: Killing normal
//! components, Jacobi-type equations, contact angles and Cauchy data on a
//! spherical boundary, and Helfrich energy identities.

mod boundary;
mod helfrich;

use nalgebra::{DMatrix, DVector};
use serde::ser::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::report::{AuditEntry, AuditReport};
use crate::sampling;
use crate::shape::{self, curvature_from_frame, frame, ParamSurface};

pub use boundary::{boundary_cauchy_check, contact_angle, contact_frame, BoundaryData, ContactFrame, Face};
pub use helfrich::{
    helfrich_el_residual, helfrich_energy, helfrich_first_variation, is_helfrich_type, smooth_random_field,
    ChartQuadrature,
};

/// Largest allowed spread of `H_r` over the chart for the Jacobi operators.
pub const CONSTANCY_TOL: f64 = 1e-6;

/// Element of `so(n+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewGenerator {
    matrix: DMatrix<f64>,
}

impl Serialize for SkewGenerator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<f64>> = self.matrix.row_iter().map(|r| r.iter().copied().collect()).collect();
        rows.serialize(s)
    }
}

impl SkewGenerator {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Domain("generator must be square".into()));
        }
        let defect = (&matrix + matrix.transpose()).amax();
        if defect > 1e-14 {
            return Err(Error::Domain(format!(
                "generator is not skew: |phi + phi^T| = {defect:e}"
            )));
        }
        Ok(Self { matrix })
    }

    /// Infinitesimal rotation taking `e_i` toward `e_j`.
    pub fn rotation(dim: usize, i: usize, j: usize) -> Result<Self> {
        if i >= dim || j >= dim || i == j {
            return Err(Error::Index(format!("plane ({i}, {j}) in dimension {dim}")));
        }
        let mut m = DMatrix::zeros(dim, dim);
        m[(j, i)] = 1.0;
        m[(i, j)] = -1.0;
        Ok(Self { matrix: m })
    }

    /// Seeded random generator with Gaussian entries above the diagonal.
    pub fn random(dim: usize, seed: u64) -> Self {
        let g = sampling::gaussian_vectors(seed, 1, dim * dim).remove(0);
        let a = DMatrix::from_vec(dim, dim, g);
        Self {
            matrix: (&a - a.transpose()) * 0.5,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.matrix * x
    }
}

fn check_generator<S: ParamSurface + ?Sized>(s: &S, phi: &SkewGenerator) -> Result<()> {
    if phi.dim() != s.dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: s.dim() + 1,
            got: phi.dim(),
        });
    }
    Ok(())
}

/// `Phi = <phi X, nu>` at `u`.
pub fn normal_component<S: ParamSurface + ?Sized>(s: &S, phi: &SkewGenerator, u: &[f64]) -> Result<f64> {
    check_generator(s, phi)?;
    let f = frame(s, u)?;
    Ok(phi.apply(&f.position).dot(&f.normal))
}

/// `Phi` as a chart field; non-finite where the chart degenerates.
fn phi_field<'a, S: ParamSurface + ?Sized>(s: &'a S, phi: &'a SkewGenerator) -> impl Fn(&[f64]) -> f64 + Sync + 'a {
    move |v: &[f64]| normal_component(s, phi, v).unwrap_or(f64::NAN)
}

/// Errors unless `H_r` is constant over the chart to [`CONSTANCY_TOL`].
pub fn ensure_constant_hr<S: ParamSurface + ?Sized>(s: &S, r: usize) -> Result<()> {
    let spread = shape::hr_spread(s, r, 7)?;
    if spread > CONSTANCY_TOL {
        return Err(if r == 1 {
            Error::NotCmc {
                spread,
                tolerance: CONSTANCY_TOL,
            }
        } else {
            Error::NotConstantHr {
                r,
                spread,
                tolerance: CONSTANCY_TOL,
            }
        });
    }
    Ok(())
}

fn jacobi_unchecked<S: ParamSurface + ?Sized>(s: &S, phi: &SkewGenerator, u: &[f64], r: usize) -> Result<f64> {
    let fr = frame(s, u)?;
    let c = curvature_from_frame(&fr);
    let field = phi_field(s, phi);
    let value = phi.apply(&fr.position).dot(&fr.normal);
    let lphi = shape::l_r_with(s, &field, &fr, &c, r - 1, shape::FD_REL_STEP);
    let s_next = c.s.get(r + 1).copied().unwrap_or(0.0);
    Ok(lphi + (c.s[1] * c.s[r] - (r + 1) as f64 * s_next) * value)
}

/// `Delta Phi + |A|^2 Phi` on a constant mean curvature chart.
pub fn jacobi_residual_cmc<S: ParamSurface + ?Sized>(s: &S, phi: &SkewGenerator, u: &[f64]) -> Result<f64> {
    check_generator(s, phi)?;
    ensure_constant_hr(s, 1)?;
    jacobi_unchecked(s, phi, u, 1)
}

/// `L_{r-1} Phi + (S_1 S_r - (r+1) S_{r+1}) Phi` on a chart of constant `H_r`.
pub fn jacobi_residual_r<S: ParamSurface + ?Sized>(s: &S, phi: &SkewGenerator, u: &[f64], r: usize) -> Result<f64> {
    check_generator(s, phi)?;
    if r == 0 || r > s.dim() {
        return Err(Error::Index(format!("r = {r} outside 1..={}", s.dim())));
    }
    ensure_constant_hr(s, r)?;
    jacobi_unchecked(s, phi, u, r)
}

/// Jacobi residuals at many points, with a single constancy check.
pub fn jacobi_audit<S: ParamSurface + ?Sized>(
    s: &S,
    phi: &SkewGenerator,
    points: &[Vec<f64>],
    r: usize,
    tol: f64,
    execution: Execution,
) -> Result<AuditReport> {
    check_generator(s, phi)?;
    if r == 0 || r > s.dim() {
        return Err(Error::Index(format!("r = {r} outside 1..={}", s.dim())));
    }
    ensure_constant_hr(s, r)?;
    let res: Result<Vec<f64>> = execution
        .map_slice(points, |u| jacobi_unchecked(s, phi, u, r))
        .into_iter()
        .collect();
    let mut report = AuditReport::new(format!("jacobi r={r} on {}", s.label()));
    report.push(AuditEntry::from_residuals(format!("jacobi_r{r}"), &res?, tol));
    Ok(report)
}
