//! The `Spin(m+1)` symmetry of `F` and the circle action on `S^1 x V_2(R^l)`.

use serde::Serialize;

use super::{cm_eval, CliffordSystem, IntMatrix};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::report::{AuditEntry, AuditReport};
use crate::sampling;

/// `A = P_a P_b` for `a < b`; skew with `A^2 = -Id`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinGenerator {
    pub alpha: usize,
    pub beta: usize,
    pub matrix: IntMatrix,
}

impl SpinGenerator {
    pub fn new(sys: &CliffordSystem, alpha: usize, beta: usize) -> Result<Self> {
        if alpha >= beta || beta > sys.m {
            return Err(Error::Index(format!(
                "need alpha < beta <= m = {}, got ({alpha}, {beta})",
                sys.m
            )));
        }
        Ok(Self {
            alpha,
            beta,
            matrix: &sys.matrices[alpha] * &sys.matrices[beta],
        })
    }

    /// Exact defects `(max |A^T + A|, max |A^2 + Id|)`.
    pub fn defects(&self) -> (i64, i64) {
        let id = IntMatrix::identity(self.matrix.dim());
        (
            (&self.matrix.transpose() + &self.matrix).max_abs(),
            (&(&self.matrix * &self.matrix) + &id).max_abs(),
        )
    }
}

pub fn spin_generators(sys: &CliffordSystem) -> Vec<SpinGenerator> {
    let mut out = Vec::new();
    for a in 0..=sys.m {
        for b in (a + 1)..=sys.m {
            out.push(SpinGenerator::new(sys, a, b).expect("indices in range"));
        }
    }
    out
}

/// `exp(tA) x = cos(t) x + sin(t) A x`.
pub fn spin_orbit_map(gen: &SpinGenerator, t: f64, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != gen.matrix.dim() {
        return Err(Error::DimensionMismatch {
            expected: gen.matrix.dim(),
            got: x.len(),
        });
    }
    let (s, c) = t.sin_cos();
    let ax = gen.matrix.apply(x);
    Ok(x.iter().zip(&ax).map(|(a, b)| c * a + s * b).collect())
}

/// `|F(exp(tA) x) - F(x)| / max(1, |x|^4)` over all generators of `sys`.
pub fn verify_spin_invariance(
    sys: &CliffordSystem,
    n_samples: usize,
    t_samples: &[f64],
    tol: f64,
    seed: u64,
    execution: Execution,
) -> AuditReport {
    verify_spin_invariance_with(sys, &spin_generators(sys), n_samples, t_samples, tol, seed, execution)
}

/// As [`verify_spin_invariance`] for caller-supplied generators.
pub fn verify_spin_invariance_with(
    sys: &CliffordSystem,
    gens: &[SpinGenerator],
    n_samples: usize,
    t_samples: &[f64],
    tol: f64,
    seed: u64,
    execution: Execution,
) -> AuditReport {
    let xs = sampling::gaussian_vectors(seed, n_samples, sys.dim());
    let mut report = AuditReport::new(format!("spin invariance m={} l={}", sys.m, sys.l)).with_seed(seed);
    let mut all = Vec::new();
    for gen in gens {
        let res: Vec<f64> = execution
            .map_slice(&xs, |x| {
                let f0 = cm_eval(sys, x).expect("dimension");
                let scale = x.iter().map(|v| v * v).sum::<f64>().powi(2).max(1.0);
                t_samples
                    .iter()
                    .map(|&t| match spin_orbit_map(gen, t, x) {
                        Ok(y) => (cm_eval(sys, &y).expect("dimension") - f0) / scale,
                        Err(_) => f64::NAN,
                    })
                    .collect::<Vec<_>>()
            })
            .into_iter()
            .flatten()
            .collect();
        report.push(AuditEntry::from_residuals(
            format!("spin({},{})", gen.alpha, gen.beta),
            &res,
            tol,
        ));
        all.extend(res);
    }
    report
        .entries
        .insert(0, AuditEntry::from_residuals("spin_invariance", &all, tol));
    let exact: Vec<f64> = gens
        .iter()
        .map(|g| {
            let (a, b) = g.defects();
            a.max(b) as f64
        })
        .collect();
    report
        .entries
        .insert(1, AuditEntry::from_residuals("generator_relations", &exact, 0.0));
    report
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn check_stiefel(x: &[f64], y: &[f64]) -> Result<()> {
    let (nx, ny) = (norm(x), norm(y));
    let d: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    if (nx - 1.0).abs() > 1e-10 || (ny - 1.0).abs() > 1e-10 || d.abs() > 1e-10 {
        return Err(Error::NotInStiefel(format!("|x| = {nx}, |y| = {ny}, <x, y> = {d}")));
    }
    Ok(())
}

/// `(phi - 2t, cos t x + sin t y, -sin t x + cos t y)` on `S^1 x V_2(R^l)`.
pub fn s1_v2_action(l: usize, t: f64, phi: f64, x: &[f64], y: &[f64]) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    for v in [x, y] {
        if v.len() != l {
            return Err(Error::DimensionMismatch {
                expected: l,
                got: v.len(),
            });
        }
    }
    check_stiefel(x, y)?;
    let (s, c) = t.sin_cos();
    let x2 = x.iter().zip(y).map(|(a, b)| c * a + s * b).collect();
    let y2 = x.iter().zip(y).map(|(a, b)| -s * a + c * b).collect();
    Ok((phi - 2.0 * t, x2, y2))
}

/// `(u, v)` with `u = cos(phi)cos(b) x - sin(phi)sin(b) y` and
/// `v = sin(phi)cos(b) x + cos(phi)sin(b) y`.
pub fn embedding_point(phi: f64, beta: f64, x: &[f64], y: &[f64]) -> Vec<f64> {
    let (sp, cp) = phi.sin_cos();
    let (sb, cb) = beta.sin_cos();
    let u = x.iter().zip(y).map(|(a, b)| cp * cb * a - sp * sb * b);
    let v = x.iter().zip(y).map(|(a, b)| sp * cb * a + cp * sb * b);
    u.chain(v).collect()
}

fn orthonormal_pair(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let na = norm(a);
    let x: Vec<f64> = a.iter().map(|v| v / na).collect();
    let d: f64 = x.iter().zip(b).map(|(p, q)| p * q).sum();
    let y: Vec<f64> = b.iter().zip(&x).map(|(q, p)| q - d * p).collect();
    let ny = norm(&y);
    (x, y.into_iter().map(|v| v / ny).collect())
}

/// For the `m = 1` system: `f` on embedded points is unchanged by
/// [`s1_v2_action`] and equals `-cos(4 beta)`.
pub fn verify_embedding_invariance(
    sys: &CliffordSystem,
    beta: f64,
    n_samples: usize,
    t_samples: &[f64],
    tol: f64,
    seed: u64,
) -> Result<AuditReport> {
    if sys.m != 1 {
        return Err(Error::Domain(format!("embedding check needs m = 1, got {}", sys.m)));
    }
    if sys.l < 2 {
        return Err(Error::Domain("V_2(R^l) needs l >= 2".into()));
    }
    let l = sys.l;
    let raw = sampling::gaussian_vectors(seed, n_samples, 2 * l + 1);
    let mut inv = Vec::new();
    let mut level = Vec::new();
    for r in &raw {
        let (x, y) = orthonormal_pair(&r[..l], &r[l..2 * l]);
        let phi = r[2 * l];
        let f0 = cm_eval(sys, &embedding_point(phi, beta, &x, &y))?;
        level.push(f0 + (4.0 * beta).cos());
        for &t in t_samples {
            let (p2, x2, y2) = s1_v2_action(l, t, phi, &x, &y)?;
            inv.push(cm_eval(sys, &embedding_point(p2, beta, &x2, &y2))? - f0);
        }
    }
    let mut report = AuditReport::new(format!("S1 x V2 action l={l}")).with_seed(seed);
    report.push(AuditEntry::from_residuals("embedding_invariance", &inv, tol));
    report.push(AuditEntry::from_residuals("embedding_level", &level, tol));
    Ok(report)
}
