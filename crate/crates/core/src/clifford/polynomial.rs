//! The OT-FKM polynomial, its gradient and Laplacian.

use super::CliffordSystem;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::report::{AuditEntry, AuditReport};
use crate::sampling;

fn check_dim(sys: &CliffordSystem, x: &[f64]) -> Result<()> {
    if x.len() != sys.dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            got: x.len(),
        });
    }
    Ok(())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(P x, P^T x)` for every matrix of the system.
fn images(sys: &CliffordSystem, x: &[f64]) -> Vec<(Vec<f64>, Vec<f64>)> {
    sys.matrices
        .iter()
        .map(|p| (p.apply(x), p.transpose().apply(x)))
        .collect()
}

/// `F(x) = |x|^4 - 2 sum <P_a x, x>^2`.
pub fn cm_eval(sys: &CliffordSystem, x: &[f64]) -> Result<f64> {
    check_dim(sys, x)?;
    let r2 = dot(x, x);
    let s: f64 = sys.matrices.iter().map(|p| dot(&p.apply(x), x).powi(2)).sum();
    Ok(r2 * r2 - 2.0 * s)
}

/// `grad F = 4|x|^2 x - 4 sum <P_a x, x> (P_a + P_a^T) x`, which is the
/// familiar `4|x|^2 x - 8 sum <P_a x, x> P_a x` for symmetric `P_a`.
pub fn cm_gradient(sys: &CliffordSystem, x: &[f64]) -> Result<Vec<f64>> {
    check_dim(sys, x)?;
    let r2 = dot(x, x);
    let mut g: Vec<f64> = x.iter().map(|v| 4.0 * r2 * v).collect();
    for (px, ptx) in images(sys, x) {
        let q = dot(&px, x);
        for i in 0..g.len() {
            g[i] -= 4.0 * q * (px[i] + ptx[i]);
        }
    }
    Ok(g)
}

/// `Delta F = 4(2l + 2)|x|^2 - 2 sum (2|(P_a + P_a^T) x|^2 + 4 <P_a x, x> tr P_a)`.
///
/// For a genuine system this is `8(l - 2m - 1)|x|^2`; the general form keeps
/// defects in orthogonality or trace visible.
pub fn cm_laplacian(sys: &CliffordSystem, x: &[f64]) -> Result<f64> {
    check_dim(sys, x)?;
    let r2 = dot(x, x);
    let mut lap = 4.0 * (sys.dim() as f64 + 2.0) * r2;
    for (p, (px, ptx)) in sys.matrices.iter().zip(images(sys, x)) {
        let s: Vec<f64> = px.iter().zip(&ptx).map(|(a, b)| a + b).collect();
        lap -= 2.0 * (2.0 * dot(&s, &s) + 4.0 * dot(&px, x) * p.trace() as f64);
    }
    Ok(lap)
}

/// Relative residuals of `|grad F|^2 = 16|x|^6` and
/// `Delta F = 8(l - 2m - 1)|x|^2` at `n_samples` Gaussian points.
pub fn verify_cartan_munzner(
    sys: &CliffordSystem,
    n_samples: usize,
    tol: f64,
    seed: u64,
    execution: Execution,
) -> Result<AuditReport> {
    sys.multiplicities()?;
    let xs = sampling::gaussian_vectors(seed, n_samples, sys.dim());
    let lap_coeff = 8.0 * (sys.l as f64 - 2.0 * sys.m as f64 - 1.0);
    let res = execution.map_slice(&xs, |x| {
        let r2 = dot(x, x);
        let g = cm_gradient(sys, x).expect("dimension checked");
        let gn = (dot(&g, &g) - 16.0 * r2.powi(3)) / r2.powi(3);
        let lp = (cm_laplacian(sys, x).expect("dimension checked") - lap_coeff * r2) / r2;
        (gn, lp)
    });
    let (gn, lp): (Vec<f64>, Vec<f64>) = res.into_iter().unzip();
    let mut report = AuditReport::new(format!("cartan-munzner m={} l={}", sys.m, sys.l)).with_seed(seed);
    report.push(AuditEntry::from_residuals("gradient_norm", &gn, tol));
    report.push(AuditEntry::from_residuals("laplacian", &lp, tol));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford_system;
    use crate::fd;

    #[test]
    fn examples() {
        let s = build_clifford_system(1, 3).unwrap();
        let zero = vec![0.0; 6];
        assert_eq!(cm_eval(&s, &zero).unwrap(), 0.0);
        assert_eq!(cm_gradient(&s, &zero).unwrap(), zero);
        assert_eq!(cm_laplacian(&s, &zero).unwrap(), 0.0);
        let mut e1 = zero.clone();
        e1[0] = 1.0;
        assert_eq!(cm_eval(&s, &e1).unwrap(), -1.0);
        assert!(matches!(
            cm_eval(&s, &[1.0; 5]),
            Err(Error::DimensionMismatch { expected: 6, got: 5 })
        ));
    }

    #[test]
    fn gradient_matches_fd() {
        let s = build_clifford_system(2, 2).unwrap();
        for x in sampling::unit_vectors(11, 10, s.dim()) {
            let g = cm_gradient(&s, &x).unwrap();
            let (gfd, hfd) = fd::gradient_hessian(|u| cm_eval(&s, u).unwrap(), &x, 1e-3);
            for i in 0..x.len() {
                assert!((g[i] - gfd[i]).abs() < 1e-6, "{i}");
            }
            let lap = cm_laplacian(&s, &x).unwrap();
            assert!((lap - hfd.trace()).abs() < 1e-6);
        }
    }

    #[test]
    fn laplacian_coefficient_matches_multiplicities() {
        // (m2 - m1)/2 * g^2 |x|^{g-2} with g = 4
        for (m, k) in [(1, 3), (2, 2), (3, 2), (4, 2)] {
            let s = build_clifford_system(m, k).unwrap();
            let (m1, m2) = s.multiplicities().unwrap();
            let x = &sampling::gaussian_vectors(5, 1, s.dim())[0];
            let r2: f64 = x.iter().map(|v| v * v).sum();
            let expect = (m2 as f64 - m1 as f64) / 2.0 * 16.0 * r2;
            assert!((cm_laplacian(&s, x).unwrap() - expect).abs() < 1e-10 * r2);
        }
    }

    #[test]
    fn equations_hold_and_corruption_fails() {
        for (m, k) in [(1, 3), (2, 2)] {
            let s = build_clifford_system(m, k).unwrap();
            let r = verify_cartan_munzner(&s, 100, 1e-10, 1, Execution::Sequential).unwrap();
            assert!(r.passed(), "{}", r.to_json());
        }
        let mut s = build_clifford_system(2, 2).unwrap();
        let l = s.l;
        s.matrices[1][(0, l)] = -1;
        let r = verify_cartan_munzner(&s, 100, 1e-10, 1, Execution::Sequential).unwrap();
        assert!(!r.passed());
        let bad = build_clifford_system(1, 2).unwrap();
        assert!(matches!(
            verify_cartan_munzner(&bad, 10, 1e-10, 1, Execution::Sequential),
            Err(Error::InvalidMultiplicity(_))
        ));
    }

    #[test]
    fn homogeneous_of_degree_four() {
        let s = build_clifford_system(3, 2).unwrap();
        for x in sampling::gaussian_vectors(3, 20, s.dim()) {
            let f = cm_eval(&s, &x).unwrap();
            let x2: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
            assert!((cm_eval(&s, &x2).unwrap() - 16.0 * f).abs() < 1e-10 * (1.0 + f.abs()) * 16.0);
        }
    }
}
