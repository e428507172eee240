//! `orbitsym audit`.

use orbitsym::curve_flow::ConormalOrientation;
use orbitsym::sampling;
use orbitsym::shape::{curvature_data, minkowski_residual, Deformed, ParamSurface};
use orbitsym::symmetry_audit::{
    boundary_cauchy_check, helfrich_el_residual, helfrich_energy, helfrich_first_variation, jacobi_audit,
    normal_component, smooth_random_field, BoundaryData, ChartQuadrature, Face, SkewGenerator,
};
use orbitsym::{AuditEntry, AuditReport, Execution};

use crate::args::{AuditArgs, Check, FaceArg};
use crate::error::{usage, CliError, CliResult};
use crate::output::{emit_json, to_json, write_atomic};
use crate::surface_spec::{self, Surface};

/// `axis` turns `e_1` toward `e_2` and fixes `e_{n+1}`; `tilt` turns `e_1`
/// toward `e_{n+1}`.
pub fn generator(spec: &str, dim: usize) -> CliResult<SkewGenerator> {
    let plane = |i: usize, j: usize| SkewGenerator::rotation(dim, i, j).map_err(CliError::from);
    match spec.split_once(':') {
        None if spec == "axis" => plane(0, 1),
        None if spec == "tilt" => plane(0, dim - 1),
        Some(("plane", ij)) => {
            let idx: Vec<usize> = ij
                .split(',')
                .map(|v| v.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("generator `{spec}`: expected plane:i,j")))?;
            match idx[..] {
                [i, j] => plane(i, j),
                _ => usage(format!("generator `{spec}`: expected plane:i,j")),
            }
        }
        Some(("random", seed)) => match seed.trim().parse::<u64>() {
            Ok(seed) => Ok(SkewGenerator::random(dim, seed)),
            Err(_) => usage(format!("generator `{spec}`: expected random:SEED")),
        },
        _ => usage(format!("unknown generator `{spec}`")),
    }
}

fn face_point(s: &dyn ParamSurface, axis: usize, face: Face) -> Vec<f64> {
    let d = s.domain();
    let mut u: Vec<f64> = d.lo.iter().zip(&d.hi).map(|(a, b)| 0.5 * (a + b)).collect();
    u[axis] = if face == Face::Lower { d.lo[axis] } else { d.hi[axis] };
    u
}

fn boundary(s: &Surface, axis: usize, face: Face, orientation: ConormalOrientation) -> CliResult<BoundaryData> {
    if axis >= s.dim() {
        return usage(format!("face axis {axis} outside a {}-dimensional chart", s.dim()));
    }
    let radius = s.position(&face_point(&**s, axis, face)).norm();
    Ok(BoundaryData::new(s, axis, face, radius, orientation)?)
}

/// Largest distance between images of points spread over a face; zero on a
/// collapsed face such as a pole.
fn face_spread(s: &Surface, axis: usize, face: Face) -> f64 {
    let d = s.domain();
    let u0 = face_point(&**s, axis, face);
    let x0 = s.position(&u0);
    let mut worst = 0.0f64;
    for k in (0..d.dim()).filter(|k| *k != axis) {
        for t in [0.1, 0.37, 0.9] {
            let mut u = u0.clone();
            u[k] = d.lo[k] + t * (d.hi[k] - d.lo[k]);
            worst = worst.max((s.position(&u) - &x0).norm());
        }
    }
    worst
}

/// Every non-collapsed chart face; each must lie on a sphere about the origin.
fn all_faces(s: &Surface) -> CliResult<Vec<BoundaryData>> {
    let mut faces = Vec::new();
    let d = s.domain().clone();
    for axis in (0..d.dim()).filter(|a| !d.periodic[*a]) {
        for face in [Face::Lower, Face::Upper] {
            let size = 1.0 + s.position(&face_point(&**s, axis, face)).norm();
            if face_spread(s, axis, face) <= 1e-12 * size {
                continue;
            }
            match boundary(s, axis, face, ConormalOrientation::Positive) {
                Ok(b) => faces.push(b),
                Err(_) => {
                    return usage(format!(
                        "helfrich-variation needs every chart face of {} on a sphere about the origin",
                        s.label()
                    ))
                }
            }
        }
    }
    Ok(faces)
}

fn helfrich_variation(s: &Surface, a: &AuditArgs, exec: Execution) -> CliResult<AuditEntry> {
    if a.step.is_nan() || a.step <= 0.0 {
        return usage("--step must be positive");
    }
    let faces = all_faces(s)?;
    let field = smooth_random_field(a.seed, s.domain(), s.dim() + 1, 2);
    let analytic = helfrich_first_variation(s, a.c, &*field, &faces, a.quadrature, exec)?;
    let quad = ChartQuadrature::new(s.domain(), a.quadrature);
    let energy = |t: f64| helfrich_energy(&Deformed::new(s.clone(), field.clone(), t), a.c, &quad, exec);
    let fd = (energy(a.step)? - energy(-a.step)?) / (2.0 * a.step);
    let rel = (analytic - fd).abs() / fd.abs().max(analytic.abs()).max(1e-12);
    Ok(AuditEntry::from_residuals("helfrich_first_variation", &[rel], a.tol))
}

pub fn run(a: &AuditArgs, exec: Execution) -> CliResult<bool> {
    let s = surface_spec::load(&a.surface)?;
    let ambient = s.dim() + 1;
    let phi = generator(&a.generator, ambient)?;
    let orientation = ConormalOrientation::from_sign(a.orientation)?;
    if a.samples == 0 {
        return usage("--samples must be positive");
    }
    let points = s.domain().sample(a.seed, a.samples, 0.05);
    let mut report = AuditReport::new(format!("{} under {}", s.label(), a.generator)).with_seed(a.seed);
    let mut done = Vec::new();
    for &check in &a.checks {
        if done.contains(&check) {
            continue;
        }
        done.push(check);
        match check {
            Check::Phi => {
                let v: Result<Vec<f64>, _> = exec
                    .map_slice(&points, |u| normal_component(&s, &phi, u))
                    .into_iter()
                    .collect();
                report.push(AuditEntry::from_residuals("phi_interior", &v?, a.tol));
            }
            Check::Jacobi => report.extend(jacobi_audit(&s, &phi, &points, a.r, a.tol, exec)?),
            Check::Cauchy => {
                let face = match a.face {
                    FaceArg::Lower => Face::Lower,
                    FaceArg::Upper => Face::Upper,
                };
                let b = boundary(&s, a.face_axis, face, orientation)?;
                report.extend(boundary_cauchy_check(&s, &b, &phi, a.samples, a.tol)?);
            }
            Check::Minkowski => {
                let dirs = sampling::unit_vectors(a.seed.wrapping_add(1), points.len(), ambient);
                let idx: Vec<usize> = (0..points.len()).collect();
                let v: Result<Vec<f64>, _> = exec
                    .map_slice(&idx, |&k| minkowski_residual(&s, &points[k], a.r, &dirs[k]))
                    .into_iter()
                    .collect();
                report.push(AuditEntry::from_residuals(format!("minkowski_r{}", a.r), &v?, a.tol));
            }
            Check::HelfrichEl => {
                let v: Result<Vec<f64>, _> = exec
                    .map_slice(&points, |u| helfrich_el_residual(&s, a.c, u))
                    .into_iter()
                    .collect();
                report.push(AuditEntry::from_residuals("helfrich_el", &v?, a.tol));
            }
            Check::HelfrichVariation => report.push(helfrich_variation(&s, a, exec)?),
        }
    }
    if let Some(p) = &a.curvature {
        let data: Result<Vec<_>, _> = points.iter().map(|u| curvature_data(&s, u)).collect();
        write_atomic(p, &to_json(&data?))?;
    }
    emit_json(&to_json(&report), a.json.as_deref())?;
    Ok(report.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        let g = generator("axis", 3).unwrap();
        assert_eq!(g.matrix()[(1, 0)], 1.0);
        let t = generator("tilt", 4).unwrap();
        assert_eq!(t.matrix()[(3, 0)], 1.0);
        assert_eq!(generator("plane:2,1", 3).unwrap().matrix()[(1, 2)], 1.0);
        assert_eq!(generator("random:3", 3).unwrap(), SkewGenerator::random(3, 3));
        for bad in ["spin", "plane:1", "plane:0,0", "plane:0,7", "random:x"] {
            assert!(generator(bad, 3).is_err(), "{bad}");
        }
    }

    #[test]
    fn faces_of_a_cap_skip_the_pole() {
        let s = surface_spec::load("cap;boundary_radius=1.5").unwrap();
        let faces = all_faces(&s).unwrap();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].face, Face::Upper);
        assert!(all_faces(&surface_spec::load("torus").unwrap()).unwrap().is_empty());
        assert!(all_faces(&surface_spec::load("plane").unwrap()).is_err());
    }
}
