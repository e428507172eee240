//! Shooting for perpendicular wall hits and direction sweeps.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{anchor_perpendicular, AnchoredHit, SolutionCurve, Termination, Wall};
use super::{classify, integrate, ClassifyTolerances, CurveClass, CurveState, IntegrateOptions};
use crate::angle;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::foliation::FoliationParams;
use crate::orbit_space::OrbitPoint;

/// Signed perpendicularity defect of `c` with respect to `wall`.
///
/// A wall event on `wall` gives `sin(alpha)` at the extrapolated wall point.
/// A curve that turns back before reaching the wall gives `sin(alpha)` at its
/// closest approach, which is `+-1` and has the sign of the side it turns to.
/// `None` when the curve never approaches `wall`.
pub fn wall_defect(c: &SolutionCurve, wall: Wall) -> Option<f64> {
    if let Termination::Wall {
        wall: w, alpha_at_wall, ..
    } = c.termination
    {
        if w == wall {
            return Some(angle::sin(alpha_at_wall));
        }
    }
    let p = &c.params;
    let dist = |st: &CurveState| match wall {
        Wall::Lower => st.theta,
        Wall::Upper => p.wedge_angle() - st.theta,
    };
    let (imin, _) = c
        .samples
        .iter()
        .enumerate()
        .min_by(|a, b| dist(a.1).total_cmp(&dist(b.1)))?;
    if imin == 0 || imin + 1 == c.samples.len() {
        return None;
    }
    Some(angle::sin(c.samples[imin].alpha).signum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootOptions {
    pub integrate: IntegrateOptions,
    pub classify: ClassifyTolerances,
    /// Bisection stops once `|defect|` drops below this.
    pub defect_tol: f64,
    /// A refined direction is kept only if re-integration gives a
    /// perpendicular hit with defect below this.
    pub verify_tol: f64,
    pub max_bisections: usize,
    /// Largest difference between the bisection limit and an anchored
    /// solution for the two to be identified.
    pub anchor_agreement: f64,
}

impl Default for ShootOptions {
    fn default() -> Self {
        Self {
            integrate: IntegrateOptions::default(),
            classify: ClassifyTolerances::default(),
            defect_tol: 1e-8,
            verify_tol: 1e-6,
            max_bisections: 200,
            anchor_agreement: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerpendicularHit {
    pub alpha: f64,
    pub wall: Wall,
    pub r_hit: f64,
    pub angle_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShootOutcome {
    /// Refined directions confirmed by forward re-integration.
    pub hits: Vec<PerpendicularHit>,
    /// Brackets that forward re-integration could not confirm, solved from
    /// the wall instead and agreeing with the bisection limit.
    pub anchored: Vec<AnchoredHit>,
    pub brackets: usize,
    pub diagnostics: Vec<String>,
}

fn start(p: &FoliationParams, p_m: OrbitPoint, alpha: f64) -> Result<CurveState> {
    let st = CurveState::new(0.0, p_m.r, p_m.theta, alpha);
    super::check_state(p, &st)?;
    Ok(st)
}

/// Scans `n_samples` directions over `window = (lo, hi)` (inclusive), brackets
/// sign changes of [`wall_defect`] for each wall and refines them by bisection.
pub fn shoot_perpendicular(
    p: &FoliationParams,
    h_tilde: f64,
    p_m: OrbitPoint,
    window: (f64, f64),
    n_samples: usize,
    opts: &ShootOptions,
    execution: Execution,
) -> Result<ShootOutcome> {
    start(p, p_m, 0.0)?;
    let mut out = ShootOutcome {
        hits: Vec::new(),
        anchored: Vec::new(),
        brackets: 0,
        diagnostics: Vec::new(),
    };
    let (lo, hi) = window;
    if !(hi > lo) || n_samples < 2 {
        out.diagnostics.push("empty window".into());
        return Ok(out);
    }
    let alphas: Vec<f64> = (0..n_samples)
        .map(|k| lo + (hi - lo) * k as f64 / (n_samples - 1) as f64)
        .collect();
    let run = |alpha: f64| -> Option<SolutionCurve> {
        integrate(p, h_tilde, start(p, p_m, alpha).ok()?, &opts.integrate).ok()
    };
    let curves = execution.map_slice(&alphas, |&a| run(a));

    let mut brackets = Vec::new();
    for wall in Wall::all() {
        let d: Vec<Option<f64>> = curves
            .iter()
            .map(|c| c.as_ref().and_then(|c| wall_defect(c, wall)))
            .collect();
        for k in 0..n_samples - 1 {
            if let (Some(a), Some(b)) = (d[k], d[k + 1]) {
                if a == 0.0 || a.signum() != b.signum() {
                    brackets.push((wall, alphas[k], alphas[k + 1], a));
                }
            }
        }
    }
    out.brackets = brackets.len();
    if brackets.is_empty() {
        out.diagnostics
            .push(format!("no sign change of the wall defect in [{lo}, {hi}]"));
        return Ok(out);
    }

    let refined = execution.map_slice(&brackets, |&(wall, a, b, da)| {
        refine(p, h_tilde, p_m, wall, a, b, da, opts, &run)
    });
    for r in refined {
        match r {
            Refined::Verified(hit) => out.hits.push(hit),
            Refined::Failed(msg) => out.diagnostics.push(msg),
            Refined::Unverified {
                wall,
                alpha,
                r_near,
                msg,
            } => {
                out.diagnostics.push(msg);
                match anchor_perpendicular(p, h_tilde, p_m, wall, r_near, &opts.integrate) {
                    Ok(Some(a)) if (a.alpha - alpha).abs() < opts.anchor_agreement => out.anchored.push(a),
                    Ok(Some(a)) => out.diagnostics.push(format!(
                        "{wall:?} anchored solve gives alpha = {:.12}, not the bracket limit",
                        a.alpha
                    )),
                    Ok(None) => out
                        .diagnostics
                        .push(format!("{wall:?} anchored curve never reaches p_M's ray")),
                    Err(e) => out.diagnostics.push(e.to_string()),
                }
            }
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    p: &FoliationParams,
    h_tilde: f64,
    p_m: OrbitPoint,
    wall: Wall,
    mut a: f64,
    mut b: f64,
    mut da: f64,
    opts: &ShootOptions,
    run: &(dyn Fn(f64) -> Option<SolutionCurve> + Sync),
) -> Refined {
    let mut best: Option<(f64, f64)> = None;
    for _ in 0..opts.max_bisections {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let Some(dm) = run(m).and_then(|c| wall_defect(&c, wall)) else {
            return Refined::Failed(format!("{wall:?} bracket at {a:.6}: defect undefined inside"));
        };
        // ties go to the latest midpoint, which sits deepest in the bracket
        if best.is_none_or(|(_, d)| dm.abs() <= d.abs()) {
            best = Some((m, dm));
        }
        if dm.abs() < opts.defect_tol {
            break;
        }
        if dm.signum() == da.signum() {
            a = m;
            da = dm;
        } else {
            b = m;
        }
    }
    let Some((alpha, _)) = best else {
        return Refined::Failed(format!("{wall:?} bracket at {a:.6} too narrow"));
    };
    let c = match start(p, p_m, alpha).and_then(|st| integrate(p, h_tilde, st, &opts.integrate)) {
        Ok(c) => c,
        Err(e) => return Refined::Failed(e.to_string()),
    };
    match classify(&c, &opts.classify) {
        CurveClass::HitsWallPerpendicular {
            wall: w,
            r_hit,
            angle_defect,
        } if w == wall && angle_defect < opts.verify_tol => Refined::Verified(PerpendicularHit {
            alpha,
            wall,
            r_hit,
            angle_defect,
        }),
        other => {
            let gap = |st: &CurveState| match wall {
                Wall::Lower => st.theta,
                Wall::Upper => p.wedge_angle() - st.theta,
            };
            let nearest = c
                .samples
                .iter()
                .min_by(|x, y| gap(x).total_cmp(&gap(y)))
                .copied()
                .unwrap_or(*c.first());
            Refined::Unverified {
                wall,
                alpha,
                r_near: nearest.r,
                msg: format!(
                    "{wall:?} bracket near alpha = {alpha:.12}: re-integration closes to \
                     {:.3e} rad of the wall and gives {}",
                    gap(&nearest),
                    other.kind()
                ),
            }
        }
    }
}

enum Refined {
    Verified(PerpendicularHit),
    Unverified {
        wall: Wall,
        alpha: f64,
        r_near: f64,
        msg: String,
    },
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub index: usize,
    pub alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<CurveClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub params: FoliationParams,
    pub h_tilde: f64,
    pub p_m: OrbitPoint,
    pub entries: Vec<SweepEntry>,
}

impl SweepOutcome {
    pub fn count(&self, kind: &str) -> usize {
        self.entries
            .iter()
            .filter(|e| e.class.as_ref().is_some_and(|c| c.kind() == kind))
            .count()
    }
}

/// Direction `k` of an `n`-direction sweep: `-pi + 2 pi k / n`.
pub fn sweep_direction(k: usize, n: usize) -> f64 {
    -PI + 2.0 * PI * k as f64 / n as f64
}

/// Integrates and classifies `n_dirs` equispaced directions from `p_m`.
/// Entries are ordered by direction index; a failed direction records its
/// error and the sweep carries on.
#[allow(clippy::too_many_arguments)]
pub fn sweep(
    p: &FoliationParams,
    h_tilde: f64,
    p_m: OrbitPoint,
    n_dirs: usize,
    iopts: &IntegrateOptions,
    tol: &ClassifyTolerances,
    execution: Execution,
) -> Result<SweepOutcome> {
    Ok(sweep_with_curves(p, h_tilde, p_m, n_dirs, iopts, tol, execution)?.0)
}

/// [`sweep`] that also returns the integrated curves (`None` where the
/// direction failed).
#[allow(clippy::too_many_arguments)]
pub fn sweep_with_curves(
    p: &FoliationParams,
    h_tilde: f64,
    p_m: OrbitPoint,
    n_dirs: usize,
    iopts: &IntegrateOptions,
    tol: &ClassifyTolerances,
    execution: Execution,
) -> Result<(SweepOutcome, Vec<Option<SolutionCurve>>)> {
    if n_dirs < 8 {
        return Err(Error::Domain(format!("sweep needs n_dirs >= 8, got {n_dirs}")));
    }
    start(p, p_m, 0.0)?;
    let runs = execution.map_range(n_dirs, |k| {
        let alpha = sweep_direction(k, n_dirs);
        match start(p, p_m, alpha).and_then(|st| integrate(p, h_tilde, st, iopts)) {
            Ok(c) => (
                SweepEntry {
                    index: k,
                    alpha,
                    class: Some(classify(&c, tol)),
                    error: None,
                },
                Some(c),
            ),
            Err(e) => (
                SweepEntry {
                    index: k,
                    alpha,
                    class: None,
                    error: Some(e.to_string()),
                },
                None,
            ),
        }
    });
    let (entries, curves) = runs.into_iter().unzip();
    Ok((
        SweepOutcome {
            params: *p,
            h_tilde,
            p_m,
            entries,
        },
        curves,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::validate_params;

    #[test]
    fn empty_window() {
        let p = validate_params(2, 1, 1).unwrap();
        let out = shoot_perpendicular(
            &p,
            0.0,
            OrbitPoint::new(1.0, 0.5),
            (1.0, 1.0),
            16,
            &ShootOptions::default(),
            Execution::Sequential,
        )
        .unwrap();
        assert!(out.hits.is_empty());
        assert_eq!(out.diagnostics.len(), 1);
    }

    #[test]
    fn sweep_smoke() {
        let p = validate_params(2, 1, 1).unwrap();
        let opts = IntegrateOptions {
            s_max: 5.0,
            ..Default::default()
        };
        let s = sweep(
            &p,
            0.0,
            OrbitPoint::new(1.0, 0.5),
            8,
            &opts,
            &ClassifyTolerances::default(),
            Execution::Sequential,
        )
        .unwrap();
        assert_eq!(s.entries.len(), 8);
        for (k, e) in s.entries.iter().enumerate() {
            assert_eq!(e.index, k);
            assert!(e.class.is_some() != e.error.is_some());
        }
        assert!(sweep(
            &p,
            0.0,
            OrbitPoint::new(1.0, 0.5),
            7,
            &opts,
            &ClassifyTolerances::default(),
            Execution::Sequential
        )
        .is_err());
    }
}
