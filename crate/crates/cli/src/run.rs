//! Subcommand bodies. Each returns whether every audited quantity passed.

use std::collections::BTreeMap;

use serde::Serialize;

use orbitsym::clifford::{
    build_clifford_system, verify_cartan_munzner, verify_clifford, verify_embedding_invariance, verify_spin_invariance,
};
use orbitsym::curve_flow::{
    classify, initial_state_from_contact, integrate, shoot_perpendicular, sweep_with_curves, ClassifyTolerances,
    ConormalOrientation, CurveClass, CurveState, ShootOptions, ShootOutcome, SolutionCurve, SweepEntry, Termination,
};
use orbitsym::orbit_space::OrbitPoint;
use orbitsym::{AuditReport, Error, Execution, FoliationParams};

use crate::args::{
    Cli, CliffordArgs, Command, CurveCommand, FoliationArgs, FoliationCommand, InfoArgs, ShootArgs, SweepArgs,
};
use crate::error::{usage, CliResult};
use crate::output::{emit_json, to_json, write_atomic};
use crate::svg::{self, Plot, Trace};

pub fn dispatch(cli: Cli) -> CliResult<bool> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Foliation(FoliationCommand::Info(a)) => foliation_info(&a),
        Command::Curve(CurveCommand::Shoot(a)) => curve_shoot(&a),
        Command::Curve(CurveCommand::Sweep(a)) => curve_sweep(&a, exec),
        Command::Clifford(a) => clifford(&a, exec),
        Command::Audit(a) => crate::audit::run(&a, exec),
    }
}

fn params(a: &FoliationArgs) -> CliResult<FoliationParams> {
    Ok(FoliationParams::new(a.g, a.m1, a.m2)?)
}

#[derive(Serialize)]
struct TableRow {
    theta: f64,
    h: f64,
    volume: f64,
}

#[derive(Serialize)]
struct Info {
    g: u32,
    m1: u32,
    m2: u32,
    n: u32,
    ambient_dim: u32,
    wedge_angle: f64,
    theta_c: f64,
    table: Vec<TableRow>,
}

fn foliation_info(a: &InfoArgs) -> CliResult<bool> {
    let p = params(&a.foliation)?;
    let w = p.wedge_angle();
    let mut table = Vec::with_capacity(a.table);
    for k in 0..a.table {
        let theta = w * (k + 1) as f64 / (a.table + 1) as f64;
        table.push(TableRow {
            theta,
            h: p.spherical_mean_curvature(theta)?,
            volume: p.leaf_volume_profile(theta)?,
        });
    }
    let info = Info {
        g: p.g,
        m1: p.m1,
        m2: p.m2,
        n: p.n,
        ambient_dim: p.ambient_dim,
        wedge_angle: w,
        theta_c: p.minimal_cone_angle()?,
        table,
    };
    emit_json(&to_json(&info), a.json.as_deref())?;
    Ok(true)
}

fn trace(c: &SolutionCurve, class: &CurveClass) -> Trace {
    Trace {
        points: c.samples.iter().map(CurveState::to_cartesian).collect(),
        class: class.kind().to_string(),
    }
}

#[derive(Serialize)]
struct ShootReport {
    params: FoliationParams,
    h_tilde: f64,
    initial: CurveState,
    last: CurveState,
    termination: Termination,
    n_samples: usize,
    max_speed_defect: f64,
    classification: CurveClass,
}

fn curve_shoot(a: &ShootArgs) -> CliResult<bool> {
    let p = params(&a.foliation)?;
    let init = match (a.alpha0, a.contact_angle) {
        (Some(alpha), None) => {
            let st = CurveState::new(0.0, a.r0, a.theta0, alpha);
            if !(st.is_interior(&p) && alpha.is_finite()) {
                return Err(Error::Domain(format!(
                    "start (r0 = {}, theta0 = {}, alpha0 = {alpha}) not interior to the wedge (0, pi/{})",
                    a.r0, a.theta0, p.g
                ))
                .into());
            }
            st
        }
        (None, Some(c)) => {
            let o = ConormalOrientation::from_sign(a.orientation)?;
            initial_state_from_contact(&p, a.r0, a.theta0, c, o)?
        }
        _ => return usage("give one of --alpha0 or --contact-angle"),
    };
    let c = integrate(&p, a.h_tilde, init, &a.integrator.options())?;
    let class = classify(&c, &ClassifyTolerances::default());
    if let Some(path) = &a.csv {
        write_atomic(path, &c.to_csv())?;
    }
    if let Some(path) = &a.svg {
        let plot = Plot {
            params: &p,
            title: format!("g={} m1={} m2={} h~={}: {}", p.g, p.m1, p.m2, a.h_tilde, class.kind()),
            traces: vec![trace(&c, &class)],
            marker: Some(init.to_cartesian()),
        };
        write_atomic(path, &svg::render(&plot))?;
    }
    let report = ShootReport {
        params: p,
        h_tilde: a.h_tilde,
        initial: init,
        last: *c.last(),
        termination: c.termination,
        n_samples: c.samples.len(),
        max_speed_defect: c.max_speed_defect,
        classification: class,
    };
    emit_json(&to_json(&report), a.json.as_deref())?;
    Ok(true)
}

#[derive(Serialize)]
struct SweepReport {
    params: FoliationParams,
    h_tilde: f64,
    p_m: OrbitPoint,
    n_dirs: usize,
    counts: BTreeMap<String, usize>,
    entries: Vec<SweepEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    perpendicular: Option<ShootOutcome>,
}

fn curve_sweep(a: &SweepArgs, exec: Execution) -> CliResult<bool> {
    let p = params(&a.foliation)?;
    if a.n_dirs <= 0 {
        return usage(format!("--n-dirs must be positive, got {}", a.n_dirs));
    }
    let n_dirs = a.n_dirs as usize;
    let p_m = OrbitPoint::new(a.r, a.theta.unwrap_or(0.5 * p.wedge_angle()));
    let iopts = a.integrator.options();
    let (outcome, curves) =
        sweep_with_curves(&p, a.h_tilde, p_m, n_dirs, &iopts, &ClassifyTolerances::default(), exec)?;
    let mut counts = BTreeMap::new();
    for e in &outcome.entries {
        let kind = e.class.as_ref().map_or("Failed", |c| c.kind());
        *counts.entry(kind.to_string()).or_insert(0) += 1;
    }
    let perpendicular = if a.perpendicular {
        let opts = ShootOptions {
            integrate: iopts,
            ..ShootOptions::default()
        };
        let window = (-std::f64::consts::PI, std::f64::consts::PI);
        Some(shoot_perpendicular(
            &p,
            a.h_tilde,
            p_m,
            window,
            n_dirs + 1,
            &opts,
            exec,
        )?)
    } else {
        None
    };
    if let Some(path) = &a.svg {
        let traces = outcome
            .entries
            .iter()
            .zip(&curves)
            .filter_map(|(e, c)| Some(trace(c.as_ref()?, e.class.as_ref()?)))
            .collect();
        let plot = Plot {
            params: &p,
            title: format!(
                "g={} m1={} m2={} h~={}: {} directions from ({}, {:.4})",
                p.g, p.m1, p.m2, a.h_tilde, n_dirs, p_m.r, p_m.theta
            ),
            traces,
            marker: Some(p_m.to_cartesian()),
        };
        write_atomic(path, &svg::render(&plot))?;
    }
    let report = SweepReport {
        params: p,
        h_tilde: a.h_tilde,
        p_m,
        n_dirs,
        counts,
        entries: outcome.entries,
        perpendicular,
    };
    emit_json(&to_json(&report), a.json.as_deref())?;
    Ok(true)
}

/// Flow times for the spin checks.
const SPIN_TIMES: [f64; 8] = [0.1, 0.35, 0.7, 1.0, 1.5, 2.2, 3.0, 4.5];

fn clifford(a: &CliffordArgs, exec: Execution) -> CliResult<bool> {
    let sys = build_clifford_system(a.m, a.k)?;
    if a.samples == 0 {
        return usage("--samples must be positive");
    }
    let mut report = AuditReport::new(format!("clifford m={} k={} l={}", sys.m, sys.k, sys.l)).with_seed(a.seed);
    report.extend(verify_clifford(&sys));
    if a.verify {
        report.extend(verify_cartan_munzner(&sys, a.samples, a.tol, a.seed, exec)?);
    }
    if a.spin {
        report.extend(verify_spin_invariance(
            &sys,
            a.samples,
            &SPIN_TIMES,
            a.spin_tol,
            a.seed,
            exec,
        ));
        if sys.m == 1 && sys.l >= 2 {
            report.extend(verify_embedding_invariance(
                &sys,
                0.3,
                a.samples,
                &SPIN_TIMES,
                a.spin_tol,
                a.seed,
            )?);
        }
    }
    if let Some(path) = &a.system {
        write_atomic(path, &sys.to_json())?;
    }
    emit_json(&to_json(&report), a.json.as_deref())?;
    Ok(report.passed())
}
