use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbitsym::curve_flow::IntegrateOptions;

#[derive(Parser, Debug)]
#[command(
    name = "orbitsym",
    version,
    about = "Profile curves, Clifford systems and symmetry audits"
)]
pub struct Cli {
    /// Plain-text `key=value` file; keys are the long flags of the subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Run every batch on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Queries on the isoparametric foliation.
    #[command(subcommand)]
    Foliation(FoliationCommand),
    /// Profile curves in the orbit space.
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Builds and verifies an OT-FKM Clifford system.
    #[command(args_override_self = true)]
    Clifford(CliffordArgs),
    /// Symmetry audits on a built-in surface.
    #[command(args_override_self = true)]
    Audit(AuditArgs),
}

#[derive(Subcommand, Debug)]
pub enum FoliationCommand {
    /// Dimension, minimal cone angle and a table of the leaf mean curvature.
    #[command(args_override_self = true)]
    Info(InfoArgs),
}

#[derive(Subcommand, Debug)]
pub enum CurveCommand {
    /// Integrates one profile curve.
    #[command(args_override_self = true)]
    Shoot(ShootArgs),
    /// Integrates and classifies equispaced directions from one point.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct FoliationArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub g: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub m1: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub m2: i64,
}

#[derive(Args, Debug)]
pub struct InfoArgs {
    #[command(flatten)]
    pub foliation: FoliationArgs,
    /// Interior angles in the `h(theta)` table.
    #[arg(long, default_value_t = 9)]
    pub table: usize,
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct IntegratorArgs {
    #[arg(long, default_value_t = 100.0)]
    pub s_max: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub r_min: f64,
    #[arg(long, default_value_t = 1e3)]
    pub r_max: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub wall_eps: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub rtol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub atol: f64,
    #[arg(long, default_value_t = 0.02)]
    pub max_step_rel: f64,
    #[arg(long, default_value_t = 2_000_000)]
    pub max_steps: usize,
}

impl IntegratorArgs {
    pub fn options(&self) -> IntegrateOptions {
        IntegrateOptions {
            s_max: self.s_max,
            r_min: self.r_min,
            r_max: self.r_max,
            wall_eps: self.wall_eps,
            rtol: self.rtol,
            atol: self.atol,
            max_step_rel: self.max_step_rel,
            max_steps: self.max_steps,
            ..IntegrateOptions::default()
        }
    }
}

#[derive(Args, Debug)]
pub struct ShootArgs {
    #[command(flatten)]
    pub foliation: FoliationArgs,
    /// Normalised mean curvature of the hypersurface.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub h_tilde: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub r0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub theta0: f64,
    /// Initial direction, measured from d/dtheta.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "contact_angle")]
    pub alpha0: Option<f64>,
    /// Contact angle with the boundary sphere of radius `r0`.
    #[arg(long, allow_hyphen_values = true)]
    pub contact_angle: Option<f64>,
    /// Lift of the conormal: +1 or -1.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub orientation: i32,
    #[command(flatten)]
    pub integrator: IntegratorArgs,
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub foliation: FoliationArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub h_tilde: f64,
    /// Radius of the start point.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub r: f64,
    /// Angle of the start point; defaults to half the wedge.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 64, allow_hyphen_values = true)]
    pub n_dirs: i64,
    /// Also bracket and refine perpendicular wall hits.
    #[arg(long)]
    pub perpendicular: bool,
    #[command(flatten)]
    pub integrator: IntegratorArgs,
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CliffordArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub k: i64,
    /// Check the Cartan-Munzner equations at random points.
    #[arg(long)]
    pub verify: bool,
    /// Check invariance under the spin generators.
    #[arg(long)]
    pub spin: bool,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub spin_tol: f64,
    /// Writes the audit report.
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Writes the matrices of the system.
    #[arg(long, value_name = "FILE")]
    pub system: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// `max |Phi|` at interior sample points (entry `phi_interior`).
    Phi,
    /// Jacobi equation of order `r` for `Phi`.
    Jacobi,
    /// `Phi`, its conormal derivative and the contact angle along one face.
    Cauchy,
    /// Minkowski formula of order `r` with random directions.
    Minkowski,
    /// Helfrich Euler-Lagrange residual.
    HelfrichEl,
    /// Helfrich first variation against a finite difference of the energy.
    HelfrichVariation,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceArg {
    Lower,
    Upper,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    /// Surface spec file, or inline `name;key=value;...`.
    #[arg(long)]
    pub surface: String,
    /// `axis`, `tilt`, `plane:i,j` or `random:SEED`.
    #[arg(long, default_value = "axis")]
    pub generator: String,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "phi")]
    pub checks: Vec<Check>,
    /// Order for the Jacobi and Minkowski checks.
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Spontaneous curvature for the Helfrich checks.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Chart axis whose face carries the boundary for `cauchy`.
    #[arg(long, default_value_t = 0)]
    pub face_axis: usize,
    #[arg(long, value_enum, default_value = "upper")]
    pub face: FaceArg,
    /// Lift of the conormal at the face: +1 or -1.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub orientation: i32,
    /// Step of the energy difference in `helfrich-variation`.
    #[arg(long, default_value_t = 1e-4)]
    pub step: f64,
    /// Quadrature nodes per chart axis in `helfrich-variation`.
    #[arg(long, default_value_t = 48)]
    pub quadrature: usize,
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Writes curvature data at the sample points.
    #[arg(long, value_name = "FILE")]
    pub curvature: Option<PathBuf>,
}
