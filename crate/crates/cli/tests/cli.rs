use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn orbitsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&o.stdout),
            String::from_utf8_lossy(&o.stderr)
        )
    })
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn entry_names(report: &Value) -> Vec<String> {
    report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap().to_string())
        .collect()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn foliation_info() {
    let o = orbitsym(&["foliation", "info", "--g", "2", "--m1", "2", "--m2", "6"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    let tc = v["theta_c"].as_f64().unwrap();
    assert!((tc - std::f64::consts::FRAC_PI_6).abs() < 1e-12);
    assert_eq!(v["n"], 9);
    assert_eq!(v["table"].as_array().unwrap().len(), 9);

    let o = orbitsym(&["foliation", "info", "--g", "4", "--m1", "2", "--m2", "2"]);
    assert_eq!(json(&o)["n"], 9);

    let o = orbitsym(&["foliation", "info", "--g", "5", "--m1", "2", "--m2", "6"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("InvalidG"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["frobnicate"],
        vec!["foliation", "info", "--g", "2"],
        vec!["clifford", "--m", "x", "--k", "2"],
        vec![
            "curve", "shoot", "--g", "2", "--m1", "2", "--m2", "6", "--theta0", "0.5",
        ],
        vec!["audit", "--surface", "plane", "--checks", "everything"],
    ] {
        assert_eq!(code(&orbitsym(&args)), 2, "{args:?}");
    }
    let o = orbitsym(&["--help"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn curve_shoot_cone_ray() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ray.csv");
    let svg = dir.path().join("ray.svg");
    let o = orbitsym(&[
        "curve",
        "shoot",
        "--g",
        "2",
        "--m1",
        "2",
        "--m2",
        "6",
        "--theta0",
        "0.5235987755982988",
        "--alpha0",
        "-1.5707963267948966",
        "--csv",
        p(&csv),
        "--svg",
        p(&svg),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)["classification"]["class"], "ToOrigin");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("s,r,theta,alpha,x,y"));
    assert!(text.lines().skip(1).all(|l| l.split(',').count() == 6));
    let pic = std::fs::read_to_string(&svg).unwrap();
    assert!(pic.contains(r#"version="1.1""#));
    assert!(pic.contains("stroke-dasharray"));
    assert!(pic.contains("<polyline"));
}

#[test]
fn curve_shoot_from_contact_angle() {
    let o = orbitsym(&[
        "curve",
        "shoot",
        "--g",
        "2",
        "--m1",
        "2",
        "--m2",
        "6",
        "--r0",
        "1",
        "--theta0",
        "0.7853981633974483",
        "--contact-angle",
        "1.5707963267948966",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    let alpha = v["initial"]["alpha"].as_f64().unwrap();
    assert!((alpha - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    let class = v["classification"]["class"].as_str().unwrap();
    assert!(["HitsWallPerpendicular", "AsymptoticToCone", "ToOrigin", "Undetermined"].contains(&class));
}

#[test]
fn curve_shoot_bad_theta() {
    for theta in ["0", "1.5707963267948966", "2", "-0.1"] {
        let o = orbitsym(&[
            "curve", "shoot", "--g", "2", "--m1", "2", "--m2", "6", "--theta0", theta, "--alpha0", "0",
        ]);
        assert_eq!(code(&o), 2, "theta0 = {theta}");
    }
}

#[test]
fn curve_sweep() {
    let o = orbitsym(&["curve", "sweep", "--g", "2", "--m1", "2", "--m2", "6", "--n-dirs", "0"]);
    assert_eq!(code(&o), 2);

    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("cmc.svg");
    let o = orbitsym(&[
        "curve",
        "sweep",
        "--g",
        "4",
        "--m1",
        "2",
        "--m2",
        "2",
        "--h-tilde",
        "1",
        "--n-dirs",
        "16",
        "--svg",
        p(&svg),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["entries"].as_array().unwrap().len(), 16);
    let total: u64 = v["counts"]
        .as_object()
        .unwrap()
        .values()
        .map(|c| c.as_u64().unwrap())
        .sum();
    assert_eq!(total, 16);
    let pic = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(pic.matches("<polyline").count(), 16);
}

#[test]
fn minimal_sweep_has_at_most_one_origin_curve() {
    let o = orbitsym(&[
        "curve",
        "sweep",
        "--g",
        "2",
        "--m1",
        "2",
        "--m2",
        "6",
        "--r",
        "1",
        "--theta",
        "0.7853981633974483",
        "--n-dirs",
        "64",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert!(v["counts"]["ToOrigin"].as_u64().unwrap_or(0) <= 1, "{}", v["counts"]);
}

#[test]
fn clifford_reports() {
    let o = orbitsym(&["clifford", "--m", "2", "--k", "2", "--verify"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["pass"] == true));
    for e in v["entries"].as_array().unwrap() {
        let keys: Vec<&String> = e.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["max", "n_samples", "name", "pass", "rms", "tolerance"]);
    }
    assert!(entry_names(&v).contains(&"laplacian".to_string()));
    assert!(!entry_names(&v).iter().any(|n| n.starts_with("spin")));

    let o = orbitsym(&["clifford", "--m", "2", "--k", "2", "--spin"]);
    assert_eq!(code(&o), 0);
    assert!(entry_names(&json(&o)).contains(&"spin_invariance".to_string()));

    let o = orbitsym(&["clifford", "--m", "0", "--k", "2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn clifford_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let system = dir.path().join("system.json");
    let o = orbitsym(&[
        "clifford",
        "--m",
        "1",
        "--k",
        "3",
        "--verify",
        "--spin",
        "--json",
        p(&report),
        "--system",
        p(&system),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r, json(&o));
    assert!(entry_names(&r).contains(&"embedding_invariance".to_string()));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&system).unwrap()).unwrap();
    assert_eq!(s["l"], 3);
}

#[test]
fn audit_cap_cauchy_data() {
    let o = orbitsym(&[
        "audit",
        "--surface",
        "cap;boundary_radius=1.5",
        "--generator",
        "axis",
        "--checks",
        "phi,cauchy",
        "--tol",
        "1e-6",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let names = entry_names(&json(&o));
    for n in [
        "phi_interior",
        "phi",
        "conormal_derivative_phi",
        "contact_angle_orbit_variation",
    ] {
        assert!(names.contains(&n.to_string()), "{names:?}");
    }

    let o = orbitsym(&[
        "audit",
        "--surface",
        "cap;boundary_radius=1.5",
        "--generator",
        "tilt",
        "--checks",
        "cauchy",
        "--tol",
        "1e-6",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["entries"][0]["pass"], false);
}

#[test]
fn audit_torus_helfrich_variation() {
    let o = orbitsym(&[
        "audit",
        "--surface",
        "torus",
        "--checks",
        "helfrich-variation",
        "--c",
        "0.3",
        "--tol",
        "1e-3",
        "--seed",
        "4",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn audit_rejects_bad_input() {
    assert_eq!(code(&orbitsym(&["audit", "--surface", "klein"])), 2);
    assert_eq!(code(&orbitsym(&["audit", "--surface", "sphere;radius=0"])), 2);
    assert_eq!(
        code(&orbitsym(&["audit", "--surface", "sphere", "--generator", "spin"])),
        2
    );
    // a non-CMC chart has no Jacobi audit
    let o = orbitsym(&["audit", "--surface", "ellipsoid", "--checks", "jacobi"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("NotCMC"), "{}", stderr(&o));
}

#[test]
fn surface_spec_file_and_curvature_dump() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("cyl.txt");
    std::fs::write(&spec, "# unit cylinder\nsurface=cylinder\nrho=1\nlength=2\n").unwrap();
    let curv = dir.path().join("curv.json");
    let o = orbitsym(&[
        "audit",
        "--surface",
        p(&spec),
        "--generator",
        "plane:0,2",
        "--checks",
        "jacobi",
        "--samples",
        "10",
        "--curvature",
        p(&curv),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let c: Value = serde_json::from_str(&std::fs::read_to_string(&curv).unwrap()).unwrap();
    assert_eq!(c.as_array().unwrap().len(), 10);
    assert!((c[0]["norm_a2"].as_f64().unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# the Figure 2 foliation\ng = 2\nm1 = 2\nm2 = 6\n").unwrap();
    let o = orbitsym(&["foliation", "info", "--config", p(&cfg)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)["m2"], 6);

    let o = orbitsym(&["foliation", "info", "--config", p(&cfg), "--m2", "2"]);
    assert_eq!(json(&o)["m2"], 2);

    std::fs::write(&cfg, "g=2\nm1=2\nm2=6\ncolour=blue\n").unwrap();
    let o = orbitsym(&["foliation", "info", "--config", p(&cfg)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("colour"));

    let missing = dir.path().join("missing.cfg");
    assert_eq!(code(&orbitsym(&["foliation", "info", "--config", p(&missing)])), 2);
}

fn run_outputs(dir: &Path, tag: &str, extra: &[&str]) -> Vec<Vec<u8>> {
    let f = |name: &str| dir.join(format!("{tag}-{name}"));
    let shoot = orbitsym(&[
        "curve",
        "shoot",
        "--g",
        "4",
        "--m1",
        "2",
        "--m2",
        "2",
        "--h-tilde",
        "1",
        "--theta0",
        "0.4",
        "--alpha0",
        "0.3",
        "--csv",
        p(&f("c.csv")),
        "--svg",
        p(&f("c.svg")),
        "--json",
        p(&f("c.json")),
    ]);
    assert_eq!(code(&shoot), 0);
    let mut sweep_args = vec!["curve", "sweep", "--g", "2", "--m1", "2", "--m2", "6", "--n-dirs", "16"];
    let (svg, js) = (f("s.svg"), f("s.json"));
    sweep_args.extend(["--svg", p(&svg), "--json", p(&js)]);
    sweep_args.extend(extra);
    assert_eq!(code(&orbitsym(&sweep_args)), 0);
    let aj = f("a.json");
    let mut audit_args = vec![
        "audit",
        "--surface",
        "torus",
        "--generator",
        "random:9",
        "--checks",
        "phi,minkowski",
        "--seed",
        "17",
        "--json",
        p(&aj),
    ];
    audit_args.extend(extra);
    assert!(code(&orbitsym(&audit_args)) <= 1);
    let mut cl_args = vec![
        "clifford", "--m", "3", "--k", "2", "--verify", "--spin", "--seed", "5", "--json",
    ];
    let cl = f("k.json");
    cl_args.push(p(&cl));
    cl_args.extend(extra);
    assert_eq!(code(&orbitsym(&cl_args)), 0);
    ["c.csv", "c.svg", "c.json", "s.svg", "s.json", "a.json", "k.json"]
        .iter()
        .map(|n| std::fs::read(f(n)).unwrap())
        .collect()
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_outputs(dir.path(), "a", &[]);
    let b = run_outputs(dir.path(), "b", &[]);
    let c = run_outputs(dir.path(), "c", &["--sequential"]);
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert!(a.iter().all(|bytes| !bytes.is_empty()));
}
