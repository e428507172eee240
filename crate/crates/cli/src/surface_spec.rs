//! Built-in surfaces selected by name and parameters.
//!
//! A spec is either a file of `key=value` lines (`#` comments) with a
//! `surface` key, or an inline string `name;key=value;...`.
//!
//! | surface     | keys (defaults)                                              |
//! |-------------|--------------------------------------------------------------|
//! | `plane`     | `n=2`                                                        |
//! | `sphere`    | `n=2`, `radius=1`                                            |
//! | `ellipsoid` | `axes=1,2,3`                                                 |
//! | `cap`       | `n=2`, `rho=1`, `psi_max=pi/3`, `height=0` or `boundary_radius` |
//! | `disk`      | `n=2`, `radius=1`, `height=0`                                |
//! | `cylinder`  | `n=2`, `rho=1`, `length=2`                                   |
//! | `torus`     | `n=2`, `big=2`, `small=0.5`                                  |
//! | `graph`     | `n=2`, `expr` in `u1..un`, `half_width=1`                    |
//!
//! Every surface also takes `orientation=1|-1`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use orbitsym::shape::{Ellipsoid, Flipped, Graph, ParamSurface, Plane, Revolution, Sphere};

use crate::error::{usage, CliError, CliResult};

pub type Surface = Arc<dyn ParamSurface>;

thread_local! {
    static BUILTINS: meval::Context<'static> = meval::Context::new();
}

struct Spec {
    name: String,
    values: BTreeMap<String, String>,
}

impl Spec {
    fn take(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    fn float(&mut self, key: &str, default: f64) -> CliResult<f64> {
        match self.take(key) {
            None => Ok(default),
            Some(v) => parse_float(key, &v),
        }
    }

    fn positive(&mut self, key: &str, default: f64) -> CliResult<f64> {
        let v = self.float(key, default)?;
        if !(v > 0.0 && v.is_finite()) {
            return usage(format!("{}: `{key}` must be positive, got {v}", self.name));
        }
        Ok(v)
    }

    fn dim(&mut self, min: usize) -> CliResult<usize> {
        let n = match self.take("n") {
            None => 2,
            Some(v) => v
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("{}: `n` must be an integer, got `{v}`", self.name)))?,
        };
        if n < min || n > 8 {
            return usage(format!("{}: `n` must be in {min}..=8, got {n}", self.name));
        }
        Ok(n)
    }

    fn finish(self) -> CliResult<()> {
        match self.values.keys().next() {
            Some(k) => usage(format!("{}: unknown key `{k}`", self.name)),
            None => Ok(()),
        }
    }
}

fn parse_float(key: &str, v: &str) -> CliResult<f64> {
    let x = meval::eval_str(v).map_err(|e| CliError::Usage(format!("`{key}`: cannot read `{v}`: {e}")))?;
    if !x.is_finite() {
        return usage(format!("`{key}` = {v} is not finite"));
    }
    Ok(x)
}

fn parse(spec: &str) -> CliResult<Spec> {
    let path = Path::new(spec);
    let (lines, inline): (Vec<String>, bool) = if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        (
            text.lines()
                .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
                .collect(),
            false,
        )
    } else {
        (spec.split(';').map(|l| l.trim().to_string()).collect(), true)
    };
    let mut values = BTreeMap::new();
    let mut name = None;
    for (i, line) in lines.iter().enumerate() {
        if line.is_empty() {
            continue;
        }
        let (k, v) = match line.split_once('=') {
            Some((k, v)) => (k.trim().replace('-', "_"), v.trim().to_string()),
            None if inline && i == 0 => ("surface".to_string(), line.clone()),
            None => return usage(format!("surface spec: expected key=value, got `{line}`")),
        };
        if k == "surface" {
            if name.replace(v).is_some() {
                return usage("surface spec: `surface` given twice");
            }
        } else if values.insert(k.clone(), v).is_some() {
            return usage(format!("surface spec: duplicate key `{k}`"));
        }
    }
    let Some(name) = name else {
        return usage(format!("surface spec `{spec}` names no surface"));
    };
    Ok(Spec { name, values })
}

fn graph(sp: &mut Spec) -> CliResult<Graph> {
    let n = sp.dim(1)?;
    let Some(text) = sp.take("expr") else {
        return usage("graph: `expr` is required");
    };
    let half = sp.positive("half_width", 1.0)?;
    let expr: meval::Expr = text
        .parse()
        .map_err(|e| CliError::Usage(format!("graph: cannot parse `{text}`: {e}")))?;
    let names: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
    let eval = move |u: &[f64]| -> Result<f64, meval::Error> {
        let vars: Vec<(&str, f64)> = names.iter().map(String::as_str).zip(u.iter().copied()).collect();
        BUILTINS.with(|b| expr.eval_with_context((vars, b)))
    };
    match eval(&vec![0.0; n]) {
        Ok(v) if v.is_finite() => {}
        Ok(v) => return usage(format!("graph: `{text}` is {v} at the origin")),
        Err(e) => return usage(format!("graph: `{text}`: {e}")),
    }
    Ok(Graph::new(n, text, move |u| eval(u).unwrap_or(f64::NAN), half))
}

pub fn load(spec: &str) -> CliResult<Surface> {
    let mut sp = parse(spec)?;
    let orientation = match sp.take("orientation").as_deref() {
        None | Some("1") | Some("+1") => 1,
        Some("-1") => -1,
        Some(other) => return usage(format!("orientation must be 1 or -1, got `{other}`")),
    };
    let s: Surface = match sp.name.as_str() {
        "plane" => Arc::new(Plane::new(sp.dim(1)?)),
        "sphere" => {
            let n = sp.dim(1)?;
            Arc::new(Sphere::new(n, sp.positive("radius", 1.0)?))
        }
        "ellipsoid" => {
            let axes = match sp.take("axes") {
                None => vec![1.0, 2.0, 3.0],
                Some(v) => v
                    .split(',')
                    .map(|a| parse_float("axes", a.trim()))
                    .collect::<CliResult<_>>()?,
            };
            if axes.len() < 2 || axes.len() > 9 || axes.iter().any(|a| *a <= 0.0) {
                return usage("ellipsoid: `axes` needs 2 to 9 positive lengths");
            }
            Arc::new(Ellipsoid::new(axes))
        }
        "cap" => {
            let n = sp.dim(2)?;
            let rho = sp.positive("rho", 1.0)?;
            let psi = sp.positive("psi_max", std::f64::consts::FRAC_PI_3)?;
            if psi > std::f64::consts::PI {
                return usage("cap: `psi_max` must be at most pi");
            }
            match sp.take("boundary_radius") {
                Some(v) => {
                    if sp.values.contains_key("height") {
                        return usage("cap: give `height` or `boundary_radius`, not both");
                    }
                    let big = parse_float("boundary_radius", &v)?;
                    if !(big >= rho * psi.sin() && big > 0.0) {
                        return usage(format!("cap: no sphere of radius {big} meets the cap boundary"));
                    }
                    Arc::new(Revolution::cap_on_sphere(n, rho, psi, big))
                }
                None => {
                    let height = sp.float("height", 0.0)?;
                    Arc::new(Revolution::cap(n, rho, height, psi))
                }
            }
        }
        "disk" => {
            let n = sp.dim(2)?;
            let radius = sp.positive("radius", 1.0)?;
            Arc::new(Revolution::disk(n, radius, sp.float("height", 0.0)?))
        }
        "cylinder" => {
            let n = sp.dim(2)?;
            let rho = sp.positive("rho", 1.0)?;
            Arc::new(Revolution::cylinder(n, rho, sp.positive("length", 2.0)?))
        }
        "torus" => {
            let n = sp.dim(2)?;
            let big = sp.positive("big", 2.0)?;
            let small = sp.positive("small", 0.5)?;
            if small >= big {
                return usage("torus: need small < big");
            }
            Arc::new(Revolution::torus(n, big, small))
        }
        "graph" => Arc::new(graph(&mut sp)?),
        other => return usage(format!("unknown surface `{other}`")),
    };
    sp.finish()?;
    Ok(if orientation < 0 { Arc::new(Flipped(s)) } else { s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbitsym::shape::mean_curvature;

    #[test]
    fn inline_specs() {
        let s = load("sphere;radius=2").unwrap();
        assert_eq!(s.dim(), 2);
        let u = [1.0, 0.5];
        assert!((mean_curvature(&s, &u).unwrap() - 0.5).abs() < 1e-9);
        let f = load("sphere;radius=2;orientation=-1").unwrap();
        assert!((mean_curvature(&f, &u).unwrap() + 0.5).abs() < 1e-9);
        assert_eq!(load("torus").unwrap().label(), "torus(n=2, big=2, small=0.5)");
        assert_eq!(load("cap;n=3;psi_max=pi/4").unwrap().dim(), 3);
    }

    #[test]
    fn graph_from_expression() {
        let g = load("graph;expr=0.5*(u1^2 + u2^2)").unwrap();
        assert_eq!(g.position(&[1.0, 2.0])[2], 2.5);
        let h = mean_curvature(&g, &[0.0, 0.0]).unwrap();
        assert!((h.abs() - 1.0).abs() < 1e-5, "{h}");
        assert!(load("graph;expr=u3").is_err());
        assert!(load("graph;expr=(").is_err());
        assert!(load("graph").is_err());
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in [
            "klein",
            "sphere;radius=-1",
            "sphere;colour=red",
            "torus;big=1;small=2",
            "cap;n=1",
            "cap;height=1;boundary_radius=2",
            "plane;n=x",
            "sphere;orientation=2",
            "ellipsoid;axes=1",
        ] {
            assert!(matches!(load(bad), Err(CliError::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn spec_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("cap.txt");
        std::fs::write(
            &p,
            "# cap on the unit sphere\nsurface = cap\nrho = 1\nboundary_radius = 1.5 # R\n",
        )
        .unwrap();
        let s = load(p.to_str().unwrap()).unwrap();
        let d = s.domain();
        let mut u = d.lo.clone();
        u[0] = d.hi[0];
        assert!((s.position(&u).norm() - 1.5).abs() < 1e-12);
    }
}
