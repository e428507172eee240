//! Self-contained SVG 1.1 plots of the wedge `0 <= theta <= pi/g` in
//! Cartesian coordinates `(r cos theta, r sin theta)`.

use std::fmt::Write;

use orbitsym::FoliationParams;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 36.0;
const TITLE: f64 = 28.0;

pub struct Trace {
    /// Cartesian points in the wedge.
    pub points: Vec<(f64, f64)>,
    pub class: String,
}

pub struct Plot<'a> {
    pub params: &'a FoliationParams,
    pub title: String,
    pub traces: Vec<Trace>,
    pub marker: Option<(f64, f64)>,
}

pub fn class_colour(class: &str) -> &'static str {
    match class {
        "ToOrigin" => "#d62728",
        "HitsWallPerpendicular" => "#1f77b4",
        "AsymptoticToCone" => "#2ca02c",
        "AsymptoticLine" => "#9467bd",
        "Undetermined" => "#7f7f7f",
        _ => "#000000",
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Radius of the drawn sector: the data extent, at most six times the
/// largest start radius.
fn view_radius(plot: &Plot) -> f64 {
    let norm = |p: &(f64, f64)| p.0.hypot(p.1);
    let start = plot
        .traces
        .iter()
        .filter_map(|t| t.points.first().map(norm))
        .chain(plot.marker.as_ref().map(norm))
        .fold(0.0f64, f64::max);
    let extent = plot
        .traces
        .iter()
        .flat_map(|t| t.points.iter().map(norm))
        .filter(|r| r.is_finite())
        .fold(start, f64::max);
    let r = if start > 0.0 { extent.min(6.0 * start) } else { extent };
    if r > 0.0 {
        r * 1.05
    } else {
        1.0
    }
}

pub fn render(plot: &Plot) -> String {
    let w = plot.params.wedge_angle();
    let big = view_radius(plot);
    let (sw, cw) = w.sin_cos();
    let xmin = (big * cw).min(0.0);
    let xmax = big;
    let ymax = if w >= std::f64::consts::FRAC_PI_2 {
        big
    } else {
        big * sw
    };
    let scale = (WIDTH - 2.0 * MARGIN) / (xmax - xmin);
    let height = (ymax * scale + 2.0 * MARGIN + TITLE).ceil();
    let tx = |x: f64| MARGIN + (x - xmin) * scale;
    let ty = |y: f64| height - MARGIN - y * scale;
    let pt = |x: f64, y: f64| format!("{},{}", num(tx(x)), num(ty(y)));

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(WIDTH),
        num(height),
        num(WIDTH),
        num(height)
    );
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        num(WIDTH),
        num(height)
    );
    let (ex, ey) = (big * cw, big * sw);
    let sector = format!(
        "M {} L {} A {} {} 0 0 0 {} Z",
        pt(0.0, 0.0),
        pt(big, 0.0),
        num(big * scale),
        num(big * scale),
        pt(ex, ey)
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="wedge"><path d="{sector}"/></clipPath></defs>"#
    );
    let _ = writeln!(
        s,
        r##"<path d="{sector}" fill="#f7f7f2" stroke="#333333" stroke-width="1.5"/>"##
    );
    let _ = writeln!(
        s,
        r##"<text x="{}" y="{}" font-family="sans-serif" font-size="14" fill="#000000">{}</text>"##,
        num(MARGIN),
        num(TITLE - 8.0),
        escape(&plot.title)
    );
    let label = |s: &mut String, x: f64, y: f64, text: &str| {
        let _ = writeln!(
            s,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="#333333">{}</text>"##,
            num(tx(x)),
            num(ty(y)),
            escape(text)
        );
    };
    label(&mut s, 0.8 * big, -0.04 * big, "θ = 0");
    label(&mut s, 0.85 * ex, 0.85 * ey, &format!("θ = π/{}", plot.params.g));

    if let Ok(tc) = plot.params.minimal_cone_angle() {
        let (st, ct) = tc.sin_cos();
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555555" stroke-width="1" stroke-dasharray="6,4"/>"##,
            num(tx(0.0)),
            num(ty(0.0)),
            num(tx(big * ct)),
            num(ty(big * st))
        );
        label(&mut s, 0.6 * big * ct, 0.6 * big * st + 0.02 * big, "θ_c");
    }

    let _ = writeln!(s, r#"<g clip-path="url(#wedge)" fill="none" stroke-width="1.2">"#);
    for t in &plot.traces {
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for &(x, y) in &t.points {
            if !(x.is_finite() && y.is_finite()) {
                break;
            }
            let q = (tx(x), ty(y));
            let far = x.hypot(y) > 1.5 * big;
            let keep = pts.last().is_none_or(|p| (p.0 - q.0).hypot(p.1 - q.1) >= 0.5);
            if keep || far {
                pts.push(q);
            }
            if far {
                break;
            }
        }
        if let (Some(&last), Some(&(x, y))) = (pts.last(), t.points.last()) {
            let q = (tx(x), ty(y));
            if x.hypot(y) <= 1.5 * big && last != q {
                pts.push(q);
            }
        }
        if pts.len() < 2 {
            continue;
        }
        let list: Vec<String> = pts.iter().map(|p| format!("{},{}", num(p.0), num(p.1))).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" stroke="{}"/>"#,
            list.join(" "),
            class_colour(&t.class)
        );
    }
    let _ = writeln!(s, "</g>");

    if let Some((x, y)) = plot.marker {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="3.5" fill="#000000"/>"##,
            num(tx(x)),
            num(ty(y))
        );
    }

    let mut classes: Vec<(&str, usize)> = Vec::new();
    for t in &plot.traces {
        match classes.iter_mut().find(|(c, _)| *c == t.class) {
            Some(e) => e.1 += 1,
            None => classes.push((&t.class, 1)),
        }
    }
    classes.sort();
    for (i, (c, k)) in classes.iter().enumerate() {
        let y = TITLE + 8.0 + 16.0 * i as f64;
        let x = WIDTH - MARGIN - 190.0;
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2"/>"#,
            num(x),
            num(y),
            num(x + 18.0),
            num(y),
            class_colour(c)
        );
        let _ = writeln!(
            s,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="#000000">{} ({})</text>"##,
            num(x + 24.0),
            num(y + 4.0),
            c,
            k
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbitsym::foliation::validate_params;

    fn plot(p: &FoliationParams) -> String {
        render(&Plot {
            params: p,
            title: "a < b".into(),
            traces: vec![Trace {
                points: vec![(1.0, 0.5), (0.5, 0.25), (0.1, 0.05)],
                class: "ToOrigin".into(),
            }],
            marker: Some((1.0, 0.5)),
        })
    }

    #[test]
    fn well_formed_and_stable() {
        let p = validate_params(2, 2, 6).unwrap();
        let a = plot(&p);
        assert_eq!(a, plot(&p));
        assert!(a.starts_with("<?xml"));
        assert!(a.trim_end().ends_with("</svg>"));
        assert!(a.contains("a &lt; b"));
        assert!(a.contains("stroke-dasharray"));
        assert!(a.contains(class_colour("ToOrigin")));
        assert!(!a.contains("-0.00"));
        assert!(!a.contains("href"));
    }

    #[test]
    fn half_plane_wedge() {
        let p = validate_params(1, 1, 1).unwrap();
        let a = plot(&p);
        assert!(a.contains("θ = π/1"));
    }
}
