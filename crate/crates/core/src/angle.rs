//! Angle helpers.
//!
//! `sin_cos` reduces its argument against the f64 multiples of `FRAC_PI_2`
//! before evaluating, so `cos(FRAC_PI_2)` is exactly `0.0` rather than
//! `6.1e-17`. The profile-curve ODE relies on this: the minimal-cone ray is an
//! exact equilibrium only if `cos(-FRAC_PI_2)` and `cos(g * theta_c)` vanish.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// `(sin x, cos x)` with exact zeros at f64 multiples of `FRAC_PI_2`.
pub fn sin_cos(x: f64) -> (f64, f64) {
    if !x.is_finite() {
        return (f64::NAN, f64::NAN);
    }
    let quadrant = (x / FRAC_PI_2).round();
    if quadrant.abs() > 8.0 {
        return x.sin_cos();
    }
    let q = quadrant as i64;
    // k * FRAC_PI_2 is exact for |k| a power of two; for 3 it rounds once,
    // which is no worse than evaluating sin directly.
    let rest = x - quadrant * FRAC_PI_2;
    let (s, c) = rest.sin_cos();
    match q.rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

pub fn sin(x: f64) -> f64 {
    sin_cos(x).0
}

pub fn cos(x: f64) -> f64 {
    sin_cos(x).1
}

/// Wraps an angle into `(-pi, pi]`.
pub fn normalize(a: f64) -> f64 {
    let mut w = a.rem_euclid(TAU);
    if w > PI {
        w -= TAU;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn exact_zeros_at_quadrants() {
        assert_eq!(cos(FRAC_PI_2), 0.0);
        assert_eq!(cos(-FRAC_PI_2), 0.0);
        assert_eq!(sin(PI), 0.0);
        assert_eq!(sin(-FRAC_PI_2), -1.0);
        assert_eq!(cos(2.0 * FRAC_PI_4), 0.0);
    }

    #[test]
    fn agrees_with_std_elsewhere() {
        for i in 0..1000 {
            let x = -20.0 + 0.04 * i as f64;
            let (s, c) = sin_cos(x);
            assert!((s - x.sin()).abs() < 1e-14, "{x}");
            assert!((c - x.cos()).abs() < 1e-14, "{x}");
        }
    }

    #[test]
    fn normalize_range() {
        assert_eq!(normalize(PI), PI);
        assert_eq!(normalize(-PI), PI);
        assert!((normalize(3.0 * PI / 2.0) + FRAC_PI_2).abs() < 1e-15);
        assert!((normalize(0.25) - 0.25).abs() < 1e-16);
    }
}
