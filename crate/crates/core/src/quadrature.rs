//! Composite Simpson, Gauss–Legendre and periodic trapezoid rules.

/// Weights of the composite Simpson rule on `n_intervals + 1` equispaced
/// nodes with spacing `h`. `n_intervals` must be even and positive.
pub fn simpson_weights(n_intervals: usize, h: f64) -> Vec<f64> {
    assert!(
        n_intervals >= 2 && n_intervals.is_multiple_of(2),
        "Simpson needs an even number of intervals, got {n_intervals}"
    );
    (0..=n_intervals)
        .map(|i| {
            let w = if i == 0 || i == n_intervals {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * h / 3.0
        })
        .collect()
}

/// Nodes and Simpson weights for `[lo, hi]`.
pub fn simpson_rule(lo: f64, hi: f64, n_intervals: usize) -> (Vec<f64>, Vec<f64>) {
    let h = (hi - lo) / n_intervals as f64;
    let nodes = (0..=n_intervals).map(|i| lo + h * i as f64).collect();
    (nodes, simpson_weights(n_intervals, h))
}

/// Composite Simpson on a non-uniform, strictly increasing abscissa.
///
/// Pairs of intervals use the three-point rule for unequal widths; an odd
/// trailing interval is closed with the quadratic through the last three
/// nodes. Two nodes fall back to the trapezoid rule, one node gives zero.
pub fn simpson_nonuniform(x: &[f64], f: &[f64]) -> f64 {
    assert_eq!(x.len(), f.len());
    let n = x.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * (x[1] - x[0]) * (f[0] + f[1]);
    }
    let intervals = n - 1;
    let mut total = 0.0;
    let mut i = 0;
    while i + 2 <= intervals {
        let h0 = x[i + 1] - x[i];
        let h1 = x[i + 2] - x[i + 1];
        let hs = h0 + h1;
        total += hs / 6.0 * ((2.0 - h1 / h0) * f[i] + hs * hs / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
        i += 2;
    }
    if intervals % 2 == 1 {
        let h0 = x[n - 2] - x[n - 3];
        let h1 = x[n - 1] - x[n - 2];
        let a = (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1));
        let b = (h1 * h1 + 3.0 * h1 * h0) / (6.0 * h0);
        let c = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
        total += a * f[n - 1] + b * f[n - 2] - c * f[n - 3];
    }
    total
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton on the three-term
/// recurrence).
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1);
    let n = order;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Composite Gauss–Legendre on `[lo, hi]` with `panels` equal panels.
/// Endpoints are never sampled, which keeps polar chart edges out.
pub fn composite_gauss(lo: f64, hi: f64, panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(order);
    let h = (hi - lo) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let a = lo + h * p as f64;
        for (x, w) in gx.iter().zip(&gw) {
            nodes.push(a + 0.5 * h * (x + 1.0));
            weights.push(0.5 * h * w);
        }
    }
    (nodes, weights)
}

/// Trapezoid rule for a periodic integrand on `[lo, hi)`.
pub fn periodic_trapezoid(lo: f64, hi: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let h = (hi - lo) / n as f64;
    ((0..n).map(|i| lo + h * i as f64).collect(), vec![h; n])
}
