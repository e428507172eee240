//! Finite-difference stencils.

use nalgebra::{DMatrix, DVector};

/// Fornberg weights for derivatives `0..=max_order` at `x0` on arbitrary
/// distinct nodes. `weights[k][j]` multiplies `f(nodes[j])` for the k-th
/// derivative.
pub fn fornberg_weights(x0: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

// Fourth-order central stencils at offsets -2..=2.
const D1: [f64; 5] = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
const D2: [f64; 5] = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];

/// Gradient and Hessian of a scalar chart function by fourth-order central
/// differences with step `h` in every coordinate.
pub fn gradient_hessian<F>(f: F, u: &[f64], h: f64) -> (DVector<f64>, DMatrix<f64>)
where
    F: Fn(&[f64]) -> f64,
{
    let n = u.len();
    let mut grad = DVector::zeros(n);
    let mut hess = DMatrix::zeros(n, n);
    let mut p = u.to_vec();
    let f0 = f(u);
    for i in 0..n {
        let mut vals = [0.0; 5];
        for (k, v) in vals.iter_mut().enumerate() {
            if k == 2 {
                *v = f0;
                continue;
            }
            p[i] = u[i] + (k as f64 - 2.0) * h;
            *v = f(&p);
        }
        p[i] = u[i];
        grad[i] = (0..5).map(|k| D1[k] * vals[k]).sum::<f64>() / h;
        hess[(i, i)] = (0..5).map(|k| D2[k] * vals[k]).sum::<f64>() / (h * h);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut acc = 0.0;
            for a in 0..5 {
                if D1[a] == 0.0 {
                    continue;
                }
                for b in 0..5 {
                    if D1[b] == 0.0 {
                        continue;
                    }
                    p[i] = u[i] + (a as f64 - 2.0) * h;
                    p[j] = u[j] + (b as f64 - 2.0) * h;
                    acc += D1[a] * D1[b] * f(&p);
                }
            }
            p[i] = u[i];
            p[j] = u[j];
            let v = acc / (h * h);
            hess[(i, j)] = v;
            hess[(j, i)] = v;
        }
    }
    (grad, hess)
}

/// Second-order central differences of a vector-valued chart map: returns the
/// Jacobian columns `d_i X` and second partials `d_i d_j X` (row-major, `i*n+j`).
pub fn vector_partials<F>(x: F, u: &[f64], h: f64) -> (DMatrix<f64>, Vec<DVector<f64>>)
where
    F: Fn(&[f64]) -> DVector<f64>,
{
    let n = u.len();
    let x0 = x(u);
    let m = x0.len();
    let mut jac = DMatrix::zeros(m, n);
    let mut second = vec![DVector::zeros(m); n * n];
    let mut p = u.to_vec();
    let mut plus = Vec::with_capacity(n);
    let mut minus = Vec::with_capacity(n);
    for i in 0..n {
        p[i] = u[i] + h;
        let xp = x(&p);
        p[i] = u[i] - h;
        let xm = x(&p);
        p[i] = u[i];
        jac.set_column(i, &((&xp - &xm) / (2.0 * h)));
        second[i * n + i] = (&xp - 2.0 * &x0 + &xm) / (h * h);
        plus.push(xp);
        minus.push(xm);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut eval = |si: f64, sj: f64| {
                p[i] = u[i] + si * h;
                p[j] = u[j] + sj * h;
                let v = x(&p);
                p[i] = u[i];
                p[j] = u[j];
                v
            };
            let v = (eval(1.0, 1.0) - eval(1.0, -1.0) - eval(-1.0, 1.0) + eval(-1.0, -1.0)) / (4.0 * h * h);
            second[i * n + j] = v.clone();
            second[j * n + i] = v;
        }
    }
    (jac, second)
}

/// Derivative at `s = 0` of a function sampled at `0, -h, -2h, -3h`
/// (four-point one-sided stencil, third order).
pub fn one_sided_backward(f0: f64, f1: f64, f2: f64, f3: f64, h: f64) -> f64 {
    (11.0 * f0 - 18.0 * f1 + 9.0 * f2 - 2.0 * f3) / (6.0 * h)
}
