//! Independent oracles shared by the property suites and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeMap;

use wcc_core::jet::{Jet, JetLayout, SpaceDims};
use wcc_core::physics::{EigenSystem, GasModel, Primitive};

/// Taylor coefficients keyed by `(x, y, t)` exponents.
pub type Poly = BTreeMap<(usize, usize, usize), f64>;

pub fn to_poly(j: &Jet) -> Poly {
    let l = j.layout();
    (0..l.len())
        .map(|i| {
            let [k, m, b] = l.exponents(i);
            ((k, m, b), j.taylor()[i])
        })
        .collect()
}

/// Dense product of two polynomials dropping terms of total degree above `p`.
pub fn naive_mul(a: &Poly, b: &Poly, p: usize) -> Poly {
    let mut out = Poly::new();
    for (&(k1, l1, t1), &x) in a {
        for (&(k2, l2, t2), &y) in b {
            let e = (k1 + k2, l1 + l2, t1 + t2);
            if e.0 + e.1 + e.2 <= p {
                *out.entry(e).or_insert(0.0) += x * y;
            }
        }
    }
    out
}

/// Largest relative mismatch between a jet and a polynomial.
pub fn poly_mismatch(jet: &Jet, expect: &Poly) -> f64 {
    let mut worst = 0.0f64;
    for (&(k, l, b), &v) in expect {
        worst = worst.max((jet.coeff(k, l, b) - v).abs() / (1.0 + v.abs()));
    }
    for (e, v) in to_poly(jet) {
        if !expect.contains_key(&e) {
            worst = worst.max(v.abs());
        }
    }
    worst
}

pub fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Scaled derivative `u_{k,l,t}` of `u_t + a u_x + b u_y = 0` in terms of the
/// spatial derivatives `s(k, l)`, with `cx = -a nu_x`, `cy = -b nu_y`.
pub fn advection_time_derivative(s: impl Fn(usize, usize) -> f64, k: usize, l: usize, t: usize, cx: f64, cy: f64) -> f64 {
    (0..=t)
        .map(|j| binomial(t, j) * cx.powi(j as i32) * cy.powi((t - j) as i32) * s(k + j, l + t - j))
        .sum()
}

/// Four-point Gauss-Legendre rule on `[-1, 1]`.
pub const GL_NODES: [f64; 4] = [-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526];
pub const GL_WEIGHTS: [f64; 4] = [0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538];

fn falling(n: usize, k: usize) -> f64 {
    (0..k).map(|i| (n - i) as f64).product()
}

fn fact(n: usize) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

/// `d^k_xi d^l_eta` of `sum_i dofs_i xi^a eta^b / (a! b!)`.
pub fn derivative_at(layout: &JetLayout, dofs: &[f64], k: usize, l: usize, xi: f64, eta: f64) -> f64 {
    (0..layout.spatial_len())
        .filter_map(|i| {
            let [a, b, _] = layout.exponents(i);
            (a >= k && b >= l).then(|| {
                dofs[i] * falling(a, k) * falling(b, l) / (fact(a) * fact(b))
                    * xi.powi((a - k) as i32)
                    * eta.powi((b - l) as i32)
            })
        })
        .sum()
}

/// Sum over derivative orders of the squared derivative integrated over the unit cell.
pub fn quadrature_indicator(layout: &JetLayout, dofs: &[f64]) -> f64 {
    let p = layout.degree();
    let two_d = layout.dims() == SpaceDims::Two;
    let pts: Vec<(f64, f64)> = GL_NODES.iter().zip(GL_WEIGHTS).map(|(&x, w)| (0.5 * x, 0.5 * w)).collect();
    let centre = [(0.0, 1.0)];
    let ys: &[(f64, f64)] = if two_d { &pts } else { &centre };
    let mut beta = 0.0;
    for k in 0..=p {
        for l in 0..=(if two_d { p - k } else { 0 }) {
            if k + l == 0 {
                continue;
            }
            for &(x, wx) in &pts {
                for &(y, wy) in ys {
                    let d = derivative_at(layout, dofs, k, l, x, y);
                    beta += wx * wy * d * d;
                }
            }
        }
    }
    beta
}

fn matmul(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4], n: usize) -> [[f64; 4]; 4] {
    let mut c = [[0.0; 4]; 4];
    for i in 0..n {
        for j in 0..n {
            c[i][j] = (0..n).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// `(max |L R - I|, max |R diag(lambda) L - A| / (1 + |A|))`.
pub fn eigen_residuals(es: &EigenSystem, a: &[[f64; 4]; 4]) -> (f64, f64) {
    let n = es.n;
    let lr = matmul(&es.left, &es.right, n);
    let mut rl = es.right;
    for row in rl.iter_mut() {
        for (j, v) in row.iter_mut().enumerate() {
            *v *= es.lambda[j];
        }
    }
    let rla = matmul(&rl, &es.left, n);
    let (mut e1, mut e2) = (0.0f64, 0.0f64);
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { 1.0 } else { 0.0 };
            e1 = e1.max((lr[i][j] - id).abs());
            e2 = e2.max((rla[i][j] - a[i][j]).abs() / (1.0 + a[i][j].abs()));
        }
    }
    (e1, e2)
}

/// Largest relative jump-condition residual `[G] - s [U]` of a normal shock
/// running in +y into the quiescent state `pre`.
pub fn rankine_hugoniot_residual(gas: &GasModel, ms: f64, pre: Primitive) -> f64 {
    let post = gas.normal_shock_state(ms, pre).unwrap();
    let s = ms * gas.sound_speed(pre.rho, pre.p).unwrap();
    let (ua, ub) = (gas.conservative_2d(pre), gas.conservative_2d(post));
    let (ga, gb) = (gas.flux_2d_g(&ua).unwrap(), gas.flux_2d_g(&ub).unwrap());
    (0..4)
        .map(|i| {
            let residual = (gb[i] - ga[i]) - s * (ub[i] - ua[i]);
            residual.abs() / (1.0 + gb[i].abs() + s * ub[i].abs())
        })
        .fold(0.0, f64::max)
}
