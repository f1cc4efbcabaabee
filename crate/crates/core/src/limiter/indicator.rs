use std::sync::OnceLock;

use super::MAX_DOFS;
use crate::jet::{JetLayout, SpaceDims, MAX_DEGREE};

/// `Q` with `beta = u^T Q u` for each layout.
struct Forms {
    q: Vec<[[f64; MAX_DOFS]; MAX_DOFS]>,
}

/// Integral of `s^p` over `[-1/2, 1/2]`.
fn moment(p: usize) -> f64 {
    if p % 2 == 1 {
        0.0
    } else {
        2.0 * 0.5f64.powi(p as i32 + 1) / (p + 1) as f64
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

fn build(layout: &JetLayout) -> [[f64; MAX_DOFS]; MAX_DOFS] {
    let n = layout.spatial_len();
    let p = layout.degree();
    let two_d = layout.dims() == SpaceDims::Two;
    let mut q = [[0.0; MAX_DOFS]; MAX_DOFS];
    for k in 0..=p {
        for l in 0..=(if two_d { p - k } else { 0 }) {
            if k + l == 0 {
                continue;
            }
            // derivative d^k_xi d^l_eta of basis xi^a eta^b / (a! b!)
            for (ia, row) in q.iter_mut().enumerate().take(n) {
                let [a1, b1, _] = layout.exponents(ia);
                if a1 < k || b1 < l {
                    continue;
                }
                for (ib, cell) in row.iter_mut().enumerate().take(n) {
                    let [a2, b2, _] = layout.exponents(ib);
                    if a2 < k || b2 < l {
                        continue;
                    }
                    let (pa, pb) = (a1 - k + a2 - k, b1 - l + b2 - l);
                    let norm = factorial(a1 - k) * factorial(b1 - l) * factorial(a2 - k) * factorial(b2 - l);
                    *cell += moment(pa) * moment(pb) / norm;
                }
            }
        }
    }
    q
}

fn forms() -> &'static Forms {
    static FORMS: OnceLock<Forms> = OnceLock::new();
    FORMS.get_or_init(|| {
        let mut q = Vec::new();
        for dims in [SpaceDims::One, SpaceDims::Two] {
            for p in 1..=MAX_DEGREE {
                q.push(build(JetLayout::get(dims, p).expect("valid degree")));
            }
        }
        Forms { q }
    })
}

/// Sum over all derivative orders of the squared derivative integrated over
/// the cell, in scaled variables.
pub fn smoothness_indicator(layout: &JetLayout, dofs: &[f64]) -> f64 {
    let off = match layout.dims() {
        SpaceDims::One => 0,
        SpaceDims::Two => MAX_DEGREE,
    };
    let q = &forms().q[off + layout.degree() - 1];
    let n = layout.spatial_len();
    let mut beta = 0.0;
    for i in 1..n {
        let di = dofs[i];
        if di == 0.0 {
            continue;
        }
        for j in 1..n {
            beta += di * q[i][j] * dofs[j];
        }
    }
    beta
}

pub fn smoothness_indicator_1d(dofs: &[f64], p: usize) -> f64 {
    let layout = JetLayout::get(SpaceDims::One, p).expect("degree 1..=3");
    smoothness_indicator(layout, dofs)
}

pub fn smoothness_indicator_2d(dofs: &[f64], p: usize) -> f64 {
    let layout = JetLayout::get(SpaceDims::Two, p).expect("degree 1..=3");
    smoothness_indicator(layout, dofs)
}
