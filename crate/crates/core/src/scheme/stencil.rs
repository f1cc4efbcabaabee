//! Constant coefficient tables of the half-step update.

use std::sync::OnceLock;

use crate::jet::{JetLayout, SpaceDims, MAX_DEGREE};

fn factorial(n: usize) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

fn sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// One way of obtaining a derivative from vertex differences.
#[derive(Debug, Clone)]
pub struct Route {
    /// DOF whose vertex values are differenced.
    pub source: usize,
    /// Vertex weights; order `(L, R)` in 1D, `(A, B, C, D)` =
    /// `(i, j), (i+1, j), (i+1, j+1), (i, j+1)` in 2D.
    pub weights: [f64; 4],
    /// Already-updated higher derivatives subtracted from the difference.
    pub corrections: Vec<(usize, f64)>,
}

/// Derivative DOF with all routes that produce it; routes are averaged.
#[derive(Debug, Clone)]
pub struct Target {
    pub dof: usize,
    pub routes: Vec<Route>,
}

#[derive(Debug)]
pub struct Stencil {
    /// Derivative targets, highest total order first.
    pub targets: Vec<Target>,
    /// `avg = sum_i avg_weights[i] * dof[i]` (weight 1 for the point value).
    pub avg_weights: Vec<f64>,
}

fn build_1d(layout: &JetLayout) -> Stencil {
    let p = layout.degree();
    let idx = |k: usize| layout.index_of(k, 0, 0).expect("in range");
    let mut targets = Vec::new();
    for k in (0..p).rev() {
        let corrections = (3..=(p - k))
            .map(|m| (idx(k + m), (1.0 - sign(m)) / (factorial(m) * 2f64.powi(m as i32))))
            .filter(|(_, c)| *c != 0.0)
            .collect();
        targets.push(Target {
            dof: idx(k + 1),
            routes: vec![Route {
                source: idx(k),
                weights: [-1.0, 1.0, 0.0, 0.0],
                corrections,
            }],
        });
    }
    let avg_weights = (0..=p)
        .map(|k| (1.0 + sign(k)) / (factorial(k + 1) * 2f64.powi(k as i32 + 1)))
        .collect();
    Stencil { targets, avg_weights }
}

fn build_2d(layout: &JetLayout) -> Stencil {
    let p = layout.degree();
    let idx = |k: usize, l: usize| layout.index_of(k, l, 0).expect("in range");
    let mut targets = Vec::new();
    for total in (1..=p).rev() {
        for l1 in 0..=total {
            let k1 = total - l1;
            let mut routes = Vec::new();
            if k1 >= 1 {
                let (k, l) = (k1 - 1, l1);
                let r = p - k - l;
                let mut corrections = Vec::new();
                for s in 3..=r {
                    let c = (0.5f64.powi(s as i32) - (-0.5f64).powi(s as i32)) / factorial(s);
                    corrections.push((idx(k + s, l), c));
                }
                for t in 2..=r {
                    for s in 1..=(r - t) {
                        let c = 0.5 * (1.0 - sign(s)) * (1.0 + sign(t))
                            / (factorial(s) * factorial(t) * 2f64.powi((s + t) as i32));
                        corrections.push((idx(k + s, l + t), c));
                    }
                }
                corrections.retain(|(_, c)| *c != 0.0);
                routes.push(Route {
                    source: idx(k, l),
                    weights: [-0.5, 0.5, 0.5, -0.5],
                    corrections,
                });
            }
            if l1 >= 1 {
                let (k, l) = (k1, l1 - 1);
                let r = p - k - l;
                let mut corrections = Vec::new();
                for t in 3..=r {
                    let c = (0.5f64.powi(t as i32) - (-0.5f64).powi(t as i32)) / factorial(t);
                    corrections.push((idx(k, l + t), c));
                }
                for t in 1..=r {
                    for s in 2..=(r - t) {
                        let c = 0.5 * (1.0 + sign(s)) * (1.0 - sign(t))
                            / (factorial(s) * factorial(t) * 2f64.powi((s + t) as i32));
                        corrections.push((idx(k + s, l + t), c));
                    }
                }
                corrections.retain(|(_, c)| *c != 0.0);
                routes.push(Route {
                    source: idx(k, l),
                    weights: [-0.5, -0.5, 0.5, 0.5],
                    corrections,
                });
            }
            targets.push(Target {
                dof: idx(k1, l1),
                routes,
            });
        }
    }
    let avg_weights = (0..layout.spatial_len())
        .map(|i| {
            let [k, l, _] = layout.exponents(i);
            (1.0 + sign(k)) * (1.0 + sign(l))
                / (factorial(k + 1) * factorial(l + 1) * 2f64.powi((k + l + 2) as i32))
        })
        .collect();
    Stencil { targets, avg_weights }
}

pub fn stencil(layout: &JetLayout) -> &'static Stencil {
    static TABLES: OnceLock<Vec<Stencil>> = OnceLock::new();
    let all = TABLES.get_or_init(|| {
        let mut v = Vec::new();
        for p in 1..=MAX_DEGREE {
            v.push(build_1d(JetLayout::get(SpaceDims::One, p).expect("valid")));
        }
        for p in 1..=MAX_DEGREE {
            v.push(build_2d(JetLayout::get(SpaceDims::Two, p).expect("valid")));
        }
        v
    });
    let off = match layout.dims() {
        SpaceDims::One => 0,
        SpaceDims::Two => MAX_DEGREE,
    };
    &all[off + layout.degree() - 1]
}

/// Derivatives of the destination cell from vertex values
/// (`vertex[v][dof]`), written into `out[1..]`.
pub fn apply_derivatives(st: &Stencil, vertex: &[&[f64]], out: &mut [f64]) {
    for t in &st.targets {
        let mut acc = 0.0;
        for r in &t.routes {
            let mut v: f64 = vertex
                .iter()
                .zip(&r.weights)
                .map(|(vals, w)| w * vals[r.source])
                .sum();
            for &(d, c) in &r.corrections {
                v -= c * out[d];
            }
            acc += v;
        }
        out[t.dof] = if t.routes.len() == 2 { 0.5 * acc } else { acc };
    }
}

/// Point value from the cell average and the derivatives in `dofs[1..]`.
pub fn recover(st: &Stencil, avg: f64, dofs: &[f64]) -> f64 {
    let corr: f64 = st.avg_weights[1..]
        .iter()
        .zip(&dofs[1..])
        .map(|(w, d)| w * d)
        .sum();
    avg - corr
}

/// Cell average of the polynomial with the given DOFs.
pub fn average(st: &Stencil, dofs: &[f64]) -> f64 {
    st.avg_weights.iter().zip(dofs).map(|(w, d)| w * d).sum()
}
