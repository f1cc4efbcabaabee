//! WENO-type limiter combining the full-degree cell polynomial with
//! first-order candidate planes built from the cell average and the
//! time-extrapolated vertex values.
//!
//! All quantities are in scaled (dimensionless) variables: DOFs are scaled
//! derivatives and polynomials live on `[-1/2, 1/2]` (or its square).

mod characteristic;
mod indicator;

pub use characteristic::{characteristic_limit, characteristic_limit_1d, rotated_characteristic_limit_2d, rotation_angle};
pub use indicator::{smoothness_indicator, smoothness_indicator_1d, smoothness_indicator_2d};

use std::sync::OnceLock;

use crate::jet::{JetLayout, SpaceDims, MAX_DEGREE};

/// Upper bound on spatial DOFs per component (2D, degree 3).
pub const MAX_DOFS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimiterParams {
    pub alpha: f64,
    pub eps: f64,
}

impl Default for LimiterParams {
    fn default() -> Self {
        LimiterParams { alpha: 2.0, eps: 1e-40 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// Degree 1: all candidates share the degree.
    SecondOrder,
    /// Degree >= 2: the full polynomial competes with first-order planes.
    HighOrder,
}

impl WeightMode {
    pub fn for_degree(p: usize) -> Self {
        if p <= 1 {
            WeightMode::SecondOrder
        } else {
            WeightMode::HighOrder
        }
    }
}

/// Full-degree polynomial plus first-order candidate planes sharing its average.
#[derive(Debug, Clone, Copy)]
pub struct CandidateSet {
    layout: &'static JetLayout,
    pub u0: [f64; MAX_DOFS],
    pub avg: f64,
    /// `(u_x, u_y)` of each plane; `u_y` is 0 in 1D.
    pub slopes: [[f64; 2]; 4],
    pub count: usize,
}

impl CandidateSet {
    pub fn layout(&self) -> &'static JetLayout {
        self.layout
    }

    pub fn u0(&self) -> &[f64] {
        &self.u0[..self.layout.spatial_len()]
    }
}

fn copy_dofs(u0: &[f64]) -> [f64; MAX_DOFS] {
    let mut a = [0.0; MAX_DOFS];
    a[..u0.len()].copy_from_slice(u0);
    a
}

/// Planes with slopes `2(avg - left)` and `2(right - avg)`.
pub fn build_candidates_1d(layout: &'static JetLayout, u0: &[f64], avg: f64, left: f64, right: f64) -> CandidateSet {
    let mut slopes = [[0.0; 2]; 4];
    slopes[0][0] = 2.0 * (avg - left);
    slopes[1][0] = 2.0 * (right - avg);
    CandidateSet {
        layout,
        u0: copy_dofs(u0),
        avg,
        slopes,
        count: 2,
    }
}

/// Planes built on the four edges; `v` holds the vertex values at
/// `(-,-)`, `(+,-)`, `(+,+)`, `(-,+)`.
pub fn build_candidates_2d(layout: &'static JetLayout, u0: &[f64], avg: f64, v: [f64; 4]) -> CandidateSet {
    let [a, b, c, d] = v;
    let slopes = [
        [2.0 * avg - (a + d), d - a],
        [b - a, 2.0 * avg - (a + b)],
        [(b + c) - 2.0 * avg, c - b],
        [c - d, (d + c) - 2.0 * avg],
    ];
    CandidateSet {
        layout,
        u0: copy_dofs(u0),
        avg,
        slopes,
        count: 4,
    }
}

/// Evaluates the cell polynomial at normalized coordinates.
pub fn eval_poly(layout: &JetLayout, dofs: &[f64], xi: f64, eta: f64) -> f64 {
    let powers = |s: f64| {
        let mut p = [1.0; MAX_DEGREE + 1];
        for k in 1..=MAX_DEGREE {
            p[k] = p[k - 1] * s;
        }
        p
    };
    let (px, py) = (powers(xi), powers(eta));
    (0..layout.spatial_len())
        .map(|i| {
            let [k, l, _] = layout.exponents(i);
            dofs[i] * px[k] * py[l] / layout.factorial(i)
        })
        .sum()
}

/// Normalized positions of the vertices matching [`build_candidates_1d`] /
/// [`build_candidates_2d`] ordering.
pub fn vertex_positions(dims: SpaceDims) -> &'static [(f64, f64)] {
    match dims {
        SpaceDims::One => &[(-0.5, 0.0), (0.5, 0.0)],
        SpaceDims::Two => &[(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)],
    }
}

/// Monomial weights `xi^k eta^l / (k! l!)` of each DOF at each vertex.
fn vertex_weights(layout: &JetLayout) -> &'static [[f64; MAX_DOFS]] {
    static TABLES: OnceLock<Vec<Vec<[f64; MAX_DOFS]>>> = OnceLock::new();
    let all = TABLES.get_or_init(|| {
        let mut v = Vec::new();
        for dims in [SpaceDims::One, SpaceDims::Two] {
            for p in 1..=MAX_DEGREE {
                let l = JetLayout::get(dims, p).expect("valid degree");
                let rows = vertex_positions(dims)
                    .iter()
                    .map(|&(x, y)| {
                        let mut unit = [0.0; MAX_DOFS];
                        let mut row = [0.0; MAX_DOFS];
                        for i in 0..l.spatial_len() {
                            unit[i] = 1.0;
                            row[i] = eval_poly(l, &unit, x, y);
                            unit[i] = 0.0;
                        }
                        row
                    })
                    .collect();
                v.push(rows);
            }
        }
        v
    });
    let off = match layout.dims() {
        SpaceDims::One => 0,
        SpaceDims::Two => MAX_DEGREE,
    };
    &all[off + layout.degree() - 1]
}

/// Sum of squared residuals between the spatial polynomial and the
/// time-extrapolated values at the vertices.
pub fn residual_sigma(layout: &JetLayout, u0: &[f64], vertices: &[f64]) -> f64 {
    vertex_weights(layout)
        .iter()
        .zip(vertices)
        .map(|(w, v)| {
            let p: f64 = w.iter().zip(u0).map(|(w, u)| w * u).sum();
            let r = p - v;
            r * r
        })
        .sum()
}

/// Sum of squared highest-degree DOFs.
pub fn tau(layout: &JetLayout, u0: &[f64]) -> f64 {
    let p = layout.degree();
    (0..layout.spatial_len())
        .filter(|&i| layout.total_degree(i) == p)
        .map(|i| u0[i] * u0[i])
        .sum()
}

/// Normalized nonlinear weights `w_0..=w_count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weights {
    pub w: [f64; 5],
    pub n: usize,
}

impl Weights {
    pub fn as_slice(&self) -> &[f64] {
        &self.w[..self.n]
    }
}

fn normalize(raw: [f64; 5], n: usize) -> Weights {
    let sum: f64 = raw[..n].iter().sum();
    let mut w = [0.0; 5];
    for m in 0..n {
        w[m] = raw[m] / sum;
    }
    Weights { w, n }
}

/// Weights from the smoothness indicators of the candidates.
///
/// `sigma` and `tau` are only used in [`WeightMode::HighOrder`].
pub fn compute_weights(c: &CandidateSet, params: &LimiterParams, sigma: f64, tau: f64) -> Weights {
    let layout = c.layout;
    let n = c.count + 1;
    let mut beta = [0.0; 5];
    beta[0] = smoothness_indicator(layout, c.u0());
    for m in 0..c.count {
        let [sx, sy] = c.slopes[m];
        beta[m + 1] = sx * sx + sy * sy;
    }
    let pow = |x: f64| {
        if params.alpha == 2.0 {
            x * x
        } else {
            x.powf(params.alpha)
        }
    };
    let mut raw = [0.0; 5];
    match WeightMode::for_degree(layout.degree()) {
        WeightMode::SecondOrder => {
            for m in 0..n {
                raw[m] = pow(1.0 / (beta[m] + params.eps));
            }
            if !raw[..n].iter().all(|v| v.is_finite()) {
                // rescale by the smallest indicator to stay finite
                let bmin = beta[..n].iter().cloned().fold(f64::INFINITY, f64::min) + params.eps;
                for m in 0..n {
                    raw[m] = pow(bmin / (beta[m] + params.eps));
                }
            }
        }
        WeightMode::HighOrder => {
            let st = sigma * tau;
            raw[0] = 1.0 + pow(st / (beta[0] * beta[0] + params.eps));
            for m in 1..n {
                raw[m] = pow(st / (beta[m] * beta[m] + params.eps));
            }
            if !raw[..n].iter().all(|v| v.is_finite()) {
                let logs: Vec<f64> = (0..n)
                    .map(|m| {
                        let x = st / (beta[m] * beta[m] + params.eps);
                        params.alpha * x.ln()
                    })
                    .collect();
                let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                for m in 0..n {
                    raw[m] = (logs[m] - top).exp();
                }
            }
        }
    }
    normalize(raw, n)
}

/// Convex combination of the candidates.
pub fn limit_cell(c: &CandidateSet, w: &Weights) -> [f64; MAX_DOFS] {
    let layout = c.layout;
    let w0 = w.w[0];
    let mut out = [0.0; MAX_DOFS];
    for (o, u) in out.iter_mut().zip(c.u0()) {
        *o = w0 * u;
    }
    let rest: f64 = w.w[1..w.n].iter().sum();
    out[0] += rest * c.avg;
    let ix = layout.index_of(1, 0, 0).expect("degree >= 1");
    let iy = layout.index_of(0, 1, 0);
    for m in 0..c.count {
        let wm = w.w[m + 1];
        out[ix] += wm * c.slopes[m][0];
        if let Some(iy) = iy {
            out[iy] += wm * c.slopes[m][1];
        }
    }
    out
}

/// Limits one scalar polynomial given its average and vertex values.
pub fn limit_scalar(
    layout: &'static JetLayout,
    u0: &[f64],
    avg: f64,
    vertices: &[f64],
    params: &LimiterParams,
) -> [f64; MAX_DOFS] {
    let c = match layout.dims() {
        SpaceDims::One => build_candidates_1d(layout, u0, avg, vertices[0], vertices[1]),
        SpaceDims::Two => build_candidates_2d(
            layout,
            u0,
            avg,
            [vertices[0], vertices[1], vertices[2], vertices[3]],
        ),
    };
    let (s, t) = match WeightMode::for_degree(layout.degree()) {
        WeightMode::SecondOrder => (0.0, 0.0),
        WeightMode::HighOrder => (residual_sigma(layout, u0, vertices), tau(layout, u0)),
    };
    let w = compute_weights(&c, params, s, t);
    limit_cell(&c, &w)
}

/// Cell average of a polynomial given by its scaled derivatives.
pub fn cell_average(layout: &JetLayout, dofs: &[f64]) -> f64 {
    (0..layout.spatial_len())
        .map(|i| {
            let [k, l, _] = layout.exponents(i);
            let wk = if k % 2 == 0 { 1.0 / ((k + 1) as f64 * 2f64.powi(k as i32)) } else { 0.0 };
            let wl = if l % 2 == 0 { 1.0 / ((l + 1) as f64 * 2f64.powi(l as i32)) } else { 0.0 };
            dofs[i] * wk * wl / layout.factorial(i)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l1(p: usize) -> &'static JetLayout {
        JetLayout::get(SpaceDims::One, p).unwrap()
    }

    #[test]
    fn candidate_slopes_1d() {
        let c = build_candidates_1d(l1(1), &[1.0, 1.0], 1.0, 0.5, 1.5);
        assert_eq!(c.slopes[0][0], 1.0);
        assert_eq!(c.slopes[1][0], 1.0);
        let c = build_candidates_1d(l1(1), &[1.0, 0.0], 1.0, 1.0, 0.0);
        assert_eq!((c.slopes[0][0], c.slopes[1][0]), (0.0, -2.0));
    }

    #[test]
    fn equal_indicators_give_equal_weights() {
        let c = build_candidates_1d(l1(1), &[0.0, 1.0], 0.0, -0.5, 0.5);
        let w = compute_weights(&c, &LimiterParams::default(), 0.0, 0.0);
        for m in 0..3 {
            assert!((w.w[m] - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn linear_data_is_untouched_at_high_order() {
        let layout = l1(2);
        let u0 = [0.3, 1.0, 0.0];
        let v = [0.3 - 0.5, 0.3 + 0.5];
        let out = limit_scalar(layout, &u0, 0.3, &v, &LimiterParams::default());
        assert_eq!(&out[..3], &u0);
    }

    #[test]
    fn step_selects_smooth_candidate() {
        let layout = l1(2);
        // jump inside the cell: the full polynomial oscillates, the left
        // plane is flat
        let u0 = [0.5, -1.2, -1.5];
        let avg = cell_average(layout, &u0);
        let c = build_candidates_1d(layout, &u0, avg, avg, avg - 0.6);
        let s = residual_sigma(layout, &u0, &[avg, avg - 0.6]);
        let w = compute_weights(&c, &LimiterParams::default(), s + 1.0, tau(layout, &u0));
        assert!(w.w[0] < 1e-6 && w.w[1] > 0.99, "{:?}", w);
    }

    #[test]
    fn average_is_preserved() {
        let layout = JetLayout::get(SpaceDims::Two, 2).unwrap();
        let u0 = [1.0, 0.4, -0.3, 0.8, 0.2, -0.6];
        let avg = cell_average(layout, &u0);
        let out = limit_scalar(layout, &u0, avg, &[0.1, 2.0, -0.5, 1.5], &LimiterParams::default());
        assert!((cell_average(layout, &out[..6]) - avg).abs() < 1e-15);
    }
}
