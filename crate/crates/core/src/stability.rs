//! Von Neumann analysis of the linear 1D schemes and of their first-order
//! candidate solutions for `u_t + u_x = 0`.
//!
//! One half-step maps the DOF vectors `q = [u, u_x, ..., u_Px]` of the two
//! source cells to the destination: `q_dest = M1 q_left + M2 q_right`. For a
//! Fourier mode this gives the amplification matrix
//! `G(theta) = M1 e^{-i theta/2} + M2 e^{i theta/2}`.
//!
//! The matrices are available in two independent forms: the closed-form
//! polynomial entries in `nu` ([`build_coefficient_matrices`]) and the
//! matrices extracted column by column from the actual scheme update
//! ([`derive_coefficient_matrices`]).

use nalgebra::{Complex, DMatrix};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jet::{cauchy_kovalewski, CkJets, FluxModel, JetLayout, ScaledRatios, SpaceDims};
use crate::physics::Physics;
use crate::scheme::one_d;
use crate::scheme::summary;

/// Slack on the unit circle absorbing round-off in the stability predicate.
pub const STABILITY_SLACK: f64 = 1e-10;

/// Number of uniform wavenumbers in `(0, 2 pi]`.
pub const THETA_POINTS: usize = 1024;

/// Linear solution analysed: 0 is the full-degree polynomial, 1 and 2 the
/// planes through the average and the left/right vertex value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityCase {
    order: usize,
    candidate: usize,
    nu: f64,
}

impl StabilityCase {
    pub fn new(order: usize, candidate: usize, nu: f64) -> Result<Self> {
        if !(2..=4).contains(&order) {
            return Err(Error::config(format!("stability order {order} not in 2..=4")));
        }
        if candidate > 2 {
            return Err(Error::config(format!("candidate {candidate} not in 0..=2")));
        }
        if !nu.is_finite() {
            return Err(Error::config("Courant number must be finite"));
        }
        Ok(StabilityCase { order, candidate, nu })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn candidate(&self) -> usize {
        self.candidate
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
}

/// Where the coefficient matrices come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatrixSource {
    /// Closed-form entries.
    #[default]
    Tabulated,
    /// Extracted from the scheme implementation.
    Derived,
}

fn mat(rows: &[&[f64]]) -> DMatrix<f64> {
    let n = rows.len();
    DMatrix::from_fn(n, n, |i, j| rows[i][j])
}

/// Closed-form coefficient matrices `(M1, M2)`.
pub fn build_coefficient_matrices(case: &StabilityCase) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let v = case.nu;
    let v2 = v * v;
    let v3 = v2 * v;
    let v4 = v3 * v;
    let m = match (case.order, case.candidate) {
        (2, 0) => (
            mat(&[&[0.5 + v, 0.125 - v2 / 2.0], &[-1.0, v]]),
            mat(&[&[0.5 - v, -0.125 + v2 / 2.0], &[1.0, -v]]),
        ),
        (2, 1) => (
            mat(&[&[0.5 + v, 0.125 - v2 / 2.0], &[-1.0 + 2.0 * v, 0.25 + 2.0 * v - v2]]),
            mat(&[&[0.5 - v, -0.125 + v2 / 2.0], &[1.0 - 2.0 * v, -0.25 + v2]]),
        ),
        (2, 2) => (
            mat(&[&[0.5 + v, 0.125 - v2 / 2.0], &[-1.0 - 2.0 * v, v2 - 0.25]]),
            mat(&[&[0.5 - v, -0.125 + v2 / 2.0], &[1.0 + 2.0 * v, 0.25 - 2.0 * v - v2]]),
        ),
        (3, 0) => (
            mat(&[
                &[0.5 + v, 1.0 / 6.0 - v2 / 2.0, 1.0 / 48.0 - v / 24.0 + v3 / 6.0],
                &[-1.0, v, -v2 / 2.0],
                &[0.0, -1.0, v],
            ]),
            mat(&[
                &[0.5 - v, -1.0 / 6.0 + v2 / 2.0, 1.0 / 48.0 + v / 24.0 - v3 / 6.0],
                &[1.0, -v, v2 / 2.0],
                &[0.0, 1.0, -v],
            ]),
        ),
        (3, 1) => (
            mat(&[
                &[0.5 + v, 0.125 - v2 / 2.0, 1.0 / 48.0 + v3 / 6.0],
                &[-1.0 + 2.0 * v, 0.25 + 2.0 * v - v2, 1.0 / 24.0 - v2 + v3 / 3.0],
                &[0.0, 0.0, 0.0],
            ]),
            mat(&[
                &[0.5 - v, -0.125 + v2 / 2.0, 1.0 / 48.0 - v3 / 6.0],
                &[1.0 - 2.0 * v, -0.25 + v2, 1.0 / 24.0 - v3 / 3.0],
                &[0.0, 0.0, 0.0],
            ]),
        ),
        (3, 2) => (
            mat(&[
                &[0.5 + v, 0.125 - v2 / 2.0, 1.0 / 48.0 + v3 / 6.0],
                &[-1.0 - 2.0 * v, -0.25 + v2, -1.0 / 24.0 - v3 / 3.0],
                &[0.0, 0.0, 0.0],
            ]),
            mat(&[
                &[0.5 - v, -0.125 + v2 / 2.0, 1.0 / 48.0 - v3 / 6.0],
                &[1.0 + 2.0 * v, 0.25 - 2.0 * v - v2, -1.0 / 24.0 + v2 + v3 / 3.0],
                &[0.0, 0.0, 0.0],
            ]),
        ),
        (4, 0) => (
            mat(&[
                &[
                    0.5 + v,
                    1.0 / 6.0 - v2 / 2.0,
                    1.0 / 48.0 - v / 24.0 + v3 / 6.0,
                    1.0 / 384.0 + v2 / 48.0 - v4 / 24.0,
                ],
                &[-1.0, v, -v2 / 2.0 + 1.0 / 24.0, -v / 24.0 + v3 / 6.0],
                &[0.0, -1.0, v, -v2 / 2.0],
                &[0.0, 0.0, -1.0, v],
            ]),
            mat(&[
                &[
                    0.5 - v,
                    -1.0 / 6.0 + v2 / 2.0,
                    1.0 / 48.0 + v / 24.0 - v3 / 6.0,
                    -1.0 / 384.0 - v2 / 48.0 + v4 / 24.0,
                ],
                &[1.0, -v, v2 / 2.0 - 1.0 / 24.0, v / 24.0 - v3 / 6.0],
                &[0.0, 1.0, -v, v2 / 2.0],
                &[0.0, 0.0, 1.0, -v],
            ]),
        ),
        (4, 1) => (
            mat(&[
                &[0.5 + v, 0.125 - v2 / 2.0, 1.0 / 48.0 + v3 / 6.0, 1.0 / 384.0 - v4 / 24.0],
                &[
                    -1.0 + 2.0 * v,
                    0.25 + 2.0 * v - v2,
                    1.0 / 24.0 - v2 + v3 / 3.0,
                    1.0 / 192.0 + v3 / 3.0 - v4 / 12.0,
                ],
                &[0.0; 4],
                &[0.0; 4],
            ]),
            mat(&[
                &[0.5 - v, -0.125 + v2 / 2.0, 1.0 / 48.0 - v3 / 6.0, -1.0 / 384.0 + v4 / 24.0],
                &[1.0 - 2.0 * v, -0.25 + v2, 1.0 / 24.0 - v3 / 3.0, -1.0 / 192.0 + v4 / 12.0],
                &[0.0; 4],
                &[0.0; 4],
            ]),
        ),
        (4, 2) => (
            mat(&[
                &[0.5 + v, 0.125 - v2 / 2.0, 1.0 / 48.0 + v3 / 6.0, 1.0 / 384.0 - v4 / 24.0],
                &[-1.0 - 2.0 * v, -0.25 + v2, -1.0 / 24.0 - v3 / 3.0, -1.0 / 192.0 + v4 / 12.0],
                &[0.0; 4],
                &[0.0; 4],
            ]),
            mat(&[
                &[0.5 - v, -0.125 + v2 / 2.0, 1.0 / 48.0 - v3 / 6.0, -1.0 / 384.0 + v4 / 24.0],
                &[
                    1.0 + 2.0 * v,
                    0.25 - 2.0 * v - v2,
                    -1.0 / 24.0 + v2 + v3 / 3.0,
                    1.0 / 192.0 - v3 / 3.0 - v4 / 12.0,
                ],
                &[0.0; 4],
                &[0.0; 4],
            ]),
        ),
        (q, m) => return Err(Error::config(format!("no coefficient matrices for order {q}, candidate {m}"))),
    };
    Ok(m)
}

/// Coefficient matrices extracted from the implemented update: each column is
/// the destination state produced by a unit DOF vector in one source cell.
pub fn derive_coefficient_matrices(case: &StabilityCase) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let q = case.order;
    let layout = JetLayout::get(SpaceDims::One, q - 1)?;
    let phys = Physics::Advection1D { a: 1.0 };
    let ratios = ScaledRatios::new_1d(case.nu, 1.0);
    let mut scratch = phys.new_scratch(layout);
    let evolve = |dofs: &[f64], scratch: &mut _| -> Result<CkJets> {
        let mut j = CkJets::new(layout, 1);
        cauchy_kovalewski(&phys, dofs, ratios, scratch, &mut j)?;
        Ok(j)
    };
    let zero = evolve(&vec![0.0; q], &mut scratch)?;
    let mut m1 = DMatrix::zeros(q, q);
    let mut m2 = DMatrix::zeros(q, q);
    for k in 0..q {
        let mut e = vec![0.0; q];
        e[k] = 1.0;
        let unit = evolve(&e, &mut scratch)?;
        for (side, m) in [(0, &mut m1), (1, &mut m2)] {
            let (l, r) = if side == 0 { (&unit, &zero) } else { (&zero, &unit) };
            let col = candidate_dofs(case.candidate, l, r, ratios)?;
            for (i, v) in col.iter().enumerate() {
                m[(i, k)] = *v;
            }
        }
    }
    Ok((m1, m2))
}

/// Destination DOFs of the analysed linear solution.
fn candidate_dofs(candidate: usize, l: &CkJets, r: &CkJets, ratios: ScaledRatios) -> Result<Vec<f64>> {
    let up = one_d::update_cell(l, r, ratios)?;
    if candidate == 0 {
        return Ok(up.dofs);
    }
    let layout = l.layout();
    let w = summary::width(layout);
    let vertex = |j: &CkJets| {
        let mut s = vec![0.0; w];
        summary::summarize(j, &mut s);
        s[summary::V1]
    };
    let avg = up.avg[0];
    let mut out = vec![0.0; layout.spatial_len()];
    out[0] = avg;
    out[1] = if candidate == 1 {
        2.0 * (avg - vertex(l))
    } else {
        2.0 * (vertex(r) - avg)
    };
    Ok(out)
}

/// Uniform wavenumbers `2 pi k / n`, `k = 1..=n`.
pub fn theta_grid(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / n as f64)
        .collect()
}

fn amplification(m1: &DMatrix<f64>, m2: &DMatrix<f64>, theta: f64) -> DMatrix<Complex<f64>> {
    let a = Complex::from_polar(1.0, -0.5 * theta);
    let b = Complex::from_polar(1.0, 0.5 * theta);
    DMatrix::from_fn(m1.nrows(), m1.ncols(), |i, j| a * m1[(i, j)] + b * m2[(i, j)])
}

/// Spectral radius of a small complex matrix.
pub fn spectral_radius(g: &DMatrix<Complex<f64>>) -> Result<f64> {
    if g.nrows() == 2 {
        let tr = g[(0, 0)] + g[(1, 1)];
        let det = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)];
        let disc = (tr * tr * 0.25 - det).sqrt();
        let l1 = tr * 0.5 + disc;
        let l2 = tr * 0.5 - disc;
        return Ok(l1.norm().max(l2.norm()));
    }
    let schur = nalgebra::Schur::try_new(g.clone(), 1e-13, 10_000)
        .ok_or_else(|| Error::Numeric("eigenvalue iteration did not converge".into()))?;
    let ev = schur
        .eigenvalues()
        .ok_or_else(|| Error::Numeric("eigenvalues unavailable".into()))?;
    Ok(ev.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Spectral radius of `G(theta)` for every wavenumber.
pub fn amplification_spectrum(m1: &DMatrix<f64>, m2: &DMatrix<f64>, thetas: &[f64]) -> Result<Vec<f64>> {
    if !m1.is_square() || m1.shape() != m2.shape() {
        return Err(Error::Shape("coefficient matrices must be square and of equal size".into()));
    }
    thetas
        .par_iter()
        .map(|&t| spectral_radius(&amplification(m1, m2, t)))
        .collect()
}

fn matrices(case: &StabilityCase, source: MatrixSource) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    match source {
        MatrixSource::Tabulated => build_coefficient_matrices(case),
        MatrixSource::Derived => derive_coefficient_matrices(case),
    }
}

/// Largest spectral radius over the standard wavenumber grid.
pub fn max_spectral_radius(case: &StabilityCase, source: MatrixSource) -> Result<f64> {
    let (m1, m2) = matrices(case, source)?;
    let rho = amplification_spectrum(&m1, &m2, &theta_grid(THETA_POINTS))?;
    Ok(rho.into_iter().fold(0.0, f64::max))
}

/// Whether the analysed solution is stable at the case's Courant number.
pub fn is_stable(case: &StabilityCase, source: MatrixSource) -> Result<bool> {
    Ok(max_spectral_radius(case, source)? <= 1.0 + STABILITY_SLACK)
}

/// Largest stable Courant number in `[0, 1]`, found by bisection to `tolerance`.
pub fn max_stable_nu(order: usize, candidate: usize, tolerance: f64) -> Result<f64> {
    max_stable_nu_with(order, candidate, tolerance, MatrixSource::Tabulated)
}

pub fn max_stable_nu_with(order: usize, candidate: usize, tolerance: f64, source: MatrixSource) -> Result<f64> {
    if !(tolerance > 0.0) {
        return Err(Error::config("bisection tolerance must be positive"));
    }
    let stable = |nu: f64| StabilityCase::new(order, candidate, nu).and_then(|c| is_stable(&c, source));
    let (mut lo, mut hi) = (0.0, 1.0);
    if !stable(lo)? {
        return Err(Error::Bracket(format!("order {order}, candidate {candidate} unstable at nu = 0")));
    }
    if stable(hi)? {
        return Err(Error::Bracket(format!("order {order}, candidate {candidate} still stable at nu = 1")));
    }
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if stable(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `(order, candidate, nu*)` for all analysed solutions.
pub fn stability_table(tolerance: f64) -> Result<Vec<(usize, usize, f64)>> {
    let mut out = Vec::new();
    for q in 2..=4 {
        for m in 0..=2 {
            out.push((q, m, max_stable_nu(q, m, tolerance)?));
        }
    }
    Ok(out)
}
