//! One half time-step of the weighted compact central scheme.
//!
//! A half-step moves the solution from the active mesh to the other parity:
//! every needed source cell is evolved in time by the Cauchy-Kovalewski
//! procedure and reduced to a summary, each destination cell is assembled
//! from the summaries of the source cells at its vertices, then limited, and
//! the result is checked for admissibility and discrete conservation.

pub mod one_d;
mod stencil;
pub mod summary;
pub mod two_d;

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jet::{cauchy_kovalewski, CkJets, FluxModel, JetLayout, ScaledRatios, SpaceDims};
use crate::limiter::{characteristic_limit, rotation_angle, LimiterParams};
use crate::mesh::{Axis, MeshState, Parity};
use crate::physics::Physics;

/// Scheme options.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    /// Formal order of accuracy, 2..=4; the polynomial degree is `order - 1`.
    pub order: usize,
    /// Courant number per half-step.
    pub cfl: f64,
    /// `None` runs the linear scheme.
    pub limiter: Option<LimiterParams>,
    /// Limit in characteristic fields (Euler only).
    pub characteristic: bool,
}

impl SchemeConfig {
    pub fn new(order: usize) -> Result<Self> {
        Ok(SchemeConfig {
            order,
            cfl: default_cfl(order)?,
            limiter: Some(LimiterParams::default()),
            characteristic: true,
        })
    }

    pub fn linear(order: usize) -> Result<Self> {
        Ok(SchemeConfig {
            limiter: None,
            characteristic: false,
            ..Self::new(order)?
        })
    }

    pub fn degree(&self) -> usize {
        self.order - 1
    }
}

fn check_order(order: usize) -> Result<()> {
    if (2..=4).contains(&order) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("order {order}; supported orders are 2, 3 and 4")))
    }
}

/// Default Courant number of each order.
pub fn default_cfl(order: usize) -> Result<f64> {
    check_order(order)?;
    Ok([0.4, 0.3, 0.25][order - 2])
}

/// Largest linearly stable Courant number of each order.
pub fn stability_bound(order: usize) -> Result<f64> {
    check_order(order)?;
    Ok([0.5, 0.384, 0.304][order - 2])
}

/// Result of a destination update of one cell, components stored component-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CellUpdate {
    pub avg: Vec<f64>,
    pub dofs: Vec<f64>,
}

/// Diagnostics of one half-step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfStepReport {
    pub dt: f64,
    /// Per component: integral of the new solution minus the integral
    /// predicted by the sources and boundary fluxes.
    pub residual: [f64; 4],
    /// Per component: sum of `|average| * volume` over the new cells.
    pub scale: [f64; 4],
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Cell average of a polynomial given by its scaled derivatives.
pub fn cell_average(layout: &JetLayout, dofs: &[f64]) -> f64 {
    stencil::average(stencil::stencil(layout), dofs)
}

/// Point value at the center from the cell average and the derivatives in `dofs[1..]`.
pub fn recover_point_value(layout: &JetLayout, avg: f64, dofs: &[f64]) -> f64 {
    stencil::recover(stencil::stencil(layout), avg, dofs)
}

/// Half-step size for Courant number `cfl` from the cell-center states of the
/// active mesh.
pub fn stable_dt(state: &MeshState, physics: &Physics, cfl: f64) -> Result<f64> {
    let mesh = state.mesh();
    let dx = mesh.x.dx();
    let dy = mesh.y.map_or(f64::INFINITY, |y| y.dx());
    let mut rate = 0.0f64;
    for (i, j) in state.unique_cells() {
        let u = state.point_value(i, j);
        let [sx, sy] = physics.wave_speeds(&u).map_err(|e| abort(i, j, state, &e))?;
        rate = rate.max(sx / dx + sy / dy);
    }
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(Error::Numeric(format!("no finite positive signal speed ({rate})")));
    }
    Ok(cfl / rate)
}

fn abort(i: usize, j: usize, state: &MeshState, e: &Error) -> Error {
    let cell = match state.dims() {
        SpaceDims::One => format!("{i}"),
        SpaceDims::Two => format!("({i}, {j})"),
    };
    Error::Abort {
        cell,
        time: state.time(),
        reason: e.to_string(),
    }
}

/// Source cells needed along one axis, and the map from destination to
/// its lower source.
struct AxisPlan {
    dest: std::ops::Range<usize>,
    src: RangeInclusive<usize>,
    shift: usize,
}

impl AxisPlan {
    fn new(axis: &Axis, dest: Parity) -> Self {
        let act = axis.active(dest);
        let lo = axis.source_left(dest, act.start);
        let hi = axis.source_left(dest, act.end - 1) + 1;
        AxisPlan {
            shift: act.start - lo,
            dest: act,
            src: lo..=hi,
        }
    }

    fn single() -> Self {
        AxisPlan {
            dest: 0..1,
            src: 0..=0,
            shift: 0,
        }
    }

    fn lower(&self, d: usize) -> usize {
        d - self.shift
    }
}

/// Destination neighbour `i + delta` along `axis`, wrapping when periodic.
fn neighbor(axis: &Axis, parity: Parity, i: usize, delta: isize) -> Option<usize> {
    let r = axis.active(parity);
    let k = i as isize + delta;
    let n = axis.n() as isize;
    if k >= r.start as isize && k < r.end as isize {
        Some(k as usize)
    } else if axis.periodic() {
        Some(if k < r.start as isize { k + n } else { k - n } as usize)
    } else {
        None
    }
}

fn gradient(axis: &Axis, parity: Parity, i: usize, at: &dyn Fn(usize) -> f64) -> f64 {
    let l = neighbor(axis, parity, i, -1);
    let r = neighbor(axis, parity, i, 1);
    let h = axis.dx();
    match (l, r) {
        (Some(l), Some(r)) => (at(r) - at(l)) / (2.0 * h),
        (Some(l), None) => (at(i) - at(l)) / h,
        (None, Some(r)) => (at(r) - at(i)) / h,
        (None, None) => 0.0,
    }
}

/// Advances the state by the half-step `dt` onto the other mesh.
///
/// Ghost cells of the active mesh must be filled beforehand.
pub fn advance_half_step(
    state: &mut MeshState,
    physics: &Physics,
    config: &SchemeConfig,
    dt: f64,
) -> Result<HalfStepReport> {
    check_order(config.order)?;
    if physics.dims() != state.dims() || physics.ncomp() != state.ncomp() {
        return Err(Error::Shape(format!(
            "physics with {} components does not match the mesh state",
            physics.ncomp()
        )));
    }
    if state.degree() != config.degree() {
        return Err(Error::config(format!(
            "state holds degree {} but order {} needs degree {}",
            state.degree(),
            config.order,
            config.degree()
        )));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Numeric(format!("invalid time step {dt}")));
    }
    let mesh = *state.mesh();
    let dims = mesh.dims();
    let layout = state.layout();
    let nd = layout.spatial_len();
    let ncomp = state.ncomp();
    let src_parity = state.parity();
    let dst_parity = src_parity.other();
    let time = state.time();
    let ratios = match mesh.y {
        None => ScaledRatios::new_1d(dt, mesh.x.dx()),
        Some(y) => ScaledRatios::new_2d(dt, mesh.x.dx(), y.dx()),
    };
    let px = AxisPlan::new(&mesh.x, dst_parity);
    let py = mesh.y.map_or_else(AxisPlan::single, |y| AxisPlan::new(&y, dst_parity));
    let cw = ncomp * summary::width(layout);
    let abort_at = |i: usize, j: usize, e: &Error| {
        let cell = match dims {
            SpaceDims::One => format!("{i}"),
            SpaceDims::Two => format!("({i}, {j})"),
        };
        Error::Abort {
            cell,
            time,
            reason: e.to_string(),
        }
    };

    let (src, dst) = state.split();
    let scols = src.cols();
    let stride = src.stride();

    // 1. summaries of the evolved source cells
    let mut sums = vec![0.0; scols * src.rows() * cw];
    sums.par_chunks_mut(scols * cw)
        .enumerate()
        .filter(|(j, _)| py.src.contains(j))
        .try_for_each_init(
            || (physics.new_scratch(layout), CkJets::new(layout, ncomp)),
            |(scratch, jets), (j, row)| {
                for i in px.src.clone() {
                    cauchy_kovalewski(physics, src.cell(i, j), ratios, scratch, jets)
                        .map_err(|e| abort_at(i, j, &e))?;
                    summary::summarize(jets, &mut row[i * cw..(i + 1) * cw]);
                }
                Ok::<(), Error>(())
            },
        )?;
    let sum_at = |i: usize, j: usize| &sums[(j * scols + i) * cw..(j * scols + i + 1) * cw];

    // 2. unlimited destination cells
    let dcols = dst.cols();
    let mut avgs = vec![0.0; dcols * dst.rows() * ncomp];
    dst.data_mut()
        .par_chunks_mut(dcols * stride)
        .zip(avgs.par_chunks_mut(dcols * ncomp))
        .enumerate()
        .filter(|(j, _)| py.dest.contains(j))
        .for_each(|(j, (frow, arow))| {
            let sj = py.lower(j);
            for i in px.dest.clone() {
                let si = px.lower(i);
                let dofs = &mut frow[i * stride..(i + 1) * stride];
                let avg = &mut arow[i * ncomp..(i + 1) * ncomp];
                match dims {
                    SpaceDims::One => {
                        one_d::assemble(layout, ncomp, sum_at(si, 0), sum_at(si + 1, 0), ratios.nu_x, avg, dofs)
                    }
                    SpaceDims::Two => {
                        let s = [
                            sum_at(si, sj),
                            sum_at(si + 1, sj),
                            sum_at(si + 1, sj + 1),
                            sum_at(si, sj + 1),
                        ];
                        two_d::assemble(layout, ncomp, s, ratios, avg, dofs)
                    }
                }
            }
        });

    // 3. limiting
    if let Some(params) = config.limiter {
        let voff = summary::vertex_offset(dims);
        let sw = summary::width(layout);
        let avg_at = |i: usize, j: usize| &avgs[(j * dcols + i) * ncomp..(j * dcols + i + 1) * ncomp];
        dst.data_mut()
            .par_chunks_mut(dcols * stride)
            .enumerate()
            .filter(|(j, _)| py.dest.contains(j))
            .try_for_each(|(j, frow)| {
                let sj = py.lower(j);
                for i in px.dest.clone() {
                    let si = px.lower(i);
                    let quad;
                    let srcs: &[&[f64]] = match dims {
                        SpaceDims::One => {
                            quad = [sum_at(si, 0), sum_at(si + 1, 0), &[], &[]];
                            &quad[..2]
                        }
                        SpaceDims::Two => {
                            quad = [
                                sum_at(si, sj),
                                sum_at(si + 1, sj),
                                sum_at(si + 1, sj + 1),
                                sum_at(si, sj + 1),
                            ];
                            &quad
                        }
                    };
                    let mut vertices = [[0.0; 4]; 4];
                    for (c, vc) in vertices.iter_mut().enumerate().take(ncomp) {
                        for (v, s) in srcs.iter().enumerate() {
                            vc[v] = s[c * sw + voff];
                        }
                    }
                    let avg = avg_at(i, j);
                    let eig = if config.characteristic && physics.is_euler() {
                        let theta = match mesh.y {
                            Some(y) => {
                                let phi = |ii: usize, jj: usize| avg_at(ii, jj)[ncomp - 1];
                                let gx = gradient(&mesh.x, dst_parity, i, &|ii| phi(ii, j));
                                let gy = gradient(&y, dst_parity, j, &|jj| phi(i, jj));
                                rotation_angle((gx, gy), phi(i, j))
                            }
                            None => 0.0,
                        };
                        physics.eigensystem(avg, theta).map_err(|e| abort_at(i, j, &e))?
                    } else {
                        None
                    };
                    let dofs = &mut frow[i * stride..(i + 1) * stride];
                    characteristic_limit(layout, dofs, avg, &vertices[..ncomp], eig.as_ref(), &params);
                }
                Ok::<(), Error>(())
            })?;
    }

    // 4. admissibility
    let mut point = [0.0; 4];
    for j in py.dest.clone() {
        for i in px.dest.clone() {
            let cell = dst.cell(i, j);
            for (c, p) in point.iter_mut().enumerate().take(ncomp) {
                *p = cell[c * nd];
            }
            if cell.iter().any(|v| !v.is_finite()) {
                return Err(abort_at(i, j, &Error::physics("non-finite DOF")));
            }
            physics
                .check_admissible(&point[..ncomp])
                .map_err(|e| abort_at(i, j, &e))?;
        }
    }

    // 5. discrete conservation
    let vol = mesh.cell_volume();
    let mut residual = [0.0; 4];
    let mut scale = [0.0; 4];
    let st = stencil::stencil(layout);
    for c in 0..ncomp {
        let cells = py
            .dest
            .clone()
            .flat_map(|j| px.dest.clone().map(move |i| (i, j)))
            .map(|(i, j)| stencil::average(st, &dst.cell(i, j)[c * nd..(c + 1) * nd]));
        let vals: Vec<f64> = cells.collect();
        residual[c] = vol * compensated_sum(vals.iter().copied());
        scale[c] = vol * compensated_sum(vals.iter().map(|v| v.abs()));
    }
    let budget = match mesh.y {
        None => {
            let srcs: Vec<&[f64]> = px.src.clone().map(|i| sum_at(i, 0)).collect();
            one_d::source_budget(layout, ncomp, &srcs, mesh.x.dx(), dt)
        }
        Some(y) => {
            let (i0, j0) = (*px.src.start(), *py.src.start());
            let nx = px.src.clone().count();
            let ny = py.src.clone().count();
            two_d::source_budget(
                layout,
                ncomp,
                |a, b| sum_at(i0 + a, j0 + b),
                nx,
                ny,
                (mesh.x.dx(), y.dx()),
                dt,
            )
        }
    };
    for c in 0..ncomp {
        residual[c] -= budget[c];
    }

    state.swap(dt);
    Ok(HalfStepReport { dt, residual, scale })
}
