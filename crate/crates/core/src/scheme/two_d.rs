//! Staggered update of one 2D destination cell from its four source cells.
//!
//! Sources are named by the destination's vertices:
//! `A = (i, j)`, `B = (i+1, j)`, `C = (i+1, j+1)`, `D = (i, j+1)`.

use super::stencil::{apply_derivatives, recover, stencil};
use super::summary::{self, FD, FU, GL, GR, LD, LU, RD, RU, V2};
use super::{compensated_sum, CellUpdate};
use crate::error::{Error, Result};
use crate::jet::{CkJets, JetLayout, ScaledRatios, SpaceDims};

/// Average and DOFs (comp-major) of the destination cell with source
/// summaries `[A, B, C, D]`.
pub(crate) fn assemble(
    layout: &JetLayout,
    ncomp: usize,
    s: [&[f64]; 4],
    ratios: ScaledRatios,
    avg: &mut [f64],
    dofs: &mut [f64],
) {
    let st = stencil(layout);
    let w = summary::width(layout);
    let nd = layout.spatial_len();
    let (hx, hy) = (0.5 * ratios.nu_x, 0.5 * ratios.nu_y);
    for c in 0..ncomp {
        let [a, b, cc, d] = s.map(|x| &x[c * w..(c + 1) * w]);
        let m = 0.25 * (a[RU] + d[RD] + b[LU] + cc[LD])
            + hx * (a[FU] + d[FD] - b[FU] - cc[FD])
            + hy * (a[GR] + b[GL] - d[GR] - cc[GL]);
        avg[c] = m;
        let out = &mut dofs[c * nd..(c + 1) * nd];
        let v = [a, b, cc, d].map(|x| &x[V2..V2 + nd]);
        apply_derivatives(st, &v, out);
        out[0] = recover(st, m, out);
    }
}

/// Unlimited update of the cell whose vertices are the centers of the
/// evolved source cells `[A, B, C, D]`.
pub fn update_cell(jets: [&CkJets; 4], ratios: ScaledRatios) -> Result<CellUpdate> {
    let layout = jets[0].layout();
    let ncomp = jets[0].ncomp();
    if layout.dims() != SpaceDims::Two
        || jets.iter().any(|j| !std::ptr::eq(j.layout(), layout) || j.ncomp() != ncomp)
    {
        return Err(Error::Shape("2D update needs four source jets of the same 2D layout".into()));
    }
    let w = summary::width(layout);
    let mut sums = vec![0.0; 4 * ncomp * w];
    for (k, j) in jets.iter().enumerate() {
        summary::summarize(j, &mut sums[k * ncomp * w..(k + 1) * ncomp * w]);
    }
    let n = ncomp * w;
    let s = [&sums[..n], &sums[n..2 * n], &sums[2 * n..3 * n], &sums[3 * n..]];
    let mut out = CellUpdate {
        avg: vec![0.0; ncomp],
        dofs: vec![0.0; ncomp * layout.spatial_len()],
    };
    assemble(layout, ncomp, s, ratios, &mut out.avg, &mut out.dofs);
    Ok(out)
}

/// Total of the destination averages times the cell area implied by the
/// source block `sums[col][row]`, per component: quarter-cell contents plus
/// the time-integrated fluxes through the outermost source center lines.
pub(crate) fn source_budget<'s>(
    layout: &JetLayout,
    ncomp: usize,
    sums: impl Fn(usize, usize) -> &'s [f64],
    nx: usize,
    ny: usize,
    (dx, dy): (f64, f64),
    dt: f64,
) -> [f64; 4] {
    let w = summary::width(layout);
    let (li, lj) = (nx - 1, ny - 1);
    let mut out = [0.0; 4];
    for (c, o) in out.iter_mut().enumerate().take(ncomp) {
        let at = |i: usize, j: usize, k: usize| sums(i, j)[c * w + k];
        let quarters = compensated_sum((0..ny).flat_map(|j| {
            (0..nx).flat_map(move |i| {
                let mut q = [0.0; 4];
                if i < li && j < lj {
                    q[0] = at(i, j, RU);
                }
                if i < li && j > 0 {
                    q[1] = at(i, j, RD);
                }
                if i > 0 && j < lj {
                    q[2] = at(i, j, LU);
                }
                if i > 0 && j > 0 {
                    q[3] = at(i, j, LD);
                }
                q
            })
        }));
        let fcol = |i: usize| {
            compensated_sum((0..ny).map(|j| {
                let u = if j < lj { at(i, j, FU) } else { 0.0 };
                let d = if j > 0 { at(i, j, FD) } else { 0.0 };
                u + d
            }))
        };
        let grow = |j: usize| {
            compensated_sum((0..nx).map(|i| {
                let r = if i < li { at(i, j, GR) } else { 0.0 };
                let l = if i > 0 { at(i, j, GL) } else { 0.0 };
                r + l
            }))
        };
        *o = 0.25 * dx * dy * quarters
            + 0.5 * dt * dy * (fcol(0) - fcol(li))
            + 0.5 * dt * dx * (grow(0) - grow(lj));
    }
    out
}
