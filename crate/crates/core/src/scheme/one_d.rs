//! Staggered update of one 1D destination cell from its two source cells.

use super::stencil::{apply_derivatives, recover, stencil};
use super::summary::{self, FBAR, UL, UR, V1};
use super::{CellUpdate, compensated_sum};
use crate::error::{Error, Result};
use crate::jet::{CkJets, JetLayout, ScaledRatios, SpaceDims};

/// Average and DOFs (comp-major) of the destination cell between the summaries
/// `sl` (left source) and `sr` (right source).
pub(crate) fn assemble(
    layout: &JetLayout,
    ncomp: usize,
    sl: &[f64],
    sr: &[f64],
    nu_x: f64,
    avg: &mut [f64],
    dofs: &mut [f64],
) {
    let st = stencil(layout);
    let w = summary::width(layout);
    let nd = layout.spatial_len();
    for c in 0..ncomp {
        let l = &sl[c * w..(c + 1) * w];
        let r = &sr[c * w..(c + 1) * w];
        let a = 0.5 * (l[UR] + r[UL]) + nu_x * (l[FBAR] - r[FBAR]);
        avg[c] = a;
        let d = &mut dofs[c * nd..(c + 1) * nd];
        apply_derivatives(st, &[&l[V1..V1 + nd], &r[V1..V1 + nd]], d);
        d[0] = recover(st, a, d);
    }
}

/// Unlimited update of the cell between two evolved source cells.
pub fn update_cell(left: &CkJets, right: &CkJets, ratios: ScaledRatios) -> Result<CellUpdate> {
    let layout = left.layout();
    if layout.dims() != SpaceDims::One || !std::ptr::eq(layout, right.layout()) || left.ncomp() != right.ncomp() {
        return Err(Error::Shape("1D update needs two source jets of the same 1D layout".into()));
    }
    let ncomp = left.ncomp();
    let w = summary::width(layout);
    let mut sl = vec![0.0; ncomp * w];
    let mut sr = vec![0.0; ncomp * w];
    summary::summarize(left, &mut sl);
    summary::summarize(right, &mut sr);
    let mut out = CellUpdate {
        avg: vec![0.0; ncomp],
        dofs: vec![0.0; ncomp * layout.spatial_len()],
    };
    assemble(layout, ncomp, &sl, &sr, ratios.nu_x, &mut out.avg, &mut out.dofs);
    Ok(out)
}

/// Total of the destination averages times `dx` implied by the source
/// summaries `first..=last`, per component: half-cell contents plus the
/// time-integrated fluxes through the two outermost source centers.
pub(crate) fn source_budget(
    layout: &JetLayout,
    ncomp: usize,
    sums: &[&[f64]],
    dx: f64,
    dt: f64,
) -> [f64; 4] {
    let w = summary::width(layout);
    let n = sums.len();
    let mut out = [0.0; 4];
    for (c, o) in out.iter_mut().enumerate().take(ncomp) {
        let at = |s: usize, k: usize| sums[s][c * w + k];
        let halves = compensated_sum((0..n).flat_map(|s| {
            let r = if s + 1 < n { at(s, UR) } else { 0.0 };
            let l = if s > 0 { at(s, UL) } else { 0.0 };
            [0.5 * r, 0.5 * l]
        }));
        *o = dx * halves + dt * (at(0, FBAR) - at(n - 1, FBAR));
    }
    out
}
