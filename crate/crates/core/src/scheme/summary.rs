//! Reductions of a source cell's space-time jets that the destination cells need.
//!
//! Per component, 1D: `[UR, UL, FBAR, V...]`; 2D: `[RU, RD, LU, LD, FU, FD,
//! GR, GL, V...]`. `UR` is the average of the solution over the right half of
//! the cell (2D: `RU` over the upper-right quarter), `FBAR` the time average of
//! the flux at the center line (2D: `FU` over the upper half of the vertical
//! center line, `GR` over the right half of the horizontal one), all in scaled
//! units. `V` holds the scaled spatial derivatives at the cell center at the
//! end of the half-step, in DOF order.

use std::sync::OnceLock;

use crate::jet::{CkJets, JetLayout, SpaceDims, MAX_DEGREE};

pub const UR: usize = 0;
pub const UL: usize = 1;
pub const FBAR: usize = 2;
pub const V1: usize = 3;

pub const RU: usize = 0;
pub const RD: usize = 1;
pub const LU: usize = 2;
pub const LD: usize = 3;
pub const FU: usize = 4;
pub const FD: usize = 5;
pub const GR: usize = 6;
pub const GL: usize = 7;
pub const V2: usize = 8;

/// Summary values per component.
pub fn width(layout: &JetLayout) -> usize {
    match layout.dims() {
        SpaceDims::One => V1 + layout.spatial_len(),
        SpaceDims::Two => V2 + layout.spatial_len(),
    }
}

/// Offset of the vertex DOFs within a component's summary.
pub fn vertex_offset(dims: SpaceDims) -> usize {
    match dims {
        SpaceDims::One => V1,
        SpaceDims::Two => V2,
    }
}

/// Weight of `s^k` integrated over `[0, 1/2]`, times 2.
fn half(k: usize) -> f64 {
    1.0 / ((k + 1) as f64 * 2f64.powi(k as i32))
}

fn half_neg(k: usize) -> f64 {
    if k % 2 == 0 {
        half(k)
    } else {
        -half(k)
    }
}

/// One contribution `weight * jet[coeff]` to summary slot `slot`.
#[derive(Debug, Clone, Copy)]
struct Term {
    coeff: usize,
    slot: usize,
    weight: f64,
}

/// Summary terms reading the solution, x-flux and y-flux jets.
#[derive(Debug, Default)]
struct Terms {
    u: Vec<Term>,
    f: Vec<Term>,
    g: Vec<Term>,
}

fn build_terms(layout: &JetLayout) -> Terms {
    let two_d = layout.dims() == SpaceDims::Two;
    let voff = vertex_offset(layout.dims());
    let mut t = Terms::default();
    let term = |coeff, slot, weight| Term { coeff, slot, weight };
    for i in 0..layout.len() {
        let [k, l, b] = layout.exponents(i);
        let tb = 1.0 / (b + 1) as f64;
        let sp = layout.index_of(k, l, 0).expect("spatial part in range");
        t.u.push(term(i, voff + sp, layout.factorial(sp)));
        if two_d {
            if b == 0 {
                let (rk, lk) = (half(k), half_neg(k));
                let (ul, dl) = (half(l), half_neg(l));
                t.u.push(term(i, RU, rk * ul));
                t.u.push(term(i, RD, rk * dl));
                t.u.push(term(i, LU, lk * ul));
                t.u.push(term(i, LD, lk * dl));
            }
            if k == 0 {
                t.f.push(term(i, FU, half(l) * tb));
                t.f.push(term(i, FD, half_neg(l) * tb));
            }
            if l == 0 {
                t.g.push(term(i, GR, half(k) * tb));
                t.g.push(term(i, GL, half_neg(k) * tb));
            }
        } else {
            if b == 0 {
                t.u.push(term(i, UR, half(k)));
                t.u.push(term(i, UL, half_neg(k)));
            }
            if k == 0 {
                t.f.push(term(i, FBAR, tb));
            }
        }
    }
    t
}

fn terms(layout: &JetLayout) -> &'static Terms {
    static TABLES: OnceLock<Vec<Terms>> = OnceLock::new();
    let all = TABLES.get_or_init(|| {
        let mut v = Vec::new();
        for dims in [SpaceDims::One, SpaceDims::Two] {
            for p in 0..=MAX_DEGREE {
                v.push(JetLayout::get(dims, p).map(build_terms).unwrap_or_default());
            }
        }
        v
    });
    let off = match layout.dims() {
        SpaceDims::One => 0,
        SpaceDims::Two => MAX_DEGREE + 1,
    };
    &all[off + layout.degree()]
}

fn accumulate(s: &mut [f64], jet: &[f64], terms: &[Term]) {
    for t in terms {
        s[t.slot] += jet[t.coeff] * t.weight;
    }
}

/// Writes the summary of `jets` into `out` (`ncomp * width` values).
pub fn summarize(jets: &CkJets, out: &mut [f64]) {
    let layout = jets.layout();
    let w = width(layout);
    let table = terms(layout);
    for c in 0..jets.ncomp() {
        let s = &mut out[c * w..(c + 1) * w];
        s.fill(0.0);
        accumulate(s, jets.u[c].taylor(), &table.u);
        accumulate(s, jets.f[c].taylor(), &table.f);
        accumulate(s, jets.g[c].taylor(), &table.g);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{cauchy_kovalewski, ScaledRatios};
    use crate::physics::Physics;

    #[test]
    fn linear_profile_half_averages() {
        let layout = JetLayout::get(SpaceDims::One, 1).unwrap();
        let phys = Physics::Advection1D { a: 1.0 };
        let mut jets = CkJets::new(layout, 1);
        let mut scratch = crate::jet::FluxModel::new_scratch(&phys, layout);
        cauchy_kovalewski(&phys, &[2.0, 1.0], ScaledRatios::new_1d(0.1, 1.0), &mut scratch, &mut jets)
            .unwrap();
        let mut s = vec![0.0; width(layout)];
        summarize(&jets, &mut s);
        assert!((s[UR] - 2.25).abs() < 1e-15);
        assert!((s[UL] - 1.75).abs() < 1e-15);
        // f = u(0, t) = 2 - 0.1 t over t in [0, 1]
        assert!((s[FBAR] - 1.95).abs() < 1e-15);
        assert!((s[V1] - 1.9).abs() < 1e-15);
        assert!((s[V1 + 1] - 1.0).abs() < 1e-15);
    }
}
