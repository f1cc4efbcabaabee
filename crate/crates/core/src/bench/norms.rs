//! Error norms against exact solutions and deterministic reductions.

use crate::error::{Error, Result};
use crate::mesh::MeshState;
use crate::problems::ProblemSpec;

/// Sum in a fixed pairwise order, independent of thread count.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    const LEAF: usize = 16;
    if v.len() <= LEAF {
        v.iter().sum()
    } else {
        let (a, b) = v.split_at(v.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

/// Maximum ignoring order; NaN propagates.
pub fn max_value(v: &[f64]) -> f64 {
    v.iter().fold(f64::NEG_INFINITY, |m, &x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}

/// Mean and maximum absolute error of the first component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub l1: f64,
    pub linf: f64,
}

/// Errors of the cell-center point values of component 0 over the distinct
/// cells of the active mesh at the state's time.
pub fn error_norms(state: &MeshState, spec: &ProblemSpec) -> Result<ErrorReport> {
    if !spec.has_exact() {
        return Err(Error::Unsupported(format!("case {} has no exact solution", spec.id)));
    }
    let t = state.time();
    let errs: Vec<f64> = state
        .unique_cells()
        .map(|(i, j)| {
            let (x, y) = state.center(i, j);
            let exact = spec.exact_solution(x, y, t)?;
            Ok((state.field().cell(i, j)[0] - exact[0]).abs())
        })
        .collect::<Result<_>>()?;
    Ok(ErrorReport {
        l1: pairwise_sum(&errs) / errs.len() as f64,
        linf: max_value(&errs),
    })
}

/// Observed order between two errors whose mesh sizes differ by `ratio`.
pub fn observed_order(coarse: f64, fine: f64, ratio: f64) -> Option<f64> {
    if coarse > 0.0 && fine > 0.0 && ratio > 1.0 {
        Some((coarse / fine).ln() / ratio.ln())
    } else {
        None
    }
}
