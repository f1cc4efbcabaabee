//! Staggered Cartesian meshes and per-cell DOF storage.
//!
//! Along each axis with `N` intervals of width `dx` on `[lo, hi]`:
//! - the original mesh has `N + 1` cells centered at `lo + (i - 1) dx`,
//!   `i = 1..=N+1`; the two end cells straddle the boundary;
//! - the staggered mesh has `N` cells centered at `lo + (s - 1/2) dx`,
//!   `s = 1..=N`, tiling `[lo, hi]` exactly.
//!
//! Storage indices equal these cell indices, with one ghost layer on each
//! side (index 0 and `N + 2` on the original mesh, 0 and `N + 1` on the
//! staggered mesh).

pub mod bc;

use std::ops::Range;

use crate::error::{Error, Result};
use crate::jet::{JetLayout, SpaceDims};

pub use bc::{fill_ghosts, Bc, Boundaries, ShockFoot, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Original,
    Staggered,
}

impl Parity {
    pub fn other(self) -> Parity {
        match self {
            Parity::Original => Parity::Staggered,
            Parity::Staggered => Parity::Original,
        }
    }

    fn slot(self) -> usize {
        match self {
            Parity::Original => 0,
            Parity::Staggered => 1,
        }
    }
}

/// One mesh direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    lo: f64,
    hi: f64,
    n: usize,
    periodic: bool,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, n: usize, periodic: bool) -> Result<Self> {
        if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::config(format!("empty interval [{lo}, {hi}]")));
        }
        if n < 2 {
            return Err(Error::config(format!("need at least 2 cells per axis, got {n}")));
        }
        Ok(Axis { lo, hi, n, periodic })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn periodic(&self) -> bool {
        self.periodic
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn dx(&self) -> f64 {
        (self.hi - self.lo) / self.n as f64
    }

    /// Cells updated by the scheme.
    pub fn active(&self, parity: Parity) -> Range<usize> {
        match parity {
            Parity::Original => 1..self.n + 2,
            Parity::Staggered => 1..self.n + 1,
        }
    }

    /// Distinct physical cells: the periodic original mesh repeats cell 1 as cell `N + 1`.
    pub fn unique(&self, parity: Parity) -> Range<usize> {
        match (parity, self.periodic) {
            (Parity::Original, true) => 1..self.n + 1,
            _ => self.active(parity),
        }
    }

    pub fn storage_len(&self, parity: Parity) -> usize {
        self.active(parity).end + 1
    }

    pub fn center(&self, parity: Parity, i: usize) -> f64 {
        let dx = self.dx();
        match parity {
            Parity::Original => self.lo + (i as f64 - 1.0) * dx,
            Parity::Staggered => self.lo + (i as f64 - 0.5) * dx,
        }
    }

    /// Left/lower source cell of destination cell `d` on mesh `dest`; the other
    /// source is the next cell.
    pub fn source_left(&self, dest: Parity, d: usize) -> usize {
        match dest {
            Parity::Staggered => d,
            Parity::Original => d - 1,
        }
    }
}

/// Destination cell of the next half-step whose left/lower vertex is source cell `i`.
pub fn staggered_target_index(parity: Parity, axis: &Axis, i: usize) -> Result<usize> {
    let range = match parity {
        Parity::Original => 1..axis.n + 1,
        Parity::Staggered => 0..axis.n + 1,
    };
    if !range.contains(&i) {
        return Err(Error::Index {
            index: i.to_string(),
            what: format!("{parity:?} cells with a right neighbour"),
        });
    }
    Ok(match parity {
        Parity::Original => i,
        Parity::Staggered => i + 1,
    })
}

/// Geometry of a 1D or 2D run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh {
    pub x: Axis,
    pub y: Option<Axis>,
}

impl Mesh {
    pub fn new_1d(x: Axis) -> Self {
        Mesh { x, y: None }
    }

    pub fn new_2d(x: Axis, y: Axis) -> Self {
        Mesh { x, y: Some(y) }
    }

    pub fn dims(&self) -> SpaceDims {
        if self.y.is_some() {
            SpaceDims::Two
        } else {
            SpaceDims::One
        }
    }

    pub fn cell_volume(&self) -> f64 {
        self.x.dx() * self.y.map_or(1.0, |y| y.dx())
    }

    /// Storage extents `(columns, rows)`.
    pub fn storage(&self, parity: Parity) -> (usize, usize) {
        (
            self.x.storage_len(parity),
            self.y.map_or(1, |y| y.storage_len(parity)),
        )
    }

    /// Active rows; `0..1` in 1D.
    pub fn active_rows(&self, parity: Parity) -> Range<usize> {
        self.y.map_or(0..1, |y| y.active(parity))
    }

    pub fn unique_rows(&self, parity: Parity) -> Range<usize> {
        self.y.map_or(0..1, |y| y.unique(parity))
    }
}

/// Flat per-cell DOF storage for one mesh parity.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    cols: usize,
    rows: usize,
    stride: usize,
    data: Vec<f64>,
}

impl Field {
    pub fn new(cols: usize, rows: usize, stride: usize) -> Self {
        Field {
            cols,
            rows,
            stride,
            data: vec![0.0; cols * rows * stride],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Values per cell (`ncomp * ndof`).
    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn cell(&self, i: usize, j: usize) -> &[f64] {
        let o = (j * self.cols + i) * self.stride;
        &self.data[o..o + self.stride]
    }

    pub fn cell_mut(&mut self, i: usize, j: usize) -> &mut [f64] {
        let o = (j * self.cols + i) * self.stride;
        &mut self.data[o..o + self.stride]
    }

    pub fn copy_cell(&mut self, from: (usize, usize), to: (usize, usize)) {
        let s = self.stride;
        let a = (from.1 * self.cols + from.0) * s;
        let b = (to.1 * self.cols + to.0) * s;
        self.data.copy_within(a..a + s, b);
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Row-major chunks of one storage row each.
    pub fn rows_mut(&mut self) -> std::slice::ChunksExactMut<'_, f64> {
        self.data.chunks_exact_mut(self.cols * self.stride)
    }
}

/// Solution state: geometry, active parity, time, and both DOF buffers.
#[derive(Debug, Clone)]
pub struct MeshState {
    mesh: Mesh,
    layout: &'static JetLayout,
    ncomp: usize,
    parity: Parity,
    time: f64,
    fields: [Field; 2],
}

impl MeshState {
    /// Zero-initialized state on `parity` for polynomials of degree `degree`.
    pub fn new(mesh: Mesh, degree: usize, ncomp: usize, parity: Parity) -> Result<Self> {
        let layout = JetLayout::get(mesh.dims(), degree)?;
        let stride = ncomp * layout.spatial_len();
        let mk = |p: Parity| {
            let (c, r) = mesh.storage(p);
            Field::new(c, r, stride)
        };
        Ok(MeshState {
            mesh,
            layout,
            ncomp,
            parity,
            time: 0.0,
            fields: [mk(Parity::Original), mk(Parity::Staggered)],
        })
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn dims(&self) -> SpaceDims {
        self.mesh.dims()
    }

    /// Space-time jet layout matching the polynomial degree.
    pub fn layout(&self) -> &'static JetLayout {
        self.layout
    }

    pub fn degree(&self) -> usize {
        self.layout.degree()
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    /// Spatial DOFs per component.
    pub fn ndof(&self) -> usize {
        self.layout.spatial_len()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn set_time(&mut self, t: f64) {
        self.time = t;
    }

    pub fn field(&self) -> &Field {
        &self.fields[self.parity.slot()]
    }

    pub fn field_mut(&mut self) -> &mut Field {
        &mut self.fields[self.parity.slot()]
    }

    /// Active buffer (read) and the other parity's buffer (write).
    pub fn split(&mut self) -> (&Field, &mut Field) {
        let [a, b] = &mut self.fields;
        match self.parity {
            Parity::Original => (a, b),
            Parity::Staggered => (b, a),
        }
    }

    /// Makes the other buffer active and advances the clock.
    pub fn swap(&mut self, dt: f64) {
        self.parity = self.parity.other();
        self.time += dt;
    }

    /// Cell center of storage cell `(i, j)` on the active parity.
    pub fn center(&self, i: usize, j: usize) -> (f64, f64) {
        let x = self.mesh.x.center(self.parity, i);
        let y = self.mesh.y.map_or(0.0, |a| a.center(self.parity, j));
        (x, y)
    }

    /// Distinct active cells as `(i, j)` storage indices, row-major.
    pub fn unique_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let xs = self.mesh.x.unique(self.parity);
        self.mesh
            .unique_rows(self.parity)
            .flat_map(move |j| xs.clone().map(move |i| (i, j)))
    }

    /// Cell-center point values of all components.
    pub fn point_value(&self, i: usize, j: usize) -> Vec<f64> {
        let nd = self.ndof();
        self.field()
            .cell(i, j)
            .chunks_exact(nd)
            .map(|c| c[0])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_cycle() {
        let ax = Axis::new(0.0, 1.0, 4, false).unwrap();
        assert_eq!(staggered_target_index(Parity::Original, &ax, 1).unwrap(), 1);
        assert_eq!(staggered_target_index(Parity::Staggered, &ax, 0).unwrap(), 1);
        assert!(staggered_target_index(Parity::Original, &ax, 5).is_err());
        assert_eq!(ax.source_left(Parity::Staggered, 3), 3);
        assert_eq!(ax.source_left(Parity::Original, 3), 2);
    }

    #[test]
    fn centers_round_trip() {
        let ax = Axis::new(-1.0, 1.0, 8, true).unwrap();
        for i in ax.active(Parity::Original) {
            let s = ax.source_left(Parity::Staggered, i.min(8));
            let mid = 0.5 * (ax.center(Parity::Original, s) + ax.center(Parity::Original, s + 1));
            assert!((mid - ax.center(Parity::Staggered, s)).abs() < 1e-15);
        }
        assert_eq!(ax.unique(Parity::Original).len(), 8);
        assert_eq!(ax.active(Parity::Original).len(), 9);
    }
}
