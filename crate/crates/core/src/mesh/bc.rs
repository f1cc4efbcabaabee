//! Ghost-cell filling for the boundary conditions of the benchmark cases.

use super::{Axis, Field, MeshState, Parity};
use crate::error::{Error, Result};
use crate::jet::JetLayout;
use crate::physics::Physics;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

/// Straight oblique shock whose foot moves along a boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockFoot {
    /// Abscissa of the shock at `y = 0`, `t = 0`.
    pub x0: f64,
    /// Angle between the shock and the x-axis, in radians.
    pub angle: f64,
    /// Normal shock speed.
    pub speed: f64,
    /// Conservative state ahead of the shock (larger x).
    pub pre: [f64; 4],
    /// Conservative state behind the shock.
    pub post: [f64; 4],
}

impl ShockFoot {
    /// Shock abscissa at height `y` and time `t`.
    pub fn position(&self, y: f64, t: f64) -> f64 {
        self.x0 + y / self.angle.tan() + self.speed * t / self.angle.sin()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bc {
    Periodic,
    /// Zeroth-order extrapolation of the nearest active cell.
    NonReflective,
    ReflectiveWall,
    /// Prescribed conservative state with zero derivatives.
    Inflow([f64; 4]),
    /// Exact pre/post-shock state chosen by the moving shock foot (top side).
    ShockFoot(ShockFoot),
    /// Non-reflective where the tangential coordinate is `<= x0`, wall beyond.
    WallBeyond(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boundaries {
    pub left: Bc,
    pub right: Bc,
    pub bottom: Bc,
    pub top: Bc,
}

impl Boundaries {
    pub fn uniform(bc: Bc) -> Self {
        Boundaries {
            left: bc,
            right: bc,
            bottom: bc,
            top: bc,
        }
    }

    pub fn get(&self, side: Side) -> &Bc {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
            Side::Bottom => &self.bottom,
            Side::Top => &self.top,
        }
    }

    pub fn x_periodic(&self) -> bool {
        self.left == Bc::Periodic
    }

    pub fn y_periodic(&self) -> bool {
        self.bottom == Bc::Periodic
    }

    /// Periodic sides must come in opposite pairs.
    pub fn validate(&self) -> Result<()> {
        let pair = |a: &Bc, b: &Bc, name: &str| {
            if (*a == Bc::Periodic) != (*b == Bc::Periodic) {
                Err(Error::config(format!("{name} sides must both be periodic or neither")))
            } else {
                Ok(())
            }
        };
        pair(&self.left, &self.right, "left/right")?;
        pair(&self.bottom, &self.top, "bottom/top")
    }
}

fn momentum_index(physics: &Physics, normal_x: bool) -> Option<usize> {
    match (physics, normal_x) {
        (Physics::Euler1D(_), true) => Some(1),
        (Physics::Euler2D(_), true) => Some(1),
        (Physics::Euler2D(_), false) => Some(2),
        _ => None,
    }
}

struct SideCtx<'a> {
    layout: &'static JetLayout,
    ncomp: usize,
    normal_x: bool,
    momentum: Option<usize>,
    parity: Parity,
    normal: &'a Axis,
    tangent: Option<&'a Axis>,
    time: f64,
    top_y: f64,
}

impl SideCtx<'_> {
    fn at(&self, normal: usize, tang: usize) -> (usize, usize) {
        if self.normal_x {
            (normal, tang)
        } else {
            (tang, normal)
        }
    }

    fn mirror(&self, field: &mut Field, from: (usize, usize), to: (usize, usize)) {
        field.copy_cell(from, to);
        let nd = self.layout.spatial_len();
        let cell = field.cell_mut(to.0, to.1);
        for c in 0..self.ncomp {
            for d in 0..nd {
                let [k, l, _] = self.layout.exponents(d);
                let order = if self.normal_x { k } else { l };
                let mut flip = order % 2 == 1;
                if self.momentum == Some(c) {
                    flip = !flip;
                }
                if flip {
                    cell[c * nd + d] = -cell[c * nd + d];
                }
            }
        }
    }

    fn set_state(&self, field: &mut Field, to: (usize, usize), state: &[f64; 4]) {
        let nd = self.layout.spatial_len();
        let cell = field.cell_mut(to.0, to.1);
        cell.fill(0.0);
        for c in 0..self.ncomp {
            cell[c * nd] = state[c];
        }
    }

    fn tangential_center(&self, tang: usize) -> f64 {
        self.tangent.map_or(0.0, |a| a.center(self.parity, tang))
    }

    fn fill(&self, field: &mut Field, bc: &Bc, low: bool, tangs: std::ops::Range<usize>) -> Result<()> {
        let act = self.normal.active(self.parity);
        let (first, last) = (act.start, act.end - 1);
        let ghost = if low { first - 1 } else { last + 1 };
        let nearest = if low { first } else { last };
        let mirror_src = match (self.parity, low) {
            (Parity::Staggered, _) => nearest,
            (Parity::Original, true) => first + 1,
            (Parity::Original, false) => last - 1,
        };
        for t in tangs {
            let to = self.at(ghost, t);
            match bc {
                Bc::Periodic => {
                    let n = self.normal.n();
                    let from = match (self.parity, low) {
                        (_, true) => n,
                        (Parity::Staggered, false) => 1,
                        (Parity::Original, false) => 2,
                    };
                    if self.parity == Parity::Original && low {
                        field.copy_cell(self.at(1, t), self.at(n + 1, t));
                    }
                    field.copy_cell(self.at(from, t), to);
                }
                Bc::NonReflective => field.copy_cell(self.at(nearest, t), to),
                Bc::ReflectiveWall => self.mirror(field, self.at(mirror_src, t), to),
                Bc::Inflow(state) => self.set_state(field, to, state),
                Bc::ShockFoot(shock) => {
                    if self.normal_x {
                        return Err(Error::config("moving shock foot only on bottom/top sides"));
                    }
                    let xs = shock.position(self.top_y, self.time);
                    let state = if self.tangential_center(t) < xs {
                        &shock.post
                    } else {
                        &shock.pre
                    };
                    self.set_state(field, to, state);
                }
                Bc::WallBeyond(x0) => {
                    if self.tangential_center(t) <= *x0 {
                        field.copy_cell(self.at(nearest, t), to);
                    } else {
                        self.mirror(field, self.at(mirror_src, t), to);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Populates the ghost layer of the active buffer at the state's current time.
///
/// The x-sides are filled over the active rows first, then the y-sides over
/// the full storage width so that corner ghosts are consistent.
pub fn fill_ghosts(state: &mut MeshState, bcs: &Boundaries, physics: &Physics) -> Result<()> {
    bcs.validate()?;
    let mesh = *state.mesh();
    if bcs.x_periodic() != mesh.x.periodic() {
        return Err(Error::config("x-axis periodicity disagrees with boundary conditions"));
    }
    if let Some(y) = mesh.y {
        if bcs.y_periodic() != y.periodic() {
            return Err(Error::config("y-axis periodicity disagrees with boundary conditions"));
        }
    }
    let parity = state.parity();
    let layout = state.layout();
    let ncomp = state.ncomp();
    let time = state.time();
    let top_y = mesh.y.map_or(0.0, |y| y.hi());
    let field = state.field_mut();

    let xctx = SideCtx {
        layout,
        ncomp,
        normal_x: true,
        momentum: momentum_index(physics, true),
        parity,
        normal: &mesh.x,
        tangent: mesh.y.as_ref(),
        time,
        top_y,
    };
    let rows = mesh.active_rows(parity);
    xctx.fill(field, &bcs.left, true, rows.clone())?;
    xctx.fill(field, &bcs.right, false, rows)?;

    if let Some(y) = mesh.y.as_ref() {
        let yctx = SideCtx {
            layout,
            ncomp,
            normal_x: false,
            momentum: momentum_index(physics, false),
            parity,
            normal: y,
            tangent: Some(&mesh.x),
            time,
            top_y,
        };
        let cols = 0..field.cols();
        yctx.fill(field, &bcs.bottom, true, cols.clone())?;
        yctx.fill(field, &bcs.top, false, cols)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Mesh;
    use crate::physics::GasModel;

    #[test]
    fn periodic_wrap_1d() {
        let mesh = Mesh::new_1d(Axis::new(0.0, 1.0, 4, true).unwrap());
        let mut st = MeshState::new(mesh, 1, 1, Parity::Staggered).unwrap();
        for i in 1..=4 {
            st.field_mut().cell_mut(i, 0)[0] = i as f64;
        }
        let phys = Physics::Advection1D { a: 1.0 };
        fill_ghosts(&mut st, &Boundaries::uniform(Bc::Periodic), &phys).unwrap();
        assert_eq!(st.field().cell(0, 0)[0], 4.0);
        assert_eq!(st.field().cell(5, 0)[0], 1.0);
    }

    #[test]
    fn reflective_wall_negates_momentum() {
        let mesh = Mesh::new_1d(Axis::new(0.0, 1.0, 4, false).unwrap());
        let mut st = MeshState::new(mesh, 1, 3, Parity::Staggered).unwrap();
        let nd = st.ndof();
        for i in 1..=4 {
            let c = st.field_mut().cell_mut(i, 0);
            c[0] = 1.0;
            c[nd] = 0.5;
            c[2 * nd] = 2.5;
        }
        let phys = Physics::Euler1D(GasModel::default());
        fill_ghosts(&mut st, &Boundaries::uniform(Bc::ReflectiveWall), &phys).unwrap();
        let g = st.field().cell(0, 0);
        assert_eq!([g[0], g[nd], g[2 * nd]], [1.0, -0.5, 2.5]);
    }

    #[test]
    fn shock_foot_position() {
        let s = ShockFoot {
            x0: 1.0 / 6.0,
            angle: std::f64::consts::PI / 3.0,
            speed: 10.0,
            pre: [0.0; 4],
            post: [0.0; 4],
        };
        let expect = 1.0 / 6.0 + 1.0 / 3f64.sqrt();
        assert!((s.position(1.0, 0.0) - expect).abs() < 1e-14);
        assert!((s.position(1.0, 0.1) - (1.0 / 6.0 + 3.0 / 3f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn mismatched_periodicity_is_config_error() {
        let b = Boundaries {
            left: Bc::Periodic,
            right: Bc::NonReflective,
            bottom: Bc::NonReflective,
            top: Bc::NonReflective,
        };
        assert!(matches!(b.validate(), Err(Error::Config(_))));
    }
}
