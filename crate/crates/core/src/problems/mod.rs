//! Benchmark cases: domains, boundary conditions, initial data, and exact
//! solutions where they exist.
//!
//! Initial DOFs are the point value and scaled derivatives of the initial
//! field at each cell center. Cells with a discontinuity or kink strictly
//! inside get the center value and zero derivatives.

mod scalar;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use scalar::Scalar;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::mesh::{Axis, Bc, Boundaries, Mesh, MeshState, Parity, ShockFoot};
use crate::physics::{GasModel, Physics, Primitive};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    AdvectSine,
    AdvectComposite,
    Sod,
    TitarevToro,
    Vortex,
    Rp1,
    Rp2,
    Dmr,
    Rmi,
}

impl CaseId {
    pub const ALL: [CaseId; 9] = [
        CaseId::AdvectSine,
        CaseId::AdvectComposite,
        CaseId::Sod,
        CaseId::TitarevToro,
        CaseId::Vortex,
        CaseId::Rp1,
        CaseId::Rp2,
        CaseId::Dmr,
        CaseId::Rmi,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseId::AdvectSine => "advect-sine",
            CaseId::AdvectComposite => "advect-composite",
            CaseId::Sod => "sod",
            CaseId::TitarevToro => "titarev-toro",
            CaseId::Vortex => "vortex",
            CaseId::Rp1 => "rp1",
            CaseId::Rp2 => "rp2",
            CaseId::Dmr => "dmr",
            CaseId::Rmi => "rmi",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            CaseId::AdvectSine => "linear advection of sin(pi x) on [-1, 1], periodic",
            CaseId::AdvectComposite => "linear advection of Gaussians, square, triangle and half ellipse",
            CaseId::Sod => "Sod shock tube on [0, 2]",
            CaseId::TitarevToro => "shock / high-frequency entropy wave interaction on [-5, 5]",
            CaseId::Vortex => "isentropic vortex in a uniform stream, periodic [-5, 5]^2",
            CaseId::Rp1 => "2D Riemann problem with four interacting shocks",
            CaseId::Rp2 => "2D Riemann problem with four contact discontinuities",
            CaseId::Dmr => "double Mach reflection of a Mach 10 shock",
            CaseId::Rmi => "single-mode Richtmyer-Meshkov instability",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .iter()
            .find(|c| c.as_str() == s.trim())
            .copied()
            .ok_or_else(|| Error::config(format!("unknown case '{}'", s.trim())))
    }
}

/// Isentropic vortex parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VortexParams {
    pub strength: f64,
    pub mean: (f64, f64),
    pub gamma: f64,
}

/// Constants of the composite advection profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositeParams {
    pub a: f64,
    pub z: f64,
    pub delta: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl Default for CompositeParams {
    fn default() -> Self {
        let delta = 0.005;
        CompositeParams {
            a: 0.5,
            z: -0.7,
            delta,
            alpha: 10.0,
            beta: 2f64.ln() / (36.0 * delta * delta),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    pub id: CaseId,
    pub physics: Physics,
    pub x: (f64, f64),
    pub y: Option<(f64, f64)>,
    /// Default cell counts `(nx, ny)`; `ny = 0` in 1D.
    pub cells: (usize, usize),
    pub t_end: f64,
    pub boundaries: Boundaries,
    pub vortex: VortexParams,
    pub composite: CompositeParams,
    /// Mach number of the incident normal shock (RMI).
    pub shock_mach: f64,
}

const GAMMA: f64 = 1.4;

fn dmr_states(gas: &GasModel) -> ([f64; 4], [f64; 4]) {
    let s60 = (PI / 3.0).sin();
    let c60 = (PI / 3.0).cos();
    let pre = gas.conservative_2d(Primitive::new(1.4, 0.0, 0.0, 1.0));
    let post = gas.conservative_2d(Primitive::new(8.0, 8.25 * s60, -8.25 * c60, 116.5));
    (pre, post)
}

impl ProblemSpec {
    pub fn new(id: CaseId) -> Self {
        let gas = GasModel::default();
        let vortex = VortexParams {
            strength: 5.0,
            mean: (1.0, 1.0),
            gamma: GAMMA,
        };
        let base = ProblemSpec {
            id,
            physics: Physics::Advection1D { a: 1.0 },
            x: (-1.0, 1.0),
            y: None,
            cells: (100, 0),
            t_end: 2.0,
            boundaries: Boundaries::uniform(Bc::Periodic),
            vortex,
            composite: CompositeParams::default(),
            shock_mach: 2.0,
        };
        let nonrefl = Boundaries::uniform(Bc::NonReflective);
        match id {
            CaseId::AdvectSine => base,
            CaseId::AdvectComposite => ProblemSpec {
                cells: (400, 0),
                t_end: 12.0,
                ..base
            },
            CaseId::Sod => ProblemSpec {
                physics: Physics::Euler1D(gas),
                x: (0.0, 2.0),
                cells: (200, 0),
                t_end: 0.4,
                boundaries: nonrefl,
                ..base
            },
            CaseId::TitarevToro => ProblemSpec {
                physics: Physics::Euler1D(gas),
                x: (-5.0, 5.0),
                cells: (2000, 0),
                t_end: 5.0,
                boundaries: nonrefl,
                ..base
            },
            CaseId::Vortex => ProblemSpec {
                physics: Physics::Euler2D(gas),
                x: (-5.0, 5.0),
                y: Some((-5.0, 5.0)),
                cells: (100, 100),
                t_end: 2.0,
                ..base
            },
            CaseId::Rp1 | CaseId::Rp2 => ProblemSpec {
                physics: Physics::Euler2D(gas),
                x: (-1.0, 1.0),
                y: Some((-1.0, 1.0)),
                cells: (300, 300),
                t_end: if id == CaseId::Rp1 { 1.1 } else { 1.0 },
                boundaries: nonrefl,
                ..base
            },
            CaseId::Dmr => {
                let (pre, post) = dmr_states(&gas);
                ProblemSpec {
                    physics: Physics::Euler2D(gas),
                    x: (0.0, 4.0),
                    y: Some((0.0, 1.0)),
                    cells: (480, 120),
                    t_end: 0.28,
                    boundaries: Boundaries {
                        left: Bc::Inflow(post),
                        right: Bc::NonReflective,
                        bottom: Bc::WallBeyond(1.0 / 6.0),
                        top: Bc::ShockFoot(ShockFoot {
                            x0: 1.0 / 6.0,
                            angle: PI / 3.0,
                            speed: 10.0,
                            pre,
                            post,
                        }),
                    },
                    ..base
                }
            }
            CaseId::Rmi => ProblemSpec {
                physics: Physics::Euler2D(gas),
                x: (-0.5, 0.5),
                y: Some((0.0, 5.0)),
                cells: (100, 500),
                t_end: 1.8,
                boundaries: Boundaries {
                    left: Bc::Periodic,
                    right: Bc::Periodic,
                    bottom: Bc::NonReflective,
                    top: Bc::NonReflective,
                },
                ..base
            },
        }
    }

    pub fn is_2d(&self) -> bool {
        self.y.is_some()
    }

    pub fn has_exact(&self) -> bool {
        matches!(self.id, CaseId::AdvectSine | CaseId::AdvectComposite | CaseId::Vortex)
    }

    /// Mesh with `nx` (and `ny` in 2D) cells and the case's periodicity.
    pub fn mesh(&self, nx: usize, ny: Option<usize>) -> Result<Mesh> {
        let x = Axis::new(self.x.0, self.x.1, nx, self.boundaries.x_periodic())?;
        match (self.y, ny) {
            (None, None) => Ok(Mesh::new_1d(x)),
            (Some((lo, hi)), Some(ny)) => Ok(Mesh::new_2d(x, Axis::new(lo, hi, ny, self.boundaries.y_periodic())?)),
            (None, Some(_)) => Err(Error::config(format!("case {} is one-dimensional", self.id))),
            (Some(_), None) => Err(Error::config(format!("case {} needs a y cell count", self.id))),
        }
    }

    pub fn default_mesh(&self) -> Result<Mesh> {
        self.mesh(self.cells.0, self.y.map(|_| self.cells.1))
    }

    fn gas(&self) -> GasModel {
        self.physics.gas().unwrap_or_default()
    }

    /// Locations of discontinuities or kinks of a 1D initial field.
    fn breakpoints(&self) -> Vec<f64> {
        match self.id {
            CaseId::AdvectComposite => {
                let c = &self.composite;
                let mut b = vec![-0.8, -0.6, -0.4, -0.2, 0.0, 0.1, 0.2, 0.4, 0.6];
                for s in [-c.delta, 0.0, c.delta] {
                    b.push(c.a + s - 1.0 / c.alpha);
                    b.push(c.a + s + 1.0 / c.alpha);
                }
                b
            }
            CaseId::Sod => vec![1.0],
            CaseId::TitarevToro => vec![-4.5],
            _ => Vec::new(),
        }
    }

    /// Whether the initial field is smooth on the open cell.
    fn smooth_on(&self, (xl, xr): (f64, f64), (yl, yr): (f64, f64)) -> bool {
        let eps = 1e-9 * (xr - xl);
        let inside = |b: f64, l: f64, r: f64| b > l + eps && b < r - eps;
        match self.id {
            CaseId::Rp1 | CaseId::Rp2 => !inside(0.0, xl, xr) && !inside(0.0, yl, yr),
            CaseId::Dmr | CaseId::Rmi => false,
            _ => !self.breakpoints().into_iter().any(|b| inside(b, xl, xr)),
        }
    }

    /// Conservative initial state at `(x, y)`; components beyond
    /// `physics.ncomp()` are zero.
    pub fn initial_state<S: Scalar>(&self, x: S, y: S) -> [S; 4] {
        let gas = self.gas();
        let zero = x.lift(0.0);
        let prim = |rho: f64, u: f64, v: f64, p: f64| {
            let q = match self.physics {
                Physics::Euler1D(_) => {
                    let c = gas.conservative_1d(Primitive::new(rho, u, v, p));
                    [c[0], c[1], c[2], 0.0]
                }
                _ => gas.conservative_2d(Primitive::new(rho, u, v, p)),
            };
            q.map(|v| x.lift(v))
        };
        match self.id {
            CaseId::AdvectSine => [(x * PI).sin(), zero, zero, zero],
            CaseId::AdvectComposite => [composite_profile(&self.composite, x), zero, zero, zero],
            CaseId::Sod => {
                if x.value() < 1.0 {
                    prim(1.0, 0.0, 0.0, 1.0)
                } else {
                    prim(0.125, 0.0, 0.0, 0.1)
                }
            }
            CaseId::TitarevToro => {
                if x.value() < -4.5 {
                    prim(1.515695, 0.523346, 0.0, 1.805)
                } else {
                    let rho = (x * (20.0 * PI)).sin() * 0.1 + 1.0;
                    let e = x.lift(1.0 / (gas.gamma() - 1.0));
                    [rho, zero, e, zero]
                }
            }
            CaseId::Vortex => vortex_state(&self.vortex, x, y),
            CaseId::Rp1 | CaseId::Rp2 => {
                let (l, b) = (x.value() < 0.0, y.value() < 0.0);
                let table: [[f64; 4]; 4] = if self.id == CaseId::Rp1 {
                    [
                        [0.138, 1.206, 1.206, 0.029],
                        [0.5323, 1.206, 0.0, 0.3],
                        [1.5, 0.0, 0.0, 1.5],
                        [0.5323, 0.0, 1.206, 0.3],
                    ]
                } else {
                    [
                        [1.0, -0.75, 0.5, 1.0],
                        [2.0, 0.75, 0.5, 1.0],
                        [1.0, 0.75, -0.5, 1.0],
                        [3.0, -0.75, -0.5, 1.0],
                    ]
                };
                let w = match (l, b) {
                    (true, true) => table[0],
                    (true, false) => table[1],
                    (false, false) => table[2],
                    (false, true) => table[3],
                };
                prim(w[0], w[1], w[2], w[3])
            }
            CaseId::Dmr => {
                let (pre, post) = dmr_states(&gas);
                let s = if x.value() > 1.0 / 6.0 + y.value() / 3f64.sqrt() { pre } else { post };
                s.map(|v| x.lift(v))
            }
            CaseId::Rmi => {
                let (xv, yv) = (x.value(), y.value());
                let g = gas.gamma();
                if yv >= 1.0 - 0.3 * (2.0 * PI * xv).cos() {
                    prim(0.1, 0.0, 0.0, 1.0 / g)
                } else if yv >= 0.6 {
                    prim(1.0, 0.0, 0.0, 1.0 / g)
                } else {
                    let s = self.shocked_state();
                    prim(s.rho, s.u, s.v, s.p)
                }
            }
        }
    }

    /// State behind the incident shock of the RMI case (moving up into the
    /// gas at rest below the interface).
    pub fn shocked_state(&self) -> Primitive {
        let gas = self.gas();
        let g = gas.gamma();
        let pre = Primitive::new(1.0, 0.0, 0.0, 1.0 / g);
        gas.normal_shock_state(self.shock_mach, pre)
            .expect("shock Mach number above one")
    }

    /// Exact conservative state at `(x, y)` and time `t`.
    pub fn exact_solution(&self, x: f64, y: f64, t: f64) -> Result<Vec<f64>> {
        let wrap = |v: f64, (lo, hi): (f64, f64)| {
            let l = hi - lo;
            lo + (v - lo).rem_euclid(l)
        };
        let n = self.physics.ncomp();
        match self.id {
            CaseId::AdvectSine | CaseId::AdvectComposite => {
                let a = match self.physics {
                    Physics::Advection1D { a } => a,
                    _ => 1.0,
                };
                let xs = wrap(x - a * t, self.x);
                Ok(self.initial_state(xs, 0.0)[..n].to_vec())
            }
            CaseId::Vortex => {
                let (mu, mv) = self.vortex.mean;
                let y_dom = self.y.expect("2D case");
                let xs = wrap(x - mu * t, self.x);
                let ys = wrap(y - mv * t, y_dom);
                Ok(self.initial_state(xs, ys)[..n].to_vec())
            }
            _ => Err(Error::Unsupported(format!("case {} has no exact solution", self.id))),
        }
    }
}

fn composite_profile<S: Scalar>(c: &CompositeParams, x: S) -> S {
    let xv = x.value();
    let g = |z: f64| ((x + (-z)) * (x + (-z)) * (-c.beta)).exp();
    let f = |a: f64| {
        let arg = (x + (-a)) * (x + (-a)) * (-c.alpha * c.alpha) + 1.0;
        if arg.value() <= 0.0 {
            x.lift(0.0)
        } else {
            arg.sqrt()
        }
    };
    if (-0.8..=-0.6).contains(&xv) {
        (g(c.z - c.delta) + g(c.z) * 4.0 + g(c.z + c.delta)) * (1.0 / 6.0)
    } else if (-0.4..=-0.2).contains(&xv) {
        x.lift(1.0)
    } else if (0.0..=0.2).contains(&xv) {
        -((x + (-0.1)).abs() * 10.0) + 1.0
    } else if (0.4..=0.6).contains(&xv) {
        (f(c.a - c.delta) + f(c.a) * 4.0 + f(c.a + c.delta)) * (1.0 / 6.0)
    } else {
        x.lift(0.0)
    }
}

fn vortex_state<S: Scalar>(p: &VortexParams, x: S, y: S) -> [S; 4] {
    let g = p.gamma;
    let r2 = x * x + y * y;
    let bump = (-r2 + 1.0).exp();
    let half = ((-r2 + 1.0) * 0.5).exp();
    let k = p.strength / (2.0 * PI);
    let u = -(half * y * k) + p.mean.0;
    let v = half * x * k + p.mean.1;
    let t = bump * (-(g - 1.0) * p.strength * p.strength / (8.0 * g * PI * PI)) + 1.0;
    let rho = t.powf(1.0 / (g - 1.0));
    let pr = rho * t;
    let e = pr * (1.0 / (g - 1.0)) + rho * (u * u + v * v) * 0.5;
    [rho, rho * u, rho * v, e]
}

/// Builds the initial state on the staggered parity for polynomials of
/// degree `degree`.
pub fn init_problem(spec: &ProblemSpec, mesh: Mesh, degree: usize) -> Result<MeshState> {
    if mesh.dims() != spec.physics.dims() {
        return Err(Error::config(format!("mesh dimension does not match case {}", spec.id)));
    }
    let ext = |a: &Axis| (a.lo(), a.hi(), a.periodic());
    let (xl, xh, xp) = ext(&mesh.x);
    if (xl, xh) != spec.x || xp != spec.boundaries.x_periodic() {
        return Err(Error::config(format!("x-axis does not match case {}", spec.id)));
    }
    if let (Some(y), Some(sy)) = (mesh.y.as_ref(), spec.y) {
        let (yl, yh, yp) = ext(y);
        if (yl, yh) != sy || yp != spec.boundaries.y_periodic() {
            return Err(Error::config(format!("y-axis does not match case {}", spec.id)));
        }
    }
    let parity = Parity::Staggered;
    let mut state = MeshState::new(mesh, degree, spec.physics.ncomp(), parity)?;
    let layout = state.layout();
    let nd = layout.spatial_len();
    let ncomp = state.ncomp();
    let xs = mesh.x.active(parity);
    let rows = mesh.active_rows(parity);
    let dx = mesh.x.dx();
    let dy = mesh.y.map_or(0.0, |a| a.dx());
    let field = state.field_mut();
    let stride = field.stride();
    let cols = field.cols();
    let xi = Jet::variable(layout, 0, 0.0)?;
    let eta = match mesh.y {
        Some(_) => Jet::variable(layout, 1, 0.0)?,
        None => Jet::zero(layout),
    };
    field
        .data_mut()
        .par_chunks_mut(cols * stride)
        .enumerate()
        .filter(|(j, _)| rows.contains(j))
        .for_each(|(j, row)| {
            let yc = mesh.y.map_or(0.0, |a| a.center(parity, j));
            for i in xs.clone() {
                let xc = mesh.x.center(parity, i);
                let cell = &mut row[i * stride..(i + 1) * stride];
                let xr = (xc - 0.5 * dx, xc + 0.5 * dx);
                let yr = (yc - 0.5 * dy, yc + 0.5 * dy);
                if spec.smooth_on(xr, yr) {
                    let q = spec.initial_state(xi * dx + xc, eta * dy + yc);
                    for c in 0..ncomp {
                        let d = q[c].derivatives();
                        cell[c * nd..(c + 1) * nd].copy_from_slice(&d[..nd]);
                    }
                } else {
                    cell.fill(0.0);
                    let q = spec.initial_state(xc, yc);
                    for c in 0..ncomp {
                        cell[c * nd] = q[c];
                    }
                }
            }
        });
    Ok(state)
}

/// Initial state of a case on its default mesh.
pub fn init_default(id: CaseId, degree: usize) -> Result<(ProblemSpec, MeshState)> {
    let spec = ProblemSpec::new(id);
    let state = init_problem(&spec, spec.default_mesh()?, degree)?;
    Ok((spec, state))
}
