//! Conservation laws supported by the schemes.

pub mod euler;

use crate::error::{Error, Result};
use crate::jet::{combine_slice, mul_slice, FluxModel, Jet, JetLayout, SpaceDims};

pub use euler::{EigenSystem, EulerScratch, GasModel, Primitive};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Physics {
    /// `u_t + a u_x = 0`.
    Advection1D { a: f64 },
    /// `u_t + a u_x + b u_y = 0`.
    Advection2D { a: f64, b: f64 },
    /// `u_t + (u^2/2)_x = 0`.
    Burgers1D,
    Euler1D(GasModel),
    Euler2D(GasModel),
}

impl Physics {
    pub fn dims(&self) -> SpaceDims {
        match self {
            Physics::Advection1D { .. } | Physics::Burgers1D | Physics::Euler1D(_) => SpaceDims::One,
            Physics::Advection2D { .. } | Physics::Euler2D(_) => SpaceDims::Two,
        }
    }

    pub fn ncomp(&self) -> usize {
        match self {
            Physics::Advection1D { .. } | Physics::Advection2D { .. } | Physics::Burgers1D => 1,
            Physics::Euler1D(_) => 3,
            Physics::Euler2D(_) => 4,
        }
    }

    pub fn is_euler(&self) -> bool {
        matches!(self, Physics::Euler1D(_) | Physics::Euler2D(_))
    }

    pub fn gas(&self) -> Option<GasModel> {
        match self {
            Physics::Euler1D(g) | Physics::Euler2D(g) => Some(*g),
            _ => None,
        }
    }

    /// Names of the output variables.
    pub fn output_names(&self) -> &'static [&'static str] {
        match self {
            Physics::Euler1D(_) => &["rho", "u", "p"],
            Physics::Euler2D(_) => &["rho", "u", "v", "p"],
            _ => &["u"],
        }
    }

    /// Output variables of a conservative state (primitive for Euler).
    pub fn output_values(&self, u: &[f64]) -> Result<Vec<f64>> {
        match self {
            Physics::Euler1D(g) => {
                let w = g.primitive(u)?;
                Ok(vec![w.rho, w.u, w.p])
            }
            Physics::Euler2D(g) => {
                let w = g.primitive(u)?;
                Ok(vec![w.rho, w.u, w.v, w.p])
            }
            _ => Ok(vec![u[0]]),
        }
    }

    /// Directional maximum signal speeds `(S_x, S_y)`.
    pub fn wave_speeds(&self, u: &[f64]) -> Result<[f64; 2]> {
        match self {
            Physics::Advection1D { a } => Ok([a.abs(), 0.0]),
            Physics::Advection2D { a, b } => Ok([a.abs(), b.abs()]),
            Physics::Burgers1D => Ok([u[0].abs(), 0.0]),
            Physics::Euler1D(g) | Physics::Euler2D(g) => g.max_wave_speed(u),
        }
    }

    /// Errors when `u` is not a physically admissible state.
    pub fn check_admissible(&self, u: &[f64]) -> Result<()> {
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::physics("non-finite value"));
        }
        match self {
            Physics::Euler1D(g) | Physics::Euler2D(g) => g.primitive(u).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Characteristic decomposition along `(cos theta, sin theta)`; `None`
    /// for scalar laws, where the projection is the identity.
    pub fn eigensystem(&self, u: &[f64], theta: f64) -> Result<Option<EigenSystem>> {
        match self {
            Physics::Euler1D(g) => g.eigensystem_1d(u).map(Some),
            Physics::Euler2D(g) => g.eigensystem_rotated_2d(u, theta).map(Some),
            _ => Ok(None),
        }
    }

    /// Pointwise fluxes `(f, g)`.
    pub fn flux(&self, u: &[f64]) -> Result<([f64; 4], [f64; 4])> {
        let mut f = [0.0; 4];
        let mut g = [0.0; 4];
        match self {
            Physics::Advection1D { a } => f[0] = a * u[0],
            Physics::Advection2D { a, b } => {
                f[0] = a * u[0];
                g[0] = b * u[0];
            }
            Physics::Burgers1D => f[0] = 0.5 * u[0] * u[0],
            Physics::Euler1D(gas) => {
                f[..3].copy_from_slice(&gas.flux_1d(&[u[0], u[1], u[2]])?);
            }
            Physics::Euler2D(gas) => {
                let q = [u[0], u[1], u[2], u[3]];
                f = gas.flux_2d_f(&q)?;
                g = gas.flux_2d_g(&q)?;
            }
        }
        Ok((f, g))
    }
}

impl FluxModel for Physics {
    type Scratch = EulerScratch;

    fn ncomp(&self) -> usize {
        Physics::ncomp(self)
    }

    fn new_scratch(&self, layout: &'static JetLayout) -> EulerScratch {
        EulerScratch::new(layout)
    }

    fn flux_slice(
        &self,
        u: &[Jet],
        scratch: &mut EulerScratch,
        f: &mut [Jet],
        g: &mut [Jet],
        b: usize,
    ) -> Result<()> {
        match self {
            Physics::Advection1D { a } => {
                combine_slice(&mut f[0], b, 0.0, &[(*a, &u[0])]);
                Ok(())
            }
            Physics::Advection2D { a, b: by } => {
                combine_slice(&mut f[0], b, 0.0, &[(*a, &u[0])]);
                combine_slice(&mut g[0], b, 0.0, &[(*by, &u[0])]);
                Ok(())
            }
            Physics::Burgers1D => {
                mul_slice(&u[0], &u[0], &mut f[0], b);
                let sq = f[0];
                combine_slice(&mut f[0], b, 0.0, &[(0.5, &sq)]);
                Ok(())
            }
            Physics::Euler1D(gas) => gas.flux_slice_1d(u, scratch, f, b),
            Physics::Euler2D(gas) => gas.flux_slice_2d(u, scratch, f, g, b),
        }
    }
}
