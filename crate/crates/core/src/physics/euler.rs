//! Perfect-gas Euler equations in conservative variables.
//!
//! 1D states are `(rho, rho u, rho e)`, 2D states `(rho, rho u, rho v, rho e)`,
//! with `rho e = p/(gamma - 1) + rho |v|^2 / 2`.

use crate::error::{Error, Result};
use crate::jet::{combine_slice, copy_slice, mul_slice, recip_slice, Jet, JetLayout};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasModel {
    gamma: f64,
}

impl Default for GasModel {
    fn default() -> Self {
        GasModel { gamma: 1.4 }
    }
}

/// Primitive state `(rho, u, v, p)`; `v` is ignored in 1D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

impl Primitive {
    pub fn new(rho: f64, u: f64, v: f64, p: f64) -> Self {
        Primitive { rho, u, v, p }
    }
}

/// Eigen-decomposition `A = R diag(lambda) L` of a flux Jacobian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem {
    pub n: usize,
    pub left: [[f64; 4]; 4],
    pub right: [[f64; 4]; 4],
    pub lambda: [f64; 4],
}

impl EigenSystem {
    /// `L v` over the first `n` entries.
    pub fn to_characteristic(&self, v: &[f64]) -> [f64; 4] {
        mat_vec(&self.left, v, self.n)
    }

    /// `R w` over the first `n` entries.
    pub fn to_conservative(&self, w: &[f64]) -> [f64; 4] {
        mat_vec(&self.right, w, self.n)
    }
}

fn mat_vec(m: &[[f64; 4]; 4], v: &[f64], n: usize) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (i, o) in out.iter_mut().enumerate().take(n) {
        *o = (0..n).map(|j| m[i][j] * v[j]).sum();
    }
    out
}

impl GasModel {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 1.0 && gamma.is_finite() {
            Ok(GasModel { gamma })
        } else {
            Err(Error::config(format!("specific heat ratio {gamma} must exceed 1")))
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    fn admissible(&self, rho: f64, p: f64) -> Result<()> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::physics(format!("density {rho:e} is not positive")));
        }
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::physics(format!("pressure {p:e} is not positive")));
        }
        Ok(())
    }

    /// Pressure of a 1D or 2D conservative state (no admissibility check).
    pub fn pressure(&self, u: &[f64]) -> f64 {
        let rho = u[0];
        let (kin, e) = match u.len() {
            3 => (0.5 * u[1] * u[1] / rho, u[2]),
            _ => (0.5 * (u[1] * u[1] + u[2] * u[2]) / rho, u[3]),
        };
        (self.gamma - 1.0) * (e - kin)
    }

    /// Primitive variables of an admissible 1D or 2D state.
    pub fn primitive(&self, u: &[f64]) -> Result<Primitive> {
        let rho = u[0];
        let p = self.pressure(u);
        self.admissible(rho, p)?;
        let v = if u.len() == 3 { 0.0 } else { u[2] / rho };
        Ok(Primitive::new(rho, u[1] / rho, v, p))
    }

    pub fn conservative_1d(&self, w: Primitive) -> [f64; 3] {
        let e = w.p / (self.gamma - 1.0) + 0.5 * w.rho * w.u * w.u;
        [w.rho, w.rho * w.u, e]
    }

    pub fn conservative_2d(&self, w: Primitive) -> [f64; 4] {
        let e = w.p / (self.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
        [w.rho, w.rho * w.u, w.rho * w.v, e]
    }

    pub fn sound_speed(&self, rho: f64, p: f64) -> Result<f64> {
        self.admissible(rho, p)?;
        Ok((self.gamma * p / rho).sqrt())
    }

    pub fn flux_1d(&self, u: &[f64; 3]) -> Result<[f64; 3]> {
        let w = self.primitive(u)?;
        Ok([u[1], u[1] * w.u + w.p, (u[2] + w.p) * w.u])
    }

    pub fn flux_2d_f(&self, u: &[f64; 4]) -> Result<[f64; 4]> {
        let w = self.primitive(u)?;
        Ok([u[1], u[1] * w.u + w.p, u[1] * w.v, (u[3] + w.p) * w.u])
    }

    pub fn flux_2d_g(&self, u: &[f64; 4]) -> Result<[f64; 4]> {
        let w = self.primitive(u)?;
        Ok([u[2], u[2] * w.u, u[2] * w.v + w.p, (u[3] + w.p) * w.v])
    }

    /// `(|u| + c, |v| + c)`; the second entry is 0 in 1D.
    pub fn max_wave_speed(&self, u: &[f64]) -> Result<[f64; 2]> {
        let w = self.primitive(u)?;
        let c = self.sound_speed(w.rho, w.p)?;
        let sy = if u.len() == 3 { 0.0 } else { w.v.abs() + c };
        Ok([w.u.abs() + c, sy])
    }

    /// Analytic Jacobian `dF/dU nx + dG/dU ny` (2D) or `dF/dU` (1D).
    pub fn jacobian(&self, u: &[f64], nx: f64, ny: f64) -> Result<[[f64; 4]; 4]> {
        let w = self.primitive(u)?;
        let g1 = self.gamma - 1.0;
        let mut a = [[0.0; 4]; 4];
        if u.len() == 3 {
            let h = (u[2] + w.p) / w.rho;
            let q2 = w.u * w.u;
            a[0] = [0.0, 1.0, 0.0, 0.0];
            a[1] = [0.5 * (self.gamma - 3.0) * q2, (3.0 - self.gamma) * w.u, g1, 0.0];
            a[2] = [w.u * (0.5 * g1 * q2 - h), h - g1 * q2, self.gamma * w.u, 0.0];
            return Ok(a);
        }
        let (vx, vy) = (w.u, w.v);
        let un = vx * nx + vy * ny;
        let q2 = vx * vx + vy * vy;
        let h = (u[3] + w.p) / w.rho;
        let phi = 0.5 * g1 * q2;
        a[0] = [0.0, nx, ny, 0.0];
        a[1] = [
            phi * nx - vx * un,
            un - (self.gamma - 2.0) * vx * nx,
            vx * ny - g1 * vy * nx,
            g1 * nx,
        ];
        a[2] = [
            phi * ny - vy * un,
            vy * nx - g1 * vx * ny,
            un - (self.gamma - 2.0) * vy * ny,
            g1 * ny,
        ];
        a[3] = [
            un * (phi - h),
            h * nx - g1 * vx * un,
            h * ny - g1 * vy * un,
            self.gamma * un,
        ];
        Ok(a)
    }

    pub fn eigensystem_1d(&self, u: &[f64]) -> Result<EigenSystem> {
        let w = self.primitive(u)?;
        let c = self.sound_speed(w.rho, w.p)?;
        let h = (u[2] + w.p) / w.rho;
        let vx = w.u;
        let b1 = (self.gamma - 1.0) / (c * c);
        let b2 = 0.5 * vx * vx * b1;
        let mut right = [[0.0; 4]; 4];
        let cols = [
            [1.0, vx - c, h - vx * c],
            [1.0, vx, 0.5 * vx * vx],
            [1.0, vx + c, h + vx * c],
        ];
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                right[i][j] = v;
            }
        }
        let mut left = [[0.0; 4]; 4];
        left[0][..3].copy_from_slice(&[0.5 * (b2 + vx / c), -0.5 * (b1 * vx + 1.0 / c), 0.5 * b1]);
        left[1][..3].copy_from_slice(&[1.0 - b2, b1 * vx, -b1]);
        left[2][..3].copy_from_slice(&[0.5 * (b2 - vx / c), -0.5 * (b1 * vx - 1.0 / c), 0.5 * b1]);
        Ok(EigenSystem {
            n: 3,
            left,
            right,
            lambda: [vx - c, vx, vx + c, 0.0],
        })
    }

    /// Eigensystem of the Jacobian along `(cos theta, sin theta)`.
    pub fn eigensystem_rotated_2d(&self, u: &[f64], theta: f64) -> Result<EigenSystem> {
        let (ny, nx) = theta.sin_cos();
        let w = self.primitive(u)?;
        let c = self.sound_speed(w.rho, w.p)?;
        let h = (u[3] + w.p) / w.rho;
        let (vx, vy) = (w.u, w.v);
        let un = vx * nx + vy * ny;
        let ut = -vx * ny + vy * nx;
        let q2 = vx * vx + vy * vy;
        let b1 = (self.gamma - 1.0) / (c * c);
        let b2 = 0.5 * q2 * b1;
        let cols = [
            [1.0, vx - c * nx, vy - c * ny, h - c * un],
            [1.0, vx, vy, 0.5 * q2],
            [0.0, -ny, nx, ut],
            [1.0, vx + c * nx, vy + c * ny, h + c * un],
        ];
        let mut right = [[0.0; 4]; 4];
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                right[i][j] = v;
            }
        }
        let left = [
            [
                0.5 * (b2 + un / c),
                -0.5 * (b1 * vx + nx / c),
                -0.5 * (b1 * vy + ny / c),
                0.5 * b1,
            ],
            [1.0 - b2, b1 * vx, b1 * vy, -b1],
            [-ut, -ny, nx, 0.0],
            [
                0.5 * (b2 - un / c),
                -0.5 * (b1 * vx - nx / c),
                -0.5 * (b1 * vy - ny / c),
                0.5 * b1,
            ],
        ];
        Ok(EigenSystem {
            n: 4,
            left,
            right,
            lambda: [un - c, un, un, un + c],
        })
    }

    /// Post-shock primitive state behind a normal shock of Mach `ms` running
    /// in +y into the quiescent state `pre`.
    pub fn normal_shock_state(&self, ms: f64, pre: Primitive) -> Result<Primitive> {
        if !(ms > 1.0) {
            return Err(Error::Domain(format!("shock Mach number {ms} must exceed 1")));
        }
        let g = self.gamma;
        let a2 = self.sound_speed(pre.rho, pre.p)?;
        let m2 = ms * ms;
        let rho = pre.rho * 0.5 * (g + 1.0) * m2 / (1.0 + 0.5 * (g - 1.0) * m2);
        let v = a2 * 2.0 * (m2 - 1.0) / ((g + 1.0) * ms);
        let p = pre.p * (2.0 * g * m2 - g + 1.0) / (g + 1.0);
        Ok(Primitive::new(rho, 0.0, v, p))
    }
}

/// Flux intermediates shared by the jet flux evaluations.
#[derive(Debug, Clone)]
pub struct EulerScratch {
    r: Jet,
    u: Jet,
    v: Jet,
    mu: Jet,
    nv: Jet,
    mv: Jet,
    p: Jet,
    h: Jet,
}

impl EulerScratch {
    pub fn new(layout: &'static JetLayout) -> Self {
        let z = Jet::zero(layout);
        EulerScratch {
            r: z,
            u: z,
            v: z,
            mu: z,
            nv: z,
            mv: z,
            p: z,
            h: z,
        }
    }

    /// Pressure jet from the last evaluation.
    pub fn pressure(&self) -> &Jet {
        &self.p
    }
}

impl GasModel {
    /// Slice `b` of the 1D Euler flux on jets.
    pub fn flux_slice_1d(&self, q: &[Jet], s: &mut EulerScratch, f: &mut [Jet], b: usize) -> Result<()> {
        let g1 = self.gamma - 1.0;
        recip_slice(&q[0], &mut s.r, b)?;
        mul_slice(&q[1], &s.r, &mut s.u, b);
        mul_slice(&q[1], &s.u, &mut s.mu, b);
        combine_slice(&mut s.p, b, 0.0, &[(g1, &q[2]), (-0.5 * g1, &s.mu)]);
        combine_slice(&mut s.h, b, 0.0, &[(1.0, &q[2]), (1.0, &s.p)]);
        copy_slice(&mut f[0], &q[1], b);
        combine_slice(&mut f[1], b, 0.0, &[(1.0, &s.mu), (1.0, &s.p)]);
        mul_slice(&s.h, &s.u, &mut f[2], b);
        Ok(())
    }

    /// Slice `b` of both 2D Euler fluxes on jets.
    pub fn flux_slice_2d(
        &self,
        q: &[Jet],
        s: &mut EulerScratch,
        f: &mut [Jet],
        g: &mut [Jet],
        b: usize,
    ) -> Result<()> {
        let g1 = self.gamma - 1.0;
        recip_slice(&q[0], &mut s.r, b)?;
        mul_slice(&q[1], &s.r, &mut s.u, b);
        mul_slice(&q[2], &s.r, &mut s.v, b);
        mul_slice(&q[1], &s.u, &mut s.mu, b);
        mul_slice(&q[2], &s.v, &mut s.nv, b);
        mul_slice(&q[1], &s.v, &mut s.mv, b);
        combine_slice(
            &mut s.p,
            b,
            0.0,
            &[(g1, &q[3]), (-0.5 * g1, &s.mu), (-0.5 * g1, &s.nv)],
        );
        combine_slice(&mut s.h, b, 0.0, &[(1.0, &q[3]), (1.0, &s.p)]);
        copy_slice(&mut f[0], &q[1], b);
        combine_slice(&mut f[1], b, 0.0, &[(1.0, &s.mu), (1.0, &s.p)]);
        copy_slice(&mut f[2], &s.mv, b);
        mul_slice(&s.h, &s.u, &mut f[3], b);
        copy_slice(&mut g[0], &q[2], b);
        copy_slice(&mut g[1], &s.mv, b);
        combine_slice(&mut g[2], b, 0.0, &[(1.0, &s.nv), (1.0, &s.p)]);
        mul_slice(&s.h, &s.v, &mut g[3], b);
        Ok(())
    }
}
