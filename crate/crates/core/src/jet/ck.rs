use super::{Jet, JetLayout, SpaceDims};
use crate::error::{Error, Result};

/// Largest number of solution components (2D Euler).
pub const MAX_COMPONENTS: usize = 4;

/// Dimensionless step ratios `dt/dx` and `dt/dy`, with `dt` the half-step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledRatios {
    pub nu_x: f64,
    pub nu_y: f64,
}

impl ScaledRatios {
    pub fn new_1d(dt: f64, dx: f64) -> Self {
        ScaledRatios {
            nu_x: dt / dx,
            nu_y: 0.0,
        }
    }

    pub fn new_2d(dt: f64, dx: f64, dy: f64) -> Self {
        ScaledRatios {
            nu_x: dt / dx,
            nu_y: dt / dy,
        }
    }
}

/// A conservation law whose fluxes can be composed on jets one time slice at a time.
pub trait FluxModel {
    /// Per-thread workspace holding flux intermediates.
    type Scratch;

    fn ncomp(&self) -> usize;

    fn new_scratch(&self, layout: &'static JetLayout) -> Self::Scratch;

    /// Fills time slice `b` of the x-flux `f` (and, in 2D, the y-flux `g`).
    ///
    /// On entry slices `0..=b` of `u` are final and slices `< b` of the
    /// scratch intermediates, `f` and `g` were produced by earlier calls.
    fn flux_slice(
        &self,
        u: &[Jet],
        scratch: &mut Self::Scratch,
        f: &mut [Jet],
        g: &mut [Jet],
        b: usize,
    ) -> Result<()>;
}

/// Space-time jets of the solution and fluxes of one cell.
#[derive(Debug, Clone)]
pub struct CkJets {
    ncomp: usize,
    pub u: [Jet; MAX_COMPONENTS],
    pub f: [Jet; MAX_COMPONENTS],
    pub g: [Jet; MAX_COMPONENTS],
}

impl CkJets {
    pub fn new(layout: &'static JetLayout, ncomp: usize) -> Self {
        let z = Jet::zero(layout);
        CkJets {
            ncomp,
            u: [z; MAX_COMPONENTS],
            f: [z; MAX_COMPONENTS],
            g: [z; MAX_COMPONENTS],
        }
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    pub fn layout(&self) -> &'static JetLayout {
        self.u[0].layout()
    }

    pub fn u(&self) -> &[Jet] {
        &self.u[..self.ncomp]
    }

    pub fn f(&self) -> &[Jet] {
        &self.f[..self.ncomp]
    }

    pub fn g(&self) -> &[Jet] {
        &self.g[..self.ncomp]
    }
}

/// Fills all mixed space-time derivatives of a cell from its spatial DOFs.
///
/// `spatial` holds, per component, the scaled spatial derivatives in the
/// order of time slice 0 of `out`'s layout. Time levels are produced in
/// order `b = 1..=P` from `u_{k,l,b} = -nu_x f_{k+1,l,b-1} - nu_y g_{k,l+1,b-1}`,
/// after which the last flux slice is completed.
pub fn cauchy_kovalewski<M: FluxModel>(
    model: &M,
    spatial: &[f64],
    ratios: ScaledRatios,
    scratch: &mut M::Scratch,
    out: &mut CkJets,
) -> Result<()> {
    let layout = out.layout();
    let ncomp = model.ncomp();
    let ns = layout.spatial_len();
    if ncomp > MAX_COMPONENTS || ncomp != out.ncomp || spatial.len() != ncomp * ns {
        return Err(Error::Shape(format!(
            "{} spatial values for {} components of {} DOFs",
            spatial.len(),
            ncomp,
            ns
        )));
    }
    for (c, dofs) in spatial.chunks_exact(ns).enumerate() {
        let u = &mut out.u[c];
        let t = u.taylor_mut();
        t.fill(0.0);
        for (i, &d) in dofs.iter().enumerate() {
            t[i] = d / layout.factorial(i);
        }
    }
    let p = layout.degree();
    let two_d = layout.dims() == SpaceDims::Two;
    for b in 1..=p {
        model.flux_slice(
            &out.u[..ncomp],
            scratch,
            &mut out.f[..ncomp],
            &mut out.g[..ncomp],
            b - 1,
        )?;
        let inv_b = 1.0 / b as f64;
        for c in 0..ncomp {
            for i in layout.slice(b) {
                let [k, l, _] = layout.exponents(i);
                let mut v = ratios.nu_x * (k + 1) as f64 * out.f[c].coeff(k + 1, l, b - 1);
                if two_d {
                    v += ratios.nu_y * (l + 1) as f64 * out.g[c].coeff(k, l + 1, b - 1);
                }
                out.u[c].c[i] = -v * inv_b;
            }
        }
    }
    model.flux_slice(
        &out.u[..ncomp],
        scratch,
        &mut out.f[..ncomp],
        &mut out.g[..ncomp],
        p,
    )?;
    Ok(())
}

pub fn cauchy_kovalewski_1d<M: FluxModel>(
    model: &M,
    spatial: &[f64],
    ratios: ScaledRatios,
    scratch: &mut M::Scratch,
    out: &mut CkJets,
) -> Result<()> {
    if out.layout().dims() != SpaceDims::One {
        return Err(Error::Shape("1D procedure on a 2D jet".into()));
    }
    cauchy_kovalewski(model, spatial, ratios, scratch, out)
}

pub fn cauchy_kovalewski_2d<M: FluxModel>(
    model: &M,
    spatial: &[f64],
    ratios: ScaledRatios,
    scratch: &mut M::Scratch,
    out: &mut CkJets,
) -> Result<()> {
    if out.layout().dims() != SpaceDims::Two {
        return Err(Error::Shape("2D procedure on a 1D jet".into()));
    }
    cauchy_kovalewski(model, spatial, ratios, scratch, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::copy_slice;

    struct Advect(f64, f64);

    impl FluxModel for Advect {
        type Scratch = ();
        fn ncomp(&self) -> usize {
            1
        }
        fn new_scratch(&self, _: &'static JetLayout) {}
        fn flux_slice(&self, u: &[Jet], _: &mut (), f: &mut [Jet], g: &mut [Jet], b: usize) -> Result<()> {
            copy_slice(&mut f[0], &u[0].scale(self.0), b);
            copy_slice(&mut g[0], &u[0].scale(self.1), b);
            Ok(())
        }
    }

    #[test]
    fn linear_advection_1d_closed_form() {
        let layout = JetLayout::get(SpaceDims::One, 3).unwrap();
        let dofs = [0.3, -1.2, 0.7, 2.5];
        let (a, nu) = (1.3, 0.25);
        let mut out = CkJets::new(layout, 1);
        cauchy_kovalewski_1d(&Advect(a, 0.0), &dofs, ScaledRatios { nu_x: nu, nu_y: 0.0 }, &mut (), &mut out)
            .unwrap();
        for k in 0..=3 {
            for b in 0..=(3 - k) {
                let expect = (-a * nu).powi(b as i32) * dofs[k + b];
                let got = out.u[0].derivative(k, 0, b);
                assert!((got - expect).abs() <= 1e-13 * expect.abs().max(1.0), "{k} {b}");
            }
        }
    }

    #[test]
    fn linear_advection_2d_first_level() {
        let layout = JetLayout::get(SpaceDims::Two, 1).unwrap();
        let mut out = CkJets::new(layout, 1);
        let r = ScaledRatios { nu_x: 0.25, nu_y: 0.25 };
        cauchy_kovalewski_2d(&Advect(1.0, 1.0), &[0.0, 1.0, 1.0], r, &mut (), &mut out).unwrap();
        assert!((out.u[0].derivative(0, 0, 1) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn dims_are_checked() {
        let layout = JetLayout::get(SpaceDims::Two, 1).unwrap();
        let mut out = CkJets::new(layout, 1);
        let r = ScaledRatios { nu_x: 0.1, nu_y: 0.1 };
        assert!(cauchy_kovalewski_1d(&Advect(1.0, 1.0), &[0.0; 3], r, &mut (), &mut out).is_err());
        assert!(cauchy_kovalewski_2d(&Advect(1.0, 1.0), &[0.0; 2], r, &mut (), &mut out).is_err());
    }
}
