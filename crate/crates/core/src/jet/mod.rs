//! Truncated space-time Taylor jets and the Cauchy-Kovalewski procedure.
//!
//! A [`Jet`] is a polynomial in the normalized coordinates
//! `xi = (x - x_c)/dx`, `eta = (y - y_c)/dy` and `tau = (t - t_n)/dt`,
//! truncated at total degree `P`. Internally the Taylor coefficients are
//! stored, so the scaled derivative `u_{kx,ly,bt}` of the schemes equals
//! `k! l! b!` times the stored coefficient; [`Jet::derivative`] and
//! [`Jet::from_derivatives`] convert at the boundary.

mod ck;
mod layout;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use ck::{cauchy_kovalewski, cauchy_kovalewski_1d, cauchy_kovalewski_2d, CkJets, FluxModel, ScaledRatios, MAX_COMPONENTS};
pub use layout::{JetLayout, SpaceDims, MAX_COEFFS, MAX_DEGREE};

use crate::error::{Error, Result};

/// Smallest constant term accepted by [`Jet::recip`].
pub const RECIP_FLOOR: f64 = 1e-300;

#[derive(Clone, Copy)]
pub struct Jet {
    layout: &'static JetLayout,
    c: [f64; MAX_COEFFS],
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet")
            .field("dims", &self.layout.dims())
            .field("degree", &self.layout.degree())
            .field("taylor", &self.taylor())
            .finish()
    }
}

impl PartialEq for Jet {
    fn eq(&self, other: &Self) -> bool {
        self.same_shape(other) && self.taylor() == other.taylor()
    }
}

impl Jet {
    pub fn zero(layout: &'static JetLayout) -> Self {
        Jet {
            layout,
            c: [0.0; MAX_COEFFS],
        }
    }

    pub fn constant(layout: &'static JetLayout, value: f64) -> Self {
        let mut j = Jet::zero(layout);
        j.c[0] = value;
        j
    }

    /// `value + xi` (axis 0), `value + eta` (axis 1) or `value + tau` (axis 2).
    pub fn variable(layout: &'static JetLayout, axis: usize, value: f64) -> Result<Self> {
        let mut e = [0usize; 3];
        if axis > 2 || (axis == 1 && layout.dims() == SpaceDims::One) {
            return Err(Error::Shape(format!("no axis {axis} in a {:?} jet", layout.dims())));
        }
        e[axis] = 1;
        let mut j = Jet::constant(layout, value);
        let i = layout.index_of(e[0], e[1], e[2]).expect("degree >= 1");
        j.c[i] = 1.0;
        Ok(j)
    }

    pub fn from_taylor(layout: &'static JetLayout, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() != layout.len() {
            return Err(Error::Shape(format!(
                "expected {} coefficients, got {}",
                layout.len(),
                coeffs.len()
            )));
        }
        let mut j = Jet::zero(layout);
        j.c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(j)
    }

    /// Builds a jet from scaled derivatives listed in layout order.
    pub fn from_derivatives(layout: &'static JetLayout, derivs: &[f64]) -> Result<Self> {
        let mut j = Jet::from_taylor(layout, derivs)?;
        for i in 0..layout.len() {
            j.c[i] /= layout.factorial(i);
        }
        Ok(j)
    }

    pub fn layout(&self) -> &'static JetLayout {
        self.layout
    }

    pub fn same_shape(&self, other: &Jet) -> bool {
        std::ptr::eq(self.layout, other.layout)
    }

    pub fn taylor(&self) -> &[f64] {
        &self.c[..self.layout.len()]
    }

    pub fn taylor_mut(&mut self) -> &mut [f64] {
        let n = self.layout.len();
        &mut self.c[..n]
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Taylor coefficient of `xi^k eta^l tau^b`; zero beyond the truncation.
    pub fn coeff(&self, k: usize, l: usize, b: usize) -> f64 {
        self.layout.index_of(k, l, b).map_or(0.0, |i| self.c[i])
    }

    /// Scaled derivative `u_{kx,ly,bt}`; zero beyond the truncation.
    pub fn derivative(&self, k: usize, l: usize, b: usize) -> f64 {
        self.layout
            .index_of(k, l, b)
            .map_or(0.0, |i| self.c[i] * self.layout.factorial(i))
    }

    pub fn derivatives(&self) -> Vec<f64> {
        (0..self.layout.len())
            .map(|i| self.c[i] * self.layout.factorial(i))
            .collect()
    }

    fn check(&self, other: &Jet) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "{:?}/P={} vs {:?}/P={}",
                self.layout.dims(),
                self.layout.degree(),
                other.layout.dims(),
                other.layout.degree()
            )))
        }
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        let mut out = *self;
        for (o, v) in out.taylor_mut().iter_mut().zip(other.taylor()) {
            *o += v;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        let mut out = *self;
        for (o, v) in out.taylor_mut().iter_mut().zip(other.taylor()) {
            *o -= v;
        }
        Ok(out)
    }

    pub fn scale(&self, s: f64) -> Jet {
        let mut out = *self;
        out.taylor_mut().iter_mut().for_each(|v| *v *= s);
        out
    }

    /// Truncated product.
    pub fn try_mul(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        let mut out = Jet::zero(self.layout);
        for b in 0..=self.layout.degree() {
            mul_slice(self, other, &mut out, b);
        }
        Ok(out)
    }

    /// Truncated reciprocal, built order by order.
    pub fn recip(&self) -> Result<Jet> {
        let mut out = Jet::zero(self.layout);
        for b in 0..=self.layout.degree() {
            recip_slice(self, &mut out, b)?;
        }
        Ok(out)
    }

    /// Non-negative integer power by repeated truncated multiplication.
    pub fn powi(&self, n: u32) -> Jet {
        let mut out = Jet::constant(self.layout, 1.0);
        for _ in 0..n {
            out = out.try_mul(self).expect("same layout");
        }
        out
    }

    /// Evaluates the polynomial at normalized coordinates.
    pub fn eval(&self, xi: f64, eta: f64, tau: f64) -> f64 {
        let l = self.layout;
        (0..l.len())
            .map(|i| {
                let [k, m, b] = l.exponents(i);
                self.c[i] * xi.powi(k as i32) * eta.powi(m as i32) * tau.powi(b as i32)
            })
            .sum()
    }
}

/// Writes time slice `b` of `a * c` into `out`, leaving other slices untouched.
#[inline]
pub fn mul_slice(a: &Jet, c: &Jet, out: &mut Jet, b: usize) {
    let layout = a.layout;
    for i in layout.slice(b) {
        out.c[i] = 0.0;
    }
    for p in layout.products_in_slice(b) {
        out.c[p[0] as usize] += a.c[p[1] as usize] * c.c[p[2] as usize];
    }
}

/// Writes time slice `b` of `1/a` into `out`. Requires slices `< b` of `out`
/// to hold the reciprocal already.
#[inline]
pub fn recip_slice(a: &Jet, out: &mut Jet, b: usize) -> Result<()> {
    let a0 = a.c[0];
    if a0.abs() < RECIP_FLOOR || !a0.is_finite() {
        return Err(Error::DivisionByZero(a0));
    }
    let inv = 1.0 / a0;
    let layout = a.layout;
    let range = layout.slice(b);
    let products = layout.products_in_slice(b);
    let mut cursor = 0;
    for i in range {
        let mut acc = 0.0;
        while cursor < products.len() && products[cursor][0] as usize == i {
            let p = products[cursor];
            // the a_0 * r_i term is the unknown
            if p[1] != 0 {
                acc += a.c[p[1] as usize] * out.c[p[2] as usize];
            }
            cursor += 1;
        }
        out.c[i] = if i == 0 { inv } else { -inv * acc };
    }
    Ok(())
}

/// Writes time slice `b` of `c0 * [b == 0] + sum_k w_k * t_k` into `out`.
#[inline]
pub fn combine_slice(out: &mut Jet, b: usize, c0: f64, terms: &[(f64, &Jet)]) {
    let range = out.layout.slice(b);
    let start = range.start;
    for i in range {
        out.c[i] = terms.iter().map(|(w, t)| w * t.c[i]).sum();
    }
    if b == 0 {
        out.c[start] += c0;
    }
}

/// Copies time slice `b` of `src` into `out`.
#[inline]
pub fn copy_slice(out: &mut Jet, src: &Jet, b: usize) {
    let range = out.layout.slice(b);
    out.c[range.clone()].copy_from_slice(&src.c[range]);
}

/// Coefficient-wise sum; errors on mismatched shape.
pub fn jet_add(a: &Jet, b: &Jet) -> Result<Jet> {
    a.try_add(b)
}

/// Truncated product; errors on mismatched shape.
pub fn jet_mul(a: &Jet, b: &Jet) -> Result<Jet> {
    a.try_mul(b)
}

/// Truncated reciprocal; errors when the constant term vanishes.
pub fn jet_recip(a: &Jet) -> Result<Jet> {
    a.recip()
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        self.try_add(&rhs).expect("jet shapes must match")
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self.try_sub(&rhs).expect("jet shapes must match")
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        self.try_mul(&rhs).expect("jet shapes must match")
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.c[0] += rhs;
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}
