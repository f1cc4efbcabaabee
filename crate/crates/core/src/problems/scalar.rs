//! Numbers that initial-data formulas can be evaluated on: plain `f64` for
//! point values and [`Jet`] for point values together with all scaled
//! derivatives.

use std::ops::{Add, Mul, Neg, Sub};

use crate::jet::Jet;

pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Mul<f64, Output = Self>
    + Add<f64, Output = Self>
    + Neg<Output = Self>
{
    fn value(&self) -> f64;
    /// Constant of the same shape.
    fn lift(&self, v: f64) -> Self;
    fn exp(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    /// `self^e` for a positive base.
    fn powf(self, e: f64) -> Self;

    fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    fn abs(self) -> Self {
        if self.value() < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    fn value(&self) -> f64 {
        *self
    }

    fn lift(&self, v: f64) -> f64 {
        v
    }

    fn exp(self) -> f64 {
        f64::exp(self)
    }

    fn sin(self) -> f64 {
        f64::sin(self)
    }

    fn cos(self) -> f64 {
        f64::cos(self)
    }

    fn powf(self, e: f64) -> f64 {
        f64::powf(self, e)
    }

    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
}

/// `f(a)` for a jet `a`, given `d[n] = f^(n)(a_0) / n!` for `n = 0..=P`.
fn compose(a: Jet, d: &[f64]) -> Jet {
    let mut h = a;
    h.taylor_mut()[0] = 0.0;
    let p = d.len() - 1;
    let mut r = a.lift(d[p]);
    for n in (0..p).rev() {
        r = r * h + d[n];
    }
    r
}

fn factorials(n: usize) -> impl Iterator<Item = f64> {
    (0..=n).scan(1.0, |f, k| {
        if k > 0 {
            *f *= k as f64;
        }
        Some(*f)
    })
}

impl Scalar for Jet {
    fn value(&self) -> f64 {
        Jet::value(self)
    }

    fn lift(&self, v: f64) -> Jet {
        Jet::constant(self.layout(), v)
    }

    fn exp(self) -> Jet {
        let e = self.value().exp();
        let p = self.layout().degree();
        let d: Vec<f64> = factorials(p).map(|f| e / f).collect();
        compose(self, &d)
    }

    fn sin(self) -> Jet {
        let (s, c) = self.value().sin_cos();
        let cycle = [s, c, -s, -c];
        let p = self.layout().degree();
        let d: Vec<f64> = factorials(p).enumerate().map(|(n, f)| cycle[n % 4] / f).collect();
        compose(self, &d)
    }

    fn cos(self) -> Jet {
        let (s, c) = self.value().sin_cos();
        let cycle = [c, -s, -c, s];
        let p = self.layout().degree();
        let d: Vec<f64> = factorials(p).enumerate().map(|(n, f)| cycle[n % 4] / f).collect();
        compose(self, &d)
    }

    fn powf(self, e: f64) -> Jet {
        let a = self.value();
        let p = self.layout().degree();
        let mut d = Vec::with_capacity(p + 1);
        let mut binom = 1.0;
        for n in 0..=p {
            d.push(binom * a.powf(e - n as f64));
            binom *= (e - n as f64) / (n + 1) as f64;
        }
        compose(self, &d)
    }
}
