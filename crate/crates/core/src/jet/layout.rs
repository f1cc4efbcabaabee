use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Highest polynomial degree supported (fourth-order schemes).
pub const MAX_DEGREE: usize = 3;
/// Coefficient capacity of a jet: degree 3 in (x, y, t).
pub const MAX_COEFFS: usize = 20;

const NONE: u8 = u8::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceDims {
    One,
    Two,
}

impl SpaceDims {
    pub fn count(self) -> usize {
        match self {
            SpaceDims::One => 1,
            SpaceDims::Two => 2,
        }
    }
}

/// Multi-index bookkeeping for truncated jets in (x[, y], t).
///
/// Coefficients are ordered time-major: every time slice `b` is a contiguous
/// block holding the spatial multi-indices of total degree `<= P - b`, sorted
/// by spatial degree and then by ascending y-exponent. Slice 0 therefore has
/// exactly the layout of a cell's spatial DOFs.
#[derive(Debug)]
pub struct JetLayout {
    dims: SpaceDims,
    degree: usize,
    exps: Vec<[u8; 3]>,
    index: [[[u8; 4]; 4]; 4],
    slices: [usize; MAX_DEGREE + 2],
    /// (out, a, b) with exps[a] + exps[b] == exps[out], grouped by the time slice of `out`.
    products: Vec<[u8; 3]>,
    product_slices: [usize; MAX_DEGREE + 2],
    factorials: Vec<f64>,
}

impl JetLayout {
    fn build(dims: SpaceDims, degree: usize) -> Self {
        let mut exps = Vec::new();
        let mut slices = [0; MAX_DEGREE + 2];
        for b in 0..=degree {
            slices[b] = exps.len();
            for d in 0..=(degree - b) {
                match dims {
                    SpaceDims::One => exps.push([d as u8, 0, b as u8]),
                    SpaceDims::Two => {
                        for l in 0..=d {
                            exps.push([(d - l) as u8, l as u8, b as u8]);
                        }
                    }
                }
            }
        }
        for s in slices.iter_mut().skip(degree + 1) {
            *s = exps.len();
        }
        assert!(exps.len() <= MAX_COEFFS);

        let mut index = [[[NONE; 4]; 4]; 4];
        for (i, e) in exps.iter().enumerate() {
            index[e[0] as usize][e[1] as usize][e[2] as usize] = i as u8;
        }

        let lookup = |k: i32, l: i32, b: i32| -> Option<usize> {
            if k < 0 || l < 0 || b < 0 || k > 3 || l > 3 || b > 3 {
                return None;
            }
            let v = index[k as usize][l as usize][b as usize];
            (v != NONE).then_some(v as usize)
        };

        let mut products = Vec::new();
        let mut product_slices = [0; MAX_DEGREE + 2];
        for b in 0..=degree {
            product_slices[b] = products.len();
            for out in slices[b]..slices[b + 1] {
                let g = exps[out];
                for (a, ea) in exps.iter().enumerate() {
                    let rest = lookup(
                        g[0] as i32 - ea[0] as i32,
                        g[1] as i32 - ea[1] as i32,
                        g[2] as i32 - ea[2] as i32,
                    );
                    if let Some(r) = rest {
                        products.push([out as u8, a as u8, r as u8]);
                    }
                }
            }
        }
        for s in product_slices.iter_mut().skip(degree + 1) {
            *s = products.len();
        }

        let fact = |n: u8| -> f64 { (1..=n as u32).map(f64::from).product() };
        let factorials = exps
            .iter()
            .map(|e| fact(e[0]) * fact(e[1]) * fact(e[2]))
            .collect();

        JetLayout {
            dims,
            degree,
            exps,
            index,
            slices,
            products,
            product_slices,
            factorials,
        }
    }

    /// The shared layout for the given dimensionality and degree (1..=3).
    pub fn get(dims: SpaceDims, degree: usize) -> Result<&'static JetLayout> {
        static LAYOUTS: OnceLock<Vec<JetLayout>> = OnceLock::new();
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(Error::config(format!(
                "polynomial degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        let all = LAYOUTS.get_or_init(|| {
            let mut v = Vec::new();
            for dims in [SpaceDims::One, SpaceDims::Two] {
                for p in 1..=MAX_DEGREE {
                    v.push(JetLayout::build(dims, p));
                }
            }
            v
        });
        let offset = match dims {
            SpaceDims::One => 0,
            SpaceDims::Two => MAX_DEGREE,
        };
        Ok(&all[offset + degree - 1])
    }

    pub fn dims(&self) -> SpaceDims {
        self.dims
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Number of spatial coefficients (the size of time slice 0).
    pub fn spatial_len(&self) -> usize {
        self.slices[1]
    }

    /// Exponents (k, l, b) of coefficient `i`; `l` is always 0 in 1D.
    pub fn exponents(&self, i: usize) -> [usize; 3] {
        let e = self.exps[i];
        [e[0] as usize, e[1] as usize, e[2] as usize]
    }

    pub fn total_degree(&self, i: usize) -> usize {
        let e = self.exps[i];
        (e[0] + e[1] + e[2]) as usize
    }

    /// Position of (k, l, b), or `None` when it exceeds the truncation.
    pub fn index_of(&self, k: usize, l: usize, b: usize) -> Option<usize> {
        if k > 3 || l > 3 || b > 3 {
            return None;
        }
        let v = self.index[k][l][b];
        (v != NONE).then_some(v as usize)
    }

    /// Coefficient range of time slice `b`.
    pub fn slice(&self, b: usize) -> std::ops::Range<usize> {
        self.slices[b]..self.slices[b + 1]
    }

    /// k! l! b! for coefficient `i` (Taylor coefficient times this is the scaled derivative).
    pub fn factorial(&self, i: usize) -> f64 {
        self.factorials[i]
    }

    /// All splits `out = a + b`, as index triples (out, a, b).
    pub fn products(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.products
            .iter()
            .map(|p| (p[0] as usize, p[1] as usize, p[2] as usize))
    }

    pub(crate) fn products_in_slice(&self, b: usize) -> &[[u8; 3]] {
        &self.products[self.product_slices[b]..self.product_slices[b + 1]]
    }
}
