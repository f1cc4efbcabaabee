//! Jet arithmetic and the Cauchy-Kovalewski procedure against independent oracles.

mod common;

use common::{advection_time_derivative, naive_mul, poly_mismatch, to_poly};
use proptest::prelude::*;
use wcc_core::jet::{cauchy_kovalewski, CkJets, FluxModel, Jet, JetLayout, ScaledRatios, SpaceDims};
use wcc_core::physics::{GasModel, Physics, Primitive};

fn layouts() -> impl Strategy<Value = &'static JetLayout> {
    (prop_oneof![Just(SpaceDims::One), Just(SpaceDims::Two)], 1usize..=3)
        .prop_map(|(d, p)| JetLayout::get(d, p).unwrap())
}

fn jet_in(layout: &'static JetLayout) -> impl Strategy<Value = Jet> {
    prop::collection::vec(-2.0f64..2.0, layout.len()).prop_map(move |c| Jet::from_taylor(layout, &c).unwrap())
}

fn two_jets() -> impl Strategy<Value = (Jet, Jet)> {
    layouts().prop_flat_map(|l| (jet_in(l), jet_in(l)))
}

proptest! {
    #[test]
    fn product_matches_dense_multiplication((a, b) in two_jets()) {
        let p = a.layout().degree();
        let expect = naive_mul(&to_poly(&a), &to_poly(&b), p);
        let err = poly_mismatch(&a.try_mul(&b).unwrap(), &expect);
        prop_assert!(err <= 1e-13, "mismatch {err}");
    }

    #[test]
    fn reciprocal_inverts_the_product(mut a in layouts().prop_flat_map(jet_in), c0 in 0.5f64..3.0) {
        a.taylor_mut()[0] = c0;
        let r = a.recip().unwrap();
        let p = a.layout().degree();
        let prod = naive_mul(&to_poly(&a), &to_poly(&r), p);
        for (e, v) in prod {
            let want = if e == (0, 0, 0) { 1.0 } else { 0.0 };
            prop_assert!((v - want).abs() < 1e-12, "{e:?}: {v}");
        }
    }

    #[test]
    fn derivatives_round_trip(a in layouts().prop_flat_map(jet_in)) {
        let back = Jet::from_derivatives(a.layout(), &a.derivatives()).unwrap();
        for (x, y) in back.taylor().iter().zip(a.taylor()) {
            prop_assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn eval_matches_term_sum(a in layouts().prop_flat_map(jet_in), xi in -0.5f64..0.5, eta in -0.5f64..0.5, tau in 0.0f64..1.0) {
        let eta = if a.layout().dims() == SpaceDims::One { 0.0 } else { eta };
        let want: f64 = to_poly(&a)
            .iter()
            .map(|(&(k, l, b), v)| v * xi.powi(k as i32) * eta.powi(l as i32) * tau.powi(b as i32))
            .sum();
        prop_assert!((a.eval(xi, eta, tau) - want).abs() < 1e-13);
    }
}

#[test]
fn reciprocal_of_shifted_variable() {
    // 1 / (c + xi) = sum_k (-1)^k xi^k / c^(k+1)
    let layout = JetLayout::get(SpaceDims::One, 3).unwrap();
    let c = 1.7;
    let r = Jet::variable(layout, 0, c).unwrap().recip().unwrap();
    for k in 0..=3 {
        let want = (-1f64).powi(k as i32) / c.powi(k as i32 + 1);
        assert!((r.coeff(k, 0, 0) - want).abs() < 1e-15);
    }
}

#[test]
fn mixed_layouts_are_rejected() {
    let a = Jet::constant(JetLayout::get(SpaceDims::One, 2).unwrap(), 1.0);
    let b = Jet::constant(JetLayout::get(SpaceDims::Two, 2).unwrap(), 1.0);
    assert!(a.try_mul(&b).is_err());
    assert!(a.try_add(&b).is_err());
    assert!(JetLayout::get(SpaceDims::One, 4).is_err());
    assert!(JetLayout::get(SpaceDims::One, 0).is_err());
}

/// Scaled spatial derivatives of a random polynomial in layout slice-0 order.
fn spatial_dofs(layout: &JetLayout, seed: &[f64]) -> Vec<f64> {
    layout.slice(0).map(|i| seed[i % seed.len()] * (1.0 + i as f64 * 0.1)).collect()
}

fn run_ck(phys: &Physics, layout: &'static JetLayout, dofs: &[f64], r: ScaledRatios) -> CkJets {
    let mut out = CkJets::new(layout, phys.ncomp());
    let mut scratch = phys.new_scratch(layout);
    cauchy_kovalewski(phys, dofs, r, &mut scratch, &mut out).unwrap();
    out
}

proptest! {
    #[test]
    fn advection_time_derivatives_follow_binomial_formula(
        p in 1usize..=3,
        two_d in any::<bool>(),
        a in -2.0f64..2.0,
        b in -2.0f64..2.0,
        nu_x in 0.0f64..0.6,
        nu_y in 0.0f64..0.6,
        seed in prop::collection::vec(-1.0f64..1.0, 10),
    ) {
        let (dims, phys, r) = if two_d {
            (SpaceDims::Two, Physics::Advection2D { a, b }, ScaledRatios { nu_x, nu_y })
        } else {
            (SpaceDims::One, Physics::Advection1D { a }, ScaledRatios { nu_x, nu_y: 0.0 })
        };
        let layout = JetLayout::get(dims, p).unwrap();
        let dofs = spatial_dofs(layout, &seed);
        let out = run_ck(&phys, layout, &dofs, r);
        let u = &out.u()[0];
        let s = |k: usize, l: usize| u.derivative(k, l, 0);
        let (cx, cy) = (-a * r.nu_x, -b * r.nu_y);
        for i in 0..layout.len() {
            let [k, l, t] = layout.exponents(i);
            let want = advection_time_derivative(s, k, l, t, cx, cy);
            let got = u.derivative(k, l, t);
            prop_assert!((got - want).abs() < 1e-13 * (1.0 + want.abs()), "{k},{l},{t}: {got} vs {want}");
        }
        // flux jets are a u and b u
        for i in 0..layout.len() {
            prop_assert!((out.f()[0].taylor()[i] - a * u.taylor()[i]).abs() < 1e-14);
        }
    }
}

/// Jacobian of a flux by central differences.
fn fd_jacobian(flux: impl Fn(&[f64]) -> Vec<f64>, u: &[f64]) -> Vec<Vec<f64>> {
    let n = u.len();
    let mut jac = vec![vec![0.0; n]; n];
    for j in 0..n {
        let h = 1e-6 * (1.0 + u[j].abs());
        let mut up = u.to_vec();
        let mut dn = u.to_vec();
        up[j] += h;
        dn[j] -= h;
        let (fp, fm) = (flux(&up), flux(&dn));
        for i in 0..n {
            jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}

fn gas_state() -> impl Strategy<Value = Primitive> {
    (0.2f64..3.0, -2.0f64..2.0, -2.0f64..2.0, 0.2f64..3.0).prop_map(|(r, u, v, p)| Primitive::new(r, u, v, p))
}

proptest! {
    #[test]
    fn euler_jacobian_matches_finite_differences(w in gas_state(), theta in 0.0f64..6.3) {
        let gas = GasModel::default();
        let u1 = gas.conservative_1d(w);
        let a = gas.jacobian(&u1, 1.0, 0.0).unwrap();
        let fd = fd_jacobian(|q| gas.flux_1d(&[q[0], q[1], q[2]]).unwrap().to_vec(), &u1);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((a[i][j] - fd[i][j]).abs() < 1e-6 * (1.0 + fd[i][j].abs()));
            }
        }
        let u2 = gas.conservative_2d(w);
        let (ny, nx) = theta.sin_cos();
        let a = gas.jacobian(&u2, nx, ny).unwrap();
        let flux = |q: &[f64]| {
            let q = [q[0], q[1], q[2], q[3]];
            let (f, g) = (gas.flux_2d_f(&q).unwrap(), gas.flux_2d_g(&q).unwrap());
            (0..4).map(|i| nx * f[i] + ny * g[i]).collect()
        };
        let fd = fd_jacobian(flux, &u2);
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((a[i][j] - fd[i][j]).abs() < 1e-6 * (1.0 + fd[i][j].abs()));
            }
        }
    }

    #[test]
    fn euler_first_time_level_is_minus_jacobian_times_gradient(
        w in gas_state(),
        p in 1usize..=3,
        two_d in any::<bool>(),
        grad in prop::collection::vec(-0.3f64..0.3, 8),
        nu_x in 0.05f64..0.5,
        nu_y in 0.05f64..0.5,
    ) {
        let gas = GasModel::default();
        let (dims, phys, r, u0): (_, _, _, Vec<f64>) = if two_d {
            (SpaceDims::Two, Physics::Euler2D(gas), ScaledRatios { nu_x, nu_y }, gas.conservative_2d(w).to_vec())
        } else {
            (SpaceDims::One, Physics::Euler1D(gas), ScaledRatios { nu_x, nu_y: 0.0 }, gas.conservative_1d(w).to_vec())
        };
        let n = u0.len();
        let layout = JetLayout::get(dims, p).unwrap();
        let ns = layout.spatial_len();
        let ix = layout.index_of(1, 0, 0).unwrap();
        let iy = layout.index_of(0, 1, 0);
        let mut dofs = vec![0.0; n * ns];
        for c in 0..n {
            dofs[c * ns] = u0[c];
            dofs[c * ns + ix] = grad[c] * u0[0];
            if let Some(iy) = iy {
                dofs[c * ns + iy] = grad[4 + c] * u0[0];
            }
        }
        let out = run_ck(&phys, layout, &dofs, r);
        let ax = gas.jacobian(&u0, 1.0, 0.0).unwrap();
        let ay = if two_d { gas.jacobian(&u0, 0.0, 1.0).unwrap() } else { [[0.0; 4]; 4] };
        for c in 0..n {
            let mut want = 0.0;
            for j in 0..n {
                want -= r.nu_x * ax[c][j] * dofs[j * ns + ix];
                if let Some(iy) = iy {
                    want -= r.nu_y * ay[c][j] * dofs[j * ns + iy];
                }
            }
            let got = out.u()[c].derivative(0, 0, 1);
            prop_assert!((got - want).abs() < 1e-12 * (1.0 + want.abs()), "component {c}: {got} vs {want}");
        }
    }
}
