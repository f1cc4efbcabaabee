//! Staggered cell updates on polynomial data and whole half-steps on simple states.

use proptest::prelude::*;
use wcc_core::jet::{cauchy_kovalewski, CkJets, FluxModel, JetLayout, ScaledRatios, SpaceDims};
use wcc_core::mesh::{fill_ghosts, Axis, Bc, Boundaries, Mesh, MeshState, Parity};
use wcc_core::physics::{GasModel, Physics, Primitive};
use wcc_core::scheme::{advance_half_step, one_d, stable_dt, two_d, SchemeConfig};

const GL_NODES: [f64; 4] = [-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526];
const GL_WEIGHTS: [f64; 4] = [0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538];

/// Polynomial `sum c[(k, l)] x^k y^l` in cell-size units.
#[derive(Debug, Clone)]
struct Poly2 {
    terms: Vec<((usize, usize), f64)>,
}

impl Poly2 {
    fn derivative(&self, dk: usize, dl: usize, x: f64, y: f64) -> f64 {
        let falling = |n: usize, k: usize| -> f64 { (0..k).map(|i| (n - i) as f64).product() };
        self.terms
            .iter()
            .filter(|((k, l), _)| *k >= dk && *l >= dl)
            .map(|((k, l), c)| {
                c * falling(*k, dk) * falling(*l, dl) * x.powi((k - dk) as i32) * y.powi((l - dl) as i32)
            })
            .sum()
    }

    fn value(&self, x: f64, y: f64) -> f64 {
        self.derivative(0, 0, x, y)
    }
}

fn poly(p: usize, two_d: bool, coeffs: &[f64]) -> Poly2 {
    let mut terms = Vec::new();
    let mut n = 0;
    for k in 0..=p {
        for l in 0..=(if two_d { p - k } else { 0 }) {
            terms.push(((k, l), coeffs[n % coeffs.len()]));
            n += 1;
        }
    }
    Poly2 { terms }
}

/// Scaled spatial DOFs of `q` around `(x, y)` in layout order.
fn dofs_at(layout: &JetLayout, q: &Poly2, x: f64, y: f64) -> Vec<f64> {
    layout
        .slice(0)
        .map(|i| {
            let [k, l, _] = layout.exponents(i);
            q.derivative(k, l, x, y)
        })
        .collect()
}

fn evolve(phys: &Physics, layout: &'static JetLayout, dofs: &[f64], r: ScaledRatios) -> CkJets {
    let mut out = CkJets::new(layout, 1);
    let mut scratch = phys.new_scratch(layout);
    cauchy_kovalewski(phys, dofs, r, &mut scratch, &mut out).unwrap();
    out
}

proptest! {
    #[test]
    fn one_d_update_is_exact_for_polynomials(
        p in 1usize..=3,
        a in -1.0f64..1.0,
        nu in 0.05f64..0.5,
        coeffs in prop::collection::vec(-1.0f64..1.0, 4),
    ) {
        let layout = JetLayout::get(SpaceDims::One, p).unwrap();
        let q = poly(p, false, &coeffs);
        let phys = Physics::Advection1D { a };
        let r = ScaledRatios { nu_x: nu, nu_y: 0.0 };
        let left = evolve(&phys, layout, &dofs_at(layout, &q, -0.5, 0.0), r);
        let right = evolve(&phys, layout, &dofs_at(layout, &q, 0.5, 0.0), r);
        let up = one_d::update_cell(&left, &right, r).unwrap();
        let shift = a * nu;
        let avg: f64 = GL_NODES.iter().zip(&GL_WEIGHTS).map(|(x, w)| 0.5 * w * q.value(0.5 * x - shift, 0.0)).sum();
        prop_assert!((up.avg[0] - avg).abs() < 1e-13, "average {} vs {avg}", up.avg[0]);
        let want = dofs_at(layout, &q, -shift, 0.0);
        for (i, (g, w)) in up.dofs.iter().zip(&want).enumerate() {
            prop_assert!((g - w).abs() < 1e-12, "dof {i}: {g} vs {w}");
        }
    }

    #[test]
    fn two_d_update_is_exact_for_polynomials(
        p in 1usize..=3,
        a in -1.0f64..1.0,
        b in -1.0f64..1.0,
        nu_x in 0.05f64..0.35,
        nu_y in 0.05f64..0.35,
        coeffs in prop::collection::vec(-1.0f64..1.0, 10),
    ) {
        let layout = JetLayout::get(SpaceDims::Two, p).unwrap();
        let q = poly(p, true, &coeffs);
        let phys = Physics::Advection2D { a, b };
        let r = ScaledRatios { nu_x, nu_y };
        let src = [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]
            .map(|(x, y)| evolve(&phys, layout, &dofs_at(layout, &q, x, y), r));
        let up = two_d::update_cell([&src[0], &src[1], &src[2], &src[3]], r).unwrap();
        let (sx, sy) = (a * nu_x, b * nu_y);
        let mut avg = 0.0;
        for (x, wx) in GL_NODES.iter().zip(&GL_WEIGHTS) {
            for (y, wy) in GL_NODES.iter().zip(&GL_WEIGHTS) {
                avg += 0.25 * wx * wy * q.value(0.5 * x - sx, 0.5 * y - sy);
            }
        }
        prop_assert!((up.avg[0] - avg).abs() < 1e-13, "average {} vs {avg}", up.avg[0]);
        let want = dofs_at(layout, &q, -sx, -sy);
        for (i, (g, w)) in up.dofs.iter().zip(&want).enumerate() {
            prop_assert!((g - w).abs() < 1e-12, "dof {i}: {g} vs {w}");
        }
    }
}

#[test]
fn mismatched_sources_are_rejected() {
    let l1 = JetLayout::get(SpaceDims::One, 2).unwrap();
    let l2 = JetLayout::get(SpaceDims::One, 3).unwrap();
    let r = ScaledRatios { nu_x: 0.1, nu_y: 0.0 };
    assert!(one_d::update_cell(&CkJets::new(l1, 1), &CkJets::new(l2, 1), r).is_err());
    let j = CkJets::new(l1, 1);
    assert!(two_d::update_cell([&j, &j, &j, &j], r).is_err());
}

fn uniform_state(mesh: Mesh, degree: usize, q: &[f64]) -> MeshState {
    let mut s = MeshState::new(mesh, degree, q.len(), Parity::Staggered).unwrap();
    let nd = s.ndof();
    let cells: Vec<_> = s.unique_cells().collect();
    for (i, j) in cells {
        let cell = s.field_mut().cell_mut(i, j);
        for (c, v) in q.iter().enumerate() {
            cell[c * nd] = *v;
        }
    }
    s
}

fn step(state: &mut MeshState, bcs: &Boundaries, phys: &Physics, cfg: &SchemeConfig) -> f64 {
    fill_ghosts(state, bcs, phys).unwrap();
    let dt = stable_dt(state, phys, cfg.cfl).unwrap();
    advance_half_step(state, phys, cfg, dt).unwrap();
    dt
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn uniform_euler_flow_is_preserved(
        order in 2usize..=4,
        w in (0.2f64..3.0, -1.0f64..1.0, -1.0f64..1.0, 0.2f64..3.0),
        wall in any::<bool>(),
    ) {
        let gas = GasModel::default();
        let prim = if wall { Primitive::new(w.0, 0.0, 0.0, w.3) } else { Primitive::new(w.0, w.1, w.2, w.3) };
        let q = gas.conservative_2d(prim);
        let bc = if wall { Bc::ReflectiveWall } else { Bc::Periodic };
        let periodic = !wall;
        let mesh = Mesh::new_2d(Axis::new(0.0, 1.0, 6, periodic).unwrap(), Axis::new(0.0, 2.0, 5, periodic).unwrap());
        let phys = Physics::Euler2D(gas);
        let cfg = SchemeConfig::new(order).unwrap();
        let mut s = uniform_state(mesh, order - 1, &q);
        for _ in 0..3 {
            step(&mut s, &Boundaries::uniform(bc), &phys, &cfg);
        }
        let nd = s.ndof();
        for (i, j) in s.unique_cells() {
            let cell = s.field().cell(i, j);
            for c in 0..4 {
                prop_assert!((cell[c * nd] - q[c]).abs() < 1e-13 * (1.0 + q[c].abs()), "cell ({i},{j}) comp {c}");
                for d in 1..nd {
                    prop_assert!(cell[c * nd + d].abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn half_steps_alternate_parity() {
    let mesh = Mesh::new_1d(Axis::new(0.0, 1.0, 10, true).unwrap());
    let phys = Physics::Advection1D { a: 1.0 };
    let cfg = SchemeConfig::linear(3).unwrap();
    let bcs = Boundaries::uniform(Bc::Periodic);
    let mut s = uniform_state(mesh, 2, &[1.0]);
    assert_eq!(s.parity(), Parity::Staggered);
    let dt1 = step(&mut s, &bcs, &phys, &cfg);
    assert_eq!(s.parity(), Parity::Original);
    assert_eq!(s.unique_cells().count(), 10);
    let dt2 = step(&mut s, &bcs, &phys, &cfg);
    assert_eq!(s.parity(), Parity::Staggered);
    assert!((s.time() - dt1 - dt2).abs() < 1e-15);

    let open = Mesh::new_1d(Axis::new(0.0, 1.0, 10, false).unwrap());
    let mut s = uniform_state(open, 2, &[1.0]);
    step(&mut s, &Boundaries::uniform(Bc::NonReflective), &phys, &cfg);
    assert_eq!(s.unique_cells().count(), 11);
}

#[test]
fn invalid_steps_are_rejected() {
    let mesh = Mesh::new_1d(Axis::new(0.0, 1.0, 8, true).unwrap());
    let phys = Physics::Advection1D { a: 1.0 };
    let mut s = uniform_state(mesh, 2, &[1.0]);
    fill_ghosts(&mut s, &Boundaries::uniform(Bc::Periodic), &phys).unwrap();
    assert!(advance_half_step(&mut s, &phys, &SchemeConfig::new(3).unwrap(), 0.0).is_err());
    assert!(advance_half_step(&mut s, &phys, &SchemeConfig::new(2).unwrap(), 0.01).is_err());
    assert!(advance_half_step(&mut s, &Physics::Burgers1D, &SchemeConfig::new(3).unwrap(), f64::NAN).is_err());
    assert!(SchemeConfig::new(5).is_err());
    assert!(SchemeConfig::linear(1).is_err());
}
