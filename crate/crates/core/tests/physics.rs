//! Euler eigensystems and shock relations.

mod common;

use common::{eigen_residuals, rankine_hugoniot_residual};
use proptest::prelude::*;
use wcc_core::physics::{GasModel, Physics, Primitive};

fn gas_state() -> impl Strategy<Value = Primitive> {
    (0.1f64..5.0, -3.0f64..3.0, -3.0f64..3.0, 0.1f64..5.0).prop_map(|(r, u, v, p)| Primitive::new(r, u, v, p))
}

proptest! {
    #[test]
    fn eigensystem_1d_diagonalizes_jacobian(w in gas_state()) {
        let gas = GasModel::default();
        let u = gas.conservative_1d(w);
        let es = gas.eigensystem_1d(&u).unwrap();
        let (lr, rla) = eigen_residuals(&es, &gas.jacobian(&u, 1.0, 0.0).unwrap());
        prop_assert!(lr < 1e-12 && rla < 1e-12, "{lr} {rla}");
    }

    #[test]
    fn rotated_eigensystem_2d_diagonalizes_jacobian(w in gas_state(), theta in -3.2f64..3.2) {
        let gas = GasModel::new(1.4).unwrap();
        let u = gas.conservative_2d(w);
        let es = gas.eigensystem_rotated_2d(&u, theta).unwrap();
        let (s, c) = theta.sin_cos();
        let (lr, rla) = eigen_residuals(&es, &gas.jacobian(&u, c, s).unwrap());
        prop_assert!(lr < 1e-12 && rla < 1e-12, "{lr} {rla}");
    }

    #[test]
    fn characteristic_projection_round_trips(w in gas_state(), theta in -3.2f64..3.2, v in prop::array::uniform4(-1.0f64..1.0)) {
        let phys = Physics::Euler2D(GasModel::default());
        let u = GasModel::default().conservative_2d(w);
        let es = phys.eigensystem(&u, theta).unwrap().unwrap();
        let back = es.to_conservative(&es.to_characteristic(&v));
        for i in 0..4 {
            prop_assert!((back[i] - v[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn primitive_round_trip(w in gas_state()) {
        let gas = GasModel::default();
        let q = gas.primitive(&gas.conservative_2d(w)).unwrap();
        prop_assert!((q.rho - w.rho).abs() < 1e-13 * w.rho);
        prop_assert!((q.u - w.u).abs() < 1e-12);
        prop_assert!((q.v - w.v).abs() < 1e-12);
        prop_assert!((q.p - w.p).abs() < 1e-12 * (1.0 + w.p));
    }

    #[test]
    fn normal_shock_satisfies_rankine_hugoniot(ms in 1.01f64..10.0, rho in 0.1f64..5.0, p in 0.1f64..5.0, gamma in 1.1f64..1.8) {
        let gas = GasModel::new(gamma).unwrap();
        let r = rankine_hugoniot_residual(&gas, ms, Primitive::new(rho, 0.0, 0.0, p));
        prop_assert!(r < 1e-12, "{r}");
    }
}

#[test]
fn inadmissible_states_are_rejected() {
    let gas = GasModel::default();
    assert!(gas.primitive(&[-1.0, 0.0, 1.0]).is_err());
    assert!(gas.primitive(&[1.0, 3.0, 1.0]).is_err());
    assert!(gas.normal_shock_state(0.9, Primitive::new(1.0, 0.0, 0.0, 1.0)).is_err());
    assert!(GasModel::new(1.0).is_err());
    let phys = Physics::Euler1D(gas);
    assert!(phys.check_admissible(&[1.0, f64::NAN, 1.0]).is_err());
    let e = phys.check_admissible(&[1.0, 0.0, -1.0]).unwrap_err();
    assert!(e.is_physics());
}
