use super::{limit_scalar, LimiterParams, MAX_DOFS};
use crate::error::Result;
use crate::jet::JetLayout;
use crate::physics::{EigenSystem, GasModel};

/// Limits a cell holding `dofs.len() / ndof` components, stored component-major.
///
/// With an eigensystem the DOFs, averages and vertex values are projected by
/// `L`, limited field by field and mapped back by `R`; without one each
/// component is limited on its own.
pub fn characteristic_limit(
    layout: &'static JetLayout,
    dofs: &mut [f64],
    avg: &[f64],
    vertices: &[[f64; 4]],
    eig: Option<&EigenSystem>,
    params: &LimiterParams,
) {
    let nd = layout.spatial_len();
    let ncomp = avg.len();
    let nv = layout.dims().count() * 2;
    let Some(e) = eig else {
        for c in 0..ncomp {
            let out = limit_scalar(layout, &dofs[c * nd..(c + 1) * nd], avg[c], &vertices[c][..nv], params);
            dofs[c * nd..(c + 1) * nd].copy_from_slice(&out[..nd]);
        }
        return;
    };
    let mut col = [0.0; 4];
    let mut w_dofs = [[0.0; MAX_DOFS]; 4];
    for d in 0..nd {
        for c in 0..ncomp {
            col[c] = dofs[c * nd + d];
        }
        let w = e.to_characteristic(&col);
        for k in 0..ncomp {
            w_dofs[k][d] = w[k];
        }
    }
    let w_avg = e.to_characteristic(avg);
    let mut w_vert = [[0.0; 4]; 4];
    for v in 0..nv {
        for c in 0..ncomp {
            col[c] = vertices[c][v];
        }
        let w = e.to_characteristic(&col);
        for k in 0..ncomp {
            w_vert[k][v] = w[k];
        }
    }
    let mut limited = [[0.0; MAX_DOFS]; 4];
    for k in 0..ncomp {
        limited[k] = limit_scalar(layout, &w_dofs[k][..nd], w_avg[k], &w_vert[k][..nv], params);
    }
    for d in 0..nd {
        for k in 0..ncomp {
            col[k] = limited[k][d];
        }
        let u = e.to_conservative(&col);
        for c in 0..ncomp {
            dofs[c * nd + d] = u[c];
        }
    }
}

pub fn characteristic_limit_1d(
    layout: &'static JetLayout,
    dofs: &mut [f64],
    avg: &[f64],
    vertices: &[[f64; 4]],
    gas: &GasModel,
    params: &LimiterParams,
) -> Result<()> {
    let e = gas.eigensystem_1d(avg)?;
    characteristic_limit(layout, dofs, avg, vertices, Some(&e), params);
    Ok(())
}

/// Direction of `grad`, or 0 when the gradient is negligible relative to `phi`.
pub fn rotation_angle(grad: (f64, f64), phi: f64) -> f64 {
    let norm = grad.0.hypot(grad.1);
    if !(norm >= 1e-12 * phi.abs()) || norm == 0.0 {
        0.0
    } else {
        grad.1.atan2(grad.0)
    }
}

/// Limits a 2D Euler cell in the characteristic fields of the Jacobian along
/// the gradient of `phi`.
#[allow(clippy::too_many_arguments)]
pub fn rotated_characteristic_limit_2d(
    layout: &'static JetLayout,
    dofs: &mut [f64],
    avg: &[f64],
    vertices: &[[f64; 4]],
    gas: &GasModel,
    grad: (f64, f64),
    phi: f64,
    params: &LimiterParams,
) -> Result<f64> {
    let theta = rotation_angle(grad, phi);
    let e = gas.eigensystem_rotated_2d(avg, theta)?;
    characteristic_limit(layout, dofs, avg, vertices, Some(&e), params);
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(rotation_angle((1.0, 0.0), 1.0), 0.0);
        assert!((rotation_angle((1.0, 1.0), 1.0) - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert_eq!(rotation_angle((0.0, 0.0), 1.0), 0.0);
        assert_eq!(rotation_angle((1e-14, 0.0), 10.0), 0.0);
    }
}
