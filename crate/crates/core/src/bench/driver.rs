//! Time loop, conservation monitoring and convergence studies.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::mesh::{fill_ghosts, Mesh, MeshState};
use crate::problems::{init_problem, ProblemSpec};
use crate::scheme::{advance_half_step, stable_dt, HalfStepReport, SchemeConfig};

use super::config::{OutputFormat, RunConfig};
use super::norms::{error_norms, observed_order, pairwise_sum, ErrorReport};
use super::output::{write_csv, write_vtk};

/// Accumulated discrete flux-balance residuals of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationMonitor {
    ncomp: usize,
    /// Per component: `sum |average| * volume` of the initial data.
    pub initial_scale: [f64; 4],
    /// Per component: signed sum of the half-step residuals.
    pub residual: [f64; 4],
    /// Per component: largest `|residual| / scale` of a single half-step.
    pub worst_step: [f64; 4],
}

impl ConservationMonitor {
    pub fn new(state: &MeshState) -> Self {
        let nd = state.ndof();
        let vol = state.mesh().cell_volume();
        let mut initial_scale = [0.0; 4];
        let layout = state.layout();
        for (c, s) in initial_scale.iter_mut().enumerate().take(state.ncomp()) {
            let v: Vec<f64> = state
                .unique_cells()
                .map(|(i, j)| {
                    crate::scheme::cell_average(layout, &state.field().cell(i, j)[c * nd..(c + 1) * nd]).abs() * vol
                })
                .collect();
            *s = pairwise_sum(&v);
        }
        ConservationMonitor {
            ncomp: state.ncomp(),
            initial_scale,
            residual: [0.0; 4],
            worst_step: [0.0; 4],
        }
    }

    pub fn record(&mut self, r: &HalfStepReport) {
        for c in 0..self.ncomp {
            self.residual[c] += r.residual[c];
            let s = r.scale[c].max(self.initial_scale[c]);
            if s > 0.0 {
                self.worst_step[c] = self.worst_step[c].max(r.residual[c].abs() / s);
            }
        }
    }

    /// Per component `|accumulated residual| / initial scale`.
    pub fn drift(&self) -> Vec<f64> {
        (0..self.ncomp)
            .map(|c| {
                let s = self.initial_scale[c];
                if s > 0.0 {
                    self.residual[c].abs() / s
                } else {
                    self.residual[c].abs()
                }
            })
            .collect()
    }

    pub fn max_drift(&self) -> f64 {
        self.drift().into_iter().fold(0.0, f64::max)
    }
}

/// Final state and diagnostics of a run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub state: MeshState,
    pub half_steps: usize,
    pub conservation: ConservationMonitor,
    pub error: Option<ErrorReport>,
}

/// Advances the initial data of `spec` on `mesh` to `t_end`.
pub fn run(spec: &ProblemSpec, mesh: Mesh, scheme: &SchemeConfig, t_end: f64) -> Result<RunOutcome> {
    run_with(spec, mesh, scheme, t_end, |_, _| Ok(()))
}

/// [`run`] with a hook called after every half-step.
pub fn run_with<F>(spec: &ProblemSpec, mesh: Mesh, scheme: &SchemeConfig, t_end: f64, mut hook: F) -> Result<RunOutcome>
where
    F: FnMut(&MeshState, &HalfStepReport) -> Result<()>,
{
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::config(format!("end time must be finite and non-negative, got {t_end}")));
    }
    let mut state = init_problem(spec, mesh, scheme.degree())?;
    let mut monitor = ConservationMonitor::new(&state);
    let mut half_steps = 0;
    let eps = 1e-12 * t_end.max(1.0);
    while state.time() < t_end - eps {
        fill_ghosts(&mut state, &spec.boundaries, &spec.physics)?;
        let mut dt = stable_dt(&state, &spec.physics, scheme.cfl)?;
        let remaining = t_end - state.time();
        if dt >= remaining - eps {
            dt = remaining;
        }
        let report = advance_half_step(&mut state, &spec.physics, scheme, dt)?;
        monitor.record(&report);
        half_steps += 1;
        hook(&state, &report)?;
    }
    fill_ghosts(&mut state, &spec.boundaries, &spec.physics)?;
    let error = if spec.has_exact() {
        Some(error_norms(&state, spec)?)
    } else {
        None
    };
    Ok(RunOutcome {
        state,
        half_steps,
        conservation: monitor,
        error,
    })
}

/// Runs a configured case and writes its output file, if any.
pub fn run_case(cfg: &RunConfig) -> Result<RunOutcome> {
    let spec = ProblemSpec::new(cfg.case);
    let nx = cfg.nx.unwrap_or(spec.cells.0);
    let ny = spec.y.map(|_| cfg.ny.unwrap_or(spec.cells.1));
    let mesh = spec.mesh(nx, ny)?;
    let scheme = cfg.scheme()?;
    let t_end = cfg.t_end.unwrap_or(spec.t_end);
    let out = run(&spec, mesh, &scheme, t_end)?;
    if let Some(path) = &cfg.out {
        match cfg.format {
            OutputFormat::Csv => write_csv(&out.state, &spec.physics, path)?,
            OutputFormat::Vtk => {
                let title = format!("{} order {} t = {}", spec.id, cfg.order, out.state.time());
                write_vtk(&out.state, &spec.physics, path, &title)?
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    /// Inverse mesh size `1/h`.
    pub inv_h: usize,
    pub cells: usize,
    pub l1: f64,
    pub l1_order: Option<f64>,
    pub linf: f64,
    pub linf_order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub order: usize,
    pub linear: bool,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn to_csv(&self) -> String {
        let fmt = |o: Option<f64>| o.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"));
        let mut s = String::from("scheme,mesh,cells,l1,l1_order,linf,linf_order\n");
        let name = format!("{}-{}", if self.linear { "LCCS" } else { "WCCS" }, self.order);
        for r in &self.rows {
            writeln!(
                s,
                "{name},1/{},{},{:.3e},{},{:.3e},{}",
                r.inv_h,
                r.cells,
                r.l1,
                fmt(r.l1_order),
                r.linf,
                fmt(r.linf_order)
            )
            .expect("string write");
        }
        s
    }
}

/// Errors on meshes of size `1/m` for each `m` in `inv_h` (cells per unit length).
pub fn run_convergence(
    spec: &ProblemSpec,
    scheme: &SchemeConfig,
    inv_h: &[usize],
    t_end: f64,
) -> Result<ConvergenceTable> {
    if inv_h.len() < 2 {
        return Err(Error::config("a convergence study needs at least two meshes"));
    }
    if !spec.has_exact() {
        return Err(Error::Unsupported(format!("case {} has no exact solution", spec.id)));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &m in inv_h {
        let nx = cells_for(spec.x, m)?;
        let ny = spec.y.map(|y| cells_for(y, m)).transpose()?;
        let out = run(spec, spec.mesh(nx, ny)?, scheme, t_end)?;
        let e = out.error.expect("case has an exact solution");
        let (l1_order, linf_order) = match rows.last() {
            Some(p) => {
                let ratio = m as f64 / p.inv_h as f64;
                (observed_order(p.l1, e.l1, ratio), observed_order(p.linf, e.linf, ratio))
            }
            None => (None, None),
        };
        rows.push(ConvergenceRow {
            inv_h: m,
            cells: nx,
            l1: e.l1,
            l1_order,
            linf: e.linf,
            linf_order,
        });
    }
    Ok(ConvergenceTable {
        order: scheme.order,
        linear: scheme.limiter.is_none(),
        rows,
    })
}

fn cells_for((lo, hi): (f64, f64), inv_h: usize) -> Result<usize> {
    let n = (hi - lo) * inv_h as f64;
    if (n - n.round()).abs() > 1e-9 || n.round() < 2.0 {
        return Err(Error::config(format!("mesh size 1/{inv_h} does not divide the domain")));
    }
    Ok(n.round() as usize)
}
