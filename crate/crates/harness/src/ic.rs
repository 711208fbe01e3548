use ddpe_core::analytic::{ips_eval, AnalyticSolution};
use ddpe_core::{Field64, Grid64, Params};

use crate::error::{HarnessError, Result};
use crate::scenario::IcSpec;

/// `C(-x)_+^alpha` on `[center + width, 0]`, multiplied by
/// `(1 + tanh((x - center)/(width/4)))/2` further left.
pub fn power_front(x: f64, c: f64, alpha: f64, center: f64, width: f64) -> f64 {
    if x >= 0.0 {
        return 0.0;
    }
    let u = c * (-x).powf(alpha);
    if x >= center + width {
        u
    } else {
        u * 0.5 * (1.0 + ((x - center) / (width / 4.0)).tanh())
    }
}

/// Samples the initial datum on `grid` at the spec's start time.
pub fn make_initial_condition(spec: &IcSpec, params: &Params, grid: Grid64) -> Result<Field64> {
    let field = match *spec {
        IcSpec::PowerFront {
            c,
            alpha,
            taper_center,
            taper_width,
        } => {
            if taper_center - taper_width < grid.x_left || taper_center + taper_width > 0.0 {
                return Err(HarnessError::Invalid(format!(
                    "taper window [{}, {}] is outside [{}, 0]",
                    taper_center - taper_width,
                    taper_center + taper_width,
                    grid.x_left
                )));
            }
            Field64::from_fn(grid, 0.0, |x| power_front(x, c, alpha, taper_center, taper_width))?
        }
        IcSpec::Ips { gamma, t0 } => {
            AnalyticSolution::ips(*params, gamma)?;
            let u = grid
                .nodes()
                .map(|x| ips_eval(params.m, params.p, gamma, x, t0))
                .collect::<ddpe_core::Result<Vec<_>>>()?;
            Field64::new(grid, t0, u)?
        }
        IcSpec::Explicit { kind, t0 } => {
            let sol = AnalyticSolution::new(kind, *params)?;
            let u = grid.nodes().map(|x| sol.eval(x, t0)).collect::<ddpe_core::Result<Vec<_>>>()?;
            Field64::new(grid, t0, u)?
        }
    };
    Ok(field)
}
