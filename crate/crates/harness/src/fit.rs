use ddpe_core::classification::InterfaceLaw;

use crate::error::{HarnessError, Result};

pub const MIN_FIT_POINTS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub prefactor: f64,
    pub exponent: f64,
    /// Root-mean-square residual of the line in `(ln t, ln(sign eta))`.
    pub rms: f64,
    pub window: (f64, f64),
    pub points: usize,
    pub sign: i8,
    pub predicted: Option<InterfaceLaw<f64>>,
}

impl FitReport {
    /// `sign * prefactor * t^exponent`.
    pub fn eval(&self, t: f64) -> f64 {
        f64::from(self.sign) * self.prefactor * t.powf(self.exponent)
    }
}

/// Least-squares line through `(ln t, ln(sign eta))` for the samples with
/// `t` in `window` and `sign eta > 0`.
pub fn fit_powerlaw(track: &[(f64, f64)], window: (f64, f64), sign: i8) -> Result<FitReport> {
    if sign == 0 {
        return Err(HarnessError::Invalid("cannot fit a stationary interface".into()));
    }
    let s = f64::from(sign);
    let pts: Vec<(f64, f64)> = track
        .iter()
        .filter(|(t, eta)| *t >= window.0 && *t <= window.1 && *t > 0.0 && s * eta > 0.0)
        .map(|&(t, eta)| (t.ln(), (s * eta).ln()))
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(HarnessError::InsufficientPoints {
            need: MIN_FIT_POINTS,
            found: pts.len(),
        });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if !(sxx > 0.0) {
        return Err(HarnessError::Invalid("all fit points share one time".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms = (pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum::<f64>() / n).sqrt();
    Ok(FitReport {
        prefactor: intercept.exp(),
        exponent: slope,
        rms,
        window,
        points: pts.len(),
        sign,
        predicted: None,
    })
}

/// Drops samples where no interface was found.
pub fn located(track: &[(f64, Option<f64>)]) -> Vec<(f64, f64)> {
    track.iter().filter_map(|&(t, eta)| eta.map(|e| (t, e))).collect()
}
