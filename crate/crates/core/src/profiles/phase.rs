use crate::classification::ProblemParams;
use crate::error::{Error, Result};
use crate::scalar::{lit, pow_nonneg, Real};

/// Abscissa of the seed point `(X, Y) = (eps, k eps)`.
pub const PHASE_SEED_X: f64 = 1e-8;

/// Samples of `Y(X)`, where `X = phi` and `Y = ((phi^m)')^p` along a
/// travelling wave of speed `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePlaneTable<T> {
    pub samples: Vec<(T, T)>,
    pub k: T,
    pub params: ProblemParams<T>,
}

/// Integrates `dY/dX = k + b m X^(m+beta-1) Y^(-1/p)` from the seed up to
/// `x_max` by RK4 in `s = ln X`; `step` is the increment in `s`.
pub fn phase_plane<T: Real>(k: T, params: &ProblemParams<T>, x_max: T, step: T) -> Result<PhasePlaneTable<T>> {
    let one = T::one();
    let (m, p, b, beta) = (params.m, params.p, params.b, params.beta);
    if !(beta < one) || !(p * (m + beta) > one + p) {
        return Err(Error::Regime {
            what: "phase plane",
            reason: "need 0 < beta < 1 and p(m+beta) > 1+p".into(),
        });
    }
    if !(k > T::zero()) || !(step > T::zero()) {
        return Err(Error::InvalidParams("phase plane needs k > 0 and step > 0".into()));
    }
    let x0: T = lit(PHASE_SEED_X);
    if !(x_max > x0) {
        return Err(Error::InvalidParams(format!("x_max must exceed the seed {PHASE_SEED_X}")));
    }
    let e = m + beta - one;
    let inv_p = one / p;
    let rhs = |s: T, y: T| -> Option<T> {
        if !(y > T::zero()) {
            return None;
        }
        let x = s.exp();
        let d = x * (k + b * m * pow_nonneg(x, e) * y.powf(-inv_p));
        d.is_finite().then_some(d)
    };

    let s_end = x_max.ln();
    let mut s = x0.ln();
    let mut y = k * x0;
    let mut samples = vec![(x0, y)];
    let half: T = lit(0.5);
    let two: T = lit(2.0);
    while s < s_end {
        let h = step.min(s_end - s);
        let fail = || Error::Integration(format!("Y left the positive axis near X = {}", s.exp()));
        let k1 = rhs(s, y).ok_or_else(fail)?;
        let k2 = rhs(s + half * h, y + half * h * k1).ok_or_else(fail)?;
        let k3 = rhs(s + half * h, y + half * h * k2).ok_or_else(fail)?;
        let k4 = rhs(s + h, y + h * k3).ok_or_else(fail)?;
        let y_new = y + h / lit(6.0) * (k1 + two * k2 + two * k3 + k4);
        if !(y_new > y) {
            return Err(fail());
        }
        s = s + h;
        y = y_new;
        samples.push((s.exp(), y));
    }
    if let Some(last) = samples.last_mut() {
        last.0 = x_max;
    }
    Ok(PhasePlaneTable {
        samples,
        k,
        params: *params,
    })
}

/// `(X_j, y_j)` with `y(X) = m int_0^X s^(m-1) Y(s)^(-1/p) ds`.
///
/// The piece below the seed uses `Y = kX`; the rest is trapezoidal in `ln X`.
pub fn wave_abscissa<T: Real>(table: &PhasePlaneTable<T>) -> Vec<(T, T)> {
    let (m, p) = (table.params.m, table.params.p);
    let inv_p = T::one() / p;
    let e = m - inv_p;
    let integrand = |x: T, y: T| m * x.powf(m) * y.powf(-inv_p);
    let half: T = lit(0.5);
    let mut out = Vec::with_capacity(table.samples.len());
    let (x0, _) = table.samples[0];
    let mut acc = m * table.k.powf(-inv_p) * x0.powf(e) / e;
    out.push((x0, acc));
    for w in table.samples.windows(2) {
        let ((xa, ya), (xb, yb)) = (w[0], w[1]);
        acc = acc + half * (xb.ln() - xa.ln()) * (integrand(xa, ya) + integrand(xb, yb));
        out.push((xb, acc));
    }
    out
}

/// Wave profile `phi(y)` on `y_grid`, by monotone inversion of the tabulated
/// `y(phi)`.
pub fn wave_profile<T: Real>(table: &PhasePlaneTable<T>, y_grid: &[T]) -> Result<Vec<T>> {
    let ys = wave_abscissa(table);
    let (m, p) = (table.params.m, table.params.p);
    let inv_p = T::one() / p;
    let e = m - inv_p;
    let (_, y_first) = ys[0];
    let (_, y_last) = ys[ys.len() - 1];
    y_grid
        .iter()
        .map(|&y| {
            if !(y >= T::zero()) || y > y_last {
                return Err(Error::OutOfRange {
                    requested: y.to_f64().unwrap_or(f64::NAN),
                    available: y_last.to_f64().unwrap_or(f64::NAN),
                });
            }
            if y <= y_first {
                // invert the near-origin closed form
                return Ok(pow_nonneg(y * e * table.k.powf(inv_p) / m, T::one() / e));
            }
            let j = ys.partition_point(|&(_, v)| v < y).clamp(1, ys.len() - 1);
            let ((xa, ya), (xb, yb)) = (ys[j - 1], ys[j]);
            let w = (y - ya) / (yb - ya);
            Ok((xa.ln() + w * (xb.ln() - xa.ln())).exp())
        })
        .collect()
}
