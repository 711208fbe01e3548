use super::{Seed, Similarity};
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Three solver values `u(x_j, t)` near the front at one early time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedSample<T> {
    pub t: T,
    pub x: [T; 3],
    pub u: [T; 3],
}

impl<T: Real> SeedSample<T> {
    /// Samples at `0, dx, 2 dx`.
    pub fn at_origin(t: T, dx: T, u: [T; 3]) -> Self {
        let two: T = lit(2.0);
        Self {
            t,
            x: [T::zero(), dx, two * dx],
            u,
        }
    }
}

/// Estimates `(f(anchor), f'(anchor))` from early-time solver values.
///
/// Each time gives three points `(x_j t^-c, u_j t^-a)` of the profile; the
/// quadratic through them is evaluated at `anchor` and the per-time values
/// are averaged.
pub fn seed_from_pde<T: Real>(samples: &[SeedSample<T>], sim: &Similarity<T>, anchor: T) -> Result<Seed<T>> {
    if samples.is_empty() {
        return Err(Error::BadSeed("no samples".into()));
    }
    let mut f_sum = T::zero();
    let mut fp_sum = T::zero();
    for s in samples {
        let finite = s.t.is_finite() && s.x.iter().chain(&s.u).all(|v| v.is_finite());
        if !finite || !(s.t > T::zero()) {
            return Err(Error::BadSeed(format!("non-finite sample at t = {}", s.t)));
        }
        if !(s.x[0] < s.x[1] && s.x[1] < s.x[2]) || s.u[1] > s.u[0] || s.u[2] > s.u[1] {
            return Err(Error::BadSeed(format!("non-monotone samples at t = {}", s.t)));
        }
        let ta = s.t.powf(sim.a);
        let tc = s.t.powf(sim.c);
        let xi = s.x.map(|x| x / tc);
        let f = s.u.map(|u| u / ta);
        let (v, d) = quadratic_at(xi, f, anchor);
        f_sum = f_sum + v;
        fp_sum = fp_sum + d;
    }
    let n = T::from_usize(samples.len()).expect("sample count fits the scalar");
    let seed = Seed {
        at: anchor,
        f: f_sum / n,
        fp: fp_sum / n,
    };
    if !(seed.f > T::zero()) {
        return Err(Error::BadSeed(format!("profile estimate {} is not positive", seed.f)));
    }
    Ok(seed)
}

/// Value and slope at `z` of the quadratic through three points.
fn quadratic_at<T: Real>(x: [T; 3], y: [T; 3], z: T) -> (T, T) {
    let mut v = T::zero();
    let mut d = T::zero();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let den = (x[i] - x[j]) * (x[i] - x[k]);
        v = v + y[i] * (z - x[j]) * (z - x[k]) / den;
        d = d + y[i] * ((z - x[j]) + (z - x[k])) / den;
    }
    (v, d)
}
