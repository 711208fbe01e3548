use super::grid::Field;
use super::kernel::{derivative_padded, pad_periodic, reconstruct_padded, GHOST};
use crate::classification::ProblemParams;
use crate::error::Result;
use crate::scalar::{pow_nonneg, signed_pow, Real};

/// `phi(g) = |g|^(p-1) g`, with `phi(0) = 0`.
#[inline]
pub fn flux_phi<T: Real>(g: T, p: T) -> T {
    signed_pow(g, p)
}

/// Scratch buffers for repeated evaluation of the spatial operator.
#[derive(Debug, Clone)]
pub struct Workspace<T> {
    pad: Vec<T>,
    diff: Vec<T>,
    g: Vec<T>,
    h: Vec<T>,
    half: Vec<T>,
}

impl<T: Real> Workspace<T> {
    pub fn new(n: usize) -> Self {
        Self {
            pad: Vec::with_capacity(n + 2 * GHOST),
            diff: Vec::with_capacity(n + 2 * GHOST),
            g: vec![T::zero(); n],
            h: vec![T::zero(); n],
            half: vec![T::zero(); n + 1],
        }
    }

    /// Writes `(h_{i+1/2} - h_{i-1/2})/dx` into `out` and returns the largest
    /// effective diffusivity `p |(u^m)_x|^(p-1) m u^(m-1)`. When `p < 1` the
    /// gradient in that estimate is the largest of the node and its two
    /// neighbours.
    pub fn diffusion_into(&mut self, u: &[T], dx: T, m: T, p: T, out: &mut [T]) -> T {
        let n = u.len();
        debug_assert!(n >= 6 && out.len() == n);
        if self.g.len() != n {
            *self = Self::new(n);
        }
        // v = u^m, padded
        self.pad.clear();
        self.pad.extend(u[n - GHOST..].iter().chain(u).chain(&u[..GHOST]).map(|&v| pow_nonneg(v, m)));
        derivative_padded(&self.pad, T::one() / dx, &mut self.diff, &mut self.g);

        let mut d_max = T::zero();
        let pm1 = p - T::one();
        // for p < 1 the slope p|g|^(p-1) is unbounded at g = 0; the largest
        // neighbouring gradient keeps the estimate finite at extrema
        let widen = p < T::one();
        for (i, &ui) in u.iter().enumerate() {
            let g = self.g[i];
            self.h[i] = flux_phi(g, p);
            let ga = if widen {
                g.abs().max(self.g[(i + n - 1) % n].abs()).max(self.g[(i + 1) % n].abs())
            } else {
                g.abs()
            };
            if ui > T::zero() && ga != T::zero() {
                let d = p * pow_nonneg(ga, pm1) * m * pow_nonneg(ui, m - T::one());
                if d > d_max {
                    d_max = d;
                }
            }
        }
        pad_periodic(&self.h, &mut self.pad);
        reconstruct_padded(&self.pad, &mut self.half);
        let inv_dx = T::one() / dx;
        for (i, o) in out.iter_mut().enumerate() {
            *o = (self.half[i + 1] - self.half[i]) * inv_dx;
        }
        d_max
    }

    /// Full right-hand side `diffusion - b u^beta`; returns the diffusivity bound.
    pub fn rhs_into(&mut self, u: &[T], dx: T, params: &ProblemParams<T>, out: &mut [T]) -> T {
        let d_max = self.diffusion_into(u, dx, params.m, params.p, out);
        if params.b != T::zero() {
            for (o, &v) in out.iter_mut().zip(u) {
                *o = *o - params.b * pow_nonneg(v, params.beta);
            }
        }
        d_max
    }

    /// Node derivative of `u^m` from the last `diffusion_into` call.
    pub fn last_gradient(&self) -> &[T] {
        &self.g
    }
}

pub fn degenerate_diffusion<T: Real>(field: &Field<T>, m: T, p: T) -> Result<Vec<T>> {
    let n = field.u.len();
    if n < 6 {
        return Err(crate::error::Error::TooShort { len: n, min: 6 });
    }
    let mut ws = Workspace::new(n);
    let mut out = vec![T::zero(); n];
    ws.diffusion_into(&field.u, field.grid.dx, m, p, &mut out);
    Ok(out)
}

pub fn rhs<T: Real>(field: &Field<T>, params: &ProblemParams<T>) -> Result<Vec<T>> {
    let mut out = degenerate_diffusion(field, params.m, params.p)?;
    if params.b != T::zero() {
        for (o, &v) in out.iter_mut().zip(&field.u) {
            *o = *o - params.b * pow_nonneg(v, params.beta);
        }
    }
    Ok(out)
}

/// Largest effective diffusivity of `field`, as used by the adaptive step.
pub fn max_diffusivity<T: Real>(field: &Field<T>, params: &ProblemParams<T>) -> T {
    let n = field.u.len();
    let mut ws = Workspace::new(n);
    let mut out = vec![T::zero(); n];
    ws.diffusion_into(&field.u, field.grid.dx, params.m, params.p, &mut out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::ips_eval;
    use crate::weno::Grid;

    #[test]
    fn flux_is_odd() {
        assert_eq!(flux_phi(2.0, 3.0), 8.0);
        assert_eq!(flux_phi(-2.0, 3.0), -8.0);
        assert_eq!(flux_phi(0.0, 0.5), 0.0);
    }

    #[test]
    fn flat_data() {
        let g = Grid::<f64>::new(0.0, 1.0, 32).unwrap();
        let f = Field::from_fn(g, 0.0, |_| 1.0).unwrap();
        let pr = ProblemParams::new(2.0, 2.0, 0.7, 0.5, 1.0, 1.0).unwrap();
        assert!(degenerate_diffusion(&f, 2.0, 2.0).unwrap().iter().all(|v| *v == 0.0));
        assert!(rhs(&f, &pr).unwrap().iter().all(|v| (*v + 0.7).abs() < 1e-15));
    }

    #[test]
    fn ips_time_derivative() {
        let (m, p, t) = (6.0, 2.0, 0.05);
        let g = Grid::<f64>::new(-5.0, 5.0, 1024).unwrap();
        let f = Field::from_fn(g, t, |x| ips_eval(m, p, 1.0, x, t).unwrap()).unwrap();
        let l = degenerate_diffusion(&f, m, p).unwrap();
        let eta = crate::analytic::ips_interface(m, p, 1.0, t).unwrap();
        let ht = 1e-5;
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for (i, x) in g.nodes().enumerate() {
            // central difference in time of the closed form
            let ut = (ips_eval(m, p, 1.0, x, t + ht).unwrap() - ips_eval(m, p, 1.0, x, t - ht).unwrap()) / (2.0 * ht);
            scale = scale.max(ut.abs());
            if x.abs() < eta - 0.3 && x.abs() > 0.1 {
                worst = worst.max((l[i] - ut).abs());
            }
        }
        assert!(worst / scale <= 0.02, "{}", worst / scale);
    }

    #[test]
    fn even_data_gives_even_output() {
        let g = Grid::<f64>::new(-1.0, 1.0, 64).unwrap();
        let f = Field::from_fn(g, 0.0, |x| (1.0 - 4.0 * x * x).max(0.0)).unwrap();
        let l = degenerate_diffusion(&f, 2.0, 2.0).unwrap();
        // node i mirrors node n - i about x = 0
        for i in 1..64 {
            assert!((l[i] - l[64 - i]).abs() < 1e-10 * (1.0 + l[i].abs()), "{i}");
        }
    }
}
