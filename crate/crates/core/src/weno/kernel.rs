//! Fifth-order WENO combination shared by the node derivative and the
//! half-node reconstruction.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Regularization of the nonlinear weights.
pub const WENO_EPS: f64 = 1e-6;

/// Ghost cells on each side of a padded periodic buffer.
pub(crate) const GHOST: usize = 3;

/// Jiang–Shu combination of five stencil values, biased towards `v1`.
///
/// Used for the left-biased derivative from five one-sided differences and for
/// the value at `i+1/2` from the cell averages `i-2..=i+2`.
#[inline(always)]
pub fn weno5<T: Real>(v1: T, v2: T, v3: T, v4: T, v5: T) -> T {
    let c13_12: T = lit(13.0 / 12.0);
    let quarter: T = lit(0.25);
    let two: T = lit(2.0);
    let three: T = lit(3.0);
    let four: T = lit(4.0);
    let eps: T = lit(WENO_EPS);

    let s0 = c13_12 * (v1 - two * v2 + v3).powi(2) + quarter * (v1 - four * v2 + three * v3).powi(2);
    let s1 = c13_12 * (v2 - two * v3 + v4).powi(2) + quarter * (v2 - v4).powi(2);
    let s2 = c13_12 * (v3 - two * v4 + v5).powi(2) + quarter * (three * v3 - four * v4 + v5).powi(2);

    let a0 = lit::<T>(0.1) / (eps + s0).powi(2);
    let a1 = lit::<T>(0.6) / (eps + s1).powi(2);
    let a2 = lit::<T>(0.3) / (eps + s2).powi(2);
    let sum = a0 + a1 + a2;

    let sixth: T = lit(1.0 / 6.0);
    let p0 = (two * v1 - lit::<T>(7.0) * v2 + lit::<T>(11.0) * v3) * sixth;
    let p1 = (-v2 + lit::<T>(5.0) * v3 + two * v4) * sixth;
    let p2 = (two * v3 + lit::<T>(5.0) * v4 - v5) * sixth;
    (a0 * p0 + a1 * p1 + a2 * p2) / sum
}

fn check_len(len: usize) -> Result<()> {
    if len < 6 {
        return Err(Error::TooShort { len, min: 6 });
    }
    Ok(())
}

/// Copies `v` into `pad` with `GHOST` periodic ghost cells on each side.
#[inline]
pub(crate) fn pad_periodic<T: Real>(v: &[T], pad: &mut Vec<T>) {
    let n = v.len();
    pad.clear();
    pad.extend_from_slice(&v[n - GHOST..]);
    pad.extend_from_slice(v);
    pad.extend_from_slice(&v[..GHOST]);
}

/// Node derivative from a padded buffer: mean of the left- and right-biased
/// Hamilton–Jacobi WENO5 approximations. `diff` is scratch space.
#[inline]
pub(crate) fn derivative_padded<T: Real>(pad: &[T], inv_dx: T, diff: &mut Vec<T>, out: &mut [T]) {
    // diff[k] = (v_{k-3+1} - v_{k-3}) / dx, i.e. forward difference at node k - GHOST
    diff.clear();
    diff.extend(pad.windows(2).map(|w| (w[1] - w[0]) * inv_dx));
    let half: T = lit(0.5);
    for (i, o) in out.iter_mut().enumerate() {
        // forward difference at node j sits at diff[j + GHOST]
        let d = &diff[i..i + 6];
        let left = weno5(d[0], d[1], d[2], d[3], d[4]);
        let right = weno5(d[5], d[4], d[3], d[2], d[1]);
        *o = half * (left + right);
    }
}

/// Half-node values `h_{i+1/2}` for `i = -1..n-1` from a padded buffer of cell
/// averages; `out.len() == n + 1` and `out[k]` is the value at `x_{k-1/2}`.
#[inline]
pub(crate) fn reconstruct_padded<T: Real>(pad: &[T], out: &mut [T]) {
    let half: T = lit(0.5);
    for (k, o) in out.iter_mut().enumerate() {
        // interface between cells i = k-1 and i+1 = k, centered at pad index k-1+GHOST
        let c = k + GHOST - 1;
        let up = weno5(pad[c - 2], pad[c - 1], pad[c], pad[c + 1], pad[c + 2]);
        let down = weno5(pad[c + 3], pad[c + 2], pad[c + 1], pad[c], pad[c - 1]);
        *o = half * (up + down);
    }
}

/// Per-node WENO5 derivative with periodic wrap.
pub fn weno5_node_derivative<T: Real>(v: &[T], dx: T) -> Result<Vec<T>> {
    check_len(v.len())?;
    let mut pad = Vec::with_capacity(v.len() + 2 * GHOST);
    let mut diff = Vec::with_capacity(v.len() + 2 * GHOST);
    pad_periodic(v, &mut pad);
    let mut out = vec![T::zero(); v.len()];
    derivative_padded(&pad, T::one() / dx, &mut diff, &mut out);
    Ok(out)
}

/// Values at the right interfaces `x_{i+1/2}` from periodic cell averages.
pub fn weno5_halfnode_reconstruct<T: Real>(cellavg: &[T]) -> Result<Vec<T>> {
    check_len(cellavg.len())?;
    let n = cellavg.len();
    let mut pad = Vec::with_capacity(n + 2 * GHOST);
    pad_periodic(cellavg, &mut pad);
    let mut all = vec![T::zero(); n + 1];
    reconstruct_padded(&pad, &mut all);
    Ok(all[1..].to_vec())
}
