use super::grid::Field;
use crate::scalar::Real;

/// Right interface: scanning rightward (with periodic wrap) from the first
/// maximum, the position of the first node with `u < threshold`.
///
/// `None` when no node reaches the threshold.
pub fn locate_interface<T: Real>(field: &Field<T>, threshold: T) -> Option<T> {
    let u = &field.u;
    let n = u.len();
    let mut peak = 0;
    for (i, &v) in u.iter().enumerate() {
        if v > u[peak] {
            peak = i;
        }
    }
    if !(u[peak] >= threshold) {
        return None;
    }
    (1..n).map(|k| (peak + k) % n).find(|&i| u[i] < threshold).map(|i| field.grid.x(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{ips_eval, ips_interface};
    use crate::weno::Grid;

    #[test]
    fn ips_front_within_one_cell() {
        let g = Grid::<f64>::new(-5.0, 5.0, 1024).unwrap();
        let f = Field::from_fn(g, 1.0, |x| ips_eval(6.0, 2.0, 1.0, x, 1.0).unwrap()).unwrap();
        let eta = locate_interface(&f, 1e-10).unwrap();
        let want = ips_interface(6.0, 2.0, 1.0, 1.0).unwrap();
        assert!((eta - want).abs() <= g.dx, "{eta} vs {want}");
    }

    #[test]
    fn empty_and_step_support() {
        let g = Grid::<f64>::new(-2.0, 2.0, 64).unwrap();
        assert_eq!(locate_interface(&Field::zeros(g, 0.0), 1e-10), None);
        let f = Field::from_fn(g, 0.0, |x| if (-1.0..0.0).contains(&x) { 1.0 } else { 0.0 }).unwrap();
        let eta = locate_interface(&f, 1e-10).unwrap();
        assert!((0.0..g.dx).contains(&eta));
    }
}
