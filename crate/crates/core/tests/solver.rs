use ddpe_core::classification::critical_constant;
use ddpe_core::weno::*;
use ddpe_core::Params;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn smooth_bump(x: f64, center: f64, width: f64) -> f64 {
    let s = (x - center) / width;
    if s.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - s * s).powi(3)
    }
}

#[test]
fn mass_is_conserved_without_absorption() {
    let g = Grid::new(0.0, 1.0, 128).unwrap();
    let u0 = Field::from_fn(g, 0.0, |x| 1.0 + 0.5 * (2.0 * std::f64::consts::PI * x).sin()).unwrap();
    for (m, p) in [(2.0, 2.0), (1.5, 3.0), (3.0, 0.8)] {
        let pr = Params::new(m, p, 0.0, 1.0, 1.0, 1.0).unwrap();
        let m0 = u0.mass();
        let out = evolve(u0.clone(), &pr, &StepControl::cfl(0.4), 0.02, &[], &mut ()).unwrap();
        let drift = ((out.field.mass() - m0) / m0).abs();
        assert!(drift <= 1e-8, "(m, p) = ({m}, {p}): {drift:e}");
    }
}

#[test]
fn single_step_mass_telescopes() {
    let g = Grid::new(-1.0, 1.0, 64).unwrap();
    let u0 = Field::from_fn(g, 0.0, |x| 0.3 + smooth_bump(x, 0.1, 0.6)).unwrap();
    let pr = Params::new(2.0, 3.0, 0.0, 1.0, 1.0, 1.0).unwrap();
    let next = rk3_step(&u0, 1e-5, &pr, true).unwrap();
    assert!(((next.mass() - u0.mass()) / u0.mass()).abs() <= 1e-12);
}

#[test]
fn translation_by_whole_cells_is_exact() {
    let g = Grid::new(-2.0, 2.0, 96).unwrap();
    let u0 = Field::from_fn(g, 0.0, |x| smooth_bump(x, -0.3, 0.8) + 0.5 * smooth_bump(x, 0.7, 0.4)).unwrap();
    let pr = Params::new(2.0, 2.0, 0.4, 0.6, 1.0, 1.0).unwrap();
    let a = evolve(u0.clone(), &pr, &StepControl::cfl(0.4), 0.05, &[], &mut ()).unwrap();
    for k in [1, 7, 50] {
        let b = evolve(u0.shifted(k), &pr, &StepControl::cfl(0.4), 0.05, &[], &mut ()).unwrap();
        assert_eq!(b.field.u, a.field.shifted(k).u, "shift {k}");
    }
}

#[test]
fn clipped_runs_stay_nonnegative() {
    let g = Grid::new(-2.0, 2.0, 128).unwrap();
    let u0 = Field::from_fn(g, 0.0, |x: f64| if x.abs() < 0.5 { 1.0 } else { 0.0 }).unwrap();
    let pr = Params::new(2.0, 2.0, 1.0, 0.5, 1.0, 1.0).unwrap();
    let mut snaps = Snapshots::default();
    evolve(u0, &pr, &StepControl::cfl(0.4), 0.05, &[0.01, 0.02, 0.05], &mut snaps).unwrap();
    assert_eq!(snaps.fields.len(), 3);
    assert!(snaps.fields.iter().all(|f| f.u.iter().all(|&v| v >= 0.0)));
}

#[test]
fn discrete_comparison_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let g = Grid::new(-2.0, 2.0, 128).unwrap();
    for _ in 0..20 {
        let m = rng.gen_range(1.2..3.0);
        let p = rng.gen_range(1.2..3.0);
        let b = rng.gen_range(0.0..1.0);
        let beta = rng.gen_range(0.3..1.5);
        let pr = Params::new(m, p, b, beta, 1.0, 1.0).unwrap();
        let (c, w) = (rng.gen_range(-0.5..0.5), rng.gen_range(0.4..1.0));
        let amp = rng.gen_range(0.3..1.0);
        let extra = rng.gen_range(0.0..0.5);
        let widen = rng.gen_range(0.0..0.6);
        // taller and wider bump on the same center, so u0 <= v0 everywhere
        let u0 = Field::from_fn(g, 0.0, |x| amp * smooth_bump(x, c, w)).unwrap();
        let v0 = Field::from_fn(g, 0.0, |x| (amp + extra) * smooth_bump(x, c, w * (1.0 + widen))).unwrap();
        assert!(u0.u.iter().zip(&v0.u).all(|(x, y)| x <= y));
        // one shared step keeps both runs on the same time levels
        let d = max_diffusivity(&u0, &pr).max(max_diffusivity(&v0, &pr)).max(1.0);
        let control = StepControl::fixed(0.1 * g.dx * g.dx / (4.0 * d));
        let times = [0.002, 0.005, 0.01];
        let mut su = Snapshots::default();
        let mut sv = Snapshots::default();
        evolve(u0, &pr, &control, 0.01, &times, &mut su).unwrap();
        evolve(v0, &pr, &control, 0.01, &times, &mut sv).unwrap();
        for (a, bb) in su.fields.iter().zip(&sv.fields) {
            for (i, (&x, &y)) in a.u.iter().zip(&bb.u).enumerate() {
                assert!(x <= y + 1e-6, "t = {}, node {i}: {x} > {y}", a.t);
            }
        }
    }
}

/// Max of `|rhs|` for `C_*(-x)_+^alpha` on `[-1, -0.1]` at resolution `n`.
fn stationary_residual(m: f64, p: f64, beta: f64, n: usize) -> f64 {
    let cs: f64 = critical_constant(m, p, 1.0, beta).unwrap();
    let alpha = (1.0 + p) / (m * p - beta);
    let pr = Params::new(m, p, 1.0, beta, cs, alpha).unwrap();
    let g = Grid::<f64>::new(-4.0, 1.0, n).unwrap();
    let u0 = Field::from_fn(g, 0.0, |x: f64| {
        let taper = 0.5 * (1.0 + ((x + 3.0) / 0.125).tanh());
        if x < 0.0 {
            cs * (-x).powf(alpha) * taper
        } else {
            0.0
        }
    })
    .unwrap();
    let r = rhs(&u0, &pr).unwrap();
    g.nodes()
        .zip(&r)
        .filter(|(x, _)| (-1.0..=-0.1).contains(x))
        .map(|(_, v)| v.abs())
        .fold(0.0, f64::max)
}

#[test]
fn stationary_datum_residual_converges() {
    for (m, p, beta) in [(0.5, 2.0, 0.2), (2.0, 2.0, 0.2)] {
        let r: Vec<f64> = [256, 512, 1024].iter().map(|&n| stationary_residual(m, p, beta, n)).collect();
        for w in r.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!(order >= 1.5, "({m},{p},{beta}): residuals {r:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flux_is_exactly_odd(g in -1e3f64..1e3, p in 0.1f64..5.0) {
        prop_assert_eq!(flux_phi(-g, p), -flux_phi(g, p));
    }

    #[test]
    fn absorption_only_shifts_flat_data(level in 0.1f64..3.0, b in 0.0f64..2.0, beta in 0.2f64..2.0) {
        let g = Grid::new(0.0, 1.0, 32).unwrap();
        let f = Field::from_fn(g, 0.0, |_| level).unwrap();
        let pr = Params::new(2.0, 2.0, b, beta, 1.0, 1.0).unwrap();
        let want = -b * level.powf(beta);
        for v in rhs(&f, &pr).unwrap() {
            prop_assert!((v - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
    }
}
