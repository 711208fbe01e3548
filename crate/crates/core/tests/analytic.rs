use ddpe_core::analytic::*;
use ddpe_core::classification::{appendix_constants, critical_constant, AppendixInputs};
use ddpe_core::Params;
use proptest::prelude::*;

fn residual_sup(sol: &AnalyticSolution<f64>, xs: &[f64], t: f64, h: f64) -> f64 {
    xs.iter()
        .map(|&x| fd_residual(&sol.params, |y, s| sol.eval(y, s).unwrap(), x, t, h, 1e-3).abs())
        .fold(0.0, f64::max)
}

/// Residual order between `h` and `h/2` on points at least `gap` behind the front.
fn residual_order(sol: &AnalyticSolution<f64>, t: f64, lo: f64, gap: f64) -> f64 {
    let front = sol.front(t).unwrap();
    let xs: Vec<f64> = (0..40).map(|j| lo + (front - gap - lo) * j as f64 / 39.0).collect();
    let h = 0.02;
    (residual_sup(sol, &xs, t, h) / residual_sup(sol, &xs, t, h / 2.0)).log2()
}

#[test]
fn explicit_solutions_satisfy_the_equation() {
    let cases = [
        (SolutionKind::TravelingWaveU2, Params::new(2.5, 0.5, 1.0, 0.5, 0.5, 2.0).unwrap(), 0.5),
        (SolutionKind::ExplicitU7, Params::new(2.0, 2.0, 0.0, 0.5, 0.8, 2.0 / 3.0).unwrap(), 0.3),
        (SolutionKind::SeparableU6, Params::new(2.0, 3.0, 0.5, 1.0, 0.5, 0.8).unwrap(), 0.7),
        (SolutionKind::SeparableU9, Params::new(2.0, 3.0, 0.0, 1.0, 0.5, 0.8).unwrap(), 0.4),
    ];
    for (kind, pr, t) in cases {
        let sol = AnalyticSolution::new(kind, pr).unwrap();
        let order = residual_order(&sol, t, -2.0, 0.3);
        assert!(order >= 3.5, "{kind:?}: order {order}");
    }
}

#[test]
fn ips_satisfies_the_equation_away_from_center_and_front() {
    let pr = Params::new(6.0, 2.0, 0.0, 0.5, 1.0, 1.0).unwrap();
    let sol = AnalyticSolution::ips(pr, 1.0).unwrap();
    let order = residual_order(&sol, 1.0, 0.5, 0.5);
    assert!(order >= 3.5, "order {order}");
}

#[test]
fn ips_reference_values() {
    assert_eq!(ips_eval(6.0, 2.0, 1.0, 0.0, 1.0).unwrap(), 1.0);
    // k = (11/18) (1/14)^(1/2)
    let k = 11.0 / 18.0 / 14.0_f64.sqrt();
    assert!((ips_k(6.0, 2.0) - k).abs() < 1e-15);
    let eta = ips_interface(6.0, 2.0, 1.0, 1.0).unwrap();
    assert!((eta - k.powf(-2.0 / 3.0)).abs() < 1e-12);
    assert!((eta - 3.347).abs() < 5e-4);
    assert_eq!(ips_eval(6.0, 2.0, 1.0, eta + 1e-9, 1.0).unwrap(), 0.0);
    assert!(ips_eval(6.0, 2.0, 1.0, 0.0, 0.0).is_err());
}

#[test]
fn ips_mass_is_time_independent() {
    let mass = |t: f64| {
        let eta = ips_interface(6.0, 2.0, 1.0, t).unwrap();
        let n = 100_000;
        let h = 2.0 * eta / n as f64;
        (0..=n)
            .map(|j| {
                let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                w * ips_eval(6.0, 2.0, 1.0, -eta + j as f64 * h, t).unwrap()
            })
            .sum::<f64>()
            * h
    };
    let m0 = mass(0.05);
    for t in [0.5, 2.0] {
        assert!((mass(t) / m0 - 1.0).abs() <= 1e-6, "t = {t}");
    }
}

#[test]
fn reaction_limit_reference_values() {
    let pr = Params::new(4.0, 2.0, 0.8, 0.5, 0.5, 0.8).unwrap();
    // [0.5^0.5 * 1 - 0.8 * 0.5 * 0.1]^2
    let want = (0.5_f64.sqrt() - 0.04).powi(2);
    assert!((reaction_limit_eval(&pr, -1.0, 0.1) - want).abs() < 1e-15);
    assert!((reaction_limit_eval(&pr, -0.3, 0.0) - 0.5 * 0.3_f64.powf(0.8)).abs() < 1e-15);
    let sol = AnalyticSolution::new(SolutionKind::ReactionLimitU5, pr).unwrap();
    let t = 0.2;
    assert_eq!(sol.eval(sol.front(t).unwrap(), t).unwrap(), 0.0);
}

#[test]
fn u2_reference_speed() {
    let pr = Params::new(2.5, 0.5, 1.0, 0.5, 0.5, 2.0).unwrap();
    let cs: f64 = critical_constant(2.5, 0.5, 1.0, 0.5).unwrap();
    // b(1-beta) C^(beta-1) ((C/C_*)^(mp-beta) - 1)
    let want = 0.5 * 0.5_f64.powf(-0.5) * ((0.5 / cs).powf(0.75) - 1.0);
    let sol = AnalyticSolution::new(SolutionKind::TravelingWaveU2, pr).unwrap();
    assert!((sol.front_constant() - want).abs() < 1e-12);
    assert!((want - 1.173).abs() < 1e-3, "{want}");
}

#[test]
fn stationary_datum_has_zero_residual() {
    for (m, p, beta) in [(2.0, 2.0, 0.2), (0.5, 2.0, 0.2), (4.0, 2.0, 0.5)] {
        let cs = critical_constant(m, p, 1.0, beta).unwrap();
        let pr = Params::new(m, p, 1.0, beta, cs, (1.0 + p) / (m * p - beta)).unwrap();
        for j in 0..100 {
            let x = -1.0 + 0.99 * j as f64 / 99.0;
            assert!(power_datum_residual(&pr, x).abs() <= 1e-10, "({m},{p},{beta}) x = {x}");
        }
    }
}

fn borderline(p: f64, beta: f64, c: f64) -> Params {
    let m = (1.0 + p) / p - beta;
    Params::new(m, p, 1.0, beta, c, (1.0 + p) / (m * p - beta)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn u2_speed_sign_follows_c_star(p in 0.3f64..4.0, beta in 0.05f64..0.95, scale in 0.1f64..3.0) {
        let m = (1.0 + p) / p - beta;
        let cs = critical_constant(m, p, 1.0, beta).unwrap();
        prop_assume!((scale - 1.0).abs() > 1e-6);
        let sol = AnalyticSolution::new(SolutionKind::TravelingWaveU2, borderline(p, beta, scale * cs)).unwrap();
        prop_assert_eq!(sol.front_constant() > 0.0, scale > 1.0);
    }

    #[test]
    fn explicit_values_nonnegative_and_zero_past_front(x in -3.0f64..3.0, t in 0.0f64..0.6) {
        let pr = Params::new(2.0, 3.0, 0.5, 1.0, 0.5, 0.8).unwrap();
        for (kind, params) in [
            (SolutionKind::SeparableU6, pr),
            (SolutionKind::ExplicitU7, Params::new(2.0, 2.0, 0.0, 0.5, 0.8, 2.0 / 3.0).unwrap()),
            (SolutionKind::TravelingWaveU2, borderline(0.5, 0.5, 0.5)),
        ] {
            let sol = AnalyticSolution::new(kind, params).unwrap();
            let u = sol.eval(x, t).unwrap();
            prop_assert!(u >= 0.0);
            if x > sol.front(t).unwrap() {
                prop_assert_eq!(u, 0.0);
            }
        }
    }
}

#[test]
fn e1_bounds_are_ordered() {
    use rand::{Rng, SeedableRng};
    let cs = critical_constant(2.0, 2.0, 1.0, 0.2).unwrap();
    let pr = Params::new(2.0, 2.0, 1.0, 0.2, 1.2, 3.0 / 3.8).unwrap();
    assert!(pr.c > cs);
    let inputs = AppendixInputs {
        a1: Some(1.1),
        ..Default::default()
    };
    let consts = appendix_constants(&pr, &inputs).unwrap();
    let env = Envelope::new(EnvelopeTag::E1, pr, consts, None).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for _ in 0..10_000 {
        let x = rng.gen_range(0.0..5.0);
        let t = rng.gen_range(1e-3..2.0);
        if let (Some(lo), Some(hi)) = env.eval(x, t) {
            assert!(lo <= hi, "x = {x}, t = {t}: {lo} > {hi}");
            checked += 1;
        }
    }
    assert!(checked > 5_000);
}
