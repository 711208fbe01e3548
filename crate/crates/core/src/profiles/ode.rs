use super::{ProfileTable, Seed, Similarity};
use crate::classification::ProblemParams;
use crate::error::{Error, Result};
use crate::scalar::{lit, pow_nonneg, signed_pow, Real};

/// Integration stops once `f` drops below this value.
pub const FRONT_F_FLOOR: f64 = 1e-6;
/// Integration stops once `|f'|` exceeds this value.
pub const FRONT_SLOPE_CAP: f64 = 1e6;
/// Largest abscissa span walked before giving up on finding a front.
const MAX_SPAN: f64 = 200.0;

/// First-order form in `(f, G)` with `G = phi((f^m)')`.
struct System<T> {
    m: T,
    inv_p: T,
    beta: T,
    sim: Similarity<T>,
}

impl<T: Real> System<T> {
    fn slope(&self, f: T, g: T) -> Option<T> {
        if !(f > T::zero()) {
            return None;
        }
        let fm1 = pow_nonneg(f, self.m - T::one());
        if !(fm1 > T::zero()) || !fm1.is_finite() {
            return None;
        }
        let fp = signed_pow(g, self.inv_p) / (self.m * fm1);
        fp.is_finite().then_some(fp)
    }

    fn rhs(&self, xi: T, f: T, g: T) -> Option<(T, T)> {
        let fp = self.slope(f, g)?;
        let mut dg = self.sim.a * f - self.sim.c * xi * fp;
        if self.sim.absorption != T::zero() {
            dg = dg + self.sim.absorption * pow_nonneg(f, self.beta);
        }
        dg.is_finite().then_some((fp, dg))
    }

    fn rk4(&self, xi: T, f: T, g: T, h: T) -> Option<(T, T)> {
        let half = lit::<T>(0.5) * h;
        let (k1f, k1g) = self.rhs(xi, f, g)?;
        let (k2f, k2g) = self.rhs(xi + half, f + half * k1f, g + half * k1g)?;
        let (k3f, k3g) = self.rhs(xi + half, f + half * k2f, g + half * k2g)?;
        let (k4f, k4g) = self.rhs(xi + h, f + h * k3f, g + h * k3g)?;
        let sixth = h / lit(6.0);
        let two: T = lit(2.0);
        Some((
            f + sixth * (k1f + two * k2f + two * k3f + k4f),
            g + sixth * (k1g + two * k2g + two * k3g + k4g),
        ))
    }
}

/// Walks forward from the seed until one of the stopping rules fires.
/// Returns the samples and the abscissa of the smallest recorded `f`.
fn march<T: Real>(sys: &System<T>, seed: &Seed<T>, p: T, h: T) -> Result<(Vec<(T, T)>, T)> {
    let floor: T = lit(FRONT_F_FLOOR);
    let cap: T = lit(FRONT_SLOPE_CAP);
    let max_steps = (lit::<T>(MAX_SPAN) / h).to_usize().unwrap_or(usize::MAX);

    let mut xi = seed.at;
    let mut f = seed.f;
    let mut g = signed_pow(sys.m * pow_nonneg(f, sys.m - T::one()) * seed.fp, p);
    let mut samples = vec![(xi, f)];
    let mut best = (xi, f);
    let mut decreasing = false;

    for n in 0..max_steps {
        let next = sys.rk4(xi, f, g, h).filter(|(fn_, gn)| fn_.is_finite() && gn.is_finite() && *fn_ > T::zero());
        let Some((f_new, g_new)) = next else {
            if n == 0 {
                return Err(Error::BadSeed("integration breaks down on the first step".into()));
            }
            return Ok((samples, best.0));
        };
        if decreasing && f_new > f {
            return Ok((samples, best.0));
        }
        decreasing |= f_new < f;
        xi = xi + h;
        f = f_new;
        g = g_new;
        samples.push((xi, f));
        if f < best.1 {
            best = (xi, f);
        }
        let steep = sys.slope(f, g).map(|fp| fp.abs() > cap).unwrap_or(true);
        if f < floor || steep {
            return Ok((samples, best.0));
        }
    }
    Err(Error::Integration(format!("no front within {MAX_SPAN} of the seed")))
}

fn integrate<T: Real>(
    sim: Similarity<T>,
    seed: Seed<T>,
    params: &ProblemParams<T>,
    step: T,
) -> Result<ProfileTable<T>> {
    if !(step > T::zero()) || !step.is_finite() {
        return Err(Error::InvalidParams("profile step must be positive".into()));
    }
    if !(seed.f > T::zero()) || !seed.fp.is_finite() || !seed.at.is_finite() {
        return Err(Error::BadSeed(format!("need f > 0 and finite slope, got f = {}, f' = {}", seed.f, seed.fp)));
    }
    let sys = System {
        m: params.m,
        inv_p: T::one() / params.p,
        beta: params.beta,
        sim,
    };
    let (samples, front) = march(&sys, &seed, params.p, step)?;
    let (_, half_step_front) = march(&sys, &seed, params.p, lit::<T>(0.5) * step)?;
    Ok(ProfileTable {
        samples,
        front,
        seed,
        kind: sim.kind,
        similarity: sim,
        params: *params,
        step,
        half_step_front,
    })
}

/// Expanding-front profile, integrated forward from the seed by fixed-step RK4.
pub fn integrate_region1<T: Real>(seed: Seed<T>, params: &ProblemParams<T>, step: T) -> Result<ProfileTable<T>> {
    if !(params.mp() > T::one()) {
        return Err(Error::Regime {
            what: "region-1 profile",
            reason: "need mp > 1".into(),
        });
    }
    integrate(Similarity::region1(params)?, seed, params, step)
}

/// Borderline profile with absorption. A seed placed at a negative abscissa
/// handles fronts that retreat (`C < C_*`).
pub fn integrate_region2<T: Real>(seed: Seed<T>, params: &ProblemParams<T>, step: T) -> Result<ProfileTable<T>> {
    integrate(Similarity::region2(params)?, seed, params, step)
}

/// Residual of the profile equation on the table by second-order central
/// differences, skipping the five samples nearest the front. Needs a uniform
/// table spacing.
pub fn profile_residual<T: Real>(table: &ProfileTable<T>) -> Vec<(T, T)> {
    let s = &table.samples;
    let pr = &table.params;
    let sim = &table.similarity;
    let h = table.step;
    let two: T = lit(2.0);
    let fm = |f: T| pow_nonneg(f, pr.m);
    let flux = |a: T, b: T| signed_pow((fm(b) - fm(a)) / h, pr.p);
    let end = s.len().saturating_sub(5);
    (1..end.saturating_sub(1))
        .map(|j| {
            let (xi, f) = s[j];
            let d2 = (flux(f, s[j + 1].1) - flux(s[j - 1].1, f)) / h;
            let fp = (s[j + 1].1 - s[j - 1].1) / (two * h);
            let r = d2 - sim.a * f + sim.c * xi * fp - sim.absorption * pow_nonneg(f, pr.beta);
            (xi, r)
        })
        .collect()
}

/// Ordinate and abscissa factors `(lambda, mu)` with
/// `f_C(rho) = lambda f_1(mu rho)` for the absorption-free expanding profile:
/// `lambda = C^((1+p)/D)`, `mu = C^((mp-1)/(alpha(mp-1)-(1+p)))`.
pub fn region1_scaling<T: Real>(params: &ProblemParams<T>) -> Result<(T, T)> {
    let one = T::one();
    let d = one + params.p - params.alpha * (params.mp() - one);
    if !(d > T::zero()) {
        return Err(Error::Regime {
            what: "region-1 scaling",
            reason: "need alpha < (1+p)/(mp-1)".into(),
        });
    }
    let lambda = params.c.powf((one + params.p) / d);
    let mu = params.c.powf(-(params.mp() - one) / d);
    Ok((lambda, mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn explicit_params() -> ProblemParams<f64> {
        // alpha = p/(mp-1)
        ProblemParams::new(2.0, 2.0, 0.0, 0.5, 1.0, 2.0 / 3.0).unwrap()
    }

    #[test]
    fn explicit_profile_front() {
        let pr = explicit_params();
        let (mp, p) = (4.0_f64, 2.0);
        let xi_star = (mp / (mp - 1.0)).powf(p);
        let e = p / (mp - 1.0);
        let seed = Seed::origin(xi_star.powf(e), -e * xi_star.powf(e - 1.0));
        let table = integrate_region1(seed, &pr, 1e-4).unwrap();
        assert!((table.front - xi_star).abs() < 1e-3, "{} vs {xi_star}", table.front);
        assert!(table.refinement_change() < 1e-3);
        // interior samples follow the closed form
        for &(xi, f) in table.samples.iter().step_by(1000) {
            let want = (xi_star - xi).powf(e);
            assert!((f - want).abs() < 1e-6 * want.max(1e-3), "{xi}: {f} vs {want}");
        }
    }

    #[test]
    fn seed_that_cannot_start() {
        let pr = explicit_params();
        assert!(matches!(
            integrate_region1(Seed::origin(0.0, -1.0), &pr, 1e-4),
            Err(Error::BadSeed(_))
        ));
        assert!(matches!(
            integrate_region1(Seed::origin(1e-3, -1e9), &pr, 1e-4),
            Err(Error::BadSeed(_))
        ));
    }

    #[test]
    fn region_preconditions() {
        let pr = ProblemParams::new(2.0, 2.0, 1.0, 0.5, 1.0, 1.5).unwrap();
        assert!(integrate_region1(Seed::origin(1.0, -0.1), &pr, 1e-4).is_err());
        let pr = ProblemParams::new(2.0, 2.0, 1.0, 1.0, 1.0, 0.5).unwrap();
        assert!(integrate_region2(Seed::origin(1.0, -0.1), &pr, 1e-4).is_err());
    }

    #[test]
    fn scaling_factors() {
        let pr = ProblemParams::<f64>::new(4.0, 2.0, 0.0, 0.5, 2.0, 0.2).unwrap();
        let (l, mu) = region1_scaling(&pr).unwrap();
        // lambda^(mp-1) mu^(1+p) = 1 and lambda mu^alpha = C
        assert!((l.powf(7.0) * mu.powf(3.0) - 1.0).abs() < 1e-12);
        assert!((l * mu.powf(0.2) - 2.0).abs() < 1e-12);
    }
}
