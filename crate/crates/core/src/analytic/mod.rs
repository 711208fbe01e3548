//! Closed-form solutions and two-sided envelopes, used as oracles for the
//! solver and as acceptance references.

mod envelope;

pub use envelope::{envelope_eval, Envelope, EnvelopeTag, EpsWindow};

use crate::classification::{c_bar, critical_constant, shrink_prefactor, travelling_wave_speed, ProblemParams};
use crate::error::{Error, Result};
use crate::scalar::{lit, pos, pow_nonneg, rel_eq, signed_pow, Real};

/// Relative tolerance for matching `alpha`, `beta` and `p(m+beta)` against the
/// exact values a closed form requires.
pub const REGIME_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolutionKind {
    /// Instantaneous point source, `b = 0`.
    Ips,
    /// `C (zeta_* t - x)_+^((1+p)/(mp-beta))` when `p(m+beta) = 1+p`.
    TravelingWaveU2,
    /// Separable solution for `beta = 1`, `alpha = (1+p)/(mp-1)`.
    SeparableU6,
    /// `C (xi_* t - x)_+^(p/(mp-1))` for `b = 0`, `alpha = p/(mp-1)`.
    ExplicitU7,
    /// Separable solution for `b = 0`, `alpha = (1+p)/(mp-1)`.
    SeparableU9,
    /// Pure-absorption limit valid near a shrinking front.
    ReactionLimitU5,
}

/// `k(m,p) = ((mp-1)/(m(1+p))) (1/(p(m+1)))^(1/p)`.
pub fn ips_k<T: Real>(m: T, p: T) -> T {
    let one = T::one();
    (m * p - one) / (m * (one + p)) * (one / (p * (m + one))).powf(one / p)
}

fn ips_check<T: Real>(m: T, p: T, gamma: T, t: T) -> Result<()> {
    if !(m * p > T::one()) || !(gamma > T::zero()) {
        return Err(Error::Regime {
            what: "ips",
            reason: "need mp > 1 and Gamma > 0".into(),
        });
    }
    if !(t > T::zero()) {
        return Err(Error::OutOfTime {
            t: t.to_f64().unwrap_or(f64::NAN),
            limit: f64::INFINITY,
        });
    }
    Ok(())
}

pub fn ips_eval<T: Real>(m: T, p: T, gamma: T, x: T, t: T) -> Result<T> {
    ips_check(m, p, gamma, t)?;
    let one = T::one();
    let s = t.powf(-one / (p * (m + one)));
    let bracket = gamma - ips_k(m, p) * pow_nonneg(x.abs() * s, (one + p) / p);
    Ok(s * pow_nonneg(bracket, p / (m * p - one)))
}

/// Right end of the support, `eta(t) = t^(1/(p(m+1))) (Gamma/k)^(p/(p+1))`.
pub fn ips_interface<T: Real>(m: T, p: T, gamma: T, t: T) -> Result<T> {
    ips_check(m, p, gamma, t)?;
    let one = T::one();
    Ok(t.powf(one / (p * (m + one))) * (gamma / ips_k(m, p)).powf(p / (p + one)))
}

/// `[C^(1-beta) (-x)_+^(alpha(1-beta)) - b(1-beta) t]_+^(1/(1-beta))`.
pub fn reaction_limit_eval<T: Real>(params: &ProblemParams<T>, x: T, t: T) -> T {
    let om = T::one() - params.beta;
    let bracket = params.c.powf(om) * pow_nonneg(-x, params.alpha * om) - params.b * om * t;
    pow_nonneg(bracket, T::one() / om)
}

/// A closed-form solution bound to its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSolution<T> {
    pub kind: SolutionKind,
    pub params: ProblemParams<T>,
    /// IPS integration constant; unused by the other kinds.
    pub gamma: T,
    /// End of the validity window `[0, T)`; infinite when there is no blow-up.
    pub t_max: T,
    speed: T,
}

fn regime<T>(what: &'static str, reason: &str) -> Result<T> {
    Err(Error::Regime {
        what,
        reason: reason.into(),
    })
}

impl<T: Real> AnalyticSolution<T> {
    pub fn ips(params: ProblemParams<T>, gamma: T) -> Result<Self> {
        params.validate()?;
        if params.b != T::zero() {
            return regime("ips", "the point-source solution needs b = 0");
        }
        ips_check(params.m, params.p, gamma, T::one())?;
        Ok(Self {
            kind: SolutionKind::Ips,
            params,
            gamma,
            t_max: T::infinity(),
            speed: T::zero(),
        })
    }

    /// Checks the regime predicate of `kind` and precomputes its constants.
    pub fn new(kind: SolutionKind, params: ProblemParams<T>) -> Result<Self> {
        if kind == SolutionKind::Ips {
            return Self::ips(params, T::one());
        }
        params.validate()?;
        let one = T::one();
        let tol: T = lit(REGIME_RTOL);
        let (m, p, b, beta, c, alpha) = (params.m, params.p, params.b, params.beta, params.c, params.alpha);
        let mp = m * p;
        let slow = mp > one && !rel_eq(mp, one, tol);
        let mut sol = Self {
            kind,
            params,
            gamma: one,
            t_max: T::infinity(),
            speed: T::zero(),
        };
        match kind {
            SolutionKind::Ips => unreachable!(),
            SolutionKind::TravelingWaveU2 => {
                if !(beta < one) || b <= T::zero() || !rel_eq(params.p_m_beta(), one + p, tol) {
                    return regime("U2", "need 0 < beta < 1, b > 0 and p(m+beta) = 1+p");
                }
                if !rel_eq(alpha, (one + p) / (mp - beta), tol) {
                    return regime("U2", "need alpha = (1+p)/(mp-beta)");
                }
                sol.speed = travelling_wave_speed(&params)?;
            }
            SolutionKind::ReactionLimitU5 => {
                if !(beta < one) {
                    return regime("U5", "need 0 < beta < 1");
                }
                if b > T::zero() {
                    sol.speed = shrink_prefactor(&params)?;
                }
            }
            SolutionKind::SeparableU6 => {
                if !rel_eq(beta, one, tol) || b <= T::zero() || !slow || !rel_eq(alpha, (one + p) / (mp - one), tol) {
                    return regime("U6", "need beta = 1, b > 0, mp > 1 and alpha = (1+p)/(mp-1)");
                }
                let r = (c / c_bar(m, p).expect("mp > 1")).powf(mp - one);
                if b < r {
                    sol.t_max = (one - b / r).ln() / (b * (one - mp));
                }
            }
            SolutionKind::ExplicitU7 => {
                if b != T::zero() || !slow || !rel_eq(alpha, p / (mp - one), tol) {
                    return regime("U7", "need b = 0, mp > 1 and alpha = p/(mp-1)");
                }
                sol.speed = c.powf(mp - one) * (mp / (mp - one)).powf(p);
            }
            SolutionKind::SeparableU9 => {
                if b != T::zero() || !slow || !rel_eq(alpha, (one + p) / (mp - one), tol) {
                    return regime("U9", "need b = 0, mp > 1 and alpha = (1+p)/(mp-1)");
                }
                let lambda = -(c / c_bar(m, p).expect("mp > 1")).powf(mp - one);
                sol.t_max = one / (lambda * (one - mp));
            }
        }
        Ok(sol)
    }

    fn check_time(&self, t: T) -> Result<()> {
        let bad = match self.kind {
            SolutionKind::Ips => !(t > T::zero()),
            _ => t < T::zero() || !(t < self.t_max),
        };
        if bad {
            return Err(Error::OutOfTime {
                t: t.to_f64().unwrap_or(f64::NAN),
                limit: self.t_max.to_f64().unwrap_or(f64::INFINITY),
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: T, t: T) -> Result<T> {
        self.check_time(t)?;
        let one = T::one();
        let pr = &self.params;
        let (m, p, b, beta, c) = (pr.m, pr.p, pr.b, pr.beta, pr.c);
        let mp = m * p;
        Ok(match self.kind {
            SolutionKind::Ips => ips_eval(m, p, self.gamma, x, t)?,
            SolutionKind::TravelingWaveU2 => c * pow_nonneg(self.speed * t - x, (one + p) / (mp - beta)),
            SolutionKind::ExplicitU7 => c * pow_nonneg(self.speed * t - x, p / (mp - one)),
            SolutionKind::ReactionLimitU5 => reaction_limit_eval(pr, x, t),
            SolutionKind::SeparableU6 => {
                let r = (c / c_bar(m, p).expect("checked")).powf(mp - one);
                let decay = (-b * (mp - one) * t).exp();
                let bracket = one - r / b * (one - decay);
                c * pow_nonneg(-x, (one + p) / (mp - one)) * (-b * t).exp() * bracket.powf(one / (one - mp))
            }
            SolutionKind::SeparableU9 => {
                let lambda = -(c / c_bar(m, p).expect("checked")).powf(mp - one);
                let bracket = lambda * (self.t_max - t) * (one - mp);
                c * pow_nonneg(-x, (one + p) / (mp - one)) * bracket.powf(one / (one - mp))
            }
        })
    }

    /// Right end of the support at time `t`.
    pub fn front(&self, t: T) -> Result<T> {
        self.check_time(t)?;
        let pr = &self.params;
        Ok(match self.kind {
            SolutionKind::Ips => ips_interface(pr.m, pr.p, self.gamma, t)?,
            SolutionKind::TravelingWaveU2 | SolutionKind::ExplicitU7 => self.speed * t,
            SolutionKind::ReactionLimitU5 => {
                let om = T::one() - pr.beta;
                -self.speed * t.powf(T::one() / (pr.alpha * om))
            }
            SolutionKind::SeparableU6 | SolutionKind::SeparableU9 => T::zero(),
        })
    }

    /// Front speed (U2, U7) or shrink prefactor `l_*` (U5); zero otherwise.
    pub fn front_constant(&self) -> T {
        self.speed
    }
}

/// Convenience wrapper: build the solution for `kind` and evaluate it once.
pub fn explicit_eval<T: Real>(kind: SolutionKind, params: &ProblemParams<T>, x: T, t: T) -> Result<T> {
    AnalyticSolution::new(kind, *params)?.eval(x, t)
}

/// Exact `L[u0]` for the power datum `u0 = C(-x)_+^alpha` at `x < 0`,
/// where `L[u] = u_t - (|(u^m)_x|^(p-1) (u^m)_x)_x + b u^beta`.
pub fn power_datum_residual<T: Real>(params: &ProblemParams<T>, x: T) -> T {
    let one = T::one();
    let (m, p, b, beta, c, alpha) = (params.m, params.p, params.b, params.beta, params.c, params.alpha);
    let r = pos(-x);
    let ma = m * alpha;
    let diffusion = (ma).powf(p) * c.powf(m * p) * p * (ma - one) * pow_nonneg(r, p * (ma - one) - one);
    -diffusion + b * c.powf(beta) * pow_nonneg(r, alpha * beta)
}

/// `L[u](x, t)` by fourth-order central differences with spatial step `h` and
/// temporal step `ht` (set `ht = 0` for time-independent `u`).
pub fn fd_residual<T: Real, F: Fn(T, T) -> T>(params: &ProblemParams<T>, u: F, x: T, t: T, h: T, ht: T) -> T {
    let d4 = |f: &dyn Fn(T) -> T, y: T, s: T| -> T {
        let two: T = lit(2.0);
        let eight: T = lit(8.0);
        (f(y - two * s) - eight * f(y - s) + eight * f(y + s) - f(y + two * s)) / (lit::<T>(12.0) * s)
    };
    let um = |y: T| pow_nonneg(u(y, t), params.m);
    let flux = |y: T| signed_pow(d4(&um, y, h), params.p);
    let diffusion = d4(&flux, x, h);
    let ut = if ht > T::zero() { d4(&|s: T| u(x, s), t, ht) } else { T::zero() };
    ut - diffusion + params.b * pow_nonneg(u(x, t), params.beta)
}

/// `C_*` for `params`, when it is defined.
pub(crate) fn c_star_of<T: Real>(params: &ProblemParams<T>) -> Result<T> {
    critical_constant(params.m, params.p, params.b, params.beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: f64, p: f64, beta: f64, b: f64, c: f64, alpha: f64) -> ProblemParams<f64> {
        ProblemParams::new(m, p, b, beta, c, alpha).unwrap()
    }

    #[test]
    fn ips_center_and_front() {
        assert!((ips_eval(6.0_f64, 2.0, 1.0, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let eta = ips_interface(6.0_f64, 2.0, 1.0, 1.0).unwrap();
        assert!((eta - 3.347).abs() < 1e-3, "{eta}");
        assert_eq!(ips_eval(6.0, 2.0, 1.0, eta * 1.0001, 1.0).unwrap(), 0.0);
        assert_eq!(ips_eval(6.0, 2.0, 1.0, -eta * 1.0001, 1.0).unwrap(), 0.0);
        assert!(ips_eval(6.0, 2.0, 1.0, 0.0, 0.0).is_err());
        assert!((ips_k(6.0_f64, 2.0) - 0.1633).abs() < 1e-4);
    }

    #[test]
    fn u2_speed_and_front() {
        let pr = params(2.5, 0.5, 0.5, 1.0, 0.5, 1.5 / 0.75);
        let sol = AnalyticSolution::new(SolutionKind::TravelingWaveU2, pr).unwrap();
        assert!((sol.front_constant() - 1.173).abs() < 1e-3);
        assert_eq!(sol.eval(sol.front(0.3).unwrap(), 0.3).unwrap(), 0.0);
        let slow = AnalyticSolution::new(SolutionKind::TravelingWaveU2, pr.with_c(0.06)).unwrap();
        assert!(slow.front_constant() < 0.0);
    }

    #[test]
    fn u7_front_is_zero() {
        let pr = params(2.0, 2.0, 0.5, 0.0, 0.7, 2.0 / 3.0);
        let sol = AnalyticSolution::new(SolutionKind::ExplicitU7, pr).unwrap();
        let xs = sol.front(0.4).unwrap();
        assert_eq!(sol.eval(xs, 0.4).unwrap(), 0.0);
        assert!(sol.eval(xs - 0.1, 0.4).unwrap() > 0.0);
    }

    #[test]
    fn u6_at_t0_is_datum() {
        let pr = params(2.0, 3.0, 1.0, 0.5, 0.5, 0.8);
        let sol = AnalyticSolution::new(SolutionKind::SeparableU6, pr).unwrap();
        assert!(sol.t_max.is_infinite());
        for &x in &[-1.0, -0.3, 0.0, 0.4] {
            let want = 0.5 * pow_nonneg(-x, 0.8);
            assert!((sol.eval(x, 0.0).unwrap() - want).abs() < 1e-15);
        }
    }

    #[test]
    fn u6_blowup_time() {
        // b below (C/C_bar)^(mp-1): finite T
        let pr = params(2.0, 3.0, 1.0, 0.05, 0.6, 0.8);
        let sol = AnalyticSolution::new(SolutionKind::SeparableU6, pr).unwrap();
        assert!(sol.t_max.is_finite() && sol.t_max > 0.0);
        assert!(sol.eval(-1.0, sol.t_max).is_err());
        assert!(sol.eval(-1.0, 0.999 * sol.t_max).unwrap() > 2.0 * sol.eval(-1.0, 0.5 * sol.t_max).unwrap());
    }

    #[test]
    fn u9_blowup_time() {
        let pr = params(2.0, 3.0, 1.0, 0.0, 0.5, 0.8);
        let sol = AnalyticSolution::new(SolutionKind::SeparableU9, pr).unwrap();
        let r = (0.5 / c_bar(2.0_f64, 3.0).unwrap()).powf(5.0);
        assert!((sol.t_max - 1.0 / (5.0 * r)).abs() < 1e-12);
        assert!((sol.eval(-1.0, 0.0).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn u5_datum_and_front() {
        let pr = params(4.0, 2.0, 0.5, 0.8, 0.5, 0.8);
        assert!((reaction_limit_eval(&pr, -0.7, 0.0) - 0.5 * 0.7_f64.powf(0.8)).abs() < 1e-15);
        let sol = AnalyticSolution::new(SolutionKind::ReactionLimitU5, pr).unwrap();
        let eta = sol.front(0.3).unwrap();
        assert!(reaction_limit_eval(&pr, eta, 0.3) < 1e-15);
        // hand evaluation: [0.5^0.5 - 0.04]^2
        let want = (0.5_f64.sqrt() - 0.04).powi(2);
        assert!((reaction_limit_eval(&pr, -1.0, 0.1) - want).abs() < 1e-14);
    }

    #[test]
    fn regime_violations() {
        let pr = params(4.0, 2.0, 0.5, 0.8, 0.5, 0.8);
        assert!(AnalyticSolution::new(SolutionKind::TravelingWaveU2, pr).is_err());
        assert!(AnalyticSolution::new(SolutionKind::ExplicitU7, pr).is_err());
        assert!(AnalyticSolution::new(SolutionKind::SeparableU6, pr).is_err());
        assert!(AnalyticSolution::ips(pr, 1.0).is_err());
    }

    #[test]
    fn stationary_datum_residual_vanishes() {
        let (m, p, beta, b) = (2.0, 2.0, 0.2, 1.0);
        let cs = critical_constant(m, p, b, beta).unwrap();
        let pr = params(m, p, beta, b, cs, (1.0 + p) / (m * p - beta));
        for k in 0..100 {
            let x = -1.0 + 0.99 * k as f64 / 99.0;
            assert!(power_datum_residual(&pr, x).abs() < 1e-10);
        }
        let off = pr.with_c(0.9 * cs);
        assert!(power_datum_residual(&off, -0.5) > 0.0);
    }
}
