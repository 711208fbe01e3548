//! Two-sided bounds `lower <= u <= upper` from the comparison arguments.

use super::{c_star_of, REGIME_RTOL};
use crate::classification::{balance_constant, classify, ConstantSet, ProblemParams, Region};
use crate::error::{Error, Result};
use crate::scalar::{lit, pow_nonneg, rel_eq, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnvelopeTag {
    /// Expanding borderline front, `C > C_*`.
    E1,
    /// Shrinking borderline front, `p(m+beta) > 1+p`.
    E3,
    /// Shrinking borderline front, `p(m+beta) < 1+p`.
    E4,
    /// `beta = 1`, `alpha > (1+p)/(mp-1)`.
    E5,
    /// `1 < beta < mp`, `alpha >= (1+p)/(mp-beta)`.
    E6,
    /// Waiting front with `alpha = (1+p)/(mp-1)`.
    E7,
    /// Waiting front with `alpha > (1+p)/(mp-1)`.
    E8,
    /// `b = 0` self-similar expansion.
    E9,
    /// `b = 0`, `alpha > (1+p)/(mp-1)`.
    E10,
    /// Rough bound preceding E4.
    E21,
}

/// The `(eps, x_eps, delta_eps)` triple of the waiting-time envelopes.
///
/// Existence of a suitable triple is all that is known; callers choose it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsWindow<T> {
    pub eps: T,
    pub x_eps: T,
    pub delta_eps: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Envelope<T> {
    pub tag: EnvelopeTag,
    pub params: ProblemParams<T>,
    pub constants: ConstantSet<T>,
    pub window: Option<EpsWindow<T>>,
    c_star: Option<T>,
}

fn regime<T>(tag: EnvelopeTag, reason: &str) -> Result<T> {
    Err(Error::Regime {
        what: "envelope",
        reason: format!("{tag:?}: {reason}"),
    })
}

impl<T: Real> Envelope<T> {
    /// Checks that `tag` applies to `params` and that every constant it uses is present.
    pub fn new(tag: EnvelopeTag, params: ProblemParams<T>, constants: ConstantSet<T>, window: Option<EpsWindow<T>>) -> Result<Self> {
        let report = classify(&params)?;
        let one = T::one();
        let tol: T = lit(REGIME_RTOL);
        let pmb = params.p_m_beta();
        let onep = one + params.p;
        let above = pmb > onep && !rel_eq(pmb, onep, tol);
        let below = pmb < onep && !rel_eq(pmb, onep, tol);
        let mp = params.mp();
        let waiting = onep / (mp - one);
        let on_waiting = rel_eq(params.alpha, waiting, tol);

        let ok = match tag {
            EnvelopeTag::E1 => report.region == Region::R2Expand && (above || below),
            EnvelopeTag::E3 => report.region == Region::R2Shrink && above,
            EnvelopeTag::E4 | EnvelopeTag::E21 => report.region == Region::R2Shrink && below,
            EnvelopeTag::E5 => report.region == Region::R4b,
            EnvelopeTag::E6 => report.region == Region::R4c,
            EnvelopeTag::E7 => report.region == Region::R4d && on_waiting,
            EnvelopeTag::E8 => report.region == Region::R4d && !on_waiting,
            EnvelopeTag::E9 => report.region == Region::B0Case1,
            EnvelopeTag::E10 => report.region == Region::B0Case3,
        };
        if !ok {
            return regime(tag, &format!("does not apply in region {}", report.region));
        }
        let needed: &[&str] = match tag {
            EnvelopeTag::E1 => &["zeta1", "zeta2", "C1", "C2"],
            EnvelopeTag::E4 => &["zeta3", "zeta4", "ell0", "ell1", "C3"],
            EnvelopeTag::E9 => &["xi3", "xi4", "C4", "C5"],
            _ => &[],
        };
        for name in needed {
            constants.require(name)?;
        }
        let windowed = matches!(
            tag,
            EnvelopeTag::E5 | EnvelopeTag::E6 | EnvelopeTag::E7 | EnvelopeTag::E8 | EnvelopeTag::E10
        );
        if windowed {
            match window {
                None => return Err(Error::MissingInput("eps")),
                Some(w) if !(w.eps > T::zero()) || !(w.x_eps < T::zero()) || !(w.delta_eps > T::zero()) => {
                    return regime(tag, "need eps > 0, x_eps < 0 and delta_eps > 0");
                }
                _ => {}
            }
        }
        let c_star = match tag {
            EnvelopeTag::E3 | EnvelopeTag::E4 | EnvelopeTag::E21 => Some(c_star_of(&params)?),
            EnvelopeTag::E6 => balance_constant(params.m, params.p, params.b, params.beta),
            _ => None,
        };
        Ok(Self {
            tag,
            params,
            constants,
            window,
            c_star,
        })
    }

    /// `(lower, upper)` at `(x, t)`; `None` outside the region where a bound is asserted.
    pub fn eval(&self, x: T, t: T) -> (Option<T>, Option<T>) {
        let one = T::one();
        let pr = &self.params;
        let (m, p, b, beta, c, alpha) = (pr.m, pr.p, pr.b, pr.beta, pr.c, pr.alpha);
        let mp = m * p;
        let k = &self.constants;
        let get = |v: Option<T>| v.expect("checked in Envelope::new");
        if t < T::zero() {
            return (None, None);
        }

        match self.tag {
            EnvelopeTag::E1 => {
                if x < T::zero() || t <= T::zero() {
                    return (None, None);
                }
                let om = one - beta;
                // the upper barrier always carries (1+p)/(mp-beta), matching C2 zeta2^mu2 = A1
                let mu2 = (one + p) / (mp - beta);
                let mu1 = if pr.p_m_beta() > one + p { p / (mp - one) } else { mu2 };
                let zeta = x * t.powf(-(mp - beta) / ((one + p) * om));
                let scale = t.powf(one / om);
                let lo = get(k.c1) * scale * pow_nonneg(get(k.zeta1) - zeta, mu1);
                let hi = get(k.c2) * scale * pow_nonneg(get(k.zeta2) - zeta, mu2);
                (Some(lo), Some(hi))
            }
            EnvelopeTag::E3 => {
                let om = one - beta;
                let r = (c / self.c_star.expect("set")).powf(mp - beta);
                let head = c.powf(om) * pow_nonneg(-x, (one + p) * om / (mp - beta));
                let lo = pow_nonneg(head - b * om * t, one / om);
                let hi = pow_nonneg(head - b * om * (one - r) * t, one / om);
                (Some(lo), Some(hi))
            }
            EnvelopeTag::E21 => {
                let om = one - beta;
                let r = (c / self.c_star.expect("set")).powf(mp - beta);
                let head = c.powf(om) * pow_nonneg(-x, (one + p) * om / (mp - beta));
                let lo = pow_nonneg(head - b * om * (one - r) * t, one / om);
                let hi = c * pow_nonneg(-x, (one + p) / (mp - beta));
                (Some(lo), Some(hi))
            }
            EnvelopeTag::E4 => {
                if t <= T::zero() {
                    return (None, None);
                }
                let om = one - beta;
                let tau = t.powf((mp - beta) / ((one + p) * om));
                let e = (one + p) / (mp - beta);
                let lo = (x >= -get(k.ell0) * tau)
                    .then(|| self.c_star.expect("set") * pow_nonneg(-get(k.zeta3) * tau - x, e));
                let hi = (x >= -get(k.ell1) * tau).then(|| get(k.c3) * pow_nonneg(-get(k.zeta4) * tau - x, e));
                (lo, hi)
            }
            EnvelopeTag::E9 => {
                if x < T::zero() {
                    return (None, None);
                }
                if t == T::zero() {
                    return (Some(T::zero()), Some(T::zero()));
                }
                let denom = one + p - alpha * (mp - one);
                let xi = x * t.powf(-one / denom);
                let scale = t.powf(alpha / denom);
                let e = p / (mp - one);
                let lo = get(k.c4) * scale * pow_nonneg(get(k.xi3) - xi, e);
                let hi = get(k.c5) * scale * pow_nonneg(get(k.xi4) - xi, e);
                (Some(lo), Some(hi))
            }
            _ => self.eval_waiting(x, t),
        }
    }

    fn eval_waiting(&self, x: T, t: T) -> (Option<T>, Option<T>) {
        let one = T::one();
        let pr = &self.params;
        let (m, p, b, beta, c, alpha) = (pr.m, pr.p, pr.b, pr.beta, pr.c, pr.alpha);
        let mp = m * p;
        let w = self.window.expect("checked in Envelope::new");
        let eps = w.eps;
        if !(x > w.x_eps) || t > w.delta_eps {
            return (None, None);
        }
        let blow = one / (one - mp);
        let pos_or_none = |v: T| (v > T::zero()).then_some(v);
        match self.tag {
            EnvelopeTag::E5 => {
                let shape = pow_nonneg(-x, alpha) * (-b * t).exp();
                let bracket = one - eps / (b * (mp - one)) * (one - (-b * (mp - one) * t).exp());
                let hi = pos_or_none(bracket).map(|v| (c + eps) * shape * v.powf(blow));
                (Some((c - eps) * shape), hi)
            }
            EnvelopeTag::E6 => {
                let om = one - beta;
                let borderline = rel_eq(alpha, (one + p) / (mp - beta), lit(REGIME_RTOL));
                let g = |s: T| -> Option<T> {
                    if x >= T::zero() {
                        return Some(T::zero());
                    }
                    let cc = c + s;
                    let kappa = match (borderline, self.c_star) {
                        (true, Some(cs)) => (cc / cs).powf(mp - beta),
                        _ => T::zero(),
                    };
                    let bracket = cc.powf(om) * (-x).powf(alpha * om) + b * (beta - one) * (one - s - kappa) * t;
                    pos_or_none(bracket).map(|v| v.powf(one / om))
                };
                (g(-eps), g(eps))
            }
            EnvelopeTag::E7 => {
                let a = (one + p) / (mp - one);
                let shape = pow_nonneg(-x, a);
                let lo = pos_or_none(one - gamma_eps(pr, -eps) * t).map(|v| (c - eps) * shape * v.powf(blow));
                let hi = pos_or_none(one - gamma_eps(pr, eps) * t).map(|v| (c + eps) * shape * v.powf(blow));
                (lo, hi)
            }
            EnvelopeTag::E8 | EnvelopeTag::E10 => {
                let shape = pow_nonneg(-x, alpha);
                let hi = pos_or_none(one - eps * t).map(|v| (c + eps) * shape * v.powf(blow));
                (Some((c - eps) * shape), hi)
            }
            _ => unreachable!("non-waiting tags handled in eval"),
        }
    }
}

/// `gamma_eps = p(m+1)(m(1+p))^p (C+eps)^(mp-1) / (mp-1)^p + eps`, for either sign of `eps`.
fn gamma_eps<T: Real>(pr: &ProblemParams<T>, eps: T) -> T {
    let one = T::one();
    let (m, p) = (pr.m, pr.p);
    let mp = m * p;
    p * (m + one) * (m * (one + p)).powf(p) * (pr.c + eps).powf(mp - one) / (mp - one).powf(p) + eps
}

/// One-shot evaluation of an envelope.
pub fn envelope_eval<T: Real>(
    tag: EnvelopeTag,
    params: &ProblemParams<T>,
    constants: &ConstantSet<T>,
    window: Option<EpsWindow<T>>,
    x: T,
    t: T,
) -> Result<(Option<T>, Option<T>)> {
    Ok(Envelope::new(tag, *params, constants.clone(), window)?.eval(x, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{AnalyticSolution, SolutionKind};
    use crate::classification::{appendix_constants, critical_constant, AppendixInputs};

    fn params(m: f64, p: f64, beta: f64, b: f64, c: f64, alpha: f64) -> ProblemParams<f64> {
        ProblemParams::new(m, p, b, beta, c, alpha).unwrap()
    }

    fn env(tag: EnvelopeTag, pr: ProblemParams<f64>, inputs: AppendixInputs<f64>, w: Option<EpsWindow<f64>>) -> Envelope<f64> {
        let k = appendix_constants(&pr, &inputs).unwrap();
        Envelope::new(tag, pr, k, w).unwrap()
    }

    #[test]
    fn e3_e21_collapse_at_t0() {
        let cs = critical_constant(2.0, 2.0, 1.0, 0.2).unwrap();
        let pr = params(2.0, 2.0, 0.2, 1.0, 0.5 * cs, 3.0 / 3.8);
        let e3 = env(EnvelopeTag::E3, pr, AppendixInputs::default(), None);
        let cs2 = critical_constant(0.5, 2.0, 1.0, 0.2).unwrap();
        let pr2 = params(0.5, 2.0, 0.2, 1.0, 0.5 * cs2, 3.0 / 0.8);
        let e21 = env(EnvelopeTag::E21, pr2, AppendixInputs::default(), None);
        for &x in &[-2.0, -0.7, -0.1, 0.0, 0.5] {
            let (lo, hi) = e3.eval(x, 0.0);
            assert_eq!(lo, hi);
            let (lo, hi) = e21.eval(x, 0.0);
            assert!((lo.unwrap() - hi.unwrap()).abs() <= 1e-14 * hi.unwrap().max(1.0));
            let (lo, hi) = e3.eval(x, 0.3);
            assert!(lo.unwrap() <= hi.unwrap());
        }
    }

    #[test]
    fn e9_matches_u7_on_explicit_branch() {
        let (m, p) = (2.0, 2.0);
        let alpha = p / (m * p - 1.0);
        let c = 0.8;
        let pr = params(m, p, 0.5, 0.0, c, alpha);
        // A0 = w(0, 1) of the C = 1 explicit solution
        let unit = AnalyticSolution::new(SolutionKind::ExplicitU7, pr.with_c(1.0)).unwrap();
        let a0 = unit.eval(0.0, 1.0).unwrap();
        let e9 = env(
            EnvelopeTag::E9,
            pr,
            AppendixInputs {
                a0: Some(a0),
                ..Default::default()
            },
            None,
        );
        let sol = AnalyticSolution::new(SolutionKind::ExplicitU7, pr).unwrap();
        assert!((e9.constants.xi3.unwrap() - sol.front_constant()).abs() < 1e-12);
        for &t in &[0.1, 0.5, 1.0] {
            for &x in &[0.0, 0.1, 0.5, 1.0, 3.0] {
                let (lo, hi) = e9.eval(x, t);
                let u = sol.eval(x, t).unwrap();
                assert!((lo.unwrap() - u).abs() < 1e-12 && (hi.unwrap() - u).abs() < 1e-12, "{x} {t}");
            }
        }
    }

    #[test]
    fn waiting_envelopes_respect_window() {
        let pr = params(2.0, 3.0, 1.0, 0.5, 0.5, 1.2);
        let w = EpsWindow {
            eps: 0.05,
            x_eps: -1.0,
            delta_eps: 0.2,
        };
        let e5 = env(EnvelopeTag::E5, pr, AppendixInputs::default(), Some(w));
        assert_eq!(e5.eval(-1.5, 0.1), (None, None));
        assert_eq!(e5.eval(-0.5, 0.3), (None, None));
        let (lo, hi) = e5.eval(-0.5, 0.1);
        assert!(lo.unwrap() <= hi.unwrap());
        assert!(Envelope::new(EnvelopeTag::E5, pr, ConstantSet::default(), None).is_err());
        assert!(Envelope::new(EnvelopeTag::E8, pr, ConstantSet::default(), Some(w)).is_err());
    }

    #[test]
    fn e4_needs_catalog_values() {
        let pr = params(0.5, 2.0, 0.2, 1.0, 0.05, 3.75);
        assert!(Envelope::new(EnvelopeTag::E4, pr, ConstantSet::default(), None).is_err());
        let e4 = env(EnvelopeTag::E4, pr, AppendixInputs::default(), None);
        let tau = 0.5_f64.powf(1.0 / 3.0);
        let ell0 = e4.constants.ell0.unwrap();
        assert!(e4.eval(-1.01 * ell0 * tau, 0.5).0.is_none());
        assert!(e4.eval(-0.99 * ell0 * tau, 0.5).0.is_some());
    }
}
