//! Short-time interface classification in the `(alpha, beta)` parameter plane.
//!
//! Everything here is a pure function of [`ProblemParams`]. The region
//! boundaries are
//!
//! ```text
//! (1+p)/(mp - min{1,beta})   expansion threshold
//! (1+p)/(mp - beta)          borderline (0 < beta < 1) / region 4c boundary
//! (1+p)/(mp - 1)             waiting-time threshold
//! p/(mp - 1)                 explicit travelling solution when b = 0
//! ```
//!
//! and threshold equality is decided with a relative tolerance of `1e-12`.

mod constants;
mod params;

use std::cmp::Ordering;
use std::fmt;

pub use constants::{appendix_constants, delta_star, AppendixInputs, ConstantSet, Identity};
pub use params::ProblemParams;

use crate::error::{Error, Result};
use crate::scalar::{lit, pow_nonneg, rel_eq, Real};

/// Relative tolerance for deciding that a parameter sits on a region boundary.
pub const THRESHOLD_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Expanding interface, `alpha < (1+p)/(mp - min{1,beta})`.
    R1,
    R2Expand,
    R2Shrink,
    /// `C = C_*` on the borderline: the initial datum is stationary.
    R2Stationary,
    /// Shrinking interface, absorption dominates.
    R3,
    R4a,
    R4b,
    R4c,
    R4d,
    /// `b = 0`, `alpha < (1+p)/(mp-1)`.
    B0Case1,
    /// `b = 0`, `alpha = (1+p)/(mp-1)`.
    B0Case2,
    /// `b = 0`, `alpha > (1+p)/(mp-1)`.
    B0Case3,
}

impl Region {
    pub fn label(self) -> &'static str {
        match self {
            Region::R1 => "R1",
            Region::R2Expand => "R2_expand",
            Region::R2Shrink => "R2_shrink",
            Region::R2Stationary => "R2_stationary",
            Region::R3 => "R3",
            Region::R4a => "R4a",
            Region::R4b => "R4b",
            Region::R4c => "R4c",
            Region::R4d => "R4d",
            Region::B0Case1 => "B0_case1",
            Region::B0Case2 => "B0_case2",
            Region::B0Case3 => "B0_case3",
        }
    }

    pub fn is_stationary(self) -> bool {
        matches!(
            self,
            Region::R2Stationary
                | Region::R4a
                | Region::R4b
                | Region::R4c
                | Region::R4d
                | Region::B0Case2
                | Region::B0Case3
        )
    }

    pub fn is_borderline(self) -> bool {
        matches!(self, Region::R2Expand | Region::R2Shrink | Region::R2Stationary)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Boundary values of the classification; `None` where the denominator vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds<T> {
    /// `(1+p)/(mp - min{1,beta})`
    pub expansion: Option<T>,
    /// `(1+p)/(mp - beta)`
    pub borderline: Option<T>,
    /// `(1+p)/(mp - 1)`
    pub waiting: Option<T>,
    /// `p/(mp - 1)`
    pub explicit_b0: Option<T>,
}

impl<T: Real> Thresholds<T> {
    pub fn of(params: &ProblemParams<T>) -> Self {
        let one = T::one();
        let mp = params.mp();
        let ratio = |num: T, den: T| if den > lit(1e-14) { Some(num / den) } else { None };
        Self {
            expansion: ratio(one + params.p, mp - params.beta.min(one)),
            borderline: ratio(one + params.p, mp - params.beta),
            waiting: ratio(one + params.p, mp - one),
            explicit_b0: ratio(params.p, mp - one),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionReport<T> {
    pub region: Region,
    pub thresholds: Thresholds<T>,
    /// Critical prefactor `C_*`, when `0 < beta < 1` and `b > 0`.
    pub c_star: Option<T>,
}

/// Compares `alpha` against a (possibly infinite) threshold with relative tolerance.
fn compare<T: Real>(alpha: T, threshold: Option<T>) -> Ordering {
    match threshold {
        None => Ordering::Less,
        Some(t) if rel_eq(alpha, t, lit(THRESHOLD_RTOL)) => Ordering::Equal,
        Some(t) => {
            if alpha < t {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    }
}

fn unclassified<T: Real>(params: &ProblemParams<T>) -> Error {
    let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
    Error::Unclassified {
        m: f(params.m),
        p: f(params.p),
        b: f(params.b),
        beta: f(params.beta),
        alpha: f(params.alpha),
    }
}

/// Assigns the region label of the `(alpha, beta)` classification.
pub fn classify<T: Real>(params: &ProblemParams<T>) -> Result<RegionReport<T>> {
    params.validate()?;
    let thresholds = Thresholds::of(params);
    let one = T::one();
    let tol = lit(THRESHOLD_RTOL);
    let beta_is_one = rel_eq(params.beta, one, tol);
    let c_star = if params.b > T::zero() && params.beta < one && !beta_is_one {
        critical_constant(params.m, params.p, params.b, params.beta).ok()
    } else {
        None
    };

    let region = if params.b == T::zero() {
        match compare(params.alpha, thresholds.waiting) {
            Ordering::Less => Region::B0Case1,
            Ordering::Equal => Region::B0Case2,
            Ordering::Greater => Region::B0Case3,
        }
    } else if compare(params.alpha, thresholds.expansion) == Ordering::Less {
        Region::R1
    } else if params.beta < one && !beta_is_one {
        match compare(params.alpha, thresholds.borderline) {
            Ordering::Equal => {
                let cs = c_star.ok_or_else(|| unclassified(params))?;
                if rel_eq(params.c, cs, tol) {
                    Region::R2Stationary
                } else if params.c > cs {
                    Region::R2Expand
                } else {
                    Region::R2Shrink
                }
            }
            Ordering::Greater => Region::R3,
            Ordering::Less => return Err(unclassified(params)),
        }
    } else if beta_is_one {
        match compare(params.alpha, thresholds.waiting) {
            Ordering::Equal => Region::R4a,
            Ordering::Greater => Region::R4b,
            Ordering::Less => return Err(unclassified(params)),
        }
    } else if params.beta < params.mp() && !rel_eq(params.beta, params.mp(), tol) {
        match compare(params.alpha, thresholds.borderline) {
            Ordering::Less => Region::R4d,
            _ => Region::R4c,
        }
    } else {
        Region::R4d
    };

    Ok(RegionReport {
        region,
        thresholds,
        c_star,
    })
}

/// `C_* = [ b (mp-beta)^(1+p) / ((m(1+p))^p p (m+beta)) ]^(1/(mp-beta))`.
pub fn critical_constant<T: Real>(m: T, p: T, b: T, beta: T) -> Result<T> {
    let one = T::one();
    if !(beta > T::zero() && beta < one) {
        return Err(Error::Regime {
            what: "critical_constant",
            reason: format!("need 0 < beta < 1, got {beta}"),
        });
    }
    let mpb = m * p - beta;
    if mpb <= T::zero() {
        return Err(Error::Regime {
            what: "critical_constant",
            reason: format!("need mp > beta, got mp - beta = {mpb}"),
        });
    }
    if b <= T::zero() {
        return Err(Error::Regime {
            what: "critical_constant",
            reason: format!("need b > 0, got {b}"),
        });
    }
    let num = b * mpb.powf(one + p);
    let den = (m * (one + p)).powf(p) * p * (m + beta);
    Ok((num / den).powf(one / mpb))
}

/// The `C_*` expression without the `beta < 1` restriction; `None` unless `mp > beta` and `b > 0`.
///
/// Used by the `1 < beta < mp` envelopes, where it enters through `kappa_eps`.
pub fn balance_constant<T: Real>(m: T, p: T, b: T, beta: T) -> Option<T> {
    let one = T::one();
    let mpb = m * p - beta;
    if mpb <= T::zero() || b <= T::zero() {
        return None;
    }
    let den = (m * (one + p)).powf(p) * p * (m + beta);
    Some((b * mpb.powf(one + p) / den).powf(one / mpb))
}

/// `C_bar = [ (mp-1)^(1+p) / (p (m+1) (m(1+p))^p) ]^(1/(mp-1))`; `None` when `mp <= 1`.
pub fn c_bar<T: Real>(m: T, p: T) -> Option<T> {
    let one = T::one();
    let mp1 = m * p - one;
    if mp1 <= lit(THRESHOLD_RTOL) {
        return None;
    }
    Some((mp1.powf(one + p) / (p * (m + one) * (m * (one + p)).powf(p))).powf(one / mp1))
}

/// `l_* = C^(-1/alpha) (b (1-beta))^(1/(alpha (1-beta)))`, the shrinking-front prefactor.
pub fn shrink_prefactor<T: Real>(params: &ProblemParams<T>) -> Result<T> {
    let one = T::one();
    if !(params.beta < one) || params.b <= T::zero() {
        return Err(Error::Regime {
            what: "shrink_prefactor",
            reason: "need 0 < beta < 1 and b > 0".into(),
        });
    }
    let om = one - params.beta;
    Ok(params.c.powf(-one / params.alpha) * (params.b * om).powf(one / (params.alpha * om)))
}

/// Front speed of the explicit travelling wave when `p(m+beta) = 1+p`:
/// `zeta_* = b (1-beta) C^(beta-1) ((C/C_*)^(mp-beta) - 1)`.
pub fn travelling_wave_speed<T: Real>(params: &ProblemParams<T>) -> Result<T> {
    let one = T::one();
    let cs = critical_constant(params.m, params.p, params.b, params.beta)?;
    let mpb = params.mp() - params.beta;
    Ok(params.b
        * (one - params.beta)
        * params.c.powf(params.beta - one)
        * ((params.c / cs).powf(mpb) - one))
}

/// How well the interface prefactor is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Prefactor<T> {
    Exact(T),
    Interval(T, T),
    ProfileDetermined,
}

/// Predicted short-time law `eta(t) ~ sign * prefactor * t^exponent`.
///
/// The prefactor is always reported as a magnitude; `sign` carries the
/// direction. Stationary regions have `sign = 0`, no exponent and an exact
/// zero prefactor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceLaw<T> {
    pub sign: i8,
    pub exponent: Option<T>,
    pub prefactor: Prefactor<T>,
}

impl<T: Real> InterfaceLaw<T> {
    fn stationary() -> Self {
        Self {
            sign: 0,
            exponent: None,
            prefactor: Prefactor::Exact(T::zero()),
        }
    }

    /// Evaluates `sign * prefactor * t^exponent` when the prefactor is exact.
    pub fn eval(&self, t: T) -> Option<T> {
        match (self.exponent, self.prefactor) {
            (_, Prefactor::Exact(v)) if self.sign == 0 => Some(v),
            (Some(e), Prefactor::Exact(v)) => Some(T::from_i8(self.sign)? * v * t.powf(e)),
            _ => None,
        }
    }
}

/// Time exponent of the expanding self-similar front, `1/(1+p-alpha(mp-1))`.
pub fn expansion_exponent<T: Real>(params: &ProblemParams<T>) -> T {
    T::one() / (T::one() + params.p - params.alpha * (params.mp() - T::one()))
}

/// Time exponent on the borderline, `(mp-beta)/((1+p)(1-beta))`.
pub fn borderline_exponent<T: Real>(params: &ProblemParams<T>) -> T {
    (params.mp() - params.beta) / ((T::one() + params.p) * (T::one() - params.beta))
}

pub fn interface_law<T: Real>(report: &RegionReport<T>, params: &ProblemParams<T>) -> Result<InterfaceLaw<T>> {
    let one = T::one();
    let tol = lit(THRESHOLD_RTOL);
    let law = match report.region {
        Region::R1 | Region::B0Case1 => {
            let exponent = expansion_exponent(params);
            let explicit = report
                .thresholds
                .explicit_b0
                .map(|a| rel_eq(params.alpha, a, tol))
                .unwrap_or(false);
            let prefactor = if explicit {
                let mp = params.mp();
                Prefactor::Exact(params.c.powf(mp - one) * pow_nonneg(mp / (mp - one), params.p))
            } else {
                Prefactor::ProfileDetermined
            };
            InterfaceLaw {
                sign: 1,
                exponent: Some(exponent),
                prefactor,
            }
        }
        Region::R2Expand | Region::R2Shrink => {
            let sign = if report.region == Region::R2Expand { 1 } else { -1 };
            let exponent = borderline_exponent(params);
            let pmb = params.p_m_beta();
            let prefactor = if rel_eq(pmb, one + params.p, tol) {
                Prefactor::Exact(travelling_wave_speed(params)?.abs())
            } else if sign < 0 {
                let consts = appendix_constants(params, &AppendixInputs::default())?;
                if pmb > one + params.p {
                    match (consts.zeta1, consts.zeta2) {
                        (Some(z1), Some(z2)) => Prefactor::Interval(z2.abs(), z1.abs()),
                        _ => Prefactor::ProfileDetermined,
                    }
                } else {
                    match (consts.zeta3, consts.zeta4) {
                        (Some(z3), Some(z4)) => Prefactor::Interval(z4, z3),
                        _ => Prefactor::ProfileDetermined,
                    }
                }
            } else {
                Prefactor::ProfileDetermined
            };
            InterfaceLaw {
                sign,
                exponent: Some(exponent),
                prefactor,
            }
        }
        Region::R3 => InterfaceLaw {
            sign: -1,
            exponent: Some(one / (params.alpha * (one - params.beta))),
            prefactor: Prefactor::Exact(shrink_prefactor(params)?),
        },
        Region::R2Stationary
        | Region::R4a
        | Region::R4b
        | Region::R4c
        | Region::R4d
        | Region::B0Case2
        | Region::B0Case3 => InterfaceLaw::stationary(),
    };
    Ok(law)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: f64, p: f64, beta: f64, b: f64, c: f64, alpha: f64) -> ProblemParams<f64> {
        ProblemParams::new(m, p, b, beta, c, alpha).unwrap()
    }

    #[test]
    fn worked_examples_classify() {
        assert_eq!(classify(&params(4.0, 2.0, 0.5, 0.5, 1.0, 0.2)).unwrap().region, Region::R1);
        assert_eq!(classify(&params(4.0, 2.0, 0.5, 0.8, 0.5, 0.8)).unwrap().region, Region::R3);
        assert_eq!(classify(&params(2.0, 3.0, 1.0, 0.5, 0.5, 0.8)).unwrap().region, Region::R4a);
    }

    #[test]
    fn borderline_direction_follows_c_star() {
        let base = params(2.5, 0.5, 0.5, 1.0, 0.5, 2.0);
        let cs = critical_constant(2.5, 0.5, 1.0, 0.5).unwrap();
        assert_eq!(classify(&base).unwrap().region, Region::R2Expand);
        assert_eq!(classify(&base.with_c(0.06)).unwrap().region, Region::R2Shrink);
        assert_eq!(classify(&base.with_c(cs)).unwrap().region, Region::R2Stationary);
        assert_eq!(classify(&base.with_c(cs + 1e-9)).unwrap().region, Region::R2Expand);
        assert_eq!(classify(&base.with_c(cs - 1e-9)).unwrap().region, Region::R2Shrink);
    }

    #[test]
    fn waiting_subcases() {
        // beta = 1, alpha above threshold
        assert_eq!(classify(&params(2.0, 3.0, 1.0, 0.5, 0.5, 1.0)).unwrap().region, Region::R4b);
        // 1 < beta < mp: boundaries at 0.8 and 4/(6-2) = 1
        assert_eq!(classify(&params(2.0, 3.0, 2.0, 0.5, 0.5, 0.9)).unwrap().region, Region::R4d);
        assert_eq!(classify(&params(2.0, 3.0, 2.0, 0.5, 0.5, 1.0)).unwrap().region, Region::R4c);
        assert_eq!(classify(&params(2.0, 3.0, 2.0, 0.5, 0.5, 1.5)).unwrap().region, Region::R4c);
        // beta >= mp
        assert_eq!(classify(&params(2.0, 3.0, 7.0, 0.5, 0.5, 0.8)).unwrap().region, Region::R4d);
        // below the waiting threshold with beta >= 1 the interface expands
        assert_eq!(classify(&params(2.0, 3.0, 2.0, 0.5, 0.5, 0.5)).unwrap().region, Region::R1);
    }

    #[test]
    fn zero_absorption_cases() {
        let p = params(4.0, 2.0, 0.5, 0.0, 1.0, 0.2);
        assert_eq!(classify(&p).unwrap().region, Region::B0Case1);
        assert_eq!(classify(&p.with_alpha(3.0 / 7.0)).unwrap().region, Region::B0Case2);
        assert_eq!(classify(&p.with_alpha(0.5)).unwrap().region, Region::B0Case3);
    }

    #[test]
    fn boundary_assigned_within_tolerance() {
        let thr = 3.0 / 7.5; // (1+p)/(mp-beta) for m=4, p=2, beta=0.5
        let p = params(4.0, 2.0, 0.5, 0.5, 1.0, thr * (1.0 + 1e-13));
        assert!(classify(&p).unwrap().region.is_borderline());
        let p = params(4.0, 2.0, 0.5, 0.5, 1.0, thr * (1.0 + 1e-9));
        assert_eq!(classify(&p).unwrap().region, Region::R3);
    }

    #[test]
    fn critical_constant_reported_values() {
        let cases = [
            ((2.5, 0.5, 1.0, 0.5), 0.13572),
            ((2.0, 2.0, 1.0, 0.2), 0.75655),
            ((0.5, 2.0, 1.0, 0.2), 0.1032),
        ];
        for ((m, p, b, beta), want) in cases {
            let got: f64 = critical_constant(m, p, b, beta).unwrap();
            assert!(((got - want) / want).abs() < 1e-4, "{got} vs {want}");
        }
    }

    #[test]
    fn critical_constant_domain_errors() {
        assert!(critical_constant(2.0, 2.0, 1.0, 1.0).is_err());
        assert!(critical_constant(0.2, 0.5, 1.0, 0.5).is_err());
        assert!(critical_constant(2.0, 2.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn interface_laws() {
        let r1 = params(4.0, 2.0, 0.5, 0.5, 1.0, 0.2);
        let law = interface_law(&classify(&r1).unwrap(), &r1).unwrap();
        assert_eq!(law.sign, 1);
        assert!((law.exponent.unwrap() - 0.625).abs() < 1e-14);
        assert_eq!(law.prefactor, Prefactor::ProfileDetermined);

        let r3 = params(4.0, 2.0, 0.5, 0.8, 0.5, 0.8);
        let law = interface_law(&classify(&r3).unwrap(), &r3).unwrap();
        assert_eq!(law.sign, -1);
        assert!((law.exponent.unwrap() - 2.5).abs() < 1e-14);
        match law.prefactor {
            Prefactor::Exact(l) => assert!((l - 0.240_7).abs() < 1e-4, "{l}"),
            other => panic!("{other:?}"),
        }

        let r2 = params(0.5, 2.0, 0.2, 1.0, 0.4, 3.75);
        let law = interface_law(&classify(&r2).unwrap(), &r2).unwrap();
        assert_eq!(law.sign, 1);
        assert!((law.exponent.unwrap() - 1.0 / 3.0).abs() < 1e-14);

        let r4 = params(2.0, 3.0, 1.0, 0.5, 0.5, 0.8);
        let law = interface_law(&classify(&r4).unwrap(), &r4).unwrap();
        assert_eq!(law.sign, 0);
        assert!(law.exponent.is_none());
    }

    #[test]
    fn explicit_b0_prefactor_is_exact() {
        // alpha = p/(mp-1) = 2/7
        let p = params(4.0, 2.0, 0.5, 0.0, 1.3, 2.0 / 7.0);
        let law = interface_law(&classify(&p).unwrap(), &p).unwrap();
        let want = 1.3_f64.powf(7.0) * (8.0_f64 / 7.0).powi(2);
        match law.prefactor {
            Prefactor::Exact(v) => assert!((v - want).abs() < 1e-12 * want),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn travelling_wave_speed_sign() {
        let p = params(2.5, 0.5, 0.5, 1.0, 0.5, 2.0);
        let z = travelling_wave_speed(&p).unwrap();
        assert!((z - 1.173).abs() < 1e-3, "{z}");
        assert!(travelling_wave_speed(&p.with_c(0.06)).unwrap() < 0.0);
    }

    #[test]
    fn shrinking_borderline_gets_interval() {
        // p(m+beta) > 1+p, C < C_*
        let cs = critical_constant(2.0, 2.0, 1.0, 0.2).unwrap();
        let p = params(2.0, 2.0, 0.2, 1.0, 0.2, 3.0 / 3.8);
        assert!(0.2 < cs);
        let law = interface_law(&classify(&p).unwrap(), &p).unwrap();
        match law.prefactor {
            Prefactor::Interval(lo, hi) => assert!(0.0 < lo && lo <= hi),
            other => panic!("{other:?}"),
        }
        // p(m+beta) < 1+p, C < C_*
        let p = params(0.5, 2.0, 0.2, 1.0, 0.05, 3.75);
        let law = interface_law(&classify(&p).unwrap(), &p).unwrap();
        match law.prefactor {
            Prefactor::Interval(lo, hi) => assert!(0.0 < lo && lo <= hi, "{lo} {hi}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn generic_over_f32() {
        let p = ProblemParams::<f32>::new(4.0, 2.0, 0.5, 0.5, 1.0, 0.2).unwrap();
        assert_eq!(classify(&p).unwrap().region, Region::R1);
        let cs = critical_constant(2.5_f32, 0.5, 1.0, 0.5).unwrap();
        assert!((cs - 0.13572).abs() < 1e-4);
    }
}
