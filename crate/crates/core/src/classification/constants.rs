//! Catalog of the explicit constants entering the interface bounds.
//!
//! Constants whose regime does not hold are left as `None`. Constants whose
//! regime holds but which depend on a measured input that was not supplied
//! (`A0 = w(0,1)`, `A1 = f_1(0)`, `eps`, `l`) are also `None`, and the name of
//! the missing input is recorded so [`ConstantSet::require`] can say why.

use super::{c_bar, classify, critical_constant, shrink_prefactor, ProblemParams, Region, THRESHOLD_RTOL};
use crate::error::{Error, Result};
use crate::scalar::{lit, rel_eq, Real};

/// Measured or user-chosen quantities some constants depend on.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AppendixInputs<T> {
    /// `A0 = w(0, 1)` of the `b = 0`, `C = 1` problem.
    pub a0: Option<T>,
    /// `A1 = f_1(0)` of the borderline self-similar profile.
    pub a1: Option<T>,
    pub eps: Option<T>,
    /// Curve parameter `l > l_*` of the shrinking-front estimates.
    pub ell: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstantSet<T> {
    pub xi1: Option<T>,
    pub xi2: Option<T>,
    pub xi3: Option<T>,
    pub xi4: Option<T>,
    pub zeta1: Option<T>,
    pub zeta2: Option<T>,
    pub zeta3: Option<T>,
    pub zeta4: Option<T>,
    pub zeta5: Option<T>,
    pub ell0: Option<T>,
    pub ell1: Option<T>,
    pub theta_star: Option<T>,
    pub delta_star: Option<T>,
    /// `Gamma = 1 - (C/C_*)^((mp-beta)/(1+p))`.
    pub big_gamma: Option<T>,
    pub r1: Option<T>,
    pub r2: Option<T>,
    pub c1: Option<T>,
    pub c2: Option<T>,
    pub c3: Option<T>,
    pub c4: Option<T>,
    pub c5: Option<T>,
    pub c6: Option<T>,
    pub c_bar: Option<T>,
    pub gamma_eps: Option<T>,
    pub ell_star: Option<T>,
    pub c_star: Option<T>,
    pub inputs: AppendixInputs<T>,
    missing: Vec<(&'static str, &'static str)>,
}

/// One self-consistency relation between catalog entries and its relative residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Identity<T> {
    pub name: &'static str,
    pub residual: T,
}

impl<T: Real> ConstantSet<T> {
    /// Looks up a constant by name, explaining its absence.
    pub fn require(&self, name: &str) -> Result<T> {
        if let Some(v) = self.get(name) {
            return Ok(v);
        }
        if let Some((_, input)) = self.missing.iter().find(|(c, _)| *c == name) {
            return Err(Error::MissingInput(input));
        }
        Err(Error::Regime {
            what: "appendix_constants",
            reason: format!("`{name}` is not defined for these parameters"),
        })
    }

    pub fn get(&self, name: &str) -> Option<T> {
        match name {
            "xi1" => self.xi1,
            "xi2" => self.xi2,
            "xi3" => self.xi3,
            "xi4" => self.xi4,
            "zeta1" => self.zeta1,
            "zeta2" => self.zeta2,
            "zeta3" => self.zeta3,
            "zeta4" => self.zeta4,
            "zeta5" => self.zeta5,
            "ell0" => self.ell0,
            "ell1" => self.ell1,
            "theta_star" => self.theta_star,
            "delta_star" => self.delta_star,
            "big_gamma" => self.big_gamma,
            "R1" => self.r1,
            "R2" => self.r2,
            "C1" => self.c1,
            "C2" => self.c2,
            "C3" => self.c3,
            "C4" => self.c4,
            "C5" => self.c5,
            "C6" => self.c6,
            "c_bar" => self.c_bar,
            "gamma_eps" => self.gamma_eps,
            "ell_star" => self.ell_star,
            "c_star" => self.c_star,
            _ => None,
        }
    }

    /// All present constants as `(name, value)` pairs, in catalog order.
    pub fn present(&self) -> Vec<(&'static str, T)> {
        const NAMES: [&str; 26] = [
            "xi1", "xi2", "xi3", "xi4", "zeta1", "zeta2", "zeta3", "zeta4", "zeta5", "ell0", "ell1",
            "theta_star", "delta_star", "big_gamma", "R1", "R2", "C1", "C2", "C3", "C4", "C5", "C6",
            "c_bar", "gamma_eps", "ell_star", "c_star",
        ];
        NAMES.iter().filter_map(|n| self.get(n).map(|v| (*n, v))).collect()
    }

    /// Relations that every present constant must satisfy.
    ///
    /// Each residual is relative to the magnitude of the quantities compared.
    pub fn identities(&self, params: &ProblemParams<T>) -> Vec<Identity<T>> {
        let one = T::one();
        let (m, p, b, beta, c, alpha) = (params.m, params.p, params.b, params.beta, params.c, params.alpha);
        let mp = m * p;
        let mut out = Vec::new();
        let mut push = |name: &'static str, lhs: T, rhs: T| {
            let scale = lhs.abs().max(rhs.abs()).max(T::min_positive_value());
            out.push(Identity {
                name,
                residual: (lhs - rhs).abs() / scale,
            });
        };

        if let (Some(x1), Some(x2), Some(x3), Some(x4)) = (self.xi1, self.xi2, self.xi3, self.xi4) {
            push("xi3/xi4 = xi1/xi2", x3 * x2, x4 * x1);
        }
        if let (Some(a0), Some(x3), Some(c4)) = (self.inputs.a0, self.xi3, self.c4) {
            let scale = c.powf((one + p) / (one + p - alpha * (mp - one))) * a0;
            push("C4 xi3^(p/(mp-1)) = C^(..) A0", c4 * x3.powf(p / (mp - one)), scale);
        }
        if let (Some(a0), Some(x4), Some(c5)) = (self.inputs.a0, self.xi4, self.c5) {
            let scale = c.powf((one + p) / (one + p - alpha * (mp - one))) * a0;
            push("C5 xi4^(p/(mp-1)) = C^(..) A0", c5 * x4.powf(p / (mp - one)), scale);
        }
        if let (Some(a1), Some(z1), Some(c1)) = (self.inputs.a1, self.zeta1, self.c1) {
            let mu = if params.p_m_beta() > one + p { p / (mp - one) } else { (one + p) / (mp - beta) };
            push("C1 zeta1^mu = A1", c1 * z1.powf(mu), a1);
        }
        if let (Some(a1), Some(z2), Some(c2)) = (self.inputs.a1, self.zeta2, self.c2) {
            push("C2 zeta2^((1+p)/(mp-beta)) = A1", c2 * z2.powf((one + p) / (mp - beta)), a1);
        }
        if let (Some(z4), Some(d), Some(g), Some(l1)) = (self.zeta4, self.delta_star, self.big_gamma, self.ell1) {
            push("zeta4 = delta_* Gamma l1", z4, d * g * l1);
        }
        if let (Some(c3), Some(d), Some(g)) = (self.c3, self.delta_star, self.big_gamma) {
            push("C3 (1 - delta_* Gamma)^((1+p)/(mp-beta)) = C", c3 * (one - d * g).powf((one + p) / (mp - beta)), c);
        }
        if let (Some(cs), Some(g)) = (self.c_star, self.big_gamma) {
            push("(1 - Gamma)^(1+p) = (C/C_*)^(mp-beta)", (one - g).powf(one + p), (c / cs).powf(mp - beta));
        }
        if let (Some(l0), Some(z3), Some(th), Some(cs)) = (self.ell0, self.zeta3, self.theta_star, self.c_star) {
            let e = (mp - beta) / ((one + p) * (one - beta));
            let rhs = cs.powf(-(mp - beta) / (one + p)) * (b * (one - beta) * th).powf(e);
            push("l0 - zeta3 = C_*^(..) (b(1-beta) theta_*)^(..)", l0 - z3, rhs);
        }
        if let (Some(r1), Some(r2), Some(cs)) = (self.r1, self.r2, self.c_star) {
            let k = (m + beta) * cs.powf(mp - beta);
            push("R1 (m+beta) C_*^(mp-beta) = 1+p-p(m+beta)", r1 * k, one + p - params.p_m_beta());
            push("R2 (m+beta) C_*^(mp-beta) = (1+p)(m+beta-1)", r2 * k, (one + p) * (m + beta - one));
        }
        if let Some(cb) = self.c_bar {
            // lambda(C_bar) = -1
            let lambda = cb.powf(mp - one) * p * (m + one) * (m * (one + p)).powf(p) / (mp - one).powf(one + p);
            push("lambda(C_bar) = -1", lambda, one);
        }
        if let (Some(ge), Some(eps)) = (self.gamma_eps, self.inputs.eps) {
            let k = p * (m + one) * (m * (one + p)).powf(p) / (mp - one).powf(p);
            push("gamma_eps - eps = k (C+eps)^(mp-1)", ge - eps, k * (c + eps).powf(mp - one));
        }
        if let Some(ls) = self.ell_star {
            let om = one - beta;
            push("C^(1-beta) l_*^(alpha(1-beta)) = b(1-beta)", c.powf(om) * ls.powf(alpha * om), b * om);
        }
        if let (Some(z5), Some(ls), Some(l), Some(eps)) = (self.zeta5, self.ell_star, self.inputs.ell, self.inputs.eps) {
            let om = one - beta;
            push("zeta5 / l = (l_*/l)^(alpha(1-beta)) (1-eps)", z5 / l, (ls / l).powf(alpha * om) * (one - eps));
        }
        if let (Some(d), Some(_)) = (self.delta_star, self.big_gamma) {
            if let Ok((_, gmax)) = delta_star(params) {
                let g = g_delta(params, d);
                push("g(delta_*) = max g", g, gmax);
            }
        }
        out
    }
}

fn regime(what: &'static str, reason: &str) -> Error {
    Error::Regime {
        what,
        reason: reason.into(),
    }
}

/// Auxiliary function maximized by `delta_*`.
fn g_delta<T: Real>(params: &ProblemParams<T>, delta: T) -> T {
    let one = T::one();
    let (p, m, beta) = (params.p, params.m, params.beta);
    let mpb = params.mp() - beta;
    let cs = critical_constant(m, p, params.b, beta).unwrap_or_else(|_| T::nan());
    let ratio = params.c / cs;
    let big_gamma = one - ratio.powf(mpb / (one + p));
    let e = (one + p - params.p_m_beta()) / mpb;
    let s = one - delta * big_gamma;
    let head = if delta == T::zero() { T::zero() } else { delta.powf(e) };
    head * (s - s.powf(-p) * ratio.powf(mpb))
}

/// Maximizer of `g(delta)` on `[0, 1]`: coarse 1000-point scan, then golden-section refinement.
///
/// Regime: `0 < beta < 1`, `b > 0`, `p(m+beta) < 1+p`, `0 < C < C_*`.
pub fn delta_star<T: Real>(params: &ProblemParams<T>) -> Result<(T, T)> {
    let one = T::one();
    if !(params.beta < one) || params.b <= T::zero() {
        return Err(regime("delta_star", "need 0 < beta < 1 and b > 0"));
    }
    if !(params.p_m_beta() < one + params.p) {
        return Err(regime("delta_star", "need p(m+beta) < 1+p"));
    }
    let cs = critical_constant(params.m, params.p, params.b, params.beta)?;
    if !(params.c < cs) || rel_eq(params.c, cs, lit(THRESHOLD_RTOL)) {
        return Err(regime("delta_star", "need 0 < C < C_*"));
    }

    const N: usize = 1000;
    let step = one / lit(N as f64);
    let mut best_k = 0;
    let mut best = g_delta(params, T::zero());
    for k in 1..=N {
        let v = g_delta(params, lit::<T>(k as f64) * step);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let mut lo = lit::<T>(best_k.saturating_sub(1) as f64) * step;
    let mut hi = lit::<T>((best_k + 1).min(N) as f64) * step;

    let inv_phi: T = lit(0.618_033_988_749_894_8);
    let tol: T = lit::<T>(1e-10).max(T::epsilon() * lit(4.0));
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = g_delta(params, x1);
    let mut f2 = g_delta(params, x2);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g_delta(params, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g_delta(params, x1);
        }
    }
    let mut d = (lo + hi) / lit(2.0);
    let mut gd = g_delta(params, d);
    if best > gd {
        // grid point beats the refined one only at the interval ends
        d = lit::<T>(best_k as f64) * step;
        gd = best;
    }
    Ok((d, gd))
}

/// Evaluates every constant whose regime holds for `params`.
pub fn appendix_constants<T: Real>(params: &ProblemParams<T>, inputs: &AppendixInputs<T>) -> Result<ConstantSet<T>> {
    params.validate()?;
    let report = classify(params)?;
    let one = T::one();
    let tol: T = lit(THRESHOLD_RTOL);
    let (m, p, b, beta, c, alpha) = (params.m, params.p, params.b, params.beta, params.c, params.alpha);
    let mp = m * p;
    let mpb = mp - beta;
    let slow = mp > one + tol;
    let mut set = ConstantSet {
        inputs: *inputs,
        ..Default::default()
    };

    if slow {
        set.c_bar = c_bar(m, p);
        match inputs.eps {
            Some(eps) => {
                set.gamma_eps = Some(p * (m + one) * (m * (one + p)).powf(p) * (c + eps).powf(mp - one) / (mp - one).powf(p) + eps)
            }
            None => set.missing.push(("gamma_eps", "eps")),
        }
    }

    // Self-similar expansion with b = 0 (and the expanding region it controls).
    if slow {
        let waiting = (one + p) / (mp - one);
        let explicit = p / (mp - one);
        if alpha < waiting && !rel_eq(alpha, waiting, tol) {
            let bound = (p / (alpha * (mp - one))).powf(one / (one + p));
            if alpha >= explicit || rel_eq(alpha, explicit, tol) {
                set.xi1 = Some(bound);
                set.xi2 = Some(one);
            } else {
                set.xi1 = Some(one);
                set.xi2 = Some(bound);
            }
            match inputs.a0 {
                Some(a0) => {
                    let denom = one + p - alpha * (mp - one);
                    let common = a0.powf((mp - one) / (one + p))
                        * ((mp.powf(p) * denom) / (mp - one).powf(p)).powf(one / (one + p))
                        * c.powf((mp - one) / denom);
                    let xi3 = common * set.xi1.unwrap();
                    let xi4 = common * set.xi2.unwrap();
                    let lead = c.powf((one + p) / denom) * a0;
                    set.xi3 = Some(xi3);
                    set.xi4 = Some(xi4);
                    set.c4 = Some(lead * xi3.powf(p / (one - mp)));
                    set.c5 = Some(lead * xi4.powf(p / (one - mp)));
                }
                None => {
                    for name in ["xi3", "xi4", "C4", "C5"] {
                        set.missing.push((name, "a0"));
                    }
                }
            }
        }
    }

    let absorbing_sublinear = b > T::zero() && beta < one && !rel_eq(beta, one, tol) && mpb > T::zero();
    if absorbing_sublinear {
        set.ell_star = shrink_prefactor(params).ok();
        if report.region == Region::R3 {
            match (inputs.eps, inputs.ell, set.ell_star) {
                (Some(eps), Some(ell), Some(ls)) if ell > ls => {
                    let om = one - beta;
                    let q = (ls / ell).powf(alpha * om) * (one - eps);
                    set.zeta5 = Some(q * ell);
                    set.c6 = Some((one - q).powf(-alpha) * (c.powf(om) - ell.powf(-alpha * om) * b * om * (one - eps)).powf(one / om));
                }
                (None, _, _) => {
                    set.missing.push(("zeta5", "eps"));
                    set.missing.push(("C6", "eps"));
                }
                (_, None, _) => {
                    set.missing.push(("zeta5", "ell"));
                    set.missing.push(("C6", "ell"));
                }
                _ => {}
            }
        }
    }

    if report.region.is_borderline() {
        let cs = report.c_star.expect("borderline regions carry C_*");
        set.c_star = Some(cs);
        let om = one - beta;
        let pmb = params.p_m_beta();
        let above = pmb > one + p && !rel_eq(pmb, one + p, tol);
        let below = pmb < one + p && !rel_eq(pmb, one + p, tol);
        if below {
            let scale = (m * (one + p)).powf(p) / (b * mpb.powf(one + p));
            set.r1 = Some(scale * p * (one + p - pmb));
            set.r2 = Some(scale * (one + p) * p * (m + beta - one));
        }
        match report.region {
            Region::R2Expand => match inputs.a1 {
                Some(a1) => {
                    let damp = (one + b * om * a1.powf(beta - one)).powf(-one / (one + p));
                    let wide = a1.powf((mp - one) / (one + p))
                        * damp
                        * ((m * (one + p)).powf(p) * p * (m + beta) * om).powf(one / (one + p))
                        / mpb;
                    if above && slow {
                        let z1 = a1.powf((mp - one) / (one + p)) * damp * (p * mp.powf(p) * om).powf(one / (one + p)) / (mp - one);
                        set.zeta1 = Some(z1);
                        set.c1 = Some(a1 * z1.powf(-p / (mp - one)));
                        set.zeta2 = Some(wide);
                        set.c2 = Some(a1 * wide.powf(-(one + p) / mpb));
                    } else if below {
                        set.zeta1 = Some(wide);
                        set.c1 = Some(a1 * wide.powf(-(one + p) / mpb));
                        set.zeta2 = Some((a1 / cs).powf(mpb / (one + p)));
                        set.c2 = Some(cs);
                    }
                }
                None => {
                    for name in ["zeta1", "zeta2", "C1", "C2"] {
                        set.missing.push((name, "a1"));
                    }
                }
            },
            Region::R2Shrink => {
                let e = mpb / ((one + p) * om);
                let lead = -c.powf(-mpb / (one + p));
                let r = (c / cs).powf(mpb);
                if above {
                    set.zeta1 = Some(lead * (b * om).powf(e));
                    set.zeta2 = Some(lead * (b * om * (one - r)).powf(e));
                } else if below {
                    let k = mpb * om / (one + p - pmb);
                    let ratio = (cs / c).powf(k);
                    let theta = (one - r) / (ratio - one);
                    let tail = (b * om * theta).powf(e);
                    let cs_pow = cs.powf(-mpb / (one + p));
                    set.theta_star = Some(theta);
                    set.ell0 = Some(cs_pow * ratio * tail);
                    set.zeta3 = Some(cs_pow * (ratio - one) * tail);
                    let big_gamma = one - (c / cs).powf(mpb / (one + p));
                    set.big_gamma = Some(big_gamma);
                    let (d, _) = delta_star(params)?;
                    set.delta_star = Some(d);
                    let s = one - d * big_gamma;
                    let ell1 = c.powf(-mpb / (one + p)) * (b * om / (d * big_gamma) * (s - s.powf(-p) * r)).powf(e);
                    set.ell1 = Some(ell1);
                    set.zeta4 = Some(d * big_gamma * ell1);
                    set.c3 = Some(c * s.powf(-(one + p) / mpb));
                }
            }
            _ => {}
        }
    }

    Ok(set)
}
