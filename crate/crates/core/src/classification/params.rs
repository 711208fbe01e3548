use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Nonlinearity and initial-datum parameters of
/// `u_t = (|(u^m)_x|^(p-1) (u^m)_x)_x - b u^beta`, `u0 ~ C (-x)_+^alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams<T> {
    pub m: T,
    pub p: T,
    pub b: T,
    pub beta: T,
    /// Prefactor `C` of the initial power law.
    pub c: T,
    pub alpha: T,
}

impl<T: Real> ProblemParams<T> {
    pub fn new(m: T, p: T, b: T, beta: T, c: T, alpha: T) -> Result<Self> {
        let params = Self { m, p, b, beta, c, alpha };
        params.validate()?;
        Ok(params)
    }

    /// Checks finiteness, positivity and the slow-diffusion condition `mp >= 1`.
    ///
    /// `mp = 1` is admitted as the borderline case; formulas with `mp - 1`
    /// in a denominator report those constants as absent.
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("m", self.m),
            ("p", self.p),
            ("b", self.b),
            ("beta", self.beta),
            ("C", self.c),
            ("alpha", self.alpha),
        ];
        for (name, v) in named {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} is not finite")));
            }
        }
        for (name, v) in [("m", self.m), ("p", self.p), ("beta", self.beta), ("C", self.c), ("alpha", self.alpha)] {
            if v <= T::zero() {
                return Err(Error::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        if self.b < T::zero() {
            return Err(Error::InvalidParams(format!("b must be non-negative, got {}", self.b)));
        }
        if self.mp() < T::one() - lit(1e-12) {
            return Err(Error::InvalidParams(format!(
                "mp must be at least 1 (slow diffusion), got {}",
                self.mp()
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn mp(&self) -> T {
        self.m * self.p
    }

    /// `p (m + beta)`, compared against `1 + p` throughout the borderline analysis.
    #[inline]
    pub fn p_m_beta(&self) -> T {
        self.p * (self.m + self.beta)
    }

    pub fn with_c(mut self, c: T) -> Self {
        self.c = c;
        self
    }

    pub fn with_alpha(mut self, alpha: T) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_b(mut self, b: T) -> Self {
        self.b = b;
        self
    }

    /// Lossy conversion between scalar types.
    pub fn cast<U: Real>(&self) -> ProblemParams<U> {
        let f = |v: T| U::from_f64(v.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(U::nan);
        ProblemParams {
            m: f(self.m),
            p: f(self.p),
            b: f(self.b),
            beta: f(self.beta),
            c: f(self.c),
            alpha: f(self.alpha),
        }
    }
}
