//! Self-similar profiles: seeding from solver output, forward integration of
//! the profile ODEs, and the travelling-wave phase plane.

mod ode;
mod phase;
mod seed;

pub use ode::{integrate_region1, integrate_region2, profile_residual, region1_scaling, FRONT_F_FLOOR, FRONT_SLOPE_CAP};
pub use phase::{phase_plane, wave_profile, wave_abscissa, PhasePlaneTable, PHASE_SEED_X};
pub use seed::{seed_from_pde, SeedSample};

use crate::classification::ProblemParams;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default fixed step of the profile integrators.
pub const DEFAULT_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OdeKind {
    Region1,
    Region2,
    TravelingWavePhase,
}

/// Exponents of the ansatz `u = t^a f(x t^(-c))` and the absorption weight
/// kept in the profile equation
/// `(phi((f^m)'))' = a f - c xi f' + absorption f^beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity<T> {
    pub kind: OdeKind,
    pub a: T,
    pub c: T,
    pub absorption: T,
}

impl<T: Real> Similarity<T> {
    /// Expanding front: `a = alpha/D`, `c = 1/D`, `D = 1+p-alpha(mp-1)`, no absorption.
    pub fn region1(params: &ProblemParams<T>) -> Result<Self> {
        let d = T::one() + params.p - params.alpha * (params.mp() - T::one());
        if !(d > T::zero()) {
            return Err(Error::Regime {
                what: "region-1 profile",
                reason: "need alpha < (1+p)/(mp-1)".into(),
            });
        }
        Ok(Self {
            kind: OdeKind::Region1,
            a: params.alpha / d,
            c: T::one() / d,
            absorption: T::zero(),
        })
    }

    /// Borderline: `a = 1/(1-beta)`, `c = (mp-beta)/((1+p)(1-beta))`, absorption `b`.
    pub fn region2(params: &ProblemParams<T>) -> Result<Self> {
        let om = T::one() - params.beta;
        if !(om > T::zero()) {
            return Err(Error::Regime {
                what: "region-2 profile",
                reason: "need 0 < beta < 1".into(),
            });
        }
        Ok(Self {
            kind: OdeKind::Region2,
            a: T::one() / om,
            c: (params.mp() - params.beta) / ((T::one() + params.p) * om),
            absorption: params.b,
        })
    }
}

/// Profile value and slope at the abscissa `at`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Seed<T> {
    pub at: T,
    pub f: T,
    pub fp: T,
}

impl<T: Real> Seed<T> {
    /// Seed at the origin.
    pub fn origin(f: T, fp: T) -> Self {
        Self { at: T::zero(), f, fp }
    }
}

/// Sampled profile `(xi_j, f_j)` with its front.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTable<T> {
    pub samples: Vec<(T, T)>,
    /// Abscissa of the smallest recorded `f`.
    pub front: T,
    pub seed: Seed<T>,
    pub kind: OdeKind,
    pub similarity: Similarity<T>,
    pub params: ProblemParams<T>,
    pub step: T,
    /// Front from the same integration at half the step.
    pub half_step_front: T,
}

impl<T: Real> ProfileTable<T> {
    /// `|front(h) - front(h/2)|`.
    pub fn refinement_change(&self) -> T {
        (self.front - self.half_step_front).abs()
    }

    /// Linear interpolation of `f` at `xi`; `None` outside the table.
    pub fn eval(&self, xi: T) -> Option<T> {
        let s = &self.samples;
        let (first, last) = (s.first()?.0, s.last()?.0);
        if xi < first || xi > last {
            return None;
        }
        let k = s.partition_point(|&(x, _)| x <= xi).clamp(1, s.len() - 1);
        let (x0, f0) = s[k - 1];
        let (x1, f1) = s[k];
        if x1 == x0 {
            return Some(f0);
        }
        Some(f0 + (f1 - f0) * (xi - x0) / (x1 - x0))
    }
}
