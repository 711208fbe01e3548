//! Third-order TVD Runge–Kutta stepping and the evolution driver.

use super::grid::Field;
use super::interface::locate_interface;
use super::operator::Workspace;
use crate::classification::ProblemParams;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Floor for the diffusivity in the adaptive step rule.
pub const DIFFUSIVITY_FLOOR: f64 = 1e-12;
pub const DEFAULT_CFL: f64 = 0.4;
pub const DEFAULT_INTERFACE_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeStep<T> {
    Fixed(T),
    /// `dt = sigma dx^2 / max(D_max, 1e-12)`.
    Cfl(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl<T> {
    pub step: TimeStep<T>,
    pub clip_negative: bool,
    pub interface_threshold: T,
    /// Abort after this many steps; `None` for no limit.
    pub max_steps: Option<usize>,
}

impl<T: Real> Default for StepControl<T> {
    fn default() -> Self {
        Self::cfl(lit(DEFAULT_CFL))
    }
}

impl<T: Real> StepControl<T> {
    pub fn fixed(dt: T) -> Self {
        Self {
            step: TimeStep::Fixed(dt),
            clip_negative: true,
            interface_threshold: lit(DEFAULT_INTERFACE_THRESHOLD),
            max_steps: None,
        }
    }

    pub fn cfl(sigma: T) -> Self {
        Self {
            step: TimeStep::Cfl(sigma),
            ..Self::fixed(T::one())
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.step {
            TimeStep::Fixed(dt) => dt > T::zero() && dt.is_finite(),
            TimeStep::Cfl(s) => s > T::zero() && s <= lit(0.9),
        };
        if !ok {
            return Err(Error::InvalidParams(format!("bad step control {:?}", self.step)));
        }
        if !(self.interface_threshold > T::zero()) {
            return Err(Error::InvalidParams("interface threshold must be positive".into()));
        }
        Ok(())
    }
}

#[inline]
fn clip<T: Real>(u: &mut [T]) {
    for v in u.iter_mut() {
        if *v < T::zero() {
            *v = T::zero();
        }
    }
}

/// One TVD-RK3 step of `u' = L(u)` for an arbitrary operator, in place.
///
/// `l0` may hold `L(u)` already; it is recomputed when `None`.
pub fn rk3_step_with<T: Real, F>(u: &mut [T], dt: T, mut op: F, l0: Option<&[T]>, clip_negative: bool) -> Result<()>
where
    F: FnMut(&[T], &mut [T]),
{
    let n = u.len();
    let mut l = vec![T::zero(); n];
    match l0 {
        Some(v) => l.copy_from_slice(v),
        None => op(u, &mut l),
    }
    let mut u1: Vec<T> = u.iter().zip(&l).map(|(&a, &b)| a + dt * b).collect();
    if clip_negative {
        clip(&mut u1);
    }
    op(&u1, &mut l);
    let (q3, q1): (T, T) = (lit(0.75), lit(0.25));
    let mut u2: Vec<T> = (0..n).map(|i| q3 * u[i] + q1 * (u1[i] + dt * l[i])).collect();
    if clip_negative {
        clip(&mut u2);
    }
    op(&u2, &mut l);
    let (a, b): (T, T) = (lit(1.0 / 3.0), lit(2.0 / 3.0));
    for i in 0..n {
        u[i] = a * u[i] + b * (u2[i] + dt * l[i]);
    }
    if clip_negative {
        clip(u);
    }
    Ok(())
}

fn check_finite<T: Real>(u: &[T], t: T) -> Result<()> {
    match u.iter().position(|v| !v.is_finite()) {
        Some(node) => Err(Error::Instability {
            node,
            t: t.to_f64().unwrap_or(f64::NAN),
        }),
        None => Ok(()),
    }
}

/// Reusable RK3 integrator for the PDE right-hand side.
#[derive(Debug, Clone)]
pub struct Stepper<T> {
    pub params: ProblemParams<T>,
    ws: Workspace<T>,
    l: Vec<T>,
    u1: Vec<T>,
    u2: Vec<T>,
}

impl<T: Real> Stepper<T> {
    pub fn new(params: ProblemParams<T>, n: usize) -> Self {
        Self {
            params,
            ws: Workspace::new(n),
            l: vec![T::zero(); n],
            u1: vec![T::zero(); n],
            u2: vec![T::zero(); n],
        }
    }

    /// Advances `field` by one step whose size is chosen by `choose(D_max)`
    /// after `L(u)` is known; returns the step taken.
    pub fn step<F: FnOnce(T) -> T>(&mut self, field: &mut Field<T>, choose: F, clip_negative: bool) -> Result<T> {
        let n = field.u.len();
        if self.l.len() != n {
            *self = Self::new(self.params, n);
        }
        let dx = field.grid.dx;
        let pr = self.params;
        let d_max = self.ws.rhs_into(&field.u, dx, &pr, &mut self.l);
        let dt = choose(d_max);

        for i in 0..n {
            self.u1[i] = field.u[i] + dt * self.l[i];
        }
        if clip_negative {
            clip(&mut self.u1);
        }
        self.ws.rhs_into(&self.u1, dx, &pr, &mut self.l);
        let (q3, q1): (T, T) = (lit(0.75), lit(0.25));
        for i in 0..n {
            self.u2[i] = q3 * field.u[i] + q1 * (self.u1[i] + dt * self.l[i]);
        }
        if clip_negative {
            clip(&mut self.u2);
        }
        self.ws.rhs_into(&self.u2, dx, &pr, &mut self.l);
        let (a, b): (T, T) = (lit(1.0 / 3.0), lit(2.0 / 3.0));
        for i in 0..n {
            field.u[i] = a * field.u[i] + b * (self.u2[i] + dt * self.l[i]);
        }
        if clip_negative {
            clip(&mut field.u);
        }
        field.t = field.t + dt;
        check_finite(&field.u, field.t)?;
        Ok(dt)
    }
}

/// One RK3 step of the PDE with a fixed `dt`.
pub fn rk3_step<T: Real>(field: &Field<T>, dt: T, params: &ProblemParams<T>, clip_negative: bool) -> Result<Field<T>> {
    if !(dt > T::zero()) {
        return Err(Error::InvalidParams(format!("dt must be positive, got {dt}")));
    }
    let mut out = field.clone();
    Stepper::new(*params, field.u.len()).step(&mut out, |_| dt, clip_negative)?;
    Ok(out)
}

/// `sigma dx^2 / max(D, 1e-12)`.
pub fn cfl_dt<T: Real>(sigma: T, dx: T, d_max: T) -> T {
    sigma * dx * dx / d_max.max(lit(DIFFUSIVITY_FLOOR))
}

/// Callbacks invoked by [`evolve`].
pub trait Observer<T> {
    /// After every accepted step.
    fn on_step(&mut self, _field: &Field<T>, _dt: T) {}
    /// When the solution lands exactly on a requested output time.
    fn on_output(&mut self, _field: &Field<T>) {}
}

impl<T> Observer<T> for () {}

/// Stores every output snapshot.
#[derive(Debug, Clone, Default)]
pub struct Snapshots<T> {
    pub fields: Vec<Field<T>>,
}

impl<T: Real> Observer<T> for Snapshots<T> {
    fn on_output(&mut self, field: &Field<T>) {
        self.fields.push(field.clone());
    }
}

/// Records `(t, eta)` after every step; `eta` is absent when nothing exceeds the threshold.
#[derive(Debug, Clone)]
pub struct InterfaceTrack<T> {
    pub threshold: T,
    pub samples: Vec<(T, Option<T>)>,
}

impl<T: Real> InterfaceTrack<T> {
    pub fn new(threshold: T) -> Self {
        Self {
            threshold,
            samples: Vec::new(),
        }
    }

    fn record(&mut self, field: &Field<T>) {
        if self.samples.last().map(|s| s.0) != Some(field.t) {
            self.samples.push((field.t, locate_interface(field, self.threshold)));
        }
    }
}

impl<T: Real> Observer<T> for InterfaceTrack<T> {
    fn on_step(&mut self, field: &Field<T>, _dt: T) {
        self.record(field);
    }
    fn on_output(&mut self, field: &Field<T>) {
        self.record(field);
    }
}

/// Fans out to two observers.
impl<T: Copy, A: Observer<T>, B: Observer<T>> Observer<T> for (A, B) {
    fn on_step(&mut self, field: &Field<T>, dt: T) {
        self.0.on_step(field, dt);
        self.1.on_step(field, dt);
    }
    fn on_output(&mut self, field: &Field<T>) {
        self.0.on_output(field);
        self.1.on_output(field);
    }
}

#[derive(Debug, Clone)]
pub struct Evolution<T> {
    pub field: Field<T>,
    pub steps: usize,
    pub min_dt: T,
    pub max_dt: T,
}

/// Integrates from `u0.t` to `t_end`, landing exactly on each of `output_times`.
pub fn evolve<T: Real, O: Observer<T> + ?Sized>(
    u0: Field<T>,
    params: &ProblemParams<T>,
    control: &StepControl<T>,
    t_end: T,
    output_times: &[T],
    observer: &mut O,
) -> Result<Evolution<T>> {
    control.validate()?;
    params.validate()?;
    if !(t_end > u0.t) {
        return Err(Error::InvalidParams(format!("t_end {t_end} must exceed the start time {}", u0.t)));
    }
    let mut targets: Vec<T> = output_times.iter().copied().filter(|&t| t >= u0.t && t <= t_end).collect();
    targets.sort_by(|a, b| a.partial_cmp(b).expect("finite output times"));
    targets.dedup();
    if targets.last() != Some(&t_end) {
        targets.push(t_end);
    }
    let emit: Vec<bool> = targets.iter().map(|t| output_times.contains(t)).collect();

    let mut field = u0;
    let dx = field.grid.dx;
    let mut stepper = Stepper::new(*params, field.u.len());
    let mut steps = 0usize;
    let (mut min_dt, mut max_dt) = (T::infinity(), T::zero());
    let snap: T = lit(1e-12);

    for (k, &target) in targets.iter().enumerate() {
        while field.t < target {
            if let Some(limit) = control.max_steps {
                if steps >= limit {
                    return Err(Error::Integration(format!("step limit {limit} reached at t = {}", field.t)));
                }
            }
            let remaining = target - field.t;
            let step = control.step;
            let dt = stepper.step(
                &mut field,
                |d_max| {
                    let dt = match step {
                        TimeStep::Fixed(dt) => dt,
                        TimeStep::Cfl(sigma) => cfl_dt(sigma, dx, d_max),
                    };
                    dt.min(remaining)
                },
                control.clip_negative,
            )?;
            if (target - field.t).abs() <= snap * target.abs().max(T::one()) {
                field.t = target;
            }
            steps += 1;
            if dt < remaining {
                min_dt = min_dt.min(dt);
            }
            max_dt = max_dt.max(dt);
            observer.on_step(&field, dt);
        }
        if emit[k] {
            observer.on_output(&field);
        }
    }
    Ok(Evolution {
        field,
        steps,
        min_dt,
        max_dt,
    })
}
