//! Flat `key = value` scenario files.
//!
//! ```text
//! # comment
//! name = region1
//! m = 4
//! ...
//! output_times = 0.05, 0.1, 0.2
//! ic.kind = power
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use ddpe_core::analytic::SolutionKind;
use ddpe_core::weno::{Grid, StepControl, DEFAULT_INTERFACE_THRESHOLD};
use ddpe_core::{Grid64, Params};

use crate::error::{HarnessError, Result};

pub const DEFAULT_TAPER_CENTER: f64 = -1.0;
pub const DEFAULT_TAPER_WIDTH: f64 = 0.5;
pub const DEFAULT_SEED_TIMES: [f64; 3] = [0.01, 0.02, 0.03];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IcSpec {
    /// Point-source solution sampled at `t0`.
    Ips { gamma: f64, t0: f64 },
    /// `C(-x)_+^alpha` brought to zero on the left by a tanh taper.
    PowerFront {
        c: f64,
        alpha: f64,
        taper_center: f64,
        taper_width: f64,
    },
    /// A closed-form solution sampled at `t0`.
    Explicit { kind: SolutionKind, t0: f64 },
}

impl IcSpec {
    pub fn start_time(&self) -> f64 {
        match *self {
            IcSpec::Ips { t0, .. } | IcSpec::Explicit { t0, .. } => t0,
            IcSpec::PowerFront { .. } => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub params: Params,
    pub grid: Grid64,
    pub control: StepControl<f64>,
    pub ic: IcSpec,
    pub t_end: f64,
    pub output_times: Vec<f64>,
    /// Fit window `[t_a, t_b]`; defaults to `[0.02, 0.2] t_end`.
    pub fit_window: (f64, f64),
    /// Times whose solver values seed the profile integration; by default
    /// `DEFAULT_SEED_TIMES` after the start time.
    pub seed_times: Vec<f64>,
    /// Profile abscissa where the seed is taken.
    pub seed_anchor: f64,
}

const REQUIRED: [&str; 12] = [
    "name", "m", "p", "b", "beta", "C", "alpha", "x_left", "x_right", "n", "t_end", "output_times",
];

const OPTIONAL: [&str; 14] = [
    "dt",
    "cfl",
    "clip",
    "threshold",
    "fit_window",
    "seed_times",
    "seed_anchor",
    "max_steps",
    "ic.kind",
    "ic.taper_center",
    "ic.taper_width",
    "ic.gamma",
    "ic.t0",
    "ic.solution",
];

struct Entries {
    map: BTreeMap<String, (usize, String)>,
}

impl Entries {
    fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return Err(HarnessError::Config {
                    line,
                    msg: format!("expected `key = value`, got `{body}`"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if !REQUIRED.contains(&key) && !OPTIONAL.contains(&key) {
                return Err(HarnessError::Config {
                    line,
                    msg: format!("unknown key `{key}`"),
                });
            }
            if let Some((first, _)) = map.get(key) {
                return Err(HarnessError::Config {
                    line,
                    msg: format!("duplicate key `{key}` (first set on line {first})"),
                });
            }
            map.insert(key.to_string(), (line, value.to_string()));
        }
        Ok(Self { map })
    }

    fn line(&self, key: &str) -> usize {
        self.map.get(key).map(|e| e.0).unwrap_or(0)
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|e| e.1.as_str())
    }

    fn num(&self, key: &str) -> Result<Option<f64>> {
        let Some((line, v)) = self.map.get(key) else {
            return Ok(None);
        };
        v.parse::<f64>().map(Some).map_err(|_| HarnessError::Config {
            line: *line,
            msg: format!("`{key}`: cannot parse `{v}` as a number"),
        })
    }

    fn list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some((line, v)) = self.map.get(key) else {
            return Ok(None);
        };
        v.split(',')
            .map(|s| {
                s.trim().parse::<f64>().map_err(|_| HarnessError::Config {
                    line: *line,
                    msg: format!("`{key}`: cannot parse `{}` as a number", s.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    fn bad(&self, key: &str, msg: impl Into<String>) -> HarnessError {
        HarnessError::Config {
            line: self.line(key),
            msg: format!("`{key}`: {}", msg.into()),
        }
    }
}

fn solution_kind(name: &str) -> Option<SolutionKind> {
    Some(match name.to_ascii_lowercase().as_str() {
        "ips" => SolutionKind::Ips,
        "u2" | "travelling_wave" | "traveling_wave" => SolutionKind::TravelingWaveU2,
        "u5" | "reaction_limit" => SolutionKind::ReactionLimitU5,
        "u6" => SolutionKind::SeparableU6,
        "u7" => SolutionKind::ExplicitU7,
        "u9" => SolutionKind::SeparableU9,
        _ => return None,
    })
}

/// Parses a scenario file's text.
pub fn load_scenario(text: &str) -> Result<Scenario> {
    let e = Entries::parse(text)?;
    if let Some(missing) = REQUIRED.iter().find(|k| !e.map.contains_key(**k)) {
        return Err(HarnessError::MissingKey(missing));
    }
    let req = |k: &str| -> Result<f64> { Ok(e.num(k)?.expect("checked above")) };

    let name = e.raw("name").unwrap_or_default().to_string();
    if name.is_empty() {
        return Err(e.bad("name", "must not be empty"));
    }
    let params = Params::new(req("m")?, req("p")?, req("b")?, req("beta")?, req("C")?, req("alpha")?)
        .map_err(|err| e.bad("m", err.to_string()))?;

    let n = req("n")?;
    if n.fract() != 0.0 || n < 0.0 {
        return Err(e.bad("n", "must be a whole number"));
    }
    let grid = Grid::new(req("x_left")?, req("x_right")?, n as usize).map_err(|err| e.bad("n", err.to_string()))?;

    let mut control = match (e.num("dt")?, e.num("cfl")?) {
        (Some(_), Some(_)) => {
            let later = if e.line("dt") > e.line("cfl") { "dt" } else { "cfl" };
            return Err(e.bad(later, "give either `dt` or `cfl`, not both"));
        }
        (Some(dt), None) => StepControl::fixed(dt),
        (None, Some(s)) => StepControl::cfl(s),
        (None, None) => StepControl::default(),
    };
    control.interface_threshold = e.num("threshold")?.unwrap_or(DEFAULT_INTERFACE_THRESHOLD);
    if let Some(v) = e.raw("clip") {
        control.clip_negative = match v {
            "true" | "yes" | "1" => true,
            "false" | "no" | "0" => false,
            _ => return Err(e.bad("clip", format!("expected true/false, got `{v}`"))),
        };
    }
    if let Some(k) = e.num("max_steps")? {
        control.max_steps = Some(k as usize);
    }
    control.validate().map_err(|err| e.bad(if e.raw("dt").is_some() { "dt" } else { "cfl" }, err.to_string()))?;

    let kind = e.raw("ic.kind").unwrap_or("power");
    let t0 = e.num("ic.t0")?;
    let ic = match kind {
        "power" => {
            let taper_center = e.num("ic.taper_center")?.unwrap_or(DEFAULT_TAPER_CENTER);
            let taper_width = e.num("ic.taper_width")?.unwrap_or(DEFAULT_TAPER_WIDTH);
            if !(taper_width > 0.0) {
                return Err(e.bad("ic.taper_width", "must be positive"));
            }
            if taper_center - taper_width < grid.x_left || taper_center + taper_width > 0.0 {
                return Err(e.bad("ic.taper_center", "taper window must lie inside [x_left, 0]"));
            }
            IcSpec::PowerFront {
                c: params.c,
                alpha: params.alpha,
                taper_center,
                taper_width,
            }
        }
        "ips" => IcSpec::Ips {
            gamma: e.num("ic.gamma")?.unwrap_or(1.0),
            t0: t0.ok_or_else(|| e.bad("ic.kind", "ips data needs `ic.t0`"))?,
        },
        "explicit" => {
            let raw = e.raw("ic.solution").ok_or_else(|| e.bad("ic.kind", "explicit data needs `ic.solution`"))?;
            let kind = solution_kind(raw).ok_or_else(|| e.bad("ic.solution", format!("unknown solution `{raw}`")))?;
            IcSpec::Explicit {
                kind,
                t0: t0.unwrap_or(0.0),
            }
        }
        other => return Err(e.bad("ic.kind", format!("expected power, ips or explicit, got `{other}`"))),
    };

    let t_end = req("t_end")?;
    let start = ic.start_time();
    if !(t_end > start) {
        return Err(e.bad("t_end", format!("must exceed the start time {start}")));
    }
    let output_times = e.list("output_times")?.expect("checked above");
    if output_times.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(e.bad("output_times", "must be strictly increasing"));
    }
    if output_times.iter().any(|&t| !(t > start && t <= t_end)) {
        return Err(e.bad("output_times", format!("must lie in ({start}, {t_end}]")));
    }

    let fit_window = match e.list("fit_window")? {
        None => (0.02 * t_end, 0.2 * t_end),
        Some(w) if w.len() == 2 && 0.0 <= w[0] && w[0] < w[1] => (w[0], w[1]),
        Some(_) => return Err(e.bad("fit_window", "expected `t_a, t_b` with t_a < t_b")),
    };
    let seed_times = e
        .list("seed_times")?
        .unwrap_or_else(|| DEFAULT_SEED_TIMES.iter().map(|t| start + t).collect());
    if seed_times.iter().any(|&t| !(t > start)) {
        return Err(e.bad("seed_times", format!("must exceed the start time {start}")));
    }

    Ok(Scenario {
        name,
        params,
        grid,
        control,
        ic,
        t_end,
        output_times,
        fit_window,
        seed_times,
        seed_anchor: e.num("seed_anchor")?.unwrap_or(0.0),
    })
}

pub fn load_scenario_file(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)?;
    load_scenario(&text)
}
