use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use ddpe_core::classification::{classify, interface_law, InterfaceLaw, RegionReport};
use ddpe_core::weno::{evolve, locate_interface, Observer};
use ddpe_core::Field64;

use crate::error::{HarnessError, Result};
use crate::fit::{fit_powerlaw, located, FitReport};
use crate::ic::make_initial_condition;
use crate::output::{fmt_f64, write_snapshots, write_track};
use crate::scenario::Scenario;

/// Snapshots at the output times and the interface after every step.
#[derive(Debug, Clone, Default)]
pub struct Recorder {
    pub threshold: f64,
    pub snapshots: Vec<Field64>,
    pub track: Vec<(f64, Option<f64>)>,
}

impl Observer<f64> for Recorder {
    fn on_step(&mut self, field: &Field64, _dt: f64) {
        self.track.push((field.t, locate_interface(field, self.threshold)));
    }
    fn on_output(&mut self, field: &Field64) {
        self.snapshots.push(field.clone());
    }
}

#[derive(Debug, Clone)]
pub struct RunArtifacts {
    pub name: String,
    pub report: RegionReport<f64>,
    pub law: InterfaceLaw<f64>,
    pub snapshots: Vec<Field64>,
    pub track: Vec<(f64, Option<f64>)>,
    pub fit: Option<FitReport>,
    /// Why no fit was made, when `fit` is `None`.
    pub fit_note: Option<String>,
    pub steps: usize,
    pub final_field: Option<Field64>,
}

/// Evolves the scenario, recording snapshots and the interface track, and
/// fits the track over the scenario's window when the predicted law moves.
pub fn run_scenario(s: &Scenario) -> Result<RunArtifacts> {
    let report = classify(&s.params)?;
    let law = interface_law(&report, &s.params)?;
    let u0 = make_initial_condition(&s.ic, &s.params, s.grid)?;
    let threshold = s.control.interface_threshold;
    let mut rec = Recorder {
        threshold,
        track: vec![(u0.t, locate_interface(&u0, threshold))],
        ..Default::default()
    };
    let result = evolve(u0, &s.params, &s.control, s.t_end, &s.output_times, &mut rec);

    let mut art = RunArtifacts {
        name: s.name.clone(),
        report,
        law,
        snapshots: rec.snapshots,
        track: rec.track,
        fit: None,
        fit_note: None,
        steps: 0,
        final_field: None,
    };
    match result {
        Ok(ev) => {
            art.steps = ev.steps;
            art.final_field = Some(ev.field);
        }
        Err(source) => {
            let t = art.track.last().map(|s| s.0).unwrap_or(f64::NAN);
            return Err(HarnessError::Solver {
                t,
                source,
                partial: Box::new(art),
            });
        }
    }
    if law.sign == 0 {
        art.fit_note = Some("stationary interface predicted".into());
    } else {
        match fit_powerlaw(&located(&art.track), s.fit_window, law.sign) {
            Ok(mut fit) => {
                fit.predicted = Some(law);
                art.fit = Some(fit);
            }
            Err(e) => art.fit_note = Some(e.to_string()),
        }
    }
    Ok(art)
}

/// Largest `|eta(t) - eta(0)|` over the track up to `t_max`; `None` when the
/// front vanishes.
pub fn max_displacement(track: &[(f64, Option<f64>)], t_max: f64) -> Option<f64> {
    let mut pts = track.iter().filter(|(t, _)| *t <= t_max).map(|(_, eta)| *eta);
    let start = pts.next()??;
    pts.try_fold(0.0_f64, |acc, e| e.map(|v| acc.max((v - start).abs())))
}

fn law_text(law: &InterfaceLaw<f64>) -> String {
    use ddpe_core::classification::Prefactor;
    let pre = match law.prefactor {
        Prefactor::Exact(v) => fmt_f64(v),
        Prefactor::Interval(a, b) => format!("[{}, {}]", fmt_f64(a), fmt_f64(b)),
        Prefactor::ProfileDetermined => "profile-determined".into(),
    };
    let exp = law.exponent.map(fmt_f64).unwrap_or_else(|| "none".into());
    format!("sign = {}\nlaw_exponent = {exp}\nlaw_prefactor = {pre}\n", law.sign)
}

/// Plain-text `key = value` summary of a run.
pub fn report_text(art: &RunArtifacts) -> String {
    let mut s = format!("name = {}\nregion = {}\n", art.name, art.report.region);
    if let Some(cs) = art.report.c_star {
        s += &format!("c_star = {}\n", fmt_f64(cs));
    }
    s += &law_text(&art.law);
    s += &format!("steps = {}\n", art.steps);
    match (&art.fit, &art.fit_note) {
        (Some(f), _) => {
            s += &format!(
                "fit_prefactor = {}\nfit_exponent = {}\nfit_rms = {}\nfit_window = {}, {}\nfit_points = {}\n",
                fmt_f64(f.prefactor),
                fmt_f64(f.exponent),
                fmt_f64(f.rms),
                fmt_f64(f.window.0),
                fmt_f64(f.window.1),
                f.points
            );
        }
        (None, Some(note)) => s += &format!("fit = none ({note})\n"),
        (None, None) => {}
    }
    s
}

/// Writes `<name>_snapshots.csv`, `<name>_track.csv` and `<name>_report.txt`.
pub fn write_artifacts(art: &RunArtifacts, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let snap = dir.join(format!("{}_snapshots.csv", art.name));
    let track = dir.join(format!("{}_track.csv", art.name));
    let report = dir.join(format!("{}_report.txt", art.name));
    write_snapshots(BufWriter::new(File::create(&snap)?), &art.snapshots)?;
    write_track(BufWriter::new(File::create(&track)?), &art.track)?;
    std::fs::write(&report, report_text(art))?;
    Ok(vec![snap, track, report])
}
