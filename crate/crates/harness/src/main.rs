use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ddpe_core::analytic::{ips_eval, ips_interface};
use ddpe_core::classification::{classify, interface_law, Prefactor};
use ddpe_core::weno::{evolve, locate_interface, Grid, Snapshots, StepControl};
use ddpe_core::Params;
use ddpe_harness::output::{read_track, write_profile};
use ddpe_harness::{
    fit_powerlaw, load_scenario_file, located, report_text, run_scenario, seed_and_integrate, write_artifacts,
    HarnessError, IcSpec, Result,
};

#[derive(Parser)]
#[command(name = "ddpe", version, about = "Interface experiments for u_t = (|(u^m)_x|^(p-1)(u^m)_x)_x - b u^beta")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Region label, thresholds and predicted interface law.
    Classify {
        /// Take the parameters from a scenario file instead of flags.
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, default_value_t = 4.0)]
        m: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 0.5)]
        b: f64,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        #[arg(long = "C", default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 0.2)]
        alpha: f64,
    },
    /// Evolve a scenario and write snapshots, the interface track and a report.
    Run {
        file: PathBuf,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Interface threshold, overriding the scenario's.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Seed and integrate the self-similar profile of a scenario.
    Profile {
        file: PathBuf,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        #[arg(long, value_delimiter = ',')]
        seed_times: Option<Vec<f64>>,
    },
    /// Point-source benchmark (m = 6, b = 0, Gamma = 1 on [-5, 5]).
    Ips {
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 0.4)]
        cfl: f64,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Fit a power law to an interface track CSV.
    Compare {
        track: PathBuf,
        #[arg(long, value_delimiter = ',')]
        window: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        sign: i8,
        /// Scenario whose predicted law is printed alongside.
        #[arg(long)]
        scenario: Option<PathBuf>,
    },
}

fn classify_cmd(params: Params) -> Result<()> {
    let report = classify(&params)?;
    let law = interface_law(&report, &params)?;
    println!("region = {}", report.region);
    let th = report.thresholds;
    for (name, v) in [
        ("expansion", th.expansion),
        ("borderline", th.borderline),
        ("waiting", th.waiting),
        ("explicit_b0", th.explicit_b0),
    ] {
        match v {
            Some(v) => println!("threshold_{name} = {v}"),
            None => println!("threshold_{name} = none"),
        }
    }
    if let Some(cs) = report.c_star {
        println!("c_star = {cs}");
    }
    println!("sign = {}", law.sign);
    if let Some(e) = law.exponent {
        println!("exponent = {e}");
    }
    match law.prefactor {
        Prefactor::Exact(v) => println!("prefactor = {v}"),
        Prefactor::Interval(a, b) => println!("prefactor in [{a}, {b}]"),
        Prefactor::ProfileDetermined => println!("prefactor = profile-determined"),
    }
    Ok(())
}

fn ips_cmd(p: f64, n: usize, cfl: f64, out_dir: Option<PathBuf>) -> Result<()> {
    let (m, gamma) = (6.0, 1.0);
    let params = Params::new(m, p, 0.0, 0.5, 1.0, 1.0)?;
    let grid = Grid::new(-5.0, 5.0, n)?;
    let spec = IcSpec::Ips { gamma, t0: 0.05 };
    let u0 = ddpe_harness::make_initial_condition(&spec, &params, grid)?;
    let times = [0.5, 1.0, 2.0];
    let mut snaps = Snapshots::default();
    evolve(u0, &params, &StepControl::cfl(cfl), 2.0, &times, &mut snaps)?;
    for f in &snaps.fields {
        let mut sup = 0.0_f64;
        for (x, u) in grid.nodes().zip(&f.u) {
            sup = sup.max((u - ips_eval(m, p, gamma, x, f.t)?).abs());
        }
        let eta = locate_interface(f, 1e-10).unwrap_or(f64::NAN);
        let want = ips_interface(m, p, gamma, f.t)?;
        println!("t = {}  sup_error = {sup:.3e}  eta = {eta:.6}  exact = {want:.6}  dx = {:.6}", f.t, grid.dx);
    }
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(&dir)?;
        let path = dir.join(format!("ips_p{p}_snapshots.csv"));
        ddpe_harness::output::write_snapshots(BufWriter::new(File::create(&path)?), &snaps.fields)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Classify {
            scenario,
            m,
            p,
            b,
            beta,
            c,
            alpha,
        } => {
            let params = match scenario {
                Some(path) => load_scenario_file(&path)?.params,
                None => Params::new(m, p, b, beta, c, alpha)?,
            };
            classify_cmd(params)
        }
        Cmd::Run {
            file,
            out_dir,
            threshold,
        } => {
            let mut s = load_scenario_file(&file)?;
            if let Some(th) = threshold {
                s.control.interface_threshold = th;
            }
            let art = match run_scenario(&s) {
                Ok(art) => art,
                Err(HarnessError::Solver { t, source, partial }) => {
                    write_artifacts(&partial, &out_dir)?;
                    return Err(HarnessError::Solver { t, source, partial });
                }
                Err(e) => return Err(e),
            };
            for path in write_artifacts(&art, &out_dir)? {
                println!("wrote {}", path.display());
            }
            print!("{}", report_text(&art));
            Ok(())
        }
        Cmd::Profile {
            file,
            out_dir,
            seed_times,
        } => {
            let s = load_scenario_file(&file)?;
            let times = seed_times.unwrap_or_else(|| s.seed_times.clone());
            let run = seed_and_integrate(&s, &times)?;
            std::fs::create_dir_all(&out_dir)?;
            let path = out_dir.join(format!("{}_profile.csv", s.name));
            write_profile(BufWriter::new(File::create(&path)?), &run.table)?;
            println!("wrote {}", path.display());
            println!("seed_anchor = {}", run.seed.at);
            println!("f = {}", run.seed.f);
            println!("fp = {}", run.seed.fp);
            println!("front = {}", run.table.front);
            println!("front_change_half_step = {:e}", run.table.refinement_change());
            Ok(())
        }
        Cmd::Ips { p, n, cfl, out_dir } => ips_cmd(p, n, cfl, out_dir),
        Cmd::Compare {
            track,
            window,
            sign,
            scenario,
        } => {
            let samples = read_track(File::open(&track)?)?;
            let pts = located(&samples);
            let window = match window.as_deref() {
                Some(&[a, b]) => (a, b),
                Some(_) => return Err(HarnessError::Invalid("--window takes `t_a,t_b`".into())),
                None => {
                    let t_end = pts.last().map(|p| p.0).unwrap_or(0.0);
                    (0.02 * t_end, 0.2 * t_end)
                }
            };
            let fit = fit_powerlaw(&pts, window, sign)?;
            println!("fit_prefactor = {}", fit.prefactor);
            println!("fit_exponent = {}", fit.exponent);
            println!("fit_rms = {}", fit.rms);
            println!("fit_points = {}", fit.points);
            if let Some(path) = scenario {
                classify_cmd(load_scenario_file(&path)?.params)?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
