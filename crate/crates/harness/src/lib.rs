//! Scenario files, experiment runs, interface fits and CSV output on top of
//! `ddpe-core`.

pub mod error;
pub mod fit;
pub mod ic;
pub mod output;
pub mod profile;
pub mod run;
pub mod scenario;

pub use error::{HarnessError, Result};
pub use fit::{fit_powerlaw, located, FitReport};
pub use ic::{make_initial_condition, power_front};
pub use profile::{seed_and_integrate, ProfileRun};
pub use run::{max_displacement, report_text, run_scenario, write_artifacts, RunArtifacts};
pub use scenario::{load_scenario, load_scenario_file, IcSpec, Scenario};
