use ddpe_core::classification::{classify, Region};
use ddpe_core::profiles::{integrate_region1, integrate_region2, seed_from_pde, Seed, SeedSample, Similarity, DEFAULT_STEP};
use ddpe_core::weno::{evolve, Snapshots};
use ddpe_core::ProfileTable64;

use crate::error::{HarnessError, Result};
use crate::ic::make_initial_condition;
use crate::scenario::Scenario;

#[derive(Debug, Clone)]
pub struct ProfileRun {
    pub samples: Vec<SeedSample<f64>>,
    pub seed: Seed<f64>,
    pub table: ProfileTable64,
}

/// Runs the scenario to the last seed time, reads three nodes starting at
/// `anchor t^c` from each seed-time snapshot, and integrates the profile ODE
/// from the averaged seed.
pub fn seed_and_integrate(s: &Scenario, seed_times: &[f64]) -> Result<ProfileRun> {
    let region = classify(&s.params)?.region;
    let (sim, region2) = match region {
        Region::R1 | Region::B0Case1 => (Similarity::region1(&s.params)?, false),
        Region::R2Expand | Region::R2Shrink => (Similarity::region2(&s.params)?, true),
        other => {
            return Err(HarnessError::Invalid(format!(
                "no self-similar profile for region {other}"
            )))
        }
    };
    if seed_times.is_empty() {
        return Err(HarnessError::Invalid("no seed times".into()));
    }
    let mut times = seed_times.to_vec();
    times.sort_by(|a, b| a.total_cmp(b));
    let t_end = *times.last().expect("non-empty");
    let u0 = make_initial_condition(&s.ic, &s.params, s.grid)?;
    let mut snaps = Snapshots::default();
    evolve(u0, &s.params, &s.control, t_end, &times, &mut snaps)?;

    let g = s.grid;
    let samples: Vec<SeedSample<f64>> = snaps
        .fields
        .iter()
        .map(|f| {
            let i = g.nearest(s.seed_anchor * f.t.powf(sim.c)).min(g.n - 3);
            SeedSample {
                t: f.t,
                x: [g.x(i), g.x(i + 1), g.x(i + 2)],
                u: [f.u[i], f.u[i + 1], f.u[i + 2]],
            }
        })
        .collect();
    let seed = seed_from_pde(&samples, &sim, s.seed_anchor)?;
    let table = if region2 {
        integrate_region2(seed, &s.params, DEFAULT_STEP)?
    } else {
        integrate_region1(seed, &s.params, DEFAULT_STEP)?
    };
    Ok(ProfileRun { samples, seed, table })
}
