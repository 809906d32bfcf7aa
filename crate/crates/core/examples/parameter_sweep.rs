// A reduced synthetic sweep over density and neighborhood radius, printed
// as a table of per-point averages. The full default grid is what
// `dss sweep` runs.

use dss::experiment::{run_synthetic_sweep, summarize_sweep, SweepGrid, SweepSpec};
use dss::{RadioConfig, SimConfig};

pub fn run_example() -> dss::Result<()> {
    let spec = SweepSpec {
        grid: SweepGrid {
            densities: vec![25.0, 250.0, 625.0],
            radii: vec![50.0, 150.0],
            node_counts: None,
            replications: 2,
            area_km2: 0.25,
        },
        radio: RadioConfig::default(),
        sim: SimConfig {
            seed: 5,
            ..SimConfig::default()
        },
        threshold_factor: 1.0,
    };
    let rows = run_synthetic_sweep(&spec)?;

    println!("density  R_N  greedy Mb/s  dss Mb/s   rate    ASE   fairness");
    for p in summarize_sweep(&rows) {
        println!(
            "{:>7} {:>4} {:>12.1} {:>9.1} {:>+6.1}% {:>+6.1}% {:>+9.3}",
            p.density_per_km2,
            p.r_n_m,
            p.greedy_mean_rate_bps / 1e6,
            p.dss_mean_rate_bps / 1e6,
            p.mean_rate_improvement_pct.unwrap_or(0.0),
            p.ase_improvement_pct.unwrap_or(0.0),
            p.fairness_improvement_abs.unwrap_or(0.0),
        );
    }
    Ok(())
}

fn main() -> dss::Result<()> {
    run_example()
}
