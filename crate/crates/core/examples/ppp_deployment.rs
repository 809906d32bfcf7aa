// Poisson point process deployments: counts, nearest-neighbor spacing and a
// grid partition of one draw.

use dss::deployment::{generate_ppp, nearest_neighbor_distances, partition_grid, Region};

pub fn run_example() -> dss::Result<()> {
    let region = Region::square_km2(1.0);

    println!("density  nodes  mean NN (m)");
    for (i, density) in [25.0, 125.0, 375.0, 625.0].into_iter().enumerate() {
        let nodes = generate_ppp(density, &region, 100 + i as u64)?;
        let nn = nearest_neighbor_distances(&nodes)?;
        let mean_nn = nn.iter().sum::<f64>() / nn.len() as f64;
        // PPP theory: E[NN] = 1 / (2·sqrt(λ)), with λ per m²
        let expected = 0.5 / (density / 1e6f64).sqrt();
        println!(
            "{density:>7} {:>6} {mean_nn:>8.1} (theory {expected:.1})",
            nodes.len()
        );
    }

    let nodes = generate_ppp(625.0, &region, 7)?;
    let cells = partition_grid(&nodes, 3, 3)?;
    println!("\n3x3 partition of {} nodes:", nodes.len());
    for row in (0..3).rev() {
        let counts: Vec<String> = (0..3)
            .map(|col| format!("{:>4}", cells[row * 3 + col].node_ids.len()))
            .collect();
        println!("  {}", counts.join(""));
    }
    let total: usize = cells.iter().map(|c| c.node_ids.len()).sum();
    assert_eq!(total, nodes.len());
    Ok(())
}

fn main() -> dss::Result<()> {
    run_example()
}
