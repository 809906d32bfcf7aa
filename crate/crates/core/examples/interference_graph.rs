// Builds the interference graph of a dense deployment for a few
// neighborhood radii and prints degree statistics and a slice of the edge
// list.

use dss::deployment::{generate_ppp, Region};
use dss::graph::build_graph;
use dss::RadioConfig;

pub fn run_example() -> dss::Result<()> {
    let radio = RadioConfig::default();
    let nodes = generate_ppp(375.0, &Region::square_km2(1.0), 3)?;
    println!("{} nodes on 1 km²", nodes.len());

    for r_n in [50.0, 100.0, 150.0, 300.0] {
        let g = build_graph(&nodes, r_n, &radio);
        let degrees: Vec<usize> = (0..g.node_count()).map(|v| g.degree(v)).collect();
        let isolated = (0..g.node_count()).filter(|&v| g.is_isolated(v)).count();
        println!(
            "R_N = {r_n:>5} m: {:>6} edges, mean degree {:>6.2}, max {:>3}, isolated {isolated}",
            g.edge_count(),
            degrees.iter().sum::<usize>() as f64 / degrees.len() as f64,
            degrees.iter().max().unwrap_or(&0),
        );
    }

    let g = build_graph(&nodes, 100.0, &radio);
    let mut csv = Vec::new();
    g.write_edges_csv(&mut csv).expect("in-memory write");
    println!("\nfirst edges at R_N = 100 m:");
    for line in String::from_utf8_lossy(&csv).lines().take(6) {
        println!("  {line}");
    }
    Ok(())
}

fn main() -> dss::Result<()> {
    run_example()
}
