#[allow(dead_code)]
mod ppp_deployment {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/ppp_deployment.rs"
    ));
}

#[test]
fn ppp_deployment_runs() {
    ppp_deployment::run_example().expect("ppp_deployment example should run");
}

#[allow(dead_code)]
mod interference_graph {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/interference_graph.rs"
    ));
}

#[test]
fn interference_graph_runs() {
    interference_graph::run_example().expect("interference_graph example should run");
}

#[allow(dead_code)]
mod link_budget {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/link_budget.rs"
    ));
}

#[test]
fn link_budget_runs() {
    link_budget::run_example().expect("link_budget example should run");
}

#[allow(dead_code)]
mod algorithm_walkthrough {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/algorithm_walkthrough.rs"
    ));
}

#[test]
fn algorithm_walkthrough_runs() {
    algorithm_walkthrough::run_example().expect("algorithm_walkthrough example should run");
}

#[allow(dead_code)]
mod dss_vs_greedy {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/dss_vs_greedy.rs"
    ));
}

#[test]
fn dss_vs_greedy_runs() {
    dss_vs_greedy::run_example().expect("dss_vs_greedy example should run");
}

#[allow(dead_code)]
mod parameter_sweep {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/parameter_sweep.rs"
    ));
}

#[test]
fn parameter_sweep_runs() {
    parameter_sweep::run_example().expect("parameter_sweep example should run");
}

#[allow(dead_code)]
mod city_grid {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/city_grid.rs"
    ));
}

#[test]
fn city_grid_runs() {
    city_grid::run_example().expect("city_grid example should run");
}

#[allow(dead_code)]
mod sample_network {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/sample_network.rs"
    ));
}

#[test]
fn sample_network_runs() {
    sample_network::run_example().expect("sample_network example should run");
}

#[allow(dead_code)]
mod rate_ccdf {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/rate_ccdf.rs"
    ));
}

#[test]
fn rate_ccdf_runs() {
    rate_ccdf::run_example().expect("rate_ccdf example should run");
}

#[allow(dead_code)]
mod rogue_nodes {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/rogue_nodes.rs"
    ));
}

#[test]
fn rogue_nodes_runs() {
    rogue_nodes::run_example().expect("rogue_nodes example should run");
}
