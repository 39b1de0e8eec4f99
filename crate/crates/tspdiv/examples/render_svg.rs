//! Rendering evolved populations as SVG.
//!
//! Two views: an edge-count map of the whole population (darker means
//! more tours use the edge, the optimal tour in red), and one panel
//! per tour with shared edges red and unique edges blue.

use std::path::Path;

use tspdiv::diversity::Population;
use tspdiv::harness::render::{render_edge_counts, render_population};
use tspdiv::harness::{load_instance, InstanceSpec};
use tspdiv::{run, EaConfig, InitMode, Measure, MutationKind, MutationStyle};

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let spec = InstanceSpec::Tsplib {
        tsp: data.join("eil51.tsp"),
        opt_tour: data.join("eil51.opt.tour"),
    };
    let (instance, opt_tour) = load_instance(&spec).expect("bundled instance");

    let config = EaConfig {
        mu: 10,
        measure: Measure::Pd,
        mutation: MutationKind::TwoOpt,
        style: MutationStyle::InversionChain,
        alpha: 0.2,
        max_iters: None,
        init: InitMode::CopiesOfOptimal,
        seed: 1,
    };
    let record = run(&config, &instance, opt_tour.as_ref()).unwrap();
    println!(
        "evolved mu={} population: gtype% {:.2}, sigma {:.3}",
        config.mu, record.gtype_percent, record.sigma
    );

    let pop = Population::new(instance.n(), record.final_population);
    let out = std::env::temp_dir();

    let counts = render_edge_counts(&pop, &instance, opt_tour.as_ref()).unwrap();
    let counts_path = out.join("eil51-edge-counts.svg");
    std::fs::write(&counts_path, counts).unwrap();
    println!("wrote {}", counts_path.display());

    let panels = render_population(&pop, &instance).unwrap();
    let panels_path = out.join("eil51-population.svg");
    std::fs::write(&panels_path, panels).unwrap();
    println!("wrote {}", panels_path.display());
}
