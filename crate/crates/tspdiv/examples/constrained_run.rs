//! Quality-constrained diversity maximisation on eil51.
//!
//! Starting from mu copies of the optimal tour, the EA evolves tours
//! that may cost at most (1 + alpha) times the optimum. Loosening
//! alpha buys diversity; the ED and PD measures spend that budget
//! differently (ED on raw gtype, PD on uniform pairwise distances).

use std::path::Path;

use tspdiv::harness::{load_instance, InstanceSpec};
use tspdiv::{run, EaConfig, InitMode, Measure, MutationKind, MutationStyle};

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let spec = InstanceSpec::Tsplib {
        tsp: data.join("eil51.tsp"),
        opt_tour: data.join("eil51.opt.tour"),
    };
    let (instance, opt_tour) = load_instance(&spec).expect("bundled instance");
    let opt_cost = instance.tour_cost(opt_tour.as_ref().unwrap());
    println!("{}: n={}, OPT={}", instance.name(), instance.n(), opt_cost);

    for alpha in [0.05, 0.2, 0.5, 1.0] {
        for measure in [Measure::Ed, Measure::Pd] {
            let config = EaConfig {
                mu: 10,
                measure,
                mutation: MutationKind::TwoOpt,
                style: MutationStyle::InversionChain,
                alpha,
                max_iters: None,
                init: InitMode::CopiesOfOptimal,
                seed: 1,
            };
            let record = run(&config, &instance, opt_tour.as_ref()).unwrap();
            println!(
                "alpha={alpha:<4} {}: gtype% {:6.2}  sigma {:.3}  div {:.3}  ({} iterations)",
                measure.as_str(),
                record.gtype_percent,
                record.sigma,
                record.div,
                record.iterations
            );
        }
    }
}
