//! Unconstrained diversity maximisation on a unit-weight instance.
//!
//! With unit weights every tour has the same cost, so the quality
//! filter accepts everything and the run isolates pure diversity
//! dynamics. All six variants (two measures x three mutation
//! operators) start from the same random population and race to a
//! perfectly edge-balanced state.

use tspdiv::{
    run, EaConfig, InitMode, Instance, Measure, MutationKind, MutationStyle, TerminationReason,
};

fn main() {
    let instance = Instance::unit(50);
    for measure in [Measure::Ed, Measure::Pd] {
        for mutation in MutationKind::ALL {
            let config = EaConfig {
                mu: 10,
                measure,
                mutation,
                style: MutationStyle::InversionChain,
                alpha: 0.0,
                max_iters: None,
                init: InitMode::RandomTours,
                seed: 1,
            };
            let record = run(&config, &instance, None).unwrap();
            assert_eq!(record.terminated, TerminationReason::OptimumReached);
            println!(
                "{} {}: optimum in {:>5} iterations (gtype {} = 100%, div {:.3})",
                measure.as_str(),
                mutation.as_str(),
                record.iterations,
                record.gtype,
                record.div
            );
        }
    }
}
