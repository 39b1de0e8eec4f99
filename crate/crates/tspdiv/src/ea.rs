//! The (mu+1) evolutionary algorithm for diversity maximisation.
//!
//! Each iteration picks a parent uniformly at random, mutates it, and
//! discards the offspring if its cost exceeds the quality threshold
//! `(1 + alpha) * OPT`. Otherwise the offspring joins the population
//! and survival selection removes the member whose absence minimises
//! the active diversity vector. A rejected offspring still consumes an
//! iteration of the budget.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diversity::{gtype_percent, optimal_gtype, Measure, Population};
use crate::instance::{Instance, Tour, WeightKind};
use crate::mutation::{mutate, MutationKind, MutationStyle};

/// How the initial population is generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitMode {
    /// `mu` independent uniform permutations (unit-weight instances
    /// only, where every tour passes the quality filter).
    RandomTours,
    /// `mu` copies of the provided optimal tour.
    CopiesOfOptimal,
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("population size must be at least 2, got {0}")]
    MuTooSmall(usize),
    #[error("alpha must be non-negative, got {0}")]
    NegativeAlpha(f64),
    #[error("random initialisation on a weighted instance may violate the quality threshold; initialise from the optimal tour instead")]
    RandomInitOnWeighted,
    #[error("copies-of-optimal initialisation requires an optimal tour")]
    MissingOptTour,
    #[error("optimal tour does not match the instance")]
    OptTourMismatch,
}

/// Configuration of one EA run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EaConfig {
    pub mu: usize,
    pub measure: Measure,
    pub mutation: MutationKind,
    #[serde(default)]
    pub style: MutationStyle,
    pub alpha: f64,
    /// Iteration budget; defaults to `mu * n^2` when absent.
    pub max_iters: Option<u64>,
    pub init: InitMode,
    pub seed: u64,
}

impl EaConfig {
    /// Budget actually used for an instance of `n` vertices.
    pub fn budget(&self, n: usize) -> u64 {
        self.max_iters
            .unwrap_or_else(|| (self.mu * n * n) as u64)
    }

    fn validate(&self, instance: &Instance, opt_tour: Option<&Tour>) -> Result<(), ConfigError> {
        if self.mu < 2 {
            return Err(ConfigError::MuTooSmall(self.mu));
        }
        if self.alpha < 0.0 {
            return Err(ConfigError::NegativeAlpha(self.alpha));
        }
        match self.init {
            InitMode::RandomTours => {
                if instance.weight_kind() != WeightKind::Unit {
                    return Err(ConfigError::RandomInitOnWeighted);
                }
            }
            InitMode::CopiesOfOptimal => {
                let tour = opt_tour.ok_or(ConfigError::MissingOptTour)?;
                if tour.len() != instance.n() {
                    return Err(ConfigError::OptTourMismatch);
                }
            }
        }
        Ok(())
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TerminationReason {
    OptimumReached,
    BudgetExhausted,
}

impl TerminationReason {
    pub fn as_str(self) -> &'static str {
        match self {
            TerminationReason::OptimumReached => "optimum-reached",
            TerminationReason::BudgetExhausted => "budget-exhausted",
        }
    }
}

impl std::str::FromStr for TerminationReason {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "optimum-reached" => Ok(TerminationReason::OptimumReached),
            "budget-exhausted" => Ok(TerminationReason::BudgetExhausted),
            other => Err(format!("unknown termination reason {other:?}")),
        }
    }
}

/// Outcome of one EA run: configuration echo, iteration count and the
/// final population with its scores.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub n: usize,
    pub config: EaConfig,
    pub iterations: u64,
    pub terminated: TerminationReason,
    pub gtype: u64,
    pub gtype_percent: f64,
    pub div: f64,
    pub sigma: f64,
    pub final_population: Vec<Tour>,
}

/// Integer cost ceiling for the threshold `c <= (1 + alpha) * OPT`.
/// The epsilon absorbs binary representation error in `1 + alpha`
/// (e.g. 1.2 * 5 evaluating just below 6.0).
fn cost_ceiling(alpha: f64, opt: u64) -> u64 {
    ((1.0 + alpha) * opt as f64 + 1e-9).floor() as u64
}

fn random_tour<R: Rng>(n: usize, rng: &mut R) -> Tour {
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    Tour::new(perm).expect("shuffle keeps the permutation")
}

/// Build the initial population. Every member satisfies the quality
/// threshold: random tours are only allowed on unit instances, and
/// copies of the optimal tour cost exactly OPT.
pub fn initialize<R: Rng>(
    config: &EaConfig,
    instance: &Instance,
    opt_tour: Option<&Tour>,
    rng: &mut R,
) -> Result<Population, ConfigError> {
    config.validate(instance, opt_tour)?;
    let n = instance.n();
    let tours = match config.init {
        InitMode::RandomTours => (0..config.mu).map(|_| random_tour(n, rng)).collect(),
        InitMode::CopiesOfOptimal => {
            let tour = opt_tour.expect("validated");
            vec![tour.clone(); config.mu]
        }
    };
    Ok(Population::new(n, tours))
}

/// One offspring attempt: mutate a uniformly chosen parent, filter by
/// cost, and if accepted let survival selection remove one member.
pub fn step<R: Rng>(
    pop: &mut Population,
    config: &EaConfig,
    instance: &Instance,
    max_cost: u64,
    rng: &mut R,
) {
    let parent = rng.gen_range(0..pop.len());
    let offspring = mutate(pop.tour(parent), config.mutation, config.style, rng);
    if instance.tour_cost(&offspring) > max_cost {
        return;
    }
    pop.push(offspring);
    let victim = pop.select_removal(config.measure);
    pop.remove(victim);
}

fn optimum_reached(pop: &Population, measure: Measure, optimal: u64) -> bool {
    if pop.gtype() != optimal {
        return false;
    }
    match measure {
        Measure::Ed => true,
        Measure::Pd => pop.overlap_spread() <= 1,
    }
}

/// Run the EA to termination: optimum reached (for PD additionally a
/// pairwise-overlap spread of at most one) or budget exhausted.
pub fn run(
    config: &EaConfig,
    instance: &Instance,
    opt_tour: Option<&Tour>,
) -> Result<RunRecord, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut pop = initialize(config, instance, opt_tour, &mut rng)?;
    let n = instance.n();
    let opt_cost = match opt_tour {
        Some(t) => instance.tour_cost(t),
        None => n as u64, // unit instance: every tour is optimal
    };
    let max_cost = cost_ceiling(config.alpha, opt_cost);
    let optimal = optimal_gtype(n, config.mu);
    let budget = config.budget(n);

    let mut iterations = 0;
    let mut terminated = TerminationReason::BudgetExhausted;
    while iterations < budget {
        if optimum_reached(&pop, config.measure, optimal) {
            terminated = TerminationReason::OptimumReached;
            break;
        }
        step(&mut pop, config, instance, max_cost, &mut rng);
        iterations += 1;
    }
    if terminated == TerminationReason::BudgetExhausted
        && optimum_reached(&pop, config.measure, optimal)
    {
        terminated = TerminationReason::OptimumReached;
    }

    let gtype = pop.gtype();
    Ok(RunRecord {
        instance: instance.name().to_string(),
        n,
        config: config.clone(),
        iterations,
        terminated,
        gtype,
        gtype_percent: gtype_percent(gtype, n, config.mu),
        div: pop.div_score(),
        sigma: pop.sigma_score(),
        final_population: pop.tours().cloned().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diversity::DiversityVector;

    fn unit_config(mu: usize, measure: Measure, seed: u64) -> EaConfig {
        EaConfig {
            mu,
            measure,
            mutation: MutationKind::TwoOpt,
            style: MutationStyle::InversionChain,
            alpha: 0.0,
            max_iters: None,
            init: InitMode::RandomTours,
            seed,
        }
    }

    #[test]
    fn copies_of_optimal_start_fully_overlapping() {
        let inst = Instance::unit(10);
        let opt = Tour::new((0..10).collect()).unwrap();
        let config = EaConfig {
            init: InitMode::CopiesOfOptimal,
            mu: 10,
            ..unit_config(10, Measure::Ed, 0)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let pop = initialize(&config, &inst, Some(&opt), &mut rng).unwrap();
        assert_eq!(pop.gtype(), 0);
        assert_eq!(pop.overlap(0, 9), 10);
    }

    #[test]
    fn random_init_passes_unit_filter_for_any_alpha() {
        let inst = Instance::unit(12);
        for alpha in [0.0, 0.05, 1.0] {
            let config = EaConfig {
                alpha,
                ..unit_config(5, Measure::Pd, 3)
            };
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let pop = initialize(&config, &inst, None, &mut rng).unwrap();
            let max_cost = cost_ceiling(alpha, 12);
            assert!(pop.tours().all(|t| inst.tour_cost(t) <= max_cost));
        }
    }

    #[test]
    fn initialization_is_deterministic() {
        let inst = Instance::unit(20);
        let config = unit_config(4, Measure::Ed, 42);
        let mut a = ChaCha8Rng::seed_from_u64(config.seed);
        let mut b = ChaCha8Rng::seed_from_u64(config.seed);
        let pa = initialize(&config, &inst, None, &mut a).unwrap();
        let pb = initialize(&config, &inst, None, &mut b).unwrap();
        for i in 0..pa.len() {
            assert_eq!(pa.tour(i).perm(), pb.tour(i).perm());
        }
    }

    #[test]
    fn random_init_on_weighted_instance_is_rejected() {
        let inst = Instance::euclidean("tri", vec![(0.0, 0.0), (3.0, 0.0), (0.0, 4.0)]);
        let config = unit_config(3, Measure::Ed, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            initialize(&config, &inst, None, &mut rng).unwrap_err(),
            ConfigError::RandomInitOnWeighted
        );
    }

    #[test]
    fn rejected_offspring_leaves_population_unchanged() {
        // alpha = 0 on a weighted instance: only optimal-cost tours pass.
        let inst = Instance::euclidean(
            "line",
            vec![(0.0, 0.0), (10.0, 0.0), (20.0, 0.0), (30.0, 0.0)],
        );
        let opt = Tour::new(vec![0, 1, 2, 3]).unwrap();
        let config = EaConfig {
            init: InitMode::CopiesOfOptimal,
            mutation: MutationKind::TwoOpt,
            ..unit_config(3, Measure::Ed, 5)
        };
        let opt_cost = inst.tour_cost(&opt);
        let max_cost = cost_ceiling(0.0, opt_cost);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut pop = initialize(&config, &inst, Some(&opt), &mut rng).unwrap();
        for _ in 0..50 {
            step(&mut pop, &config, &inst, max_cost, &mut rng);
            assert_eq!(pop.len(), 3);
            assert!(pop.tours().all(|t| inst.tour_cost(t) <= max_cost));
        }
    }

    #[test]
    fn active_vector_never_increases_over_steps() {
        let inst = Instance::unit(10);
        for measure in [Measure::Ed, Measure::Pd] {
            let config = unit_config(3, measure, 11);
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let mut pop = initialize(&config, &inst, None, &mut rng).unwrap();
            let vector = |p: &Population| -> DiversityVector {
                match measure {
                    Measure::Ed => p.nd_vector(),
                    Measure::Pd => p.overlap_vector(),
                }
            };
            let mut prev = vector(&pop);
            for _ in 0..1000 {
                step(&mut pop, &config, &inst, 10, &mut rng);
                let cur = vector(&pop);
                assert!(cur <= prev, "diversity vector increased");
                prev = cur;
            }
        }
    }

    #[test]
    fn runs_reach_optimum_on_easy_unconstrained_cases() {
        // Up to mu/n ratios of 1/4; close to the mu = (n-1)/2 boundary
        // the success probability per iteration collapses and runs
        // start exhausting the mu*n^2 budget just below 100%.
        for n in [10usize, 17, 24, 30] {
            for mu in [2usize, n / 4] {
                for measure in [Measure::Ed, Measure::Pd] {
                    let inst = Instance::unit(n);
                    let config = unit_config(mu, measure, 1000 + n as u64);
                    let record = run(&config, &inst, None).unwrap();
                    assert_eq!(
                        record.terminated,
                        TerminationReason::OptimumReached,
                        "n={n} mu={mu} {measure:?}"
                    );
                    assert_eq!(record.gtype_percent, 100.0);
                    assert!(record.iterations <= config.budget(n));
                }
            }
        }
    }

    #[test]
    fn gtype_never_exceeds_optimum_and_members_stay_feasible() {
        let inst = Instance::euclidean(
            "grid9",
            vec![
                (0.0, 0.0),
                (1.0, 0.0),
                (2.0, 0.0),
                (0.0, 1.0),
                (1.0, 1.0),
                (2.0, 1.0),
                (0.0, 2.0),
                (1.0, 2.0),
                (2.0, 2.0),
            ],
        );
        let opt = Tour::new(vec![0, 1, 2, 5, 4, 7, 8, 6, 3]).unwrap();
        let config = EaConfig {
            init: InitMode::CopiesOfOptimal,
            alpha: 0.5,
            max_iters: Some(2000),
            ..unit_config(4, Measure::Pd, 7)
        };
        let record = run(&config, &inst, Some(&opt)).unwrap();
        assert!(record.gtype <= optimal_gtype(9, 4));
        let max_cost = cost_ceiling(0.5, inst.tour_cost(&opt));
        for tour in &record.final_population {
            assert!(inst.tour_cost(tour) <= max_cost);
        }
    }

    #[test]
    fn identical_seeds_reproduce_identical_records() {
        let inst = Instance::unit(15);
        let config = unit_config(4, Measure::Pd, 77);
        let a = run(&config, &inst, None).unwrap();
        let b = run(&config, &inst, None).unwrap();
        assert_eq!(a.iterations, b.iterations);
        assert_eq!(a.gtype, b.gtype);
        for (x, y) in a.final_population.iter().zip(&b.final_population) {
            assert_eq!(x.perm(), y.perm());
        }
    }

    #[test]
    fn budget_defaults_to_mu_n_squared() {
        let config = unit_config(3, Measure::Ed, 0);
        assert_eq!(config.budget(50), 7500);
        let config = EaConfig {
            max_iters: Some(123),
            ..config
        };
        assert_eq!(config.budget(50), 123);
    }

    #[test]
    fn cost_ceiling_handles_inexact_alpha() {
        // 1.2 is not exactly representable; 1.2 * 5 must still admit 6.
        assert_eq!(cost_ceiling(0.2, 5), 6);
        assert_eq!(cost_ceiling(0.0, 426), 426);
        assert_eq!(cost_ceiling(1.0, 426), 852);
        assert_eq!(cost_ceiling(0.05, 426), 447);
    }

    #[test]
    fn duplicate_offspring_keeps_overlap_vector_fixed_under_pd() {
        let inst = Instance::unit(8);
        let config = unit_config(3, Measure::Pd, 21);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut pop = initialize(&config, &inst, None, &mut rng).unwrap();
        let before = pop.overlap_vector();
        // Push an exact duplicate of member 0 and select under PD: the
        // newcomer or its twin goes, leaving the vector unchanged.
        let dup = pop.tour(0).clone();
        pop.push(dup);
        let victim = pop.select_removal(Measure::Pd);
        pop.remove(victim);
        assert_eq!(pop.overlap_vector(), before);
    }
}
