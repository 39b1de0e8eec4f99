//! Experiment harness: plan expansion, parallel execution, record
//! emission, correlation reports and SVG renderings.

pub mod corr;
pub mod records;
pub mod render;

use std::fmt;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diversity::Measure;
use crate::ea::{self, EaConfig, InitMode, RunRecord};
use crate::instance::{Instance, ParseError, Tour};
use crate::mutation::{MutationKind, MutationStyle};

/// An instance referenced by a plan: either a unit-weight complete
/// graph or a TSPLIB file with its optimal tour.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum InstanceSpec {
    Unit { n: usize },
    Tsplib { tsp: PathBuf, opt_tour: PathBuf },
}

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("plan grid is empty: {0}")]
    EmptyGrid(&'static str),
    #[error("replicates must be at least 1")]
    NoReplicates,
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("failed to parse {path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("invalid run configuration: {0}")]
    Config(#[from] ea::ConfigError),
}

/// A full experiment: the cross product of instances, population
/// sizes, thresholds, measures and mutation operators, replicated with
/// derived seeds `seed_base + replicate`.
///
/// Within one replicate every variant shares the same seed and hence
/// the same initial population, isolating the initialisation factor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub instances: Vec<InstanceSpec>,
    pub mus: Vec<usize>,
    pub alphas: Vec<f64>,
    pub measures: Vec<Measure>,
    pub mutations: Vec<MutationKind>,
    pub style: MutationStyle,
    pub replicates: usize,
    pub seed_base: u64,
}

impl ExperimentPlan {
    /// A plan over unit-weight instances (random initial tours).
    pub fn unconstrained(ns: &[usize], mus: &[usize], replicates: usize) -> ExperimentPlan {
        ExperimentPlan {
            instances: ns.iter().map(|&n| InstanceSpec::Unit { n }).collect(),
            mus: mus.to_vec(),
            alphas: vec![0.0],
            measures: vec![Measure::Ed, Measure::Pd],
            mutations: MutationKind::ALL.to_vec(),
            style: MutationStyle::InversionChain,
            replicates,
            seed_base: 1,
        }
    }

    /// A plan over TSPLIB instances (initialised from the optimal tour).
    pub fn tsplib(
        files: &[(PathBuf, PathBuf)],
        mus: &[usize],
        alphas: &[f64],
        replicates: usize,
    ) -> ExperimentPlan {
        ExperimentPlan {
            instances: files
                .iter()
                .map(|(tsp, opt_tour)| InstanceSpec::Tsplib {
                    tsp: tsp.clone(),
                    opt_tour: opt_tour.clone(),
                })
                .collect(),
            mus: mus.to_vec(),
            alphas: alphas.to_vec(),
            measures: vec![Measure::Ed, Measure::Pd],
            mutations: MutationKind::ALL.to_vec(),
            style: MutationStyle::InversionChain,
            replicates,
            seed_base: 1,
        }
    }

    fn validate(&self) -> Result<(), PlanError> {
        if self.instances.is_empty() {
            return Err(PlanError::EmptyGrid("no instances"));
        }
        if self.mus.is_empty() {
            return Err(PlanError::EmptyGrid("no population sizes"));
        }
        if self.alphas.is_empty() {
            return Err(PlanError::EmptyGrid("no alpha values"));
        }
        if self.measures.is_empty() {
            return Err(PlanError::EmptyGrid("no measures"));
        }
        if self.mutations.is_empty() {
            return Err(PlanError::EmptyGrid("no mutation operators"));
        }
        if self.replicates == 0 {
            return Err(PlanError::NoReplicates);
        }
        Ok(())
    }

    /// Total number of runs the plan expands to.
    pub fn run_count(&self) -> usize {
        self.instances.len()
            * self.mus.len()
            * self.alphas.len()
            * self.measures.len()
            * self.mutations.len()
            * self.replicates
    }
}

/// Named desk- and full-scale experiment batteries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Unit instances n in {20, 50}, mu in {3, 5}, 10 replicates.
    UnconstrainedDesk,
    /// eil51 + eil76, mu in {3, 10, 20}, all alphas, 5 replicates.
    TsplibDesk,
    /// Unit instances n in {50, 100, 200, 500}, mu in {3, 10, 20, 50},
    /// 30 replicates.
    UnconstrainedFull,
    /// eil51 + eil76 + eil101, mu in {3, 10, 20, 50}, all alphas,
    /// 30 replicates.
    TsplibFull,
}

impl Preset {
    pub const ALPHAS: [f64; 4] = [0.05, 0.2, 0.5, 1.0];

    pub fn as_str(self) -> &'static str {
        match self {
            Preset::UnconstrainedDesk => "unconstrained-desk",
            Preset::TsplibDesk => "tsplib-desk",
            Preset::UnconstrainedFull => "unconstrained-full",
            Preset::TsplibFull => "tsplib-full",
        }
    }

    /// Materialise the preset; `data_dir` locates the bundled TSPLIB
    /// files for the constrained batteries.
    pub fn plan(self, data_dir: &std::path::Path) -> ExperimentPlan {
        let eil = |name: &str| {
            (
                data_dir.join(format!("{name}.tsp")),
                data_dir.join(format!("{name}.opt.tour")),
            )
        };
        match self {
            Preset::UnconstrainedDesk => ExperimentPlan::unconstrained(&[20, 50], &[3, 5], 10),
            Preset::UnconstrainedFull => {
                ExperimentPlan::unconstrained(&[50, 100, 200, 500], &[3, 10, 20, 50], 30)
            }
            Preset::TsplibDesk => ExperimentPlan::tsplib(
                &[eil("eil51"), eil("eil76")],
                &[3, 10, 20],
                &Self::ALPHAS,
                5,
            ),
            Preset::TsplibFull => ExperimentPlan::tsplib(
                &[eil("eil51"), eil("eil76"), eil("eil101")],
                &[3, 10, 20, 50],
                &Self::ALPHAS,
                30,
            ),
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unconstrained-desk" => Ok(Preset::UnconstrainedDesk),
            "tsplib-desk" => Ok(Preset::TsplibDesk),
            "unconstrained-full" => Ok(Preset::UnconstrainedFull),
            "tsplib-full" => Ok(Preset::TsplibFull),
            other => Err(format!("unknown preset {other:?}")),
        }
    }
}

/// Load an instance spec, parsing TSPLIB files when needed.
pub fn load_instance(spec: &InstanceSpec) -> Result<(Instance, Option<Tour>), PlanError> {
    match spec {
        InstanceSpec::Unit { n } => Ok((Instance::unit(*n), None)),
        InstanceSpec::Tsplib { tsp, opt_tour } => {
            let read = |path: &PathBuf| {
                std::fs::read_to_string(path).map_err(|source| PlanError::Io {
                    path: path.clone(),
                    source,
                })
            };
            let instance =
                Instance::parse_tsplib(&read(tsp)?).map_err(|source| PlanError::Parse {
                    path: tsp.clone(),
                    source,
                })?;
            let tour = instance
                .parse_opt_tour(&read(opt_tour)?)
                .map_err(|source| PlanError::Parse {
                    path: opt_tour.clone(),
                    source,
                })?;
            Ok((instance, Some(tour)))
        }
    }
}

/// One expanded grid point: indices into the plan plus the derived seed.
#[derive(Debug, Clone, Copy)]
struct PlanEntry {
    instance_idx: usize,
    mu: usize,
    alpha: f64,
    measure: Measure,
    mutation: MutationKind,
    seed: u64,
}

fn expand(plan: &ExperimentPlan) -> Vec<PlanEntry> {
    let mut entries = Vec::with_capacity(plan.run_count());
    for instance_idx in 0..plan.instances.len() {
        for &mu in &plan.mus {
            for &alpha in &plan.alphas {
                for &measure in &plan.measures {
                    for &mutation in &plan.mutations {
                        for replicate in 0..plan.replicates {
                            entries.push(PlanEntry {
                                instance_idx,
                                mu,
                                alpha,
                                measure,
                                mutation,
                                seed: plan.seed_base + replicate as u64,
                            });
                        }
                    }
                }
            }
        }
    }
    entries
}

/// Mean and sample standard deviation of gtype%, iteration count and
/// sigma over the replicates of one grid cell.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryRow {
    pub instance: String,
    pub n: usize,
    pub mu: usize,
    pub alpha: f64,
    pub measure: Measure,
    pub mutation: MutationKind,
    pub runs: usize,
    pub mean_gtype_percent: f64,
    pub std_gtype_percent: f64,
    pub mean_iterations: f64,
    pub std_iterations: f64,
    pub mean_sigma: f64,
    pub std_sigma: f64,
    pub mean_div: f64,
    pub std_div: f64,
}

impl fmt::Display for SummaryRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<10} mu={:<3} alpha={:<5} {} {}  gtype% {:7.2} ± {:6.2}  iters {:10.2} ± {:9.2}  sigma {:6.4} ± {:6.4}",
            self.instance,
            self.mu,
            self.alpha,
            self.measure.as_str(),
            self.mutation.as_str(),
            self.mean_gtype_percent,
            self.std_gtype_percent,
            self.mean_iterations,
            self.std_iterations,
            self.mean_sigma,
            self.std_sigma,
        )
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let len = values.len() as f64;
    let mean = values.iter().sum::<f64>() / len;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (len - 1.0);
    (mean, var.sqrt())
}

/// Aggregate per-run records into one summary row per grid cell,
/// preserving record order.
pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut rows: Vec<SummaryRow> = Vec::new();
    let mut groups: Vec<(String, usize, f64, Measure, MutationKind, Vec<usize>)> = Vec::new();
    for (i, r) in records.iter().enumerate() {
        let key = (
            r.instance.clone(),
            r.config.mu,
            r.config.alpha,
            r.config.measure,
            r.config.mutation,
        );
        match groups.iter_mut().find(|(inst, mu, alpha, measure, mutation, _)| {
            *inst == key.0
                && *mu == key.1
                && *alpha == key.2
                && *measure == key.3
                && *mutation == key.4
        }) {
            Some((.., idxs)) => idxs.push(i),
            None => groups.push((key.0, key.1, key.2, key.3, key.4, vec![i])),
        }
    }
    for (instance, mu, alpha, measure, mutation, idxs) in groups {
        let collect = |f: &dyn Fn(&RunRecord) -> f64| -> Vec<f64> {
            idxs.iter().map(|&i| f(&records[i])).collect()
        };
        let (mean_g, std_g) = mean_std(&collect(&|r| r.gtype_percent));
        let (mean_i, std_i) = mean_std(&collect(&|r| r.iterations as f64));
        let (mean_s, std_s) = mean_std(&collect(&|r| r.sigma));
        let (mean_d, std_d) = mean_std(&collect(&|r| r.div));
        rows.push(SummaryRow {
            instance,
            n: records[idxs[0]].n,
            mu,
            alpha,
            measure,
            mutation,
            runs: idxs.len(),
            mean_gtype_percent: mean_g,
            std_gtype_percent: std_g,
            mean_iterations: mean_i,
            std_iterations: std_i,
            mean_sigma: mean_s,
            std_sigma: std_s,
            mean_div: mean_d,
            std_div: std_d,
        });
    }
    rows
}

/// Execute every run of the plan, `jobs` at a time, and return the
/// records in deterministic plan order (instance, grid point, seed)
/// together with per-cell summaries.
pub fn run_plan(
    plan: &ExperimentPlan,
    jobs: usize,
) -> Result<(Vec<RunRecord>, Vec<SummaryRow>), PlanError> {
    plan.validate()?;
    let loaded: Vec<(Instance, Option<Tour>)> = plan
        .instances
        .iter()
        .map(load_instance)
        .collect::<Result<_, _>>()?;
    let entries = expand(plan);
    let jobs = jobs.max(1).min(entries.len().max(1));

    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, Result<RunRecord, ea::ConfigError>)>();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            let tx = tx.clone();
            let next = &next;
            let entries = &entries;
            let loaded = &loaded;
            let style = plan.style;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= entries.len() {
                    break;
                }
                let e = entries[i];
                let (instance, opt_tour) = &loaded[e.instance_idx];
                let config = EaConfig {
                    mu: e.mu,
                    measure: e.measure,
                    mutation: e.mutation,
                    style,
                    alpha: e.alpha,
                    max_iters: None,
                    init: match opt_tour {
                        Some(_) => InitMode::CopiesOfOptimal,
                        None => InitMode::RandomTours,
                    },
                    seed: e.seed,
                };
                let record = ea::run(&config, instance, opt_tour.as_ref());
                if tx.send((i, record)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut slots: Vec<Option<RunRecord>> = (0..entries.len()).map(|_| None).collect();
        for (i, result) in rx {
            slots[i] = Some(result?);
        }
        let records: Vec<RunRecord> = slots.into_iter().map(|s| s.expect("run finished")).collect();
        let summary = summarize(&records);
        Ok((records, summary))
    })
}
