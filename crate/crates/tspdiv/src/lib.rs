//! Evolving maximally diverse sets of high-quality TSP tours.
//!
//! Given a complete TSP instance and a quality threshold, this crate
//! searches for a population of tours that is as diverse as possible
//! while every member stays within a `(1 + alpha)` factor of the
//! optimal tour length. Two lexicographic diversity measures drive the
//! search: equalising per-edge usage counts across the population
//! (edge diversity, ED) and equalising pairwise edge overlaps between
//! tours (pairwise distances, PD).
//!
//! The pieces:
//!
//! * [`instance`] — TSPLIB parsing (`EUC_2D`), unit-weight instances,
//!   tours and canonical edge indexing.
//! * [`diversity`] — populations with incrementally maintained edge
//!   counts and overlap matrices, both diversity measures, the gtype /
//!   div / sigma scores, and survival selection.
//! * [`mutation`] — 2-opt / 3-opt / 4-opt mutation operators.
//! * [`decomposition`] — Walecki-style Hamiltonian decompositions and
//!   constructions of provably diversity-optimal populations.
//! * [`ea`] — the (mu+1) evolutionary algorithm.
//! * [`harness`] — experiment plans, record emission (CSV / JSON
//!   lines), correlation reports and SVG renderings.
//!
//! Start with the `examples/` directory: each file is a runnable tour
//! of one capability (`cargo run --release --example worked_example`).

pub mod decomposition;
pub mod diversity;
pub mod ea;
pub mod harness;
pub mod instance;
pub mod mutation;

pub use decomposition::{decompose, optimal_population, verify_count_balance, HamiltonianDecomposition};
pub use diversity::{optimal_gtype, DiversityVector, Measure, Population};
pub use ea::{run, EaConfig, InitMode, RunRecord, TerminationReason};
pub use instance::{edge_id, EdgeId, Instance, Tour, WeightKind};
pub use mutation::{invert_segment, mutate, MutationKind, MutationStyle};
