//! Constructing provably diversity-optimal populations.
//!
//! Complete graphs decompose into edge-disjoint Hamiltonian cycles
//! (odd n), or cycles plus a perfect matching (even n). Stacking such
//! cycles with balanced multiplicities yields, for any population
//! size, edge counts that differ by at most one — the ceiling against
//! which the evolutionary runs report their gtype percentages.

use tspdiv::diversity::{optimal_gtype, Population};
use tspdiv::{decompose, optimal_population, verify_count_balance};

fn main() {
    for n in [5usize, 6, 7, 12] {
        let d = decompose(n);
        println!(
            "K{n}: {} edge-disjoint cycles{}",
            d.cycles.len(),
            match &d.leftover_matching {
                Some(m) => format!(" + perfect matching of {} edges", m.len()),
                None => String::new(),
            }
        );
        for (i, cycle) in d.cycles.iter().enumerate() {
            println!("  cycle {i}: {:?}", cycle.perm());
        }
    }

    println!();
    for (n, mu) in [(5, 5), (6, 9), (11, 4), (14, 12)] {
        let witness = verify_count_balance(n, mu);
        let pop = Population::new(n, optimal_population(n, mu));
        println!(
            "n={n:2} mu={mu:2}: counts in [{}, {}], gtype {} / optimal {}",
            witness.min_count,
            witness.max_count,
            pop.gtype(),
            optimal_gtype(n, mu)
        );
        assert!(witness.holds);
        assert_eq!(pop.gtype(), optimal_gtype(n, mu));
    }
}
