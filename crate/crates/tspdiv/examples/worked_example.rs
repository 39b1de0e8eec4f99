//! The two diversity measures on a 5-city instance, by hand.
//!
//! Four tours over K5 form two populations of three: P1 maximises
//! pairwise-overlap uniformity, P2 maximises the scalar gtype score.
//! Comparing their scores shows why the two measures pull in different
//! directions.

use tspdiv::{Measure, Population, Tour};

fn main() {
    let t1 = Tour::new(vec![0, 2, 4, 3, 1]).unwrap();
    let t2 = Tour::new(vec![0, 4, 3, 2, 1]).unwrap();
    let t3 = Tour::new(vec![0, 1, 4, 2, 3]).unwrap();
    let t4 = Tour::new(vec![0, 4, 1, 2, 3]).unwrap();

    let p1 = Population::new(5, vec![t1.clone(), t2.clone(), t3]);
    let p2 = Population::new(5, vec![t1, t2, t4]);

    for (name, pop) in [("P1", &p1), ("P2", &p2)] {
        println!("{name}:");
        println!("  gtype          = {}", pop.gtype());
        println!("  edge counts    = {:?}", pop.nd_vector().values());
        println!("  overlaps       = {:?}", pop.overlap_vector().values());
        println!("  div            = {:.2}", pop.div_score());
        println!("  sigma          = {:.2}", pop.sigma_score());
        for i in 0..pop.len() {
            println!(
                "  member {i}: ed fitness {:?}, pd fitness {:?}",
                pop.fitness_ed(i).values(),
                pop.fitness_pd(i).values()
            );
        }
    }

    assert_eq!(p1.gtype(), 18);
    assert_eq!(p2.gtype(), 20);
    assert_eq!(p1.overlap_vector().values(), &[2, 2, 2]);
    assert_eq!(p2.overlap_vector().values(), &[3, 2, 0]);
    // P1 is the PD-preferred population, P2 the gtype maximum.
    assert!(p1.overlap_vector() < p2.overlap_vector());

    // Leave-one-out selection: which member would each measure evict?
    for (name, pop) in [("P1", &p1), ("P2", &p2)] {
        println!(
            "{name}: ED evicts member {}, PD evicts member {}",
            pop.select_removal(Measure::Ed),
            pop.select_removal(Measure::Pd)
        );
    }
}
