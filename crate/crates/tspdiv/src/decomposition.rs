//! Hamiltonian decompositions of complete graphs and provably
//! diversity-optimal populations.
//!
//! For odd `n` the classical Walecki construction partitions the edges
//! of `K_n` into `(n-1)/2` Hamiltonian cycles: a fixed zig-zag path on
//! the non-apex vertices is rotated and closed through the apex. For
//! even `n` the edges split into `(n-2)/2` cycles plus a perfect
//! matching, obtained here from the round-robin one-factorization by
//! pairing adjacent factors.
//!
//! [`optimal_population`] builds, for any population size, a multiset
//! of tours whose edge counts differ by at most one, which pins the
//! maximum achievable gtype (see [`crate::diversity::optimal_gtype`]).

use crate::diversity::{edge_counts, Population};
use crate::instance::Tour;

/// Edge-disjoint Hamiltonian cycles covering `K_n`, together with the
/// leftover perfect matching when `n` is even.
#[derive(Debug, Clone)]
pub struct HamiltonianDecomposition {
    /// `floor((n-1)/2)` pairwise edge-disjoint tours.
    pub cycles: Vec<Tour>,
    /// Present iff `n` is even: the `n/2` edges not covered by cycles.
    pub leftover_matching: Option<Vec<(u32, u32)>>,
}

/// Zig-zag Hamiltonian path on `0..len` used by the Walecki scheme:
/// 0, 1, len-1, 2, len-2, 3, ...
fn zigzag_path(len: usize) -> Vec<u32> {
    let mut path = Vec::with_capacity(len);
    path.push(0u32);
    let mut lo = 1u32;
    let mut hi = (len - 1) as u32;
    while path.len() < len {
        path.push(lo);
        lo += 1;
        if path.len() < len {
            path.push(hi);
            hi -= 1;
        }
    }
    path
}

/// Walecki cycles for odd `n`: rotate the zig-zag path on the `n - 1`
/// circle vertices and close each rotation through the apex `n - 1`.
fn walecki_odd(n: usize) -> Vec<Tour> {
    debug_assert!(n % 2 == 1);
    let circle = n - 1;
    let apex = (n - 1) as u32;
    let base = zigzag_path(circle);
    let h = (n - 1) / 2;
    (0..h)
        .map(|rot| {
            let mut perm = Vec::with_capacity(n);
            perm.push(apex);
            perm.extend(base.iter().map(|&v| (v + rot as u32) % circle as u32));
            Tour::new(perm).expect("walecki cycle is a permutation")
        })
        .collect()
}

/// Round-robin one-factorization of `K_n` for even `n`: factor `j`
/// pairs the apex with circle vertex `j` and `j+i` with `j-i` modulo
/// `n - 1`. The `n - 1` factors partition the edge set.
fn one_factorization(n: usize) -> Vec<Vec<(u32, u32)>> {
    debug_assert!(n.is_multiple_of(2));
    let q = n - 1;
    let apex = (n - 1) as u32;
    (0..q)
        .map(|j| {
            let mut factor = Vec::with_capacity(n / 2);
            factor.push((apex, j as u32));
            for i in 1..n / 2 {
                let u = ((j + i) % q) as u32;
                let v = ((j + q - i) % q) as u32;
                factor.push((u, v));
            }
            factor
        })
        .collect()
}

/// Trace the union of two disjoint perfect matchings into a single
/// Hamiltonian cycle. Panics if the union splits into several cycles;
/// adjacent round-robin factors never do.
fn tour_from_matchings(n: usize, f1: &[(u32, u32)], f2: &[(u32, u32)]) -> Tour {
    let mut adj: Vec<Vec<u32>> = vec![Vec::with_capacity(2); n];
    for &(u, v) in f1.iter().chain(f2) {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    let mut perm = Vec::with_capacity(n);
    let mut prev = u32::MAX;
    let mut cur = 0u32;
    for _ in 0..n {
        perm.push(cur);
        let next = adj[cur as usize]
            .iter()
            .copied()
            .find(|&w| w != prev)
            .expect("matching union is 2-regular");
        prev = cur;
        cur = next;
    }
    assert_eq!(cur, 0, "matching union must close into one cycle");
    Tour::new(perm).expect("single cycle visits every vertex once")
}

/// Decompose `K_n` into edge-disjoint Hamiltonian cycles (odd `n`),
/// or cycles plus a perfect matching (even `n`).
pub fn decompose(n: usize) -> HamiltonianDecomposition {
    assert!(n >= 3, "decomposition needs n >= 3, got {n}");
    if n % 2 == 1 {
        HamiltonianDecomposition {
            cycles: walecki_odd(n),
            leftover_matching: None,
        }
    } else {
        let factors = one_factorization(n);
        let q = n - 1;
        let cycles = (0..q / 2)
            .map(|a| tour_from_matchings(n, &factors[2 * a], &factors[2 * a + 1]))
            .collect();
        HamiltonianDecomposition {
            cycles,
            leftover_matching: Some(factors[q - 1].clone()),
        }
    }
}

/// Multiplicities over the `q` adjacent-factor tours of an even-`n`
/// construction, chosen so each factor's two incident tours together
/// appear either `floor(2mu/q)` or `ceil(2mu/q)` times.
fn even_multiplicities(q: usize, mu: usize) -> Vec<usize> {
    let a = 2 * mu / q;
    let b = 2 * mu % q;
    let mut mult = vec![a / 2; q];
    if a.is_multiple_of(2) {
        // b is even: one extra on b/2 pairwise non-adjacent positions.
        for i in 0..b / 2 {
            mult[2 * i] += 1;
        }
    } else {
        // b is odd: all positions get one extra except (q-b)/2
        // pairwise non-adjacent ones.
        for m in mult.iter_mut() {
            *m += 1;
        }
        for i in 0..(q - b) / 2 {
            mult[2 * i + 1] -= 1;
        }
    }
    debug_assert_eq!(mult.iter().sum::<usize>(), mu);
    mult
}

/// A population of `mu` tours on `K_n` whose edge counts differ by at
/// most one, hence of maximal gtype.
///
/// Odd `n`: every Walecki cycle `floor(mu/h)` times, plus the first
/// `mu mod h` cycles once more. Even `n`: tours are unions of adjacent
/// round-robin factors, repeated with balanced multiplicities.
pub fn optimal_population(n: usize, mu: usize) -> Vec<Tour> {
    assert!(n >= 3, "optimal population needs n >= 3, got {n}");
    assert!(mu >= 1, "optimal population needs mu >= 1, got {mu}");
    let mut out = Vec::with_capacity(mu);
    if n % 2 == 1 {
        let cycles = walecki_odd(n);
        let h = cycles.len();
        let k = mu / h;
        let r = mu % h;
        for (c, cycle) in cycles.iter().enumerate() {
            let copies = k + usize::from(c < r);
            for _ in 0..copies {
                out.push(cycle.clone());
            }
        }
    } else {
        let factors = one_factorization(n);
        let q = n - 1;
        let mult = even_multiplicities(q, mu);
        for j in 0..q {
            if mult[j] == 0 {
                continue;
            }
            let tour = tour_from_matchings(n, &factors[j], &factors[(j + 1) % q]);
            for _ in 0..mult[j] {
                out.push(tour.clone());
            }
        }
    }
    debug_assert_eq!(out.len(), mu);
    out
}

/// Outcome of checking the count-spread bound on the constructed
/// optimal population.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BalanceWitness {
    pub holds: bool,
    pub min_count: u32,
    pub max_count: u32,
}

/// Build [`optimal_population`] for `(n, mu)` and check that its edge
/// counts span at most one: `max - min <= 1`, over all edges of `K_n`.
pub fn verify_count_balance(n: usize, mu: usize) -> BalanceWitness {
    let tours = optimal_population(n, mu);
    let counts = edge_counts(&tours, n);
    let min_count = counts.iter().copied().min().unwrap();
    let max_count = counts.iter().copied().max().unwrap();
    BalanceWitness {
        holds: max_count - min_count <= 1,
        min_count,
        max_count,
    }
}

/// Convenience: gtype of the constructed optimal population, for
/// cross-checking against [`crate::diversity::optimal_gtype`].
pub fn constructed_gtype(n: usize, mu: usize) -> u64 {
    Population::new(n, optimal_population(n, mu)).gtype()
}
