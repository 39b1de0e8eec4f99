//! Population-level diversity measures for sets of tours.
//!
//! Two measures drive survival selection:
//!
//! * **ED (edge diversity)** works on the edge-count table: for every
//!   edge of the complete graph, how many tours in the population use
//!   it. The population-level vector [`Population::nd_vector`] collects
//!   all counts sorted in descending order and is minimised
//!   lexicographically. The per-member fitness
//!   [`Population::fitness_ed`] (counts of the member's own edges,
//!   descending) is maximised instead; the argmin/argmax sets coincide.
//!
//! * **PD (pairwise distances)** works on the overlap matrix: for every
//!   pair of tours, the number of shared edges. The vector
//!   [`Population::overlap_vector`] sorts all pairwise overlaps
//!   descending and is minimised lexicographically; the equivalent
//!   per-member fitness is [`Population::fitness_pd`].
//!
//! Both caches (edge counts and the overlap matrix) are maintained
//! incrementally across insertions, removals and swaps, and always
//! equal a from-scratch recomputation.

use std::cmp::Ordering;

use crate::instance::{edge_count, edge_id, EdgeId, Tour};

/// Which diversity measure drives survival selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Measure {
    /// Edge diversity: equalise edge counts across the population.
    Ed,
    /// Pairwise distances: equalise and shrink pairwise edge overlaps.
    Pd,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Ed => "ed",
            Measure::Pd => "pd",
        }
    }
}

impl std::str::FromStr for Measure {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ed" => Ok(Measure::Ed),
            "pd" => Ok(Measure::Pd),
            other => Err(format!("unknown measure {other:?}, expected ed or pd")),
        }
    }
}

/// A sequence of non-negative integers kept in descending order and
/// compared lexicographically. Only equal-length vectors compare.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiversityVector(Vec<u32>);

impl DiversityVector {
    pub fn new(mut values: Vec<u32>) -> Self {
        values.sort_unstable_by(|a, b| b.cmp(a));
        DiversityVector(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl PartialOrd for DiversityVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DiversityVector {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(
            self.0.len(),
            other.0.len(),
            "diversity vectors of different lengths are incomparable"
        );
        self.0.cmp(&other.0)
    }
}

/// Maximum achievable gtype for a population of `mu` tours on the
/// complete graph with `n` vertices.
///
/// With `m = n(n-1)/2`, the sum of edge counts is fixed at `mu*n`, so
/// the count table minimising the sum of squares is the balanced one:
/// `q = floor(mu*n/m)` on `m - r` edges and `q+1` on `r = mu*n mod m`
/// edges. For `mu <= floor((n-1)/2)` this reduces to `mu(mu-1)n`.
pub fn optimal_gtype(n: usize, mu: usize) -> u64 {
    assert!(n >= 3, "optimal_gtype needs n >= 3, got {n}");
    assert!(mu >= 1, "optimal_gtype needs mu >= 1, got {mu}");
    let m = edge_count(n) as u64;
    let total = (mu * n) as u64;
    let q = total / m;
    let r = total % m;
    let min_sum_sq = (m - r) * q * q + r * (q + 1) * (q + 1);
    (mu * (mu - 1) * n) as u64 + total - min_sum_sq
}

/// gtype as a percentage of [`optimal_gtype`]; 100 when the optimum is 0.
pub fn gtype_percent(gtype: u64, n: usize, mu: usize) -> f64 {
    let opt = optimal_gtype(n, mu);
    if opt == 0 {
        100.0
    } else {
        100.0 * gtype as f64 / opt as f64
    }
}

#[derive(Debug)]
struct Member {
    tour: Tour,
    // Two cycle neighbours per vertex, for O(1) edge membership.
    adj: Vec<[u32; 2]>,
}

impl Member {
    fn new(tour: Tour) -> Member {
        let adj = tour.neighbor_table();
        Member { tour, adj }
    }

    fn contains_edge(&self, u: u32, v: u32) -> bool {
        let a = self.adj[u as usize];
        a[0] == v || a[1] == v
    }
}

/// A multiset of tours over a fixed vertex count, with incrementally
/// maintained edge counts and pairwise overlap matrix. Duplicate tours
/// are permitted.
#[derive(Debug)]
pub struct Population {
    n: usize,
    members: Vec<Member>,
    edge_counts: Vec<u32>,
    // Symmetric overlap matrix as rows; diagonal entries are unused.
    overlaps: Vec<Vec<u32>>,
    // Running sum of squared edge counts, so gtype is O(1).
    sum_sq_counts: u64,
}

impl Population {
    /// Build a population and its caches from scratch.
    pub fn new(n: usize, tours: Vec<Tour>) -> Population {
        let mut pop = Population {
            n,
            members: Vec::with_capacity(tours.len() + 1),
            edge_counts: vec![0; edge_count(n)],
            overlaps: Vec::with_capacity(tours.len() + 1),
            sum_sq_counts: 0,
        };
        for t in tours {
            pop.push(t);
        }
        pop
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tour(&self, i: usize) -> &Tour {
        &self.members[i].tour
    }

    pub fn tours(&self) -> impl Iterator<Item = &Tour> {
        self.members.iter().map(|m| &m.tour)
    }

    /// Count of tours containing the given edge.
    pub fn edge_count_of(&self, e: EdgeId) -> u32 {
        self.edge_counts[e.0 as usize]
    }

    /// The full edge-count table indexed by [`EdgeId`].
    pub fn edge_counts(&self) -> &[u32] {
        &self.edge_counts
    }

    /// Number of edges shared by members `i` and `j`.
    pub fn overlap(&self, i: usize, j: usize) -> u32 {
        assert_ne!(i, j, "overlap of a member with itself is unused");
        self.overlaps[i][j]
    }

    fn bump_count(&mut self, e: EdgeId, up: bool) {
        let c = &mut self.edge_counts[e.0 as usize];
        if up {
            self.sum_sq_counts += (2 * *c + 1) as u64;
            *c += 1;
        } else {
            self.sum_sq_counts -= (2 * *c - 1) as u64;
            *c -= 1;
        }
    }

    /// Append a tour, updating caches incrementally.
    pub fn push(&mut self, tour: Tour) {
        assert_eq!(tour.len(), self.n, "tour does not match population size");
        let member = Member::new(tour);
        let mut row = Vec::with_capacity(self.members.len() + 1);
        for existing in &self.members {
            let mut o = 0u32;
            for (u, v) in member.tour.edges() {
                if existing.contains_edge(u, v) {
                    o += 1;
                }
            }
            row.push(o);
        }
        row.push(0); // unused diagonal
        for (i, o) in row.iter().enumerate().take(self.members.len()) {
            self.overlaps[i].push(*o);
        }
        for e in member.tour.edge_ids() {
            self.bump_count(e, true);
        }
        self.overlaps.push(row);
        self.members.push(member);
    }

    /// Remove the member at `i`, updating caches incrementally.
    pub fn remove(&mut self, i: usize) -> Tour {
        let member = self.members.remove(i);
        for e in member.tour.edge_ids() {
            self.bump_count(e, false);
        }
        self.overlaps.remove(i);
        for row in &mut self.overlaps {
            row.remove(i);
        }
        member.tour
    }

    /// Replace the member at `i` with `tour`, updating caches
    /// incrementally. Returns the previous tour.
    pub fn replace(&mut self, i: usize, tour: Tour) -> Tour {
        assert_eq!(tour.len(), self.n, "tour does not match population size");
        let member = Member::new(tour);
        let old = std::mem::replace(&mut self.members[i], member);
        for e in old.tour.edge_ids() {
            self.bump_count(e, false);
        }
        let new_edges: Vec<EdgeId> = self.members[i].tour.edge_ids().collect();
        for e in new_edges {
            self.bump_count(e, true);
        }
        for j in 0..self.members.len() {
            if j == i {
                continue;
            }
            let mut o = 0u32;
            for (u, v) in self.members[i].tour.edges() {
                if self.members[j].contains_edge(u, v) {
                    o += 1;
                }
            }
            self.overlaps[i][j] = o;
            self.overlaps[j][i] = o;
        }
        old.tour
    }

    /// Genotypic diversity: the sum over ordered pairs of tours of
    /// their edge-set differences. Computed from the edge-count
    /// identity; bounded by `mu(mu-1)n`.
    pub fn gtype(&self) -> u64 {
        let mu = self.members.len() as u64;
        let n = self.n as u64;
        debug_assert_eq!(
            self.edge_counts.iter().map(|&c| c as u64).sum::<u64>(),
            mu * n
        );
        mu * (mu - 1) * n + mu * n - self.sum_sq_counts
    }

    /// The descending-sorted vector of all `n(n-1)/2` edge counts.
    pub fn nd_vector(&self) -> DiversityVector {
        DiversityVector::new(self.edge_counts.clone())
    }

    /// The descending-sorted vector of all pairwise overlaps, one entry
    /// per unordered pair of members. Needs at least two members.
    pub fn overlap_vector(&self) -> DiversityVector {
        let mu = self.members.len();
        assert!(mu >= 2, "overlap vector needs at least 2 members");
        let mut values = Vec::with_capacity(mu * (mu - 1) / 2);
        for i in 0..mu {
            for j in (i + 1)..mu {
                values.push(self.overlaps[i][j]);
            }
        }
        DiversityVector::new(values)
    }

    fn fitness_ed_into(&self, i: usize, buf: &mut Vec<u32>) {
        buf.clear();
        buf.extend(
            self.members[i]
                .tour
                .edge_ids()
                .map(|e| self.edge_counts[e.0 as usize]),
        );
        buf.sort_unstable_by(|a, b| b.cmp(a));
    }

    fn fitness_pd_into(&self, i: usize, buf: &mut Vec<u32>) {
        buf.clear();
        for j in 0..self.members.len() {
            if j != i {
                buf.push(self.overlaps[i][j]);
            }
        }
        buf.sort_unstable_by(|a, b| b.cmp(a));
    }

    /// ED fitness of member `i`: the counts of its own `n` edges,
    /// descending. Every entry is at least 1.
    pub fn fitness_ed(&self, i: usize) -> DiversityVector {
        let mut buf = Vec::new();
        self.fitness_ed_into(i, &mut buf);
        DiversityVector(buf)
    }

    /// PD fitness of member `i`: its overlaps with every other member,
    /// descending; length `len() - 1`.
    pub fn fitness_pd(&self, i: usize) -> DiversityVector {
        assert!(self.members.len() >= 2, "PD fitness needs >= 2 members");
        let mut buf = Vec::new();
        self.fitness_pd_into(i, &mut buf);
        DiversityVector(buf)
    }

    fn fitness_into(&self, measure: Measure, i: usize, buf: &mut Vec<u32>) {
        match measure {
            Measure::Ed => self.fitness_ed_into(i, buf),
            Measure::Pd => self.fitness_pd_into(i, buf),
        }
    }

    /// Index to remove so that the surviving population minimises the
    /// measure's diversity vector: the member with the lexicographically
    /// maximal fitness vector. Ties are broken toward the smallest
    /// index. Removing any tied member yields the same surviving
    /// vector, but evicting the earliest incumbent lets a tied
    /// offspring replace it, and that neutral drift is what carries
    /// the search across plateaus near the optimum.
    pub fn select_removal(&self, measure: Measure) -> usize {
        assert!(self.members.len() >= 2, "selection needs >= 2 members");
        let mut best = Vec::new();
        let mut cand = Vec::new();
        self.fitness_into(measure, 0, &mut best);
        let mut best_idx = 0;
        for i in 1..self.members.len() {
            self.fitness_into(measure, i, &mut cand);
            if cand.as_slice() > best.as_slice() {
                std::mem::swap(&mut best, &mut cand);
                best_idx = i;
            }
        }
        best_idx
    }

    /// All indices attaining the maximal fitness vector (the full
    /// argmax set; [`Population::select_removal`] picks its last entry).
    pub fn selection_candidates(&self, measure: Measure) -> Vec<usize> {
        assert!(self.members.len() >= 2, "selection needs >= 2 members");
        let mut best = Vec::new();
        let mut cand = Vec::new();
        self.fitness_into(measure, 0, &mut best);
        let mut out = vec![0];
        for i in 1..self.members.len() {
            self.fitness_into(measure, i, &mut cand);
            match cand.as_slice().cmp(best.as_slice()) {
                Ordering::Greater => {
                    std::mem::swap(&mut best, &mut cand);
                    out.clear();
                    out.push(i);
                }
                Ordering::Equal => out.push(i),
                Ordering::Less => {}
            }
        }
        out
    }

    /// Normalised sum over tours of each tour's minimum edge distance
    /// to the rest: `(1/(mu*n)) * sum_T min_{X != T} |E(T) \ E(X)|`.
    /// 1 iff all pairwise overlaps are 0, 0 iff all tours coincide.
    pub fn div_score(&self) -> f64 {
        let mu = self.members.len();
        assert!(mu >= 2, "div score needs at least 2 members");
        let mut total = 0u64;
        for i in 0..mu {
            let max_overlap = (0..mu)
                .filter(|&j| j != i)
                .map(|j| self.overlaps[i][j])
                .max()
                .unwrap();
            total += (self.n as u32 - max_overlap) as u64;
        }
        total as f64 / (mu * self.n) as f64
    }

    /// Range of pairwise overlaps, `max - min`.
    pub fn overlap_spread(&self) -> u32 {
        let mu = self.members.len();
        assert!(mu >= 2, "overlap spread needs at least 2 members");
        let mut lo = u32::MAX;
        let mut hi = 0;
        for i in 0..mu {
            for j in (i + 1)..mu {
                let o = self.overlaps[i][j];
                lo = lo.min(o);
                hi = hi.max(o);
            }
        }
        hi - lo
    }

    /// Normalised overlap range `(max - min)/n`; 0 iff all pairwise
    /// overlaps are equal.
    pub fn sigma_score(&self) -> f64 {
        self.overlap_spread() as f64 / self.n as f64
    }
}

/// Edge-count table for a set of tours, indexed by [`EdgeId`].
pub fn edge_counts(tours: &[Tour], n: usize) -> Vec<u32> {
    let mut counts = vec![0u32; edge_count(n)];
    for t in tours {
        for (u, v) in t.edges() {
            counts[edge_id(n, u, v).0 as usize] += 1;
        }
    }
    counts
}
