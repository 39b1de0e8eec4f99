//! k-opt mutation operators on tours.
//!
//! The default operator applies `k - 1` independent, uniformly sampled,
//! non-degenerate segment inversions (so 2-OPT is one inversion, 3-OPT
//! two, 4-OPT three). An alternative reconnection style removes `k`
//! cycle edges and reconnects the resulting paths into a uniformly
//! random single cycle; it exists for sensitivity studies and is not
//! the default.

use rand::Rng;

use crate::instance::Tour;

/// The mutation operator family: k-opt with k in {2, 3, 4}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MutationKind {
    TwoOpt,
    ThreeOpt,
    FourOpt,
}

impl MutationKind {
    pub fn k(self) -> usize {
        match self {
            MutationKind::TwoOpt => 2,
            MutationKind::ThreeOpt => 3,
            MutationKind::FourOpt => 4,
        }
    }

    /// Number of segment inversions the default style performs.
    pub fn inversions(self) -> usize {
        self.k() - 1
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MutationKind::TwoOpt => "2opt",
            MutationKind::ThreeOpt => "3opt",
            MutationKind::FourOpt => "4opt",
        }
    }

    pub const ALL: [MutationKind; 3] = [
        MutationKind::TwoOpt,
        MutationKind::ThreeOpt,
        MutationKind::FourOpt,
    ];
}

impl std::str::FromStr for MutationKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "2opt" | "2-opt" => Ok(MutationKind::TwoOpt),
            "3opt" | "3-opt" => Ok(MutationKind::ThreeOpt),
            "4opt" | "4-opt" => Ok(MutationKind::FourOpt),
            other => Err(format!(
                "unknown mutation {other:?}, expected 2opt, 3opt or 4opt"
            )),
        }
    }
}

/// How a k-opt move is realised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub enum MutationStyle {
    /// `k - 1` uniformly random non-degenerate segment inversions.
    #[default]
    InversionChain,
    /// Remove `k` cycle edges, reconnect the paths into a uniformly
    /// random single cycle.
    Reconnection,
}

impl MutationStyle {
    pub fn as_str(self) -> &'static str {
        match self {
            MutationStyle::InversionChain => "inversion",
            MutationStyle::Reconnection => "reconnection",
        }
    }
}

impl std::str::FromStr for MutationStyle {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "inversion" => Ok(MutationStyle::InversionChain),
            "reconnection" => Ok(MutationStyle::Reconnection),
            other => Err(format!(
                "unknown mutation style {other:?}, expected inversion or reconnection"
            )),
        }
    }
}

/// True iff reversing positions `i..=j` leaves the edge set unchanged:
/// the segment is the whole cycle or the whole cycle minus one vertex
/// (single-vertex segments are already excluded by `i < j`).
fn degenerate(n: usize, i: usize, j: usize) -> bool {
    let len = j - i + 1;
    len >= n - 1
}

/// Reverse tour positions `i..=j` (0 <= i < j < n).
///
/// A non-degenerate reversal exchanges exactly 2 edges; degenerate
/// position pairs are rejected because they leave the edge set as is.
pub fn invert_segment(tour: &Tour, i: usize, j: usize) -> Tour {
    let n = tour.len();
    assert!(i < j && j < n, "segment positions must satisfy i < j < n");
    assert!(
        !degenerate(n, i, j),
        "reversing positions {i}..={j} of a {n}-cycle leaves the edge set unchanged"
    );
    let mut perm = tour.perm().to_vec();
    perm[i..=j].reverse();
    Tour::new(perm).expect("reversal preserves the permutation")
}

/// Sample a uniformly random non-degenerate position pair. `None` when
/// no such pair exists (n <= 3: complete graphs that small carry a
/// single Hamiltonian cycle, so every reversal is degenerate).
fn sample_positions<R: Rng>(n: usize, rng: &mut R) -> Option<(usize, usize)> {
    if n <= 3 {
        return None;
    }
    loop {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        if !degenerate(n, i, j) {
            return Some((i, j));
        }
    }
}

/// Produce one offspring by k-opt mutation.
pub fn mutate<R: Rng>(tour: &Tour, kind: MutationKind, style: MutationStyle, rng: &mut R) -> Tour {
    match style {
        MutationStyle::InversionChain => mutate_inversions(tour, kind.inversions(), rng),
        MutationStyle::Reconnection => mutate_reconnection(tour, kind.k(), rng),
    }
}

fn mutate_inversions<R: Rng>(tour: &Tour, inversions: usize, rng: &mut R) -> Tour {
    let n = tour.len();
    let mut perm = tour.perm().to_vec();
    for _ in 0..inversions {
        if let Some((i, j)) = sample_positions(n, rng) {
            perm[i..=j].reverse();
        }
    }
    Tour::new(perm).expect("inversions preserve the permutation")
}

fn mutate_reconnection<R: Rng>(tour: &Tour, k: usize, rng: &mut R) -> Tour {
    let n = tour.len();
    if n <= 3 || k > n {
        return tour.clone();
    }
    // Cut after positions c: removes edges (perm[c], perm[c+1 mod n]).
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, n, k).into_vec();
    cuts.sort_unstable();
    // Segments between consecutive cuts, each a path in the cycle.
    let perm = tour.perm();
    let mut segments: Vec<Vec<u32>> = Vec::with_capacity(k);
    for w in 0..k {
        let start = (cuts[w] + 1) % n;
        let end = cuts[(w + 1) % k];
        let mut seg = Vec::new();
        let mut p = start;
        loop {
            seg.push(perm[p]);
            if p == end {
                break;
            }
            p = (p + 1) % n;
        }
        segments.push(seg);
    }
    // Keep segment 0 fixed in place and orientation; shuffle the order
    // of the rest and flip each with probability 1/2. This samples the
    // reconnections into a single cycle uniformly (identity included).
    let mut rest: Vec<Vec<u32>> = segments.split_off(1);
    for i in (1..rest.len()).rev() {
        let j = rng.gen_range(0..=i);
        rest.swap(i, j);
    }
    let mut out = segments.pop().expect("segment 0");
    for mut seg in rest {
        if rng.gen_bool(0.5) {
            seg.reverse();
        }
        out.extend(seg);
    }
    Tour::new(out).expect("reconnection preserves the permutation")
}

/// Number of edges of `a` that are not edges of `b`.
pub fn edge_difference(a: &Tour, b: &Tour) -> usize {
    let adj = b.neighbor_table();
    a.edges()
        .filter(|&(u, v)| {
            let row = adj[u as usize];
            row[0] != v && row[1] != v
        })
        .count()
}
