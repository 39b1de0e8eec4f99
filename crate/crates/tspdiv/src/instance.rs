//! Complete TSP instances, TSPLIB parsing and canonical edge indexing.
//!
//! An [`Instance`] is a complete graph on `n >= 3` vertices whose edge
//! weights are either rounded Euclidean distances between planar
//! coordinates (TSPLIB `EUC_2D`) or uniformly 1 (`unit` instances, used
//! for the unconstrained experiments where every tour is accepted).
//! Undirected edges are indexed canonically by [`EdgeId`] so that
//! population-level edge statistics can live in flat arrays.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// How edge weights are derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightKind {
    /// Nearest-integer Euclidean distance between vertex coordinates
    /// (the TSPLIB `EUC_2D` convention).
    EuclideanRounded,
    /// Every edge has weight 1; all tours share the same cost.
    Unit,
}

/// Canonical index of an undirected edge `{u, v}`, `u != v`.
///
/// For a fixed vertex count `n` the mapping between indices in
/// `[0, n(n-1)/2)` and unordered vertex pairs is a bijection; see
/// [`edge_id`] and [`edge_endpoints`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

/// Number of undirected edges of the complete graph on `n` vertices.
pub fn edge_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Canonical edge index of the unordered pair `{u, v}`.
///
/// Symmetric in `u` and `v`; panics if `u == v` or a label is out of range.
pub fn edge_id(n: usize, u: u32, v: u32) -> EdgeId {
    assert!(u != v, "self-loop {{{u},{u}}} is not an edge");
    assert!(
        (u as usize) < n && (v as usize) < n,
        "vertex out of range for n={n}"
    );
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    let a = a as usize;
    let b = b as usize;
    // Pairs are laid out row by row: row a holds {a, a+1} .. {a, n-1}.
    let offset = a * (2 * n - a - 1) / 2;
    EdgeId((offset + b - a - 1) as u32)
}

/// Inverse of [`edge_id`]: the canonical pair `(u, v)` with `u < v`.
pub fn edge_endpoints(n: usize, id: EdgeId) -> (u32, u32) {
    let m = edge_count(n);
    let idx = id.0 as usize;
    assert!(idx < m, "edge index {idx} out of range for n={n}");
    // Invert the row offset; float estimate, then fix up.
    let nf = n as f64;
    let mut a = (nf - 0.5 - ((nf - 0.5) * (nf - 0.5) - 2.0 * idx as f64).sqrt()) as usize;
    loop {
        let start = a * (2 * n - a - 1) / 2;
        let end = start + (n - a - 1);
        if idx < start {
            a -= 1;
        } else if idx >= end {
            a += 1;
        } else {
            let b = a + 1 + (idx - start);
            return (a as u32, b as u32);
        }
    }
}

/// Errors from building a [`Tour`] out of a vertex sequence.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TourError {
    #[error("a tour needs at least 3 vertices, got {0}")]
    TooShort(usize),
    #[error("vertex sequence is not a permutation of 0..{expected}")]
    NotAPermutation { expected: usize },
}

/// A Hamiltonian cycle, stored as a permutation of `{0, .., n-1}`.
///
/// The cycle's identity is its set of `n` undirected edges: two tours
/// whose permutations differ only by rotation and/or reversal describe
/// the same cycle. Use [`Tour::same_cycle`] for that semantic equality;
/// the type deliberately does not implement `PartialEq`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Tour {
    perm: Vec<u32>,
}

impl Tour {
    pub fn new(perm: Vec<u32>) -> Result<Self, TourError> {
        let n = perm.len();
        if n < 3 {
            return Err(TourError::TooShort(n));
        }
        let mut seen = vec![false; n];
        for &v in &perm {
            if (v as usize) >= n || seen[v as usize] {
                return Err(TourError::NotAPermutation { expected: n });
            }
            seen[v as usize] = true;
        }
        Ok(Tour { perm })
    }

    /// Number of vertices (equals the number of cycle edges).
    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The underlying vertex sequence.
    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    /// The cycle's edges as vertex pairs, in traversal order,
    /// including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let n = self.perm.len();
        (0..n).map(move |i| (self.perm[i], self.perm[(i + 1) % n]))
    }

    /// The cycle's edges as canonical [`EdgeId`]s.
    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        let n = self.perm.len();
        self.edges().map(move |(u, v)| edge_id(n, u, v))
    }

    /// For every vertex, its two cycle neighbours.
    pub fn neighbor_table(&self) -> Vec<[u32; 2]> {
        let n = self.perm.len();
        let mut adj = vec![[0u32; 2]; n];
        for i in 0..n {
            let v = self.perm[i] as usize;
            adj[v][0] = self.perm[(i + n - 1) % n];
            adj[v][1] = self.perm[(i + 1) % n];
        }
        adj
    }

    /// Edge-set equality: true iff both tours describe the same cycle.
    pub fn same_cycle(&self, other: &Tour) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let adj = other.neighbor_table();
        self.edges()
            .all(|(u, v)| adj[u as usize][0] == v || adj[u as usize][1] == v)
    }
}

impl TryFrom<Vec<u32>> for Tour {
    type Error = TourError;
    fn try_from(perm: Vec<u32>) -> Result<Self, Self::Error> {
        Tour::new(perm)
    }
}

impl From<Tour> for Vec<u32> {
    fn from(t: Tour) -> Self {
        t.perm
    }
}

/// Errors from parsing TSPLIB `.tsp` and `.opt.tour` files.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing {0} in TSPLIB header")]
    MissingKeyword(&'static str),
    #[error("bad value for {keyword}: {value:?}")]
    BadValue { keyword: &'static str, value: String },
    #[error("unsupported EDGE_WEIGHT_TYPE {0:?}, only EUC_2D is handled")]
    UnsupportedWeightType(String),
    #[error("DIMENSION is {expected} but found {got} coordinate lines")]
    CoordCountMismatch { expected: usize, got: usize },
    #[error("malformed coordinate line {0:?}")]
    BadCoordLine(String),
    #[error("DIMENSION must be at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("missing TOUR_SECTION")]
    MissingTourSection,
    #[error("tour section not terminated by -1")]
    MissingTerminator,
    #[error("bad tour entry {0:?}")]
    BadTourEntry(String),
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(i64, usize),
    #[error("vertex {0} listed more than once in tour")]
    DuplicateVertex(u32),
    #[error("tour lists {got} of {expected} vertices")]
    IncompleteTour { expected: usize, got: usize },
    #[error("cannot serialize a {0:?} instance as TSPLIB EUC_2D")]
    NotSerializable(&'static str),
}

/// A complete TSP instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct Instance {
    name: String,
    n: usize,
    coords: Option<Vec<(f64, f64)>>,
    weight_kind: WeightKind,
    // Dense distance table for coordinate instances; row-major n*n.
    #[serde(skip)]
    dist: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    name: String,
    n: usize,
    coords: Option<Vec<(f64, f64)>>,
    weight_kind: WeightKind,
}

impl TryFrom<RawInstance> for Instance {
    type Error = String;
    fn try_from(raw: RawInstance) -> Result<Self, Self::Error> {
        match raw.weight_kind {
            WeightKind::Unit => {
                if raw.n < 3 {
                    return Err(format!("instance needs n >= 3, got {}", raw.n));
                }
                Ok(Instance::unit_named(raw.name, raw.n))
            }
            WeightKind::EuclideanRounded => {
                let coords = raw.coords.ok_or("euclidean instance without coordinates")?;
                if coords.len() != raw.n {
                    return Err(format!(
                        "coordinate count {} does not match n={}",
                        coords.len(),
                        raw.n
                    ));
                }
                if raw.n < 3 {
                    return Err(format!("instance needs n >= 3, got {}", raw.n));
                }
                Ok(Instance::euclidean(raw.name, coords))
            }
        }
    }
}

impl From<Instance> for RawInstance {
    fn from(inst: Instance) -> Self {
        RawInstance {
            name: inst.name,
            n: inst.n,
            coords: inst.coords,
            weight_kind: inst.weight_kind,
        }
    }
}

/// TSPLIB EUC_2D distance: nearest integer to the Euclidean distance.
fn euc_2d(a: (f64, f64), b: (f64, f64)) -> u32 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    ((dx * dx + dy * dy).sqrt() + 0.5) as u32
}

impl Instance {
    /// Unit-weight complete graph on `n` vertices; every tour costs `n`.
    pub fn unit(n: usize) -> Instance {
        Self::unit_named(format!("unit-{n}"), n)
    }

    fn unit_named(name: String, n: usize) -> Instance {
        assert!(n >= 3, "instance needs n >= 3, got {n}");
        Instance {
            name,
            n,
            coords: None,
            weight_kind: WeightKind::Unit,
            dist: Vec::new(),
        }
    }

    /// Euclidean instance from planar coordinates (rounded distances).
    pub fn euclidean(name: impl Into<String>, coords: Vec<(f64, f64)>) -> Instance {
        let n = coords.len();
        assert!(n >= 3, "instance needs n >= 3, got {n}");
        let mut dist = vec![0u32; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = euc_2d(coords[i], coords[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Instance {
            name: name.into(),
            n,
            coords: Some(coords),
            weight_kind: WeightKind::EuclideanRounded,
            dist,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges, `n(n-1)/2`.
    pub fn edge_count(&self) -> usize {
        edge_count(self.n)
    }

    pub fn weight_kind(&self) -> WeightKind {
        self.weight_kind
    }

    pub fn coords(&self) -> Option<&[(f64, f64)]> {
        self.coords.as_deref()
    }

    /// Distance between two distinct vertices. Symmetric; panics on `u == v`.
    pub fn distance(&self, u: u32, v: u32) -> u64 {
        assert!(u != v, "distance between a vertex and itself is undefined");
        assert!(
            (u as usize) < self.n && (v as usize) < self.n,
            "vertex out of range for n={}",
            self.n
        );
        match self.weight_kind {
            WeightKind::Unit => 1,
            WeightKind::EuclideanRounded => self.dist[u as usize * self.n + v as usize] as u64,
        }
    }

    /// Total cost of the cycle, the sum of all `n` edge distances
    /// including the closing edge.
    pub fn tour_cost(&self, tour: &Tour) -> u64 {
        assert_eq!(tour.len(), self.n, "tour does not match instance size");
        match self.weight_kind {
            WeightKind::Unit => self.n as u64,
            WeightKind::EuclideanRounded => tour
                .edges()
                .map(|(u, v)| self.dist[u as usize * self.n + v as usize] as u64)
                .sum(),
        }
    }

    /// Parse a TSPLIB `.tsp` file with `EDGE_WEIGHT_TYPE: EUC_2D`.
    pub fn parse_tsplib(text: &str) -> Result<Instance, ParseError> {
        let mut name = String::from("unnamed");
        let mut dimension: Option<usize> = None;
        let mut weight_type: Option<String> = None;
        let mut lines = text.lines();
        let mut in_coords = false;
        let mut coords: Vec<(f64, f64)> = Vec::new();

        for line in lines.by_ref() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if in_coords {
                if line == "EOF" {
                    break;
                }
                let mut it = line.split_whitespace();
                let _label = it.next();
                let x = it.next().and_then(|t| t.parse::<f64>().ok());
                let y = it.next().and_then(|t| t.parse::<f64>().ok());
                match (x, y) {
                    (Some(x), Some(y)) => coords.push((x, y)),
                    _ => return Err(ParseError::BadCoordLine(line.to_string())),
                }
                continue;
            }
            if line == "NODE_COORD_SECTION" {
                in_coords = true;
                continue;
            }
            if line == "EOF" {
                break;
            }
            if let Some((key, value)) = split_keyword(line) {
                match key {
                    "NAME" => name = value.to_string(),
                    "DIMENSION" => {
                        let d: usize = value.parse().map_err(|_| ParseError::BadValue {
                            keyword: "DIMENSION",
                            value: value.to_string(),
                        })?;
                        dimension = Some(d);
                    }
                    "EDGE_WEIGHT_TYPE" => weight_type = Some(value.to_string()),
                    // TYPE, COMMENT, DISPLAY_DATA_TYPE, ... are tolerated.
                    _ => {}
                }
            }
        }

        let dimension = dimension.ok_or(ParseError::MissingKeyword("DIMENSION"))?;
        let weight_type = weight_type.ok_or(ParseError::MissingKeyword("EDGE_WEIGHT_TYPE"))?;
        if weight_type != "EUC_2D" {
            return Err(ParseError::UnsupportedWeightType(weight_type));
        }
        if dimension < 3 {
            return Err(ParseError::DimensionTooSmall(dimension));
        }
        if coords.len() != dimension {
            return Err(ParseError::CoordCountMismatch {
                expected: dimension,
                got: coords.len(),
            });
        }
        Ok(Instance::euclidean(name, coords))
    }

    /// Serialize back to canonical TSPLIB form (EUC_2D instances only).
    pub fn to_tsplib(&self) -> Result<String, ParseError> {
        let coords = match (&self.coords, self.weight_kind) {
            (Some(c), WeightKind::EuclideanRounded) => c,
            _ => return Err(ParseError::NotSerializable("unit")),
        };
        let mut out = String::new();
        out.push_str(&format!("NAME : {}\n", self.name));
        out.push_str("TYPE : TSP\n");
        out.push_str(&format!("DIMENSION : {}\n", self.n));
        out.push_str("EDGE_WEIGHT_TYPE : EUC_2D\n");
        out.push_str("NODE_COORD_SECTION\n");
        for (i, (x, y)) in coords.iter().enumerate() {
            out.push_str(&format!("{} {} {}\n", i + 1, x, y));
        }
        out.push_str("EOF\n");
        Ok(out)
    }

    /// Parse a TSPLIB `.opt.tour` file against this instance.
    ///
    /// The `TOUR_SECTION` must list every vertex exactly once (1-based)
    /// and be terminated by `-1`; labels are shifted to 0-based.
    pub fn parse_opt_tour(&self, text: &str) -> Result<Tour, ParseError> {
        let mut in_tour = false;
        let mut perm: Vec<u32> = Vec::with_capacity(self.n);
        let mut seen = vec![false; self.n];
        let mut terminated = false;

        'outer: for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if !in_tour {
                if line == "TOUR_SECTION" {
                    in_tour = true;
                }
                continue;
            }
            for tok in line.split_whitespace() {
                let v: i64 = tok
                    .parse()
                    .map_err(|_| ParseError::BadTourEntry(tok.to_string()))?;
                if v == -1 {
                    terminated = true;
                    break 'outer;
                }
                if v < 1 || v as usize > self.n {
                    return Err(ParseError::VertexOutOfRange(v, self.n));
                }
                let v0 = (v - 1) as u32;
                if seen[v0 as usize] {
                    return Err(ParseError::DuplicateVertex(v0 + 1));
                }
                seen[v0 as usize] = true;
                perm.push(v0);
            }
        }

        if !in_tour {
            return Err(ParseError::MissingTourSection);
        }
        if !terminated {
            return Err(ParseError::MissingTerminator);
        }
        if perm.len() != self.n {
            return Err(ParseError::IncompleteTour {
                expected: self.n,
                got: perm.len(),
            });
        }
        Ok(Tour::new(perm).expect("validated permutation"))
    }
}

fn split_keyword(line: &str) -> Option<(&str, &str)> {
    match line.split_once(':') {
        Some((k, v)) => Some((k.trim(), v.trim())),
        // Section keywords without values.
        None => Some((line, "")),
    }
}
