//! The recursive cycle graph `G_{k,n}` and its point set `P_{k,n}`.
//!
//! The graph is the `n`-fold refinement of a single root edge `L → R`: every
//! round replaces each oriented edge `v → u` with a cycle of length `2k` whose
//! position `0` is `v` and position `k` is `u`. Positions `1..k` form the top
//! path, positions `k+1..2k` the bottom path (walking back from `u` to `v`).
//!
//! Edge `b ∈ 1..=k` of a cycle joins top positions `b-1 → b`. Edge `k+b` joins
//! cycle positions `k+b` and `k+b-1`; it is oriented towards `k+b-1`, the
//! endpoint closer to `u`. With this orientation every edge's head label is
//! its tail label with exactly one more coordinate set, and edges `b` and
//! `k+b` of a cycle flip the same coordinate.

mod format;
mod interval;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use format::{parse_pointset, parse_runs, write_pointset, ParseError};
pub(crate) use format::keyed_u64;
pub use interval::{IntervalLabel, LabelError};

/// Largest accepted edge count `(2k)^n`.
pub const EDGE_CAPACITY: u64 = 1 << 48;
/// Largest edge count for which the full graph is materialized in memory.
pub const MATERIALIZE_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("k must be at least 2 (got {0})")]
    HalfCycleTooShort(u64),
    #[error("n must be at least 1 (got {0})")]
    DepthTooSmall(u64),
    #[error("(2k)^n exceeds 2^48 for k={k}, n={n}")]
    CapacityExceeded { k: u64, n: u64 },
    #[error("(2k)^n = {edges} edges is too many to materialize (limit {limit})")]
    TooLargeToMaterialize { edges: u64, limit: u64 },
    #[error("edge coordinate {coord} at depth {depth} is outside [1, {max}]")]
    BadEdgeCoordinate { coord: u32, depth: usize, max: u64 },
    #[error("edge prefix of length {len} exceeds depth {n}")]
    PrefixTooLong { len: usize, n: u32 },
    #[error("level {level} is outside [1, {n}]")]
    LevelOutOfRange { level: u32, n: u32 },
    #[error("vertex {0} does not exist in this graph")]
    UnknownVertex(VertexAddress),
}

/// Half-cycle length `k` and recursion depth `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphParams {
    k: u32,
    n: u32,
}

impl GraphParams {
    pub fn new(k: u64, n: u64) -> Result<Self, GraphError> {
        if k < 2 {
            return Err(GraphError::HalfCycleTooShort(k));
        }
        if n < 1 {
            return Err(GraphError::DepthTooSmall(n));
        }
        let fits = u32::try_from(n)
            .ok()
            .and_then(|n| (2 * k).checked_pow(n))
            .is_some_and(|edges| edges <= EDGE_CAPACITY);
        if !fits {
            return Err(GraphError::CapacityExceeded { k, n });
        }
        Ok(Self { k: k as u32, n: n as u32 })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of cycle positions, `2k`.
    pub fn cycle_len(&self) -> u64 {
        2 * self.k as u64
    }

    /// Number of edges at `level`, `(2k)^level`.
    pub fn edges_at_level(&self, level: u32) -> u64 {
        self.cycle_len().pow(level)
    }

    /// Total edge count `(2k)^n`.
    pub fn edge_count(&self) -> u64 {
        self.edges_at_level(self.n)
    }

    /// Label length `k^n`.
    pub fn label_dim(&self) -> u64 {
        (self.k as u64).pow(self.n)
    }

    /// `N_{k,n} = ((2k-2)(2k)^n + 2k) / (2k-1)`.
    pub fn vertex_count(&self) -> u64 {
        vertex_count(*self)
    }
}

/// Exact vertex count of `G_{k,n}` from the closed form.
pub fn vertex_count(params: GraphParams) -> u64 {
    let two_k = params.cycle_len() as u128;
    let numerator = (two_k - 2) * two_k.pow(params.n) + two_k;
    debug_assert_eq!(numerator % (two_k - 1), 0);
    (numerator / (two_k - 1)) as u64
}

/// Canonical vertex identity: the level-0 endpoints, or the cycle (named by
/// the edge it refines) and position at which the vertex was created.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexAddress {
    RootLeft,
    RootRight,
    Inner { path: Vec<u32>, position: u32 },
}

impl VertexAddress {
    /// Creation level: 0 for the root endpoints.
    pub fn level(&self) -> usize {
        match self {
            VertexAddress::RootLeft | VertexAddress::RootRight => 0,
            VertexAddress::Inner { path, .. } => path.len() + 1,
        }
    }
}

impl fmt::Display for VertexAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexAddress::RootLeft => f.write_str("L"),
            VertexAddress::RootRight => f.write_str("R"),
            VertexAddress::Inner { path, position } => {
                for (i, c) in path.iter().enumerate() {
                    if i > 0 {
                        f.write_str(".")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "/{position}")
            }
        }
    }
}

/// How edges are oriented when reporting `(tail, head)`.
///
/// `FlippedBottom` reverses every bottom-path edge. It exists to check that
/// the canonical convention is the one the identity embedding validates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Canonical,
    FlippedBottom,
}

/// Endpoints of an edge at some level, in canonical orientation, with the
/// tail label at that level's resolution `k^level`.
#[derive(Debug, Clone)]
struct EdgeTrace {
    tail: VertexAddress,
    head: VertexAddress,
    tail_label: IntervalLabel,
    /// The single coordinate (at resolution `k^level`) set in head but not tail.
    flip: u64,
}

fn check_prefix(params: GraphParams, prefix: &[u32]) -> Result<(), GraphError> {
    if prefix.len() > params.n as usize {
        return Err(GraphError::PrefixTooLong { len: prefix.len(), n: params.n });
    }
    for (depth, &coord) in prefix.iter().enumerate() {
        if coord == 0 || coord as u64 > params.cycle_len() {
            return Err(GraphError::BadEdgeCoordinate { coord, depth, max: params.cycle_len() });
        }
    }
    Ok(())
}

/// Address of the top-path vertex `i` steps from the left of cycle `path`.
fn top_vertex(k: u32, path: &[u32], i: u32, left: &VertexAddress, right: &VertexAddress) -> VertexAddress {
    match i {
        0 => left.clone(),
        i if i == k => right.clone(),
        i => VertexAddress::Inner { path: path.to_vec(), position: i },
    }
}

fn bottom_vertex(k: u32, path: &[u32], i: u32, left: &VertexAddress, right: &VertexAddress) -> VertexAddress {
    match i {
        0 => left.clone(),
        i if i == k => right.clone(),
        i => VertexAddress::Inner { path: path.to_vec(), position: 2 * k - i },
    }
}

fn trace_edge(params: GraphParams, prefix: &[u32]) -> EdgeTrace {
    let k = params.k;
    let mut trace = EdgeTrace {
        tail: VertexAddress::RootLeft,
        head: VertexAddress::RootRight,
        tail_label: IntervalLabel::zeros(1),
        flip: 0,
    };
    for depth in 0..prefix.len() {
        let b = prefix[depth];
        let path = &prefix[..depth];
        let block = trace.flip * k as u64;
        let base = trace.tail_label.scaled(k as u64);
        let (left, right) = (&trace.tail, &trace.head);
        trace = if b <= k {
            // top edge: top (b-1) -> top b
            EdgeTrace {
                tail: top_vertex(k, path, b - 1, left, right),
                head: top_vertex(k, path, b, left, right),
                tail_label: base.with_ones(block + (k - b + 1) as u64, block + k as u64),
                flip: block + (k - b) as u64,
            }
        } else {
            // bottom edge k+bb: bottom (k-bb) -> bottom (k-bb+1)
            let bb = b - k;
            EdgeTrace {
                tail: bottom_vertex(k, path, k - bb, left, right),
                head: bottom_vertex(k, path, k - bb + 1, left, right),
                tail_label: base.with_ones(block, block + (k - bb) as u64),
                flip: block + (k - bb) as u64,
            }
        };
    }
    trace
}

fn oriented(prefix: &[u32], k: u32, orientation: Orientation, trace: EdgeTrace) -> (VertexAddress, VertexAddress) {
    let bottom = prefix.last().is_some_and(|&b| b > k);
    if orientation == Orientation::FlippedBottom && bottom {
        (trace.head, trace.tail)
    } else {
        (trace.tail, trace.head)
    }
}

/// Oriented endpoints `(tail, head)` of the edge named by `prefix`.
///
/// A prefix of length `ℓ < n` names a level-`ℓ` edge; the empty prefix is
/// the root edge `(L, R)`.
pub fn edge_endpoints(
    params: GraphParams,
    orientation: Orientation,
    prefix: &[u32],
) -> Result<(VertexAddress, VertexAddress), GraphError> {
    check_prefix(params, prefix)?;
    Ok(oriented(prefix, params.k, orientation, trace_edge(params, prefix)))
}

fn check_address(params: GraphParams, addr: &VertexAddress) -> Result<(), GraphError> {
    if let VertexAddress::Inner { path, position } = addr {
        let valid = path.len() < params.n as usize
            && check_prefix(params, path).is_ok()
            && *position >= 1
            && *position < 2 * params.k
            && *position != params.k;
        if !valid {
            return Err(GraphError::UnknownVertex(addr.clone()));
        }
    }
    Ok(())
}

/// Label of `addr` in `{0,1}^{k^n}`, computed without building the graph.
pub fn vertex_label(params: GraphParams, addr: &VertexAddress) -> Result<IntervalLabel, GraphError> {
    check_address(params, addr)?;
    let dim = params.label_dim();
    Ok(match addr {
        VertexAddress::RootLeft => IntervalLabel::zeros(dim),
        VertexAddress::RootRight => IntervalLabel::ones(dim),
        VertexAddress::Inner { path, position } => {
            let k = params.k;
            let parent = trace_edge(params, path);
            let block = parent.flip * k as u64;
            let base = parent.tail_label.scaled(k as u64);
            let local = if *position < k {
                base.with_ones(block + (k - position) as u64, block + k as u64)
            } else {
                base.with_ones(block, block + (2 * k - position) as u64)
            };
            let level = path.len() as u32 + 1;
            local.scaled((k as u64).pow(params.n - level))
        }
    })
}

/// Lexicographic enumeration of `[2k]^len` (coordinates are 1-based).
#[derive(Debug, Clone)]
pub struct EdgeLabels {
    radix: u32,
    current: Option<Vec<u32>>,
}

impl EdgeLabels {
    pub fn new(params: GraphParams, len: usize) -> Self {
        Self { radix: 2 * params.k, current: Some(vec![1; len]) }
    }
}

impl Iterator for EdgeLabels {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        for i in (0..next.len()).rev() {
            if next[i] < self.radix {
                next[i] += 1;
                self.current = Some(next);
                return Some(out);
            }
            next[i] = 1;
        }
        Some(out)
    }
}

/// Vertex addresses in export order: `L`, `R`, then by creation level,
/// lexicographic cycle path and ascending position.
pub fn canonical_addresses(params: GraphParams) -> impl Iterator<Item = VertexAddress> {
    let k = params.k;
    let inner = (1..=params.n).flat_map(move |level| {
        EdgeLabels::new(params, level as usize - 1).flat_map(move |path| {
            (1..2 * k)
                .filter(move |&q| q != k)
                .map(move |position| VertexAddress::Inner { path: path.clone(), position })
        })
    });
    [VertexAddress::RootLeft, VertexAddress::RootRight].into_iter().chain(inner)
}

/// Antipodal pairs (cycle positions `q` and `q+k`) of every level-`level` cycle.
pub fn antipodal_pairs(
    params: GraphParams,
    level: u32,
) -> Result<Vec<(VertexAddress, VertexAddress)>, GraphError> {
    if level < 1 || level > params.n {
        return Err(GraphError::LevelOutOfRange { level, n: params.n });
    }
    let k = params.k;
    let mut pairs = Vec::new();
    for path in EdgeLabels::new(params, level as usize - 1) {
        let parent = trace_edge(params, &path);
        pairs.push((parent.tail.clone(), parent.head.clone()));
        for q in 1..k {
            pairs.push((
                VertexAddress::Inner { path: path.clone(), position: q },
                VertexAddress::Inner { path: path.clone(), position: q + k },
            ));
        }
    }
    Ok(pairs)
}

/// Rank of a full-depth edge label in lexicographic order.
pub fn edge_rank(params: GraphParams, label: &[u32]) -> Result<usize, GraphError> {
    if label.len() != params.n as usize {
        return Err(GraphError::PrefixTooLong { len: label.len(), n: params.n });
    }
    check_prefix(params, label)?;
    let radix = params.cycle_len() as usize;
    Ok(label.iter().fold(0, |acc, &c| acc * radix + (c as usize - 1)))
}

/// The point set `P_{k,n}`: vertex addresses in export order with their labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    params: GraphParams,
    addresses: Vec<VertexAddress>,
    labels: Vec<IntervalLabel>,
}

impl PointSet {
    /// Builds the point set from its construction.
    pub fn construct(params: GraphParams) -> Result<Self, GraphError> {
        check_materializable(params)?;
        let addresses: Vec<_> = canonical_addresses(params).collect();
        let labels = addresses
            .iter()
            .map(|a| vertex_label(params, a))
            .collect::<Result<_, _>>()?;
        Ok(Self { params, addresses, labels })
    }

    pub(crate) fn from_parts(
        params: GraphParams,
        addresses: Vec<VertexAddress>,
        labels: Vec<IntervalLabel>,
    ) -> Self {
        Self { params, addresses, labels }
    }

    pub fn params(&self) -> GraphParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.addresses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.addresses.is_empty()
    }

    pub fn addresses(&self) -> &[VertexAddress] {
        &self.addresses
    }

    pub fn labels(&self) -> &[IntervalLabel] {
        &self.labels
    }

    /// Exact ℓ₁ distance between points `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> u64 {
        self.labels[i]
            .distance(&self.labels[j])
            .expect("labels in a point set share one length")
    }
}

fn check_materializable(params: GraphParams) -> Result<(), GraphError> {
    let edges = params.edge_count();
    if edges > MATERIALIZE_LIMIT {
        return Err(GraphError::TooLargeToMaterialize { edges, limit: MATERIALIZE_LIMIT });
    }
    Ok(())
}

/// Materialized `G_{k,n}`: the point set plus every full-depth oriented edge.
#[derive(Debug, Clone)]
pub struct RecursiveCycleGraph {
    points: PointSet,
    orientation: Orientation,
    index: HashMap<VertexAddress, usize>,
    /// `(tail, head)` vertex indices, by lexicographic edge rank.
    edges: Vec<(usize, usize)>,
}

impl RecursiveCycleGraph {
    pub fn build(params: GraphParams) -> Result<Self, GraphError> {
        Self::build_with(params, Orientation::Canonical)
    }

    pub fn build_with(params: GraphParams, orientation: Orientation) -> Result<Self, GraphError> {
        let points = PointSet::construct(params)?;
        let index: HashMap<_, _> = points
            .addresses
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        let edges = EdgeLabels::new(params, params.n as usize)
            .map(|x| {
                let (t, h) = oriented(&x, params.k, orientation, trace_edge(params, &x));
                (index[&t], index[&h])
            })
            .collect();
        Ok(Self { points, orientation, index, edges })
    }

    pub fn params(&self) -> GraphParams {
        self.points.params
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    /// `(tail, head)` vertex indices of every full-depth edge, by edge rank.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, addr: &VertexAddress) -> Result<usize, GraphError> {
        self.index.get(addr).copied().ok_or_else(|| GraphError::UnknownVertex(addr.clone()))
    }

    pub fn vertex_label(&self, addr: &VertexAddress) -> Result<&IntervalLabel, GraphError> {
        Ok(&self.points.labels[self.index_of(addr)?])
    }

    /// Full-depth edge `(tail, head)` indices.
    pub fn edge(&self, label: &[u32]) -> Result<(usize, usize), GraphError> {
        Ok(self.edges[edge_rank(self.params(), label)?])
    }

    pub fn edge_endpoints(&self, prefix: &[u32]) -> Result<(VertexAddress, VertexAddress), GraphError> {
        edge_endpoints(self.params(), self.orientation, prefix)
    }

    /// `(tail, head)` indices of the edge named by a prefix of any length `0..=n`.
    pub fn endpoint_indices(&self, prefix: &[u32]) -> Result<(usize, usize), GraphError> {
        if prefix.len() == self.params().n as usize {
            return self.edge(prefix);
        }
        let (t, h) = self.edge_endpoints(prefix)?;
        Ok((self.index[&t], self.index[&h]))
    }

    pub fn antipodal_pairs(&self, level: u32) -> Result<Vec<(usize, usize)>, GraphError> {
        Ok(antipodal_pairs(self.params(), level)?
            .into_iter()
            .map(|(a, b)| (self.index[&a], self.index[&b]))
            .collect())
    }

    /// Degree of every vertex, indexed like the point set.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for &(t, h) in &self.edges {
            deg[t] += 1;
            deg[h] += 1;
        }
        deg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: u64, n: u64) -> GraphParams {
        GraphParams::new(k, n).unwrap()
    }

    fn inner(path: &[u32], position: u32) -> VertexAddress {
        VertexAddress::Inner { path: path.to_vec(), position }
    }

    #[test]
    fn rejects_degenerate_params() {
        assert_eq!(GraphParams::new(1, 1), Err(GraphError::HalfCycleTooShort(1)));
        assert_eq!(GraphParams::new(2, 0), Err(GraphError::DepthTooSmall(0)));
        // (2*2)^24 = 2^48 is the largest accepted at k = 2
        assert!(GraphParams::new(2, 24).is_ok());
        assert!(matches!(GraphParams::new(2, 25), Err(GraphError::CapacityExceeded { .. })));
        assert!(matches!(GraphParams::new(1 << 40, 2), Err(GraphError::CapacityExceeded { .. })));
        assert!(matches!(GraphParams::new(2, u64::MAX), Err(GraphError::CapacityExceeded { .. })));
    }

    #[test]
    fn vertex_count_closed_form() {
        assert_eq!(vertex_count(params(2, 1)), 4);
        assert_eq!(vertex_count(params(3, 2)), 30);
        assert_eq!(vertex_count(params(2, 3)), 44);
        assert_eq!(vertex_count(params(2, 2)), 12);
    }

    #[test]
    fn vertex_count_matches_level_recurrence() {
        // each level adds 2k-2 new vertices per refined edge
        for k in 2..7u64 {
            let mut count = 2u64;
            for n in 1..6u64 {
                count += (2 * k).pow(n as u32 - 1) * (2 * k - 2);
                assert_eq!(vertex_count(params(k, n)), count, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn small_graph_shapes() {
        let g = RecursiveCycleGraph::build(params(2, 1)).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges().len(), 4);
        assert!(g.degrees().iter().all(|&d| d == 2));

        let g = RecursiveCycleGraph::build(params(3, 2)).unwrap();
        assert_eq!((g.vertex_count(), g.edges().len()), (30, 36));

        let g = RecursiveCycleGraph::build(params(2, 2)).unwrap();
        assert_eq!((g.vertex_count(), g.edges().len()), (12, 16));
        let deg = g.degrees();
        assert!(deg.iter().all(|d| d % 2 == 0 && *d >= 2));
    }

    #[test]
    fn base_cycle_labels() {
        let p = params(2, 1);
        let bits = |a: &VertexAddress| vertex_label(p, a).unwrap().to_bits();
        assert_eq!(bits(&VertexAddress::RootLeft), [false, false]);
        assert_eq!(bits(&VertexAddress::RootRight), [true, true]);
        assert_eq!(bits(&inner(&[], 1)), [false, true]);
        assert_eq!(bits(&inner(&[], 3)), [true, false]);
        assert_eq!(vertex_label(p, &inner(&[], 1)).unwrap().runs(), &[(1, 2)]);

        let p = params(3, 1);
        let bits = |a: &VertexAddress| vertex_label(p, a).unwrap().to_bits();
        assert_eq!(bits(&inner(&[], 1)), [false, false, true]);
        assert_eq!(bits(&inner(&[], 2)), [false, true, true]);
        // bottom position 4 is bottom vertex i = 2: two ones then a zero
        assert_eq!(bits(&inner(&[], 4)), [true, true, false]);
        assert_eq!(bits(&inner(&[], 5)), [true, false, false]);
    }

    #[test]
    fn second_level_labels_of_g32() {
        let p = params(3, 2);
        assert_eq!(vertex_label(p, &inner(&[], 1)).unwrap().len(), 9);
        // top vertex 1 of level 1 duplicates (0,0,1)
        assert_eq!(vertex_label(p, &inner(&[], 1)).unwrap().runs(), &[(6, 9)]);
        // cycle refining edge 1 (L -> top1) substitutes on coordinates 6..9
        assert_eq!(vertex_label(p, &inner(&[1], 1)).unwrap().runs(), &[(8, 9)]);
        assert_eq!(vertex_label(p, &inner(&[1], 5)).unwrap().runs(), &[(6, 7)]);
        // edge 2 runs top1 -> top2, flipping level-1 coordinate 1
        assert_eq!(vertex_label(p, &inner(&[2], 2)).unwrap().runs(), &[(4, 9)]);
    }

    #[test]
    fn endpoint_examples() {
        let p = params(2, 1);
        let c = Orientation::Canonical;
        assert_eq!(edge_endpoints(p, c, &[1]).unwrap(), (VertexAddress::RootLeft, inner(&[], 1)));
        assert_eq!(edge_endpoints(p, c, &[2]).unwrap(), (inner(&[], 1), VertexAddress::RootRight));
        assert_eq!(edge_endpoints(p, c, &[3]).unwrap(), (inner(&[], 3), VertexAddress::RootRight));
        assert_eq!(edge_endpoints(p, c, &[4]).unwrap(), (VertexAddress::RootLeft, inner(&[], 3)));
        assert_eq!(edge_endpoints(p, c, &[]).unwrap(), (VertexAddress::RootLeft, VertexAddress::RootRight));
        assert_eq!(
            edge_endpoints(p, Orientation::FlippedBottom, &[3]).unwrap(),
            (VertexAddress::RootRight, inner(&[], 3))
        );
        assert!(matches!(edge_endpoints(p, c, &[5]), Err(GraphError::BadEdgeCoordinate { .. })));
        assert!(matches!(edge_endpoints(p, c, &[0]), Err(GraphError::BadEdgeCoordinate { .. })));
        assert!(matches!(edge_endpoints(p, c, &[1, 1]), Err(GraphError::PrefixTooLong { .. })));
    }

    #[test]
    fn heads_gain_exactly_one_coordinate() {
        for (k, n) in [(2, 3), (3, 2), (4, 2)] {
            let g = RecursiveCycleGraph::build(params(k, n)).unwrap();
            let labels = g.points().labels();
            for &(t, h) in g.edges() {
                assert_eq!(labels[h].count_ones(), labels[t].count_ones() + 1);
                assert_eq!(labels[t].distance(&labels[h]).unwrap(), 1);
            }
        }
    }

    #[test]
    fn antipodal_examples() {
        let p = params(2, 1);
        assert_eq!(
            antipodal_pairs(p, 1).unwrap(),
            vec![(VertexAddress::RootLeft, VertexAddress::RootRight), (inner(&[], 1), inner(&[], 3))]
        );
        let g = RecursiveCycleGraph::build(params(3, 2)).unwrap();
        let pairs = g.antipodal_pairs(1).unwrap();
        assert_eq!(pairs.len(), 3);
        assert!(pairs.iter().all(|&(a, b)| g.points().distance(a, b) == 9));
        assert_eq!(antipodal_pairs(params(2, 2), 2).unwrap().len(), 8);
        assert!(matches!(antipodal_pairs(p, 0), Err(GraphError::LevelOutOfRange { .. })));
        assert!(matches!(antipodal_pairs(p, 2), Err(GraphError::LevelOutOfRange { .. })));
    }

    #[test]
    fn unknown_vertices_are_rejected() {
        let p = params(3, 2);
        for bad in [inner(&[], 3), inner(&[], 0), inner(&[], 6), inner(&[7], 1), inner(&[1, 1], 1)] {
            assert!(matches!(vertex_label(p, &bad), Err(GraphError::UnknownVertex(_))), "{bad}");
        }
    }

    #[test]
    fn canonical_order_and_address_strings() {
        let names: Vec<_> = canonical_addresses(params(2, 2)).map(|a| a.to_string()).collect();
        assert_eq!(
            names,
            ["L", "R", "/1", "/3", "1/1", "1/3", "2/1", "2/3", "3/1", "3/3", "4/1", "4/3"]
        );
    }

    #[test]
    fn edge_labels_enumerate_lexicographically() {
        let labels: Vec<_> = EdgeLabels::new(params(2, 2), 2).collect();
        assert_eq!(labels.len(), 16);
        assert_eq!(labels[0], [1, 1]);
        assert_eq!(labels[1], [1, 2]);
        assert_eq!(labels[15], [4, 4]);
        for (rank, x) in labels.iter().enumerate() {
            assert_eq!(edge_rank(params(2, 2), x).unwrap(), rank);
        }
        assert_eq!(EdgeLabels::new(params(2, 2), 0).collect::<Vec<_>>(), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn materialization_limit() {
        assert!(matches!(
            RecursiveCycleGraph::build(params(2, 12)),
            Err(GraphError::TooLargeToMaterialize { .. })
        ));
        // labels of huge graphs stay queryable
        let p = params(2, 20);
        let l = vertex_label(p, &inner(&[1; 19], 1)).unwrap();
        assert_eq!(l.len(), 1 << 20);
        assert_eq!(l.count_ones(), 1);
    }
}
