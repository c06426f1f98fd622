//! Certifying an embedding of `P_{k,n}` against the separation constraint
//! and turning the measured slack into a dimension lower bound.
//!
//! Given an embedding `F`, the edge-difference map sends each full-depth edge
//! label `x` to `F(head) - F(tail)`. Averaging it over the uniform completions
//! of a prefix telescopes along every refining cycle, so the average for a
//! level-`ℓ` edge `e` is `(F(head_e) - F(tail_e)) / k^{n-ℓ}`.
//!
//! For a level-`ℓ` cycle and a split `r ∈ [k-1]`, the constraint value is
//!
//! ```text
//! (1/2k) ‖ Σ_{b≤r} (f̄(p,b) + f̄(p,b+k)) − Σ_{b>r} (f̄(p,b) + f̄(p,b+k)) ‖₁
//! ```
//!
//! and `ε = 1 − min` over all cycles and splits. With `δ = (k−1)ε/2 < 1/2`
//! any `d`-dimensional embedding must satisfy
//! `d ≥ 2^{(log k − δ log(k−1) − H(δ)) n − 1} − 1/2`.

mod report;

use thiserror::Error;

use crate::infotheory::{binary_entropy, InfoError, ProbVector};
use crate::l1metric::{distortion, normalize_lipschitz, DistortionReport, Embedding, MetricError};
use crate::pointset::{edge_rank, EdgeLabels, GraphError, GraphParams, RecursiveCycleGraph};

/// Edge differences may exceed unit norm by this much before they are rejected.
pub const NORM_REJECT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Info(#[from] InfoError),
    #[error("embedding has {found} vectors but the graph has {expected} vertices")]
    WrongPointCount { expected: usize, found: usize },
    #[error("edge {edge:?} has ‖f‖₁ = {norm}; rescale the embedding to be 1-Lipschitz first")]
    NotNormalized { edge: Vec<u32>, norm: f64 },
    #[error("constraint prefix has length {len}; it must be below n = {n}")]
    BadLevel { len: usize, n: u32 },
    #[error("split r = {r} is outside [1, {max}]")]
    BadSplit { r: u32, max: u32 },
    #[error("‖v‖₁ = {0} exceeds 1")]
    NormTooLarge(f64),
    #[error("lifted vector length {0} is not of the form 2d+1")]
    BadLiftLength(usize),
    #[error("embedding maps two distinct points to the same vector")]
    Degenerate,
    #[error("{0}")]
    Domain(String),
}

fn check_cover(graph: &RecursiveCycleGraph, emb: &Embedding) -> Result<(), CertifyError> {
    if emb.len() != graph.vertex_count() {
        return Err(CertifyError::WrongPointCount { expected: graph.vertex_count(), found: emb.len() });
    }
    Ok(())
}

/// `f : [2k]^n → R^d`, stored by lexicographic edge rank.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeVectorMap {
    params: GraphParams,
    dim: usize,
    vectors: Vec<f64>,
}

impl EdgeVectorMap {
    pub fn params(&self) -> GraphParams {
        self.params
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn by_rank(&self, rank: usize) -> &[f64] {
        &self.vectors[rank * self.dim..(rank + 1) * self.dim]
    }

    pub fn get(&self, label: &[u32]) -> Result<&[f64], CertifyError> {
        Ok(self.by_rank(edge_rank(self.params, label)?))
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.vectors.chunks_exact(self.dim)
    }

    pub fn max_norm(&self) -> f64 {
        self.iter().map(l1_norm).fold(0.0, f64::max)
    }
}

pub(crate) fn l1_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

/// `f(x) = F(head(x)) − F(tail(x))` for every full-depth edge. The embedding
/// must already be 1-Lipschitz.
pub fn edge_difference_map(graph: &RecursiveCycleGraph, emb: &Embedding) -> Result<EdgeVectorMap, CertifyError> {
    check_cover(graph, emb)?;
    let params = graph.params();
    let mut vectors = Vec::with_capacity(graph.edges().len() * emb.dim());
    for (label, &(tail, head)) in EdgeLabels::new(params, params.n() as usize).zip(graph.edges()) {
        let diff = emb.difference(head, tail);
        let norm = l1_norm(&diff);
        if norm > 1.0 + NORM_REJECT {
            return Err(CertifyError::NotNormalized { edge: label, norm });
        }
        vectors.extend(diff);
    }
    Ok(EdgeVectorMap { params, dim: emb.dim(), vectors })
}

/// Average of `f` over uniform completions of `prefix` (length `0..=n`),
/// by the telescoping closed form.
pub fn average_edge_vector(
    graph: &RecursiveCycleGraph,
    emb: &Embedding,
    prefix: &[u32],
) -> Result<Vec<f64>, CertifyError> {
    check_cover(graph, emb)?;
    let (tail, head) = graph.endpoint_indices(prefix)?;
    let params = graph.params();
    let scale = (params.k() as f64).powi((params.n() as usize - prefix.len()) as i32);
    Ok(emb.difference(head, tail).into_iter().map(|v| v / scale).collect())
}

/// One evaluated constraint: the level-`level` cycle refining `prefix`, split at `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintEntry {
    pub level: u32,
    pub prefix: Vec<u32>,
    pub r: u32,
    pub lhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    pub entries: Vec<ConstraintEntry>,
    pub min_lhs: f64,
    /// `max(0, 1 − min_lhs)`, clamped to `[0, 1]`.
    pub epsilon: f64,
}

/// Averages `f̄(prefix, b)` for `b = 1..=2k`.
fn child_averages(graph: &RecursiveCycleGraph, emb: &Embedding, prefix: &[u32]) -> Result<Vec<Vec<f64>>, CertifyError> {
    let mut child = prefix.to_vec();
    child.push(0);
    (1..=2 * graph.params().k())
        .map(|b| {
            *child.last_mut().expect("non-empty") = b;
            average_edge_vector(graph, emb, &child)
        })
        .collect()
}

fn split_value(averages: &[Vec<f64>], k: u32, r: u32) -> f64 {
    let k = k as usize;
    let dim = averages[0].len();
    let mut sum = vec![0.0; dim];
    for b in 0..k {
        let sign = if b < r as usize { 1.0 } else { -1.0 };
        for (s, (x, y)) in sum.iter_mut().zip(averages[b].iter().zip(&averages[b + k])) {
            *s += sign * (x + y);
        }
    }
    l1_norm(&sum) / (2 * k) as f64
}

/// Left-hand side of the separation constraint for the cycle refining the
/// level-`(ℓ−1)` edge `prefix`, split at `r ∈ [k−1]`.
pub fn constraint_lhs(
    graph: &RecursiveCycleGraph,
    emb: &Embedding,
    prefix: &[u32],
    r: u32,
) -> Result<f64, CertifyError> {
    let params = graph.params();
    if prefix.len() >= params.n() as usize {
        return Err(CertifyError::BadLevel { len: prefix.len(), n: params.n() });
    }
    if r < 1 || r >= params.k() {
        return Err(CertifyError::BadSplit { r, max: params.k() - 1 });
    }
    let averages = child_averages(graph, emb, prefix)?;
    Ok(split_value(&averages, params.k(), r))
}

/// Evaluates every `(ℓ, prefix, r)` triple, levels ascending and prefixes in
/// lexicographic order.
pub fn constraint_report(graph: &RecursiveCycleGraph, emb: &Embedding) -> Result<ConstraintReport, CertifyError> {
    check_cover(graph, emb)?;
    let params = graph.params();
    let mut entries = Vec::new();
    for level in 1..=params.n() {
        for prefix in EdgeLabels::new(params, level as usize - 1) {
            let averages = child_averages(graph, emb, &prefix)?;
            for r in 1..params.k() {
                let lhs = split_value(&averages, params.k(), r);
                entries.push(ConstraintEntry { level, prefix: prefix.clone(), r, lhs });
            }
        }
    }
    let min_lhs = entries.iter().map(|e| e.lhs).fold(f64::INFINITY, f64::min);
    let epsilon = (1.0 - min_lhs).clamp(0.0, 1.0);
    Ok(ConstraintReport { entries, min_lhs, epsilon })
}

/// `(max(v,0), max(−v,0), 1 − ‖v‖₁)` as a distribution over `[2d+1]`.
///
/// Vectors whose norm overshoots 1 by at most [`NORM_REJECT`] are scaled
/// back onto the unit sphere first.
pub fn nonneg_lift(v: &[f64]) -> Result<ProbVector, CertifyError> {
    let norm = l1_norm(v);
    if !norm.is_finite() || norm > 1.0 + NORM_REJECT {
        return Err(CertifyError::NormTooLarge(norm));
    }
    let scale = if norm > 1.0 { 1.0 / norm } else { 1.0 };
    let d = v.len();
    let mut out = vec![0.0; 2 * d + 1];
    for (j, &x) in v.iter().enumerate() {
        if x > 0.0 {
            out[j] = x * scale;
        } else {
            out[j + d] = -x * scale;
        }
    }
    out[2 * d] = (1.0 - norm).max(0.0);
    Ok(ProbVector::new(out)?)
}

/// `(y_j − y_{j+d})_{j=1..d}`; never increases the ℓ₁ norm and inverts
/// [`nonneg_lift`].
pub fn lift_recover(y: &[f64]) -> Result<Vec<f64>, CertifyError> {
    if y.len() % 2 == 0 {
        return Err(CertifyError::BadLiftLength(y.len()));
    }
    let d = y.len() / 2;
    Ok((0..d).map(|j| y[j] - y[j + d]).collect())
}

/// The dimension lower bound and the quantities it is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub k: u32,
    pub n: u32,
    pub epsilon: f64,
    /// `(k−1)ε/2`.
    pub delta: f64,
    /// `log k − δ log(k−1) − H(δ)`; 0 when not applicable.
    pub per_level_term: f64,
    /// `2^{per_level_term·n − 1} − 1/2`; 0 when not applicable.
    pub raw_bound: f64,
    /// `max(1, ⌈raw_bound⌉)`.
    pub min_dimension: u64,
    /// `ε < 1/(k−1)`, i.e. `δ < 1/2`.
    pub applicable: bool,
}

pub fn dimension_bound(k: u32, n: u32, epsilon: f64) -> Result<BoundResult, CertifyError> {
    if k < 2 || n < 1 {
        return Err(CertifyError::Domain(format!("need k >= 2 and n >= 1 (got k={k}, n={n})")));
    }
    if !(epsilon >= 0.0) || epsilon.is_infinite() {
        return Err(CertifyError::Domain(format!("epsilon must be finite and non-negative (got {epsilon})")));
    }
    let delta = (k - 1) as f64 * epsilon / 2.0;
    let applicable = delta < 0.5;
    let (per_level_term, raw_bound) = if applicable {
        let kf = k as f64;
        let loss = delta * (kf - 1.0).log2() + binary_entropy(delta)?;
        // k^n · 2^{-n·loss} / 2 keeps the δ = 0 case exact
        let raw = 0.5 * kf.powi(n.min(i32::MAX as u32) as i32) * (-loss * n as f64).exp2() - 0.5;
        (kf.log2() - loss, raw)
    } else {
        (0.0, 0.0)
    };
    let min_dimension = (raw_bound.ceil() as u64).max(1);
    Ok(BoundResult { k, n, epsilon, delta, per_level_term, raw_bound, min_dimension, applicable })
}

/// The bound for an embedding of distortion `D`, i.e. `ε = 1 − 1/D`.
pub fn bound_for_distortion(k: u32, n: u32, distortion: f64) -> Result<BoundResult, CertifyError> {
    if !(distortion >= 1.0) || distortion.is_infinite() {
        return Err(CertifyError::Domain(format!("distortion must be finite and at least 1 (got {distortion})")));
    }
    dimension_bound(k, n, 1.0 - 1.0 / distortion)
}

/// `max(2, ⌊1/(ε log(1/ε))⌋)` for `0 < ε < 1/2`.
pub fn choose_k(epsilon: f64) -> Result<u32, CertifyError> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(CertifyError::Domain(format!("epsilon must lie in (0, 1/2) (got {epsilon})")));
    }
    let k = (1.0 / (epsilon * (1.0 / epsilon).log2())).floor();
    Ok((k.min(u32::MAX as f64) as u32).max(2))
}

/// The argmax predictor of `a` from a sample `j ~ Q_a` under uniform `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct Predictor {
    /// `assignment[j]` is the (0-based) `a` maximizing `Q_a(j)`; ties go to the smallest `a`.
    pub assignment: Vec<usize>,
    /// `(1/k) Σ_j max_a Q_a(j)`.
    pub success: f64,
}

pub fn predictor_success(qs: &[ProbVector]) -> Result<Predictor, CertifyError> {
    if qs.len() < 2 {
        return Err(InfoError::TooFewOutcomes(qs.len()).into());
    }
    let d = qs[0].len();
    if let Some(bad) = qs.iter().find(|q| q.len() != d) {
        return Err(InfoError::AlphabetMismatch { left: d, right: bad.len() }.into());
    }
    let mut assignment = Vec::with_capacity(d);
    let mut mass = 0.0;
    for j in 0..d {
        let (best, weight) = qs
            .iter()
            .enumerate()
            .map(|(a, q)| (a, q.as_slice()[j]))
            .fold((0, f64::NEG_INFINITY), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        assignment.push(best);
        mass += weight;
    }
    Ok(Predictor { assignment, success: mass / qs.len() as f64 })
}

/// Everything [`certify`] measured about one embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub distortion: DistortionReport,
    pub constraints: ConstraintReport,
    pub epsilon: f64,
    pub bound: BoundResult,
    pub embedding_dimension: usize,
    /// `embedding_dimension >= bound.min_dimension`.
    pub consistent: bool,
}

/// Normalizes `emb` to be 1-Lipschitz, measures `ε` from the separation
/// constraints and compares the embedding's dimension with the bound.
pub fn certify(graph: &RecursiveCycleGraph, emb: &Embedding) -> Result<CertificateReport, CertifyError> {
    check_cover(graph, emb)?;
    let points = graph.points();
    let report = distortion(points, emb)?;
    if report.is_degenerate() {
        return Err(CertifyError::Degenerate);
    }
    let normalized = normalize_lipschitz(points, emb)?;
    let constraints = constraint_report(graph, &normalized)?;
    let params = graph.params();
    let bound = dimension_bound(params.k(), params.n(), constraints.epsilon)?;
    Ok(CertificateReport {
        distortion: report,
        epsilon: constraints.epsilon,
        bound,
        embedding_dimension: emb.dim(),
        consistent: emb.dim() as u64 >= bound.min_dimension,
        constraints,
    })
}
