//! Brute-force references for the certifier's closed forms, plus a
//! heuristic embedding search used to stress-test certificates.

mod search;

use thiserror::Error;

use crate::certifier::{edge_difference_map, l1_norm, nonneg_lift, CertifyError};
use crate::infotheory::{binary_entropy, mutual_information, InfoError, JointDistribution, ProbVector, MAX_CELLS};
use crate::l1metric::{Embedding, MetricError};
use crate::pointset::{EdgeLabels, GraphError, RecursiveCycleGraph};

pub use search::{search_embedding, SearchConfig, SearchOutcome, StepSchedule};

/// Largest number of completions [`brute_force_average`] will enumerate.
pub const MAX_COMPLETIONS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Info(#[from] InfoError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error("{0} completions exceed the enumeration limit")]
    TooManyCompletions(u64),
    #[error("negative entry {0}")]
    NegativeEntry(f64),
    #[error("expected an even number (2k >= 4) of distributions, got {0}")]
    BadFamilySize(usize),
    #[error("message table would exceed {MAX_CELLS} cells")]
    TooLarge,
    #[error("embedding has {found} vectors but the graph has {expected} vertices")]
    WrongPointCount { expected: usize, found: usize },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("invalid search configuration: {0}")]
    BadConfig(String),
}

/// Average of `F(head(x)) − F(tail(x))` over every full-depth `x` extending
/// `prefix`, by enumeration.
pub fn brute_force_average(
    graph: &RecursiveCycleGraph,
    emb: &Embedding,
    prefix: &[u32],
) -> Result<Vec<f64>, OracleError> {
    if emb.len() != graph.vertex_count() {
        return Err(OracleError::WrongPointCount { expected: graph.vertex_count(), found: emb.len() });
    }
    let params = graph.params();
    // validates the prefix
    graph.edge_endpoints(prefix)?;
    let free = params.n() as usize - prefix.len();
    let count = params.edges_at_level(free as u32);
    if count > MAX_COMPLETIONS {
        return Err(OracleError::TooManyCompletions(count));
    }
    let mut sum = vec![0.0; emb.dim()];
    let mut label = prefix.to_vec();
    for tail in EdgeLabels::new(params, free) {
        label.truncate(prefix.len());
        label.extend(&tail);
        let (t, h) = graph.edge(&label)?;
        for ((s, a), b) in sum.iter_mut().zip(emb.row(h)).zip(emb.row(t)) {
            *s += a - b;
        }
    }
    Ok(sum.into_iter().map(|s| s / count as f64).collect())
}

/// Both sides of `Σp − max p ≤ ½ Σ_{r=1}^{k−1} (Σp − |Σ_{i≤r} p_i − Σ_{i>r} p_i|)`.
pub fn max_claim_gap(p: &[f64]) -> Result<(f64, f64), OracleError> {
    if let Some(&bad) = p.iter().find(|&&x| !(x >= 0.0)) {
        return Err(OracleError::NegativeEntry(bad));
    }
    let total: f64 = p.iter().sum();
    let max = p.iter().copied().fold(0.0, f64::max);
    let mut head = 0.0;
    let mut rhs = 0.0;
    for &x in &p[..p.len().saturating_sub(1)] {
        head += x;
        rhs += total - (head - (total - head)).abs();
    }
    Ok((total - max, rhs / 2.0))
}

/// What [`lemma_check`] measured for one family `P_1..P_{2k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub k: usize,
    /// `min_r (1/k) ‖Σ_{a≤r} Q_a − Σ_{a>r} Q_a‖₁` with `Q_a = (P_a + P_{a+k})/2`.
    pub separation: f64,
    pub epsilon: f64,
    pub delta: f64,
    /// `I(A:B)` with `A` uniform on `[2k]` and `B | A=a ~ P_a`.
    pub mi: f64,
    /// `I(A':B)` for the folded `A' = A mod k`.
    pub mi_folded: f64,
    /// `log k − δ log(k−1) − H(δ)`, when `δ < 1/2`.
    pub bound: Option<f64>,
    pub holds: bool,
}

/// Checks the mutual-information lower bound for `A` uniform on `[2k]` and
/// `B | A=a ~ P_a`, from the measured separation of the folded family.
pub fn lemma_check(family: &[ProbVector]) -> Result<LemmaReport, OracleError> {
    if family.len() < 4 || family.len() % 2 != 0 {
        return Err(OracleError::BadFamilySize(family.len()));
    }
    let k = family.len() / 2;
    let d = family[0].len();
    if let Some(bad) = family.iter().find(|p| p.len() != d) {
        return Err(InfoError::AlphabetMismatch { left: d, right: bad.len() }.into());
    }
    let folded: Vec<ProbVector> = (0..k)
        .map(|a| {
            let w = family[a].as_slice().iter().zip(family[a + k].as_slice()).map(|(x, y)| (x + y) / 2.0);
            ProbVector::new(w.collect())
        })
        .collect::<Result<_, _>>()?;

    let separation = (1..k)
        .map(|r| {
            let diff: Vec<f64> = (0..d)
                .map(|j| {
                    let head: f64 = folded[..r].iter().map(|q| q.as_slice()[j]).sum();
                    let tail: f64 = folded[r..].iter().map(|q| q.as_slice()[j]).sum();
                    head - tail
                })
                .collect();
            l1_norm(&diff) / k as f64
        })
        .fold(f64::INFINITY, f64::min);
    let epsilon = (1.0 - separation).clamp(0.0, 1.0);
    let delta = (k - 1) as f64 * epsilon / 2.0;

    let joint = JointDistribution::from_channel(&ProbVector::uniform(2 * k), family)?;
    let mi = mutual_information(&joint, 0, 1)?;
    let mi_folded = mutual_information(&joint.map_coordinate(0, k, |a| a % k)?, 0, 1)?;
    let bound = if delta < 0.5 {
        let kf = k as f64;
        Some(kf.log2() - delta * (kf - 1.0).log2() - binary_entropy(delta)?)
    } else {
        None
    };
    let holds = mi >= mi_folded - 1e-9 && bound.is_none_or(|b| mi >= b - 1e-9);
    Ok(LemmaReport { k, separation, epsilon, delta, mi, mi_folded, bound, holds })
}

/// Joint of `(X_1, ..., X_n, M)` with `X` uniform on `[2k]^n` and
/// `M | X=x ~ nonneg_lift(f(x))`. `emb` must be 1-Lipschitz.
pub fn build_message_joint(graph: &RecursiveCycleGraph, emb: &Embedding) -> Result<JointDistribution, OracleError> {
    let params = graph.params();
    let message = 2 * emb.dim() + 1;
    let cells = (params.edge_count() as usize).checked_mul(message);
    if cells.is_none_or(|c| c > MAX_CELLS) {
        return Err(OracleError::TooLarge);
    }
    let f = edge_difference_map(graph, emb)?;
    let weight = 1.0 / params.edge_count() as f64;
    let mut table = Vec::with_capacity(cells.unwrap_or_default());
    for v in f.iter() {
        table.extend(nonneg_lift(v)?.as_slice().iter().map(|p| p * weight));
    }
    let mut sizes = vec![params.cycle_len() as usize; params.n() as usize];
    sizes.push(message);
    Ok(JointDistribution::new(sizes, table)?)
}
