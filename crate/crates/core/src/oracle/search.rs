//! Local search for low-distortion embeddings into `ℓ₁^d`.
//!
//! The objective is `max_{pairs} log r − min_{pairs} log r` where `r` is the
//! embedded-to-original distance ratio, i.e. the log of the distortion. Each
//! iteration rescales so the extreme log-ratios are symmetric around zero,
//! then takes a subgradient step on the two extreme pairs: the most expanded
//! pair is pulled together, the most contracted pushed apart.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::OracleError;
use crate::l1metric::{distortion, l1_unchecked, DistortionReport, Embedding};
use crate::pointset::PointSet;

/// Largest point set the search accepts.
pub const MAX_SEARCH_POINTS: usize = 2000;

/// Step size `initial / t^decay` at iteration `t ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSchedule {
    pub initial: f64,
    pub decay: f64,
}

impl Default for StepSchedule {
    fn default() -> Self {
        Self { initial: 0.2, decay: 0.5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub target_dimension: usize,
    pub iterations: usize,
    pub restarts: usize,
    pub seed: u64,
    pub step: StepSchedule,
}

impl SearchConfig {
    pub fn new(target_dimension: usize) -> Self {
        Self { target_dimension, iterations: 2000, restarts: 4, seed: 0, step: StepSchedule::default() }
    }

    fn validate(&self) -> Result<(), OracleError> {
        let ok = self.target_dimension > 0
            && self.iterations > 0
            && self.restarts > 0
            && self.step.initial > 0.0
            && self.step.decay > 0.0;
        if ok {
            Ok(())
        } else {
            Err(OracleError::BadConfig(format!("{self:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub embedding: Embedding,
    pub report: DistortionReport,
    /// Index of the restart that produced the result.
    pub restart: usize,
}

struct Pair {
    i: usize,
    j: usize,
    original: f64,
}

/// Labels folded into `d` coordinates (label coordinate `c` adds to `c mod d`).
/// For `d ≥ k^n` this is the identity embedding padded with zeros.
fn folded_labels(points: &PointSet, dim: usize) -> Embedding {
    let mut coords = vec![0.0; points.len() * dim];
    for (row, label) in coords.chunks_exact_mut(dim).zip(points.labels()) {
        for &(s, e) in label.runs() {
            for c in s..e {
                row[(c % dim as u64) as usize] += 1.0;
            }
        }
    }
    Embedding::new(dim, coords).expect("finite coordinates")
}

fn random_start(points: &PointSet, dim: usize, rng: &mut ChaCha8Rng) -> Embedding {
    let coords = (0..points.len() * dim).map(|_| rng.gen::<f64>()).collect();
    Embedding::new(dim, coords).expect("finite coordinates")
}

/// `(argmax, max, argmin, min)` of the log distance ratios.
fn extremes(emb: &Embedding, pairs: &[Pair]) -> (usize, f64, usize, f64) {
    let mut hi = (0, f64::NEG_INFINITY);
    let mut lo = (0, f64::INFINITY);
    for (p, pair) in pairs.iter().enumerate() {
        let lr = (l1_unchecked(emb.row(pair.i), emb.row(pair.j)) / pair.original).ln();
        if lr > hi.1 {
            hi = (p, lr);
        }
        if lr < lo.1 {
            lo = (p, lr);
        }
    }
    (hi.0, hi.1, lo.0, lo.1)
}

/// Moves the pair's endpoints by `amount` per coordinate, towards each other
/// (`pull`) or apart.
fn step_pair(emb: &mut Embedding, pair: &Pair, amount: f64, pull: bool) {
    let diff = emb.difference(pair.i, pair.j);
    let moves: Vec<f64> = diff
        .iter()
        .map(|&d| {
            let dir = if d >= 0.0 { 1.0 } else { -1.0 };
            if pull {
                -dir * amount.min(d.abs() / 2.0)
            } else {
                dir * amount
            }
        })
        .collect();
    for (x, m) in emb.row_mut(pair.i).iter_mut().zip(&moves) {
        *x += m;
    }
    for (x, m) in emb.row_mut(pair.j).iter_mut().zip(&moves) {
        *x -= m;
    }
}

fn run_restart(points: &PointSet, pairs: &[Pair], cfg: &SearchConfig, restart: usize) -> (Embedding, f64) {
    let dim = cfg.target_dimension;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(restart as u64));
    let mut emb = if restart == 0 { folded_labels(points, dim) } else { random_start(points, dim, &mut rng) };
    let mut best = (emb.clone(), f64::INFINITY);

    for t in 1..=cfg.iterations + 1 {
        let (hi, max, lo, min) = extremes(&emb, pairs);
        let log_distortion = max - min;
        if log_distortion < best.1 {
            best = (emb.clone(), log_distortion);
        }
        if t > cfg.iterations || log_distortion == 0.0 {
            break;
        }
        if min.is_finite() {
            emb = emb.scaled((-(max + min) / 2.0).exp());
        }
        let eta = cfg.step.initial / (t as f64).powf(cfg.step.decay);
        for (p, pull) in [(hi, true), (lo, false)] {
            let pair = &pairs[p];
            step_pair(&mut emb, pair, eta * pair.original / (2 * dim) as f64, pull);
        }
    }
    best
}

/// Best-effort low-distortion embedding of `points` into `ℓ₁^d`.
///
/// Restart `i` is seeded with `seed + i`; restart 0 starts from the labels
/// folded into `d` coordinates, the others from uniform random points. The
/// lowest distortion wins, ties going to the lowest restart index.
pub fn search_embedding(points: &PointSet, cfg: &SearchConfig) -> Result<SearchOutcome, OracleError> {
    cfg.validate()?;
    if points.len() < 2 || points.len() > MAX_SEARCH_POINTS {
        return Err(OracleError::BadConfig(format!(
            "search needs between 2 and {MAX_SEARCH_POINTS} points, got {}",
            points.len()
        )));
    }
    let mut pairs = Vec::with_capacity(points.len() * (points.len() - 1) / 2);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            pairs.push(Pair { i, j, original: points.distance(i, j) as f64 });
        }
    }
    let results: Vec<(Embedding, f64)> =
        (0..cfg.restarts).into_par_iter().map(|r| run_restart(points, &pairs, cfg, r)).collect();
    let (restart, (embedding, _)) = results
        .into_iter()
        .enumerate()
        .reduce(|best, cur| if cur.1 .1 < best.1 .1 { cur } else { best })
        .expect("at least one restart");
    let report = distortion(points, &embedding)?;
    Ok(SearchOutcome { embedding, report, restart })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointset::GraphParams;

    fn points(k: u64, n: u64) -> PointSet {
        PointSet::construct(GraphParams::new(k, n).unwrap()).unwrap()
    }

    #[test]
    fn finds_isometries_when_labels_fit() {
        for (k, n, d) in [(2, 1, 2), (2, 2, 4), (2, 2, 6)] {
            let p = points(k, n);
            let out = search_embedding(&p, &SearchConfig::new(d)).unwrap();
            assert!((out.report.distortion - 1.0).abs() <= 1e-6, "k={k} n={n} d={d}");
            assert_eq!(out.embedding.dim(), d);
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let p = points(2, 2);
        let cfg = SearchConfig { seed: 17, iterations: 300, ..SearchConfig::new(2) };
        let a = search_embedding(&p, &cfg).unwrap();
        let b = search_embedding(&p, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn improves_on_random_starts() {
        let p = points(2, 2);
        let cfg = SearchConfig { iterations: 1500, restarts: 3, seed: 5, ..SearchConfig::new(2) };
        let out = search_embedding(&p, &cfg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5 + 1);
        let start = distortion(&p, &random_start(&p, 2, &mut rng)).unwrap();
        assert!(out.report.distortion.is_finite());
        assert!(out.report.distortion <= start.distortion);
    }

    #[test]
    fn rejects_bad_configs() {
        let p = points(2, 1);
        for cfg in [
            SearchConfig::new(0),
            SearchConfig { iterations: 0, ..SearchConfig::new(2) },
            SearchConfig { restarts: 0, ..SearchConfig::new(2) },
            SearchConfig { step: StepSchedule { initial: -1.0, decay: 0.5 }, ..SearchConfig::new(2) },
        ] {
            assert!(matches!(search_embedding(&p, &cfg), Err(OracleError::BadConfig(_))));
        }
    }
}
