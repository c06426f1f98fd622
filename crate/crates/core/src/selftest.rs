//! Property suites run by `cyclebound selftest`.
//!
//! Each suite counts individual checks; a suite passes when none failed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certifier::{
    average_edge_vector, bound_for_distortion, certify, constraint_lhs, dimension_bound, lift_recover, nonneg_lift,
    predictor_success, CertifyError,
};
use crate::infotheory::{
    chain_rule_terms, fano_bound, mutual_information, mutual_information_sets, JointDistribution, ProbVector,
};
use crate::l1metric::{normalize_lipschitz, Embedding};
use crate::oracle::{brute_force_average, build_message_joint, lemma_check, max_claim_gap, search_embedding, SearchConfig};
use crate::pointset::{vertex_count, EdgeLabels, GraphParams, Orientation, RecursiveCycleGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteOutcome {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Default)]
struct Tally {
    passed: usize,
    failed: usize,
}

impl Tally {
    fn check(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    fn finish(self, name: &'static str) -> SuiteOutcome {
        SuiteOutcome { name, passed: self.passed, failed: self.failed }
    }
}

fn graph(k: u64, n: u64, orientation: Orientation) -> RecursiveCycleGraph {
    RecursiveCycleGraph::build_with(GraphParams::new(k, n).expect("valid parameters"), orientation)
        .expect("small graphs materialize")
}

fn random_prob(rng: &mut ChaCha8Rng, m: usize) -> ProbVector {
    let w: Vec<f64> = (0..m).map(|_| rng.gen::<f64>().powi(3)).collect();
    let s: f64 = w.iter().sum();
    ProbVector::new(w.iter().map(|x| x / s).collect()).expect("normalized")
}

/// A distribution concentrated on `peak` with a random remainder.
fn peaked_prob(rng: &mut ChaCha8Rng, m: usize, peak: usize) -> ProbVector {
    let keep: f64 = rng.gen();
    let noise = random_prob(rng, m);
    let w = noise.as_slice().iter().enumerate().map(|(j, x)| (1.0 - keep) * x + if j == peak { keep } else { 0.0 });
    ProbVector::new(w.collect()).expect("normalized")
}

fn construction(orientation: Orientation) -> SuiteOutcome {
    let mut t = Tally::default();
    for k in 2..=4u64 {
        for n in 1..=3u64 {
            let g = graph(k, n, orientation);
            let p = g.points();
            t.check(g.vertex_count() as u64 == vertex_count(g.params()));
            let expected = ((2 * k - 2) * (2 * k).pow(n as u32) + 2 * k) / (2 * k - 1);
            t.check(g.vertex_count() as u64 == expected);
            t.check(g.edges().iter().all(|&(a, b)| p.distance(a, b) == 1));
            for level in 1..=n as u32 {
                let want = k.pow(n as u32 - level + 1);
                let pairs = g.antipodal_pairs(level).expect("level in range");
                t.check(pairs.iter().all(|&(a, b)| p.distance(a, b) == want));
            }
        }
    }
    t.finish("construction")
}

fn identity_equality(orientation: Orientation) -> SuiteOutcome {
    let mut t = Tally::default();
    for k in 2..=3u64 {
        for n in 1..=3u64 {
            let g = graph(k, n, orientation);
            let id = Embedding::identity(g.points()).expect("narrow labels");
            let params = g.params();
            for len in 0..n as usize {
                for prefix in EdgeLabels::new(params, len) {
                    for r in 1..params.k() {
                        let lhs = constraint_lhs(&g, &id, &prefix, r);
                        t.check(lhs.is_ok_and(|v| (v - 1.0).abs() <= 1e-12));
                    }
                }
            }
        }
    }
    t.finish("identity-equality")
}

fn averaging(orientation: Orientation, rng: &mut ChaCha8Rng) -> SuiteOutcome {
    let mut t = Tally::default();
    for (k, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let g = graph(k, n, orientation);
        let coords = (0..g.vertex_count() * 3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let emb = Embedding::new(3, coords).expect("finite");
        for len in 0..=n as usize {
            for prefix in EdgeLabels::new(g.params(), len) {
                let closed = average_edge_vector(&g, &emb, &prefix);
                let brute = brute_force_average(&g, &emb, &prefix);
                let ok = match (closed, brute) {
                    (Ok(a), Ok(b)) => a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= 1e-12),
                    _ => false,
                };
                t.check(ok);
            }
        }
    }
    t.finish("averaging")
}

fn bounds() -> SuiteOutcome {
    let mut t = Tally::default();
    let cases = [
        (dimension_bound(2, 10, 0.0), 511.5, 512),
        (bound_for_distortion(2, 20, 2.0), 6.342_092_037_200_929, 7),
        (dimension_bound(3, 4, 0.2), 2.642_989_872_315_962, 3),
    ];
    for (result, raw, min) in cases {
        t.check(result.is_ok_and(|b| b.min_dimension == min && (b.raw_bound - raw).abs() <= 1e-6));
    }
    t.check(dimension_bound(3, 5, 0.6).is_ok_and(|b| !b.applicable));
    t.finish("bounds")
}

fn fano(rng: &mut ChaCha8Rng, trials: usize) -> SuiteOutcome {
    let mut t = Tally::default();
    for _ in 0..trials {
        let k = rng.gen_range(2..=6);
        let m = rng.gen_range(k..=k + 4);
        let channel: Vec<ProbVector> = (0..k).map(|a| peaked_prob(rng, m, a)).collect();
        let joint = JointDistribution::from_channel(&ProbVector::uniform(k), &channel).expect("valid channel");
        let p = predictor_success(&channel).expect("valid channel").success.min(1.0);
        if p >= 0.5 {
            let mi = mutual_information(&joint, 0, 1).expect("two coordinates");
            t.check(fano_bound(k, p).is_ok_and(|b| mi >= b - 1e-9));
        }
    }
    t.finish("fano")
}

fn max_claim(rng: &mut ChaCha8Rng, trials: usize) -> SuiteOutcome {
    let mut t = Tally::default();
    for _ in 0..trials {
        let k = rng.gen_range(2..=8);
        let p: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
        let (lhs, rhs) = max_claim_gap(&p).expect("non-negative");
        t.check(lhs <= rhs + 1e-12);
        if k == 2 {
            t.check((lhs - rhs).abs() <= 1e-12);
        }
    }
    t.finish("max-claim")
}

fn lemma(rng: &mut ChaCha8Rng, trials: usize) -> SuiteOutcome {
    let mut t = Tally::default();
    for _ in 0..trials {
        let k = rng.gen_range(2..=5);
        let d = rng.gen_range(2..=8);
        let family: Vec<ProbVector> = (0..2 * k).map(|a| peaked_prob(rng, d, a % k % d)).collect();
        t.check(lemma_check(&family).is_ok_and(|r| r.holds));
    }
    t.finish("lemma")
}

fn chain_rule(orientation: Orientation) -> SuiteOutcome {
    let mut t = Tally::default();
    for n in 1..=2u64 {
        let g = graph(2, n, orientation);
        let Ok(id) = Embedding::identity(g.points()) else {
            t.check(false);
            continue;
        };
        let Ok(joint) = build_message_joint(&g, &id) else {
            t.check(false);
            continue;
        };
        let n = n as usize;
        let xs: Vec<usize> = (0..n).collect();
        let mi = mutual_information_sets(&joint, &xs, &[n]).expect("valid coordinates");
        let terms = chain_rule_terms(&joint).expect("valid joint");
        t.check((terms.iter().sum::<f64>() - mi).abs() <= 1e-9);
        t.check(terms.iter().all(|&v| v >= 1.0 - 1e-9));
        let h = joint.entropy_of(&[n]).expect("valid coordinate");
        t.check(((2 * id.dim() + 1) as f64).log2() >= h - 1e-12 && h >= mi - 1e-9);
    }
    t.finish("chain-rule")
}

fn lift(rng: &mut ChaCha8Rng, trials: usize) -> SuiteOutcome {
    let mut t = Tally::default();
    for _ in 0..trials {
        let d = rng.gen_range(1..=8);
        let raw: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm: f64 = raw.iter().map(|x: &f64| x.abs()).sum();
        let v: Vec<f64> = raw.iter().map(|x| x / norm * rng.gen::<f64>()).collect();
        let ok = nonneg_lift(&v).is_ok_and(|q| {
            let mass: f64 = q.as_slice().iter().sum();
            q.len() == 2 * d + 1
                && q.as_slice().iter().all(|&x| x >= 0.0)
                && (mass - 1.0).abs() <= 1e-9
                && lift_recover(q.as_slice()).is_ok_and(|back| back == v)
        });
        t.check(ok);

        let y: Vec<f64> = (0..2 * d + 1).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let y_norm: f64 = y.iter().map(|x| x.abs()).sum();
        t.check(lift_recover(&y).is_ok_and(|x| x.iter().map(|v| v.abs()).sum::<f64>() <= y_norm));
    }
    t.finish("lift")
}

fn end_to_end(orientation: Orientation, seed: u64, seeds_per_dim: u64) -> SuiteOutcome {
    let mut t = Tally::default();
    let g = graph(2, 2, orientation);
    for d in 1..=4 {
        for s in 0..seeds_per_dim {
            let cfg = SearchConfig { iterations: 500, restarts: 2, seed: seed.wrapping_add(s), ..SearchConfig::new(d) };
            let Ok(found) = search_embedding(g.points(), &cfg) else {
                t.check(false);
                continue;
            };
            match certify(&g, &found.embedding) {
                Ok(c) => {
                    t.check(c.consistent);
                    let eps0 = 1.0 - 1.0 / c.distortion.distortion;
                    t.check(c.epsilon <= eps0 + 1e-9);
                    let normalized = normalize_lipschitz(g.points(), &found.embedding);
                    t.check(normalized.is_ok());
                }
                Err(CertifyError::Degenerate) => t.check(true),
                Err(_) => t.check(false),
            }
        }
    }
    t.finish("end-to-end")
}

/// Runs every suite. `flip` builds the graphs with the bottom paths
/// reversed, which the identity-equality suite must detect.
pub fn run_selftest(flip: bool, seed: u64) -> Vec<SuiteOutcome> {
    let orientation = if flip { Orientation::FlippedBottom } else { Orientation::Canonical };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        construction(orientation),
        identity_equality(orientation),
        averaging(orientation, &mut rng),
        bounds(),
        fano(&mut rng, 1000),
        max_claim(&mut rng, 10_000),
        lemma(&mut rng, 1000),
        chain_rule(orientation),
        lift(&mut rng, 10_000),
        end_to_end(orientation, seed, 5),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let outcomes = run_selftest(false, 0);
        for o in &outcomes {
            assert!(o.ok(), "{o:?}");
            assert!(o.passed > 0, "{o:?}");
        }
    }

    #[test]
    fn flipped_orientation_is_detected() {
        let outcomes = run_selftest(true, 0);
        let identity = outcomes.iter().find(|o| o.name == "identity-equality").unwrap();
        assert!(identity.failed > 0);
    }
}
