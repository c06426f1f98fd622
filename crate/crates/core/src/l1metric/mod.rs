//! ℓ₁ distances, embeddings of a point set and their distortion.

mod format;

use thiserror::Error;

use crate::pointset::{IntervalLabel, LabelError, PointSet};

pub use format::{parse_embedding, write_embedding, EmbeddingHeader};

/// Largest label dimension for which [`Embedding::identity`] builds dense vectors.
pub const DENSE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("vector lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("non-finite coordinate {value} at index {index}")]
    NonFinite { index: usize, value: f64 },
    #[error("embedding dimension must be at least 1")]
    ZeroDimension,
    #[error("embedding has {found} vectors but the point set has {expected} points")]
    WrongPointCount { expected: usize, found: usize },
    #[error("point set needs at least two points")]
    TooFewPoints,
    #[error("points {0} and {1} have identical labels")]
    DuplicatePoint(usize, usize),
    #[error("embedding is constant; it cannot be rescaled to expansion 1")]
    ConstantEmbedding,
    #[error("label dimension {0} is too large for a dense identity embedding")]
    TooWide(u64),
}

/// Exact ℓ₁ distance between two binary labels.
pub fn l1_interval_distance(a: &IntervalLabel, b: &IntervalLabel) -> Result<u64, MetricError> {
    Ok(a.distance(b)?)
}

pub fn l1_distance(u: &[f64], v: &[f64]) -> Result<f64, MetricError> {
    if u.len() != v.len() {
        return Err(MetricError::LengthMismatch { left: u.len(), right: v.len() });
    }
    for (index, &value) in u.iter().chain(v).enumerate() {
        if !value.is_finite() {
            return Err(MetricError::NonFinite { index: index % u.len().max(1), value });
        }
    }
    Ok(l1_unchecked(u, v))
}

#[inline]
pub(crate) fn l1_unchecked(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b).abs()).sum()
}

/// Vectors in `R^d`, one per point, stored row-major in point-set order.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    dim: usize,
    coords: Vec<f64>,
}

impl Embedding {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self, MetricError> {
        if dim == 0 {
            return Err(MetricError::ZeroDimension);
        }
        if coords.len() % dim != 0 {
            return Err(MetricError::LengthMismatch { left: coords.len(), right: dim });
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(MetricError::NonFinite { index, value });
        }
        Ok(Self { dim, coords })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MetricError> {
        let dim = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(MetricError::LengthMismatch { left: bad.len(), right: dim });
        }
        Self::new(dim, rows.concat())
    }

    /// The labels themselves, as vectors in `R^{k^n}`.
    pub fn identity(points: &PointSet) -> Result<Self, MetricError> {
        let dim = points.params().label_dim();
        if dim > DENSE_LIMIT {
            return Err(MetricError::TooWide(dim));
        }
        let coords = points.labels().iter().flat_map(IntervalLabel::to_dense).collect();
        Self::new(dim as usize, coords)
    }

    pub fn constant(points: usize, dim: usize, value: f64) -> Result<Self, MetricError> {
        Self::new(dim, vec![value; points * dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of embedded points.
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { dim: self.dim, coords: self.coords.iter().map(|c| c * factor).collect() }
    }

    /// `F(i) - F(j)`.
    pub fn difference(&self, i: usize, j: usize) -> Vec<f64> {
        self.row(i).iter().zip(self.row(j)).map(|(a, b)| a - b).collect()
    }
}

/// Worst-case expansion and contraction of an embedding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionReport {
    /// `max ‖F(u)-F(v)‖₁ / dist(u,v)`.
    pub expansion: f64,
    /// `max dist(u,v) / ‖F(u)-F(v)‖₁`; infinite when two points collide.
    pub contraction: f64,
    pub distortion: f64,
}

impl DistortionReport {
    /// Two distinct points were mapped to the same vector.
    pub fn is_degenerate(&self) -> bool {
        self.contraction.is_infinite()
    }
}

fn check_shapes(points: &PointSet, emb: &Embedding) -> Result<(), MetricError> {
    if points.len() < 2 {
        return Err(MetricError::TooFewPoints);
    }
    if emb.len() != points.len() {
        return Err(MetricError::WrongPointCount { expected: points.len(), found: emb.len() });
    }
    Ok(())
}

/// Scans all pairs. The distortion is the scale-invariant product of
/// expansion and contraction.
pub fn distortion(points: &PointSet, emb: &Embedding) -> Result<DistortionReport, MetricError> {
    check_shapes(points, emb)?;
    let mut expansion: f64 = 0.0;
    let mut contraction: f64 = 0.0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let original = points.distance(i, j);
            if original == 0 {
                return Err(MetricError::DuplicatePoint(i, j));
            }
            let original = original as f64;
            let embedded = l1_unchecked(emb.row(i), emb.row(j));
            expansion = expansion.max(embedded / original);
            contraction = if embedded == 0.0 { f64::INFINITY } else { contraction.max(original / embedded) };
        }
    }
    let distortion = if contraction.is_infinite() { f64::INFINITY } else { expansion * contraction };
    Ok(DistortionReport { expansion, contraction, distortion })
}

/// Rescales `emb` so that its expansion is 1.
pub fn normalize_lipschitz(points: &PointSet, emb: &Embedding) -> Result<Embedding, MetricError> {
    let report = distortion(points, emb)?;
    if report.expansion == 0.0 {
        return Err(MetricError::ConstantEmbedding);
    }
    Ok(emb.scaled(1.0 / report.expansion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointset::GraphParams;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn points(k: u64, n: u64) -> PointSet {
        PointSet::construct(GraphParams::new(k, n).unwrap()).unwrap()
    }

    fn random_embedding(n: usize, d: usize, seed: u64) -> Embedding {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Embedding::new(d, (0..n * d).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
    }

    #[test]
    fn vector_distance() {
        assert_eq!(l1_distance(&[0.0, 0.0], &[1.0, 1.0]).unwrap(), 2.0);
        assert_eq!(l1_distance(&[0.3, -2.0], &[0.3, -2.0]).unwrap(), 0.0);
        assert_eq!(l1_distance(&[0.5, -0.25], &[0.0, 0.0]).unwrap(), 0.75);
        assert!(matches!(l1_distance(&[0.0], &[0.0, 1.0]), Err(MetricError::LengthMismatch { .. })));
        assert!(matches!(l1_distance(&[f64::NAN], &[0.0]), Err(MetricError::NonFinite { .. })));
    }

    #[test]
    fn label_distance() {
        let p = points(2, 1);
        let l = p.labels();
        // top 1 = (0,1), bottom 1 = (1,0)
        assert_eq!(l1_interval_distance(&l[2], &l[3]).unwrap(), 2);
        assert_eq!(l1_interval_distance(&l[2], &l[2]).unwrap(), 0);
        let g = points(3, 2);
        // L and top vertex 1 of the first level-2 cycle are adjacent
        let adj = g.addresses().iter().position(|a| a.to_string() == "1/1").unwrap();
        assert_eq!(l1_interval_distance(&g.labels()[0], &g.labels()[adj]).unwrap(), 1);
        assert!(l1_interval_distance(&l[0], &g.labels()[0]).is_err());
    }

    #[test]
    fn identity_is_an_isometry() {
        for (k, n) in [(2, 1), (2, 3), (3, 2)] {
            let p = points(k, n);
            let r = distortion(&p, &Embedding::identity(&p).unwrap()).unwrap();
            assert_eq!((r.expansion, r.contraction, r.distortion), (1.0, 1.0, 1.0));
            let half = distortion(&p, &Embedding::identity(&p).unwrap().scaled(0.5)).unwrap();
            assert_eq!(half.distortion, 1.0);
        }
    }

    #[test]
    fn constant_embedding_is_degenerate() {
        let p = points(2, 2);
        let r = distortion(&p, &Embedding::constant(p.len(), 3, 0.0).unwrap()).unwrap();
        assert!(r.is_degenerate());
        assert!(r.distortion.is_infinite());
        assert_eq!(
            normalize_lipschitz(&p, &Embedding::constant(p.len(), 3, 1.5).unwrap()),
            Err(MetricError::ConstantEmbedding)
        );
    }

    #[test]
    fn shape_errors() {
        let p = points(2, 1);
        assert!(matches!(
            distortion(&p, &Embedding::constant(3, 1, 0.0).unwrap()),
            Err(MetricError::WrongPointCount { .. })
        ));
        assert_eq!(Embedding::new(0, vec![]), Err(MetricError::ZeroDimension));
        assert!(matches!(Embedding::new(2, vec![0.0, f64::INFINITY]), Err(MetricError::NonFinite { .. })));
        assert!(Embedding::from_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn normalization() {
        let p = points(2, 2);
        let id = Embedding::identity(&p).unwrap();
        assert_eq!(normalize_lipschitz(&p, &id.scaled(3.0)).unwrap(), id);
        assert_eq!(normalize_lipschitz(&p, &id).unwrap(), id);

        for seed in 0..20 {
            let emb = random_embedding(p.len(), 3, seed);
            let before = distortion(&p, &emb).unwrap();
            let once = normalize_lipschitz(&p, &emb).unwrap();
            let after = distortion(&p, &once).unwrap();
            assert!((after.expansion - 1.0).abs() <= 1e-12);
            assert!((after.distortion - before.distortion).abs() <= 1e-9);
            let twice = normalize_lipschitz(&p, &once).unwrap();
            for (a, b) in once.rows().flatten().zip(twice.rows().flatten()) {
                assert!((a - b).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn distortion_is_scale_invariant() {
        let p = points(3, 1);
        for seed in 0..20 {
            let emb = random_embedding(p.len(), 2, seed);
            let base = distortion(&p, &emb).unwrap().distortion;
            for s in [1e-3, 0.7, 4.0, 250.0] {
                let scaled = distortion(&p, &emb.scaled(s)).unwrap().distortion;
                assert!((scaled - base).abs() <= 1e-9, "s={s}");
            }
        }
    }
}
