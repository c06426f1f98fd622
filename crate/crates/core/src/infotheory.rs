//! Entropy and mutual information over explicit finite distributions.
//!
//! All logarithms are base 2. Weights below [`ZERO_WEIGHT`] count as exact
//! zeros, so `0 log 0 = 0`.

use thiserror::Error;

/// Weights at or below this magnitude are treated as zero.
pub const ZERO_WEIGHT: f64 = 1e-12;
/// Allowed deviation of a distribution's total mass from 1.
pub const MASS_TOLERANCE: f64 = 1e-9;
/// Largest dense joint table.
pub const MAX_CELLS: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InfoError {
    #[error("{0} is outside [0, 1]")]
    OutOfUnitInterval(f64),
    #[error("weight {value} at index {index} is negative or not finite")]
    BadWeight { index: usize, value: f64 },
    #[error("weights sum to {0}, not 1")]
    NotNormalized(f64),
    #[error("distribution has an empty alphabet")]
    EmptyAlphabet,
    #[error("table has {found} cells, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("joint table would have more than {MAX_CELLS} cells")]
    TooLarge,
    #[error("coordinate {coord} is out of range for a joint over {arity} variables")]
    BadCoordinate { coord: usize, arity: usize },
    #[error("coordinate {0} appears in more than one argument")]
    OverlappingCoordinates(usize),
    #[error("alphabet sizes differ ({left} vs {right})")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("p = {0} is below 1/2; the Fano-type bound needs p >= 1/2")]
    SuccessTooLow(f64),
    #[error("k must be at least 2 (got {0})")]
    TooFewOutcomes(usize),
    #[error("{0}")]
    Shape(&'static str),
}

/// Binary entropy `H(x) = -x log x - (1-x) log(1-x)`.
pub fn binary_entropy(x: f64) -> Result<f64, InfoError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(InfoError::OutOfUnitInterval(x));
    }
    Ok(plogp(x) + plogp(1.0 - x))
}

#[inline]
fn plogp(p: f64) -> f64 {
    if p <= ZERO_WEIGHT {
        0.0
    } else {
        -p * p.log2()
    }
}

fn entropy_of_weights(weights: &[f64]) -> f64 {
    weights.iter().map(|&p| plogp(p)).sum()
}

fn validate_weights(mut weights: Vec<f64>) -> Result<Vec<f64>, InfoError> {
    if weights.is_empty() {
        return Err(InfoError::EmptyAlphabet);
    }
    for (index, w) in weights.iter_mut().enumerate() {
        if !w.is_finite() || *w < -ZERO_WEIGHT {
            return Err(InfoError::BadWeight { index, value: *w });
        }
        if *w < 0.0 {
            *w = 0.0;
        }
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(InfoError::NotNormalized(total));
    }
    Ok(weights)
}

/// A probability distribution over `[m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    /// Clamps tiny negative dust to zero; rejects anything else that is not
    /// a distribution.
    pub fn new(weights: Vec<f64>) -> Result<Self, InfoError> {
        validate_weights(weights).map(Self)
    }

    pub fn uniform(m: usize) -> Self {
        assert!(m > 0, "empty alphabet");
        Self(vec![1.0 / m as f64; m])
    }

    pub fn point_mass(m: usize, at: usize) -> Self {
        let mut w = vec![0.0; m];
        w[at] = 1.0;
        Self(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

pub fn entropy(p: &ProbVector) -> f64 {
    entropy_of_weights(&p.0)
}

/// A dense joint distribution over `[m_0] × ... × [m_{r-1}]`, stored
/// row-major (last coordinate fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    sizes: Vec<usize>,
    table: Vec<f64>,
}

fn cell_count(sizes: &[usize]) -> Result<usize, InfoError> {
    sizes
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .filter(|&c| c <= MAX_CELLS)
        .ok_or(InfoError::TooLarge)
}

impl JointDistribution {
    pub fn new(sizes: Vec<usize>, table: Vec<f64>) -> Result<Self, InfoError> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(InfoError::EmptyAlphabet);
        }
        let expected = cell_count(&sizes)?;
        if table.len() != expected {
            return Err(InfoError::TableShape { expected, found: table.len() });
        }
        Ok(Self { sizes, table: validate_weights(table)? })
    }

    /// Builds the table from a weight function of the outcome tuple.
    pub fn from_fn(sizes: Vec<usize>, mut weight: impl FnMut(&[usize]) -> f64) -> Result<Self, InfoError> {
        let cells = cell_count(&sizes)?;
        let mut table = Vec::with_capacity(cells);
        let mut outcome = vec![0; sizes.len()];
        for _ in 0..cells {
            table.push(weight(&outcome));
            for i in (0..sizes.len()).rev() {
                outcome[i] += 1;
                if outcome[i] < sizes[i] {
                    break;
                }
                outcome[i] = 0;
            }
        }
        Self::new(sizes, table)
    }

    /// `(A, B)` with `A ~ prior` and `B | A=a ~ channel[a]`.
    pub fn from_channel(prior: &ProbVector, channel: &[ProbVector]) -> Result<Self, InfoError> {
        if channel.len() != prior.len() {
            return Err(InfoError::AlphabetMismatch { left: prior.len(), right: channel.len() });
        }
        let m = channel[0].len();
        if let Some(bad) = channel.iter().find(|c| c.len() != m) {
            return Err(InfoError::AlphabetMismatch { left: m, right: bad.len() });
        }
        Self::from_fn(vec![prior.len(), m], |o| prior.0[o[0]] * channel[o[0]].0[o[1]])
    }

    /// Independent coordinates with the given marginals.
    pub fn product(marginals: &[ProbVector]) -> Result<Self, InfoError> {
        let sizes = marginals.iter().map(ProbVector::len).collect();
        Self::from_fn(sizes, |o| o.iter().zip(marginals).map(|(&x, p)| p.0[x]).product())
    }

    pub fn arity(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    fn check_coords(&self, coords: &[usize]) -> Result<(), InfoError> {
        for &coord in coords {
            if coord >= self.arity() {
                return Err(InfoError::BadCoordinate { coord, arity: self.arity() });
            }
        }
        Ok(())
    }

    /// Visits every cell with its outcome tuple.
    fn for_each_cell(&self, mut visit: impl FnMut(&[usize], f64)) {
        let mut outcome = vec![0; self.arity()];
        for &w in &self.table {
            visit(&outcome, w);
            for i in (0..self.arity()).rev() {
                outcome[i] += 1;
                if outcome[i] < self.sizes[i] {
                    break;
                }
                outcome[i] = 0;
            }
        }
    }

    /// Marginal weights over `coords` (in the given order), flattened row-major.
    fn marginal_weights(&self, coords: &[usize]) -> Vec<f64> {
        let sizes: Vec<usize> = coords.iter().map(|&c| self.sizes[c]).collect();
        let mut out = vec![0.0; sizes.iter().product()];
        self.for_each_cell(|o, w| {
            let idx = coords.iter().zip(&sizes).fold(0, |acc, (&c, &s)| acc * s + o[c]);
            out[idx] += w;
        });
        out
    }

    /// Joint distribution of the coordinates `coords`, in that order.
    pub fn marginal(&self, coords: &[usize]) -> Result<Self, InfoError> {
        self.check_coords(coords)?;
        check_disjoint(&[coords])?;
        if coords.is_empty() {
            return Err(InfoError::Shape("marginal over no coordinates"));
        }
        Ok(Self {
            sizes: coords.iter().map(|&c| self.sizes[c]).collect(),
            table: self.marginal_weights(coords),
        })
    }

    /// Joint entropy `H(X_S)` of a coordinate subset; 0 for the empty set.
    pub fn entropy_of(&self, coords: &[usize]) -> Result<f64, InfoError> {
        self.check_coords(coords)?;
        check_disjoint(&[coords])?;
        Ok(entropy_of_weights(&self.marginal_weights(coords)))
    }

    /// Replaces coordinate `coord` by `map(X_coord)`, valued in `[new_size]`.
    pub fn map_coordinate(
        &self,
        coord: usize,
        new_size: usize,
        map: impl Fn(usize) -> usize,
    ) -> Result<Self, InfoError> {
        self.check_coords(&[coord])?;
        let mut sizes = self.sizes.clone();
        sizes[coord] = new_size;
        let cells = cell_count(&sizes)?;
        let mut table = vec![0.0; cells];
        let mut mapped = vec![0; self.arity()];
        self.for_each_cell(|o, w| {
            mapped.copy_from_slice(o);
            mapped[coord] = map(o[coord]);
            assert!(mapped[coord] < new_size, "mapped value outside the new alphabet");
            let idx = mapped.iter().zip(&sizes).fold(0, |acc, (&x, &s)| acc * s + x);
            table[idx] += w;
        });
        Ok(Self { sizes, table })
    }
}

fn check_disjoint(sets: &[&[usize]]) -> Result<(), InfoError> {
    let mut seen = Vec::new();
    for &c in sets.iter().flat_map(|s| s.iter()) {
        if seen.contains(&c) {
            return Err(InfoError::OverlappingCoordinates(c));
        }
        seen.push(c);
    }
    Ok(())
}

fn concat(sets: &[&[usize]]) -> Vec<usize> {
    sets.concat()
}

/// `I(X_A : X_B | X_Z) = H(AZ) + H(BZ) - H(ABZ) - H(Z)` for pairwise
/// disjoint, non-empty `A` and `B`.
pub fn conditional_mutual_information_sets(
    joint: &JointDistribution,
    a: &[usize],
    b: &[usize],
    z: &[usize],
) -> Result<f64, InfoError> {
    if a.is_empty() || b.is_empty() {
        return Err(InfoError::Shape("mutual information needs non-empty coordinate sets"));
    }
    joint.check_coords(&concat(&[a, b, z]))?;
    check_disjoint(&[a, b, z])?;
    Ok(joint.entropy_of(&concat(&[a, z]))? + joint.entropy_of(&concat(&[b, z]))?
        - joint.entropy_of(&concat(&[a, b, z]))?
        - joint.entropy_of(z)?)
}

pub fn mutual_information_sets(joint: &JointDistribution, a: &[usize], b: &[usize]) -> Result<f64, InfoError> {
    conditional_mutual_information_sets(joint, a, b, &[])
}

/// `I(X_i : X_j) = H(X_i) + H(X_j) - H(X_i X_j)`.
pub fn mutual_information(joint: &JointDistribution, i: usize, j: usize) -> Result<f64, InfoError> {
    mutual_information_sets(joint, &[i], &[j])
}

/// `I(X_i : X_j | X_Z)`.
pub fn conditional_mutual_information(
    joint: &JointDistribution,
    i: usize,
    j: usize,
    z: &[usize],
) -> Result<f64, InfoError> {
    conditional_mutual_information_sets(joint, &[i], &[j], z)
}

/// Lower bound `log k - (1-p) log(k-1) - H(p)` on `I(X:Y)` when `X` is
/// uniform on `[k]` and some function of `Y` equals `X` with probability at
/// least `p >= 1/2`.
pub fn fano_bound(k: usize, p: f64) -> Result<f64, InfoError> {
    if k < 2 {
        return Err(InfoError::TooFewOutcomes(k));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(InfoError::OutOfUnitInterval(p));
    }
    if p < 0.5 {
        return Err(InfoError::SuccessTooLow(p));
    }
    let k = k as f64;
    Ok(k.log2() - (1.0 - p) * (k - 1.0).log2() - binary_entropy(p)?)
}

/// For a joint over `(X_1, ..., X_n, M)`, the terms
/// `I(X_i : M | X_1 .. X_{i-1})` for `i = 1..=n`. They sum to `I(X : M)`.
pub fn chain_rule_terms(joint: &JointDistribution) -> Result<Vec<f64>, InfoError> {
    let n = joint.arity().checked_sub(1).filter(|&n| n > 0).ok_or(InfoError::Shape(
        "chain rule needs at least one X coordinate and the message coordinate",
    ))?;
    let prefix: Vec<usize> = (0..n).collect();
    (0..n)
        .map(|i| conditional_mutual_information_sets(joint, &[i], &[n], &prefix[..i]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn random_prob(rng: &mut impl Rng, m: usize) -> ProbVector {
        let w: Vec<f64> = (0..m).map(|_| rng.gen::<f64>().powi(3)).collect();
        let s: f64 = w.iter().sum();
        ProbVector::new(w.iter().map(|x| x / s).collect()).unwrap()
    }

    fn random_joint(rng: &mut impl Rng, sizes: Vec<usize>) -> JointDistribution {
        let cells: usize = sizes.iter().product();
        JointDistribution::new(sizes, random_prob(rng, cells).into_inner()).unwrap()
    }

    /// Entropies straight from an outcome->weight listing, with no marginal helper.
    fn brute_mi(table: &[((usize, usize), f64)]) -> f64 {
        use std::collections::HashMap;
        let mut px: HashMap<usize, f64> = HashMap::new();
        let mut py: HashMap<usize, f64> = HashMap::new();
        for &((x, y), w) in table {
            *px.entry(x).or_default() += w;
            *py.entry(y).or_default() += w;
        }
        table
            .iter()
            .filter(|(_, w)| *w > 0.0)
            .map(|&((x, y), w)| w * (w / (px[&x] * py[&y])).log2())
            .sum()
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!(close(binary_entropy(0.75).unwrap(), 0.811278, 1e-6));
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn entropy_values() {
        assert!(close(entropy(&ProbVector::uniform(8)), 3.0, 1e-12));
        assert_eq!(entropy(&ProbVector::point_mass(5, 2)), 0.0);
        assert!(close(entropy(&ProbVector::new(vec![0.5, 0.25, 0.25]).unwrap()), 1.5, 1e-12));
    }

    #[test]
    fn prob_vector_validation() {
        assert_eq!(ProbVector::new(vec![1.0 + 1e-13, -1e-13]).unwrap().as_slice(), &[1.0 + 1e-13, 0.0]);
        assert!(matches!(ProbVector::new(vec![1.1, -0.1]), Err(InfoError::BadWeight { .. })));
        assert!(matches!(ProbVector::new(vec![0.5, 0.4]), Err(InfoError::NotNormalized(_))));
        assert!(matches!(ProbVector::new(vec![]), Err(InfoError::EmptyAlphabet)));
        assert!(matches!(ProbVector::new(vec![f64::NAN, 1.0]), Err(InfoError::BadWeight { .. })));
    }

    #[test]
    fn mutual_information_examples() {
        let ind = JointDistribution::product(&[
            ProbVector::new(vec![0.2, 0.8]).unwrap(),
            ProbVector::new(vec![0.1, 0.6, 0.3]).unwrap(),
        ])
        .unwrap();
        assert!(close(mutual_information(&ind, 0, 1).unwrap(), 0.0, 1e-9));

        for k in 2..7 {
            let copy = JointDistribution::from_fn(vec![k, k], |o| if o[0] == o[1] { 1.0 / k as f64 } else { 0.0 }).unwrap();
            assert!(close(mutual_information(&copy, 0, 1).unwrap(), (k as f64).log2(), 1e-12));
        }

        // binary symmetric channel with crossover 1/4
        let bsc = JointDistribution::new(vec![2, 2], vec![0.375, 0.125, 0.125, 0.375]).unwrap();
        let mi = mutual_information(&bsc, 0, 1).unwrap();
        assert!(close(mi, 0.188722, 1e-6));
        let listing = [((0, 0), 0.375), ((0, 1), 0.125), ((1, 0), 0.125), ((1, 1), 0.375)];
        assert!(close(mi, brute_mi(&listing), 1e-12));

        assert!(matches!(mutual_information(&bsc, 0, 0), Err(InfoError::OverlappingCoordinates(0))));
        assert!(matches!(mutual_information(&bsc, 0, 2), Err(InfoError::BadCoordinate { .. })));
    }

    #[test]
    fn conditional_mutual_information_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let xy = random_joint(&mut rng, vec![3, 4]);
        let z = random_prob(&mut rng, 2);
        let xyz = JointDistribution::from_fn(vec![3, 4, 2], |o| xy.table()[o[0] * 4 + o[1]] * z.as_slice()[o[2]]).unwrap();
        assert!(close(
            conditional_mutual_information(&xyz, 0, 1, &[2]).unwrap(),
            mutual_information(&xy, 0, 1).unwrap(),
            1e-9
        ));

        // X, Y uniform bits and Z = X xor Y
        let xor = JointDistribution::from_fn(vec![2, 2, 2], |o| if o[2] == o[0] ^ o[1] { 0.25 } else { 0.0 }).unwrap();
        assert!(close(mutual_information(&xor, 0, 1).unwrap(), 0.0, 1e-12));
        assert!(close(conditional_mutual_information(&xor, 0, 1, &[2]).unwrap(), 1.0, 1e-12));

        // I(X:X|Z) = H(X|Z), with the second X as a copied coordinate
        let xz = random_joint(&mut rng, vec![4, 3]);
        let xxz = JointDistribution::from_fn(vec![4, 4, 3], |o| if o[0] == o[1] { xz.table()[o[0] * 3 + o[2]] } else { 0.0 })
            .unwrap();
        let h_x_given_z = xz.entropy_of(&[0, 1]).unwrap() - xz.entropy_of(&[1]).unwrap();
        assert!(close(conditional_mutual_information(&xxz, 0, 1, &[2]).unwrap(), h_x_given_z, 1e-12));

        assert!(matches!(
            conditional_mutual_information(&xyz, 0, 1, &[1]),
            Err(InfoError::OverlappingCoordinates(1))
        ));
    }

    #[test]
    fn fano_values() {
        assert!(close(fano_bound(2, 1.0).unwrap(), 1.0, 1e-15));
        assert!(close(fano_bound(2, 0.5).unwrap(), 0.0, 1e-15));
        assert!(close(fano_bound(4, 0.75).unwrap(), 0.792481, 1e-6));
        assert!(matches!(fano_bound(3, 0.49), Err(InfoError::SuccessTooLow(_))));
        assert!(matches!(fano_bound(1, 0.9), Err(InfoError::TooFewOutcomes(1))));
    }

    #[test]
    fn chain_rule_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let two = random_joint(&mut rng, vec![3, 4]);
        assert_eq!(chain_rule_terms(&two).unwrap(), vec![mutual_information(&two, 0, 1).unwrap()]);

        let x = random_joint(&mut rng, vec![2, 3]);
        let m = random_prob(&mut rng, 3);
        let ind = JointDistribution::from_fn(vec![2, 3, 3], |o| x.table()[o[0] * 3 + o[1]] * m.as_slice()[o[2]]).unwrap();
        assert!(chain_rule_terms(&ind).unwrap().iter().all(|t| close(*t, 0.0, 1e-9)));

        for trial in 0..50 {
            let n = 1 + trial % 3;
            let sizes: Vec<usize> = (0..=n).map(|_| rng.gen_range(2..=4)).collect();
            let joint = random_joint(&mut rng, sizes);
            let terms = chain_rule_terms(&joint).unwrap();
            let xs: Vec<usize> = (0..n).collect();
            let direct = mutual_information_sets(&joint, &xs, &[n]).unwrap();
            assert!(close(terms.iter().sum(), direct, 1e-9));
        }

        let single = JointDistribution::new(vec![2], vec![0.5, 0.5]).unwrap();
        assert!(chain_rule_terms(&single).is_err());
    }

    #[test]
    fn entropy_bounds_and_nonnegative_mi() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let m = rng.gen_range(1..=12);
            let p = random_prob(&mut rng, m);
            let h = entropy(&p);
            assert!(h >= 0.0 && h <= (m as f64).log2() + 1e-12);
            let sizes = vec![rng.gen_range(1..=5), rng.gen_range(1..=5)];
            let joint = random_joint(&mut rng, sizes);
            assert!(mutual_information(&joint, 0, 1).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn data_processing() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let (sx, sy) = (rng.gen_range(2..=5), rng.gen_range(2..=8));
            let joint = random_joint(&mut rng, vec![sx, sy]);
            let out = rng.gen_range(1..=sy);
            let table: Vec<usize> = (0..sy).map(|_| rng.gen_range(0..out)).collect();
            let mapped = joint.map_coordinate(1, out, |y| table[y]).unwrap();
            assert!(mutual_information(&mapped, 0, 1).unwrap() <= mutual_information(&joint, 0, 1).unwrap() + 1e-9);
        }
    }

    #[test]
    fn table_limits() {
        assert!(matches!(JointDistribution::from_fn(vec![1 << 13, 1 << 12], |_| 0.0), Err(InfoError::TooLarge)));
        assert!(matches!(JointDistribution::new(vec![2, 2], vec![1.0]), Err(InfoError::TableShape { .. })));
        assert!(matches!(JointDistribution::new(vec![2, 0], vec![]), Err(InfoError::EmptyAlphabet)));
    }
}
