//! Sparse `{0,1}^m` vectors stored as maximal runs of ones.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("run [{start},{end}) is empty or lies outside [0,{len})")]
    OutOfRange { start: u64, end: u64, len: u64 },
    #[error("runs must be sorted, disjoint and non-adjacent (offending run starts at {start})")]
    Unordered { start: u64 },
    #[error("label lengths differ ({left} vs {right})")]
    LengthMismatch { left: u64, right: u64 },
}

/// A binary vector of length `len` whose ones are listed as half-open runs.
///
/// Runs are kept sorted, pairwise disjoint and non-adjacent, so the
/// representation of a given vector is unique and `==` is vector equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalLabel {
    len: u64,
    runs: Vec<(u64, u64)>,
}

impl IntervalLabel {
    pub fn zeros(len: u64) -> Self {
        Self { len, runs: Vec::new() }
    }

    pub fn ones(len: u64) -> Self {
        let runs = if len == 0 { Vec::new() } else { vec![(0, len)] };
        Self { len, runs }
    }

    /// Validates `runs` against the canonical-form invariants.
    pub fn from_runs(len: u64, runs: Vec<(u64, u64)>) -> Result<Self, LabelError> {
        let mut prev_end: Option<u64> = None;
        for &(start, end) in &runs {
            if start >= end || end > len {
                return Err(LabelError::OutOfRange { start, end, len });
            }
            if let Some(p) = prev_end {
                if start <= p {
                    return Err(LabelError::Unordered { start });
                }
            }
            prev_end = Some(end);
        }
        Ok(Self { len, runs })
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut runs = Vec::new();
        let mut open: Option<u64> = None;
        for (i, &b) in bits.iter().enumerate() {
            let i = i as u64;
            match (b, open) {
                (true, None) => open = Some(i),
                (false, Some(s)) => {
                    runs.push((s, i));
                    open = None;
                }
                _ => {}
            }
        }
        if let Some(s) = open {
            runs.push((s, bits.len() as u64));
        }
        Self { len: bits.len() as u64, runs }
    }

    pub fn to_bits(&self) -> Vec<bool> {
        let mut bits = vec![false; self.len as usize];
        for &(s, e) in &self.runs {
            bits[s as usize..e as usize].fill(true);
        }
        bits
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn runs(&self) -> &[(u64, u64)] {
        &self.runs
    }

    pub fn count_ones(&self) -> u64 {
        self.runs.iter().map(|&(s, e)| e - s).sum()
    }

    pub fn bit(&self, index: u64) -> bool {
        // first run whose end is past `index`
        let pos = self.runs.partition_point(|&(_, e)| e <= index);
        self.runs.get(pos).is_some_and(|&(s, _)| s <= index)
    }

    /// Repeats every coordinate `factor` times.
    pub fn scaled(&self, factor: u64) -> Self {
        Self {
            len: self.len * factor,
            runs: self.runs.iter().map(|&(s, e)| (s * factor, e * factor)).collect(),
        }
    }

    /// Sets the coordinates in `[start, end)` to one.
    pub fn with_ones(&self, start: u64, end: u64) -> Self {
        assert!(start <= end && end <= self.len, "range outside label");
        if start == end {
            return self.clone();
        }
        let mut runs = Vec::with_capacity(self.runs.len() + 1);
        let (mut lo, mut hi) = (start, end);
        let mut placed = false;
        for &(s, e) in &self.runs {
            if e < lo {
                runs.push((s, e));
            } else if s > hi {
                if !placed {
                    runs.push((lo, hi));
                    placed = true;
                }
                runs.push((s, e));
            } else {
                lo = lo.min(s);
                hi = hi.max(e);
            }
        }
        if !placed {
            runs.push((lo, hi));
        }
        Self { len: self.len, runs }
    }

    /// Size of the overlap between the ones of `self` and `other`.
    fn overlap(&self, other: &Self) -> u64 {
        let (mut i, mut j) = (0, 0);
        let mut total = 0;
        while i < self.runs.len() && j < other.runs.len() {
            let (a0, a1) = self.runs[i];
            let (b0, b1) = other.runs[j];
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if lo < hi {
                total += hi - lo;
            }
            if a1 <= b1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        total
    }

    /// Hamming (equivalently ℓ₁) distance: the measure of the symmetric
    /// difference of the two ones-sets.
    pub fn distance(&self, other: &Self) -> Result<u64, LabelError> {
        if self.len != other.len {
            return Err(LabelError::LengthMismatch { left: self.len, right: other.len });
        }
        Ok(self.count_ones() + other.count_ones() - 2 * self.overlap(other))
    }

    /// Dense `0.0`/`1.0` coordinates.
    pub fn to_dense(&self) -> Vec<f64> {
        self.to_bits().into_iter().map(|b| if b { 1.0 } else { 0.0 }).collect()
    }
}

/// Writes the run list as `a1-b1,a2-b2,...`, or `-` when there are no ones.
impl fmt::Display for IntervalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("-");
        }
        for (i, (s, e)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}-{e}")?;
        }
        Ok(())
    }
}
