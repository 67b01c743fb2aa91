//! Permutations of `{0, .., n-1}` stored as dense image tables.
//!
//! Products apply left to right: `a.compose(&b)` maps `i` to `b(a(i))`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image {value} is out of range for degree {degree}")]
    OutOfRange { value: u64, degree: usize },
    #[error("image {0} appears more than once")]
    Duplicate(u32),
    #[error("cannot parse `{0}` as a symbol")]
    Parse(String),
    #[error("empty permutation")]
    Empty,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let slot = seen.get_mut(v as usize).ok_or(PermError::OutOfRange {
                value: v as u64,
                degree: n,
            })?;
            if *slot {
                return Err(PermError::Duplicate(v));
            }
            *slot = true;
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// The shift `x -> x + j mod n`.
    pub fn rotation(n: usize, j: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| ((i + j) % n) as u32).collect(),
        }
    }

    /// Parses a printed list whose symbols are `1..=n`.
    pub fn from_one_indexed(values: &[u64]) -> Result<Self, PermError> {
        let n = values.len();
        let images = values
            .iter()
            .map(|&v| {
                if v == 0 || v > n as u64 {
                    Err(PermError::OutOfRange {
                        value: v,
                        degree: n,
                    })
                } else {
                    Ok((v - 1) as u32)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    fn check_degree(&self, other: &Permutation) -> Result<(), PermError> {
        if self.degree() == other.degree() {
            Ok(())
        } else {
            Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            })
        }
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(other)?;
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Number of positions where the two permutations disagree.
    pub fn hamming(&self, other: &Permutation) -> Result<usize, PermError> {
        self.check_degree(other)?;
        Ok(hamming_slices(&self.images, &other.images))
    }

    /// Number of points moved; the distance to the identity.
    pub fn support_size(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i as u32 != v)
            .count()
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        let mut histogram = BTreeMap::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            *histogram.entry(cycle.len()).or_insert(0) += 1;
            cycles.push(cycle);
        }
        CycleDecomposition { cycles, histogram }
    }

    /// Whether some cycle has exactly `len` points.
    pub fn has_cycle_of_length(&self, len: usize) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut count = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                count += 1;
                x = self.images[x] as usize;
            }
            if count == len {
                return true;
            }
        }
        false
    }

    /// The same permutation on `n` symbols, fixing every added symbol.
    pub fn embed(&self, n: usize) -> Result<Permutation, PermError> {
        if n < self.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: n,
            });
        }
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..n as u32);
        Ok(Permutation { images })
    }
}

#[inline]
pub(crate) fn hamming_slices(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Hamming distance, giving up once it reaches `cap`; returns `min(hd, cap)`.
#[inline]
pub(crate) fn hamming_capped(a: &[u32], b: &[u32], cap: usize) -> usize {
    let mut d = 0;
    for (x, y) in a.iter().zip(b) {
        if x != y {
            d += 1;
            if d >= cap {
                return cap;
            }
        }
    }
    d
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Splits a line on spaces and/or commas.
pub(crate) fn split_symbols(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Space- or comma-separated 0-indexed images.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = split_symbols(s)
            .map(|t| t.parse::<u64>().map_err(|_| PermError::Parse(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err(PermError::Empty);
        }
        let n = values.len();
        let images = values
            .into_iter()
            .map(|v| {
                u32::try_from(v)
                    .ok()
                    .filter(|&v| (v as usize) < n)
                    .ok_or(PermError::OutOfRange {
                        value: v,
                        degree: n,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_images(images)
    }
}

/// Disjoint cycles of a permutation, fixed points included as 1-cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<u32>>,
    /// cycle length -> number of cycles of that length
    pub histogram: BTreeMap<usize, usize>,
}

impl CycleDecomposition {
    pub fn fixed_points(&self) -> Vec<u32> {
        self.cycles
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c[0])
            .collect()
    }

    pub fn has_length(&self, len: usize) -> bool {
        self.histogram.contains_key(&len)
    }

    /// The cycle through `x`, if any.
    pub fn cycle_of(&self, x: u32) -> Option<&[u32]> {
        self.cycles
            .iter()
            .find(|c| c.contains(&x))
            .map(|c| c.as_slice())
    }
}
