//! Permutation arrays stored as a base group plus left-coset representatives.

use std::sync::Arc;

use thiserror::Error;

use crate::group::{GroupDescriptor, MaterializedGroup};
use crate::permutation::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrayError {
    #[error("representative {index} has degree {found}, base acts on {expected} symbols")]
    DegreeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("representatives {0} and {1} lie in the same coset")]
    SameCoset(usize, usize),
    #[error("an explicit listing needs at least one permutation")]
    Empty,
}

/// The union of cosets `r * G` (apply `r`, then `g`) over the listed
/// representatives `r`.
///
/// The identity coset is always present: if no representative lies in the
/// base group, the identity is prepended. Element `c * |G| + i` is
/// `reps[c]` composed with the `i`-th group element.
#[derive(Debug, Clone)]
pub struct PermArray {
    base: Arc<MaterializedGroup>,
    reps: Vec<Permutation>,
    claimed_d: usize,
    pub seed: Option<u64>,
    pub note: Option<String>,
}

impl PermArray {
    pub fn new(
        base: Arc<MaterializedGroup>,
        mut reps: Vec<Permutation>,
        claimed_d: usize,
    ) -> Result<Self, ArrayError> {
        let n = base.degree();
        for (index, r) in reps.iter().enumerate() {
            if r.degree() != n {
                return Err(ArrayError::DegreeMismatch {
                    index,
                    expected: n,
                    found: r.degree(),
                });
            }
        }
        if !reps.iter().any(|r| base.contains(r)) {
            reps.insert(0, Permutation::identity(n));
        }
        check_distinct_cosets(&base, &reps)?;
        Ok(PermArray {
            base,
            reps,
            claimed_d,
            seed: None,
            note: None,
        })
    }

    /// The group itself as a PA.
    pub fn from_group(base: Arc<MaterializedGroup>, claimed_d: usize) -> Self {
        let n = base.degree();
        PermArray {
            base,
            reps: vec![Permutation::identity(n)],
            claimed_d,
            seed: None,
            note: None,
        }
    }

    /// An explicit list over the trivial group. Duplicates are rejected.
    pub fn explicit(perms: Vec<Permutation>, claimed_d: usize) -> Result<Self, ArrayError> {
        let n = perms.first().ok_or(ArrayError::Empty)?.degree();
        let base = GroupDescriptor::Trivial(n)
            .materialize()
            .expect("trivial group on a nonempty set");
        PermArray::new(Arc::new(base), perms, claimed_d)
    }

    pub(crate) fn from_parts_unchecked(
        base: Arc<MaterializedGroup>,
        reps: Vec<Permutation>,
        claimed_d: usize,
    ) -> Self {
        PermArray {
            base,
            reps,
            claimed_d,
            seed: None,
            note: None,
        }
    }

    pub fn base(&self) -> &Arc<MaterializedGroup> {
        &self.base
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    /// Number of cosets.
    pub fn cosets(&self) -> usize {
        self.reps.len()
    }

    pub fn degree(&self) -> usize {
        self.base.degree()
    }

    pub fn size(&self) -> usize {
        self.reps.len() * self.base.order()
    }

    pub fn claimed_d(&self) -> usize {
        self.claimed_d
    }

    pub fn set_claimed_d(&mut self, d: usize) {
        self.claimed_d = d;
    }

    pub fn element(&self, id: usize) -> Permutation {
        let order = self.base.order();
        self.reps[id / order].then(&self.base.elements()[id % order])
    }

    /// Every member, in id order.
    pub fn elements(&self) -> Vec<Permutation> {
        self.reps
            .iter()
            .flat_map(|r| self.base.elements().iter().map(move |g| r.then(g)))
            .collect()
    }

    /// Representatives other than the identity, as written to files.
    pub fn nontrivial_reps(&self) -> &[Permutation] {
        match self.reps.first() {
            Some(r) if r.is_identity() => &self.reps[1..],
            _ => &self.reps,
        }
    }
}

fn check_distinct_cosets(base: &MaterializedGroup, reps: &[Permutation]) -> Result<(), ArrayError> {
    let k = reps.len();
    if k < 2 {
        return Ok(());
    }
    // pairwise membership tests cost k^2/2, canonical coset keys k*|G|
    if k / 2 <= base.order() {
        let inverses: Vec<_> = reps.iter().map(Permutation::inverse).collect();
        for i in 0..k {
            for j in i + 1..k {
                if base.contains(&inverses[i].then(&reps[j])) {
                    return Err(ArrayError::SameCoset(i, j));
                }
            }
        }
    } else {
        let mut keys: Vec<(Permutation, usize)> = reps
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let key = base.elements().iter().map(|g| r.then(g)).min().unwrap();
                (key, i)
            })
            .collect();
        keys.sort();
        for w in keys.windows(2) {
            if w[0].0 == w[1].0 {
                let (a, b) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
                return Err(ArrayError::SameCoset(a, b));
            }
        }
    }
    Ok(())
}
