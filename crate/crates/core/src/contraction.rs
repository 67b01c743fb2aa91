//! Contraction: moving a PA from `S_n` to `S_{n-1}` by deleting the largest
//! symbol, with exact before/after distance certificates.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::array::{ArrayError, PermArray};
use crate::distance::{pa_hd, pairwise_hd, DistanceError, Mode};
use crate::field::is_prime;
use crate::group::MaterializedGroup;
use crate::permutation::{PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContractionError {
    #[error("cannot contract degree {degree} {times} time(s)")]
    DegreeTooSmall { degree: usize, times: usize },
    #[error("permutations are equal")]
    EqualPermutations,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
    #[error(transparent)]
    Array(#[from] ArrayError),
}

/// Deletes symbol `n - 1`: the position that held it receives `σ(n - 1)`.
pub fn contract(sigma: &Permutation) -> Result<Permutation, ContractionError> {
    let n = sigma.degree();
    if n < 2 {
        return Err(ContractionError::DegreeTooSmall {
            degree: n,
            times: 1,
        });
    }
    let last = (n - 1) as u32;
    let tail = sigma.images()[n - 1];
    let images = sigma.images()[..n - 1]
        .iter()
        .map(|&v| if v == last { tail } else { v })
        .collect();
    Ok(Permutation::from_images_unchecked(images))
}

pub fn contract_times(sigma: &Permutation, times: usize) -> Result<Permutation, ContractionError> {
    if sigma.degree() <= times {
        return Err(ContractionError::DegreeTooSmall {
            degree: sigma.degree(),
            times,
        });
    }
    let mut out = sigma.clone();
    for _ in 0..times {
        out = contract(&out)?;
    }
    Ok(out)
}

/// `hd(σ, τ) - hd(σ', τ')` after one contraction; always in `0..=3`.
pub fn contraction_drop(sigma: &Permutation, tau: &Permutation) -> Result<usize, ContractionError> {
    let before = sigma.hamming(tau)?;
    if before == 0 {
        return Err(ContractionError::EqualPermutations);
    }
    let after = contract(sigma)?.hamming(&contract(tau)?)?;
    Ok(before - after)
}

/// Structural test for a drop of three: `σ^-1 τ` contains the 3-cycle
/// `(n-1, r, s)` with `r = σ(n-1)` (equivalently `s = τ(n-1)`).
///
/// A 3-cycle through `n - 1` alone is not enough: when `σ` or `τ` fixes
/// `n - 1` the drop is at most two.
pub fn drops_by_three(sigma: &Permutation, tau: &Permutation) -> Result<bool, ContractionError> {
    let n = sigma.degree();
    if n < 2 {
        return Err(ContractionError::DegreeTooSmall {
            degree: n,
            times: 1,
        });
    }
    let pi = sigma.inverse().compose(tau)?;
    let last = n - 1;
    let r = sigma.apply(last);
    if r == last || pi.apply(last) != r {
        return Ok(false);
    }
    let s = pi.apply(r);
    Ok(s != last && s != r && pi.apply(s) == last)
}

/// Whether `σ^-1 τ` has a cycle of length 3 through `n - 1`.
pub fn has_three_cycle_through_last(
    sigma: &Permutation,
    tau: &Permutation,
) -> Result<bool, ContractionError> {
    let pi = sigma.inverse().compose(tau)?;
    let last = (sigma.degree() - 1) as u32;
    let d = pi.cycle_decomposition();
    Ok(d.cycle_of(last).is_some_and(|c| c.len() == 3))
}

/// True iff no non-identity element has a cycle of length `len`. For
/// prime `len` not dividing `|G|` this holds without scanning.
pub fn check_cycle_free(group: &MaterializedGroup, len: usize) -> bool {
    if is_prime(len as u64) && !group.order().is_multiple_of(len) {
        return true;
    }
    !group
        .elements()
        .iter()
        .skip(1)
        .any(|g| g.has_cycle_of_length(len))
}

/// True iff `σ^-1 τ` has no `len`-cycle for any two distinct members.
///
/// For members `r_i g` and `r_j h`, `σ^-1 τ` is conjugate to an element of
/// `r_i^-1 r_j G`, so scanning those sets covers every pair.
pub fn pa_cycle_free(pa: &PermArray, len: usize) -> bool {
    let base = pa.base();
    if pa.cosets() == 1 {
        return check_cycle_free(base, len);
    }
    let inverses: Vec<_> = pa.reps().iter().map(Permutation::inverse).collect();
    for inv in &inverses {
        for r in pa.reps() {
            let pi = inv.then(r);
            for g in base.elements() {
                let x = pi.then(g);
                if !x.is_identity() && x.has_cycle_of_length(len) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionCertificate {
    pub times: usize,
    pub source_hd: usize,
    /// Recomputed exactly on the contracted array.
    pub result_hd: usize,
    pub source_size: usize,
    pub result_size: usize,
    pub duplicates_removed: usize,
    pub cycle3_free: bool,
    pub cycle5_free: bool,
}

impl ContractionCertificate {
    /// The distance guaranteed before looking at the result: three per
    /// contraction, or two per contraction (up to two contractions) when
    /// the source has no 3- and 5-cycles in its quotients.
    pub fn predicted_floor(&self) -> usize {
        let loss = match self.times {
            1 if self.cycle3_free => 2,
            2 if self.cycle3_free && self.cycle5_free => 4,
            t => 3 * t,
        };
        self.source_hd.saturating_sub(loss)
    }
}

impl fmt::Display for ContractionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "source_hd={} result_hd={} size={} cycle3_free={} cycle5_free={}",
            self.source_hd, self.result_hd, self.result_size, self.cycle3_free, self.cycle5_free
        )
    }
}

/// Contracts every member `times` times and certifies the result.
///
/// Members that collide after contraction are kept once; the certificate
/// records how many were lost.
pub fn contract_pa(
    pa: &PermArray,
    times: usize,
) -> Result<(PermArray, ContractionCertificate), ContractionError> {
    if times == 0 || pa.degree() <= times {
        return Err(ContractionError::DegreeTooSmall {
            degree: pa.degree(),
            times,
        });
    }
    let source_hd = pa_hd(pa, Mode::CosetShortcut)?.min_distance;
    let cycle3_free = pa_cycle_free(pa, 3);
    let cycle5_free = pa_cycle_free(pa, 5);

    let source = pa.elements();
    let mut seen = HashSet::with_capacity(source.len());
    let mut contracted = Vec::with_capacity(source.len());
    for s in &source {
        let c = contract_times(s, times)?;
        if seen.insert(c.clone()) {
            contracted.push(c);
        }
    }
    let duplicates_removed = source.len() - contracted.len();
    let result_hd = pairwise_hd(&contracted)?.min_distance;
    let mut result = PermArray::explicit(contracted, result_hd)?;
    result.note = Some(format!(
        "contracted {times} time(s) from a PA of degree {}",
        pa.degree()
    ));
    let cert = ContractionCertificate {
        times,
        source_hd,
        result_hd,
        source_size: source.len(),
        result_size: result.size(),
        duplicates_removed,
        cycle3_free,
        cycle5_free,
    };
    Ok((result, cert))
}
