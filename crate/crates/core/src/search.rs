//! Randomized coset search and the Gilbert–Varshamov baseline.
//!
//! The search grows a PA as a union of cosets `π G` of a base group. A
//! random `π` is accepted when every existing coset is at distance at least
//! `d` from it and, with `require_tight`, at least one is at distance
//! exactly `d`. Distances to a coset `r G` are distances from `r^-1 π` to
//! `G`, so only representatives are ever stored.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::array::PermArray;
use crate::distance::{group_hd, pa_hd, pairwise_hd, DistanceError, DistanceReport, GroupDistance, Mode};
use crate::group::MaterializedGroup;
use crate::permutation::Permutation;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("need 2 <= d <= n, got n={n} d={d}")]
    BadRange { n: usize, d: usize },
    #[error("base group has distance {group_hd}, below the target {d}")]
    BaseTooWeak { group_hd: usize, d: usize },
    #[error("no coset accepted after {tried} candidates")]
    Exhausted { tried: u64, state: Box<PermArray> },
    #[error("resume array rejected: {0}")]
    ResumeInvalid(String),
    #[error("claim d={claimed} failed: {report}")]
    ClaimFailed {
        claimed: usize,
        report: DistanceReport,
    },
    #[error("coset shortcut ({shortcut}) and pairwise scan ({pairwise}) disagree")]
    MethodsDisagree { shortcut: usize, pairwise: usize },
    #[error(transparent)]
    Distance(#[from] DistanceError),
}

/// `D_k`, the number of fixed-point-free permutations of `k` symbols.
pub fn derangements(k: usize) -> BigUint {
    let (mut prev, mut cur) = (BigUint::one(), BigUint::zero());
    if k == 0 {
        return prev;
    }
    for i in 2..=k {
        let next = BigUint::from(i - 1) * (&cur + &prev);
        prev = cur;
        cur = next;
    }
    cur
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GvResult {
    pub n: usize,
    pub d: usize,
    /// Permutations within distance `d - 1` of a fixed one.
    pub volume: BigUint,
    /// `floor(n! / volume)`.
    pub bound: BigUint,
}

/// The Gilbert–Varshamov lower bound `n! / V(n, d-1)`, exactly.
pub fn gv_bound(n: usize, d: usize) -> Result<GvResult, SearchError> {
    if d < 2 || d > n {
        return Err(SearchError::BadRange { n, d });
    }
    let volume = (0..d).fold(BigUint::zero(), |acc, k| acc + binomial(n, k) * derangements(k));
    let bound = factorial(n) / &volume;
    Ok(GvResult {
        n,
        d,
        volume,
        bound,
    })
}

pub type SearchRng = ChaCha20Rng;

pub fn seeded_rng(seed: u64) -> SearchRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// A uniformly random permutation of `n` symbols.
pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    Permutation::from_images_unchecked(images)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub target_distance: usize,
    pub seed: u64,
    /// Consecutive rejections that end the run.
    pub max_candidates: u64,
    /// Also require some coset at distance exactly `d`.
    pub require_tight: bool,
    /// Candidates between progress callbacks; 0 disables them.
    pub checkpoint_every: u64,
    /// Stop once this many cosets (identity coset included) are held.
    pub max_cosets: Option<usize>,
    /// Evaluate candidates in parallel batches. The result does not depend
    /// on this setting.
    pub parallel: bool,
}

impl SearchConfig {
    pub fn new(target_distance: usize, seed: u64) -> Self {
        SearchConfig {
            target_distance,
            seed,
            max_candidates: 1_000_000,
            require_tight: true,
            checkpoint_every: 0,
            max_cosets: None,
            parallel: false,
        }
    }
}

/// Snapshot handed to the progress callback.
#[derive(Debug)]
pub struct SearchProgress<'a> {
    pub reps: &'a [Permutation],
    pub cosets: usize,
    pub size: usize,
    pub tried: u64,
}

/// Live state of a search.
pub struct SearchState {
    base: Arc<MaterializedGroup>,
    reps: Vec<Permutation>,
    inverses: Vec<Permutation>,
    candidates_tried: u64,
    rejections_in_a_row: u64,
    rng: SearchRng,
}

/// How a candidate fared against a range of cosets.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Rejected,
    Passed { tight: bool },
}

impl SearchState {
    fn evaluate(&self, oracle: &GroupDistance<'_>, pi: &Permutation, from: usize, d: usize) -> Verdict {
        let mut tight = false;
        // latest cosets first: they tend to reject soonest
        for inv in self.inverses[from..].iter().rev() {
            match oracle.distance_at_least(&inv.then(pi), d) {
                None => return Verdict::Rejected,
                Some(x) => tight |= x == d,
            }
        }
        Verdict::Passed { tight }
    }

    fn push(&mut self, rep: Permutation) {
        self.inverses.push(rep.inverse());
        self.reps.push(rep);
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn candidates_tried(&self) -> u64 {
        self.candidates_tried
    }

    fn to_perm_array(&self, cfg: &SearchConfig) -> PermArray {
        let mut pa = PermArray::from_parts_unchecked(
            self.base.clone(),
            self.reps.clone(),
            cfg.target_distance,
        );
        pa.seed = Some(cfg.seed);
        pa
    }

    fn progress(&self) -> SearchProgress<'_> {
        SearchProgress {
            reps: &self.reps,
            cosets: self.reps.len(),
            size: self.reps.len() * self.base.order(),
            tried: self.candidates_tried,
        }
    }
}

const BATCH_PER_THREAD: usize = 32;

/// Grows a union of cosets of `base` with minimum distance
/// `cfg.target_distance`, starting from `resume` when given.
pub fn coset_search(
    base: Arc<MaterializedGroup>,
    cfg: &SearchConfig,
    resume: Option<&PermArray>,
    mut on_checkpoint: impl FnMut(&SearchProgress<'_>),
) -> Result<PermArray, SearchError> {
    let n = base.degree();
    let d = cfg.target_distance;
    if d < 2 || d > n {
        return Err(SearchError::BadRange { n, d });
    }
    let base_hd = match group_hd(&base) {
        Ok(r) => r.min_distance,
        Err(DistanceError::TrivialGroup) => n,
        Err(e) => return Err(e.into()),
    };
    if base_hd < d {
        return Err(SearchError::BaseTooWeak {
            group_hd: base_hd,
            d,
        });
    }

    let start_reps = match resume {
        Some(pa) => {
            if pa.base().descriptor() != base.descriptor() {
                return Err(SearchError::ResumeInvalid(format!(
                    "base {} differs from {}",
                    pa.base().descriptor(),
                    base.descriptor()
                )));
            }
            if pa.size() > 1 {
                let got = pa_hd(pa, Mode::CosetShortcut)?.min_distance;
                if got < d {
                    return Err(SearchError::ResumeInvalid(format!(
                        "distance {got} is below {d}"
                    )));
                }
            }
            pa.reps().to_vec()
        }
        None => vec![Permutation::identity(n)],
    };

    let mut state = SearchState {
        base: base.clone(),
        reps: Vec::new(),
        inverses: Vec::new(),
        candidates_tried: 0,
        rejections_in_a_row: 0,
        rng: seeded_rng(cfg.seed),
    };
    for r in start_reps {
        state.push(r);
    }
    let initial = state.reps.len();
    let oracle = GroupDistance::new(&base);
    let batch = if cfg.parallel {
        rayon::current_num_threads() * BATCH_PER_THREAD
    } else {
        1
    };

    let done = |s: &SearchState| {
        s.rejections_in_a_row >= cfg.max_candidates
            || cfg.max_cosets.is_some_and(|m| s.reps.len() >= m)
    };

    while !done(&state) {
        let candidates: Vec<Permutation> = (0..batch)
            .map(|_| random_permutation(&mut state.rng, n))
            .collect();
        let snapshot = state.reps.len();
        let verdicts: Vec<Verdict> = if batch > 1 {
            candidates
                .par_iter()
                .map(|pi| state.evaluate(&oracle, pi, 0, d))
                .collect()
        } else {
            vec![state.evaluate(&oracle, &candidates[0], 0, d)]
        };
        // commit in draw order; later candidates are re-checked against
        // cosets accepted earlier in the same batch
        for (pi, verdict) in candidates.into_iter().zip(verdicts) {
            if done(&state) {
                break;
            }
            state.candidates_tried += 1;
            let verdict = match verdict {
                Verdict::Passed { tight } if state.reps.len() > snapshot => {
                    match state.evaluate(&oracle, &pi, snapshot, d) {
                        Verdict::Passed { tight: t2 } => Verdict::Passed { tight: tight || t2 },
                        Verdict::Rejected => Verdict::Rejected,
                    }
                }
                v => v,
            };
            match verdict {
                Verdict::Passed { tight } if tight || !cfg.require_tight => {
                    state.push(pi);
                    state.rejections_in_a_row = 0;
                }
                _ => state.rejections_in_a_row += 1,
            }
            if cfg.checkpoint_every > 0 && state.candidates_tried.is_multiple_of(cfg.checkpoint_every) {
                on_checkpoint(&state.progress());
            }
        }
    }
    on_checkpoint(&state.progress());

    let pa = state.to_perm_array(cfg);
    if state.reps.len() == initial && state.rejections_in_a_row >= cfg.max_candidates {
        return Err(SearchError::Exhausted {
            tried: state.candidates_tried,
            state: Box::new(pa),
        });
    }
    Ok(pa)
}

/// Independent check of a PA's claimed distance: the coset shortcut always,
/// plus a full pairwise scan when the PA has at most `pairwise_cap` members.
pub fn verify_search_output(pa: &PermArray, pairwise_cap: usize) -> Result<DistanceReport, SearchError> {
    let shortcut = pa_hd(pa, Mode::CosetShortcut)?;
    let report = if pa.size() <= pairwise_cap {
        let exact = pairwise_hd(&pa.elements())?;
        if exact.min_distance != shortcut.min_distance {
            return Err(SearchError::MethodsDisagree {
                shortcut: shortcut.min_distance,
                pairwise: exact.min_distance,
            });
        }
        exact
    } else {
        shortcut
    };
    if report.min_distance < pa.claimed_d() {
        return Err(SearchError::ClaimFailed {
            claimed: pa.claimed_d(),
            report,
        });
    }
    Ok(report)
}
