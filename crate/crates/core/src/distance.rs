//! Minimum-distance computations for groups, coset unions and explicit lists.
//!
//! Hamming distance is invariant under multiplication on either side, so
//! the distance between cosets `a G` and `b G` is the distance from
//! `a^-1 b` to the nearest element of `G`, and a group's distance is the
//! smallest support of a non-identity element. When the base group contains
//! the cyclic shifts, distances to `G` reduce further to one pass over a
//! displacement histogram per coset of the shifts.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::array::PermArray;
use crate::field::{FPoly, FieldError, FieldSpec};
use crate::group::MaterializedGroup;
use crate::permutation::{hamming_capped, PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistanceError {
    #[error("fewer than two permutations; no distance to report")]
    TrivialGroup,
    #[error("malformed permutation array: {0}")]
    MalformedPA(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("the shift x -> x+1 is not in the group")]
    NotASupergroupOfCyclic,
    #[error("polynomial does not permute the field")]
    NotAPermutationPolynomial,
    #[error("polynomials are identical")]
    IdenticalPolynomials,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Pairwise,
    GroupShortcut,
    CosetShortcut,
    CyclicFast,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Pairwise => "pairwise",
            Method::GroupShortcut => "group-shortcut",
            Method::CosetShortcut => "coset-shortcut",
            Method::CyclicFast => "cyclic-fast",
        })
    }
}

/// How `pa_hd` should evaluate a PA.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    ExactPairwise,
    CosetShortcut,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub min_distance: usize,
    /// Element ids (`i < j`) realizing the minimum.
    pub witness: (usize, usize),
    pub method: Method,
    /// Permutation comparisons performed.
    pub comparisons: u64,
}

impl fmt::Display for DistanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hd={} witness={},{} method={}",
            self.min_distance, self.witness.0, self.witness.1, self.method
        )
    }
}

/// Minimum distance of a group, scanning only `hd(e, g)`.
pub fn group_hd(group: &MaterializedGroup) -> Result<DistanceReport, DistanceError> {
    if group.order() < 2 {
        return Err(DistanceError::TrivialGroup);
    }
    let (min_distance, idx) = group
        .elements()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, g)| (g.support_size(), i))
        .min()
        .expect("order >= 2");
    Ok(DistanceReport {
        min_distance,
        witness: (0, idx),
        method: Method::GroupShortcut,
        comparisons: group.order() as u64 - 1,
    })
}

/// Exact minimum over all pairs. Ties go to the smallest `(i, j)`.
pub fn pairwise_hd(elements: &[Permutation]) -> Result<DistanceReport, DistanceError> {
    let count = elements.len();
    if count < 2 {
        return Err(DistanceError::TrivialGroup);
    }
    let n = elements[0].degree();
    if let Some(bad) = elements.iter().find(|p| p.degree() != n) {
        return Err(PermError::DegreeMismatch {
            left: n,
            right: bad.degree(),
        }
        .into());
    }
    let best = (0..count - 1)
        .into_par_iter()
        .map(|i| {
            let a = elements[i].images();
            let mut best = (n + 1, i, i + 1);
            for (j, b) in elements.iter().enumerate().skip(i + 1) {
                // a pair that cannot beat the row minimum is abandoned early
                let d = hamming_capped(a, b.images(), best.0);
                if d < best.0 {
                    best = (d, i, j);
                }
            }
            best
        })
        .min()
        .expect("count >= 2");
    Ok(DistanceReport {
        min_distance: best.0,
        witness: (best.1, best.2),
        method: Method::Pairwise,
        comparisons: (count as u64 * (count as u64 - 1)) / 2,
    })
}

/// One-pass distance from `π` to the cyclic shifts `x -> x + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplacementHistogram {
    /// `d[j]` is the distance from `π` to the shift by `j`.
    pub d: Vec<u32>,
}

impl DisplacementHistogram {
    /// Smallest entry and the first shift attaining it.
    pub fn best(&self) -> (usize, usize) {
        let (j, &v) = self
            .d
            .iter()
            .enumerate()
            .min_by_key(|&(j, &v)| (v, j))
            .expect("nonempty");
        (v as usize, j)
    }
}

pub fn hd_to_cyclic(pi: &Permutation) -> (usize, DisplacementHistogram) {
    let n = pi.degree();
    let mut d = vec![n as u32; n];
    for (m, &v) in pi.images().iter().enumerate() {
        d[(v as usize + n - m) % n] -= 1;
    }
    let hist = DisplacementHistogram { d };
    (hist.best().0, hist)
}

/// Distance from `π` to the coset `r C_n` given `rinv = r^-1`, as
/// (distance, best shift). `buf` is scratch space.
fn coset_cyclic_distance(rinv: &[u32], pi: &[u32], buf: &mut Vec<u32>) -> (usize, usize) {
    let n = pi.len();
    buf.clear();
    buf.resize(n, n as u32);
    // (r^-1 π)(m) = π(r^-1(m))
    for (m, &x) in rinv.iter().enumerate() {
        let v = pi[x as usize] as usize;
        buf[(v + n - m) % n] -= 1;
    }
    let mut best = (n, 0);
    for (j, &v) in buf.iter().enumerate() {
        if (v as usize) < best.0 {
            best = (v as usize, j);
        }
    }
    best
}

/// Distance from `π` to the union of `r C_n` over `reps`.
pub fn hd_to_cyclic_cosets(pi: &Permutation, reps: &[Permutation]) -> Result<usize, DistanceError> {
    if reps.is_empty() {
        return Err(DistanceError::MalformedPA("no representatives".into()));
    }
    let mut buf = Vec::new();
    let mut best = usize::MAX;
    for r in reps {
        if r.degree() != pi.degree() {
            return Err(PermError::DegreeMismatch {
                left: pi.degree(),
                right: r.degree(),
            }
            .into());
        }
        let rinv = r.inverse();
        best = best.min(coset_cyclic_distance(rinv.images(), pi.images(), &mut buf).0);
    }
    Ok(best)
}

/// Representatives `σ_t` with `G` the disjoint union of `σ_t C_n`.
pub fn cyclic_coset_decomposition(
    group: &MaterializedGroup,
) -> Result<Vec<Permutation>, DistanceError> {
    let n = group.degree();
    if !group.contains(&Permutation::rotation(n, 1)) {
        return Err(DistanceError::NotASupergroupOfCyclic);
    }
    let rotations: Vec<_> = (0..n).map(|j| Permutation::rotation(n, j)).collect();
    let mut covered = vec![false; group.order()];
    let mut reps = Vec::with_capacity(group.order() / n);
    for (i, s) in group.elements().iter().enumerate() {
        if covered[i] {
            continue;
        }
        for rot in &rotations {
            let idx = group
                .index_of(&s.then(rot))
                .expect("closed under the shift");
            covered[idx] = true;
        }
        reps.push(s.clone());
    }
    Ok(reps)
}

/// Distances from arbitrary permutations to a fixed group, using the cyclic
/// decomposition when the group contains the shifts.
pub struct GroupDistance<'a> {
    group: &'a MaterializedGroup,
    // inverses of the C_n coset representatives, when applicable
    cyclic: Option<Vec<Permutation>>,
}

impl<'a> GroupDistance<'a> {
    pub fn new(group: &'a MaterializedGroup) -> Self {
        let n = group.degree();
        let cyclic = if group.order() > n {
            cyclic_coset_decomposition(group)
                .ok()
                .map(|reps| reps.iter().map(Permutation::inverse).collect())
        } else {
            None
        };
        GroupDistance { group, cyclic }
    }

    /// Plain scans only.
    pub fn without_fast_path(group: &'a MaterializedGroup) -> Self {
        GroupDistance {
            group,
            cyclic: None,
        }
    }

    pub fn uses_cyclic(&self) -> bool {
        self.cyclic.is_some()
    }

    /// `min_g hd(α, g)` and the index of the first minimizing `g` in the
    /// scan order.
    pub fn nearest(&self, alpha: &Permutation) -> (usize, usize) {
        match &self.cyclic {
            Some(inverses) => {
                let mut buf = Vec::new();
                let mut best = (usize::MAX, 0, 0);
                for (t, sinv) in inverses.iter().enumerate() {
                    let (d, j) = coset_cyclic_distance(sinv.images(), alpha.images(), &mut buf);
                    if d < best.0 {
                        best = (d, t, j);
                    }
                }
                let (d, t, j) = best;
                let sigma = inverses[t].inverse();
                let g = sigma.then(&Permutation::rotation(alpha.degree(), j));
                (d, self.group.index_of(&g).expect("member of the group"))
            }
            None => {
                let a = alpha.images();
                let mut best = (a.len() + 1, 0);
                for (i, g) in self.group.elements().iter().enumerate() {
                    let d = hamming_capped(a, g.images(), best.0);
                    if d < best.0 {
                        best = (d, i);
                        if d == 0 {
                            break;
                        }
                    }
                }
                best
            }
        }
    }

    /// `Some(min_g hd(α, g))` if every element is at distance `>= floor`,
    /// `None` as soon as one is closer.
    pub fn distance_at_least(&self, alpha: &Permutation, floor: usize) -> Option<usize> {
        match &self.cyclic {
            Some(inverses) => {
                let mut buf = Vec::new();
                let mut best = usize::MAX;
                for sinv in inverses {
                    let d = coset_cyclic_distance(sinv.images(), alpha.images(), &mut buf).0;
                    if d < floor {
                        return None;
                    }
                    best = best.min(d);
                }
                Some(best)
            }
            None => {
                let a = alpha.images();
                let mut best = a.len();
                for g in self.group.elements() {
                    let d = hamming_capped(a, g.images(), best);
                    if d < floor {
                        return None;
                    }
                    best = best.min(d);
                }
                Some(best)
            }
        }
    }
}

/// Minimum distance of a PA, either by brute force or through its coset
/// structure. Both modes report the same distance.
pub fn pa_hd(pa: &PermArray, mode: Mode) -> Result<DistanceReport, DistanceError> {
    if pa.size() < 2 {
        return Err(DistanceError::TrivialGroup);
    }
    match mode {
        Mode::ExactPairwise => pairwise_hd(&pa.elements()),
        Mode::CosetShortcut => coset_shortcut(pa),
    }
}

fn coset_shortcut(pa: &PermArray) -> Result<DistanceReport, DistanceError> {
    let base = pa.base().as_ref();
    let order = base.order();
    let reps = pa.reps();
    let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
    let mut comparisons = 0u64;
    if order > 1 {
        let r = group_hd(base)?;
        comparisons += r.comparisons;
        candidates.push((r.min_distance, r.witness.0, r.witness.1));
    }
    if reps.len() == 1 {
        let (d, i, j) = candidates[0];
        return Ok(DistanceReport {
            min_distance: d,
            witness: (i, j),
            method: Method::GroupShortcut,
            comparisons,
        });
    }
    let oracle = GroupDistance::new(base);
    let inverses: Vec<_> = reps.iter().map(Permutation::inverse).collect();
    let pairs: Vec<(usize, usize)> = (0..reps.len())
        .flat_map(|i| (i + 1..reps.len()).map(move |j| (i, j)))
        .collect();
    let cross: Vec<(usize, usize, usize)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let alpha = inverses[i].then(&reps[j]);
            let (d, g) = oracle.nearest(&alpha);
            // hd(r_i g, r_j) = hd(g, r_i^-1 r_j)
            (d, i * order + g, j * order)
        })
        .collect();
    if let Some(&(_, a, b)) = cross.iter().find(|c| c.0 == 0) {
        return Err(DistanceError::MalformedPA(format!(
            "representatives {} and {} share a coset",
            a / order,
            b / order
        )));
    }
    comparisons += pairs.len() as u64
        * if oracle.uses_cyclic() {
            (order / base.degree()) as u64
        } else {
            order as u64
        };
    candidates.extend(cross);
    let (d, i, j) = candidates.into_iter().min().expect("at least one pair");
    Ok(DistanceReport {
        min_distance: d,
        witness: (i, j),
        method: if oracle.uses_cyclic() {
            Method::CyclicFast
        } else {
            Method::CosetShortcut
        },
        comparisons,
    })
}

/// `n - r(f - g)` for two distinct permutation polynomials.
pub fn poly_hd(spec: &FieldSpec, f: &FPoly, g: &FPoly) -> Result<usize, DistanceError> {
    if f == g {
        return Err(DistanceError::IdenticalPolynomials);
    }
    for poly in [f, g] {
        let mut seen = vec![false; spec.order() as usize];
        for x in spec.elements() {
            let y = spec.eval(poly, x).index() as usize;
            if std::mem::replace(&mut seen[y], true) {
                return Err(DistanceError::NotAPermutationPolynomial);
            }
        }
    }
    let diff = spec.poly_sub(f, g);
    Ok(spec.order() as usize - spec.count_roots(&diff)?)
}
