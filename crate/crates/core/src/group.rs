//! Explicit permutation groups: the affine and projective (semi)linear groups
//! over GF(q), cyclic groups, and closures of supplied generators.
//!
//! Field kinds label field elements by their [`FieldElement`] index. The
//! projective kinds act on `q + 1` symbols with the point at infinity as
//! the last label, `q`.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::permutation::{PermError, Permutation};

/// Closure stops with an error past this many elements unless told otherwise.
pub const DEFAULT_CLOSURE_CAP: usize = 2_000_000;

const M11_GENS: &str = include_str!("../data/m11.gens");
const M12_GENS: &str = include_str!("../data/m12.gens");

#[derive(Debug, Error)]
pub enum GroupError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("closure exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error("no generators supplied")]
    NoGenerators,
    #[error("cannot parse group descriptor `{0}`")]
    Parse(String),
    #[error("generator file {path}: {reason}")]
    GeneratorFile { path: String, reason: String },
    #[error("degree must be at least 1")]
    EmptyDegree,
}

/// Which family a group belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Agl1,
    Pgl2,
    AGammaL1,
    PGammaL2,
    Cyclic,
    Trivial,
    FromGenerators,
}

/// The textual recipe for a group, as written in PA files and on the
/// command line, e.g. `PGL2 q=19` or `GENS file=m12.gens`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseSpec {
    Agl1 { q: u64 },
    Pgl2 { q: u64 },
    AGammaL1 { q: u64 },
    PGammaL2 { q: u64 },
    Cyclic { n: usize },
    /// The group `{e}` on `n` symbols; a PA over it is an explicit listing.
    Trivial { n: usize },
    Gens { file: String, degree: Option<usize> },
}

impl fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSpec::Agl1 { q } => write!(f, "AGL1 q={q}"),
            BaseSpec::Pgl2 { q } => write!(f, "PGL2 q={q}"),
            BaseSpec::AGammaL1 { q } => write!(f, "AGAMMAL1 q={q}"),
            BaseSpec::PGammaL2 { q } => write!(f, "PGAMMAL2 q={q}"),
            BaseSpec::Cyclic { n } => write!(f, "CYCLIC n={n}"),
            BaseSpec::Trivial { n } => write!(f, "TRIVIAL n={n}"),
            BaseSpec::Gens { file, degree: None } => write!(f, "GENS file={file}"),
            BaseSpec::Gens {
                file,
                degree: Some(d),
            } => write!(f, "GENS file={file} degree={d}"),
        }
    }
}

impl FromStr for BaseSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::Parse(s.to_string());
        let mut words = s.split_whitespace();
        let kind = words.next().ok_or_else(bad)?;
        let mut params = Vec::new();
        for w in words {
            let (key, value) = w.split_once('=').ok_or_else(bad)?;
            params.push((key, value));
        }
        let num = |key: &str| -> Result<u64, GroupError> {
            match params.as_slice() {
                [(k, v)] if *k == key => v.parse().map_err(|_| bad()),
                _ => Err(bad()),
            }
        };
        let spec = match kind {
            "AGL1" => BaseSpec::Agl1 { q: num("q")? },
            "PGL2" => BaseSpec::Pgl2 { q: num("q")? },
            "AGAMMAL1" => BaseSpec::AGammaL1 { q: num("q")? },
            "PGAMMAL2" => BaseSpec::PGammaL2 { q: num("q")? },
            "CYCLIC" => BaseSpec::Cyclic {
                n: num("n")? as usize,
            },
            "TRIVIAL" => BaseSpec::Trivial {
                n: num("n")? as usize,
            },
            "GENS" => match params.as_slice() {
                [("file", f)] => BaseSpec::Gens {
                    file: f.to_string(),
                    degree: None,
                },
                [("file", f), ("degree", d)] => BaseSpec::Gens {
                    file: f.to_string(),
                    degree: Some(d.parse().map_err(|_| bad())?),
                },
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

impl BaseSpec {
    /// Turns the recipe into a concrete descriptor. Generator files are
    /// looked up relative to `dir`, then among the shipped generator sets.
    pub fn resolve(&self, dir: Option<&Path>) -> Result<GroupDescriptor, GroupError> {
        Ok(match *self {
            BaseSpec::Agl1 { q } => GroupDescriptor::Agl1(FieldSpec::from_order(q)?),
            BaseSpec::Pgl2 { q } => GroupDescriptor::Pgl2(FieldSpec::from_order(q)?),
            BaseSpec::AGammaL1 { q } => GroupDescriptor::AGammaL1(FieldSpec::from_order(q)?),
            BaseSpec::PGammaL2 { q } => GroupDescriptor::PGammaL2(FieldSpec::from_order(q)?),
            BaseSpec::Cyclic { n } => GroupDescriptor::Cyclic(n),
            BaseSpec::Trivial { n } => GroupDescriptor::Trivial(n),
            BaseSpec::Gens { ref file, degree } => {
                let text = read_generator_source(file, dir)?;
                let mut generators = parse_generators(&text).map_err(|reason| {
                    GroupError::GeneratorFile {
                        path: file.clone(),
                        reason,
                    }
                })?;
                if let Some(d) = degree {
                    generators = generators
                        .iter()
                        .map(|g| g.embed(d))
                        .collect::<Result<_, _>>()?;
                }
                GroupDescriptor::FromGenerators {
                    label: file.clone(),
                    degree,
                    generators,
                }
            }
        })
    }
}

fn read_generator_source(file: &str, dir: Option<&Path>) -> Result<String, GroupError> {
    let path = match dir {
        Some(d) => d.join(file),
        None => PathBuf::from(file),
    };
    match std::fs::read_to_string(&path) {
        Ok(text) => Ok(text),
        Err(e) => builtin_generators(file)
            .map(str::to_string)
            .ok_or_else(|| GroupError::GeneratorFile {
                path: path.display().to_string(),
                reason: e.to_string(),
            }),
    }
}

/// Generator sets shipped with the crate, by file name.
pub fn builtin_generators(name: &str) -> Option<&'static str> {
    match name {
        "m11.gens" => Some(M11_GENS),
        "m12.gens" => Some(M12_GENS),
        _ => None,
    }
}

/// One permutation per line; `#` starts a comment.
pub fn parse_generators(text: &str) -> Result<Vec<Permutation>, String> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let g: Permutation = line.parse().map_err(|e| format!("line {}: {e}", no + 1))?;
        if let Some(first) = out.first() {
            let first: &Permutation = first;
            if first.degree() != g.degree() {
                return Err(format!(
                    "line {}: degree {} differs from {}",
                    no + 1,
                    g.degree(),
                    first.degree()
                ));
            }
        }
        out.push(g);
    }
    if out.is_empty() {
        return Err("no generators".into());
    }
    Ok(out)
}

/// A concrete group recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescriptor {
    Agl1(FieldSpec),
    Pgl2(FieldSpec),
    AGammaL1(FieldSpec),
    PGammaL2(FieldSpec),
    Cyclic(usize),
    Trivial(usize),
    FromGenerators {
        label: String,
        degree: Option<usize>,
        generators: Vec<Permutation>,
    },
}

impl GroupDescriptor {
    pub fn kind(&self) -> GroupKind {
        match self {
            GroupDescriptor::Agl1(_) => GroupKind::Agl1,
            GroupDescriptor::Pgl2(_) => GroupKind::Pgl2,
            GroupDescriptor::AGammaL1(_) => GroupKind::AGammaL1,
            GroupDescriptor::PGammaL2(_) => GroupKind::PGammaL2,
            GroupDescriptor::Cyclic(_) => GroupKind::Cyclic,
            GroupDescriptor::Trivial(_) => GroupKind::Trivial,
            GroupDescriptor::FromGenerators { .. } => GroupKind::FromGenerators,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            GroupDescriptor::Agl1(f) | GroupDescriptor::AGammaL1(f) => f.order() as usize,
            GroupDescriptor::Pgl2(f) | GroupDescriptor::PGammaL2(f) => f.order() as usize + 1,
            GroupDescriptor::Cyclic(n) | GroupDescriptor::Trivial(n) => *n,
            GroupDescriptor::FromGenerators { generators, .. } => {
                generators.first().map_or(0, |g| g.degree())
            }
        }
    }

    pub fn field(&self) -> Option<&FieldSpec> {
        match self {
            GroupDescriptor::Agl1(f)
            | GroupDescriptor::Pgl2(f)
            | GroupDescriptor::AGammaL1(f)
            | GroupDescriptor::PGammaL2(f) => Some(f),
            _ => None,
        }
    }

    /// Order predicted by the closed formulas; `None` for generator sets.
    pub fn expected_order(&self) -> Option<u64> {
        let qf = |f: &FieldSpec| f.order() as u64;
        Some(match self {
            GroupDescriptor::Agl1(f) => qf(f) * (qf(f) - 1),
            GroupDescriptor::AGammaL1(f) => f.degree() as u64 * qf(f) * (qf(f) - 1),
            GroupDescriptor::Pgl2(f) => (qf(f) + 1) * qf(f) * (qf(f) - 1),
            GroupDescriptor::PGammaL2(f) => {
                f.degree() as u64 * (qf(f) + 1) * qf(f) * (qf(f) - 1)
            }
            GroupDescriptor::Cyclic(n) => *n as u64,
            GroupDescriptor::Trivial(_) => 1,
            GroupDescriptor::FromGenerators { .. } => return None,
        })
    }

    pub fn base_spec(&self) -> BaseSpec {
        let q = |f: &FieldSpec| f.order() as u64;
        match self {
            GroupDescriptor::Agl1(f) => BaseSpec::Agl1 { q: q(f) },
            GroupDescriptor::Pgl2(f) => BaseSpec::Pgl2 { q: q(f) },
            GroupDescriptor::AGammaL1(f) => BaseSpec::AGammaL1 { q: q(f) },
            GroupDescriptor::PGammaL2(f) => BaseSpec::PGammaL2 { q: q(f) },
            GroupDescriptor::Cyclic(n) => BaseSpec::Cyclic { n: *n },
            GroupDescriptor::Trivial(n) => BaseSpec::Trivial { n: *n },
            GroupDescriptor::FromGenerators { label, degree, .. } => BaseSpec::Gens {
                file: label.clone(),
                degree: *degree,
            },
        }
    }

    pub fn is_projective(&self) -> bool {
        matches!(self, GroupDescriptor::Pgl2(_) | GroupDescriptor::PGammaL2(_))
    }

    pub fn materialize(&self) -> Result<MaterializedGroup, GroupError> {
        self.materialize_with_cap(DEFAULT_CLOSURE_CAP)
    }

    pub fn materialize_with_cap(&self, cap: usize) -> Result<MaterializedGroup, GroupError> {
        match self {
            GroupDescriptor::Agl1(f) => Ok(gen_agl1(f)),
            GroupDescriptor::Pgl2(f) => Ok(gen_pgl2(f)),
            GroupDescriptor::AGammaL1(f) => Ok(gen_agammal1(f)),
            GroupDescriptor::PGammaL2(f) => Ok(gen_pgammal2(f)),
            GroupDescriptor::Cyclic(n) => gen_cyclic(*n),
            GroupDescriptor::Trivial(n) => {
                if *n == 0 {
                    return Err(GroupError::EmptyDegree);
                }
                Ok(MaterializedGroup::from_elements(
                    self.clone(),
                    vec![Permutation::identity(*n)],
                ))
            }
            GroupDescriptor::FromGenerators { generators, .. } => {
                let mut g = closure_from_generators(generators, cap)?;
                g.descriptor = self.clone();
                Ok(g)
            }
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.base_spec().fmt(f)
    }
}

/// A group listed element by element, identity first.
#[derive(Debug, Clone)]
pub struct MaterializedGroup {
    descriptor: GroupDescriptor,
    elements: Vec<Permutation>,
    // element indices ordered by permutation, for membership queries
    sorted: Vec<u32>,
}

impl MaterializedGroup {
    fn from_elements(descriptor: GroupDescriptor, elements: Vec<Permutation>) -> Self {
        debug_assert!(elements[0].is_identity());
        let mut sorted: Vec<u32> = (0..elements.len() as u32).collect();
        sorted.sort_unstable_by(|&a, &b| elements[a as usize].cmp(&elements[b as usize]));
        debug_assert!(sorted
            .windows(2)
            .all(|w| elements[w[0] as usize] != elements[w[1] as usize]));
        MaterializedGroup {
            descriptor,
            elements,
            sorted,
        }
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.sorted
            .binary_search_by(|&i| self.elements[i as usize].cmp(p))
            .ok()
            .map(|pos| self.sorted[pos] as usize)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    /// Every element extended to fix the symbols `degree..n`.
    pub fn embed(&self, n: usize) -> Result<MaterializedGroup, GroupError> {
        let elements = self
            .elements
            .iter()
            .map(|g| g.embed(n))
            .collect::<Result<Vec<_>, _>>()?;
        let descriptor = match &self.descriptor {
            GroupDescriptor::FromGenerators {
                label, generators, ..
            } => GroupDescriptor::FromGenerators {
                label: label.clone(),
                degree: Some(n),
                generators: generators
                    .iter()
                    .map(|g| g.embed(n))
                    .collect::<Result<_, _>>()?,
            },
            other => other.clone(),
        };
        Ok(MaterializedGroup::from_elements(descriptor, elements))
    }
}

/// The map `x -> a * x^(p^i) + b` on the field labels.
pub fn poly_to_perm(
    spec: &FieldSpec,
    a: FieldElement,
    b: FieldElement,
    i: u32,
) -> Result<Permutation, GroupError> {
    if a.is_zero() {
        return Err(GroupError::ZeroLeadingCoefficient);
    }
    let frob = frobenius_table(spec, i)?;
    Ok(affine_perm(spec, &frob, a, b))
}

fn frobenius_table(spec: &FieldSpec, i: u32) -> Result<Vec<FieldElement>, FieldError> {
    spec.elements().map(|x| spec.frobenius(x, i)).collect()
}

fn affine_perm(
    spec: &FieldSpec,
    frob: &[FieldElement],
    a: FieldElement,
    b: FieldElement,
) -> Permutation {
    Permutation::from_images_unchecked(
        frob.iter()
            .map(|&y| spec.add(spec.mul(a, y), b).index())
            .collect(),
    )
}

fn semilinear_affine(spec: &FieldSpec, twists: u32, descriptor: GroupDescriptor) -> MaterializedGroup {
    let n = spec.order() as usize;
    let mut elements = Vec::with_capacity(twists as usize * n * (n - 1));
    for i in 0..twists {
        let frob = frobenius_table(spec, i).expect("i < k");
        for a in spec.elements().skip(1) {
            for b in spec.elements() {
                elements.push(affine_perm(spec, &frob, a, b));
            }
        }
    }
    MaterializedGroup::from_elements(descriptor, elements)
}

/// AGL(1, q): all `x -> ax + b`, `a != 0`.
pub fn gen_agl1(spec: &FieldSpec) -> MaterializedGroup {
    semilinear_affine(spec, 1, GroupDescriptor::Agl1(spec.clone()))
}

/// AΓL(1, q): all `x -> a x^(p^i) + b`, `a != 0`, `0 <= i < k`.
pub fn gen_agammal1(spec: &FieldSpec) -> MaterializedGroup {
    semilinear_affine(spec, spec.degree(), GroupDescriptor::AGammaL1(spec.clone()))
}

/// Image of a point under `(a y + b) / (c y + d)` where `y` is the already
/// twisted input; `None` is the point at infinity.
fn mobius(
    spec: &FieldSpec,
    [a, b, c, d]: [FieldElement; 4],
    y: Option<FieldElement>,
) -> Option<FieldElement> {
    match y {
        Some(y) => {
            let den = spec.add(spec.mul(c, y), d);
            let num = spec.add(spec.mul(a, y), b);
            if den.is_zero() {
                debug_assert!(!num.is_zero(), "ad - bc != 0");
                None
            } else {
                Some(spec.mul(num, spec.inv(den).expect("nonzero")))
            }
        }
        None if !c.is_zero() => Some(spec.mul(a, spec.inv(c).expect("nonzero"))),
        None => None,
    }
}

/// Projectively distinct `(a, b, c, d)` with `ad != bc`, normalized so the
/// first nonzero of `(c, a)` is one. The identity comes first.
fn pgl_coefficients(spec: &FieldSpec) -> Vec<[FieldElement; 4]> {
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    let mut out = Vec::new();
    for d in spec.elements().skip(1) {
        for b in spec.elements() {
            out.push([one, b, zero, d]);
        }
    }
    for a in spec.elements() {
        for b in spec.elements() {
            for d in spec.elements() {
                if spec.mul(a, d) != b {
                    out.push([a, b, one, d]);
                }
            }
        }
    }
    out
}

fn semilinear_projective(
    spec: &FieldSpec,
    twists: u32,
    descriptor: GroupDescriptor,
) -> MaterializedGroup {
    let q = spec.order();
    let coeffs = pgl_coefficients(spec);
    let mut elements = Vec::with_capacity(twists as usize * coeffs.len());
    for i in 0..twists {
        let frob = frobenius_table(spec, i).expect("i < k");
        for &m in &coeffs {
            let images = (0..=q)
                .map(|x| {
                    // infinity is fixed by the Frobenius twist
                    let y = (x < q).then(|| frob[x as usize]);
                    mobius(spec, m, y).map_or(q, |v| v.index())
                })
                .collect();
            elements.push(Permutation::from_images_unchecked(images));
        }
    }
    MaterializedGroup::from_elements(descriptor, elements)
}

/// PGL(2, q) on `q + 1` symbols, infinity last.
pub fn gen_pgl2(spec: &FieldSpec) -> MaterializedGroup {
    semilinear_projective(spec, 1, GroupDescriptor::Pgl2(spec.clone()))
}

/// PΓL(2, q) on `q + 1` symbols, infinity last.
pub fn gen_pgammal2(spec: &FieldSpec) -> MaterializedGroup {
    semilinear_projective(spec, spec.degree(), GroupDescriptor::PGammaL2(spec.clone()))
}

/// The rotations `x -> x + j mod n`, with element `j` the shift by `j`.
pub fn gen_cyclic(n: usize) -> Result<MaterializedGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::EmptyDegree);
    }
    Ok(MaterializedGroup::from_elements(
        GroupDescriptor::Cyclic(n),
        (0..n).map(|j| Permutation::rotation(n, j)).collect(),
    ))
}

/// Breadth-first closure of `gens` under composition.
pub fn closure_from_generators(
    gens: &[Permutation],
    cap: usize,
) -> Result<MaterializedGroup, GroupError> {
    let first = gens.first().ok_or(GroupError::NoGenerators)?;
    let n = first.degree();
    if n == 0 {
        return Err(GroupError::EmptyDegree);
    }
    for g in gens {
        if g.degree() != n {
            return Err(PermError::DegreeMismatch {
                left: n,
                right: g.degree(),
            }
            .into());
        }
    }
    let e = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([e.clone()]);
    let mut elements = vec![e];
    let mut cursor = 0;
    while cursor < elements.len() {
        let x = elements[cursor].clone();
        cursor += 1;
        for g in gens {
            let y = x.then(g);
            if !seen.contains(&y) {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                seen.insert(y.clone());
                elements.push(y);
            }
        }
    }
    Ok(MaterializedGroup::from_elements(
        GroupDescriptor::FromGenerators {
            label: "generators".into(),
            degree: None,
            generators: gens.to_vec(),
        },
        elements,
    ))
}

/// The largest factor of `k` smaller than `k` (zero when `k = 1`).
pub fn largest_proper_factor(k: u32) -> u32 {
    (1..k).rev().find(|d| k.is_multiple_of(*d)).unwrap_or(0)
}

/// The minimum distance `q - p^(k*)` of AΓL(1, q) and PΓL(2, q).
pub fn semilinear_distance(spec: &FieldSpec) -> u64 {
    let q = spec.order() as u64;
    let k = spec.degree();
    if k == 1 {
        return q - 1;
    }
    q - (spec.characteristic() as u64).pow(largest_proper_factor(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FieldSpec {
        FieldSpec::from_order(q).unwrap()
    }

    fn p(v: &[u32]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn poly_to_perm_examples() {
        let f5 = field(5);
        let (one, zero) = (FieldElement::ONE, FieldElement::ZERO);
        assert!(poly_to_perm(&f5, one, zero, 0).unwrap().is_identity());
        assert_eq!(poly_to_perm(&f5, one, one, 0).unwrap(), p(&[1, 2, 3, 4, 0]));
        assert!(matches!(
            poly_to_perm(&f5, zero, one, 0),
            Err(GroupError::ZeroLeadingCoefficient)
        ));
        assert_eq!(
            poly_to_perm(&field(4), one, zero, 1).unwrap(),
            p(&[0, 1, 3, 2])
        );
    }

    #[test]
    fn orders_match_formulas() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32] {
            let f = field(q);
            for d in [
                GroupDescriptor::Agl1(f.clone()),
                GroupDescriptor::AGammaL1(f.clone()),
                GroupDescriptor::Pgl2(f.clone()),
                GroupDescriptor::PGammaL2(f.clone()),
            ] {
                let g = d.materialize().unwrap();
                assert_eq!(g.order() as u64, d.expected_order().unwrap(), "{d}");
                assert_eq!(g.degree(), d.degree());
                assert!(g.elements()[0].is_identity());
            }
        }
        assert_eq!(gen_agl1(&field(5)).order(), 20);
        assert_eq!(gen_pgl2(&field(4)).order(), 60);
        assert_eq!(gen_pgl2(&field(4)).degree(), 5);
    }

    #[test]
    fn pgl_over_gf2_is_s3() {
        let g = gen_pgl2(&field(2));
        assert_eq!(g.order(), 6);
        let mut all: Vec<_> = g.elements().to_vec();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn cyclic_group() {
        let c4 = gen_cyclic(4).unwrap();
        assert_eq!(c4.elements()[1], p(&[1, 2, 3, 0]));
        let c1 = gen_cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        assert!(gen_cyclic(0).is_err());
    }

    #[test]
    fn closure_examples() {
        let t = closure_from_generators(&[Permutation::identity(3)], 10).unwrap();
        assert_eq!(t.order(), 1);
        let c3 = closure_from_generators(&[p(&[1, 2, 0])], 10).unwrap();
        assert_eq!(c3.order(), 3);
        let s4 = closure_from_generators(&[p(&[1, 0, 2, 3]), p(&[1, 2, 3, 0])], 100).unwrap();
        assert_eq!(s4.order(), 24);
        assert!(matches!(
            closure_from_generators(&[p(&[1, 0, 2, 3]), p(&[1, 2, 3, 0])], 10),
            Err(GroupError::CapExceeded { cap: 10 })
        ));
        assert!(matches!(
            closure_from_generators(&[p(&[1, 0]), p(&[1, 2, 0])], 10),
            Err(GroupError::Perm(PermError::DegreeMismatch { .. }))
        ));
        assert!(matches!(
            closure_from_generators(&[], 10),
            Err(GroupError::NoGenerators)
        ));
    }

    #[test]
    fn base_spec_text_form() {
        for text in [
            "AGL1 q=8",
            "PGL2 q=19",
            "AGAMMAL1 q=16",
            "PGAMMAL2 q=8",
            "CYCLIC n=12",
            "TRIVIAL n=7",
            "GENS file=m12.gens",
            "GENS file=m12.gens degree=13",
        ] {
            let spec: BaseSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        for bad in ["", "AGL1", "AGL1 n=8", "FOO q=3", "AGL1 q=x", "CYCLIC n=3 q=4"] {
            assert!(bad.parse::<BaseSpec>().is_err(), "{bad}");
        }
        assert!(matches!(
            "AGL1 q=12".parse::<BaseSpec>().unwrap().resolve(None),
            Err(GroupError::Field(FieldError::NotPrimePower(12)))
        ));
    }

    #[test]
    fn shipped_generators_resolve() {
        let d = "GENS file=m11.gens".parse::<BaseSpec>().unwrap().resolve(None).unwrap();
        assert_eq!(d.degree(), 11);
        let g = d.materialize().unwrap();
        assert_eq!(g.order(), 7920);
    }

    #[test]
    fn membership_and_closure_spot_check() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for g in [gen_agammal1(&field(9)), gen_pgl2(&field(7)), gen_pgammal2(&field(4))] {
            for _ in 0..200 {
                let a = &g.elements()[rng.gen_range(0..g.order())];
                let b = &g.elements()[rng.gen_range(0..g.order())];
                assert!(g.contains(&a.compose(&b.inverse()).unwrap()));
            }
            assert_eq!(g.index_of(&g.elements()[5]), Some(5));
        }
        let agl = gen_agl1(&field(7));
        assert!(!agl.contains(&p(&[1, 0, 2, 3, 4, 5, 6])));
    }

    #[test]
    fn proper_factors() {
        assert_eq!(largest_proper_factor(1), 0);
        assert_eq!(largest_proper_factor(2), 1);
        assert_eq!(largest_proper_factor(4), 2);
        assert_eq!(largest_proper_factor(6), 3);
        assert_eq!(semilinear_distance(&field(16)), 12);
        assert_eq!(semilinear_distance(&field(8)), 6);
        assert_eq!(semilinear_distance(&field(7)), 6);
    }
}
