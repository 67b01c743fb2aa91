//! The `PA v1` text format.
//!
//! ```text
//! PA v1
//! # infinity=19
//! n=20
//! d=16
//! base=PGL2 q=19
//! reps:
//! 0 1 2 10 8 17 7 5 13 14 15 18 9 4 12 3 11 6 16 19
//! ```
//!
//! Symbols are 0-indexed. The identity coset is implicit. `#` starts a
//! comment everywhere except in the `note=` value, which runs to the end of
//! its line.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use crate::array::{ArrayError, PermArray};
use crate::field::{FieldElement, FieldSpec};
use crate::group::{BaseSpec, GroupDescriptor, GroupError};
use crate::permutation::{split_symbols, PermError, Permutation};

pub const VERSION_LINE: &str = "PA v1";

#[derive(Debug, Error)]
pub enum PaFileError {
    #[error("line {line}, column {column}: {reason}")]
    Malformed {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error("line {line}: bad permutation: {reason}")]
    BadPermutation { line: usize, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Array(#[from] ArrayError),
    #[error("{path}: {err}")]
    Io { path: String, err: std::io::Error },
}

/// A parsed file, before the base group is materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaFile {
    pub n: usize,
    pub d: usize,
    pub base: BaseSpec,
    pub seed: Option<u64>,
    pub note: Option<String>,
    pub reps: Vec<Permutation>,
}

fn malformed(line: usize, column: usize, reason: impl Into<String>) -> PaFileError {
    PaFileError::Malformed {
        line,
        column,
        reason: reason.into(),
    }
}

fn strip_comment(s: &str) -> &str {
    match s.find('#') {
        Some(i) => &s[..i],
        None => s,
    }
}

/// Parses the text of a `PA v1` file.
pub fn parse_pa(text: &str) -> Result<PaFile, PaFileError> {
    // (1-based line number, content); blank and comment-only lines dropped
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let keep = if raw.trim_start().starts_with("note=") {
            raw.trim()
        } else {
            strip_comment(raw).trim()
        };
        (!keep.is_empty()).then_some((i + 1, keep))
    });

    let eof = |what: &str| malformed(text.lines().count() + 1, 1, format!("expected {what}"));

    let (line, first) = lines.next().ok_or_else(|| eof(VERSION_LINE))?;
    if first != VERSION_LINE {
        return Err(malformed(line, 1, format!("expected `{VERSION_LINE}`")));
    }

    let mut field = |key: &str, optional: bool| -> Result<Option<(usize, String)>, PaFileError> {
        let next = lines.clone().next();
        match next {
            Some((line, content)) => match content.strip_prefix(key).and_then(|r| r.strip_prefix('=')) {
                Some(value) => {
                    lines.next();
                    Ok(Some((line, value.trim().to_string())))
                }
                None if optional => Ok(None),
                None => Err(malformed(line, 1, format!("expected `{key}=`"))),
            },
            None if optional => Ok(None),
            None => Err(eof(&format!("`{key}=`"))),
        }
    };
    let int = |line: usize, key: &str, v: &str| -> Result<u64, PaFileError> {
        v.parse()
            .map_err(|_| malformed(line, key.len() + 2, format!("`{v}` is not a nonnegative integer")))
    };

    let (nl, nv) = field("n", false)?.unwrap();
    let n = int(nl, "n", &nv)? as usize;
    if n == 0 {
        return Err(malformed(nl, 3, "n must be positive"));
    }
    let (dl, dv) = field("d", false)?.unwrap();
    let d = int(dl, "d", &dv)? as usize;
    let (bl, bv) = field("base", false)?.unwrap();
    let base: BaseSpec = bv
        .parse()
        .map_err(|e: GroupError| malformed(bl, 6, e.to_string()))?;
    let seed = match field("seed", true)? {
        Some((sl, sv)) => Some(int(sl, "seed", &sv)?),
        None => None,
    };
    let note = field("note", true)?.map(|(_, v)| v);

    let (rl, rv) = lines.next().ok_or_else(|| eof("`reps:`"))?;
    if rv != "reps:" {
        return Err(malformed(rl, 1, "expected `reps:`"));
    }

    let mut reps = Vec::new();
    for (line, content) in lines {
        let perm: Permutation = content.parse().map_err(|e: PermError| PaFileError::BadPermutation {
            line,
            reason: e.to_string(),
        })?;
        if perm.degree() != n {
            return Err(PaFileError::BadPermutation {
                line,
                reason: format!("{} symbols, expected n={n}", perm.degree()),
            });
        }
        reps.push(perm);
    }

    Ok(PaFile {
        n,
        d,
        base,
        seed,
        note,
        reps,
    })
}

/// Header comments derivable from the base: the field and, for projective
/// groups, where infinity sits.
fn header_comments(base: &BaseSpec) -> Vec<String> {
    let (q, projective) = match *base {
        BaseSpec::Agl1 { q } | BaseSpec::AGammaL1 { q } => (q, false),
        BaseSpec::Pgl2 { q } | BaseSpec::PGammaL2 { q } => (q, true),
        _ => return Vec::new(),
    };
    let mut out = Vec::new();
    if let Ok(f) = FieldSpec::from_order(q) {
        out.push(format!("# field={f}"));
    }
    if projective {
        out.push(format!("# infinity={q}"));
    }
    out
}

/// Canonical text; `parse_pa(serialize_pa(f)) == f`.
pub fn serialize_pa(file: &PaFile) -> String {
    let mut s = String::new();
    s.push_str(VERSION_LINE);
    s.push('\n');
    for c in header_comments(&file.base) {
        s.push_str(&c);
        s.push('\n');
    }
    let _ = writeln!(s, "n={}", file.n);
    let _ = writeln!(s, "d={}", file.d);
    let _ = writeln!(s, "base={}", file.base);
    if let Some(seed) = file.seed {
        let _ = writeln!(s, "seed={seed}");
    }
    if let Some(note) = &file.note {
        let flat: String = note.split_whitespace().collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, "note={flat}");
    }
    s.push_str("reps:\n");
    for r in &file.reps {
        let _ = writeln!(s, "{r}");
    }
    s
}

impl PaFile {
    pub fn from_perm_array(pa: &PermArray) -> Self {
        PaFile {
            n: pa.degree(),
            d: pa.claimed_d(),
            base: pa.base().descriptor().base_spec(),
            seed: pa.seed,
            note: pa.note.clone(),
            reps: pa.nontrivial_reps().to_vec(),
        }
    }

    /// Materializes the base and checks the representatives. Generator
    /// files are resolved relative to `dir`.
    pub fn to_perm_array(&self, dir: Option<&Path>) -> Result<PermArray, PaFileError> {
        let descriptor = self.base.resolve(dir)?;
        let group = descriptor.materialize()?;
        if group.degree() != self.n {
            return Err(malformed(
                0,
                0,
                format!("base acts on {} symbols but n={}", group.degree(), self.n),
            ));
        }
        let mut pa = PermArray::new(Arc::new(group), self.reps.clone(), self.d)?;
        pa.seed = self.seed;
        pa.note = self.note.clone();
        Ok(pa)
    }
}

pub fn read_pa_file(path: &Path) -> Result<PermArray, PaFileError> {
    let text = std::fs::read_to_string(path).map_err(|err| PaFileError::Io {
        path: path.display().to_string(),
        err,
    })?;
    parse_pa(&text)?.to_perm_array(path.parent())
}

pub fn write_pa_file(path: &Path, pa: &PermArray) -> Result<(), PaFileError> {
    std::fs::write(path, serialize_pa(&PaFile::from_perm_array(pa))).map_err(|err| PaFileError::Io {
        path: path.display().to_string(),
        err,
    })
}

/// How printed 1-indexed symbols map onto internal labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labeling {
    /// Printed `s` is label `s - 1`.
    Natural,
    /// Printed symbols run through `∞, 0, 1, g, g^2, ...` for the
    /// primitive element `g`; affine bases skip the `∞`.
    PowerOrder,
}

/// `map[s - 1]` is the internal label of printed symbol `s`.
pub fn symbol_map(labeling: Labeling, base: &GroupDescriptor) -> Option<Vec<u32>> {
    let n = base.degree();
    match labeling {
        Labeling::Natural => Some((0..n as u32).collect()),
        Labeling::PowerOrder => {
            let f = base.field()?;
            let q = f.order();
            let mut map = Vec::with_capacity(n);
            if base.is_projective() {
                map.push(q);
            }
            map.push(0);
            let g = f.primitive_element();
            let mut x = FieldElement::ONE;
            for _ in 1..q {
                map.push(x.index());
                x = f.mul(x, g);
            }
            Some(map)
        }
    }
}

/// Reads a printed list like `1,2,3,4,6,8,...` through `map`.
pub fn import_one_indexed(text: &str, map: &[u32]) -> Result<Permutation, PermError> {
    let values = split_symbols(text)
        .map(|t| t.parse::<u64>().map_err(|_| PermError::Parse(t.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(PermError::Empty);
    }
    let n = values.len();
    if map.len() != n {
        return Err(PermError::DegreeMismatch {
            left: n,
            right: map.len(),
        });
    }
    let printed = Permutation::from_one_indexed(&values)?;
    let mut images = vec![0u32; n];
    for (s, &v) in printed.images().iter().enumerate() {
        images[map[s] as usize] = map[v as usize];
    }
    Permutation::from_images(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    const M20: &str = include_str!("../data/m20_16.pa");

    #[test]
    fn cyclic_without_reps() {
        let f = parse_pa("PA v1\nn=4\nd=4\nbase=CYCLIC n=4\nreps:\n").unwrap();
        let pa = f.to_perm_array(None).unwrap();
        assert_eq!(pa.size(), 4);
        assert_eq!(pa.cosets(), 1);
    }

    #[test]
    fn shipped_m20_file() {
        let f = parse_pa(M20).unwrap();
        assert_eq!(f.reps.len(), 1);
        assert_eq!(serialize_pa(&f), M20);
        let pa = f.to_perm_array(None).unwrap();
        assert_eq!(pa.cosets(), 2);
        assert_eq!(pa.size(), 13680);
    }

    #[test]
    fn repeated_value_is_bad_permutation() {
        let err = parse_pa("PA v1\nn=3\nd=2\nbase=TRIVIAL n=3\nreps:\n0 1 1\n").unwrap_err();
        assert!(matches!(err, PaFileError::BadPermutation { line: 6, .. }));
        let err = parse_pa("PA v1\nn=3\nd=2\nbase=TRIVIAL n=3\nreps:\n0 1\n").unwrap_err();
        assert!(matches!(err, PaFileError::BadPermutation { line: 6, .. }));
    }

    #[test]
    fn malformed_headers() {
        let cases = [
            ("", 1),
            ("PA v2\n", 1),
            ("PA v1\nd=3\n", 2),
            ("PA v1\nn=x\n", 2),
            ("PA v1\nn=3\nd=2\nbase=FOO q=3\nreps:\n", 4),
            ("PA v1\nn=3\nd=2\nbase=TRIVIAL n=3\n\n# c\nrepz:\n", 7),
        ];
        for (text, line) in cases {
            match parse_pa(text) {
                Err(PaFileError::Malformed { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn comments_and_metadata() {
        let text = "PA v1\n# hello\nn=3 # three\nd=2\nbase=TRIVIAL n=3\nseed=7\nnote=found # by hand\nreps:\n1 0 2  # swap\n";
        let f = parse_pa(text).unwrap();
        assert_eq!(f.seed, Some(7));
        assert_eq!(f.note.as_deref(), Some("found # by hand"));
        assert_eq!(f.reps, vec!["1 0 2".parse().unwrap()]);
        let again = parse_pa(&serialize_pa(&f)).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn wrong_degree_base() {
        let f = parse_pa("PA v1\nn=5\nd=2\nbase=CYCLIC n=4\nreps:\n").unwrap();
        assert!(matches!(f.to_perm_array(None), Err(PaFileError::Malformed { .. })));
    }

    #[test]
    fn power_order_labels() {
        let g = GroupDescriptor::Pgl2(FieldSpec::from_order(19).unwrap());
        let map = symbol_map(Labeling::PowerOrder, &g).unwrap();
        assert_eq!(&map[..8], &[19, 0, 1, 2, 4, 8, 16, 13]);
        let mut sorted = map.clone();
        sorted.sort();
        assert_eq!(sorted, (0..20).collect::<Vec<_>>());
        let a = GroupDescriptor::Agl1(FieldSpec::from_order(5).unwrap());
        assert_eq!(symbol_map(Labeling::PowerOrder, &a).unwrap(), vec![0, 1, 2, 4, 3]);
        assert!(symbol_map(Labeling::PowerOrder, &GroupDescriptor::Cyclic(5)).is_none());
    }

    #[test]
    fn one_indexed_import() {
        let nat: Vec<u32> = (0..4).collect();
        assert_eq!(
            import_one_indexed("2,1,3,4", &nat).unwrap(),
            "1 0 2 3".parse().unwrap()
        );
        assert!(import_one_indexed("1,2,2,4", &nat).is_err());
        assert!(import_one_indexed("1,2,3", &nat).is_err());
        // relabeling is conjugation
        let map = vec![2, 0, 3, 1];
        let p = import_one_indexed("2,3,4,1", &map).unwrap();
        for s in 0..4 {
            let printed_image = (s + 1) % 4;
            assert_eq!(p.apply(map[s] as usize), map[printed_image] as usize);
        }
    }
}
