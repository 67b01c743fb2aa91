//! Lower-bound bookkeeping for `M(n, d)`: records, the three arithmetic
//! propagation rules, and a fixed-width table.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use thiserror::Error;

use crate::distance::group_hd;
use crate::field::{prime_power, FieldSpec};
use crate::group::{
    gen_agammal1, gen_agl1, gen_cyclic, gen_pgammal2, gen_pgl2, BaseSpec, MaterializedGroup,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundTag {
    /// From `M(n, d-1) >= M(n, d)`.
    A,
    /// From `M(n+1, d) >= M(n, d)`.
    B,
    /// From `M(n-1, d) >= M(n, d) / n`.
    D,
    T,
    G,
    M,
    U,
    R,
    C,
    /// Checked by this crate.
    V,
}

impl BoundTag {
    pub fn letter(self) -> char {
        match self {
            BoundTag::A => 'a',
            BoundTag::B => 'b',
            BoundTag::D => 'd',
            BoundTag::T => 't',
            BoundTag::G => 'g',
            BoundTag::M => 'm',
            BoundTag::U => 'u',
            BoundTag::R => 'r',
            BoundTag::C => 'c',
            BoundTag::V => 'v',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'a' => BoundTag::A,
            'b' => BoundTag::B,
            'd' => BoundTag::D,
            't' => BoundTag::T,
            'g' => BoundTag::G,
            'm' => BoundTag::M,
            'u' => BoundTag::U,
            'r' => BoundTag::R,
            'c' => BoundTag::C,
            'v' => BoundTag::V,
            _ => return None,
        })
    }
}

impl fmt::Display for BoundTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundRecord {
    pub n: usize,
    pub d: usize,
    pub size: u64,
    pub tag: BoundTag,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl BoundRecord {
    pub fn new(n: usize, d: usize, size: u64, tag: BoundTag) -> Self {
        BoundRecord { n, d, size, tag }
    }
}

impl fmt::Display for BoundRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.n, self.d, self.size, self.tag)
    }
}

impl FromStr for BoundRecord {
    type Err = String;

    /// `n d size tag`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let [n, d, size, tag] = words.as_slice() else {
            return Err(format!("expected `n d size tag`, got `{s}`"));
        };
        let int = |w: &str| w.parse::<u64>().map_err(|_| format!("`{w}` is not an integer"));
        let (n, d, size) = (int(n)? as usize, int(d)? as usize, int(size)?);
        let mut chars = tag.chars();
        let tag = match (chars.next(), chars.next()) {
            (Some(c), None) => BoundTag::from_letter(c),
            _ => None,
        }
        .ok_or_else(|| format!("unknown tag `{tag}`"))?;
        if size == 0 || d == 0 || d > n {
            return Err(format!("need size >= 1 and 1 <= d <= n, got `{s}`"));
        }
        Ok(BoundRecord { n, d, size, tag })
    }
}

/// One record per line; `#` starts a comment.
pub fn parse_records(text: &str) -> Result<Vec<BoundRecord>, BoundError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(line.parse().map_err(|reason| BoundError::Parse {
            line: i + 1,
            reason,
        })?);
    }
    Ok(out)
}

/// Best record per cell; ties keep the earlier one.
fn best_per_cell(records: &[BoundRecord]) -> BTreeMap<(usize, usize), BoundRecord> {
    let mut cells: BTreeMap<(usize, usize), BoundRecord> = BTreeMap::new();
    for r in records {
        cells
            .entry((r.n, r.d))
            .and_modify(|old| {
                if r.size > old.size {
                    *old = *r;
                }
            })
            .or_insert(*r);
    }
    cells
}

/// The cells the propagation rules may write to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub n: RangeInclusive<usize>,
    pub d: RangeInclusive<usize>,
}

impl Window {
    fn admits(&self, n: usize, d: usize) -> bool {
        self.n.contains(&n) && self.d.contains(&d) && 2 <= d && d <= n
    }
}

/// Closes `records` under the rules
///
/// - a: `M(n, d-1) >= M(n, d)`
/// - b: `M(n+1, d) >= M(n, d)`
/// - d: `M(n-1, d) >= ceil(M(n, d) / n)`
///
/// within `window`. A derived value only replaces a strictly smaller one.
/// Output holds one record per cell, sorted by `(n, d)`.
pub fn propagate_bounds(records: &[BoundRecord], window: &Window) -> Vec<BoundRecord> {
    let mut cells = best_per_cell(records);
    loop {
        let mut changed = false;
        let snapshot: Vec<BoundRecord> = cells.values().copied().collect();
        for r in snapshot {
            let r = cells[&(r.n, r.d)];
            let derived = [
                (r.n, r.d.wrapping_sub(1), r.size, BoundTag::A),
                (r.n + 1, r.d, r.size, BoundTag::B),
                (r.n.wrapping_sub(1), r.d, r.size.div_ceil(r.n as u64), BoundTag::D),
            ];
            for (n, d, size, tag) in derived {
                if !window.admits(n, d) {
                    continue;
                }
                let better = cells.get(&(n, d)).is_none_or(|old| size > old.size);
                if better {
                    cells.insert((n, d), BoundRecord { n, d, size, tag });
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    cells.into_values().collect()
}

/// A grid with one row per `n` and one column per `d`; cells read
/// `size_tag`, or `-` when empty.
pub fn emit_table(records: &[BoundRecord], n_range: RangeInclusive<usize>, d_range: RangeInclusive<usize>) -> String {
    let cells = best_per_cell(records);
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["n\\d".to_string()];
    header.extend(d_range.clone().map(|d| d.to_string()));
    rows.push(header);
    for n in n_range {
        let mut row = vec![n.to_string()];
        for d in d_range.clone() {
            row.push(match cells.get(&(n, d)) {
                Some(r) => format!("{}_{}", r.size, r.tag),
                None => "-".to_string(),
            });
        }
        rows.push(row);
    }
    let columns = rows[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}

fn record_for(group: &MaterializedGroup) -> Option<BoundRecord> {
    let hd = group_hd(group).ok()?.min_distance;
    Some(BoundRecord::new(group.degree(), hd, group.order() as u64, BoundTag::G))
}

/// Bounds from the built-in groups acting on `n` symbols for `n` in
/// `n_range`: cyclic, AGL(1,q), AΓL(1,q), PGL(2,q), PΓL(2,q), M11 and M12.
/// Every distance is measured, not assumed.
pub fn verified_group_records(n_range: RangeInclusive<usize>) -> Vec<BoundRecord> {
    let mut groups: Vec<MaterializedGroup> = Vec::new();
    for n in n_range.clone() {
        if n >= 2 {
            groups.extend(gen_cyclic(n).ok());
        }
        if let Some((_, k)) = (n >= 2).then(|| prime_power(n as u64)).flatten() {
            let f = FieldSpec::from_order(n as u64).expect("prime power");
            groups.push(gen_agl1(&f));
            if k > 1 {
                groups.push(gen_agammal1(&f));
            }
        }
        if let Some((_, k)) = (n >= 3).then(|| prime_power(n as u64 - 1)).flatten() {
            let f = FieldSpec::from_order(n as u64 - 1).expect("prime power");
            groups.push(gen_pgl2(&f));
            if k > 1 {
                groups.push(gen_pgammal2(&f));
            }
        }
    }
    for (file, n) in [("m11.gens", 11), ("m12.gens", 12)] {
        if n_range.contains(&n) {
            let g = BaseSpec::Gens {
                file: file.to_string(),
                degree: None,
            }
            .resolve(None)
            .and_then(|d| d.materialize())
            .expect("shipped generators");
            groups.push(g);
        }
    }
    let records: Vec<BoundRecord> = groups.iter().filter_map(record_for).collect();
    best_per_cell(&records).into_values().collect()
}
