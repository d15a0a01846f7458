//! Admissible sequences, which label the components of the space of genus-0
//! multiple covers of a nodal fiber, and their bijection with Young diagrams.
//!
//! A sequence `s_lo, ..., s_hi` is admissible when `lo <= 0 <= hi` and every
//! entry is positive. It is 1-admissible when, walking outward from index 0
//! in either direction, each step keeps the value or lowers it by one, with
//! the value taken as 0 just past either end.
//!
//! Diagonal convention: cell `(row i, column j)` of a diagram lies on
//! diagonal `i - j`, so cells below the main diagonal go to positive indices.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleSequence {
    lo: i64,
    values: Vec<u64>,
}

/// True iff `values`, placed at indices `lo, lo + 1, ...`, is non-empty,
/// spans index 0 and has only positive entries.
pub fn is_admissible(lo: i64, values: &[i64]) -> bool {
    let hi = lo + values.len() as i64 - 1;
    !values.is_empty() && lo <= 0 && hi >= 0 && values.iter().all(|&v| v > 0)
}

impl AdmissibleSequence {
    /// Validates a sequence given exactly, with no padding.
    pub fn new(lo: i64, values: &[i64]) -> Result<Self> {
        if !is_admissible(lo, values) {
            return Err(Error::InvalidArgument(format!(
                "not an admissible sequence: start {lo}, values {values:?}"
            )));
        }
        Ok(Self {
            lo,
            values: values.iter().map(|&v| v as u64).collect(),
        })
    }

    /// Like [`new`](Self::new), but first strips zeros padding either end.
    pub fn from_padded(lo: i64, values: &[i64]) -> Result<Self> {
        let start = values.iter().position(|&v| v != 0).unwrap_or(values.len());
        let end = values
            .iter()
            .rposition(|&v| v != 0)
            .map_or(start, |e| e + 1);
        Self::new(lo + start as i64, &values[start..end])
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `s_n`, or 0 outside `lo..=hi`.
    pub fn get(&self, n: i64) -> u64 {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.values[(n - self.lo) as usize]
        }
    }

    /// `|s| = sum_n s_n`.
    pub fn magnitude(&self) -> u64 {
        self.values.iter().sum()
    }
}

impl fmt::Display for AdmissibleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}: ", self.lo, self.hi())?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for AdmissibleSequence {
    type Err = Error;

    /// Parses the `"lo..hi: v_lo,...,v_hi"` rendering.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected \"lo..hi: v,...\", got {s:?}"));
        let (range, vals) = s.split_once(':').ok_or_else(bad)?;
        let (lo, hi) = range.trim().split_once("..").ok_or_else(bad)?;
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        let values = vals
            .split(',')
            .map(|v| v.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if hi - lo + 1 != values.len() as i64 {
            return Err(bad());
        }
        Self::new(lo, &values)
    }
}

pub fn is_one_admissible(seq: &AdmissibleSequence) -> bool {
    let step_ok = |inner: u64, outer: u64| outer == inner || outer + 1 == inner;
    (0..=seq.hi()).all(|n| step_ok(seq.get(n), seq.get(n + 1)))
        && (seq.lo()..=0).all(|n| step_ok(seq.get(n), seq.get(n - 1)))
}

/// All admissible sequences of magnitude `a`: every composition of `a` into
/// `w` positive parts, placed in each of the `w` windows of length `w` that
/// contain index 0.
pub fn enumerate_admissible(a: u64) -> Vec<AdmissibleSequence> {
    let mut out = Vec::new();
    for w in 1..=a as usize {
        let mut parts = Vec::with_capacity(w);
        compositions(a, w, &mut parts, &mut |comp| {
            for lo in -(w as i64 - 1)..=0 {
                out.push(AdmissibleSequence {
                    lo,
                    values: comp.to_vec(),
                });
            }
        });
    }
    out
}

fn compositions(total: u64, parts: usize, prefix: &mut Vec<u64>, emit: &mut impl FnMut(&[u64])) {
    if parts == 0 {
        if total == 0 {
            emit(prefix);
        }
        return;
    }
    // leave at least one for each remaining part
    let max = total.saturating_sub(parts as u64 - 1);
    for first in 1..=max {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, emit);
        prefix.pop();
    }
}

pub fn enumerate_one_admissible(a: u64) -> Vec<AdmissibleSequence> {
    enumerate_admissible(a)
        .into_iter()
        .filter(is_one_admissible)
        .collect()
}

/// A Young diagram, stored as its row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionDiagram {
    rows: Vec<u64>,
}

impl PartitionDiagram {
    pub fn new(rows: Vec<u64>) -> Result<Self> {
        if rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "rows {rows:?} are not a weakly decreasing list of positive integers"
            )));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn size(&self) -> u64 {
        self.rows.iter().sum()
    }

    /// Every diagram with `n` cells, rows listed in reverse lexicographic order.
    pub fn all_of_size(n: u64) -> Vec<PartitionDiagram> {
        fn go(left: u64, max: u64, rows: &mut Vec<u64>, out: &mut Vec<PartitionDiagram>) {
            if left == 0 {
                out.push(PartitionDiagram { rows: rows.clone() });
                return;
            }
            for r in (1..=left.min(max)).rev() {
                rows.push(r);
                go(left - r, r, rows, out);
                rows.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

/// Diagonal cell counts: `s_k` is the number of cells `(i, j)` with `i - j = k`.
///
/// Panics on the empty diagram, which has no index-0 entry.
pub fn diagram_to_sequence(d: &PartitionDiagram) -> AdmissibleSequence {
    assert!(
        !d.rows.is_empty(),
        "the empty diagram has no diagonal sequence"
    );
    let height = d.rows.len() as i64;
    let width = d.rows[0] as i64;
    let lo = -(width - 1);
    let mut counts = vec![0u64; (height + width - 1) as usize];
    for (i, &len) in d.rows.iter().enumerate() {
        for j in 0..len as i64 {
            counts[(i as i64 - j - lo) as usize] += 1;
        }
    }
    AdmissibleSequence { lo, values: counts }
}

/// Inverse of [`diagram_to_sequence`]. Cells on a diagonal of a Young
/// diagram form an initial run from the border, so diagonal `k` contributes
/// the first `s_k` cells of that diagonal; the result is checked to be a
/// diagram.
pub fn sequence_to_diagram(s: &AdmissibleSequence) -> Result<PartitionDiagram> {
    let fail = || Error::NotOneAdmissible(s.to_string());
    let height = (s.hi() + 1) as usize + s.get(0) as usize;
    let mut rows = vec![0u64; height];
    for k in s.lo()..=s.hi() {
        for t in 0..s.get(k) {
            // k >= 0: cells (k + t, t); k < 0: cells (t, t - k)
            let (i, j) = if k >= 0 {
                (k as u64 + t, t)
            } else {
                (t, t + (-k) as u64)
            };
            let row = rows.get_mut(i as usize).ok_or_else(fail)?;
            // holes in a row are caught by the round trip below
            *row = (*row).max(j + 1);
        }
    }
    while rows.last() == Some(&0) {
        rows.pop();
    }
    let diagram = PartitionDiagram::new(rows).map_err(|_| fail())?;
    if diagram.size() != s.magnitude() || diagram_to_sequence(&diagram) != *s {
        return Err(fail());
    }
    Ok(diagram)
}
