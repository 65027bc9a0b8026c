//! Partitions, rectangles and the binary-string encoding of Schubert cells.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// stripped on construction, so `(2,0)` and `(2)` are the same value.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, rejecting sequences that are not weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts the given parts into decreasing order first.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty when `n == 0`.
    pub fn row(n: usize) -> Self {
        Self::from_sorted(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Self {
        let first = self.part(0);
        let parts = (0..first)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Self { parts }
    }

    /// Young-diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    pub fn fits_in(&self, rect: Rectangle) -> bool {
        self.length() <= rect.rows && self.part(0) <= rect.cols
    }

    /// Multiplicity of each part size: `m[r]` is the number of parts equal to `r`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// 180° rotation complement inside `rect`.
    pub fn complement(&self, rect: Rectangle) -> Result<Self> {
        if !self.fits_in(rect) {
            return Err(self.not_in(rect));
        }
        let parts = (0..rect.rows)
            .map(|i| rect.cols - self.part(rect.rows - 1 - i))
            .collect();
        Ok(Self::from_sorted(parts))
    }

    /// Encodes the partition as a binary string of length `n` with `k` ones.
    pub fn to_binary_string(&self, n: usize, k: usize) -> Result<BinaryString> {
        if k > n {
            return Err(Error::InvalidBinaryString(format!(
                "weight {k} exceeds length {n}"
            )));
        }
        let rect = Rectangle {
            rows: k,
            cols: n - k,
        };
        if !self.fits_in(rect) {
            return Err(self.not_in(rect));
        }
        let mut bits = vec![false; n];
        for j in 0..k {
            // position j + α_{k-j} in 0-based indexing
            bits[j + self.part(k - 1 - j)] = true;
        }
        Ok(BinaryString { bits })
    }

    pub fn from_binary_string(s: &BinaryString) -> Self {
        let mut zeros = 0;
        let mut a = Vec::new();
        for &b in &s.bits {
            if b {
                a.push(zeros);
            } else {
                zeros += 1;
            }
        }
        a.reverse();
        Self::from_sorted(a)
    }

    fn not_in(&self, rect: Rectangle) -> Error {
        Error::NotInRectangle {
            partition: self.to_string(),
            rows: rect.rows,
            cols: rect.cols,
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .unwrap_or(t)
            .trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl From<&[usize]> for Partition {
    /// Sorts the input; use [`Partition::new`] to reject unsorted parts instead.
    fn from(parts: &[usize]) -> Self {
        Self::from_unsorted(parts.to_vec())
    }
}

/// A `rows × cols` box. [`Rectangle::new`] requires both sides positive; the
/// fields are public so degenerate boxes (e.g. `Gr(n,n)`) can still be formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rectangle {
    pub rows: usize,
    pub cols: usize,
}

impl Rectangle {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimensions(format!("rectangle {rows}x{cols}")));
        }
        Ok(Self { rows, cols })
    }

    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    /// The partition filling the whole rectangle.
    pub fn full(&self) -> Partition {
        Partition {
            parts: vec![self.cols; self.rows],
        }
    }

    /// All partitions of weight `w` inside the rectangle, lexicographically
    /// descending.
    pub fn partitions_of_weight(&self, w: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill(w, self.cols, self.rows, &mut cur, &mut out);
        out
    }

    /// Every partition inside the rectangle, ordered by weight, then
    /// lexicographically descending.
    pub fn all_partitions(&self) -> Vec<Partition> {
        (0..=self.area())
            .flat_map(|w| self.partitions_of_weight(w))
            .collect()
    }
}

fn fill(
    remaining: usize,
    max_part: usize,
    rows_left: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    if rows_left == 0 {
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        if p * rows_left < remaining {
            break;
        }
        cur.push(p);
        fill(remaining - p, p, rows_left - 1, cur, out);
        cur.pop();
    }
}

/// All partitions of `n`, lexicographically descending.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, n, &mut cur, &mut out);
    out
}

/// Partitions of weight `w` fitting in `rect`.
pub fn enumerate_in_rectangle(rect: Rectangle, w: usize) -> Vec<Partition> {
    rect.partitions_of_weight(w)
}

/// A 0/1 string; `k` is the number of ones.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryString {
    bits: Vec<bool>,
}

impl BinaryString {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// 1-based positions of the ones.
    pub fn ones(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BinaryString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidBinaryString(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { bits })
    }
}

pub fn partition_from_string(s: &BinaryString) -> Partition {
    Partition::from_binary_string(s)
}

pub fn string_from_partition(alpha: &Partition, n: usize, k: usize) -> Result<BinaryString> {
    alpha.to_binary_string(n, k)
}
