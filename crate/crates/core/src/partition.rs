//! Partitions and skew shapes.
//!
//! Parts are **column heights**: the diagram of `(3,2,2,1)` has four
//! top-aligned columns of heights 3, 2, 2 and 1, so its row lengths are the
//! transpose `(4,3,1)`. Rows are numbered from the top starting at 1, columns
//! from the left starting at 1. Every other module relies on this convention.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers; may be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be positive".into(),
            });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be weakly decreasing".into(),
            });
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The square partition `(r, ..., r)` of length `r`.
    pub fn square(r: usize) -> Self {
        Partition(vec![r; r])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based part access, zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        assert!(i >= 1, "parts are indexed from 1");
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().take_while(|&&a| a >= j).count())
                .collect(),
        )
    }

    /// `other ⊆ self`, componentwise with zero padding.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// The natural order on arbitrary partitions: prefix sums of the
    /// transposes compare as `self ≤ other` at every position.
    pub fn nat_leq(&self, other: &Partition) -> bool {
        let a = self.transpose();
        let b = other.transpose();
        let n = a.len().max(b.len());
        let (mut sa, mut sb) = (0, 0);
        for c in 1..=n {
            sa += a.part(c);
            sb += b.part(c);
            if sa > sb {
                return false;
            }
        }
        true
    }

    /// The classical natural order on partitions of one weight, via prefix
    /// sums of the parts themselves (`self` has the larger prefix sums).
    pub fn nat_leq_same_weight(&self, other: &Partition) -> Result<bool> {
        if self.weight() != other.weight() {
            return Err(Error::WeightMismatch {
                left: self.weight(),
                right: other.weight(),
            });
        }
        let n = self.len().max(other.len());
        let (mut sa, mut sb) = (0, 0);
        for c in 1..=n {
            sa += self.part(c);
            sb += other.part(c);
            if sa < sb {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Multiset union of the parts, sorted.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }

    /// The partition with part `i` (1-based) increased by one, if the result
    /// is still a partition.
    pub fn add_cell(&self, i: usize) -> Option<Partition> {
        if i == 0 || i > self.len() + 1 {
            return None;
        }
        let mut parts = self.0.clone();
        if i == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[i - 1] += 1;
        }
        if i >= 2 && parts[i - 1] > parts[i - 2] {
            return None;
        }
        Some(Partition(parts))
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all_of_weight(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All `γ ⊆ self` with `self ∖ γ` a rook strip, including `γ = self`.
    pub fn rook_strip_inners(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let parts = &self.0;
        let n = parts.len();
        for mask in 0u64..(1u64 << n) {
            let inner: Vec<usize> = (0..n)
                .map(|i| parts[i] - ((mask >> i) & 1) as usize)
                .collect();
            if inner.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            let inner = Partition::from_unsorted(inner);
            let shape = SkewShape {
                outer: self.clone(),
                inner,
            };
            if shape.is_rook_strip() {
                out.push(shape.inner);
            }
        }
        out.sort();
        out
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `[3,2,2,1]`; the brackets are optional and `[]` is empty.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(s)
            .trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad part {t:?} in {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// `outer ∖ inner`, drawn with both diagrams top-left aligned.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::NotContained {
                outer: outer.to_string(),
                inner: inner.to_string(),
            });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn size(&self) -> usize {
        self.outer.weight() - self.inner.weight()
    }

    /// At most one cell in every column.
    pub fn is_horizontal_strip(&self) -> bool {
        (1..=self.outer.len()).all(|i| self.outer.part(i) <= self.inner.part(i) + 1)
    }

    /// At most one cell in every row.
    pub fn is_vertical_strip(&self) -> bool {
        SkewShape {
            outer: self.outer.transpose(),
            inner: self.inner.transpose(),
        }
        .is_horizontal_strip()
    }

    pub fn is_rook_strip(&self) -> bool {
        self.is_horizontal_strip() && self.is_vertical_strip()
    }

    /// Cells as `(row, column)`, 1-based, column by column from the left and
    /// top-down within a column.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        (1..=self.outer.len())
            .flat_map(|c| ((self.inner.part(c) + 1)..=self.outer.part(c)).map(move |w| (w, c)))
            .collect()
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[3, 2, 2, 1]).transpose(), p(&[4, 3, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
        assert_eq!(p(&[5]).transpose(), p(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn general_natural_order() {
        assert!(p(&[1]).nat_leq(&p(&[2])));
        assert!(p(&[2]).nat_leq(&p(&[1, 1])));
        assert!(!p(&[1, 1]).nat_leq(&p(&[2])));
        assert!(p(&[3, 1, 1]).nat_leq(&p(&[3, 1, 1])));
    }

    #[test]
    fn same_weight_natural_order() {
        assert!(p(&[2]).nat_leq_same_weight(&p(&[1, 1])).unwrap());
        assert!(p(&[3, 1]).nat_leq_same_weight(&p(&[2, 2])).unwrap());
        assert!(p(&[2, 2]).nat_leq_same_weight(&p(&[2, 2])).unwrap());
        assert_eq!(
            p(&[2]).nat_leq_same_weight(&p(&[1])),
            Err(Error::WeightMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn containment() {
        assert!(p(&[3, 2, 2, 1]).contains(&p(&[2, 1, 1])));
        assert!(p(&[3, 3]).contains(&Partition::empty()));
        assert!(!p(&[3, 3]).contains(&p(&[4])));
    }

    #[test]
    fn strips() {
        let s = SkewShape::new(p(&[3, 2, 2, 1]), p(&[2, 1, 1])).unwrap();
        assert!(s.is_horizontal_strip());
        let t = SkewShape::new(p(&[4, 3, 1]), p(&[3, 2])).unwrap();
        assert!(t.is_vertical_strip());
        let e = SkewShape::new(p(&[2, 1]), p(&[2, 1])).unwrap();
        assert!(e.is_rook_strip());
        assert!(SkewShape::new(p(&[2]), p(&[3])).is_err());
    }

    #[test]
    fn rowwise_union() {
        assert_eq!(p(&[3, 1]).union(&p(&[2])), p(&[3, 2, 1]));
        assert_eq!(p(&[3, 1]).union(&Partition::empty()), p(&[3, 1]));
        assert_eq!(p(&[2, 2]).union(&p(&[2])), p(&[2, 2, 2]));
    }

    #[test]
    fn text_form() {
        assert_eq!("[3,2,2,1]".parse::<Partition>().unwrap(), p(&[3, 2, 2, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[3, 2, 2, 1]).to_string(), "[3,2,2,1]");
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[a]".parse::<Partition>().is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all_of_weight(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn rook_inners_of_staircase() {
        let inners = p(&[2, 1]).rook_strip_inners();
        // (2,1) minus any subset of its two corner cells
        assert_eq!(inners, vec![p(&[1]), p(&[1, 1]), p(&[2]), p(&[2, 1])]);
    }
}
