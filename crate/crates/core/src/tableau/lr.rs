use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Partition, SkewShape};
use crate::tableau::syt::PartitionChain;

/// A Littlewood-Richardson tableau on `outer ∖ inner`, stored as the chain
/// `inner = γ⁽⁰⁾ ⊆ γ⁽¹⁾ ⊆ … ⊆ γ⁽ʳ⁾ = outer`; the cells of `γ⁽ᵉ⁾ ∖ γ⁽ᵉ⁻¹⁾`
/// carry entry `e`.
///
/// The stored chain stops at the first step equal to the outer shape;
/// [`step`](Self::step) pads past the end with the outer shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLr", into = "RawLr")]
pub struct LrTableau {
    inner: Partition,
    chain: Vec<Partition>,
}

#[derive(Serialize, Deserialize)]
struct RawLr {
    inner: Partition,
    chain: Vec<Partition>,
}

impl TryFrom<RawLr> for LrTableau {
    type Error = Error;
    fn try_from(raw: RawLr) -> Result<Self> {
        LrTableau::from_chain(raw.inner, raw.chain)
    }
}

impl From<LrTableau> for RawLr {
    fn from(t: LrTableau) -> Self {
        RawLr {
            inner: t.inner,
            chain: t.chain,
        }
    }
}

impl LrTableau {
    /// The tableau with no entries on `β ∖ β`.
    pub fn empty(shape: Partition) -> Self {
        LrTableau {
            inner: shape.clone(),
            chain: vec![shape],
        }
    }

    /// Builds and validates; `chain[0]` must equal `inner`.
    pub fn from_chain(inner: Partition, chain: Vec<Partition>) -> Result<Self> {
        let t = Self::from_chain_unchecked(inner, chain)?;
        t.validate()?;
        Ok(t)
    }

    /// Checks only the containment structure, not the LR conditions.
    pub fn from_chain_unchecked(inner: Partition, chain: Vec<Partition>) -> Result<Self> {
        match chain.first() {
            None => return Err(Error::InvalidTableau("chain is empty".into())),
            Some(first) if *first != inner => {
                return Err(Error::InvalidTableau(format!(
                    "chain starts at {first}, expected the inner shape {inner}"
                )))
            }
            _ => {}
        }
        let chain = PartitionChain::new(chain)?;
        let mut steps = chain.steps().to_vec();
        while steps.len() > 1 && steps[steps.len() - 1] == steps[steps.len() - 2] {
            steps.pop();
        }
        Ok(LrTableau {
            inner,
            chain: steps,
        })
    }

    /// Builds a tableau from `(row, column, entry)` triples covering
    /// `outer ∖ inner` exactly, then validates it.
    pub fn from_cells(
        outer: &Partition,
        inner: &Partition,
        cells: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let skew = SkewShape::new(outer.clone(), inner.clone())?;
        let expected = skew.cells();
        let mut sorted: Vec<(usize, usize, usize)> = cells.to_vec();
        sorted.sort_by_key(|&(w, c, _)| (c, w));
        let got: Vec<(usize, usize)> = sorted.iter().map(|&(w, c, _)| (w, c)).collect();
        if got != expected {
            return Err(Error::InvalidTableau(format!(
                "cells do not cover {skew} exactly"
            )));
        }
        if let Some(&(w, c, _)) = sorted.iter().find(|&&(_, _, e)| e == 0) {
            return Err(Error::InvalidTableau(format!(
                "cell ({w}, {c}) holds 0, entries start at 1"
            )));
        }
        for pair in sorted.windows(2) {
            let ((w0, c0, e0), (_, c1, e1)) = (pair[0], pair[1]);
            if c0 == c1 && e0 >= e1 {
                return Err(Error::InvalidTableau(format!(
                    "column {c0} does not strictly increase below cell ({w0}, {c0})"
                )));
            }
        }
        let max = sorted.iter().map(|&(_, _, e)| e).max().unwrap_or(0);
        let mut chain = vec![inner.clone()];
        for e in 1..=max {
            let heights: Vec<usize> = (1..=outer.len())
                .map(|c| {
                    inner.part(c)
                        + sorted
                            .iter()
                            .filter(|&&(_, cc, x)| cc == c && x <= e)
                            .count()
                })
                .collect();
            let step = Partition::new(heights.into_iter().filter(|&h| h > 0).collect())
                .map_err(|_| {
                    Error::InvalidTableau(format!(
                        "rows are not weakly increasing (entries ≤ {e} do not form a diagram)"
                    ))
                })?;
            chain.push(step);
        }
        Self::from_chain(inner.clone(), chain)
    }

    /// The union of single-column tableaux: a column of height `h` carrying
    /// `Some(e)` has its bottom cell filled with `e`; `None` is an unfilled
    /// column. The result is not validated.
    pub fn from_columns(columns: &[(usize, Option<usize>)]) -> Self {
        columns
            .iter()
            .fold(LrTableau::empty(Partition::empty()), |acc, &(h, e)| {
                let col = match e {
                    None => LrTableau::empty(Partition::from_unsorted(vec![h])),
                    Some(e) => {
                        let lower = Partition::from_unsorted(vec![h - 1]);
                        let upper = Partition::from_unsorted(vec![h]);
                        let mut chain = vec![lower.clone(); e];
                        chain.push(upper);
                        LrTableau {
                            inner: lower,
                            chain,
                        }
                    }
                };
                acc.union(&col)
            })
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn outer(&self) -> &Partition {
        self.chain.last().expect("chain is never empty")
    }

    /// The stored chain, starting at the inner shape.
    pub fn chain(&self) -> &[Partition] {
        &self.chain
    }

    pub fn to_chain(&self) -> PartitionChain {
        PartitionChain::new(self.chain.clone()).expect("stored chains are increasing")
    }

    /// `γ⁽ᵉ⁾`, padded with the outer shape.
    pub fn step(&self, e: usize) -> &Partition {
        self.chain.get(e).unwrap_or_else(|| self.outer())
    }

    /// Largest entry used (0 for the empty tableau).
    pub fn max_entry(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn size(&self) -> usize {
        self.outer().weight() - self.inner.weight()
    }

    pub fn skew(&self) -> SkewShape {
        SkewShape {
            outer: self.outer().clone(),
            inner: self.inner.clone(),
        }
    }

    pub fn is_rook_strip(&self) -> bool {
        self.skew().is_rook_strip()
    }

    /// Entry in cell `(row, column)`, if that cell lies in the skew shape.
    pub fn entry_at(&self, row: usize, col: usize) -> Option<usize> {
        if row <= self.inner.part(col) || row > self.outer().part(col) {
            return None;
        }
        (1..self.chain.len()).find(|&e| self.chain[e].part(col) >= row)
    }

    /// `(row, column, entry)` for every cell, column by column from the left.
    pub fn cells(&self) -> Vec<(usize, usize, usize)> {
        self.skew()
            .cells()
            .into_iter()
            .map(|(w, c)| (w, c, self.entry_at(w, c).expect("cell in skew shape")))
            .collect()
    }

    /// Cells in reading order: columns from the right, each top-down.
    pub fn reading_cells(&self) -> Vec<(usize, usize, usize)> {
        let mut cells = self.cells();
        cells.sort_by_key(|&(w, c, _)| (std::cmp::Reverse(c), w));
        cells
    }

    /// The reading word `τ`: entries in reading order.
    pub fn reading_word(&self) -> Vec<usize> {
        self.reading_cells().into_iter().map(|(_, _, e)| e).collect()
    }

    /// Number of cells carrying each entry `1..=max_entry`.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.chain
            .windows(2)
            .map(|w| w[1].weight() - w[0].weight())
            .collect()
    }

    /// The content `α`: its transpose lists the entry multiplicities.
    pub fn content(&self) -> Partition {
        Partition::from_unsorted(self.multiplicities()).transpose()
    }

    /// Checks the LR conditions; the error names the first violated one.
    pub fn validate(&self) -> Result<()> {
        if self.chain.first() != Some(&self.inner) {
            return Err(Error::InvalidTableau(
                "chain does not start at the inner shape".into(),
            ));
        }
        for (e, w) in self.chain.windows(2).enumerate() {
            if !w[1].contains(&w[0]) {
                return Err(Error::InvalidTableau(format!(
                    "step {} does not contain step {e}",
                    e + 1
                )));
            }
            let strip = SkewShape {
                outer: w[1].clone(),
                inner: w[0].clone(),
            };
            if !strip.is_horizontal_strip() {
                let c = (1..=w[1].len())
                    .find(|&c| w[1].part(c) > w[0].part(c) + 1)
                    .unwrap_or(0);
                return Err(Error::InvalidTableau(format!(
                    "columns must strictly increase: column {c} holds entry {} twice",
                    e + 1
                )));
            }
        }
        let mut counts = vec![0usize; self.chain.len() + 1];
        for (w, c, e) in self.reading_cells() {
            counts[e] += 1;
            if e > 1 && counts[e] > counts[e - 1] {
                return Err(Error::InvalidTableau(format!(
                    "lattice property fails at cell ({w}, {c}): more entries {e} than {} so far",
                    e - 1
                )));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Chain-wise row-wise union, padding the shorter chain.
    pub fn union(&self, other: &LrTableau) -> LrTableau {
        let len = self.chain.len().max(other.chain.len());
        let chain: Vec<Partition> = (0..len)
            .map(|e| self.step(e).union(other.step(e)))
            .collect();
        LrTableau::from_chain_unchecked(chain[0].clone(), chain).expect("union of chains")
    }

    /// Every LR tableau on the rook strip `outer ∖ inner`, ordered by chain.
    pub fn enumerate_rook(outer: &Partition, inner: &Partition) -> Result<Vec<LrTableau>> {
        let skew = SkewShape::new(outer.clone(), inner.clone())?;
        if !skew.is_rook_strip() {
            return Err(Error::NotRookStrip {
                outer: outer.to_string(),
                inner: inner.to_string(),
            });
        }
        let mut positions = skew.cells();
        positions.sort_by_key(|&(w, c)| (std::cmp::Reverse(c), w));
        let r = positions.len();
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(r);
        let mut counts = vec![0usize; r + 2];
        ballot_words(r, &mut word, &mut counts, &mut |word| {
            let cells: Vec<(usize, usize, usize)> = positions
                .iter()
                .zip(word)
                .map(|(&(w, c), &e)| (w, c, e))
                .collect();
            out.push(LrTableau::from_cells(outer, inner, &cells).expect("ballot filling of a rook strip"));
        });
        out.sort();
        Ok(out)
    }

    /// Row-by-row picture, `.` for inner cells and `#` outside the inner
    /// shape but not filled; for debugging and the CLI.
    pub fn picture(&self) -> String {
        let outer = self.outer();
        let rows = outer.part(1);
        let mut lines = Vec::with_capacity(rows);
        for w in 1..=rows {
            let line: Vec<String> = (1..=outer.len())
                .filter(|&c| outer.part(c) >= w)
                .map(|c| match self.entry_at(w, c) {
                    Some(e) => e.to_string(),
                    None => ".".to_string(),
                })
                .collect();
            lines.push(line.join(" "));
        }
        lines.join("\n")
    }
}

/// Calls `f` on every lattice word of length `r`, in lexicographic order.
fn ballot_words(
    r: usize,
    word: &mut Vec<usize>,
    counts: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if word.len() == r {
        f(word);
        return;
    }
    for e in 1..=r {
        if e > 1 && counts[e - 1] <= counts[e] {
            if counts[e - 1] == 0 {
                break;
            }
            continue;
        }
        counts[e] += 1;
        word.push(e);
        ballot_words(r, word, counts, f);
        word.pop();
        counts[e] -= 1;
    }
}

impl fmt::Display for LrTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.inner)?;
        for step in &self.chain[1..] {
            write!(f, " {step}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Rook tableau on `outer ∖ inner` with the given entries per column,
    /// `0` for columns without a skew cell.
    fn by_columns(outer: &[usize], inner: &[usize], entries: &[usize]) -> Result<LrTableau> {
        let outer = p(outer);
        let inner = p(inner);
        let cells: Vec<(usize, usize, usize)> = entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (outer.part(i + 1), i + 1, e))
            .collect();
        LrTableau::from_cells(&outer, &inner, &cells)
    }

    fn staircase_pair() -> (LrTableau, LrTableau) {
        let delta = by_columns(&[5, 4, 3, 2, 1], &[4, 3, 2, 1], &[2, 3, 1, 2, 1]).unwrap();
        let gamma = by_columns(&[5, 4, 3, 2, 1], &[4, 3, 2, 1], &[2, 2, 1, 1, 1]).unwrap();
        (delta, gamma)
    }

    #[test]
    fn staircase_chains_and_contents() {
        let (delta, gamma) = staircase_pair();
        let g = p(&[4, 3, 2, 1]);
        let b = p(&[5, 4, 3, 2, 1]);
        assert_eq!(
            delta.chain(),
            &[g.clone(), p(&[4, 3, 3, 1, 1]), p(&[5, 3, 3, 2, 1]), b.clone()]
        );
        assert_eq!(gamma.chain(), &[g.clone(), p(&[4, 3, 3, 2, 1]), b.clone()]);
        assert_eq!(delta.content(), p(&[3, 2]));
        assert_eq!(gamma.content(), p(&[2, 2, 1]));
        assert_eq!(delta.step(5), &b);
        let padded = vec![g.clone(), p(&[4, 3, 3, 2, 1]), b.clone(), b.clone(), b.clone(), b.clone()];
        assert_eq!(LrTableau::from_chain(g, padded).unwrap(), gamma);
    }

    #[test]
    fn validation_failures() {
        let err = by_columns(&[2, 1], &[1], &[1, 1]);
        assert!(err.is_ok());
        // two equal entries in one column
        let t = LrTableau::from_chain_unchecked(p(&[1]), vec![p(&[1]), p(&[3])]).unwrap();
        assert!(t.validate().unwrap_err().to_string().contains("column 1"));
        // lattice: a 2 read before any 1
        let t = by_columns(&[2, 1], &[1], &[1, 2]);
        assert!(t.unwrap_err().to_string().contains("lattice"));
        assert!(LrTableau::from_chain(p(&[1]), vec![p(&[2])]).is_err());
    }

    #[test]
    fn empty_tableau() {
        let t = LrTableau::empty(p(&[2, 1]));
        assert!(t.is_valid());
        assert_eq!(t.content(), Partition::empty());
        assert_eq!(t.reading_word(), Vec::<usize>::new());
        assert_eq!(t.chain().len(), 1);
    }

    #[test]
    fn reading_words_of_six_cell_examples() {
        let outer = [6, 5, 4, 3, 2, 1];
        let inner = [5, 4, 3, 2, 1];
        // columns listed left to right: the reading word is the reverse
        let delta = by_columns(&outer, &inner, &[1, 3, 2, 2, 1, 1]).unwrap();
        let gamma = by_columns(&outer, &inner, &[2, 3, 2, 1, 1, 1]).unwrap();
        assert_eq!(delta.reading_word(), vec![1, 1, 2, 2, 3, 1]);
        assert_eq!(gamma.reading_word(), vec![1, 1, 1, 2, 3, 2]);
    }

    #[test]
    fn enumerate_small_rook_strips() {
        let one = LrTableau::enumerate_rook(&p(&[1]), &Partition::empty()).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].reading_word(), vec![1]);
        let none = LrTableau::enumerate_rook(&p(&[2, 1]), &p(&[2, 1])).unwrap();
        assert_eq!(none.len(), 1);
        assert!(LrTableau::enumerate_rook(&p(&[2]), &Partition::empty()).is_err());
        let (delta, gamma) = staircase_pair();
        let all = LrTableau::enumerate_rook(&p(&[5, 4, 3, 2, 1]), &p(&[4, 3, 2, 1])).unwrap();
        assert!(all.contains(&delta) && all.contains(&gamma));
        // ballot words of length 5 = involutions of 5
        assert_eq!(all.len(), 26);
    }

    #[test]
    fn union_and_columns() {
        let (delta, _) = staircase_pair();
        let cols = LrTableau::from_columns(&[(5, Some(2)), (4, Some(3)), (3, Some(1)), (2, Some(2)), (1, Some(1))]);
        assert_eq!(cols, delta);
        let e = LrTableau::empty(Partition::empty());
        assert_eq!(delta.union(&e), delta);
        assert_eq!(
            delta.union(&delta).content().weight(),
            2 * delta.content().weight()
        );
    }

    #[test]
    fn json_round_trip() {
        let (delta, _) = staircase_pair();
        let json = serde_json::to_string(&delta).unwrap();
        assert!(json.starts_with(r#"{"inner":[4,3,2,1],"chain":[[4,3,2,1],"#));
        let back: LrTableau = serde_json::from_str(&json).unwrap();
        assert_eq!(back, delta);
    }
}
