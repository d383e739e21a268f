use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A saturating-or-not chain of partitions, weakly increasing under
/// containment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionChain {
    steps: Vec<Partition>,
}

impl PartitionChain {
    pub fn new(steps: Vec<Partition>) -> Result<Self> {
        for (i, w) in steps.windows(2).enumerate() {
            if !w[1].contains(&w[0]) {
                return Err(Error::InvalidTableau(format!(
                    "chain step {} = {} does not contain step {} = {}",
                    i + 1,
                    w[1],
                    i,
                    w[0]
                )));
            }
        }
        Ok(PartitionChain { steps })
    }

    pub fn steps(&self) -> &[Partition] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> Option<&Partition> {
        self.steps.last()
    }

    /// Saturated from the empty partition: step `e` has weight `e + 1`.
    pub fn is_saturated(&self) -> bool {
        self.steps.iter().enumerate().all(|(i, p)| p.weight() == i + 1)
    }
}

/// A standard Young tableau stored by rows; `shape` holds column heights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSyt", into = "RawSyt")]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawSyt {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl TryFrom<RawSyt> for StandardTableau {
    type Error = Error;
    fn try_from(raw: RawSyt) -> Result<Self> {
        let t = StandardTableau::from_parts(raw.shape, raw.rows);
        t.validate()?;
        Ok(t)
    }
}

impl From<StandardTableau> for RawSyt {
    fn from(t: StandardTableau) -> Self {
        RawSyt {
            shape: t.shape,
            rows: t.rows,
        }
    }
}

impl StandardTableau {
    /// Stores the data as given; call [`validate`](Self::validate) to check.
    pub fn from_parts(shape: Partition, rows: Vec<Vec<usize>>) -> Self {
        StandardTableau { shape, rows }
    }

    /// Builds a tableau from its rows, deriving the shape.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let lengths: Vec<usize> = rows.iter().map(Vec::len).collect();
        let row_shape = Partition::new(lengths).map_err(|_| {
            Error::InvalidTableau(format!("row lengths of {rows:?} are not weakly decreasing"))
        })?;
        let t = StandardTableau {
            shape: row_shape.transpose(),
            rows,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Checks every SYT condition; the error names the offending cell.
    pub fn validate(&self) -> Result<()> {
        let r = self.size();
        let mut seen = vec![false; r + 1];
        for (w, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidTableau(format!("row {} is empty", w + 1)));
            }
            for (c, &x) in row.iter().enumerate() {
                if x == 0 || x > r || seen[x] {
                    return Err(Error::InvalidTableau(format!(
                        "cell ({}, {}) holds {x}, entries must be 1..{r} without repeats",
                        w + 1,
                        c + 1
                    )));
                }
                seen[x] = true;
                if c > 0 && row[c - 1] >= x {
                    return Err(Error::InvalidTableau(format!(
                        "row {} does not increase at cell ({}, {})",
                        w + 1,
                        w + 1,
                        c + 1
                    )));
                }
                if w > 0 {
                    match self.rows[w - 1].get(c) {
                        None => {
                            return Err(Error::InvalidTableau(format!(
                                "cell ({}, {}) has no cell above it",
                                w + 1,
                                c + 1
                            )))
                        }
                        Some(&above) if above >= x => {
                            return Err(Error::InvalidTableau(format!(
                                "column {} does not increase at cell ({}, {})",
                                c + 1,
                                w + 1,
                                c + 1
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }
        let row_lengths = Partition::from_unsorted(self.rows.iter().map(Vec::len).collect());
        if row_lengths.transpose() != self.shape {
            return Err(Error::InvalidTableau(format!(
                "shape {} does not match the rows (column heights {})",
                self.shape,
                row_lengths.transpose()
            )));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// 1-based row holding `entry`.
    pub fn row_of(&self, entry: usize) -> Option<usize> {
        self.rows
            .iter()
            .position(|row| row.contains(&entry))
            .map(|w| w + 1)
    }

    /// `[σ⁽¹⁾, …, σ⁽ʳ⁾]`: `σ⁽ᵉ⁾` is the shape filled by the entries `≤ e`.
    pub fn to_chain(&self) -> PartitionChain {
        let r = self.size();
        let mut column_of = vec![0; r + 1];
        for row in &self.rows {
            for (c, &x) in row.iter().enumerate() {
                column_of[x] = c;
            }
        }
        let mut heights: Vec<usize> = Vec::new();
        let mut steps = Vec::with_capacity(r);
        for &c in &column_of[1..] {
            if c == heights.len() {
                heights.push(1);
            } else {
                heights[c] += 1;
            }
            steps.push(Partition::from_unsorted(heights.clone()));
        }
        PartitionChain { steps }
    }

    /// Inverse of [`to_chain`](Self::to_chain); the chain must start at a
    /// single cell and add one cell per step.
    pub fn from_chain(chain: &PartitionChain) -> Result<Self> {
        if !chain.is_saturated() {
            return Err(Error::InvalidTableau(
                "chain is not saturated from the empty partition".into(),
            ));
        }
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut prev = Partition::empty();
        for (i, step) in chain.steps().iter().enumerate() {
            let col = (1..=step.len())
                .find(|&c| step.part(c) != prev.part(c))
                .ok_or_else(|| Error::Internal("saturated step adds no cell".into()))?;
            let row = step.part(col);
            if rows.len() < row {
                rows.resize(row, Vec::new());
            }
            if rows[row - 1].len() != col - 1 {
                return Err(Error::InvalidTableau(format!(
                    "step {} adds cell ({row}, {col}) out of order",
                    i + 1
                )));
            }
            rows[row - 1].push(i + 1);
            prev = step.clone();
        }
        let t = StandardTableau {
            shape: prev,
            rows,
        };
        t.validate()?;
        Ok(t)
    }

    /// All standard tableaux of the given shape, ordered by chain.
    pub fn enumerate(shape: &Partition) -> Vec<StandardTableau> {
        fn go(
            cur: &Partition,
            target: &Partition,
            steps: &mut Vec<Partition>,
            out: &mut Vec<StandardTableau>,
        ) {
            if cur == target {
                let chain = PartitionChain {
                    steps: steps.clone(),
                };
                out.push(StandardTableau::from_chain(&chain).expect("saturated chain"));
                return;
            }
            for i in 1..=cur.len() + 1 {
                if let Some(next) = cur.add_cell(i) {
                    if target.contains(&next) {
                        steps.push(next.clone());
                        go(&next, target, steps, out);
                        steps.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        if shape.is_empty() {
            return out;
        }
        go(&Partition::empty(), shape, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// `T_r`: every standard tableau with `r` cells, ordered by chain.
    pub fn enumerate_weight(r: usize) -> Vec<StandardTableau> {
        let mut out: Vec<StandardTableau> = Partition::all_of_weight(r)
            .iter()
            .flat_map(StandardTableau::enumerate)
            .collect();
        out.sort();
        debug_assert_eq!(out.iter().collect::<HashSet<_>>().len(), out.len());
        out
    }

    /// Compact row form such as `124|35`.
    pub fn row_string(&self) -> String {
        self.rows
            .iter()
            .map(|row| {
                let sep = if self.size() > 9 { "," } else { "" };
                row.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl PartialOrd for StandardTableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the chain encoding.
impl Ord for StandardTableau {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_chain()
            .cmp(&other.to_chain())
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.row_string().replace('|', ","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn syt(rows: &[&[usize]]) -> StandardTableau {
        StandardTableau::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validate_examples() {
        let sigma = StandardTableau::from_parts(
            p(&[3, 2, 2]),
            vec![vec![1, 2, 4], vec![3, 6, 7], vec![5]],
        );
        assert!(sigma.validate().is_ok());
        assert!(StandardTableau::from_parts(p(&[1]), vec![vec![1]]).is_valid());
        let bad = StandardTableau::from_parts(p(&[1, 1]), vec![vec![2, 1]]);
        let err = bad.validate().unwrap_err().to_string();
        assert!(err.contains("(1, 2)"), "{err}");
    }

    #[test]
    fn validate_catches_columns_and_shape() {
        let t = StandardTableau::from_parts(p(&[2, 1]), vec![vec![2, 3], vec![1]]);
        assert!(t.validate().unwrap_err().to_string().contains("column 1"));
        let t = StandardTableau::from_parts(p(&[3]), vec![vec![1, 2], vec![3]]);
        assert!(t.validate().is_err());
        let t = StandardTableau::from_parts(p(&[1, 1]), vec![vec![1, 1]]);
        assert!(t.validate().is_err());
    }

    #[test]
    fn chain_of_seven_cell_example() {
        let sigma = syt(&[&[1, 2, 4], &[3, 6, 7], &[5]]);
        let expected: Vec<Partition> = [
            &[1][..],
            &[1, 1],
            &[2, 1],
            &[2, 1, 1],
            &[3, 1, 1],
            &[3, 2, 1],
            &[3, 2, 2],
        ]
        .iter()
        .map(|v| p(v))
        .collect();
        assert_eq!(sigma.to_chain().steps(), &expected[..]);
        assert_eq!(StandardTableau::from_chain(&sigma.to_chain()).unwrap(), sigma);
    }

    #[test]
    fn chain_of_five_cell_example() {
        let pi = syt(&[&[1, 3], &[2, 5], &[4]]);
        let expected: Vec<Partition> = [&[1][..], &[2], &[2, 1], &[3, 1], &[3, 2]]
            .iter()
            .map(|v| p(v))
            .collect();
        assert_eq!(pi.to_chain().steps(), &expected[..]);
        let single = syt(&[&[1]]);
        assert_eq!(single.to_chain().steps(), &[p(&[1])]);
    }

    #[test]
    fn rejects_unsaturated_chain() {
        let chain = PartitionChain::new(vec![p(&[1]), p(&[2, 1])]).unwrap();
        assert!(StandardTableau::from_chain(&chain).is_err());
        assert!(PartitionChain::new(vec![p(&[2]), p(&[1])]).is_err());
    }

    #[test]
    fn single_row_and_column() {
        assert_eq!(StandardTableau::enumerate(&p(&[1, 1, 1, 1])).len(), 1);
        assert_eq!(StandardTableau::enumerate(&p(&[4])).len(), 1);
        assert_eq!(StandardTableau::enumerate(&p(&[2, 1])).len(), 2);
    }

    #[test]
    fn json_shape() {
        let t = syt(&[&[1, 2], &[3]]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"shape":[2,1],"rows":[[1,2],[3]]}"#);
        let back: StandardTableau = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<StandardTableau>(r#"{"shape":[2],"rows":[[2,1]]}"#).is_err());
    }
}
