//! Dominance and box orders on standard tableaux and rook-strip LR
//! tableaux, the square embedding `f`, the bijection `Φ`, and relation
//! tables with Hasse diagrams.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::tableau::{LrTableau, PartitionChain, StandardTableau};

/// One decreasing box move.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoveRecord {
    /// Entries `smaller < larger` trade places; `smaller` lands lower.
    Swap { smaller: usize, larger: usize },
    /// The last box of `from_row` (holding `entry`) goes to the end of `to_row`.
    Wind {
        entry: usize,
        from_row: usize,
        to_row: usize,
    },
    /// Entries in two cells trade places; the smaller ends in the lower cell.
    LrSwap { smaller: usize, larger: usize },
    /// The entry in `column` goes from `old` to `new`.
    LrIncrease {
        column: usize,
        old: usize,
        new: usize,
    },
}

pub fn dom_leq_syt(pi: &StandardTableau, sigma: &StandardTableau) -> Result<bool> {
    if pi.size() != sigma.size() {
        return Err(Error::WeightMismatch {
            left: pi.size(),
            right: sigma.size(),
        });
    }
    let (a, b) = (pi.to_chain(), sigma.to_chain());
    for (x, y) in a.steps().iter().zip(b.steps()) {
        if !x.nat_leq_same_weight(y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every tableau one decreasing move below `sigma`.
pub fn box_moves_syt(sigma: &StandardTableau) -> Vec<(StandardTableau, MoveRecord)> {
    let mut out = swap_moves_syt(sigma);
    let rows = sigma.rows();
    for a in 0..rows.len() {
        let entry = *rows[a].last().expect("rows are nonempty");
        for b in a + 1..=rows.len() {
            let mut new_rows = rows.to_vec();
            new_rows[a].pop();
            if b == rows.len() {
                new_rows.push(vec![entry]);
            } else {
                new_rows[b].push(entry);
            }
            while new_rows.last().is_some_and(Vec::is_empty) {
                new_rows.pop();
            }
            if let Ok(t) = StandardTableau::from_rows(new_rows) {
                out.push((
                    t,
                    MoveRecord::Wind {
                        entry,
                        from_row: a + 1,
                        to_row: b + 1,
                    },
                ));
            }
        }
    }
    out
}

/// The shape-preserving part of [`box_moves_syt`].
pub fn swap_moves_syt(sigma: &StandardTableau) -> Vec<(StandardTableau, MoveRecord)> {
    let r = sigma.size();
    let mut pos = vec![(0, 0); r + 1];
    for (w, row) in sigma.rows().iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            pos[x] = (w, c);
        }
    }
    let mut out = Vec::new();
    for x in 1..=r {
        for y in x + 1..=r {
            let ((wx, cx), (wy, cy)) = (pos[x], pos[y]);
            if wx >= wy {
                continue;
            }
            let mut rows = sigma.rows().to_vec();
            rows[wx][cx] = y;
            rows[wy][cy] = x;
            let t = StandardTableau::from_parts(sigma.shape().clone(), rows);
            if t.is_valid() {
                out.push((
                    t,
                    MoveRecord::Swap {
                        smaller: x,
                        larger: y,
                    },
                ));
            }
        }
    }
    out
}

/// Breadth-first closure below `start`; each reached element maps to its
/// BFS parent and the move from that parent.
pub fn down_closure<T, F>(start: &T, moves: F) -> HashMap<T, Option<(T, MoveRecord)>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T) -> Vec<(T, MoveRecord)>,
{
    let mut seen: HashMap<T, Option<(T, MoveRecord)>> = HashMap::new();
    seen.insert(start.clone(), None);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(x) = queue.pop_front() {
        for (y, mv) in moves(&x) {
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), Some((x.clone(), mv)));
                queue.push_back(y);
            }
        }
    }
    seen
}

/// The moves leading from the start of `closure` down to `target`.
pub fn witness_path<T: Clone + Eq + Hash>(
    closure: &HashMap<T, Option<(T, MoveRecord)>>,
    target: &T,
) -> Option<Vec<(MoveRecord, T)>> {
    let mut path = Vec::new();
    let mut cur = target.clone();
    loop {
        match closure.get(&cur)? {
            None => break,
            Some((parent, mv)) => {
                path.push((mv.clone(), cur.clone()));
                cur = parent.clone();
            }
        }
    }
    path.reverse();
    Some(path)
}

pub fn box_leq_syt(pi: &StandardTableau, sigma: &StandardTableau) -> bool {
    box_path_syt(pi, sigma).is_some()
}

/// A shortest move sequence taking `sigma` down to `pi`.
pub fn box_path_syt(
    pi: &StandardTableau,
    sigma: &StandardTableau,
) -> Option<Vec<(MoveRecord, StandardTableau)>> {
    if pi.size() != sigma.size() {
        return None;
    }
    let closure = down_closure(sigma, box_moves_syt);
    witness_path(&closure, pi)
}

/// Extends the chain of `pi ∈ T_r` to a standard tableau of the square shape
/// `(r, …, r)`, adding one cell per step to the row just below the rows that
/// are already full.
pub fn f_embed(pi: &StandardTableau) -> Result<StandardTableau> {
    let r = pi.size();
    let mut steps = pi.to_chain().steps().to_vec();
    let mut cur = steps.last().cloned().unwrap_or_default();
    for s in 1..=r * r - r {
        let rows = cur.transpose();
        let j = (1..=rows.len()).filter(|&i| rows.part(i) == r).max().unwrap_or(0);
        let full_rows = rows.parts().iter().filter(|&&len| len == r).count();
        if j != full_rows || j >= r {
            return Err(Error::Internal(format!(
                "step {s}: last full row {j} disagrees with the {full_rows} full rows"
            )));
        }
        let mut lengths = rows.into_parts();
        if j == lengths.len() {
            lengths.push(1);
        } else {
            lengths[j] += 1;
        }
        let next = Partition::new(lengths)
            .map_err(|e| Error::Internal(format!("step {s} leaves the partitions: {e}")))?
            .transpose();
        if !next.contains(&cur) || next.weight() != cur.weight() + 1 {
            return Err(Error::Internal(format!(
                "step {s}: {next} is not a one-cell extension of {cur}"
            )));
        }
        steps.push(next.clone());
        cur = next;
    }
    let chain = PartitionChain::new(steps)?;
    let t = StandardTableau::from_chain(&chain)
        .map_err(|e| Error::Internal(format!("extended chain is not a tableau: {e}")))?;
    if *t.shape() != Partition::square(r) {
        return Err(Error::Internal(format!("extension ends at {}", t.shape())));
    }
    Ok(t)
}

fn check_same_skew(a: &LrTableau, b: &LrTableau) -> Result<()> {
    if a.inner() != b.inner() || a.outer() != b.outer() {
        return Err(Error::Precondition(format!(
            "tableaux live on different shapes {} and {}",
            a.skew(),
            b.skew()
        )));
    }
    Ok(())
}

/// `δ⁽ⁱ⁾ ≤ γ⁽ⁱ⁾` in the general natural order for every `i`, with padding.
pub fn dom_leq_lr(delta: &LrTableau, gamma: &LrTableau) -> Result<bool> {
    check_same_skew(delta, gamma)?;
    let len = delta.chain().len().max(gamma.chain().len());
    Ok((0..len).all(|i| delta.step(i).nat_leq(gamma.step(i))))
}

/// Every LR tableau one decreasing move below `gamma`.
pub fn box_moves_lr(gamma: &LrTableau) -> Vec<(LrTableau, MoveRecord)> {
    let outer = gamma.outer();
    let inner = gamma.inner();
    let cells = gamma.cells();
    let r = gamma.size();
    let mut out = Vec::new();
    for (a, &(wa, ca, ea)) in cells.iter().enumerate() {
        for (b, &(wb, cb, eb)) in cells.iter().enumerate() {
            if wa < wb && ea < eb {
                let mut new_cells = cells.clone();
                new_cells[a] = (wa, ca, eb);
                new_cells[b] = (wb, cb, ea);
                if let Ok(t) = LrTableau::from_cells(outer, inner, &new_cells) {
                    out.push((
                        t,
                        MoveRecord::LrSwap {
                            smaller: ea,
                            larger: eb,
                        },
                    ));
                }
            }
        }
        for f in ea + 1..=r {
            let mut new_cells = cells.clone();
            new_cells[a] = (wa, ca, f);
            if let Ok(t) = LrTableau::from_cells(outer, inner, &new_cells) {
                out.push((
                    t,
                    MoveRecord::LrIncrease {
                        column: ca,
                        old: ea,
                        new: f,
                    },
                ));
            }
        }
    }
    out
}

/// Only the entry-increasing moves of [`box_moves_lr`].
pub fn increase_moves_lr(gamma: &LrTableau) -> Vec<(LrTableau, MoveRecord)> {
    box_moves_lr(gamma)
        .into_iter()
        .filter(|(_, m)| matches!(m, MoveRecord::LrIncrease { .. }))
        .collect()
}

pub fn box_leq_lr(delta: &LrTableau, gamma: &LrTableau) -> bool {
    box_path_lr(delta, gamma).is_some()
}

pub fn box_path_lr(delta: &LrTableau, gamma: &LrTableau) -> Option<Vec<(MoveRecord, LrTableau)>> {
    if check_same_skew(delta, gamma).is_err() {
        return None;
    }
    let closure = down_closure(gamma, box_moves_lr);
    witness_path(&closure, delta)
}

fn rook_check(t: &LrTableau) -> Result<()> {
    if !t.is_rook_strip() {
        return Err(Error::NotRookStrip {
            outer: t.outer().to_string(),
            inner: t.inner().to_string(),
        });
    }
    Ok(())
}

/// `Φ`: row `i` of the result lists the reading positions holding `i`.
pub fn phi(gamma: &LrTableau) -> Result<StandardTableau> {
    rook_check(gamma)?;
    let word = gamma.reading_word();
    let rows = (1..=gamma.max_entry())
        .map(|i| {
            (1..=word.len())
                .filter(|&j| word[j - 1] == i)
                .collect::<Vec<_>>()
        })
        .filter(|row| !row.is_empty())
        .collect();
    StandardTableau::from_rows(rows)
}

/// The LR tableau on `beta ∖ gamma` whose reading position `j` holds the
/// row of `j` in `t`; fails if that filling is not an LR tableau.
pub fn phi_inverse(t: &StandardTableau, beta: &Partition, gamma: &Partition) -> Result<LrTableau> {
    let empty = LrTableau::empty(beta.clone());
    let skew = crate::partition::SkewShape::new(beta.clone(), gamma.clone())?;
    if !skew.is_rook_strip() {
        return Err(Error::NotRookStrip {
            outer: beta.to_string(),
            inner: gamma.to_string(),
        });
    }
    if skew.size() != t.size() {
        return Err(Error::WeightMismatch {
            left: skew.size(),
            right: t.size(),
        });
    }
    if skew.size() == 0 {
        return Ok(empty);
    }
    let mut positions = skew.cells();
    positions.sort_by_key(|&(w, c)| (std::cmp::Reverse(c), w));
    let cells: Vec<(usize, usize, usize)> = positions
        .iter()
        .enumerate()
        .map(|(j, &(w, c))| (w, c, t.row_of(j + 1).expect("entries 1..r")))
        .collect();
    LrTableau::from_cells(beta, gamma, &cells)
}

/// A finite relation on an indexed list, `leq[i][j]` meaning `elements[i] ≤
/// elements[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTable<T> {
    pub elements: Vec<T>,
    pub leq: Vec<Vec<bool>>,
}

impl<T: Sync> RelationTable<T> {
    /// Evaluates `leq` on every ordered pair, rows in parallel.
    pub fn build<F>(elements: Vec<T>, leq: F) -> Self
    where
        F: Fn(&T, &T) -> bool + Sync,
    {
        let table = elements
            .par_iter()
            .map(|a| elements.iter().map(|b| leq(a, b)).collect())
            .collect();
        RelationTable {
            elements,
            leq: table,
        }
    }

    /// Builds from each element's down-set: `i ≤ j` iff `i` is in
    /// `below(j)`.
    pub fn from_down_sets<F, S>(elements: Vec<T>, below: F) -> Self
    where
        F: Fn(&T) -> S + Sync,
        S: Fn(&T) -> bool,
    {
        let columns: Vec<Vec<bool>> = elements
            .par_iter()
            .map(|b| {
                let down = below(b);
                elements.iter().map(down).collect()
            })
            .collect();
        let n = elements.len();
        let leq = (0..n).map(|i| (0..n).map(|j| columns[j][i]).collect()).collect();
        RelationTable { elements, leq }
    }
}

impl<T> RelationTable<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Checks reflexivity, antisymmetry and transitivity.
    pub fn check_poset(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.leq[i][i] {
                return Err(Error::NotPoset(format!("element {i} is not below itself")));
            }
            for j in 0..n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return Err(Error::NotPoset(format!("elements {i} and {j} are equivalent")));
                }
                if self.leq[i][j] {
                    if let Some(k) = (0..n).find(|&k| self.leq[j][k] && !self.leq[i][k]) {
                        return Err(Error::NotPoset(format!(
                            "{i} ≤ {j} ≤ {k} but not {i} ≤ {k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The first `(i, j)` in row-major order where the tables disagree.
    pub fn first_difference(&self, other: &RelationTable<T>) -> Option<(usize, usize)>
    where
        T: PartialEq,
    {
        if self.elements != other.elements {
            return Some((0, 0));
        }
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.leq[i][j] != other.leq[i][j])
    }

    /// Cover relations `(lower, upper)`, sorted; rejects non-posets.
    pub fn hasse(&self) -> Result<Vec<(usize, usize)>> {
        self.check_poset()?;
        let n = self.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && self.leq[i][j]
                    && !(0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j])
                {
                    edges.push((i, j));
                }
            }
        }
        Ok(edges)
    }
}

/// Short content hash used in DOT labels.
pub fn json_digest<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_vec(value).expect("serializable");
    Sha256::digest(&json)
        .iter()
        .take(4)
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// DOT text for the Hasse diagram, one edge `upper -> lower` per cover.
pub fn hasse_dot<T: Serialize>(
    table: &RelationTable<T>,
    name: &str,
    label: impl Fn(&T) -> String,
) -> Result<String> {
    let edges = table.hasse()?;
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    for (i, e) in table.elements.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{} {}\"];", json_digest(e), label(e)).unwrap();
    }
    for (lower, upper) in edges {
        writeln!(out, "  n{upper} -> n{lower};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

/// `T_r` under the box order.
pub fn box_table_syt(r: usize) -> RelationTable<StandardTableau> {
    RelationTable::from_down_sets(StandardTableau::enumerate_weight(r), |s| {
        let closure = down_closure(s, box_moves_syt);
        move |t: &StandardTableau| closure.contains_key(t)
    })
}

/// `T_r` under the dominance order.
pub fn dom_table_syt(r: usize) -> RelationTable<StandardTableau> {
    RelationTable::build(StandardTableau::enumerate_weight(r), |a, b| {
        dom_leq_syt(a, b).expect("equal weights")
    })
}

pub fn box_table_lr(elements: Vec<LrTableau>) -> RelationTable<LrTableau> {
    RelationTable::from_down_sets(elements, |g| {
        let closure = down_closure(g, box_moves_lr);
        move |t: &LrTableau| closure.contains_key(t)
    })
}

pub fn dom_table_lr(elements: Vec<LrTableau>) -> RelationTable<LrTableau> {
    RelationTable::build(elements, |a, b| dom_leq_lr(a, b).expect("common shape"))
}
