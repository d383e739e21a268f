//! Short exact sequences `0 → P(n') → D(m,n) → P(m') → 0` and their
//! variants, and the witness sequence for a single entry increase.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::embedding::{check_mn, gaps, pole_data, Embedding, PolyMatrix, ShortExactSequence};
use crate::error::{Error, Result};
use crate::linalg::PrimeField;
use crate::orders::MoveRecord;
use crate::partition::Partition;
use crate::tableau::LrTableau;

/// Which of the three constructions applies to `(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SesCase {
    /// Gap after `m_{r-1}` and `m_r > n_q + 1`.
    Gap,
    /// No gap after `m_{r-1}`, `m_r > n_q + 1`.
    NoGap1,
    /// Gap after `m_{r-1}`, `m_r = n_q + 1`.
    NoGap2,
}

/// The applicable case, `None` when `m_r = m_{r-1} + 1 = n_q + 2`.
pub fn classify(m: &[usize], n: &[usize]) -> Result<Option<SesCase>> {
    let (r, _) = check_mn(m, n)?;
    if r == 0 {
        return Err(Error::Precondition(format!("{m:?} needs at least two entries")));
    }
    let gap = m[r] > m[r - 1] + 1;
    let wide = n.last().is_none_or(|&nq| m[r] > nq + 1);
    Ok(match (gap, wide) {
        (true, true) => Some(SesCase::Gap),
        (false, true) => Some(SesCase::NoGap1),
        (true, false) => Some(SesCase::NoGap2),
        (false, false) => None,
    })
}

fn require_case(m: &[usize], n: &[usize], want: SesCase) -> Result<()> {
    match classify(m, n)? {
        Some(c) if c == want => Ok(()),
        got => Err(Error::Precondition(format!(
            "({m:?}, {n:?}) falls in case {got:?}, not {want:?}"
        ))),
    }
}

fn extended(n: &[usize], last: usize) -> Vec<usize> {
    let mut v = n.to_vec();
    v.push(last);
    v
}

fn finish(seq: ShortExactSequence) -> Result<ShortExactSequence> {
    seq.check_exact()?;
    Ok(seq)
}

/// `0 → P(n₀,…,n_q,m_r) → D(m,n) → P(m₀,…,m_{r−1}) → 0`.
pub fn ses_gap(field: PrimeField, m: &[usize], n: &[usize]) -> Result<ShortExactSequence> {
    require_case(m, n, SesCase::Gap)?;
    let r = m.len() - 1;
    let s = pole_data(m)?.len();
    let t = if n.is_empty() { 0 } else { pole_data(n)?.len() };
    let left = Embedding::pole(field, &extended(n, m[r]))?;
    let middle = Embedding::d_embedding(field, m, n)?;
    let right = Embedding::pole(field, &m[..r])?;
    let mut inject = PolyMatrix::zero(s + t, 1 + t);
    inject.add_term(1, 1, -1, 0);
    for j in 1..=t {
        inject.add_term(s + j, 1 + j, 1, 0);
    }
    let mut project = PolyMatrix::zero(s - 1, s + t);
    for j in 2..=s {
        project.add_term(j - 1, j, 1, 0);
    }
    finish(ShortExactSequence {
        left,
        middle,
        right,
        inject,
        project,
    })
}

/// `0 → P(n₀,…,n_q,m_r) → D(m,n) ⊕ E_(m_r) → P(m₀,…,m_{r−1}) → 0`.
pub fn ses_nogap1(field: PrimeField, m: &[usize], n: &[usize]) -> Result<ShortExactSequence> {
    require_case(m, n, SesCase::NoGap1)?;
    let r = m.len() - 1;
    let s = pole_data(m)?.len();
    let t = if n.is_empty() { 0 } else { pole_data(n)?.len() };
    let c = n.last().map_or(0, |&nq| m[r] - nq - 1);
    let left = Embedding::pole(field, &extended(n, m[r]))?;
    let middle = Embedding::d_embedding(field, m, n)?
        .direct_sum(&Embedding::empty(field, &Partition::new(vec![m[r]])?))?;
    let right = Embedding::pole(field, &m[..r])?;
    let e = s + t + 1;
    let mut inject = PolyMatrix::zero(e, 1 + t);
    inject.add_term(1, 1, -1, 0);
    inject.add_term(e, 1, 1, 0);
    for j in 1..=t {
        inject.add_term(s + j, 1 + j, 1, 0);
    }
    if t >= 1 {
        inject.add_term(e, 2, -1, c);
    }
    let mut project = PolyMatrix::zero(s, e);
    project.add_term(1, 1, 1, 0);
    for j in 2..=s {
        project.add_term(j, j, 1, 0);
    }
    if t >= 1 {
        project.add_term(1, s + 1, 1, c);
    }
    project.add_term(1, e, 1, 0);
    finish(ShortExactSequence {
        left,
        middle,
        right,
        inject,
        project,
    })
}

/// `0 → P(n₀,…,n_q,m_r) ⊕ E_(m_r) → D(m,n) → P(m₀,…,m_{r−1}) → 0`.
pub fn ses_nogap2(field: PrimeField, m: &[usize], n: &[usize]) -> Result<ShortExactSequence> {
    require_case(m, n, SesCase::NoGap2)?;
    let r = m.len() - 1;
    let q = n.len() - 1;
    if m[r] - (q + 1) != n[q] - q {
        return Err(Error::Internal(format!(
            "m_r − (q+1) = {} differs from n_q − q = {}",
            m[r] - (q + 1),
            n[q] - q
        )));
    }
    let s = pole_data(m)?.len();
    let t = pole_data(n)?.len();
    let pole = Embedding::pole(field, &extended(n, m[r]))?;
    if pole.ambient().components() != t {
        return Err(Error::Internal("left pole has an unexpected number of gaps".into()));
    }
    let left = pole.direct_sum(&Embedding::empty(field, &Partition::new(vec![m[r]])?))?;
    let middle = Embedding::d_embedding(field, m, n)?;
    let right = Embedding::pole(field, &m[..r])?;
    let mut inject = PolyMatrix::zero(s + t, t + 1);
    inject.add_term(1, 1, -1, 0);
    inject.add_term(s + 1, 1, 1, 0);
    for j in 2..=t {
        inject.add_term(s + j, j, 1, 0);
    }
    inject.add_term(s + 1, t + 1, 1, 0);
    let mut project = PolyMatrix::zero(s - 1, s + t);
    for j in 2..=s {
        project.add_term(j - 1, j, 1, 0);
    }
    finish(ShortExactSequence {
        left,
        middle,
        right,
        inject,
        project,
    })
}

/// Dispatches on [`classify`].
pub fn ses_for(field: PrimeField, m: &[usize], n: &[usize]) -> Result<(SesCase, ShortExactSequence)> {
    match classify(m, n)? {
        Some(SesCase::Gap) => Ok((SesCase::Gap, ses_gap(field, m, n)?)),
        Some(SesCase::NoGap1) => Ok((SesCase::NoGap1, ses_nogap1(field, m, n)?)),
        Some(SesCase::NoGap2) => Ok((SesCase::NoGap2, ses_nogap2(field, m, n)?)),
        None => Err(Error::Internal(format!(
            "({m:?}, {n:?}) has no gap after m_(r-1) and m_r = n_q + 1"
        ))),
    }
}

/// A verified sequence `0 → U ⊕ W → H ⊕ W → V → 0` with `LR(H ⊕ W) = Δ` and
/// `LR(U ⊕ W ⊕ V) = Γ`.
#[derive(Clone, Debug)]
pub struct ExtWitness {
    pub delta: LrTableau,
    pub case: SesCase,
    /// The `(m, n)` fed to the constructor.
    pub m: Vec<usize>,
    pub n: Vec<usize>,
    /// `i_1, …, i_m` and `j_1, …, j_{m'}`, both ending at the changed column.
    pub i_columns: Vec<usize>,
    pub j_columns: Vec<usize>,
    /// The unpadded sequence from the constructor.
    pub core: ShortExactSequence,
    pub padding: Embedding,
    pub sequence: ShortExactSequence,
}

impl ExtWitness {
    /// `U ⊕ V` for the padded sequence.
    pub fn end_sum(&self) -> Result<Embedding> {
        self.sequence.left.direct_sum(&self.sequence.right)
    }
}

type Columns = BTreeMap<usize, usize>;

fn is_ballot(cols: &Columns) -> bool {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &e in cols.values().rev() {
        let c = *counts.entry(e).and_modify(|c| *c += 1).or_insert(1);
        if e > 1 && c > counts.get(&(e - 1)).copied().unwrap_or(0) {
            return false;
        }
    }
    true
}

/// Every chain `c_{top-1} < … < c_1` of columns right of `start` with
/// `c_t` holding `t`, nearest columns first.
fn chains_right_of(cols: &Columns, start: usize, top: usize) -> Vec<Vec<usize>> {
    fn go(cols: &Columns, prev: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if t == 0 {
            out.push(cur.clone());
            return;
        }
        for (&c, &e) in cols.range(prev + 1..) {
            if e == t {
                cur.push(c);
                go(cols, c, t - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(cols, start, top - 1, &mut Vec::new(), &mut out);
    out
}

fn multiset_minus(mut from: Vec<usize>, take: &[usize]) -> Option<Vec<usize>> {
    for &x in take {
        let pos = from.iter().position(|&y| y == x)?;
        from.swap_remove(pos);
    }
    from.sort_unstable_by(|a, b| b.cmp(a));
    Some(from)
}

/// Realizes a rook-strip LR filling of some columns (with heights) plus
/// unfilled columns as a sum of poles and empties.
fn realize(field: PrimeField, filled: &[(usize, usize)], unfilled: &[usize]) -> Result<Embedding> {
    // filled: (height, entry) in reading order, right to left
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut last_touched: Vec<usize> = Vec::new();
    for (step, &(h, e)) in filled.iter().enumerate() {
        if e == 1 {
            chains.push(vec![h]);
            last_touched.push(step);
            continue;
        }
        let k = (0..chains.len())
            .filter(|&k| chains[k].len() == e - 1)
            .max_by_key(|&k| last_touched[k])
            .ok_or_else(|| Error::Internal(format!("entry {e} has no chain to extend")))?;
        chains[k].push(h);
        last_touched[k] = step;
    }
    let mut parts = Vec::new();
    for chain in &chains {
        let m: Vec<usize> = chain.iter().map(|&h| h - 1).collect();
        parts.push(Embedding::pole(field, &m)?);
        let gap_heights: Vec<usize> = gaps(&m).into_iter().map(|l| chain[l]).collect();
        let rest = multiset_minus(chain.clone(), &gap_heights).expect("gap heights are chain heights");
        if !rest.is_empty() {
            parts.push(Embedding::empty(field, &Partition::new(rest)?));
        }
    }
    if !unfilled.is_empty() {
        parts.push(Embedding::empty(field, &Partition::from_unsorted(unfilled.to_vec())));
    }
    Embedding::sum_all(field, &parts)
}

/// Builds and verifies the ext witness for the entry increase `mv` on the
/// rook-strip tableau `gamma`.
pub fn ext_witness_increase(field: PrimeField, gamma: &LrTableau, mv: &MoveRecord) -> Result<ExtWitness> {
    let MoveRecord::LrIncrease { column: i, old, new } = *mv else {
        return Err(Error::Precondition("only entry increases have a witness here".into()));
    };
    if !gamma.is_rook_strip() {
        return Err(Error::NotRookStrip {
            outer: gamma.outer().to_string(),
            inner: gamma.inner().to_string(),
        });
    }
    let beta = gamma.outer().clone();
    let g_cols: Columns = gamma.cells().iter().map(|&(_, c, e)| (c, e)).collect();
    if g_cols.get(&i) != Some(&old) || new <= old {
        return Err(Error::Precondition(format!(
            "column {i} does not hold {old}, or {new} is not larger"
        )));
    }
    let mut d_cols = g_cols.clone();
    d_cols.insert(i, new);
    let cells: Vec<(usize, usize, usize)> = d_cols.iter().map(|(&c, &e)| (beta.part(c), c, e)).collect();
    let delta = LrTableau::from_cells(&beta, gamma.inner(), &cells)
        .map_err(|e| Error::Precondition(format!("the increased filling is not LR: {e}")))?;
    let (mm, mp) = (new, old);

    let mut d_prime = d_cols.clone();
    d_prime.remove(&i);
    let mut last_err = Error::Internal("no admissible column selection".into());
    for i_chain in chains_right_of(&d_prime, i, mm) {
        let mut d2 = d_prime.clone();
        for c in &i_chain {
            d2.remove(c);
        }
        if !is_ballot(&d2) {
            continue;
        }
        let mut g_prime = d2.clone();
        g_prime.insert(i, mp);
        if !is_ballot(&g_prime) {
            continue;
        }
        let mut g_rest = g_prime.clone();
        g_rest.remove(&i);
        for j_chain in chains_right_of(&g_rest, i, mp) {
            let mut g2 = g_rest.clone();
            for c in &j_chain {
                g2.remove(c);
            }
            if !is_ballot(&g2) {
                continue;
            }
            let mut ic: Vec<usize> = i_chain.iter().rev().copied().collect();
            ic.push(i);
            let mut jc: Vec<usize> = j_chain.iter().rev().copied().collect();
            jc.push(i);
            match assemble(field, gamma, &delta, &beta, &ic, &jc, &g2) {
                Ok(w) => return Ok(w),
                Err(e) => last_err = e,
            }
        }
    }
    Err(last_err)
}

fn assemble(
    field: PrimeField,
    gamma: &LrTableau,
    delta: &LrTableau,
    beta: &Partition,
    ic: &[usize],
    jc: &[usize],
    rest: &Columns,
) -> Result<ExtWitness> {
    let h = |c: usize| beta.part(c);
    let m: Vec<usize> = ic.iter().map(|&c| h(c) - 1).collect();
    let n: Vec<usize> = jc[..jc.len() - 1].iter().map(|&c| h(c) - 1).collect();
    let (case, core) = ses_for(field, &m, &n)?;

    let group: Vec<usize> = ic.iter().chain(&jc[..jc.len() - 1]).map(|&c| h(c)).collect();
    let pad_h = multiset_minus(group.clone(), core.middle.ambient().parts())
        .ok_or_else(|| Error::Internal("middle ambient exceeds the column group".into()))?;
    let ends: Vec<usize> = core
        .left
        .ambient()
        .parts()
        .iter()
        .chain(core.right.ambient().parts())
        .copied()
        .collect();
    let pad_ends = multiset_minus(group, &ends)
        .ok_or_else(|| Error::Internal("end ambients exceed the column group".into()))?;
    if pad_h != pad_ends {
        return Err(Error::Internal(format!(
            "padding differs: {pad_h:?} for the middle, {pad_ends:?} for the ends"
        )));
    }

    let used: Vec<usize> = ic.iter().chain(jc).copied().collect();
    let filled: Vec<(usize, usize)> = rest.iter().rev().map(|(&c, &e)| (h(c), e)).collect();
    let mut unfilled: Vec<usize> = (1..=beta.len())
        .filter(|c| !used.contains(c) && !rest.contains_key(c))
        .map(h)
        .collect();
    unfilled.extend(pad_h);
    let padding = realize(field, &filled, &unfilled)?;
    let sequence = core.pad_left(&padding)?;
    sequence.check_exact()?;
    let mid_t = sequence.middle.lr_tableau()?;
    if &mid_t != delta {
        return Err(Error::Internal(format!(
            "middle has tableau {mid_t}, expected {delta}"
        )));
    }
    let ends_t = sequence.left.direct_sum(&sequence.right)?.lr_tableau()?;
    if &ends_t != gamma {
        return Err(Error::Internal(format!(
            "end terms have tableau {ends_t}, expected {gamma}"
        )));
    }
    Ok(ExtWitness {
        delta: delta.clone(),
        case,
        m,
        n,
        i_columns: ic.to_vec(),
        j_columns: jc.to_vec(),
        core,
        padding,
        sequence,
    })
}
