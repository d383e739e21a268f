//! Exhaustive property checks under explicit bounds.
//!
//! Every check enumerates its instances in a fixed order, evaluates them on
//! a bounded worker pool and keeps the first failing instance in that
//! order, so reports do not depend on the worker count.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::embedding::{hom_dim_embeddings, hom_leq_over_family, picket_family, Embedding};
use crate::error::{Error, Result};
use crate::linalg::PrimeField;
use crate::nilpotent::hom_dim_quotient;
use crate::nilpotent::ModuleShape;
use crate::orders::{
    box_moves_lr, box_moves_syt, box_table_lr, box_table_syt, dom_leq_lr, dom_leq_syt,
    dom_table_lr, dom_table_syt, down_closure, f_embed, increase_moves_lr, phi, phi_inverse,
    swap_moves_syt, RelationTable,
};
use crate::partition::Partition;
use crate::ses::{classify, ext_witness_increase, ses_for, ExtWitness, SesCase};
use crate::tableau::{LrTableau, StandardTableau};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Dot,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "dot" => Ok(OutputFormat::Dot),
            "text" => Ok(OutputFormat::Text),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

/// Bounds and execution settings for the checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub field_primes: Vec<u32>,
    /// Smallest `r` for the `T_r` level checks (box-eq-dom, f-map).
    pub min_weight_r: usize,
    /// Largest `r` for `T_r`-based checks.
    pub max_weight_r: usize,
    /// Largest `|β|` for rook-strip checks; the ext checks use one less.
    pub max_beta_weight: usize,
    /// Largest sequence entry for poles and `D(m,n)`; also bounds `i, ℓ`
    /// in the Hom formula.
    pub max_height: usize,
    /// Largest `r` for the square-shape box check, whose closures live in
    /// `T_(r,…,r)`.
    pub f_box_max_r: usize,
    /// 0 lets the pool pick.
    pub worker_count: usize,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field_primes: vec![2, 3, 5],
            min_weight_r: 1,
            max_weight_r: 6,
            max_beta_weight: 10,
            max_height: 8,
            f_box_max_r: 4,
            worker_count: 0,
            output_format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.field_primes.is_empty() {
            return Err(Error::Precondition("at least one field is needed".into()));
        }
        for &p in &self.field_primes {
            PrimeField::new(p)?;
        }
        if self.min_weight_r == 0 || self.max_beta_weight == 0 || self.max_height == 0 {
            return Err(Error::Precondition("bounds must be positive".into()));
        }
        if self.min_weight_r > self.max_weight_r {
            return Err(Error::Precondition("min_weight_r exceeds max_weight_r".into()));
        }
        Ok(())
    }

    pub fn default_field(&self) -> PrimeField {
        PrimeField::new(self.field_primes[0]).expect("validated")
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.worker_count)
            .build()
            .map_err(|e| Error::Internal(format!("worker pool: {e}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    BoxEqDom,
    FMap,
    PhiOrders,
    PoleTableau,
    DmnTableau,
    SesExactness,
    ExtWitness,
    ExtHomDom,
    HomFormula,
    FieldIndependence,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::BoxEqDom,
        CheckName::FMap,
        CheckName::PhiOrders,
        CheckName::PoleTableau,
        CheckName::DmnTableau,
        CheckName::SesExactness,
        CheckName::ExtWitness,
        CheckName::ExtHomDom,
        CheckName::HomFormula,
        CheckName::FieldIndependence,
    ];

    /// The checks whose outputs are compared across fields.
    pub const FIELD_DEPENDENT: [CheckName; 6] = [
        CheckName::PoleTableau,
        CheckName::DmnTableau,
        CheckName::SesExactness,
        CheckName::ExtWitness,
        CheckName::HomFormula,
        CheckName::ExtHomDom,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckName::BoxEqDom => "box-eq-dom",
            CheckName::FMap => "f-map",
            CheckName::PhiOrders => "phi-orders",
            CheckName::PoleTableau => "pole-tableau",
            CheckName::DmnTableau => "dmn-tableau",
            CheckName::SesExactness => "ses-exactness",
            CheckName::ExtWitness => "ext-witness",
            CheckName::ExtHomDom => "ext-hom-dom",
            CheckName::HomFormula => "hom-formula",
            CheckName::FieldIndependence => "field-independence",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .iter()
            .find(|c| c.as_str() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub field: Option<u32>,
    pub instances: usize,
    pub passed: bool,
    /// First failing instance in enumeration order.
    pub counterexample: Option<Value>,
    pub elapsed_secs: f64,
    /// Hash of the per-instance outputs, for cross-field comparison.
    pub digest: String,
}

impl CheckReport {
    /// Report without timing, for determinism comparisons.
    pub fn timeless(&self) -> CheckReport {
        CheckReport {
            elapsed_secs: 0.0,
            ..self.clone()
        }
    }
}

/// The result of one instance.
struct Outcome {
    ok: bool,
    output: String,
    detail: Value,
}

impl Outcome {
    fn pass(output: impl Into<String>) -> Self {
        Outcome {
            ok: true,
            output: output.into(),
            detail: Value::Null,
        }
    }

    fn fail(detail: Value) -> Self {
        Outcome {
            ok: false,
            output: detail.to_string(),
            detail,
        }
    }

    fn check(ok: bool, output: impl Into<String>, detail: impl FnOnce() -> Value) -> Self {
        if ok {
            Outcome::pass(output)
        } else {
            Outcome::fail(detail())
        }
    }

    fn from_result(r: Result<Outcome>, input: impl FnOnce() -> Value) -> Self {
        r.unwrap_or_else(|e| Outcome::fail(json!({ "input": input(), "error": e.to_string() })))
    }
}

struct Tally {
    instances: usize,
    counterexample: Option<Value>,
    hasher: Sha256,
}

impl Tally {
    fn new() -> Self {
        Tally {
            instances: 0,
            counterexample: None,
            hasher: Sha256::new(),
        }
    }

    fn absorb(&mut self, outcomes: Vec<Outcome>) {
        for o in outcomes {
            self.instances += 1;
            self.hasher.update(o.output.as_bytes());
            self.hasher.update(b"\n");
            if !o.ok && self.counterexample.is_none() {
                self.counterexample = Some(o.detail);
            }
        }
    }

    fn report(self, name: CheckName, field: Option<u32>, start: Instant) -> CheckReport {
        let digest = self
            .hasher
            .finalize()
            .iter()
            .take(16)
            .map(|b| format!("{b:02x}"))
            .collect();
        CheckReport {
            name: name.to_string(),
            field,
            instances: self.instances,
            passed: self.counterexample.is_none(),
            counterexample: self.counterexample,
            elapsed_secs: start.elapsed().as_secs_f64(),
            digest,
        }
    }
}

/// Evaluates `f` on every item in parallel and returns the outcomes in
/// item order.
fn run_items<I: Sync, F>(items: &[I], f: F) -> Vec<Outcome>
where
    F: Fn(&I) -> Vec<Outcome> + Sync + Send,
{
    items.par_iter().map(f).flatten_iter().collect::<Vec<_>>()
}

/// Runs one check under `cfg`; field-dependent checks use the first prime.
pub fn run_check(name: CheckName, cfg: &RunConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let pool = cfg.pool()?;
    pool.install(|| match name {
        CheckName::FieldIndependence => check_field_independence(cfg),
        _ => run_in_field(name, cfg, cfg.default_field()),
    })
}

/// Runs a single-field check with field `p` regardless of
/// `cfg.field_primes`.
pub fn run_check_in_field(name: CheckName, cfg: &RunConfig, p: u32) -> Result<CheckReport> {
    cfg.validate()?;
    let field = PrimeField::new(p)?;
    cfg.pool()?.install(|| run_in_field(name, cfg, field))
}

/// Runs a check with an explicit field; must be called inside the pool.
fn run_in_field(name: CheckName, cfg: &RunConfig, field: PrimeField) -> Result<CheckReport> {
    let start = Instant::now();
    let mut tally = Tally::new();
    let f = Some(field.characteristic());
    match name {
        CheckName::BoxEqDom => {
            tally.absorb(check_box_eq_dom(cfg));
            return Ok(tally.report(name, None, start));
        }
        CheckName::FMap => {
            tally.absorb(check_f_map(cfg));
            return Ok(tally.report(name, None, start));
        }
        CheckName::PhiOrders => {
            tally.absorb(check_phi_orders(cfg));
            return Ok(tally.report(name, None, start));
        }
        CheckName::PoleTableau => tally.absorb(check_pole_tableau(cfg, field)),
        CheckName::DmnTableau => tally.absorb(check_dmn_tableau(cfg, field)),
        CheckName::SesExactness => tally.absorb(check_ses_exactness(cfg, field)),
        CheckName::ExtWitness => tally.absorb(check_ext_witness(cfg, field, false)),
        CheckName::ExtHomDom => tally.absorb(check_ext_witness(cfg, field, true)),
        CheckName::HomFormula => tally.absorb(check_hom_formula(cfg, field)),
        CheckName::FieldIndependence => {
            return Err(Error::Internal("field independence is not a single-field check".into()))
        }
    }
    Ok(tally.report(name, f, start))
}

/// Runs every field-dependent check for every configured prime and
/// compares the outputs; one instance per (check, prime).
fn check_field_independence(cfg: &RunConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let mut tally = Tally::new();
    for name in CheckName::FIELD_DEPENDENT {
        let mut reference: Option<CheckReport> = None;
        let mut outcomes = Vec::new();
        for &p in &cfg.field_primes {
            let report = run_in_field(name, cfg, PrimeField::new(p)?)?;
            let out = format!("{name} {} {} {}", report.instances, report.passed, report.digest);
            let ok = report.passed
                && reference.as_ref().is_none_or(|r| {
                    r.digest == report.digest && r.instances == report.instances
                });
            outcomes.push(Outcome::check(ok, out, || {
                json!({
                    "check": name.as_str(),
                    "field": p,
                    "report": report,
                    "reference": reference,
                })
            }));
            if reference.is_none() {
                reference = Some(report);
            }
        }
        tally.absorb(outcomes);
    }
    Ok(tally.report(CheckName::FieldIndependence, None, start))
}

/// Nonempty strictly increasing sequences with entries in `0..=max`, in
/// lexicographic order.
pub fn increasing_sequences(max: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1u32 << (max + 1)))
        .map(|mask| (0..=max).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

/// Every `(m, n)` accepted by `D(m, n)` with `m_r ≤ max`, `n` possibly
/// empty.
pub fn valid_mn(max: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let seqs = increasing_sequences(max);
    let mut out = Vec::new();
    for m in &seqs {
        out.push((m.clone(), Vec::new()));
        for n in &seqs {
            if n.len() < m.len() && n.last().unwrap() < m.last().unwrap() {
                out.push((m.clone(), n.clone()));
            }
        }
    }
    out
}

/// Rook-strip pairs `(β, γ)` with `0 < |β∖γ|`, `|β| ≤ max_weight` and
/// `|β∖γ| ≤ max_r`.
pub fn rook_pairs(max_weight: usize, max_r: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for w in 1..=max_weight {
        for beta in Partition::all_of_weight(w) {
            for gamma in beta.rook_strip_inners() {
                let r = beta.weight() - gamma.weight();
                if r >= 1 && r <= max_r {
                    out.push((beta.clone(), gamma));
                }
            }
        }
    }
    out.sort();
    out
}

fn syt_json(t: &StandardTableau) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn lr_json(t: &LrTableau) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn compare_tables<T: Serialize>(
    what: &str,
    a: &RelationTable<T>,
    b: &RelationTable<T>,
    names: (&str, &str),
) -> Vec<Outcome> {
    let n = a.len();
    let mut out = Vec::with_capacity(n * n + 1);
    if a.check_poset().is_err() || b.check_poset().is_err() {
        out.push(Outcome::fail(json!({
            "case": what,
            "error": format!("{:?} / {:?}", a.check_poset().err(), b.check_poset().err()),
        })));
    }
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (a.leq[i][j], b.leq[i][j]);
            out.push(Outcome::check(x == y, format!("{what} {i} {j} {x}"), || {
                json!({
                    "case": what,
                    "lower": serde_json::to_value(&a.elements[i]).unwrap(),
                    "upper": serde_json::to_value(&a.elements[j]).unwrap(),
                    names.0: x,
                    names.1: y,
                })
            }));
        }
    }
    out
}

fn check_box_eq_dom(cfg: &RunConfig) -> Vec<Outcome> {
    let mut out = Vec::new();
    for r in cfg.min_weight_r..=cfg.max_weight_r {
        let boxes = box_table_syt(r);
        let doms = dom_table_syt(r);
        out.extend(compare_tables(&format!("T_{r}"), &boxes, &doms, ("box", "dom")));
        // move failures are reported but not counted as instances
        out.extend(run_items(&boxes.elements, |s| {
            box_moves_syt(s)
                .into_iter()
                .filter(|(t, _)| !(dom_leq_syt(t, s).unwrap_or(false) && t != s))
                .map(|(t, mv)| {
                    Outcome::fail(json!({ "case": "move not strictly dominance-decreasing", "from": syt_json(s), "to": syt_json(&t), "move": mv }))
                })
                .collect()
        }));
    }
    out
}

fn check_f_map(cfg: &RunConfig) -> Vec<Outcome> {
    let mut out = Vec::new();
    for r in cfg.min_weight_r..=cfg.max_weight_r {
        let elements = StandardTableau::enumerate_weight(r);
        let images: Vec<std::result::Result<StandardTableau, String>> = elements
            .par_iter()
            .map(|t| f_embed(t).map_err(|e| e.to_string()))
            .collect();
        let square = Partition::square(r);
        for (t, img) in elements.iter().zip(&images) {
            let ok = matches!(img, Ok(s) if s.shape() == &square && s.is_valid());
            out.push(Outcome::check(ok, format!("f {}", t.row_string()), || {
                json!({ "case": "image is not a square tableau", "input": syt_json(t), "image": format!("{img:?}") })
            }));
        }
        let Ok(images) = images.into_iter().collect::<std::result::Result<Vec<_>, _>>() else {
            continue;
        };
        let pairs: Vec<(usize, usize)> = (0..elements.len())
            .flat_map(|i| (0..elements.len()).map(move |j| (i, j)))
            .collect();
        out.extend(run_items(&pairs, |&(i, j)| {
            let a = dom_leq_syt(&elements[i], &elements[j]).unwrap();
            let b = dom_leq_syt(&images[i], &images[j]).unwrap();
            vec![Outcome::check(a == b, format!("dom {i} {j} {a}"), || {
                json!({ "case": "f does not preserve and reflect dominance", "pi": syt_json(&elements[i]), "sigma": syt_json(&elements[j]), "dom": a, "dom_of_images": b })
            })]
        }));
        if r <= cfg.f_box_max_r {
            let box_table = box_table_syt(r);
            out.extend(run_items(&(0..elements.len()).collect::<Vec<_>>(), |&j| {
                let closure = down_closure(&images[j], swap_moves_syt);
                (0..elements.len())
                    .map(|i| {
                        let image_below = closure.contains_key(&images[i]);
                        let ok = !image_below || box_table.leq[i][j];
                        Outcome::check(ok, format!("fbox {i} {j} {image_below}"), || {
                            json!({ "case": "f(pi) ≤box f(sigma) without pi ≤box sigma", "pi": syt_json(&elements[i]), "sigma": syt_json(&elements[j]) })
                        })
                    })
                    .collect()
            }));
        }
    }
    out
}

struct SytTables {
    index: HashMap<StandardTableau, usize>,
    boxes: RelationTable<StandardTableau>,
    doms: RelationTable<StandardTableau>,
}

fn check_phi_orders(cfg: &RunConfig) -> Vec<Outcome> {
    let pairs = rook_pairs(cfg.max_beta_weight, cfg.max_weight_r);
    let max_r = pairs
        .iter()
        .map(|(b, g)| b.weight() - g.weight())
        .max()
        .unwrap_or(0);
    let tables: Vec<SytTables> = (0..=max_r)
        .map(|r| {
            let boxes = if r == 0 { RelationTable { elements: vec![], leq: vec![] } } else { box_table_syt(r) };
            let doms = if r == 0 { RelationTable { elements: vec![], leq: vec![] } } else { dom_table_syt(r) };
            let index = boxes.elements.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
            SytTables { index, boxes, doms }
        })
        .collect();
    run_items(&pairs, |(beta, gamma)| {
        let input = || json!({ "beta": beta, "gamma": gamma });
        let r = beta.weight() - gamma.weight();
        let elements = match LrTableau::enumerate_rook(beta, gamma) {
            Ok(e) => e,
            Err(e) => return vec![Outcome::fail(json!({ "input": input(), "error": e.to_string() }))],
        };
        let mut out = Vec::new();
        let mut images = Vec::new();
        for g in &elements {
            let img = phi(g);
            let back = img.as_ref().ok().map(|t| phi_inverse(t, beta, gamma));
            let ok = matches!((&img, &back), (Ok(_), Some(Ok(b))) if b == g);
            out.push(Outcome::check(ok, format!("phi {g}"), || {
                json!({ "case": "phi round trip", "tableau": lr_json(g), "image": format!("{img:?}"), "back": format!("{back:?}") })
            }));
            match img {
                Ok(t) => images.push(tables[r].index[&t]),
                Err(_) => return out,
            }
        }
        let boxes = box_table_lr(elements.clone());
        let doms = dom_table_lr(elements.clone());
        let t = &tables[r];
        for i in 0..elements.len() {
            for j in 0..elements.len() {
                let (d, b) = (doms.leq[i][j], boxes.leq[i][j]);
                let (sd, sb) = (t.doms.leq[images[i]][images[j]], t.boxes.leq[images[i]][images[j]]);
                out.push(Outcome::check(d == sd && b == sb, format!("pair {i} {j} {d} {b}"), || {
                    json!({
                        "case": "phi does not preserve and reflect the orders",
                        "beta": beta, "gamma": gamma,
                        "delta": lr_json(&elements[i]), "gamma_tableau": lr_json(&elements[j]),
                        "dom": d, "box": b, "dom_of_images": sd, "box_of_images": sb,
                    })
                }));
                if d && !dom_leq_content(&elements[i], &elements[j]) {
                    out.push(Outcome::fail(json!({
                        "case": "dominance without content order",
                        "delta": lr_json(&elements[i]), "gamma_tableau": lr_json(&elements[j]),
                    })));
                }
            }
            for (lower, mv) in box_moves_lr(&elements[i]) {
                let ok = lower != elements[i] && dom_leq_lr(&lower, &elements[i]).unwrap_or(false);
                out.push(Outcome::check(ok, "move", || {
                    json!({ "case": "move not strictly dominance-decreasing", "from": lr_json(&elements[i]), "to": lr_json(&lower), "move": mv })
                }));
            }
        }
        out
    })
}

/// `Δ ≤dom Γ` forces `content(Δ) ≤nat content(Γ)`.
fn dom_leq_content(delta: &LrTableau, gamma: &LrTableau) -> bool {
    delta.content().nat_leq(&gamma.content())
}

fn check_pole_tableau(cfg: &RunConfig, field: PrimeField) -> Vec<Outcome> {
    let seqs = increasing_sequences(cfg.max_height);
    run_items(&seqs, |m| {
        let r = Outcome::from_result(
            (|| {
                let x = Embedding::pole(field, m)?;
                let heights = x.generators()[0].height_sequence();
                let t = x.lr_tableau()?;
                let mut rows: Vec<(usize, usize)> = t.cells().iter().map(|&(w, _, e)| (e, w)).collect();
                rows.sort();
                let expected: Vec<(usize, usize)> = m.iter().enumerate().map(|(e, &me)| (e + 1, me + 1)).collect();
                let ok = heights == *m && rows == expected;
                Ok(Outcome::check(ok, format!("{m:?} {t}"), || {
                    json!({ "m": m, "heights": heights, "entry_rows": rows, "tableau": lr_json(&t) })
                }))
            })(),
            || json!({ "m": m }),
        );
        vec![r]
    })
}

fn check_dmn_tableau(cfg: &RunConfig, field: PrimeField) -> Vec<Outcome> {
    let items = valid_mn(cfg.max_height);
    run_items(&items, |(m, n)| {
        vec![Outcome::from_result(
            (|| {
                let d = Embedding::d_embedding(field, m, n)?.lr_tableau()?;
                let mut sum = Embedding::pole(field, m)?;
                if !n.is_empty() {
                    sum = sum.direct_sum(&Embedding::pole(field, n)?)?;
                }
                let s = sum.lr_tableau()?;
                Ok(Outcome::check(d == s, format!("{m:?} {n:?} {d}"), || {
                    json!({ "m": m, "n": n, "d_tableau": lr_json(&d), "sum_tableau": lr_json(&s) })
                }))
            })(),
            || json!({ "m": m, "n": n }),
        )]
    })
}

fn check_ses_exactness(cfg: &RunConfig, field: PrimeField) -> Vec<Outcome> {
    let items: Vec<(Vec<usize>, Vec<usize>)> = valid_mn(cfg.max_height)
        .into_iter()
        .filter(|(m, n)| m.len() >= 2 && classify(m, n).ok().flatten().is_some())
        .collect();
    run_items(&items, |(m, n)| {
        vec![Outcome::from_result(
            (|| {
                let (case, seq) = ses_for(field, m, n)?;
                let exact = seq.is_exact();
                let mid = seq.middle.lr_tableau()?;
                let ends = seq.left.direct_sum(&seq.right)?.lr_tableau()?;
                let mut expected = Embedding::pole(field, m)?;
                if !n.is_empty() {
                    expected = expected.direct_sum(&Embedding::pole(field, n)?)?;
                }
                if case == SesCase::NoGap1 {
                    expected = expected.direct_sum(&Embedding::empty(field, &Partition::new(vec![*m.last().unwrap()])?))?;
                }
                let expected = expected.lr_tableau()?;
                let below = dom_leq_lr(&mid, &ends).unwrap_or(false);
                let ok = exact && mid == expected && below;
                Ok(Outcome::check(ok, format!("{m:?} {n:?} {case:?} {mid} {ends}"), || {
                    json!({
                        "m": m, "n": n, "case": case, "exact": seq.check_exact().err().map(|e| e.to_string()),
                        "middle": lr_json(&mid), "expected_middle": lr_json(&expected), "ends": lr_json(&ends),
                        "middle_below_ends": below,
                    })
                }))
            })(),
            || json!({ "m": m, "n": n }),
        )]
    })
}

/// Every `(Γ, move)` with `Γ` a rook-strip LR tableau, `|β| ≤ max_weight`,
/// and `move` an entry increase.
pub fn increase_instances(max_weight: usize) -> Vec<(LrTableau, crate::orders::MoveRecord)> {
    rook_pairs(max_weight, usize::MAX)
        .iter()
        .flat_map(|(b, g)| LrTableau::enumerate_rook(b, g).expect("rook pairs"))
        .flat_map(|t| {
            increase_moves_lr(&t)
                .into_iter()
                .map(move |(_, mv)| (t.clone(), mv))
        })
        .collect()
}

fn witness_summary(w: &ExtWitness) -> String {
    format!(
        "{} {:?} m={:?} n={:?} i={:?} j={:?}",
        w.delta, w.case, w.m, w.n, w.i_columns, w.j_columns
    )
}

fn check_ext_witness(cfg: &RunConfig, field: PrimeField, with_hom: bool) -> Vec<Outcome> {
    let items = increase_instances(cfg.max_beta_weight.saturating_sub(1));
    run_items(&items, |(gamma, mv)| {
        let input = || json!({ "gamma": lr_json(gamma), "move": mv });
        vec![Outcome::from_result(
            (|| {
                let w = ext_witness_increase(field, gamma, mv)?;
                let target = increase_moves_lr(gamma).into_iter().find(|(_, m)| m == mv).map(|(t, _)| t);
                let verified = w.sequence.is_exact()
                    && Some(&w.delta) == target.as_ref()
                    && w.sequence.middle.lr_tableau()? == w.delta
                    && &w.end_sum()?.lr_tableau()? == gamma;
                if !verified {
                    return Ok(Outcome::fail(json!({ "input": input(), "case": "witness does not verify", "witness": witness_summary(&w) })));
                }
                if !with_hom {
                    return Ok(Outcome::pass(witness_summary(&w)));
                }
                let ends = w.end_sum()?;
                let height = w.sequence.middle.ambient().parts().iter().copied().max().unwrap_or(0);
                let family = picket_family(field, height, height);
                let hom_ok = hom_leq_over_family(&w.sequence.middle, &ends, &family)?;
                let dom_ok = dom_leq_lr(&w.delta, gamma)?;
                let mut dims = Vec::new();
                for z in &family {
                    dims.push((hom_dim_embeddings(&w.sequence.middle, z)?, hom_dim_embeddings(&ends, z)?));
                }
                Ok(Outcome::check(hom_ok && dom_ok, format!("{} {dims:?}", witness_summary(&w)), || {
                    json!({ "input": input(), "hom": hom_ok, "dom": dom_ok, "dims": dims })
                }))
            })(),
            input,
        )]
    })
}

/// Poles, `D(m,n)`'s, sums and empties used by the Hom formula check.
pub fn fixture_embeddings(field: PrimeField) -> Result<Vec<Embedding>> {
    let mut out = Vec::new();
    for m in increasing_sequences(5) {
        out.push(Embedding::pole(field, &m)?);
    }
    for (m, n) in valid_mn(4) {
        if !n.is_empty() {
            out.push(Embedding::d_embedding(field, &m, &n)?);
        }
    }
    let small = increasing_sequences(2);
    for a in &small {
        for b in &small {
            out.push(Embedding::pole(field, a)?.direct_sum(&Embedding::pole(field, b)?)?);
        }
    }
    for w in 1..=4 {
        for beta in Partition::all_of_weight(w) {
            out.push(Embedding::empty(field, &beta));
            out.push(Embedding::pole(field, &[1, 3])?.direct_sum(&Embedding::empty(field, &beta))?);
        }
    }
    Ok(out)
}

fn check_hom_formula(cfg: &RunConfig, field: PrimeField) -> Vec<Outcome> {
    let fixtures = match fixture_embeddings(field) {
        Ok(f) => f,
        Err(e) => return vec![Outcome::fail(json!({ "error": e.to_string() }))],
    };
    let h = cfg.max_height;
    run_items(&fixtures, |x| {
        let input = || serde_json::to_value(x.to_json()).unwrap();
        let mut out = Vec::new();
        let r: Result<()> = (|| {
            let t = x.lr_tableau()?;
            for i in 0..=h {
                let rows = t.step(i).transpose();
                for l in 1..=h {
                    let formula: usize = (1..=l).map(|w| rows.part(w)).sum();
                    let lambda = hom_dim_quotient(x.submodule(), i, &ModuleShape::new(vec![l])?)?;
                    let cat = hom_dim_embeddings(x, &Embedding::picket(field, i, l)?)?;
                    let ok = formula == lambda && lambda == cat;
                    out.push(Outcome::check(ok, format!("{i} {l} {formula}"), || {
                        json!({ "input": input(), "i": i, "l": l, "formula": formula, "quotient_hom": lambda, "picket_hom": cat })
                    }));
                }
            }
            Ok(())
        })();
        if let Err(e) = r {
            out.push(Outcome::fail(json!({ "input": input(), "error": e.to_string() })));
        }
        out
    })
}
