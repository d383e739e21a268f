//! Nilpotent operators `N_β = ⊕_j k[t]/(t^{β_j})` over a prime field and
//! their `t`-invariant subspaces.
//!
//! Coordinates are component-major, degree-minor: the coordinate of
//! `t^u b_j` is `offset(j) + u`. Components are indexed from 1 in the
//! public API and in the text form `t^2*b_1 + t*b_2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, PrimeField};
use crate::partition::Partition;

/// Component lengths of `N_{β_1} ⊕ … ⊕ N_{β_n}`, in the given order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuleShape {
    parts: Vec<usize>,
}

impl ModuleShape {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "component lengths must be positive".into(),
            });
        }
        Ok(ModuleShape { parts })
    }

    pub fn from_partition(p: &Partition) -> Self {
        ModuleShape {
            parts: p.parts().to_vec(),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Length of component `j` (1-based).
    pub fn part(&self, j: usize) -> usize {
        self.parts[j - 1]
    }

    pub fn components(&self) -> usize {
        self.parts.len()
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The isomorphism type, sorted.
    pub fn partition(&self) -> Partition {
        Partition::from_unsorted(self.parts.clone())
    }

    /// Coordinate of `t^u b_j`, `j` 1-based.
    pub fn coord(&self, j: usize, u: usize) -> usize {
        assert!(u < self.part(j), "degree {u} out of range for b_{j}");
        self.parts[..j - 1].iter().sum::<usize>() + u
    }

    /// `(component, degree)` of each coordinate, component 1-based.
    pub fn coords(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(j, &len)| (0..len).map(move |u| (j + 1, u)))
            .collect()
    }

    pub fn concat(&self, other: &ModuleShape) -> ModuleShape {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        ModuleShape { parts }
    }
}

impl fmt::Display for ModuleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "N({})", parts.join(","))
    }
}

/// An element of `N_β`, coefficients reduced into the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    shape: ModuleShape,
    coeffs: Vec<u32>,
}

impl ModuleElement {
    pub fn zero(shape: &ModuleShape) -> Self {
        ModuleElement {
            shape: shape.clone(),
            coeffs: vec![0; shape.dim()],
        }
    }

    /// `t^u b_j`, `j` 1-based; zero when `u ≥ β_j`.
    pub fn monomial(shape: &ModuleShape, j: usize, u: usize) -> Self {
        let mut x = Self::zero(shape);
        if u < shape.part(j) {
            x.coeffs[shape.coord(j, u)] = 1;
        }
        x
    }

    pub fn from_vector(shape: &ModuleShape, coeffs: Vec<u32>) -> Self {
        assert_eq!(coeffs.len(), shape.dim(), "vector length");
        ModuleElement {
            shape: shape.clone(),
            coeffs,
        }
    }

    /// `Σ c·t^u b_j` over `(c, u, j)`; terms past the truncation vanish.
    pub fn from_terms(field: PrimeField, shape: &ModuleShape, terms: &[(i64, usize, usize)]) -> Self {
        let mut x = Self::zero(shape);
        for &(c, u, j) in terms {
            if u < shape.part(j) {
                let k = shape.coord(j, u);
                x.coeffs[k] = field.add(x.coeffs[k], field.reduce(c));
            }
        }
        x
    }

    pub fn shape(&self) -> &ModuleShape {
        &self.shape
    }

    pub fn as_vector(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_vector(self) -> Vec<u32> {
        self.coeffs
    }

    /// Coefficients of component `j` (1-based), by degree.
    pub fn component(&self, j: usize) -> &[u32] {
        let start = self.shape.coord(j, 0);
        &self.coeffs[start..start + self.shape.part(j)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Multiplication by `t`.
    pub fn act_t(&self) -> Self {
        self.act_t_pow(1)
    }

    pub fn act_t_pow(&self, k: usize) -> Self {
        let mut out = vec![0; self.coeffs.len()];
        let mut start = 0;
        for &len in self.shape.parts() {
            for u in 0..len.saturating_sub(k) {
                out[start + u + k] = self.coeffs[start + u];
            }
            start += len;
        }
        ModuleElement {
            shape: self.shape.clone(),
            coeffs: out,
        }
    }

    pub fn add(&self, field: PrimeField, other: &ModuleElement) -> Self {
        assert_eq!(self.shape, other.shape, "ambient");
        let mut out = self.coeffs.clone();
        field.axpy(&mut out, 1, &other.coeffs);
        ModuleElement {
            shape: self.shape.clone(),
            coeffs: out,
        }
    }

    pub fn scale(&self, field: PrimeField, c: u32) -> Self {
        ModuleElement {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().map(|&x| field.mul(x, c)).collect(),
        }
    }

    /// Largest `m` with `self ∈ t^m N_β`: the least degree present.
    pub fn height(&self) -> Height {
        self.shape
            .coords()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(&(_, u), _)| u)
            .min()
            .map_or(Height::Infinity, Height::Finite)
    }

    /// Heights of `self, t·self, t²·self, …` up to the last finite one.
    pub fn height_sequence(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = self.clone();
        while let Height::Finite(h) = x.height() {
            out.push(h);
            x = x.act_t();
        }
        out
    }

    /// Parses `t^2*b_1 + 2*t*b_2 - b_3`.
    pub fn parse(field: PrimeField, shape: &ModuleShape, text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty element"));
        }
        if compact == "0" {
            return Ok(Self::zero(shape));
        }
        let mut terms = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        let mut pieces = Vec::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                pieces.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            } else if ch == '+' || ch == '-' {
                if ch == '-' {
                    sign = -sign;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad("dangling sign"));
        }
        pieces.push((sign, cur));
        for (sign, piece) in pieces {
            let mut coef = 1i64;
            let mut degree = 0usize;
            let mut comp = None;
            for factor in piece.split('*') {
                if let Some(j) = factor.strip_prefix("b_") {
                    let j: usize = j.parse().map_err(|_| bad("bad component index"))?;
                    if j == 0 || j > shape.components() {
                        return Err(bad(&format!("component b_{j} outside {shape}")));
                    }
                    comp = Some(j);
                } else if factor == "t" {
                    degree += 1;
                } else if let Some(e) = factor.strip_prefix("t^") {
                    degree += e.parse::<usize>().map_err(|_| bad("bad exponent"))?;
                } else {
                    coef *= factor.parse::<i64>().map_err(|_| bad("bad coefficient"))?;
                }
            }
            let j = comp.ok_or_else(|| bad("term without a generator b_j"))?;
            terms.push((sign * coef, degree, j));
        }
        Ok(Self::from_terms(field, shape, &terms))
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((j, u), &c) in self.shape.coords().iter().zip(&self.coeffs) {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}*")?;
            }
            match u {
                0 => {}
                1 => write!(f, "t*")?,
                _ => write!(f, "t^{u}*")?,
            }
            write!(f, "b_{j}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A height: a finite degree, or infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Height {
    Finite(usize),
    Infinity,
}

/// A subspace of `N_β` with a canonical echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubmoduleBasis {
    shape: ModuleShape,
    ech: Echelon,
}

impl SubmoduleBasis {
    pub fn zero(field: PrimeField, shape: &ModuleShape) -> Self {
        SubmoduleBasis {
            shape: shape.clone(),
            ech: Echelon::new(field, shape.dim()),
        }
    }

    pub fn full(field: PrimeField, shape: &ModuleShape) -> Self {
        let n = shape.dim();
        let rows = (0..n).map(|k| {
            let mut v = vec![0; n];
            v[k] = 1;
            v
        });
        SubmoduleBasis {
            shape: shape.clone(),
            ech: Echelon::from_rows(field, n, rows),
        }
    }

    /// The `k[t]`-span: all `t^u g` for every generator `g`.
    pub fn span(field: PrimeField, shape: &ModuleShape, gens: &[ModuleElement]) -> Self {
        let mut s = Self::zero(field, shape);
        for g in gens {
            assert_eq!(g.shape(), shape, "generator outside the ambient");
            let mut x = g.clone();
            while !x.is_zero() {
                s.ech.insert(x.coeffs.clone());
                x = x.act_t();
            }
        }
        s
    }

    /// The `k`-span of vectors, with no closure under `t`.
    pub fn from_vectors(field: PrimeField, shape: &ModuleShape, rows: Vec<Vec<u32>>) -> Self {
        SubmoduleBasis {
            shape: shape.clone(),
            ech: Echelon::from_rows(field, shape.dim(), rows),
        }
    }

    /// `t^w N_β`: the coordinates of degree at least `w`.
    pub fn radical_power(field: PrimeField, shape: &ModuleShape, w: usize) -> Self {
        let n = shape.dim();
        let rows = shape
            .coords()
            .into_iter()
            .enumerate()
            .filter(|(_, (_, u))| *u >= w)
            .map(|(k, _)| {
                let mut v = vec![0; n];
                v[k] = 1;
                v
            })
            .collect();
        Self::from_vectors(field, shape, rows)
    }

    pub fn field(&self) -> PrimeField {
        self.ech.field()
    }

    pub fn shape(&self) -> &ModuleShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    pub fn basis(&self) -> Vec<ModuleElement> {
        self.ech
            .rows()
            .iter()
            .map(|r| ModuleElement::from_vector(&self.shape, r.clone()))
            .collect()
    }

    pub fn contains(&self, x: &ModuleElement) -> bool {
        self.ech.contains(x.as_vector())
    }

    pub fn is_subspace_of(&self, other: &SubmoduleBasis) -> bool {
        self.ech.is_subspace_of(&other.ech)
    }

    pub fn is_t_invariant(&self) -> bool {
        self.basis().iter().all(|b| self.contains(&b.act_t()))
    }

    fn check_same(&self, other: &SubmoduleBasis) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::AmbientMismatch(format!("{} vs {}", self.shape, other.shape)));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(
                self.field().characteristic(),
                other.field().characteristic(),
            ));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubmoduleBasis) -> Result<SubmoduleBasis> {
        self.check_same(other)?;
        let mut ech = self.ech.clone();
        for r in other.ech.rows() {
            ech.insert(r.clone());
        }
        Ok(SubmoduleBasis {
            shape: self.shape.clone(),
            ech,
        })
    }

    /// Intersection by the Zassenhaus construction.
    pub fn intersect(&self, other: &SubmoduleBasis) -> Result<SubmoduleBasis> {
        self.check_same(other)?;
        let n = self.shape.dim();
        let field = self.field();
        let mut big = Echelon::new(field, 2 * n);
        for r in self.ech.rows() {
            let mut v = r.clone();
            v.extend_from_slice(r);
            big.insert(v);
        }
        for r in other.ech.rows() {
            let mut v = r.clone();
            v.extend(std::iter::repeat_n(0, n));
            big.insert(v);
        }
        let rows = big
            .rows()
            .iter()
            .zip(big.pivots())
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Ok(Self::from_vectors(field, &self.shape, rows))
    }

    /// `t^e S`; assumes `S` is `t`-invariant.
    pub fn t_power(&self, e: usize) -> SubmoduleBasis {
        let rows = self
            .basis()
            .iter()
            .map(|b| b.act_t_pow(e).into_vector())
            .collect();
        Self::from_vectors(self.field(), &self.shape, rows)
    }

    fn require_invariant(&self) -> Result<()> {
        if !self.is_t_invariant() {
            return Err(Error::NotSubmodule(format!(
                "subspace of {} is not closed under t",
                self.shape
            )));
        }
        Ok(())
    }

    /// Isomorphism type `λ` of `S`: `λ̄_w = dim t^{w-1}S − dim t^w S`.
    pub fn module_type(&self) -> Result<Partition> {
        self.require_invariant()?;
        let mut dims = vec![self.dim()];
        while *dims.last().unwrap() > 0 {
            dims.push(self.t_power(dims.len()).dim());
        }
        let rows: Vec<usize> = dims.windows(2).map(|w| w[0] - w[1]).collect();
        let rows = Partition::new(rows)
            .map_err(|e| Error::Internal(format!("radical layers are not a partition: {e}")))?;
        Ok(rows.transpose())
    }

    /// Type of `N_β / t^e S`, from
    /// `Σ_{w' ≤ w} λ̄_{w'} = dim N_β − dim(t^e S + t^w N_β)`.
    pub fn quotient_type(&self, e: usize) -> Result<Partition> {
        self.require_invariant()?;
        let sub = self.t_power(e);
        let coords = self.shape.coords();
        let height = self.shape.parts().iter().copied().max().unwrap_or(0);
        let mut prefix = vec![0usize];
        for w in 1..=height {
            let low: Vec<usize> = (0..coords.len()).filter(|&k| coords[k].1 < w).collect();
            let projected = Echelon::from_rows(
                self.field(),
                low.len(),
                sub.ech.rows().iter().map(|r| low.iter().map(|&k| r[k]).collect()),
            );
            prefix.push(low.len() - projected.rank());
        }
        let rows: Vec<usize> = prefix
            .windows(2)
            .map(|w| w[1] - w[0])
            .take_while(|&x| x > 0)
            .collect();
        let rows = Partition::new(rows)
            .map_err(|err| Error::Internal(format!("quotient layers are not a partition: {err}")))?;
        Ok(rows.transpose())
    }
}

/// Dimension of `{f ∈ Hom(N_β, N_δ) : f(A) ⊆ C}` where `A = src`, `C = tgt`.
///
/// `f` is parametrized by polynomials `x_{ji}` sending `b_i` to
/// `Σ_j x_{ji} b'_j`, with `x_{ji} ∈ t^{max(δ_j−β_i,0)} k[t]` truncated below
/// `t^{δ_j}`.
pub fn hom_dim(src: &SubmoduleBasis, tgt: &SubmoduleBasis) -> Result<usize> {
    if src.field() != tgt.field() {
        return Err(Error::FieldMismatch(
            src.field().characteristic(),
            tgt.field().characteristic(),
        ));
    }
    let field = src.field();
    let (beta, delta) = (src.shape(), tgt.shape());
    let params = hom_params(beta, delta);
    let basis = src.basis();
    if basis.is_empty() {
        return Ok(params.len());
    }
    let ncols = basis.len() * delta.dim();
    let mut ech = Echelon::new(field, ncols);
    for &(j, i, s) in &params {
        let mut col = Vec::with_capacity(ncols);
        for v in &basis {
            let image = apply_monomial_map(v, delta, j, i, s);
            col.extend(tgt.echelon().reduce(image));
        }
        ech.insert(col);
    }
    Ok(params.len() - ech.rank())
}

/// Free parameters `(j, i, s)`: coefficient of `t^s` in `x_{ji}`.
pub(crate) fn hom_params(beta: &ModuleShape, delta: &ModuleShape) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for j in 1..=delta.components() {
        for i in 1..=beta.components() {
            let lo = delta.part(j).saturating_sub(beta.part(i));
            for s in lo..delta.part(j) {
                out.push((j, i, s));
            }
        }
    }
    out
}

/// Image of `v` under the map `b_i ↦ t^s b'_j`, other generators to zero.
fn apply_monomial_map(v: &ModuleElement, delta: &ModuleShape, j: usize, i: usize, s: usize) -> Vec<u32> {
    let mut out = vec![0; delta.dim()];
    for (u, &c) in v.component(i).iter().enumerate() {
        if c != 0 && u + s < delta.part(j) {
            out[delta.coord(j, u + s)] = c;
        }
    }
    out
}

/// `dim Hom(N_β / t^e A, N_δ)`.
pub fn hom_dim_quotient(a: &SubmoduleBasis, e: usize, target: &ModuleShape) -> Result<usize> {
    hom_dim(&a.t_power(e), &SubmoduleBasis::zero(a.field(), target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn shape(v: &[usize]) -> ModuleShape {
        ModuleShape::new(v.to_vec()).unwrap()
    }

    #[test]
    fn t_action() {
        let s = shape(&[5]);
        let b = ModuleElement::monomial(&s, 1, 0);
        assert_eq!(b.act_t(), ModuleElement::monomial(&s, 1, 1));
        assert!(b.act_t_pow(5).is_zero());
        let s = shape(&[5, 2]);
        let a = ModuleElement::parse(f2(), &s, "t^2*b_1 + t*b_2").unwrap();
        assert_eq!(a.act_t(), ModuleElement::monomial(&s, 1, 3));
    }

    #[test]
    fn spans() {
        let s = shape(&[4]);
        let full = SubmoduleBasis::span(f2(), &s, &[ModuleElement::monomial(&s, 1, 0)]);
        assert_eq!(full.dim(), 4);
        assert_eq!(SubmoduleBasis::span(f2(), &s, &[]).dim(), 0);
        let s = shape(&[5, 2]);
        let a = ModuleElement::parse(f2(), &s, "t^2*b_1 + t*b_2").unwrap();
        let span = SubmoduleBasis::span(f2(), &s, &[a]);
        assert_eq!(span.dim(), 3);
        assert_eq!(span.module_type().unwrap(), Partition::new(vec![3]).unwrap());
    }

    #[test]
    fn sums_and_intersections() {
        let f = PrimeField::new(3).unwrap();
        let s = shape(&[3, 2]);
        let u = SubmoduleBasis::span(f, &s, &[ModuleElement::parse(f, &s, "b_1 + b_2").unwrap()]);
        let v = SubmoduleBasis::span(f, &s, &[ModuleElement::parse(f, &s, "t*b_1").unwrap()]);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersect(&u).unwrap(), u);
        let sum = u.sum(&v).unwrap();
        let cap = u.intersect(&v).unwrap();
        assert_eq!(sum.dim() + cap.dim(), u.dim() + v.dim());
        assert_eq!(cap.dim(), 1);
        assert_eq!(SubmoduleBasis::full(f, &s).t_power(3).dim(), 0);
        let other = SubmoduleBasis::zero(f, &shape(&[3]));
        assert!(u.sum(&other).is_err());
    }

    #[test]
    fn types() {
        let s = shape(&[3, 2, 2]);
        let full = SubmoduleBasis::full(f2(), &s);
        assert_eq!(full.module_type().unwrap(), s.partition());
        assert_eq!(full.quotient_type(0).unwrap(), Partition::empty());
        assert_eq!(full.quotient_type(5).unwrap(), s.partition());
        let zero = SubmoduleBasis::zero(f2(), &s);
        assert_eq!(zero.module_type().unwrap(), Partition::empty());
        let not_inv = SubmoduleBasis::from_vectors(f2(), &s, vec![ModuleElement::monomial(&s, 1, 0).into_vector()]);
        assert!(not_inv.module_type().is_err());
    }

    #[test]
    fn heights() {
        let s = shape(&[5, 2]);
        let a = ModuleElement::parse(f2(), &s, "t^2*b_1 + t*b_2").unwrap();
        assert_eq!(a.height(), Height::Finite(1));
        assert_eq!(a.height_sequence(), vec![1, 3, 4]);
        assert_eq!(ModuleElement::zero(&s).height(), Height::Infinity);
        assert_eq!(ModuleElement::monomial(&s, 1, 0).height(), Height::Finite(0));
    }

    #[test]
    fn hom_dimensions() {
        for a in 1..5 {
            for b in 1..5 {
                let src = SubmoduleBasis::zero(f2(), &shape(&[a]));
                let tgt = SubmoduleBasis::zero(f2(), &shape(&[b]));
                assert_eq!(hom_dim(&src, &tgt).unwrap(), a.min(b));
            }
        }
        let zero = SubmoduleBasis::zero(f2(), &ModuleShape::default());
        assert_eq!(hom_dim(&zero, &SubmoduleBasis::zero(f2(), &shape(&[3]))).unwrap(), 0);
    }

    #[test]
    fn text_form() {
        let f = PrimeField::new(5).unwrap();
        let s = shape(&[3, 2]);
        let x = ModuleElement::parse(f, &s, "2*t^2*b_1 - t*b_2 + b_1").unwrap();
        assert_eq!(x.to_string(), "b_1 + 2*t^2*b_1 + 4*t*b_2");
        assert_eq!(ModuleElement::parse(f, &s, &x.to_string()).unwrap(), x);
        assert_eq!(ModuleElement::zero(&s).to_string(), "0");
        assert!(ModuleElement::parse(f, &s, "t*b_3").is_err());
        assert!(ModuleElement::parse(f, &s, "t*").is_err());
        assert!(ModuleElement::parse(f, &s, "").is_err());
    }
}
