//! Embeddings `(A ⊆ B)` of nilpotent operators, their LR tableaux, the
//! standard families (poles, empties, pickets, `D(m,n)`), morphisms and
//! short exact sequences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, PrimeField};
use crate::nilpotent::{hom_dim, ModuleElement, ModuleShape, SubmoduleBasis};
use crate::partition::Partition;
use crate::tableau::LrTableau;

/// `A ⊆ B = N_β` with `A` the `k[t]`-span of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    field: PrimeField,
    ambient: ModuleShape,
    generators: Vec<ModuleElement>,
    sub: SubmoduleBasis,
}

impl Embedding {
    pub fn new(field: PrimeField, ambient: ModuleShape, generators: Vec<ModuleElement>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.shape() != &ambient) {
            return Err(Error::AmbientMismatch(format!(
                "generator {g} lives in {}, not {ambient}",
                g.shape()
            )));
        }
        let sub = SubmoduleBasis::span(field, &ambient, &generators);
        Ok(Embedding {
            field,
            ambient,
            generators,
            sub,
        })
    }

    /// `E_β = (0 ⊆ N_β)`.
    pub fn empty(field: PrimeField, beta: &Partition) -> Self {
        Self::new(field, ModuleShape::from_partition(beta), Vec::new()).expect("no generators")
    }

    /// The pole `P(m)` of a strictly increasing sequence `m`.
    pub fn pole(field: PrimeField, m: &[usize]) -> Result<Self> {
        let data = pole_data(m)?;
        let ambient = ModuleShape::new(data.iter().map(|&(b, _)| b).collect())?;
        let terms: Vec<(i64, usize, usize)> = data
            .iter()
            .enumerate()
            .map(|(j, &(_, l))| (1, l, j + 1))
            .collect();
        let a = ModuleElement::from_terms(field, &ambient, &terms);
        Self::new(field, ambient, vec![a])
    }

    /// `(t^{max(ℓ−i,0)} N_ℓ ⊆ N_ℓ)`.
    pub fn picket(field: PrimeField, i: usize, l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::Precondition("picket needs ℓ ≥ 1".into()));
        }
        let ambient = ModuleShape::new(vec![l])?;
        let gens = if i == 0 {
            Vec::new()
        } else {
            vec![ModuleElement::monomial(&ambient, 1, l.saturating_sub(i))]
        };
        Self::new(field, ambient, gens)
    }

    /// `D(m,n)` on `N_β ⊕ N_λ`, where `β`, `λ` are the pole ambients of `m`
    /// and `n`; an empty `n` gives `P(m)`.
    pub fn d_embedding(field: PrimeField, m: &[usize], n: &[usize]) -> Result<Self> {
        let (r, q) = check_mn(m, n)?;
        let md = pole_data(m)?;
        let nd = if n.is_empty() { Vec::new() } else { pole_data(n)? };
        let mut parts: Vec<usize> = md.iter().map(|&(b, _)| b).collect();
        parts.extend(nd.iter().map(|&(b, _)| b));
        let ambient = ModuleShape::new(parts)?;
        let s = md.len();
        let shift = (r as i64 - q - 1) as usize;
        let a1: Vec<(i64, usize, usize)> = md
            .iter()
            .enumerate()
            .map(|(j, &(_, l))| (1, l, j + 1))
            .collect();
        let mut a2: Vec<(i64, usize, usize)> = md
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &(_, l))| (1, l + shift, j + 1))
            .collect();
        a2.extend(nd.iter().enumerate().map(|(j, &(_, l))| (1, l, s + j + 1)));
        let gens: Vec<ModuleElement> = [a1, a2]
            .iter()
            .map(|t| ModuleElement::from_terms(field, &ambient, t))
            .filter(|g| !g.is_zero())
            .collect();
        Self::new(field, ambient, gens)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> &ModuleShape {
        &self.ambient
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.generators
    }

    pub fn submodule(&self) -> &SubmoduleBasis {
        &self.sub
    }

    /// Least `r` with `t^r A = 0`.
    pub fn loewy_length(&self) -> usize {
        (0..)
            .find(|&e| self.sub.t_power(e).dim() == 0)
            .expect("nilpotent")
    }

    /// `(α, β, γ)`: types of `A`, `B` and `B/A`.
    pub fn types(&self) -> Result<(Partition, Partition, Partition)> {
        Ok((
            self.sub.module_type()?,
            self.ambient.partition(),
            self.sub.quotient_type(0)?,
        ))
    }

    /// The chain of types of `B / t^e A`, `e = 0..=r`, as an LR tableau.
    pub fn lr_tableau(&self) -> Result<LrTableau> {
        let r = self.loewy_length();
        let chain = (0..=r)
            .map(|e| self.sub.quotient_type(e))
            .collect::<Result<Vec<_>>>()?;
        let t = LrTableau::from_chain_unchecked(chain[0].clone(), chain)?;
        t.validate()
            .map_err(|e| Error::Internal(format!("tableau of an embedding is not LR: {e}")))?;
        Ok(t)
    }

    pub fn direct_sum(&self, other: &Embedding) -> Result<Embedding> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.characteristic(),
                other.field.characteristic(),
            ));
        }
        let ambient = self.ambient.concat(&other.ambient);
        let left_pad = vec![0; other.ambient.dim()];
        let right_pad = vec![0; self.ambient.dim()];
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut v = g.as_vector().to_vec();
            v.extend_from_slice(&left_pad);
            gens.push(ModuleElement::from_vector(&ambient, v));
        }
        for g in &other.generators {
            let mut v = right_pad.clone();
            v.extend_from_slice(g.as_vector());
            gens.push(ModuleElement::from_vector(&ambient, v));
        }
        Embedding::new(self.field, ambient, gens)
    }

    /// Direct sum of a list, `E_()` when empty.
    pub fn sum_all(field: PrimeField, parts: &[Embedding]) -> Result<Embedding> {
        parts
            .iter()
            .try_fold(Embedding::empty(field, &Partition::empty()), |acc, x| acc.direct_sum(x))
    }

    /// The same data over another prime field; generator coefficients are
    /// read as integers.
    pub fn with_field(&self, field: PrimeField) -> Result<Embedding> {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let v = g.as_vector().iter().map(|&c| field.reduce(c as i64)).collect();
                ModuleElement::from_vector(&self.ambient, v)
            })
            .collect();
        Embedding::new(field, self.ambient.clone(), gens)
    }

    pub fn to_json(&self) -> EmbeddingJson {
        EmbeddingJson {
            field: self.field.characteristic(),
            ambient: self.ambient.parts().to_vec(),
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn from_json(json: &EmbeddingJson) -> Result<Embedding> {
        let field = PrimeField::new(json.field)?;
        let ambient = ModuleShape::new(json.ambient.clone())?;
        let gens = json
            .generators
            .iter()
            .map(|g| ModuleElement::parse(field, &ambient, g))
            .collect::<Result<Vec<_>>>()?;
        Embedding::new(field, ambient, gens)
    }
}

/// Wire form of an embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub field: u32,
    pub ambient: Vec<usize>,
    pub generators: Vec<String>,
}

/// Gap positions of `m`, largest first: `ℓ` with `ℓ = r` or
/// `m_{ℓ+1} > m_ℓ + 1`.
pub fn gaps(m: &[usize]) -> Vec<usize> {
    (0..m.len())
        .rev()
        .filter(|&l| l + 1 == m.len() || m[l + 1] > m[l] + 1)
        .collect()
}

/// `(β_j, ℓ_j)` for each gap `i_j` of `m`: `β_j = m_{i_j} + 1`,
/// `ℓ_j = m_{i_j} − i_j`.
pub fn pole_data(m: &[usize]) -> Result<Vec<(usize, usize)>> {
    if m.is_empty() {
        return Err(Error::Precondition("a pole needs a nonempty sequence".into()));
    }
    if m.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(format!("{m:?} is not strictly increasing")));
    }
    Ok(gaps(m).into_iter().map(|i| (m[i] + 1, m[i] - i)).collect())
}

/// Validates the `D(m,n)` data and returns `(r, q)` with `q = −1` for an
/// empty `n`.
pub(crate) fn check_mn(m: &[usize], n: &[usize]) -> Result<(usize, i64)> {
    pole_data(m)?;
    if !n.is_empty() {
        pole_data(n)?;
    }
    let r = m.len() - 1;
    let q = n.len() as i64 - 1;
    if q >= r as i64 {
        return Err(Error::Precondition(format!(
            "{n:?} must be shorter than {m:?}"
        )));
    }
    if let Some(&nq) = n.last() {
        if m[r] < nq + 1 {
            return Err(Error::Precondition(format!(
                "need m_r ≥ n_q + 1, got {} and {nq}",
                m[r]
            )));
        }
    }
    Ok((r, q))
}

/// A matrix of polynomials in `t`: entry `(j, i)` is the image of source
/// generator `b_i` in target component `j`, as integer coefficients by
/// degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<i64>>>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![vec![Vec::new(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = vec![1];
        }
        m
    }

    /// Adds `c·t^u` to entry `(j, i)`, 1-based.
    pub fn add_term(&mut self, j: usize, i: usize, c: i64, u: usize) {
        let e = &mut self.entries[j - 1][i - 1];
        if e.len() <= u {
            e.resize(u + 1, 0);
        }
        e[u] += c;
    }

    pub fn block_diag(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut m = Self::zero(self.rows + other.rows, self.cols + other.cols);
        for j in 0..self.rows {
            m.entries[j][..self.cols].clone_from_slice(&self.entries[j]);
        }
        for j in 0..other.rows {
            m.entries[self.rows + j][self.cols..].clone_from_slice(&other.entries[j]);
        }
        m
    }

    /// `[self | 0]` with `extra` zero columns appended.
    pub fn with_zero_cols(&self, extra: usize) -> PolyMatrix {
        let mut m = self.clone();
        m.cols += extra;
        for row in m.entries.iter_mut() {
            row.extend(std::iter::repeat_n(Vec::new(), extra));
        }
        m
    }

    /// The `k`-linear map `N_src → N_tgt` as rows of images of source
    /// coordinates.
    pub fn linear_map(&self, field: PrimeField, src: &ModuleShape, tgt: &ModuleShape) -> Vec<Vec<u32>> {
        src.coords()
            .iter()
            .map(|&(i, u)| {
                let mut img = vec![0; tgt.dim()];
                for j in 1..=tgt.components() {
                    for (s, &c) in self.entries[j - 1][i - 1].iter().enumerate() {
                        if u + s < tgt.part(j) {
                            let k = tgt.coord(j, u + s);
                            img[k] = field.add(img[k], field.reduce(c));
                        }
                    }
                }
                img
            })
            .collect()
    }

    pub fn apply(&self, field: PrimeField, x: &ModuleElement, tgt: &ModuleShape) -> ModuleElement {
        let images = self.linear_map(field, x.shape(), tgt);
        let mut out = vec![0; tgt.dim()];
        for (img, &c) in images.iter().zip(x.as_vector()) {
            field.axpy(&mut out, c, img);
        }
        ModuleElement::from_vector(tgt, out)
    }
}

/// A compatible pair of maps between embeddings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingMorphism {
    pub source: Embedding,
    pub target: Embedding,
    pub matrix: PolyMatrix,
}

impl EmbeddingMorphism {
    pub fn identity(x: &Embedding) -> Self {
        EmbeddingMorphism {
            source: x.clone(),
            target: x.clone(),
            matrix: PolyMatrix::identity(x.ambient().components()),
        }
    }

    pub fn zero(x: &Embedding, y: &Embedding) -> Self {
        EmbeddingMorphism {
            source: x.clone(),
            target: y.clone(),
            matrix: PolyMatrix::zero(y.ambient().components(), x.ambient().components()),
        }
    }

    /// Well-definedness of every entry and `f(A_src) ⊆ A_tgt`.
    pub fn validate(&self) -> Result<()> {
        let (src, tgt) = (self.source.ambient(), self.target.ambient());
        let field = self.source.field();
        if self.matrix.rows != tgt.components() || self.matrix.cols != src.components() {
            return Err(Error::InvalidMorphism(format!(
                "matrix is {}x{}, maps {src} to {tgt}",
                self.matrix.rows, self.matrix.cols
            )));
        }
        for j in 1..=tgt.components() {
            for i in 1..=src.components() {
                let lo = tgt.part(j).saturating_sub(src.part(i));
                let entry = &self.matrix.entries[j - 1][i - 1];
                if let Some(u) = (0..lo.min(entry.len())).find(|&u| field.reduce(entry[u]) != 0) {
                    return Err(Error::InvalidMorphism(format!(
                        "entry ({j}, {i}) has a t^{u} term, needs divisibility by t^{lo}"
                    )));
                }
            }
        }
        for g in self.source.generators() {
            let img = self.matrix.apply(field, g, tgt);
            if !self.target.submodule().contains(&img) {
                return Err(Error::InvalidMorphism(format!(
                    "generator {g} maps to {img}, outside the target subspace"
                )));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    fn linear_map(&self) -> Vec<Vec<u32>> {
        self.matrix
            .linear_map(self.source.field(), self.source.ambient(), self.target.ambient())
    }
}

/// `0 → left → middle → right → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence {
    pub left: Embedding,
    pub middle: Embedding,
    pub right: Embedding,
    pub inject: PolyMatrix,
    pub project: PolyMatrix,
}

impl ShortExactSequence {
    /// The split sequence `0 → X → X ⊕ Y → Y → 0`.
    pub fn split(x: &Embedding, y: &Embedding) -> Result<Self> {
        let (nx, ny) = (x.ambient().components(), y.ambient().components());
        let inject = PolyMatrix::identity(nx).block_diag(&PolyMatrix::zero(ny, 0));
        let project = PolyMatrix::zero(0, nx).block_diag(&PolyMatrix::identity(ny));
        Ok(ShortExactSequence {
            left: x.clone(),
            middle: x.direct_sum(y)?,
            right: y.clone(),
            inject,
            project,
        })
    }

    pub fn inject_morphism(&self) -> EmbeddingMorphism {
        EmbeddingMorphism {
            source: self.left.clone(),
            target: self.middle.clone(),
            matrix: self.inject.clone(),
        }
    }

    pub fn project_morphism(&self) -> EmbeddingMorphism {
        EmbeddingMorphism {
            source: self.middle.clone(),
            target: self.right.clone(),
            matrix: self.project.clone(),
        }
    }

    /// `0 → left ⊕ W → middle ⊕ W → right → 0`.
    pub fn pad_left(&self, w: &Embedding) -> Result<Self> {
        let nw = w.ambient().components();
        Ok(ShortExactSequence {
            left: self.left.direct_sum(w)?,
            middle: self.middle.direct_sum(w)?,
            right: self.right.clone(),
            inject: self.inject.block_diag(&PolyMatrix::identity(nw)),
            project: self.project.with_zero_cols(nw),
        })
    }

    /// Exactness of the ambient sequence and of the subspace sequence.
    pub fn check_exact(&self) -> Result<()> {
        let field = self.middle.field();
        if self.left.field() != field || self.right.field() != field {
            return Err(Error::FieldMismatch(
                self.left.field().characteristic(),
                self.right.field().characteristic(),
            ));
        }
        let psi = self.inject_morphism();
        let phi = self.project_morphism();
        psi.validate()
            .map_err(|e| Error::NotExact(format!("injection: {e}")))?;
        phi.validate()
            .map_err(|e| Error::NotExact(format!("projection: {e}")))?;
        let (bl, bm, br) = (
            self.left.ambient().dim(),
            self.middle.ambient().dim(),
            self.right.ambient().dim(),
        );
        let psi_map = psi.linear_map();
        let phi_map = phi.linear_map();
        let rank_psi = Echelon::from_rows(field, bm, psi_map.iter().cloned()).rank();
        let rank_phi = Echelon::from_rows(field, br, phi_map.iter().cloned()).rank();
        if rank_psi != bl {
            return Err(Error::NotExact(format!(
                "ambient: injection has rank {rank_psi}, left has dimension {bl}"
            )));
        }
        if rank_phi != br {
            return Err(Error::NotExact(format!(
                "ambient: projection has rank {rank_phi}, right has dimension {br}"
            )));
        }
        let shape_m = self.middle.ambient();
        let shape_r = self.right.ambient();
        for (k, img) in psi_map.iter().enumerate() {
            let x = ModuleElement::from_vector(shape_m, img.clone());
            if !phi.matrix.apply(field, &x, shape_r).is_zero() {
                return Err(Error::NotExact(format!(
                    "ambient: composite is nonzero on left coordinate {k}"
                )));
            }
        }
        if rank_psi + rank_phi != bm {
            return Err(Error::NotExact(format!(
                "ambient: dimensions {bl} + {br} do not add up to {bm}"
            )));
        }
        let (al, am, ar) = (
            self.left.submodule().dim(),
            self.middle.submodule().dim(),
            self.right.submodule().dim(),
        );
        if al + ar != am {
            return Err(Error::NotExact(format!(
                "subspaces: dimensions {al} + {ar} do not add up to {am}"
            )));
        }
        let images: Vec<Vec<u32>> = self
            .middle
            .submodule()
            .basis()
            .iter()
            .map(|b| phi.matrix.apply(field, b, shape_r).into_vector())
            .collect();
        let rank = Echelon::from_rows(field, br, images).rank();
        if rank != ar {
            return Err(Error::NotExact(format!(
                "subspaces: projection maps onto a {rank}-dimensional part of {ar} dimensions"
            )));
        }
        Ok(())
    }

    pub fn is_exact(&self) -> bool {
        self.check_exact().is_ok()
    }

    pub fn to_json(&self) -> SesJson {
        SesJson {
            left: self.left.to_json(),
            middle: self.middle.to_json(),
            right: self.right.to_json(),
            inject: self.inject.entries.clone(),
            project: self.project.entries.clone(),
        }
    }
}

/// Wire form of a short exact sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesJson {
    pub left: EmbeddingJson,
    pub middle: EmbeddingJson,
    pub right: EmbeddingJson,
    pub inject: Vec<Vec<Vec<i64>>>,
    pub project: Vec<Vec<Vec<i64>>>,
}

/// `[X, Z] = dim Hom(X, Z)` in the category of embeddings.
pub fn hom_dim_embeddings(x: &Embedding, z: &Embedding) -> Result<usize> {
    hom_dim(x.submodule(), z.submodule())
}

/// `[X, Z] ≤ [Y, Z]` for every `Z` in the family. Only a necessary
/// condition for the hom order.
pub fn hom_leq_over_family(x: &Embedding, y: &Embedding, family: &[Embedding]) -> Result<bool> {
    for z in family {
        if hom_dim_embeddings(x, z)? > hom_dim_embeddings(y, z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pickets `(i, ℓ)` for `0 ≤ i ≤ max_i`, `1 ≤ ℓ ≤ max_l`.
pub fn picket_family(field: PrimeField, max_i: usize, max_l: usize) -> Vec<Embedding> {
    (0..=max_i)
        .flat_map(|i| (1..=max_l).map(move |l| (i, l)))
        .map(|(i, l)| Embedding::picket(field, i, l).expect("ℓ ≥ 1"))
        .collect()
}
