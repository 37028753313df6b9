//! Coordinatized 2-vector spaces.
//!
//! Objects are natural numbers, 1-morphisms `N → M` are `N×M` matrices of
//! natural numbers and a 2-morphism `a ⇒ b` is a grid of blocks, the block
//! at `(i, j)` being an `a[i][j] × b[i][j]` matrix over a cyclotomic field.
//! Vertical composition multiplies blocks cell by cell in diagrammatic
//! order, so `α·β` means "α, then β".
//!
//! Index conventions, used by every basis-reordering cell:
//! horizontal composites list the summands `k = 0, 1, …` in order, tensor
//! factors are left-major, and a pair `(i, j)` in `N ⊠ M` has index
//! `i·M + j`.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::cyclotomic::{root_of_unity, CycError, CycMatrix, CycNumber};
use crate::xmod::{self, CrossedModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwoVectError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Field(#[from] CycError),
}

fn shape_err(msg: impl Into<String>) -> TwoVectError {
    TwoVectError::Shape(msg.into())
}

/// A 1-morphism: a matrix of natural numbers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<usize>,
}

impl fmt::Debug for NatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, ")")
    }
}

impl NatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<usize>) -> Result<Self, TwoVectError> {
        if entries.len() != rows * cols {
            return Err(shape_err(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, TwoVectError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(shape_err("ragged rows"));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let entries = (0..rows * cols).map(|x| f(x / cols, x % cols)).collect();
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0; rows * cols] }
    }

    /// `1_N`.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| usize::from(i == j))
    }

    /// The permutation matrix with a 1 at `(i, perm[i])`.
    pub fn permutation(perm: &[usize]) -> Self {
        Self::from_fn(perm.len(), perm.len(), |i, j| usize::from(perm[i] == j))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// The permutation `perm` with `self = permutation(perm)`, if any.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if self.rows != self.cols {
            return None;
        }
        let mut perm = Vec::with_capacity(self.rows);
        let mut col_hit = vec![false; self.cols];
        for i in 0..self.rows {
            let mut hit = None;
            for j in 0..self.cols {
                match self.get(i, j) {
                    0 => {}
                    1 if hit.is_none() && !col_hit[j] => hit = Some(j),
                    _ => return None,
                }
            }
            let j = hit?;
            col_hit[j] = true;
            perm.push(j);
        }
        Some(perm)
    }

    /// 1-invertibility: a 1-morphism has an inverse exactly when it is a
    /// permutation matrix.
    pub fn is_invertible(&self) -> bool {
        self.as_permutation().is_some()
    }

    /// Horizontal composite `a·b`, the matrix product.
    pub fn hcompose(&self, b: &Self) -> Result<Self, TwoVectError> {
        if self.cols != b.rows {
            return Err(shape_err(format!("cannot compose {:?} with {:?}", self.shape(), b.shape())));
        }
        Ok(Self::from_fn(self.rows, b.cols, |i, j| (0..self.cols).map(|k| self.get(i, k) * b.get(k, j)).sum()))
    }

    /// `(a⊠b)[(i,j),(k,l)] = a[i][k]·b[j][l]`.
    pub fn boxtimes(&self, b: &Self) -> Self {
        Self::from_fn(self.rows * b.rows, self.cols * b.cols, |x, y| {
            self.get(x / b.rows, y / b.cols) * b.get(x % b.rows, y % b.cols)
        })
    }

    /// Block-diagonal monoidal sum.
    pub fn boxplus(&self, b: &Self) -> Self {
        Self::from_fn(self.rows + b.rows, self.cols + b.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j),
                (false, false) => b.get(i - self.rows, j - self.cols),
                _ => 0,
            }
        })
    }

    /// Entrywise sum `a⊕b`.
    pub fn oplus(&self, b: &Self) -> Result<Self, TwoVectError> {
        if self.shape() != b.shape() {
            return Err(shape_err(format!("cannot add {:?} and {:?}", self.shape(), b.shape())));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + b.get(i, j)))
    }
}

/// A 2-morphism between 1-morphisms of the same shape. Equality ignores
/// the stored conductor.
#[derive(Clone)]
pub struct TwoMorphism {
    source: NatMatrix,
    target: NatMatrix,
    conductor: u32,
    blocks: Vec<CycMatrix>,
}

impl PartialEq for TwoMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.blocks == other.blocks
    }
}

impl Eq for TwoMorphism {}

impl fmt::Debug for TwoMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwoMorphism({} => {}: ", self.source, self.target)?;
        for (x, b) in self.blocks.iter().enumerate() {
            if x > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl TwoMorphism {
    /// Builds a 2-morphism from row-major blocks, embedding every block into
    /// the common conductor.
    pub fn new(source: NatMatrix, target: NatMatrix, blocks: Vec<CycMatrix>) -> Result<Self, TwoVectError> {
        Self::with_conductor(source, target, 1, blocks)
    }

    pub fn with_conductor(
        source: NatMatrix,
        target: NatMatrix,
        conductor: u32,
        blocks: Vec<CycMatrix>,
    ) -> Result<Self, TwoVectError> {
        if source.shape() != target.shape() {
            return Err(shape_err(format!("source {:?} and target {:?} differ", source.shape(), target.shape())));
        }
        if blocks.len() != source.entries.len() {
            return Err(shape_err(format!("{} blocks for {} cells", blocks.len(), source.entries.len())));
        }
        for (x, b) in blocks.iter().enumerate() {
            if b.shape() != (source.entries[x], target.entries[x]) {
                return Err(shape_err(format!(
                    "block {x} has shape {:?}, expected {:?}",
                    b.shape(),
                    (source.entries[x], target.entries[x])
                )));
            }
        }
        let l = blocks.iter().fold(conductor.max(1), |acc, b| acc.lcm(&b.conductor()));
        let blocks = blocks
            .into_iter()
            .map(|b| if b.conductor() == l { Ok(b) } else { b.embed(l) })
            .collect::<Result<_, _>>()?;
        Ok(Self { source, target, conductor: l, blocks })
    }

    pub fn from_fn(
        source: NatMatrix,
        target: NatMatrix,
        conductor: u32,
        mut f: impl FnMut(usize, usize) -> CycMatrix,
    ) -> Result<Self, TwoVectError> {
        let (n, m) = source.shape();
        let mut blocks = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                blocks.push(f(i, j));
            }
        }
        Self::with_conductor(source, target, conductor, blocks)
    }

    /// `1_a`.
    pub fn identity(a: &NatMatrix) -> Self {
        let blocks = a.entries.iter().map(|&d| CycMatrix::identity(d, 1)).collect();
        Self { source: a.clone(), target: a.clone(), conductor: 1, blocks }
    }

    pub fn zero(a: &NatMatrix, b: &NatMatrix) -> Result<Self, TwoVectError> {
        Self::from_fn(a.clone(), b.clone(), 1, |i, j| CycMatrix::zeros(a.get(i, j), b.get(i, j), 1))
    }

    pub fn source(&self) -> &NatMatrix {
        &self.source
    }

    pub fn target(&self) -> &NatMatrix {
        &self.target
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn block(&self, i: usize, j: usize) -> &CycMatrix {
        &self.blocks[i * self.source.cols + j]
    }

    pub fn blocks(&self) -> &[CycMatrix] {
        &self.blocks
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.blocks.iter().all(CycMatrix::is_identity)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(CycMatrix::is_zero)
    }

    /// 2-invertibility: source equals target and every block is invertible.
    pub fn is_invertible(&self) -> bool {
        self.source == self.target && self.blocks.iter().all(CycMatrix::is_invertible)
    }

    pub fn embed(&self, m: u32) -> Result<Self, TwoVectError> {
        let blocks = self.blocks.iter().map(|b| b.embed(m)).collect::<Result<_, _>>()?;
        Ok(Self { source: self.source.clone(), target: self.target.clone(), conductor: m, blocks })
    }

    /// `α·β`: cellwise products, `α` first.
    pub fn vcompose(&self, beta: &Self) -> Result<Self, TwoVectError> {
        if self.target != beta.source {
            return Err(shape_err(format!("target {} != source {}", self.target, beta.source)));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&beta.blocks)
            .map(|(a, b)| a.matmul(b))
            .collect::<Result<_, _>>()?;
        Self::with_conductor(self.source.clone(), beta.target.clone(), self.conductor.lcm(&beta.conductor), blocks)
    }

    pub fn vinverse(&self) -> Result<Self, TwoVectError> {
        let blocks = self.blocks.iter().map(CycMatrix::inverse).collect::<Result<_, _>>()?;
        Self::with_conductor(self.target.clone(), self.source.clone(), self.conductor, blocks)
    }

    /// Horizontal composite: cell `(i, j)` is the block-diagonal over `k`
    /// of `α[i][k] ⊗ β[k][j]`.
    pub fn hcompose(&self, beta: &Self) -> Result<Self, TwoVectError> {
        let m = self.source.cols;
        if m != beta.source.rows {
            return Err(shape_err(format!("cannot compose {:?} with {:?}", self.source.shape(), beta.source.shape())));
        }
        let src = self.source.hcompose(&beta.source)?;
        let tgt = self.target.hcompose(&beta.target)?;
        let l = self.conductor.lcm(&beta.conductor);
        Self::from_fn(src, tgt, l, |i, j| {
            let parts: Vec<CycMatrix> = (0..m).map(|k| self.block(i, k).kron(beta.block(k, j))).collect();
            CycMatrix::block_diag(&parts, l)
        })
    }

    /// `α⊠β` with cell `((i,j),(k,l))` equal to `α[i][k] ⊗ β[j][l]`.
    pub fn boxtimes(&self, beta: &Self) -> Self {
        let (bn, bm) = beta.source.shape();
        let l = self.conductor.lcm(&beta.conductor);
        Self::from_fn(
            self.source.boxtimes(&beta.source),
            self.target.boxtimes(&beta.target),
            l,
            |x, y| self.block(x / bn, y / bm).kron(beta.block(x % bn, y % bm)),
        )
        .expect("boxtimes shapes agree")
    }

    /// Monoidal sum: the cell grid is block-diagonal, off-diagonal cells are
    /// empty.
    pub fn boxplus(&self, beta: &Self) -> Self {
        let (n, m) = self.source.shape();
        let src = self.source.boxplus(&beta.source);
        let tgt = self.target.boxplus(&beta.target);
        let l = self.conductor.lcm(&beta.conductor);
        Self::from_fn(src.clone(), tgt.clone(), l, |i, j| match (i < n, j < m) {
            (true, true) => self.block(i, j).clone(),
            (false, false) => beta.block(i - n, j - m).clone(),
            _ => CycMatrix::zeros(0, 0, l),
        })
        .expect("boxplus shapes agree")
    }

    /// `α⊕β: a⊕b ⇒ a'⊕b'`, block-diagonal in every cell.
    pub fn oplus(&self, beta: &Self) -> Result<Self, TwoVectError> {
        let src = self.source.oplus(&beta.source)?;
        let tgt = self.target.oplus(&beta.target)?;
        let l = self.conductor.lcm(&beta.conductor);
        Self::from_fn(src, tgt, l, |i, j| CycMatrix::block_diag([self.block(i, j), beta.block(i, j)], l))
    }

    /// `α + β` for parallel 2-morphisms.
    pub fn add(&self, beta: &Self) -> Result<Self, TwoVectError> {
        if self.source != beta.source || self.target != beta.target {
            return Err(shape_err("sum of non-parallel 2-morphisms"));
        }
        let blocks = self.blocks.iter().zip(&beta.blocks).map(|(a, b)| a.add(b)).collect::<Result<_, _>>()?;
        Self::with_conductor(self.source.clone(), self.target.clone(), self.conductor.lcm(&beta.conductor), blocks)
    }

    /// Swaps source and target and transposes every block; the inverse of a
    /// basis-permutation cell.
    pub fn transpose(&self) -> Self {
        Self {
            source: self.target.clone(),
            target: self.source.clone(),
            conductor: self.conductor,
            blocks: self.blocks.iter().map(CycMatrix::transpose).collect(),
        }
    }

    pub fn scale(&self, s: &CycNumber) -> Self {
        let blocks = self.blocks.iter().map(|b| b.scale(s)).collect();
        Self::with_conductor(self.source.clone(), self.target.clone(), self.conductor, blocks).expect("same shapes")
    }
}

/// Position of each basis tuple in an ordered listing.
fn positions(tuples: &[Vec<usize>]) -> HashMap<&[usize], usize> {
    tuples.iter().enumerate().map(|(x, t)| (t.as_slice(), x)).collect()
}

/// The permutation 2-morphism from `src` to `tgt` matching basis tuples:
/// cell `(i, j)` gets `src_tuples(i, j)` on rows and `tgt_tuples(i, j)` on
/// columns, which must list the same tuples.
fn reindex(
    src: NatMatrix,
    tgt: NatMatrix,
    src_tuples: impl Fn(usize, usize) -> Vec<Vec<usize>>,
    tgt_tuples: impl Fn(usize, usize) -> Vec<Vec<usize>>,
) -> TwoMorphism {
    TwoMorphism::from_fn(src, tgt, 1, |i, j| {
        let s = src_tuples(i, j);
        let t = tgt_tuples(i, j);
        let pos = positions(&t);
        let perm: Vec<usize> = s.iter().map(|x| pos[x.as_slice()]).collect();
        CycMatrix::permutation(&perm)
    })
    .expect("reindexing shapes agree")
}

/// Basis of `(ab)[i][j]` as tuples `(k, r, s)` with `r < a[i][k]`,
/// `s < b[k][j]`, in composite order.
fn composite_basis(a: &NatMatrix, b: &NatMatrix, i: usize, j: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for k in 0..a.cols {
        for r in 0..a.get(i, k) {
            for s in 0..b.get(k, j) {
                out.push((k, r, s));
            }
        }
    }
    out
}

/// The associator `a·(b·c) ⇒ (a·b)·c`.
pub fn associator(a: &NatMatrix, b: &NatMatrix, c: &NatMatrix) -> Result<TwoMorphism, TwoVectError> {
    let bc = b.hcompose(c)?;
    let ab = a.hcompose(b)?;
    let src = a.hcompose(&bc)?;
    let tgt = ab.hcompose(c)?;
    Ok(reindex(
        src,
        tgt,
        |i, j| {
            // (k, r, (l, s, t))
            composite_basis(a, &bc, i, j)
                .into_iter()
                .map(|(k, r, x)| {
                    let (l, s, t) = composite_basis(b, c, k, j)[x];
                    vec![k, r, l, s, t]
                })
                .collect()
        },
        |i, j| {
            // (l, (k, r, s), t)
            composite_basis(&ab, c, i, j)
                .into_iter()
                .map(|(l, y, t)| {
                    let (k, r, s) = composite_basis(a, b, i, l)[y];
                    vec![k, r, l, s, t]
                })
                .collect()
        },
    ))
}

/// The inverse associator `(a·b)·c ⇒ a·(b·c)`.
pub fn associator_inverse(a: &NatMatrix, b: &NatMatrix, c: &NatMatrix) -> Result<TwoMorphism, TwoVectError> {
    Ok(associator(a, b, c)?.transpose())
}

/// The tensorator `(a⊠b)·(c⊠d) ⇒ (a·c)⊠(b·d)`.
pub fn tensorator(a: &NatMatrix, b: &NatMatrix, c: &NatMatrix, d: &NatMatrix) -> Result<TwoMorphism, TwoVectError> {
    let ab = a.boxtimes(b);
    let cd = c.boxtimes(d);
    let src = ab.hcompose(&cd)?;
    let ac = a.hcompose(c)?;
    let bd = b.hcompose(d)?;
    let tgt = ac.boxtimes(&bd);
    let (bn, bm, dp) = (b.rows, b.cols, d.cols);
    Ok(reindex(
        src,
        tgt,
        |x, y| {
            let (i, j, p, q) = (x / bn, x % bn, y / dp, y % dp);
            let mut out = Vec::new();
            for kl in 0..ab.cols {
                let (k, l) = (kl / bm, kl % bm);
                for r in 0..a.get(i, k) {
                    for s in 0..b.get(j, l) {
                        for t in 0..c.get(k, p) {
                            for u in 0..d.get(l, q) {
                                out.push(vec![k, r, t, l, s, u]);
                            }
                        }
                    }
                }
            }
            out
        },
        |x, y| {
            let (i, j, p, q) = (x / bn, x % bn, y / dp, y % dp);
            let left = composite_basis(a, c, i, p);
            let right = composite_basis(b, d, j, q);
            let mut out = Vec::new();
            for &(k, r, t) in &left {
                for &(l, s, u) in &right {
                    out.push(vec![k, r, t, l, s, u]);
                }
            }
            out
        },
    ))
}

/// The categorical group GL(N) realized with scalars in μ_m: the crossed
/// module `(μ_m)^N → S_N` together with its embedding into 2Vect.
#[derive(Clone, Debug)]
pub struct GlCrossedModule {
    xmod: CrossedModule,
    n: usize,
    conductor: u32,
    perms: Vec<Vec<usize>>,
}

pub fn gl_crossed_module(n: usize, conductor: u32) -> GlCrossedModule {
    let xmod = xmod::wreath(n, conductor as usize);
    let sym = crate::groups::SymmetricGroup::new(n);
    let perms = xmod.base().elements().map(|x| sym.perm(x).to_vec()).collect();
    GlCrossedModule { xmod, n, conductor, perms }
}

impl GlCrossedModule {
    pub fn xmod(&self) -> &CrossedModule {
        &self.xmod
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// The permutation matrix of a base element.
    pub fn permutation(&self, x: usize) -> NatMatrix {
        NatMatrix::permutation(&self.perms[x])
    }

    /// Exponents `(k_0, …, k_{N−1})` of a principal element.
    pub fn exponents(&self, e: usize) -> Vec<usize> {
        let m = self.conductor as usize;
        let mut d = vec![0; self.n];
        let mut idx = e;
        for i in (0..self.n).rev() {
            d[i] = idx % m;
            idx /= m;
        }
        d
    }

    /// The diagonal 2-endomorphism of `1_N` with entries `ζ_m^{k_i}`.
    pub fn scalars(&self, e: usize) -> TwoMorphism {
        let ks = self.exponents(e);
        let id = NatMatrix::identity(self.n);
        TwoMorphism::from_fn(id.clone(), id, self.conductor, |i, j| {
            if i == j {
                CycMatrix::single(root_of_unity(self.conductor, ks[i] as i64).expect("positive conductor"))
            } else {
                CycMatrix::zeros(0, 0, self.conductor)
            }
        })
        .expect("diagonal shapes")
    }
}
