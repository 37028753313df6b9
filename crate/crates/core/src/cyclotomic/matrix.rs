use std::fmt;

use num_integer::Integer;

use super::{CycError, CycNumber};

/// A dense row-major matrix over ℚ(ζₙ). Zero rows or columns are allowed.
/// Equality compares values, not the conductor they are stored at.
#[derive(Clone, Debug)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CycNumber>,
}

impl PartialEq for CycMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for CycMatrix {}

impl CycMatrix {
    /// Builds a matrix from row-major entries, embedding every entry into the
    /// common conductor `lcm(conductor, entry conductors)`.
    pub fn new(rows: usize, cols: usize, conductor: u32, entries: Vec<CycNumber>) -> Result<Self, CycError> {
        if entries.len() != rows * cols {
            return Err(CycError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if conductor == 0 {
            return Err(CycError::ZeroConductor);
        }
        let l = entries.iter().fold(conductor, |acc, e| acc.lcm(&e.conductor()));
        let entries = entries
            .into_iter()
            .map(|e| e.embed(l).expect("lcm"))
            .collect();
        Ok(Self { rows, cols, conductor: l, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, conductor: u32, mut f: impl FnMut(usize, usize) -> CycNumber) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, conductor, entries).expect("shape is consistent")
    }

    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Self {
        Self { rows, cols, conductor, entries: vec![CycNumber::zero(conductor); rows * cols] }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        Self::scalar(n, &CycNumber::one(conductor))
    }

    /// `s` times the n×n identity.
    pub fn scalar(n: usize, s: &CycNumber) -> Self {
        let c = s.conductor();
        Self::from_fn(n, n, c, |i, j| if i == j { s.clone() } else { CycNumber::zero(c) })
    }

    /// The 1×1 matrix `(s)`.
    pub fn single(s: CycNumber) -> Self {
        let c = s.conductor();
        Self { rows: 1, cols: 1, conductor: c, entries: vec![s] }
    }

    /// The permutation matrix with a 1 at `(i, perm[i])`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Self::from_fn(n, n, 1, |i, j| CycNumber::from_int(1, i64::from(perm[i] == j)))
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

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNumber {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[CycNumber] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[CycNumber] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycNumber::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn embed(&self, m: u32) -> Result<Self, CycError> {
        let entries = self.entries.iter().map(|e| e.embed(m)).collect::<Result<_, _>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, conductor: m, entries })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.conductor, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self, CycError> {
        if self.cols != rhs.rows {
            return Err(CycError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let l = self.conductor.lcm(&rhs.conductor);
        Ok(Self::from_fn(self.rows, rhs.cols, l, |i, j| {
            let mut acc = CycNumber::zero(l);
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = rhs.get(k, j);
                if b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, CycError> {
        if self.shape() != rhs.shape() {
            return Err(CycError::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let l = self.conductor.lcm(&rhs.conductor);
        Ok(Self::from_fn(self.rows, self.cols, l, |i, j| self.get(i, j) + rhs.get(i, j)))
    }

    pub fn scale(&self, s: &CycNumber) -> Self {
        let l = self.conductor.lcm(&s.conductor());
        Self::from_fn(self.rows, self.cols, l, |i, j| self.get(i, j) * s)
    }

    /// Kronecker product with the left factor as the major index.
    pub fn kron(&self, rhs: &Self) -> Self {
        let l = self.conductor.lcm(&rhs.conductor);
        Self::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, l, |i, j| {
            let a = self.get(i / rhs.rows, j / rhs.cols);
            if a.is_zero() {
                return CycNumber::zero(l);
            }
            a * rhs.get(i % rhs.rows, j % rhs.cols)
        })
    }

    /// Block-diagonal sum of `blocks` in the given order.
    pub fn block_diag<'a>(blocks: impl IntoIterator<Item = &'a CycMatrix>, conductor: u32) -> Self {
        let blocks: Vec<&CycMatrix> = blocks.into_iter().collect();
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let l = blocks.iter().fold(conductor, |acc, b| acc.lcm(&b.conductor));
        let mut out = Self::zeros(rows, cols, l);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.entries[(r0 + i) * cols + c0 + j] = b.get(i, j).embed(l).expect("lcm");
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && super::rank_nullspace(self).0 == self.rows
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self, CycError> {
        if self.rows != self.cols {
            return Err(CycError::Singular);
        }
        let n = self.rows;
        let c = self.conductor;
        let mut a: Vec<Vec<CycNumber>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<CycNumber>> = (0..n)
            .map(|i| (0..n).map(|j| CycNumber::from_int(c, i64::from(i == j))).collect())
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(CycError::Singular)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p_inv = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &p_inv;
                inv[col][j] = &inv[col][j] * &p_inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                    inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                }
            }
        }
        Ok(Self::from_fn(n, n, c, |i, j| inv[i][j].clone()))
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
