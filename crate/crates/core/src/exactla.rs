//! Dense exact linear algebra over a prime field `F_p`.
//!
//! Every computation in the crate bottoms out here. Elimination always picks
//! the leftmost available pivot column and the topmost candidate row, so any
//! basis produced downstream (kernels, quotients, approximations) is a pure
//! function of its input.

use std::fmt;

use crate::error::{Error, Result};

/// Returns true when `p` is a prime small enough for `u32` residues.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
fn mulmod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

/// Multiplicative inverse of a nonzero residue.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u32;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Dense row-major matrix with entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, {}x{}) [", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// Output of [`FpMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl FpMatrix {
    /// Validating constructor.
    pub fn new(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&x| x >= p) {
            return Err(Error::EntryOutOfRange { entry: *bad, p });
        }
        Ok(Self { p, rows, cols, data })
    }

    /// Builds a matrix from nested rows. An empty row list yields a `0 x cols` matrix.
    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(p, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        debug_assert!(is_prime(p));
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
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

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.p);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        assert_eq!(self.p, other.p, "matrix product over different fields");
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot += a * b as u64;
                }
                // keep the accumulator bounded for large p
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|a| *a %= p);
                }
            }
            for (c, a) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = (a % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64 % p).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| (a + b) % p).collect();
        Self { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| (a + p - b) % p).collect();
        Self { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        let data = self.data.iter().map(|&a| (p - a) % p).collect();
        Self { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p;
        let c = c % p;
        let data = self.data.iter().map(|&a| mulmod(a, c, p)).collect();
        Self { p, rows: self.rows, cols: self.cols, data }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, other: &Self, c: u32) {
        assert_eq!(self.shape(), other.shape());
        let p = self.p;
        let c = c % p;
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = ((*a as u64 + c as u64 * b as u64) % p as u64) as u32;
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Self::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.data[r * out.cols..r * out.cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * out.cols + self.cols..(r + 1) * out.cols].copy_from_slice(other.row(r));
        }
        out
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(blocks: &[&Self], p: u32) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Overwrites the block with top-left corner `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut out = Self::zeros(self.p, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.p, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Self { p: self.p, rows: rows.len(), cols: self.cols, data }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.p, self.rows * other.rows, self.cols * other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if a == 0 {
                    continue;
                }
                for rr in 0..other.rows {
                    for cc in 0..other.cols {
                        let v = mulmod(a, other.get(rr, cc), self.p);
                        out.set(r * other.rows + rr, c * other.cols + cc, v);
                    }
                }
            }
        }
        out
    }

    /// Row reduction in place; returns pivot columns. When `track` is given it
    /// receives the same row operations.
    fn eliminate(&mut self, mut track: Option<&mut FpMatrix>) -> Vec<usize> {
        let p = self.p;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(found) = (row..self.rows).find(|&r| self.data[r * cols + col] != 0) else {
                continue;
            };
            if found != row {
                self.swap_rows(row, found);
                if let Some(t) = track.as_deref_mut() {
                    t.swap_rows(row, found);
                }
            }
            let inv = inv_mod(self.data[row * cols + col], p);
            if inv != 1 {
                self.scale_row(row, inv);
                if let Some(t) = track.as_deref_mut() {
                    t.scale_row(row, inv);
                }
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.data[r * cols + col];
                if f != 0 {
                    self.axpy_row(r, row, p - f, col);
                    if let Some(t) = track.as_deref_mut() {
                        t.axpy_row(r, row, p - f, 0);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (first, second) = self.data.split_at_mut(hi * cols);
        first[lo * cols..(lo + 1) * cols].swap_with_slice(&mut second[..cols]);
    }

    fn scale_row(&mut self, r: usize, c: u32) {
        let p = self.p;
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = mulmod(*x, c, p);
        }
    }

    /// row[dst] += c * row[src], touching columns from `start` on.
    fn axpy_row(&mut self, dst: usize, src: usize, c: u32, start: usize) {
        let p = self.p as u64;
        let cols = self.cols;
        let c = c as u64;
        if dst < src {
            let (a, b) = self.data.split_at_mut(src * cols);
            let d = &mut a[dst * cols + start..(dst + 1) * cols];
            let s = &b[start..cols];
            for (x, &y) in d.iter_mut().zip(s) {
                if y != 0 {
                    *x = ((*x as u64 + c * y as u64) % p) as u32;
                }
            }
        } else {
            let (a, b) = self.data.split_at_mut(dst * cols);
            let s = &a[src * cols + start..(src + 1) * cols];
            let d = &mut b[start..cols];
            for (x, &y) in d.iter_mut().zip(s) {
                if y != 0 {
                    *x = ((*x as u64 + c * y as u64) % p) as u32;
                }
            }
        }
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let pivots = reduced.eliminate(None);
        let rank = pivots.len();
        Rref { reduced, pivots, rank }
    }

    /// `(R, E, pivots)` with `E * self = R` in reduced row echelon form.
    pub fn rref_with_transform(&self) -> (FpMatrix, FpMatrix, Vec<usize>) {
        let mut reduced = self.clone();
        let mut e = FpMatrix::identity(self.p, self.rows);
        let pivots = reduced.eliminate(Some(&mut e));
        (reduced, e, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right null space, one basis vector per free column in increasing order.
    pub fn kernel_vectors(&self) -> Vec<Vec<u32>> {
        let Rref { reduced, pivots, .. } = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - reduced.get(r, free)) % p;
                }
                v
            })
            .collect()
    }

    /// Kernel basis as the columns of a `cols x nullity` matrix.
    pub fn kernel_matrix(&self) -> FpMatrix {
        FpMatrix::from_columns(self.p, self.cols, &self.kernel_vectors())
    }

    pub fn kernel_basis(&self) -> Subspace {
        Subspace::from_vectors(self.p, self.cols, &self.kernel_vectors())
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::from_row_matrix(self.transpose())
    }

    /// One solution of `self * x = rhs` with free variables set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[u32]) -> Result<Option<Vec<u32>>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&FpMatrix::from_columns(self.p, self.rows, &[rhs.to_vec()]));
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = reduced.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves `self * X = rhs` for a matrix right-hand side.
    pub fn solve_matrix(&self, rhs: &FpMatrix) -> Option<FpMatrix> {
        assert_eq!(rhs.rows, self.rows);
        let aug = self.hstack(rhs);
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = FpMatrix::zeros(self.p, self.cols, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(c, j, reduced.get(r, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let (reduced, e, pivots) = self.rref_with_transform();
        (pivots.len() == self.rows && reduced == FpMatrix::identity(self.p, self.rows)).then_some(e)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `L` with `L * self = I` for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<FpMatrix> {
        let (_, e, pivots) = self.rref_with_transform();
        if pivots.len() != self.cols {
            return None;
        }
        Some(e.block(0, 0, self.cols, self.rows))
    }

    /// `S` with `self * S = I` for a matrix of full row rank.
    pub fn right_inverse(&self) -> Option<FpMatrix> {
        self.transpose().left_inverse().map(|l| l.transpose())
    }
}

/// A linear subspace of `F_p^n`, stored as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    /// Basis vectors as rows, in reduced row echelon form.
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: FpMatrix::zeros(p, 0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(p: u32, ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: FpMatrix::identity(p, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the rows of `rows`.
    pub fn from_row_matrix(rows: FpMatrix) -> Self {
        let ambient_dim = rows.cols();
        let Rref { reduced, pivots, rank } = rows.rref();
        let basis = reduced.block(0, 0, rank, ambient_dim);
        Self { ambient_dim, basis, pivots }
    }

    pub fn from_vectors(p: u32, ambient_dim: usize, vectors: &[Vec<u32>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(p, ambient_dim);
        }
        Self::from_row_matrix(FpMatrix::from_columns(p, ambient_dim, vectors).transpose())
    }

    pub fn p(&self) -> u32 {
        self.basis.p()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as rows (reduced echelon form).
    pub fn basis_rows(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.to_rows()
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_columns(&self) -> FpMatrix {
        self.basis.transpose()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let p = self.p();
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let f = w[pc];
            if f != 0 {
                for (c, x) in w.iter_mut().enumerate() {
                    *x = ((*x as u64 + (p - f) as u64 * self.basis.get(r, c) as u64) % p as u64) as u32;
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::from_row_matrix(self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let p = self.p();
        // x = U a = V b  <=>  [U | -V] (a; b) = 0
        let u = self.basis_columns();
        let v = other.basis_columns();
        let stacked = u.hstack(&v.neg());
        let vecs: Vec<Vec<u32>> = stacked
            .kernel_vectors()
            .into_iter()
            .map(|k| u.mul_vec(&k[..self.dim()]))
            .collect();
        Subspace::from_vectors(p, self.ambient_dim, &vecs)
    }
}

/// Projection onto `F_p^n / relations` together with a linear section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    /// `quotient_dim x ambient_dim`
    pub projection: FpMatrix,
    /// `ambient_dim x quotient_dim`
    pub section: FpMatrix,
    pub quotient_dim: usize,
}

/// Quotient by a subspace. Quotient coordinates are the non-pivot coordinates
/// of the relation basis, so the section is a coordinate inclusion.
pub fn quotient_map(ambient_dim: usize, relations: &Subspace) -> QuotientMap {
    assert_eq!(relations.ambient_dim(), ambient_dim);
    let p = relations.p();
    let mut pivot_row = vec![None; ambient_dim];
    for (r, &c) in relations.pivots().iter().enumerate() {
        pivot_row[c] = Some(r);
    }
    let free: Vec<usize> = (0..ambient_dim).filter(|&c| pivot_row[c].is_none()).collect();
    let q = free.len();
    let mut projection = FpMatrix::zeros(p, q, ambient_dim);
    let mut section = FpMatrix::zeros(p, ambient_dim, q);
    for (j, &c) in free.iter().enumerate() {
        projection.set(j, c, 1);
        section.set(c, j, 1);
    }
    // e_pc is congruent to -(non-pivot part of its relation row)
    for (c, row) in pivot_row.iter().enumerate() {
        if let Some(r) = *row {
            for (j, &fc) in free.iter().enumerate() {
                let v = relations.basis_rows().get(r, fc);
                projection.set(j, c, (p - v) % p);
            }
        }
    }
    QuotientMap { projection, section, quotient_dim: q }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[u32]]) -> FpMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        FpMatrix::from_rows(p, cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = FpMatrix::identity(2, 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_all_ones_over_f2() {
        let r = m(2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.reduced, m(2, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_zero_matrix() {
        let z = FpMatrix::zeros(2, 2, 4);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(FpMatrix::identity(3, 4).kernel_basis().dim(), 0);
        assert_eq!(FpMatrix::zeros(5, 3, 3).kernel_basis().dim(), 3);
        let k = m(2, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.basis_vectors(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let id = FpMatrix::identity(7, 3);
        assert_eq!(id.solve(&[1, 5, 6]).unwrap(), Some(vec![1, 5, 6]));
        assert_eq!(FpMatrix::zeros(2, 2, 2).solve(&[1, 0]).unwrap(), None);
        assert_eq!(m(2, &[&[1, 1]]).solve(&[1]).unwrap(), Some(vec![1, 0]));
        assert!(matches!(id.solve(&[1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_map(3, &Subspace::zero(2, 3));
        assert_eq!(q.projection, FpMatrix::identity(2, 3));
        assert_eq!(quotient_map(3, &Subspace::full(2, 3)).quotient_dim, 0);
        let rel = Subspace::from_vectors(2, 2, &[vec![1, 1]]);
        let q = quotient_map(2, &rel);
        assert_eq!(q.quotient_dim, 1);
        assert!(q.projection.mul_vec(&[1, 1]).iter().all(|&x| x == 0));
        assert_eq!(q.projection.mul(&q.section), FpMatrix::identity(2, 1));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(matches!(FpMatrix::new(4, 1, 1, vec![0]), Err(Error::InvalidModulus(4))));
        assert!(matches!(FpMatrix::new(3, 1, 1, vec![3]), Err(Error::EntryOutOfRange { .. })));
        assert!(FpMatrix::new(3, 2, 1, vec![0]).is_err());
    }

    #[test]
    fn inverses() {
        let a = m(5, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FpMatrix::identity(5, 2));
        let tall = m(3, &[&[1, 0], &[2, 1], &[0, 1]]);
        assert_eq!(tall.left_inverse().unwrap().mul(&tall), FpMatrix::identity(3, 2));
        let wide = tall.transpose();
        assert_eq!(wide.mul(&wide.right_inverse().unwrap()), FpMatrix::identity(3, 2));
        assert!(m(2, &[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::from_vectors(2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_vectors(2, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.intersection(&b).basis_vectors(), vec![vec![0, 1, 0]]);
        assert_eq!(a.sum(&b).dim(), 3);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = FpMatrix> {
            (prop_oneof![Just(2u32), Just(3), Just(5), Just(7)], 0usize..6, 0usize..6).prop_flat_map(
                |(p, r, c)| {
                    proptest::collection::vec(0..p, r * c)
                        .prop_map(move |d| FpMatrix::new(p, r, c, d).unwrap())
                },
            )
        }

        proptest! {
            #[test]
            fn rank_nullity(a in matrix()) {
                prop_assert_eq!(a.rank() + a.kernel_basis().dim(), a.cols());
            }

            #[test]
            fn rref_is_idempotent(a in matrix()) {
                let once = a.rref().reduced;
                prop_assert_eq!(once.rref().reduced, once.clone());
            }

            #[test]
            fn kernel_vectors_are_annihilated(a in matrix()) {
                for v in a.kernel_vectors() {
                    prop_assert!(a.mul_vec(&v).iter().all(|&x| x == 0));
                }
            }

            #[test]
            fn solve_recovers_consistent_rhs(a in matrix(), seed in any::<u64>()) {
                let p = a.p();
                let x: Vec<u32> = (0..a.cols()).map(|i| ((seed >> (i % 60)) as u32 + i as u32) % p).collect();
                let b = a.mul_vec(&x);
                let y = a.solve(&b).unwrap().expect("consistent system");
                prop_assert_eq!(a.mul_vec(&y), b);
            }

            #[test]
            fn quotient_projection_kills_relations(a in matrix()) {
                let rel = a.column_space();
                let q = quotient_map(a.rows(), &rel);
                prop_assert_eq!(q.projection.rank(), q.quotient_dim);
                prop_assert_eq!(q.quotient_dim + rel.dim(), a.rows());
                prop_assert!(q.projection.mul(&a).is_zero());
                prop_assert_eq!(q.projection.mul(&q.section), FpMatrix::identity(a.p(), q.quotient_dim));
            }
        }
    }
}
