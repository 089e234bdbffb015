//! Exact linear algebra over the two-element field.
//!
//! Everything downstream (module actions, kernels of differentials, chain
//! lifts) reduces to rank / kernel / solve questions over GF(2), so vectors
//! and matrices are bit-packed and elimination works a word at a time.
//!
//! Canonical conventions, fixed once so reports are reproducible:
//! * elimination always picks the lowest-index pivot column,
//! * `kernel_basis` lists free columns in ascending order,
//! * `solve` returns the reduced-echelon solution with free variables 0.

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector over GF(2), packed 64 entries per word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn standard(len: usize, i: usize) -> Self {
        BitVec::from_indices(len, &[i])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the first nonzero entry.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                out.push(wi * WORD_BITS + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Dot product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// Concatenation, `self` occupying the low indices.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            v.set(i, true);
        }
        for i in other.ones() {
            v.set(self.len + i, true);
        }
        v
    }

    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        debug_assert!(start + len <= self.len);
        let mut v = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                v.set(i, true);
            }
        }
        v
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { 1 } else { 0 })?;
        }
        Ok(())
    }
}

/// A dense matrix over GF(2), row-major, each row bit-packed.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    row_words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let row_words = words_for(cols);
        BitMatrix {
            rows,
            cols,
            row_words,
            data: vec![0; rows * row_words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVec]) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        let mut m = BitMatrix::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            debug_assert_eq!(r.len(), cols);
            m.data[i * m.row_words..(i + 1) * m.row_words].copy_from_slice(&r.words);
        }
        m
    }

    pub fn from_cols(cols: &[BitVec], rows: usize) -> Self {
        let mut m = BitMatrix::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.row_words + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % WORD_BITS);
        let w = &mut self.data[r * self.row_words + c / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.data[r * self.row_words..(r + 1) * self.row_words].to_vec(),
        }
    }

    pub fn col(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<BitVec> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    #[inline]
    fn xor_row_from(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.row_words, src * self.row_words);
        for k in 0..self.row_words {
            let w = self.data[s + k];
            self.data[d + k] ^= w;
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2); `self.cols` must equal `rhs.rows`.
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = BitMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            let dst = r * out.row_words;
            for c in self.row(r).ones() {
                let src = c * rhs.row_words;
                for k in 0..out.row_words {
                    out.data[dst + k] ^= rhs.data[src + k];
                }
            }
        }
        out
    }

    /// Matrix-vector product; `v` is a column vector of length `self.cols`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.data[r * self.row_words..(r + 1) * self.row_words]
                .iter()
                .zip(&v.words)
            {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn add(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a ^= b;
        }
        out
    }

    /// Stack vertically: `self` on top of `below`.
    pub fn vstack(&self, below: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, below.cols);
        let mut out = BitMatrix::zero(self.rows + below.rows, self.cols);
        out.data[..self.rows * self.row_words].copy_from_slice(&self.data);
        out.data[self.rows * self.row_words..].copy_from_slice(&below.data);
        out
    }

    /// Place side by side: `self` on the left.
    pub fn hstack(&self, right: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, right.rows);
        let mut out = BitMatrix::zero(self.rows, self.cols + right.cols);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                out.set(r, c, true);
            }
            for c in right.row(r).ones() {
                out.set(r, self.cols + c, true);
            }
        }
        out
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Reduced row echelon form with pivot bookkeeping.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let mut sel = None;
            for r in pivot_row..m.rows {
                if m.get(r, col) {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            if sel != pivot_row {
                for k in 0..m.row_words {
                    m.data.swap(pivot_row * m.row_words + k, sel * m.row_words + k);
                }
            }
            for r in 0..m.rows {
                if r != pivot_row && m.get(r, col) {
                    m.xor_row_from(r, pivot_row);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { mat: m, pivots }
    }

    /// Basis of `{v : self * v = 0}` in the canonical (free columns
    /// ascending, reduced echelon) order. Size is `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - rref.pivots.len());
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (row, &p) in rref.pivots.iter().enumerate() {
                if rref.mat.get(row, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = b` for a column vector `b`. Returns the
    /// pivot-canonical solution (free variables zero) or `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>> {
        if b.len() != self.rows {
            return Err(Error::DimMismatch(format!(
                "solve: rhs length {} does not match {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&BitMatrix::from_cols(std::slice::from_ref(b), self.rows));
        let rref = aug.rref();
        let mut x = BitVec::zeros(self.cols);
        for (row, &p) in rref.pivots.iter().enumerate() {
            if p == self.cols {
                return Ok(None); // pivot in the augmented column
            }
            if rref.mat.get(row, self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Solve `self * X = B` column by column; `None` if any column fails.
    pub fn solve_matrix(&self, b: &BitMatrix) -> Result<Option<BitMatrix>> {
        if b.rows() != self.rows {
            return Err(Error::DimMismatch(format!(
                "solve_matrix: rhs has {} rows, lhs {}",
                b.rows(),
                self.rows
            )));
        }
        let mut cols = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            match self.solve(&b.col(j))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(BitMatrix::from_cols(&cols, self.cols)))
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of reduced row echelon elimination.
pub struct Rref {
    pub mat: BitMatrix,
    pub pivots: Vec<usize>,
}

/// A subspace kept as reduced-echelon row vectors; supports membership and
/// canonical reduction of vectors modulo the span.
#[derive(Clone)]
pub struct RowSpan {
    dim_ambient: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn empty(dim_ambient: usize) -> Self {
        RowSpan {
            dim_ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Span of the given vectors.
    pub fn from_vectors(dim_ambient: usize, vecs: &[BitVec]) -> Self {
        let mut s = RowSpan::empty(dim_ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    /// Span of the columns of `m`.
    pub fn col_space(m: &BitMatrix) -> Self {
        RowSpan::from_vectors(m.rows(), &m.columns())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim_ambient
    }

    /// Reduce `v` modulo the span; the result has no support on pivot
    /// positions.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert `v`; returns true when the span grew. Keeps rows fully
    /// reduced against each other so reduction is canonical.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        debug_assert_eq!(v.len(), self.dim_ambient);
        let v = self.reduce(v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for row in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_identity_and_rank_one() {
        assert_eq!(BitMatrix::identity(2).rank(), 2);
        let mut ones = BitMatrix::zero(3, 3);
        for r in 0..3 {
            for c in 0..3 {
                ones.set(r, c, true);
            }
        }
        assert_eq!(ones.rank(), 1);
        assert_eq!(BitMatrix::zero(0, 5).rank(), 0);
    }

    #[test]
    fn kernel_shapes() {
        assert!(BitMatrix::identity(4).kernel_basis().is_empty());

        let mut m = BitMatrix::zero(1, 2);
        m.set(0, 0, true);
        m.set(0, 1, true);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].ones(), vec![0, 1]);

        let z = BitMatrix::zero(2, 3);
        let k = z.kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            assert_eq!(v.ones(), vec![i]);
        }
    }

    #[test]
    fn solve_examples() {
        let id = BitMatrix::identity(2);
        let b = BitVec::from_indices(2, &[0]);
        assert_eq!(id.solve(&b).unwrap().unwrap().ones(), vec![0]);

        let mut m = BitMatrix::zero(1, 2);
        m.set(0, 0, true);
        m.set(0, 1, true);
        let b = BitVec::from_indices(1, &[0]);
        // canonical representative has the free variable set to zero
        assert_eq!(m.solve(&b).unwrap().unwrap().ones(), vec![0]);

        let z = BitMatrix::zero(1, 1);
        assert!(z.solve(&BitVec::from_indices(1, &[0])).unwrap().is_none());

        assert!(z.solve(&BitVec::zeros(2)).is_err());
    }

    #[test]
    fn row_span_reduction() {
        let mut s = RowSpan::empty(3);
        assert!(s.insert(&BitVec::from_indices(3, &[0, 1])));
        assert!(s.insert(&BitVec::from_indices(3, &[1, 2])));
        assert!(!s.insert(&BitVec::from_indices(3, &[0, 2])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&BitVec::from_indices(3, &[0, 2])));
        assert!(!s.contains(&BitVec::from_indices(3, &[0])));
    }
}
