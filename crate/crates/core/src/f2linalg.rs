//! Bit-packed linear algebra over F2.
//!
//! Vectors are rows and linear maps act on the right (`v ↦ v·M`), the usual
//! generator-matrix convention. Coordinate `i` lives in bit `i % 64` of word
//! `i / 64`; bits past the logical length are always zero.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 1]>;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

/// A vector in F2^n.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    len: usize,
    words: Words,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: smallvec::smallvec![0; word_count(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Builds a vector from the low `len` bits of `bits` (`len <= 64`).
    pub fn from_u64(len: usize, bits: u64) -> Self {
        assert!(len <= 64, "from_u64 needs len <= 64, got {len}");
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = bits & mask;
        }
        v
    }

    /// Low 64 coordinates packed into a word.
    pub fn to_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string over `{0,1}`.
    pub fn parse_bits(s: &str) -> Option<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "coordinate {i} out of range {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "coordinate {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "coordinate {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &F2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &F2Vector) -> F2Vector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Standard dot product mod 2.
    pub fn dot(&self, other: &F2Vector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Index of the lowest set coordinate.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    /// Coordinates `[start, start + len)` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> F2Vector {
        assert!(start + len <= self.len);
        let mut out = F2Vector::zeros(len);
        for i in self.ones_iter() {
            if i >= start && i < start + len {
                out.set(i - start, true);
            }
        }
        out
    }

    /// Overwrites coordinates `[start, start + part.len())` with `part`.
    pub fn write_slice(&mut self, start: usize, part: &F2Vector) {
        assert!(start + part.len <= self.len);
        for i in 0..part.len {
            self.set(start + i, part.get(i));
        }
    }

    pub fn concat(parts: &[F2Vector]) -> F2Vector {
        let total = parts.iter().map(|p| p.len).sum();
        let mut out = F2Vector::zeros(total);
        let mut at = 0;
        for p in parts {
            out.write_slice(at, p);
            at += p.len;
        }
        out
    }

    /// Row-vector times matrix.
    pub fn mul_mat(&self, m: &F2Matrix) -> F2Vector {
        assert_eq!(self.len, m.rows(), "vector length vs matrix rows");
        let mut out = F2Vector::zeros(m.cols());
        for i in self.ones_iter() {
            out.xor_assign(m.row(i));
        }
        out
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector({})", self.to_bit_string())
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Dense matrix over F2, stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<F2Vector>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![F2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| F2Vector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(cols: usize, rows: Vec<F2Vector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        Self { cols, rows }
    }

    /// Convenience for tests and pinned constants: rows as `0/1` strings.
    pub fn from_strs(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| F2Vector::parse_bits(r).expect("row must be over {0,1}"))
            .collect();
        Self::from_rows(cols, rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &F2Vector {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<F2Vector> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn push_row(&mut self, row: F2Vector) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones_iter() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows(), "inner dimensions differ");
        F2Matrix {
            cols: other.cols,
            rows: self.rows.iter().map(|r| r.mul_mat(other)).collect(),
        }
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!((self.rows(), self.cols), (other.rows(), other.cols));
        F2Matrix {
            cols: self.cols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.xor(b))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(F2Vector::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows() == self.cols && self.rows.iter().enumerate().all(|(i, r)| *r == F2Vector::unit(self.cols, i))
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        F2Matrix { cols: self.cols, rows }
    }

    /// Block-diagonal matrix with the given blocks.
    pub fn block_diag(blocks: &[F2Matrix]) -> F2Matrix {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut rows = Vec::new();
        let mut at = 0;
        for b in blocks {
            for r in &b.rows {
                let mut v = F2Vector::zeros(cols);
                v.write_slice(at, r);
                rows.push(v);
            }
            at += b.cols;
        }
        F2Matrix { cols, rows }
    }

    /// Sub-block `[r0, r0+nr) × [c0, c0+nc)`.
    pub fn block(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> F2Matrix {
        F2Matrix {
            cols: nc,
            rows: self.rows[r0..r0 + nr].iter().map(|r| r.slice(c0, nc)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<F2Matrix> {
        if self.rows() != self.cols {
            return None;
        }
        let r = rref(self);
        (r.rank == self.cols).then_some(r.transform)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows() == self.cols && self.rank() == self.cols
    }

    /// Text rendering, one `0/1` row per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&r.to_bit_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{} [", self.rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {}", r)?;
        }
        write!(f, "]")
    }
}

/// Output of [`rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    /// Reduced row-echelon form; zero rows last.
    pub reduced: F2Matrix,
    pub rank: usize,
    /// Invertible `rows × rows` matrix with `transform · M = reduced`.
    pub transform: F2Matrix,
    /// Pivot column of each of the first `rank` rows, strictly increasing.
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan elimination, lowest column first.
pub fn rref(m: &F2Matrix) -> Rref {
    let n = m.rows();
    let mut a = m.rows.clone();
    let mut t: Vec<F2Vector> = (0..n).map(|i| F2Vector::unit(n, i)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| a[i].get(c)) else {
            continue;
        };
        a.swap(r, p);
        t.swap(r, p);
        for i in 0..n {
            if i != r && a[i].get(c) {
                let (src_a, src_t) = (a[r].clone(), t[r].clone());
                a[i].xor_assign(&src_a);
                t[i].xor_assign(&src_t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        reduced: F2Matrix { cols: m.cols, rows: a },
        rank: r,
        transform: F2Matrix { cols: n, rows: t },
        pivots,
    }
}

/// Solves `x·M = b`. The returned solution is zero on every non-pivot row
/// of the elimination, so it is deterministic.
pub fn solve(m: &F2Matrix, b: &F2Vector) -> Option<F2Vector> {
    assert_eq!(b.len(), m.cols(), "solve: b length must equal M.cols");
    // x·M = b  ⇔  Mᵀ·xᵀ = bᵀ; eliminate on the transpose augmented by b.
    let mt = m.transpose();
    let n = m.rows();
    let mut aug: Vec<F2Vector> = mt
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = F2Vector::zeros(n + 1);
            v.write_slice(0, r);
            v.set(n, b.get(i));
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..aug.len()).find(|&i| aug[i].get(c)) else {
            continue;
        };
        aug.swap(r, p);
        for i in 0..aug.len() {
            if i != r && aug[i].get(c) {
                let src = aug[r].clone();
                aug[i].xor_assign(&src);
            }
        }
        pivots.push(c);
        r += 1;
        if r == aug.len() {
            break;
        }
    }
    if aug[r..].iter().any(|row| row.get(n)) {
        return None;
    }
    let mut x = F2Vector::zeros(n);
    for (row, &c) in pivots.iter().enumerate() {
        x.set(c, aug[row].get(n));
    }
    Some(x)
}

/// `{x : x·M = 0}`.
pub fn kernel(m: &F2Matrix) -> Subspace {
    let r = rref(m);
    let basis: Vec<F2Vector> = r.transform.rows[r.rank..].to_vec();
    Subspace::from_generators(m.rows(), basis)
}

/// A subspace of F2^n held in its unique reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: F2Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: F2Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_generators(ambient, (0..ambient).map(|i| F2Vector::unit(ambient, i)).collect())
    }

    pub fn from_generators(ambient: usize, gens: Vec<F2Vector>) -> Self {
        let m = F2Matrix::from_rows(ambient, gens);
        Self::from_matrix(&m)
    }

    pub fn from_matrix(m: &F2Matrix) -> Self {
        let r = rref(m);
        let rows = r.reduced.rows[..r.rank].to_vec();
        Self {
            ambient: m.cols(),
            basis: F2Matrix::from_rows(m.cols(), rows),
            pivots: r.pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &F2Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> &[F2Vector] {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Membership by reduction against the RREF basis.
    pub fn contains(&self, v: &F2Vector) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        self.reduce(v).is_zero()
    }

    /// Reduces `v` modulo the subspace (clears all pivot coordinates).
    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        let mut r = v.clone();
        for (row, &p) in self.basis.rows.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    /// Coordinates of `v` in the RREF basis, if `v` is in the subspace.
    pub fn coordinates(&self, v: &F2Vector) -> Option<F2Vector> {
        let mut c = F2Vector::zeros(self.dim());
        let mut r = v.clone();
        for (i, (row, &p)) in self.basis.rows.iter().zip(&self.pivots).enumerate() {
            if r.get(p) {
                r.xor_assign(row);
                c.set(i, true);
            }
        }
        r.is_zero().then_some(c)
    }

    /// `Σ c_i b_i` for coefficient vector `c`.
    pub fn combine(&self, c: &F2Vector) -> F2Vector {
        c.mul_mat(&self.basis)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Image under `v ↦ v·M`.
    pub fn image(&self, m: &F2Matrix) -> Subspace {
        Subspace::from_matrix(&self.basis.mul(m))
    }

    /// All `2^dim` elements, in coefficient order.
    pub fn elements(&self) -> Vec<F2Vector> {
        assert!(self.dim() <= 24, "refusing to enumerate 2^{} elements", self.dim());
        let n = 1usize << self.dim();
        let mut out: Vec<F2Vector> = Vec::with_capacity(n);
        out.push(F2Vector::zeros(self.ambient));
        for i in 1..n {
            // element i = element (i without its lowest bit) + basis[lowest bit]
            let mut v = out[i & (i - 1)].clone();
            v.xor_assign(self.basis.row(i.trailing_zeros() as usize));
            out.push(v);
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        // x·[U; V] = 0 with x = (y, z) gives y·U = z·V ∈ U ∩ V.
        let stacked = self.basis.vstack(&other.basis);
        let ker = kernel(&stacked);
        let gens = ker
            .basis_vectors()
            .iter()
            .map(|x| x.slice(0, self.dim()).mul_mat(&self.basis))
            .collect();
        Ok(Subspace::from_generators(self.ambient, gens))
    }

    /// `{x : x·G·vᵀ = 0 for all v in self}` for a Gram-type matrix `G`.
    pub fn perp(&self, gram: &F2Matrix) -> Subspace {
        let m = gram.mul(&self.basis.transpose());
        kernel(&m)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(ambient={}, dim={}) ", self.ambient, self.dim())?;
        f.debug_list()
            .entries(self.basis.rows.iter().map(|r| r.to_bit_string()))
            .finish()
    }
}

pub fn subspace_sum(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.sum(v)
}

pub fn subspace_intersect(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.intersect(v)
}

pub fn contains(u: &Subspace, v: &F2Vector) -> bool {
    u.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_and_zero() {
        let id = F2Matrix::identity(3);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);

        let z = F2Matrix::zeros(2, 4);
        let r = rref(&z);
        assert!(r.reduced.is_zero());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_dependent_rows() {
        let m = F2Matrix::from_strs(&["1100", "0110", "1010"]);
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.transform.mul(&m), r.reduced);
        assert!(r.transform.is_invertible());
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn solve_examples() {
        let b = F2Vector::parse_bits("101").unwrap();
        assert_eq!(solve(&F2Matrix::identity(3), &b), Some(b.clone()));

        let m = F2Matrix::from_strs(&["11", "11"]);
        assert_eq!(solve(&m, &F2Vector::parse_bits("01").unwrap()), None);

        let m = F2Matrix::from_strs(&["10", "11"]);
        assert_eq!(
            solve(&m, &F2Vector::parse_bits("01").unwrap()),
            Some(F2Vector::parse_bits("11").unwrap())
        );
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&F2Matrix::identity(4)).is_zero());
        assert_eq!(kernel(&F2Matrix::zeros(3, 3)).dim(), 3);
        let k = kernel(&F2Matrix::from_strs(&["11", "11"]));
        assert_eq!(k, Subspace::from_matrix(&F2Matrix::from_strs(&["11"])));
    }

    #[test]
    fn subspace_lattice_ops() {
        let u = Subspace::from_matrix(&F2Matrix::from_strs(&["110", "011"]));
        let v = Subspace::from_matrix(&F2Matrix::from_strs(&["101"]));
        assert_eq!(u.intersect(&v).unwrap(), v);
        assert_eq!(u.sum(&Subspace::zero(3)).unwrap(), u);
        assert_eq!(u.intersect(&Subspace::full(3)).unwrap(), u);

        let a = Subspace::from_matrix(&F2Matrix::from_strs(&["10"]));
        let b = Subspace::from_matrix(&F2Matrix::from_strs(&["01"]));
        assert!(a.intersect(&b).unwrap().is_zero());
        assert!(a.sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn elements_are_in_coefficient_order() {
        let u = Subspace::from_matrix(&F2Matrix::from_strs(&["1100", "0011"]));
        let els = u.elements();
        assert_eq!(els.len(), 4);
        for (i, e) in els.iter().enumerate() {
            assert_eq!(*e, u.combine(&F2Vector::from_u64(2, i as u64)));
        }
    }

    #[test]
    fn multiword_vectors() {
        let mut v = F2Vector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.ones_iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.slice(60, 10).ones_iter().collect::<Vec<_>>(), vec![4]);
        let w = F2Vector::parse_bits(&v.to_bit_string()).unwrap();
        assert_eq!(v, w);
    }
}
