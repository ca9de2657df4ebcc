//! Exact dense linear algebra over the prime field F_p.
//!
//! Everything downstream computes with three types: [`PrimeModulus`] (the odd
//! prime p), [`FpMatrix`] (dense row-major matrices with entries reduced into
//! `[0, p)`), and [`Subspace`] (a subspace of F_p^d stored as its unique
//! reduced row-echelon basis). RREF is the canonical representative of a
//! point of the Grassmannian, so subspace equality is plain structural
//! equality and deduplication costs nothing.
//!
//! Entries are `u64` residues. With p < 2^16 a dot product of any length this
//! crate encounters fits a 64-bit accumulator without intermediate reduction.

use crate::{Error, Result};

/// An odd prime p with 3 <= p < 2^16. Primality is checked by trial division
/// at construction; all later arithmetic trusts the invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: u64,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..(1 << 16)).contains(&p) || p.is_multiple_of(2) {
            return Err(Error::ModulusOutOfRange(p));
        }
        let mut d = 3;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NotPrime(p));
            }
            d += 2;
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        x % self.p
    }

    /// Reduce a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_signed(self, x: i64) -> u64 {
        let p = self.p as i64;
        (x.rem_euclid(p)) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse by Fermat: a^(p-2) mod p. Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

/// A dense matrix over F_p, row-major, every entry in `[0, p)`.
///
/// A linear map F_p^c -> F_p^r is a `rows = r`, `cols = c` matrix acting on
/// column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
    modulus: PrimeModulus,
}

impl FpMatrix {
    pub fn zero(rows: usize, cols: usize, modulus: PrimeModulus) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0; rows * cols],
            modulus,
        }
    }

    pub fn identity(n: usize, modulus: PrimeModulus) -> Self {
        let mut m = Self::zero(n, n, modulus);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Build from explicit rows; entries may be any integers and are reduced.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize, modulus: PrimeModulus) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            entries.extend(r.iter().map(|&x| modulus.reduce_signed(x)));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
            modulus,
        })
    }

    pub fn from_reduced_rows(rows: Vec<Vec<u64>>, cols: usize, modulus: PrimeModulus) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            entries.extend(r.iter().map(|&x| modulus.reduce(x)));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
            modulus,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = self.modulus.reduce(v);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.at(r, c)).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[u64]) {
        debug_assert_eq!(v.len(), self.rows);
        for (r, &x) in v.iter().enumerate() {
            self.entries[r * self.cols + c] = self.modulus.reduce(x);
        }
    }

    /// Matrix product self * rhs.
    pub fn mul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::MapShapeMismatch {
                rows: self.rows,
                cols: self.cols,
                given: rhs.rows,
            });
        }
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch(self.modulus.p, rhs.modulus.p));
        }
        let p = self.modulus.p;
        let mut out = FpMatrix::zero(self.rows, rhs.cols, self.modulus);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                let rr = &rhs.entries[k * rhs.cols..(k + 1) * rhs.cols];
                let or = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in or.iter_mut().zip(rr) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        Ok(out)
    }

    /// Apply the map to a column vector: self * v.
    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::MapShapeMismatch {
                rows: self.rows,
                cols: self.cols,
                given: v.len(),
            });
        }
        let p = self.modulus.p;
        let mut out = vec![0u64; self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (c, &x) in v.iter().enumerate() {
                acc += self.entries[r * self.cols + c] * x;
            }
            *o = acc % p;
        }
        Ok(out)
    }

    /// self + scalar * rhs, entrywise.
    pub fn add_scaled(&self, rhs: &FpMatrix, scalar: u64) -> Result<FpMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::MapShapeMismatch {
                rows: self.rows,
                cols: self.cols,
                given: rhs.rows,
            });
        }
        let p = self.modulus.p;
        let s = scalar % p;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(&a, &b)| (a + s * b) % p)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
            modulus: self.modulus,
        })
    }

    /// Stack rows of `self` on top of rows of `other`.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.cols {
            return Err(Error::AmbientMismatch(self.cols, other.cols));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
            modulus: self.modulus,
        })
    }

    /// Row-reduce in place to reduced row-echelon form. Returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.modulus.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(src) = (pivot_row..rows).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..cols {
                    self.entries.swap(src * cols + c, pivot_row * cols + c);
                }
            }
            let inv = self.modulus.inv(self.at(pivot_row, col));
            if inv != 1 {
                for c in col..cols {
                    let v = self.at(pivot_row, c);
                    self.entries[pivot_row * cols + c] = v * inv % p;
                }
            }
            for r in 0..rows {
                if r == pivot_row {
                    continue;
                }
                let factor = self.at(r, col);
                if factor == 0 {
                    continue;
                }
                let neg = p - factor;
                for c in col..cols {
                    let v = self.at(pivot_row, c);
                    if v != 0 {
                        self.entries[r * cols + c] = (self.at(r, c) + neg * v) % p;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    /// Rank via row reduction of a scratch copy.
    pub fn rank(&self) -> usize {
        let mut scratch = self.clone();
        scratch.rref_in_place().len()
    }
}

/// The unique RREF of `m`; the row space is preserved and zero rows are kept
/// (callers that want a basis go through [`Subspace`]).
pub fn rref(m: &FpMatrix) -> FpMatrix {
    let mut out = m.clone();
    out.rref_in_place();
    out
}

/// A subspace of F_p^d, stored as a reduced row-echelon basis with no zero
/// rows. The zero subspace has a 0 x d basis. Two values are equal iff their
/// ambient dimensions, moduli, and basis entries agree, which makes equality
/// the Grassmannian point equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: FpMatrix,
}

impl Subspace {
    /// Span of the given vectors inside F_p^ambient_dim.
    pub fn span(vectors: &[Vec<u64>], ambient_dim: usize, modulus: PrimeModulus) -> Result<Self> {
        let m = FpMatrix::from_reduced_rows(vectors.to_vec(), ambient_dim, modulus)?;
        Ok(Self::from_matrix(m))
    }

    /// Row space of an arbitrary matrix.
    pub fn from_matrix(mut m: FpMatrix) -> Self {
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        m.entries.truncate(rank * m.cols);
        m.rows = rank;
        Self {
            ambient_dim: m.cols,
            basis: m,
        }
    }

    pub fn zero(ambient_dim: usize, modulus: PrimeModulus) -> Self {
        Self {
            ambient_dim,
            basis: FpMatrix::zero(0, ambient_dim, modulus),
        }
    }

    /// Wrap a matrix that is already in RREF with no zero rows; skips the
    /// reduction. Used by the Grassmannian cell enumerator, which emits
    /// canonical matrices directly.
    pub(crate) fn from_rref_unchecked(basis: FpMatrix) -> Self {
        debug_assert_eq!(rref(&basis), basis);
        Self {
            ambient_dim: basis.cols(),
            basis,
        }
    }

    pub fn full(ambient_dim: usize, modulus: PrimeModulus) -> Self {
        Self {
            ambient_dim,
            basis: FpMatrix::identity(ambient_dim, modulus),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.basis.modulus()
    }

    #[inline]
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[u64]> {
        (0..self.dim()).map(|r| self.basis.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        if self.modulus() != other.modulus() {
            return Err(Error::ModulusMismatch(
                self.modulus().get(),
                other.modulus().get(),
            ));
        }
        Ok(())
    }

    /// Sum of subspaces: span of the union of the bases.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Self::from_matrix(self.basis.vstack(&other.basis)?))
    }

    /// Intersection via the Zassenhaus block trick: row-reduce
    /// `[A|A; B|0]`; rows whose left half vanished carry an intersection
    /// basis in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let d = self.ambient_dim;
        let p = self.modulus();
        let ka = self.dim();
        let kb = other.dim();
        let mut block = FpMatrix::zero(ka + kb, 2 * d, p);
        for r in 0..ka {
            for c in 0..d {
                let v = self.basis.at(r, c);
                block.entries[r * 2 * d + c] = v;
                block.entries[r * 2 * d + d + c] = v;
            }
        }
        for r in 0..kb {
            for c in 0..d {
                block.entries[(ka + r) * 2 * d + c] = other.basis.at(r, c);
            }
        }
        block.rref_in_place();
        let mut inter_rows = Vec::new();
        for r in 0..ka + kb {
            let left_zero = (0..d).all(|c| block.at(r, c) == 0);
            if left_zero {
                let right = block.entries[r * 2 * d + d..(r + 1) * 2 * d].to_vec();
                if right.iter().any(|&x| x != 0) {
                    inter_rows.push(right);
                }
            }
        }
        Subspace::span(&inter_rows, d, p)
    }

    /// Membership of a single vector, by reduction against the RREF basis.
    pub fn contains(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::LengthMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        let p = self.modulus();
        let mut rem: Vec<u64> = v.iter().map(|&x| p.reduce(x)).collect();
        for r in 0..self.dim() {
            let pivot = match self.basis.row(r).iter().position(|&x| x != 0) {
                Some(c) => c,
                None => continue,
            };
            let coeff = rem[pivot];
            if coeff != 0 {
                let row = self.basis.row(r);
                for (cell, &b) in rem[pivot..].iter_mut().zip(&row[pivot..]) {
                    if b != 0 {
                        *cell = p.sub(*cell, p.mul(coeff, b));
                    }
                }
            }
        }
        Ok(rem.iter().all(|&x| x == 0))
    }

    /// Is `self` contained in `other`?
    pub fn subset(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for row in self.basis_rows() {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orthogonal complement with respect to the standard dot product on
    /// coordinates. dim X + dim X^perp = ambient, and the double complement
    /// returns X.
    pub fn orthogonal_complement(&self) -> Subspace {
        kernel(&self.basis)
    }
}

/// Image of a subspace under a linear map (columns = domain).
pub fn apply(map: &FpMatrix, s: &Subspace) -> Result<Subspace> {
    if map.cols() != s.ambient_dim() {
        return Err(Error::MapShapeMismatch {
            rows: map.rows(),
            cols: map.cols(),
            given: s.ambient_dim(),
        });
    }
    let rows: Vec<Vec<u64>> = s
        .basis_rows()
        .map(|b| map.mul_vec(b))
        .collect::<Result<_>>()?;
    Subspace::span(&rows, map.rows(), map.modulus())
}

/// Kernel of a linear map: the subspace `{v : map . v = 0}` of the domain.
pub fn kernel(map: &FpMatrix) -> Subspace {
    let p = map.modulus();
    let cols = map.cols();
    let mut reduced = map.clone();
    let pivots = reduced.rref_in_place();
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; cols];
        for &c in &pivots {
            s[c] = true;
        }
        s
    };
    let mut rows = Vec::with_capacity(cols - pivots.len());
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = p.neg(reduced.at(r, free));
        }
        rows.push(v);
    }
    Subspace::span(&rows, cols, p).expect("kernel rows have ambient length")
}

/// Preimage `{v : map . v in t}`. Contains the kernel of the map.
pub fn preimage(map: &FpMatrix, t: &Subspace) -> Result<Subspace> {
    if map.rows() != t.ambient_dim() {
        return Err(Error::MapShapeMismatch {
            rows: map.rows(),
            cols: map.cols(),
            given: t.ambient_dim(),
        });
    }
    if t.is_full() {
        return Ok(Subspace::full(map.cols(), map.modulus()));
    }
    // v lands in t iff every functional vanishing on t kills map.v; the
    // functionals are the rows of the orthogonal complement.
    let constraints = t.orthogonal_complement();
    let stacked = constraints.basis().mul(map)?;
    Ok(kernel(&stacked))
}
