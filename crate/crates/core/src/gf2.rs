//! Bit-packed linear algebra over the two-element field.
//!
//! [`BitVector`] holds an element of `(Z_2)^r` for `r <= 64` in a single
//! machine word, bit `i` being coordinate `i` (printed leftmost).
//! [`Gf2Matrix`] is a dense row-major matrix of arbitrary shape, used both for
//! small linear maps between label groups and for boundary operators with tens
//! of thousands of columns. [`Subspace`] keeps a basis in reduced row-echelon
//! form, which makes coset representatives and coset indices pure functions of
//! the vector.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

/// Hard cap on the ambient rank of a [`BitVector`].
pub const MAX_WIDTH: usize = 64;

/// Largest subspace rank that [`Subspace::enumerate`] will expand.
pub const ENUMERATION_RANK_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("width {0} exceeds the {MAX_WIDTH}-bit cap")]
    WidthTooLarge(usize),
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: u64, bound: u128 },
    #[error("subspace of rank {rank} is too large to enumerate (limit {ENUMERATION_RANK_LIMIT})")]
    RankGuard { rank: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty label sequence")]
    Empty,
    #[error("invalid bit string {0:?}")]
    Parse(String),
}

fn low_mask(width: usize) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// An element of `(Z_2)^width`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    bits: u64,
    width: u8,
}

impl BitVector {
    pub fn zero(width: usize) -> Result<Self, Gf2Error> {
        Self::from_bits(width, 0)
    }

    /// Basis vector `e_{index+1}`: coordinate `index` is one.
    pub fn unit(width: usize, index: usize) -> Result<Self, Gf2Error> {
        if index >= width {
            return Err(Gf2Error::IndexOutOfRange {
                index: index as u64,
                bound: width as u128,
            });
        }
        Self::from_bits(width, 1u64 << index)
    }

    pub fn from_bits(width: usize, bits: u64) -> Result<Self, Gf2Error> {
        if width > MAX_WIDTH {
            return Err(Gf2Error::WidthTooLarge(width));
        }
        if bits & !low_mask(width) != 0 {
            return Err(Gf2Error::IndexOutOfRange {
                index: 63 - bits.leading_zeros() as u64,
                bound: width as u128,
            });
        }
        Ok(Self {
            bits,
            width: width as u8,
        })
    }

    /// Builds a vector from the coordinates that are set.
    pub fn from_coords(width: usize, coords: &[usize]) -> Result<Self, Gf2Error> {
        let mut v = Self::zero(width)?;
        for &c in coords {
            v += Self::unit(width, c)?;
        }
        Ok(v)
    }

    #[inline]
    pub fn width(self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn get(self, index: usize) -> bool {
        index < self.width() && (self.bits >> index) & 1 == 1
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Lowest set coordinate, i.e. the leftmost one when printed.
    pub fn leading(self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    /// Inner product mod 2.
    #[inline]
    pub fn dot(self, other: Self) -> bool {
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    pub fn checked_add(self, other: Self) -> Result<Self, Gf2Error> {
        check_width(self.width(), other.width())?;
        Ok(self + other)
    }

    /// Concatenation `(self | other)`; `self` occupies the low coordinates.
    pub fn concat(self, other: Self) -> Result<Self, Gf2Error> {
        let width = self.width() + other.width();
        if width > MAX_WIDTH {
            return Err(Gf2Error::WidthTooLarge(width));
        }
        let high = if other.width == 0 { 0 } else { other.bits << self.width };
        Self::from_bits(width, self.bits | high)
    }

    /// Places `self` at coordinates `offset..offset+self.width` of a wider vector.
    pub fn embed(self, width: usize, offset: usize) -> Result<Self, Gf2Error> {
        if offset + self.width() > width {
            return Err(Gf2Error::WidthMismatch {
                expected: width,
                found: offset + self.width(),
            });
        }
        let shifted = if self.bits == 0 { 0 } else { self.bits << offset };
        Self::from_bits(width, shifted)
    }

    pub fn ones(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl Add for BitVector {
    type Output = BitVector;

    /// Coordinate-wise sum. Widths must agree; mixing widths is a logic error
    /// caught in debug builds (use [`BitVector::checked_add`] at boundaries).
    #[inline]
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.width, rhs.width);
        BitVector {
            bits: self.bits ^ rhs.bits,
            width: self.width,
        }
    }
}

impl AddAssign for BitVector {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Gf2Error;

    /// Parses a string of `0`/`1`, leftmost character = first coordinate.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let width = s.chars().count();
        if width > MAX_WIDTH {
            return Err(Gf2Error::WidthTooLarge(width));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Gf2Error::Parse(s.to_string())),
            }
        }
        Self::from_bits(width, bits)
    }
}

fn check_width(expected: usize, found: usize) -> Result<(), Gf2Error> {
    if expected == found {
        Ok(())
    } else {
        Err(Gf2Error::WidthMismatch { expected, found })
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Matrix whose `i`-th row is `rows[i]`.
    pub fn from_rows(rows: &[BitVector], cols: usize) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            check_width(cols, row.width())?;
            if cols > 0 {
                m.data[i * m.words_per_row] = row.bits();
            }
        }
        Ok(m)
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[BitVector], rows: usize) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            check_width(rows, col.width())?;
            for i in col.ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from `(row, col)` positions of its ones; repeated
    /// positions cancel.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, j) in entries {
            m.flip(i, j);
        }
        m
    }

    #[inline]
    pub fn row_count(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn col_count(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "matrix index out of bounds");
        (self.data[row * self.words_per_row + col / 64] >> (col % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "matrix index out of bounds");
        let word = &mut self.data[row * self.words_per_row + col / 64];
        let mask = 1u64 << (col % 64);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, row: usize, col: usize) {
        assert!(row < self.rows && col < self.cols, "matrix index out of bounds");
        self.data[row * self.words_per_row + col / 64] ^= 1u64 << (col % 64);
    }

    /// Row `i` as a [`BitVector`]; only for matrices at most 64 columns wide.
    pub fn row(&self, i: usize) -> Result<BitVector, Gf2Error> {
        if self.cols > MAX_WIDTH {
            return Err(Gf2Error::WidthTooLarge(self.cols));
        }
        BitVector::from_bits(self.cols, self.data.get(i * self.words_per_row).copied().unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Positions of all ones in row-major order.
    pub fn ones(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            let row = &self.data[i * self.words_per_row..(i + 1) * self.words_per_row];
            for (w, &word) in row.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    out.push((i, w * 64 + bits.trailing_zeros() as usize));
                    bits &= bits - 1;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j) in self.ones() {
            t.set(j, i, true);
        }
        t
    }

    /// `self * v` for a matrix with at most 64 rows and columns.
    pub fn apply(&self, v: BitVector) -> Result<BitVector, Gf2Error> {
        check_width(self.cols, v.width())?;
        if self.rows > MAX_WIDTH {
            return Err(Gf2Error::WidthTooLarge(self.rows));
        }
        let mut bits = 0u64;
        for i in 0..self.rows {
            if (self.data[i * self.words_per_row] & v.bits()).count_ones() & 1 == 1 {
                bits |= 1 << i;
            }
        }
        BitVector::from_bits(self.rows, bits)
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        check_width(self.cols, other.rows)?;
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for (i, k) in self.ones() {
            let src = &other.data[k * other.words_per_row..(k + 1) * other.words_per_row];
            let dst = &mut out.data[i * out.words_per_row..(i + 1) * out.words_per_row];
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
        }
        Ok(out)
    }

    /// GF(2) rank. Eliminates on a private copy, iterating over the shorter
    /// dimension's bits so rows stay as narrow as possible.
    pub fn rank(&self) -> usize {
        if self.cols > self.rows {
            let mut t = self.transpose();
            eliminate(&mut t.data, t.rows, t.words_per_row, t.cols)
        } else {
            let mut work = self.data.clone();
            eliminate(&mut work, self.rows, self.words_per_row, self.cols)
        }
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        if self.rows <= 64 && self.cols <= 256 {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    f.write_str(if self.get(i, j) { "1" } else { "0" })?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Rows below this count are updated sequentially.
const PARALLEL_ROW_THRESHOLD: usize = 2048;

/// In-place forward elimination; returns the rank.
///
/// Rows at or below the current rank are zero in every column already
/// processed, so swaps and row updates only touch words from the pivot word
/// onward.
fn eliminate(data: &mut [u64], rows: usize, words_per_row: usize, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let w = col / 64;
        let mask = 1u64 << (col % 64);
        let Some(pivot) = (rank..rows).find(|&r| data[r * words_per_row + w] & mask != 0) else {
            continue;
        };
        if pivot != rank {
            for x in w..words_per_row {
                data.swap(pivot * words_per_row + x, rank * words_per_row + x);
            }
        }
        let (head, tail) = data.split_at_mut((rank + 1) * words_per_row);
        let pivot_row = &head[rank * words_per_row + w..];
        // rows between rank+1 and pivot were already checked to be clear
        let tail = &mut tail[(pivot - rank) * words_per_row..];
        let update = |row: &mut [u64]| {
            if row[w] & mask != 0 {
                for (a, b) in row[w..].iter_mut().zip(pivot_row) {
                    *a ^= b;
                }
            }
        };
        if tail.len() / words_per_row.max(1) >= PARALLEL_ROW_THRESHOLD {
            tail.par_chunks_mut(words_per_row).with_min_len(512).for_each(update);
        } else {
            tail.chunks_mut(words_per_row).for_each(update);
        }
        rank += 1;
    }
    rank
}

/// A linear subspace of `(Z_2)^width` with an RREF basis.
///
/// Pivot of a basis row = its lowest set coordinate; every pivot column is zero
/// in all other rows, and rows are sorted by pivot.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    width: usize,
    basis: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(width: usize) -> Result<Self, Gf2Error> {
        if width > MAX_WIDTH {
            return Err(Gf2Error::WidthTooLarge(width));
        }
        Ok(Self {
            width,
            basis: Vec::new(),
            pivots: Vec::new(),
        })
    }

    pub fn full(width: usize) -> Result<Self, Gf2Error> {
        let units = (0..width)
            .map(|i| BitVector::unit(width, i))
            .collect::<Result<Vec<_>, _>>()?;
        Self::span(width, &units)
    }

    /// All GF(2) linear combinations of `vectors`.
    pub fn span(width: usize, vectors: &[BitVector]) -> Result<Self, Gf2Error> {
        let mut s = Self::zero(width)?;
        for &v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: BitVector) -> Result<bool, Gf2Error> {
        let reduced = self.reduce(v)?;
        let Some(pivot) = reduced.leading() else {
            return Ok(false);
        };
        for row in self.basis.iter_mut() {
            if row.get(pivot) {
                *row += reduced;
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.basis.insert(at, reduced);
        Ok(true)
    }

    #[inline]
    pub fn ambient_width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn pivot_mask(&self) -> u64 {
        self.pivots.iter().fold(0, |m, &p| m | (1 << p))
    }

    /// Columns that are not pivots, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mask = self.pivot_mask();
        (0..self.width).filter(|&c| mask >> c & 1 == 0).collect()
    }

    /// Number of cosets, `2^(width - rank)`.
    pub fn coset_count(&self) -> u128 {
        1u128 << (self.width - self.rank())
    }

    /// Canonical coset representative: `v` with every pivot coordinate cleared.
    pub fn reduce(&self, v: BitVector) -> Result<BitVector, Gf2Error> {
        check_width(self.width, v.width())?;
        Ok(self.reduce_unchecked(v))
    }

    #[inline]
    pub(crate) fn reduce_unchecked(&self, mut v: BitVector) -> BitVector {
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v.get(p) {
                v += *row;
            }
        }
        v
    }

    pub fn contains(&self, v: BitVector) -> Result<bool, Gf2Error> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Dense index of the coset of `v`: the free coordinates of its canonical
    /// representative read as a binary number, lowest free column = bit 0.
    pub fn coset_index(&self, v: BitVector) -> Result<u64, Gf2Error> {
        check_width(self.width, v.width())?;
        Ok(self.coset_index_unchecked(v))
    }

    #[inline]
    pub(crate) fn coset_index_unchecked(&self, v: BitVector) -> u64 {
        let rep = self.reduce_unchecked(v).bits();
        let free = !self.pivot_mask() & low_mask(self.width);
        pext(rep, free)
    }

    /// Inverse of [`Subspace::coset_index`].
    pub fn rep_of_index(&self, index: u64) -> Result<BitVector, Gf2Error> {
        let count = self.coset_count();
        if index as u128 >= count {
            return Err(Gf2Error::IndexOutOfRange { index, bound: count });
        }
        let free = !self.pivot_mask() & low_mask(self.width);
        BitVector::from_bits(self.width, pdep(index, free))
    }

    /// Every element, ordered by binary counting over the RREF basis; the
    /// first element is zero.
    pub fn enumerate(&self) -> Result<Vec<BitVector>, Gf2Error> {
        if self.rank() > ENUMERATION_RANK_LIMIT {
            return Err(Gf2Error::RankGuard { rank: self.rank() });
        }
        let zero = BitVector::zero(self.width)?;
        Ok((0u64..1 << self.rank())
            .map(|i| {
                self.basis
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| i >> t & 1 == 1)
                    .fold(zero, |acc, (_, &b)| acc + b)
            })
            .collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Gf2Error> {
        check_width(self.width, other.width)?;
        let mut s = self.clone();
        for &v in &other.basis {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Whether `self ∩ other = {0}`.
    pub fn meets_trivially(&self, other: &Subspace) -> Result<bool, Gf2Error> {
        Ok(self.sum(other)?.rank() == self.rank() + other.rank())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, Gf2Error> {
        check_width(self.width, other.width)?;
        Ok(self.basis.iter().all(|&b| other.reduce_unchecked(b).is_zero()))
    }

    /// Image under a linear map given as a matrix with `width` columns.
    pub fn image(&self, map: &Gf2Matrix) -> Result<Subspace, Gf2Error> {
        let images = self
            .basis
            .iter()
            .map(|&b| map.apply(b))
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::span(map.row_count(), &images)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(width={}, basis=[", self.width)?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("])")
    }
}

#[inline]
fn pext(value: u64, mut mask: u64) -> u64 {
    let mut out = 0u64;
    let mut bit = 0;
    while mask != 0 {
        let low = mask.trailing_zeros();
        out |= ((value >> low) & 1) << bit;
        bit += 1;
        mask &= mask - 1;
    }
    out
}

#[inline]
fn pdep(value: u64, mut mask: u64) -> u64 {
    let mut out = 0u64;
    let mut bit = 0;
    while mask != 0 {
        let low = mask.trailing_zeros();
        out |= ((value >> bit) & 1) << low;
        bit += 1;
        mask &= mask - 1;
    }
    out
}

/// Span of `vectors`, which must share one width.
pub fn span(vectors: &[BitVector]) -> Result<Subspace, Gf2Error> {
    let width = vectors.first().map_or(0, |v| v.width());
    Subspace::span(width, vectors)
}

/// GF(2) rank of a matrix.
pub fn rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

/// Surjection `(Z_2)^r -> (Z_2)^(r - rank H)` with kernel exactly `h`.
///
/// Row `t` reads free column `f_t` of the canonical coset representative, so
/// `Q v` equals the coset index of `v` written as a bit vector.
pub fn quotient_projection(h: &Subspace) -> Gf2Matrix {
    let free = h.free_columns();
    let mut q = Gf2Matrix::zeros(free.len(), h.ambient_width());
    for (t, &f) in free.iter().enumerate() {
        q.set(t, f, true);
        for (row, &p) in h.basis().iter().zip(h.pivots()) {
            if row.get(f) {
                q.set(t, p, true);
            }
        }
    }
    q
}

/// Finds a linear map `phi` with `phi(a_i) = b_i` for every `i` that is
/// injective on `span(a)`, or `None` when no such map exists.
///
/// The map is extended beyond `span(a)` by sending the unused unit vectors of
/// the source to unit vectors completing `span(b)`, taken in ascending order,
/// so it is an automorphism whenever both families span equal-width spaces.
pub fn solve_label_isomorphism(
    a: &[BitVector],
    b: &[BitVector],
) -> Result<Option<Gf2Matrix>, Gf2Error> {
    if a.len() != b.len() {
        return Err(Gf2Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let (Some(a0), Some(b0)) = (a.first(), b.first()) else {
        return Err(Gf2Error::Empty);
    };
    let (ra, rb) = (a0.width(), b0.width());
    for (&x, &y) in a.iter().zip(b) {
        check_width(ra, x.width())?;
        check_width(rb, y.width())?;
    }

    // RREF on the source side, carrying the prescribed images along.
    let mut rows: Vec<(BitVector, BitVector)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (&x, &y) in a.iter().zip(b) {
        let (mut x, mut y) = (x, y);
        for (&(rx, ry), &p) in rows.iter().zip(&pivots) {
            if x.get(p) {
                x += rx;
                y += ry;
            }
        }
        match x.leading() {
            None if !y.is_zero() => return Ok(None),
            None => {}
            Some(p) => {
                for row in rows.iter_mut() {
                    if row.0.get(p) {
                        row.0 += x;
                        row.1 += y;
                    }
                }
                let at = pivots.partition_point(|&q| q < p);
                pivots.insert(at, p);
                rows.insert(at, (x, y));
            }
        }
    }

    let mut image_span = Subspace::zero(rb)?;
    for &(_, y) in &rows {
        if !image_span.insert(y)? {
            return Ok(None);
        }
    }

    let pivot_mask = pivots.iter().fold(0u64, |m, &p| m | 1 << p);
    let mut completion = (0..rb).map(|i| BitVector::unit(rb, i));
    let mut free_image = vec![BitVector::zero(rb)?; ra];
    for f in (0..ra).filter(|&c| pivot_mask >> c & 1 == 0) {
        for candidate in completion.by_ref() {
            let candidate = candidate?;
            if image_span.insert(candidate)? {
                free_image[f] = candidate;
                break;
            }
        }
    }

    let mut columns = free_image.clone();
    for (&(rx, ry), &p) in rows.iter().zip(&pivots) {
        // e_p = row + sum of the free coordinates the row carries
        let mut col = ry;
        for f in rx.ones().filter(|&c| c != p) {
            col += free_image[f];
        }
        columns[p] = col;
    }
    Ok(Some(Gf2Matrix::from_columns(&columns, rb)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn brute_span(vs: &[BitVector]) -> Vec<BitVector> {
        let width = vs[0].width();
        let mut out: Vec<BitVector> = (0u64..1 << vs.len())
            .map(|mask| {
                vs.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(BitVector::zero(width).unwrap(), |acc, (_, &v)| acc + v)
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn bit_string_round_trip_and_order() {
        let v = bv("0101");
        assert_eq!(v.width(), 4);
        assert!(!v.get(0) && v.get(1) && v.get(3));
        assert_eq!(v.to_string(), "0101");
        assert!("012".parse::<BitVector>().is_err());
        assert_eq!(bv("").width(), 0);
    }

    #[test]
    fn width_cap() {
        assert!(BitVector::zero(64).is_ok());
        assert_eq!(BitVector::zero(65), Err(Gf2Error::WidthTooLarge(65)));
        assert!(BitVector::from_bits(3, 0b1000).is_err());
        assert!(bv("110").checked_add(bv("11")).is_err());
    }

    #[test]
    fn span_examples() {
        assert_eq!(Subspace::span(3, &[]).unwrap().rank(), 0);

        let vs = [bv("110"), bv("011"), bv("101")];
        let s = span(&vs).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.basis(), &[bv("101"), bv("011")]);
        assert_eq!(s.pivots(), &[0, 1]);
        // oracle: four elements by enumeration of the 8 combinations
        assert_eq!(brute_span(&vs).len(), 4);
        let mut listed = s.enumerate().unwrap();
        listed.sort();
        assert_eq!(listed, brute_span(&vs));

        let units: Vec<_> = (0..5).map(|i| BitVector::unit(5, i).unwrap()).collect();
        assert_eq!(span(&units).unwrap().rank(), 5);

        assert!(span(&[bv("10"), bv("101")]).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(Gf2Matrix::zeros(4, 7).rank(), 0);
        let m = Gf2Matrix::from_rows(&[bv("110"), bv("011"), bv("101")], 3).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_of_wide_matrices() {
        // a 3 x 200 matrix whose third row is the sum of the first two
        let mut m = Gf2Matrix::zeros(3, 200);
        for j in [0, 65, 130, 199] {
            m.set(0, j, true);
            m.set(2, j, true);
        }
        for j in [1, 64, 199] {
            m.set(1, j, true);
            m.flip(2, j);
        }
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn coset_rep_examples() {
        let zero = Subspace::zero(3).unwrap();
        assert_eq!(zero.reduce(bv("111")).unwrap(), bv("111"));

        let s = span(&[bv("110"), bv("011")]).unwrap();
        // coset of 111 is {111, 001, 100, 010}; clearing pivots 0 and 1 leaves 001
        assert_eq!(s.reduce(bv("111")).unwrap(), bv("001"));
        for member in ["000", "110", "011", "101"] {
            assert!(s.reduce(bv(member)).unwrap().is_zero());
        }
        assert!(s.reduce(bv("11")).is_err());
    }

    #[test]
    fn coset_index_examples() {
        let full = Subspace::full(3).unwrap();
        assert_eq!(full.coset_count(), 1);
        assert_eq!(full.coset_index(bv("101")).unwrap(), 0);

        let zero = Subspace::zero(2).unwrap();
        let reps: Vec<String> = (0..4).map(|i| zero.rep_of_index(i).unwrap().to_string()).collect();
        assert_eq!(reps, ["00", "10", "01", "11"]);
        assert!(zero.rep_of_index(4).is_err());

        let diag = span(&[bv("11")]).unwrap();
        assert_eq!(diag.coset_count(), 2);
        assert_eq!(diag.rep_of_index(0).unwrap(), bv("00"));
        assert_eq!(diag.rep_of_index(1).unwrap(), bv("01"));
        assert_eq!(diag.coset_index(bv("10")).unwrap(), 1);
        assert_eq!(diag.coset_index(bv("11")).unwrap(), 0);
    }

    #[test]
    fn label_isomorphism_examples() {
        let e1 = bv("10");
        let e2 = bv("01");
        let id = solve_label_isomorphism(&[e1, e2], &[e1, e2]).unwrap().unwrap();
        assert_eq!(id, Gf2Matrix::identity(2));

        let swap = solve_label_isomorphism(&[e1, e2], &[e2, e1]).unwrap().unwrap();
        assert_eq!(swap.apply(e1).unwrap(), e2);
        assert_eq!(swap.apply(e2).unwrap(), e1);

        assert!(solve_label_isomorphism(&[e1, e1], &[e1, e2]).unwrap().is_none());
        // b has a relation a lacks: not injective on span(a)
        assert!(solve_label_isomorphism(&[e1, e2], &[e1, e1]).unwrap().is_none());
        assert!(solve_label_isomorphism(&[e1], &[e1, e2]).is_err());
    }

    #[test]
    fn label_isomorphism_across_widths() {
        let a = [bv("100"), bv("010"), bv("110")];
        let b = [bv("10"), bv("01"), bv("11")];
        let phi = solve_label_isomorphism(&a, &b).unwrap().unwrap();
        assert_eq!((phi.row_count(), phi.col_count()), (2, 3));
        for (&x, &y) in a.iter().zip(&b) {
            assert_eq!(phi.apply(x).unwrap(), y);
        }
    }

    #[test]
    fn quotient_projection_examples() {
        assert_eq!(quotient_projection(&Subspace::zero(3).unwrap()), Gf2Matrix::identity(3));
        let q = quotient_projection(&Subspace::full(3).unwrap());
        assert_eq!((q.row_count(), q.col_count()), (0, 3));

        let h = span(&[bv("110")]).unwrap();
        let q = quotient_projection(&h);
        assert_eq!((q.row_count(), q.col_count()), (2, 3));
        // kernel by enumerating all 8 vectors
        for bits in 0..8 {
            let v = BitVector::from_bits(3, bits).unwrap();
            assert_eq!(q.apply(v).unwrap().is_zero(), h.contains(v).unwrap(), "{v}");
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(Subspace::zero(4).unwrap().enumerate().unwrap(), vec![bv("0000")]);
        let s = span(&[bv("10"), bv("01")]).unwrap();
        assert_eq!(s.enumerate().unwrap(), vec![bv("00"), bv("10"), bv("01"), bv("11")]);
        let s = span(&[bv("110"), bv("011")]).unwrap();
        let listed = s.enumerate().unwrap();
        assert_eq!(listed[0], bv("000"));
        let mut sorted = listed.clone();
        sorted.sort();
        let mut expected = vec![bv("000"), bv("110"), bv("011"), bv("101")];
        expected.sort();
        assert_eq!(sorted, expected);
        assert!(matches!(
            Subspace::full(21).unwrap().enumerate(),
            Err(Gf2Error::RankGuard { rank: 21 })
        ));
    }

    #[test]
    fn concat_and_embed() {
        assert_eq!(bv("10").concat(bv("011")).unwrap(), bv("10011"));
        assert_eq!(bv("11").embed(5, 2).unwrap(), bv("00110"));
        assert_eq!(bv("10").concat(bv("")).unwrap(), bv("10"));
    }
}
