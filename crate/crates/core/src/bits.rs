//! Dense F_2 vectors, matrices and codes.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Fixed-length bit vector packed into 64-bit words.
///
/// Ordering is by length, then lexicographic with position 0 most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.len.cmp(&other.len).then_with(|| {
            let a = self.words.iter().map(|w| w.reverse_bits());
            a.cmp(other.words.iter().map(|w| w.reverse_bits()))
        })
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut out = BitVec::zeros(0);
        for b in bits {
            out.push(b);
        }
        out
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = BitVec::zeros(0);
        for c in text.chars() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                _ => return Err(Error::Parse(alloc::format!("bad bit {c:?}"))),
            }
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn push(&mut self, value: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, value);
    }

    /// Appends the low `count` bits of `bits`, lowest first.
    pub fn push_bits(&mut self, bits: u64, count: usize) {
        for pos in 0..count {
            self.push(bits >> pos & 1 == 1);
        }
    }

    pub fn extend_from(&mut self, other: &BitVec) {
        for i in 0..other.len {
            self.push(other.get(i));
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn complement(&self) -> BitVec {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Reduces `rows` to a basis in reduced row echelon form; returns the basis
/// together with the pivot column of each basis row.
pub fn row_reduce(rows: &[BitVec]) -> (Vec<BitVec>, Vec<usize>) {
    let mut basis: Vec<BitVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (b, &p) in basis.iter().zip(&pivots) {
            if r.get(p) {
                r.xor_assign(b);
            }
        }
        if let Some(p) = r.first_one() {
            for b in basis.iter_mut() {
                if b.get(p) {
                    b.xor_assign(&r);
                }
            }
            basis.push(r);
            pivots.push(p);
        }
    }
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let basis = order.iter().map(|&i| basis[i].clone()).collect();
    let pivots = order.iter().map(|&i| pivots[i]).collect();
    (basis, pivots)
}

pub fn rank(rows: &[BitVec]) -> usize {
    row_reduce(rows).0.len()
}

/// Row-major binary matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BinaryMatrix {
    pub fn new(rows: Vec<BitVec>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(alloc::format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(BinaryMatrix { cols, rows })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix { cols, rows: vec![BitVec::zeros(cols); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    /// Column `j` as a bit vector of length `rows`.
    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_bools(self.rows.iter().map(|r| r.get(j)))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.rows() != other.rows() {
            return Err(Error::Dimension(alloc::format!(
                "cannot place {} rows beside {} rows",
                other.rows(),
                self.rows()
            )));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend_from(b);
                r
            })
            .collect();
        Ok(BinaryMatrix { cols: self.cols + other.cols, rows })
    }

    /// `copies` side-by-side repetitions of `self`.
    pub fn repeat(&self, copies: usize) -> BinaryMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = BitVec::zeros(0);
                for _ in 0..copies {
                    out.extend_from(r);
                }
                out
            })
            .collect();
        BinaryMatrix { cols: self.cols * copies, rows }
    }

    /// Keeps the columns for which `keep` returns true.
    pub fn select_columns<F: Fn(usize) -> bool>(&self, keep: F) -> BinaryMatrix {
        let chosen: Vec<usize> = (0..self.cols).filter(|&j| keep(j)).collect();
        let rows = self.rows.iter().map(|r| BitVec::from_bools(chosen.iter().map(|&j| r.get(j)))).collect();
        BinaryMatrix { cols: chosen.len(), rows }
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    /// The F_2 row space.
    pub fn span(&self) -> BinaryCode {
        BinaryCode::span_of(self.cols, &self.rows)
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// A set of binary words of common length, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    len: usize,
    words: Vec<BitVec>,
}

/// Guard for spanning binary codes word by word.
const MAX_SPAN_RANK: usize = 24;

impl BinaryCode {
    pub fn from_words(len: usize, mut words: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = words.iter().find(|w| w.len() != len) {
            return Err(Error::Dimension(alloc::format!("word of length {} in a code of length {len}", bad.len())));
        }
        words.sort();
        words.dedup();
        Ok(BinaryCode { len, words })
    }

    /// Row space of `generators`, enumerated in full.
    ///
    /// Panics if the rank exceeds 24; callers enumerate only small codes.
    pub fn span_of(len: usize, generators: &[BitVec]) -> Self {
        let (basis, _) = row_reduce(generators);
        assert!(basis.len() <= MAX_SPAN_RANK, "binary span too large");
        let mut words = Vec::with_capacity(1 << basis.len());
        let mut cur = BitVec::zeros(len);
        words.push(cur.clone());
        for i in 1u64..(1u64 << basis.len()) {
            cur.xor_assign(&basis[i.trailing_zeros() as usize]);
            words.push(cur.clone());
        }
        words.sort();
        BinaryCode { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[BitVec] {
        &self.words
    }

    pub fn contains(&self, w: &BitVec) -> bool {
        self.words.binary_search(w).is_ok()
    }

    pub fn is_subset_of(&self, other: &BinaryCode) -> bool {
        self.len == other.len && self.words.iter().all(|w| other.contains(w))
    }

    /// F_2-rank of the word set.
    pub fn rank(&self) -> usize {
        rank(&self.words)
    }

    /// Reduced basis of the linear span of the words.
    pub fn basis(&self) -> Vec<BitVec> {
        row_reduce(&self.words).0
    }

    /// Closed under addition and contains zero.
    pub fn is_linear(&self) -> bool {
        if !self.contains(&BitVec::zeros(self.len)) {
            return false;
        }
        if self.words.len() != 1usize << self.rank() {
            return false;
        }
        self.basis().iter().all(|b| self.contains(b))
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.words.iter().map(BitVec::weight).filter(|&w| w > 0).min()
    }

    /// Hamming weight distribution as `(weight, count)` pairs.
    pub fn weight_counts(&self) -> Vec<(usize, u64)> {
        let mut counts = vec![0u64; self.len + 1];
        for w in &self.words {
            counts[w.weight()] += 1;
        }
        counts.into_iter().enumerate().filter(|&(_, c)| c > 0).collect()
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            s.push_str(&alloc::format!("{w}"));
        }
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn bitvec_basics() {
        let v = BitVec::parse("0101").unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v.weight(), 2);
        assert_eq!(v.complement().to_string(), "1010");
        assert_eq!(v.first_one(), Some(1));
        assert!(BitVec::parse("012").is_err());
        let mut long = BitVec::zeros(130);
        long.set(129, true);
        assert_eq!(long.complement().weight(), 129);
    }

    #[test]
    fn rank_and_span() {
        let rows = [BitVec::parse("110").unwrap(), BitVec::parse("011").unwrap(), BitVec::parse("101").unwrap()];
        assert_eq!(rank(&rows), 2);
        let code = BinaryCode::span_of(3, &rows);
        let words: Vec<_> = code.words().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["000", "011", "101", "110"]);
        assert!(code.is_linear());
        assert_eq!(code.min_nonzero_weight(), Some(2));
    }

    #[test]
    fn nonlinear_set_detected() {
        let code = BinaryCode::from_words(
            2,
            vec![BitVec::parse("00").unwrap(), BitVec::parse("11").unwrap(), BitVec::parse("10").unwrap()],
        )
        .unwrap();
        assert!(!code.is_linear());
    }

    #[test]
    fn matrix_ops() {
        let m = BinaryMatrix::new(vec![BitVec::parse("01").unwrap()], 2).unwrap();
        assert_eq!(m.repeat(3).to_string(), "010101");
        assert_eq!(m.hconcat(&m).unwrap().cols(), 4);
        assert!(BinaryMatrix::new(vec![BitVec::parse("0").unwrap()], 2).is_err());
    }
}
