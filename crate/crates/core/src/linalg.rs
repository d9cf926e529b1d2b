//! Matrices and linear codes over `R_q`, their binary images, and torsion codes.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::{BinaryCode, BinaryMatrix, BitVec};
use crate::error::{Error, Result};
use crate::ring::{lee_raw, mul_monomial, HomMode, RingSpec, RqElement};
use crate::Limits;

/// Gray map selector for matrix and code images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrayMap {
    Lee,
    Hom(HomMode),
}

impl GrayMap {
    /// Binary block width produced per ring symbol.
    pub fn width(&self, q: u32) -> usize {
        match self {
            GrayMap::Lee => 1 << q,
            GrayMap::Hom(_) => 2 << q,
        }
    }

    fn image(&self, x: RqElement) -> (u32, usize) {
        let g = match self {
            GrayMap::Lee => x.lee_gray(),
            GrayMap::Hom(mode) => x.hom_gray(*mode),
        };
        (g.bits(), g.len())
    }
}

/// Row-major matrix over `R_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RqMatrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<RqElement>,
}

impl RqMatrix {
    pub fn new(ring: RingSpec, rows: usize, cols: usize, entries: Vec<RqElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(alloc::format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if let Some(bad) = entries.iter().find(|e| e.q() != ring.q()) {
            return Err(Error::RingMismatch { left: ring.q(), right: bad.q() });
        }
        Ok(RqMatrix { ring, rows, cols, entries })
    }

    /// Builds a matrix from row vectors of equal length.
    pub fn from_rows(ring: RingSpec, rows: Vec<Vec<RqElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        RqMatrix::new(ring, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        let zero = ring.zero();
        RqMatrix { ring, rows, cols, entries: vec![zero; rows * cols] }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[RqElement] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> RqElement {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[RqElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<RqElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &RqMatrix) -> Result<RqMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension(alloc::format!("cannot place {} rows beside {} rows", other.rows, self.rows)));
        }
        if self.ring.q() != other.ring.q() {
            return Err(Error::RingMismatch { left: self.ring.q(), right: other.ring.q() });
        }
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Ok(RqMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols + other.cols, entries })
    }

    /// Stacks `other` below `self`.
    pub fn vconcat(&self, other: &RqMatrix) -> Result<RqMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(alloc::format!(
                "cannot stack {} columns under {} columns",
                other.cols,
                self.cols
            )));
        }
        if self.ring.q() != other.ring.q() {
            return Err(Error::RingMismatch { left: self.ring.q(), right: other.ring.q() });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(RqMatrix { ring: self.ring.clone(), rows: self.rows + other.rows, cols: self.cols, entries })
    }

    pub fn select_columns<F: Fn(usize) -> bool>(&self, keep: F) -> RqMatrix {
        let chosen: Vec<usize> = (0..self.cols).filter(|&j| keep(j)).collect();
        let mut entries = Vec::with_capacity(self.rows * chosen.len());
        for i in 0..self.rows {
            entries.extend(chosen.iter().map(|&j| self.get(i, j)));
        }
        RqMatrix { ring: self.ring.clone(), rows: self.rows, cols: chosen.len(), entries }
    }

    /// Entrywise `Γ_q` into `R_{q-1}`.
    pub fn project(&self) -> Result<RqMatrix> {
        let ring = RingSpec::new(self.ring.q().saturating_sub(1), None).map_err(|_| Error::NoProjection)?;
        let entries = self.entries.iter().map(|e| e.gamma_project()).collect::<Result<Vec<_>>>()?;
        Ok(RqMatrix { ring, rows: self.rows, cols: self.cols, entries })
    }

    /// Binary matrix obtained from `θ·G` by reading `θ` as 1: marks the unit entries.
    pub fn torsion_generator(&self) -> BinaryMatrix {
        let rows = (0..self.rows).map(|i| BitVec::from_bools(self.row(i).iter().map(|e| e.is_unit()))).collect();
        BinaryMatrix::new(rows, self.cols).expect("rows have matrix width")
    }

    /// Replaces every entry with its Gray block.
    pub fn gray_image(&self, map: GrayMap) -> BinaryMatrix {
        let width = map.width(self.ring.q());
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = BitVec::zeros(0);
                for &e in self.row(i) {
                    let (bits, len) = map.image(e);
                    r.push_bits(u64::from(bits), len);
                }
                r
            })
            .collect();
        BinaryMatrix::new(rows, self.cols * width).expect("rows have matrix width")
    }
}

impl fmt::Display for RqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("\n")?;
            }
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", e.coeffs())?;
            }
        }
        Ok(())
    }
}

/// A linear code over `R_q` with its full codeword list.
///
/// Codewords are stored flat as coefficient bitmasks, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeOverRq {
    generator: RqMatrix,
    words: Vec<u16>,
    count: usize,
    two_dim: u32,
}

impl CodeOverRq {
    /// Enumerates the `R_q`-row space of `generator`.
    ///
    /// The span is walked over an F_2 basis of `{u_A · row}` chosen by
    /// elimination on the Lee-Gray images, so no deduplication is needed.
    pub fn enumerate(generator: &RqMatrix, limits: &Limits) -> Result<Self> {
        let ring = generator.ring();
        let q = ring.q();
        let n = generator.cols();
        let combos = u128::from(ring.order()).checked_pow(generator.rows() as u32).unwrap_or(u128::MAX);
        if combos > u128::from(limits.enum_limit) {
            return Err(Error::ResourceLimit {
                what: "code enumeration",
                needed: combos,
                limit: u128::from(limits.enum_limit),
            });
        }

        let mut basis: Vec<(BitVec, Vec<u16>)> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for i in 0..generator.rows() {
            for set in 0..(1u32 << q) {
                let v: Vec<u16> = generator.row(i).iter().map(|e| mul_monomial(e.coeffs(), set)).collect();
                let mut img = lee_image(q, &v);
                let mut vec = v;
                for ((b_img, b_vec), &p) in basis.iter().zip(&pivots) {
                    if img.get(p) {
                        img.xor_assign(b_img);
                        xor_slices(&mut vec, b_vec);
                    }
                }
                if let Some(p) = img.first_one() {
                    basis.push((img, vec));
                    pivots.push(p);
                }
            }
        }
        let two_dim = basis.len() as u32;
        let count = 1usize << two_dim;
        let cells = (count as u128) * (n as u128);
        if cells > u128::from(limits.cell_limit) {
            return Err(Error::ResourceLimit {
                what: "codeword storage",
                needed: cells,
                limit: u128::from(limits.cell_limit),
            });
        }

        let mut walk = vec![0u16; count * n];
        let mut cur = vec![0u16; n];
        for idx in 1..count {
            xor_slices(&mut cur, &basis[idx.trailing_zeros() as usize].1);
            walk[idx * n..(idx + 1) * n].copy_from_slice(&cur);
        }
        let mut order: Vec<usize> = (0..count).collect();
        if n > 0 {
            order.sort_unstable_by(|&a, &b| walk[a * n..(a + 1) * n].cmp(&walk[b * n..(b + 1) * n]));
        }
        let mut words = Vec::with_capacity(count * n);
        for idx in order {
            words.extend_from_slice(&walk[idx * n..(idx + 1) * n]);
        }
        Ok(CodeOverRq { generator: generator.clone(), words, count, two_dim })
    }

    pub fn generator(&self) -> &RqMatrix {
        &self.generator
    }

    pub fn ring(&self) -> &RingSpec {
        self.generator.ring()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn size(&self) -> usize {
        self.count
    }

    /// `log2 |C|`, the rank of the Lee-Gray image.
    pub fn two_dimension(&self) -> u32 {
        self.two_dim
    }

    /// Coefficient bitmasks of codeword `i`.
    pub fn codeword_coeffs(&self, i: usize) -> &[u16] {
        let n = self.length();
        &self.words[i * n..(i + 1) * n]
    }

    pub fn codeword(&self, i: usize) -> Vec<RqElement> {
        let q = self.ring().q();
        self.codeword_coeffs(i).iter().map(|&c| RqElement::raw(q, c)).collect()
    }

    pub fn codewords(&self) -> impl Iterator<Item = &[u16]> + '_ {
        (0..self.count).map(move |i| self.codeword_coeffs(i))
    }

    /// Index of a codeword, if present.
    pub fn position(&self, word: &[u16]) -> Option<usize> {
        if word.len() != self.length() {
            return None;
        }
        let (mut lo, mut hi) = (0usize, self.count);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.codeword_coeffs(mid).cmp(word) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, word: &[RqElement]) -> bool {
        let raw: Vec<u16> = word.iter().map(RqElement::coeffs).collect();
        self.position(&raw).is_some()
    }

    pub fn gray_image(&self, map: GrayMap) -> BinaryCode {
        let q = self.ring().q();
        let words = self
            .codewords()
            .map(|w| {
                let mut out = BitVec::zeros(0);
                for &c in w {
                    let (bits, len) = map.image(RqElement::raw(q, c));
                    out.push_bits(u64::from(bits), len);
                }
                out
            })
            .collect();
        BinaryCode::from_words(self.length() * map.width(q), words).expect("uniform image length")
    }

    /// `Tor_A(C) = {v ∈ F_2^n : u_A v ∈ C}`, read off the codewords with
    /// every entry in `{0, u_A}`.
    pub fn torsion_code(&self, set: u32) -> Result<BinaryCode> {
        let ring = self.ring();
        let target = ring.monomial(set)?.coeffs();
        let words = self
            .codewords()
            .filter(|w| w.iter().all(|&c| c == 0 || c == target))
            .map(|w| BitVec::from_bools(w.iter().map(|&c| c == target)))
            .collect();
        BinaryCode::from_words(self.length(), words)
    }

    /// Reduction modulo the maximal ideal: the constant coefficients of every codeword.
    pub fn residue_code(&self) -> BinaryCode {
        let words = self.codewords().map(|w| BitVec::from_bools(w.iter().map(|&c| c & 1 == 1))).collect();
        BinaryCode::from_words(self.length(), words).expect("uniform length")
    }
}

fn lee_image(q: u32, v: &[u16]) -> BitVec {
    let mut out = BitVec::zeros(0);
    for &c in v {
        out.push_bits(u64::from(lee_raw(c)), 1 << q);
    }
    out
}

#[inline]
pub(crate) fn xor_slices(a: &mut [u16], b: &[u16]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= *y;
    }
}

/// Matrices whose columns can be compared as a multiset.
pub trait ColumnMatrix {
    type Key: Ord;

    fn row_count(&self) -> usize;
    fn col_count(&self) -> usize;
    fn column_key(&self, j: usize) -> Self::Key;

    fn sorted_column_keys(&self) -> Vec<Self::Key> {
        let mut keys: Vec<_> = (0..self.col_count()).map(|j| self.column_key(j)).collect();
        keys.sort();
        keys
    }
}

impl ColumnMatrix for RqMatrix {
    type Key = (u32, Vec<u16>);

    fn row_count(&self) -> usize {
        self.rows
    }

    fn col_count(&self) -> usize {
        self.cols
    }

    fn column_key(&self, j: usize) -> Self::Key {
        (self.ring.q(), (0..self.rows).map(|i| self.get(i, j).coeffs()).collect())
    }
}

impl ColumnMatrix for BinaryMatrix {
    type Key = BitVec;

    fn row_count(&self) -> usize {
        self.rows()
    }

    fn col_count(&self) -> usize {
        self.cols()
    }

    fn column_key(&self, j: usize) -> BitVec {
        self.column(j)
    }
}

/// True iff the two matrices have the same multiset of columns.
pub fn column_multiset_equal<M: ColumnMatrix>(a: &M, b: &M) -> Result<bool> {
    if a.row_count() != b.row_count() {
        return Err(Error::Dimension(alloc::format!("{} rows against {} rows", a.row_count(), b.row_count())));
    }
    if a.col_count() != b.col_count() {
        return Ok(false);
    }
    Ok(a.sorted_column_keys() == b.sorted_column_keys())
}

/// True iff `m` is `copies` side-by-side copies of `block` up to column order.
pub fn is_concatenation_of<M: ColumnMatrix>(m: &M, block: &M, copies: usize) -> Result<bool> {
    if m.row_count() != block.row_count() {
        return Err(Error::Dimension(alloc::format!("{} rows against {} rows", m.row_count(), block.row_count())));
    }
    if m.col_count() != copies * block.col_count() {
        return Ok(false);
    }
    Ok(concatenation_multiplicity(m, block) == Some(copies))
}

/// The `c` with `m ≅ c` copies of `block` (up to column order), if any.
pub fn concatenation_multiplicity<M: ColumnMatrix>(m: &M, block: &M) -> Option<usize> {
    if m.row_count() != block.row_count() || block.col_count() == 0 {
        return None;
    }
    if !m.col_count().is_multiple_of(block.col_count()) {
        return None;
    }
    let copies = m.col_count() / block.col_count();
    let mk = m.sorted_column_keys();
    let bk = block.sorted_column_keys();
    let mut bi = 0;
    let mut mi = 0;
    while bi < bk.len() {
        let mut run = 1;
        while bi + run < bk.len() && bk[bi + run] == bk[bi] {
            run += 1;
        }
        for _ in 0..run * copies {
            if mi >= mk.len() || mk[mi] != bk[bi] {
                return None;
            }
            mi += 1;
        }
        bi += run;
    }
    (mi == mk.len()).then_some(copies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{binary_simplex_alpha, simplex_alpha_generator};
    use alloc::string::ToString;

    fn ring(q: u32) -> RingSpec {
        RingSpec::new(q, None).unwrap()
    }

    fn row(r: &RingSpec, coeffs: &[u32]) -> RqMatrix {
        let entries = coeffs.iter().map(|&c| r.element(c).unwrap()).collect();
        RqMatrix::new(r.clone(), 1, coeffs.len(), entries).unwrap()
    }

    #[test]
    fn enumerate_small_codes() {
        let lim = Limits::default();
        let r = ring(1);
        let c = CodeOverRq::enumerate(&row(&r, &[0, 1, 2, 3]), &lim).unwrap();
        assert_eq!(c.size(), 4);
        assert_eq!(c.two_dimension(), 2);
        let zero = CodeOverRq::enumerate(&RqMatrix::zeros(r.clone(), 1, 1), &lim).unwrap();
        assert_eq!(zero.size(), 1);
        assert_eq!(zero.two_dimension(), 0);
        let g = simplex_alpha_generator(1, 2, &lim).unwrap();
        let c = CodeOverRq::enumerate(&g, &lim).unwrap();
        assert_eq!((c.size(), c.length()), (16, 16));
    }

    #[test]
    fn enumeration_guard() {
        let lim = Limits { enum_limit: 15, ..Limits::default() };
        let g = RqMatrix::zeros(ring(2), 1, 1);
        assert!(matches!(CodeOverRq::enumerate(&g, &lim), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn gray_matrix_example() {
        let r = ring(1);
        let g = row(&r, &[0, 1, 2, 3]);
        assert_eq!(g.gray_image(GrayMap::Lee).to_string(), "00101101");
        assert_eq!(RqMatrix::zeros(r.clone(), 1, 1).gray_image(GrayMap::Lee).to_string(), "00");
        assert_eq!(g.gray_image(GrayMap::Hom(HomMode::Linear)).cols(), 16);
    }

    #[test]
    fn gray_code_images() {
        let lim = Limits::default();
        let r = ring(1);
        let c = CodeOverRq::enumerate(&row(&r, &[0, 1, 2, 3]), &lim).unwrap();
        let lee = c.gray_image(GrayMap::Lee);
        assert_eq!((lee.size(), lee.len()), (4, 8));
        assert_eq!(lee.min_nonzero_weight(), Some(4));
        assert!(lee.is_linear());
        let hom = c.gray_image(GrayMap::Hom(HomMode::Linear));
        assert_eq!((hom.size(), hom.len()), (4, 16));
        assert_eq!(hom.weight_counts(), vec![(0, 1), (8, 3)]);
        let z = CodeOverRq::enumerate(&RqMatrix::zeros(r, 1, 3), &lim).unwrap();
        assert_eq!(z.gray_image(GrayMap::Lee).size(), 1);
    }

    #[test]
    fn torsion_examples() {
        let lim = Limits::default();
        let r = ring(1);
        let c = CodeOverRq::enumerate(&row(&r, &[0, 1, 2, 3]), &lim).unwrap();
        let t = c.torsion_code(1).unwrap();
        let words: Vec<_> = t.words().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["0000", "0101"]);
        let z = CodeOverRq::enumerate(&RqMatrix::zeros(r.clone(), 1, 2), &lim).unwrap();
        assert_eq!(z.torsion_code(0).unwrap().size(), 1);
        let c12 = CodeOverRq::enumerate(&simplex_alpha_generator(1, 2, &lim).unwrap(), &lim).unwrap();
        assert!(c12.torsion_code(0).unwrap().is_subset_of(&c12.torsion_code(1).unwrap()));
        assert!(c.torsion_code(2).is_err());
    }

    #[test]
    fn column_multisets() {
        let a = BinaryMatrix::new(vec![BitVec::parse("01").unwrap(), BitVec::parse("10").unwrap()], 2).unwrap();
        let b = BinaryMatrix::new(vec![BitVec::parse("11").unwrap(), BitVec::parse("00").unwrap()], 2).unwrap();
        assert!(!column_multiset_equal(&a, &b).unwrap());
        let swapped = a.select_columns(|j| j == 1).hconcat(&a.select_columns(|j| j == 0)).unwrap();
        assert!(column_multiset_equal(&a, &swapped).unwrap());
        let one_row = BinaryMatrix::zeros(1, 2);
        assert!(column_multiset_equal(&a, &one_row).is_err());

        let r = ring(1);
        let img = row(&r, &[0, 1, 2, 3]).gray_image(GrayMap::Lee);
        let g1 = binary_simplex_alpha(1, &Limits::default()).unwrap();
        assert!(column_multiset_equal(&img, &g1.repeat(4)).unwrap());
        assert!(is_concatenation_of(&img, &g1, 4).unwrap());
        assert!(!is_concatenation_of(&img, &g1, 3).unwrap());
        assert_eq!(concatenation_multiplicity(&img, &g1), Some(4));
    }

    #[test]
    fn projection_and_torsion_generator_concatenations() {
        let lim = Limits::default();
        let g21 = simplex_alpha_generator(2, 1, &lim).unwrap();
        let g11 = simplex_alpha_generator(1, 1, &lim).unwrap();
        assert!(is_concatenation_of(&g21.project().unwrap(), &g11, 4).unwrap());
        let tg = g11.torsion_generator();
        assert_eq!(tg.to_string(), "0101");
        let g1 = binary_simplex_alpha(1, &lim).unwrap();
        assert!(is_concatenation_of(&tg, &g1, 2).unwrap());
    }

    fn brute_span(g: &RqMatrix) -> Vec<Vec<u16>> {
        let r = g.ring();
        let q = r.q();
        let order = r.order() as usize;
        let mut out = Vec::new();
        let total = order.pow(g.rows() as u32);
        for idx in 0..total {
            let mut m = idx;
            let mut w = vec![0u16; g.cols()];
            for i in 0..g.rows() {
                let s = (m % order) as u16;
                m /= order;
                for (j, x) in w.iter_mut().enumerate() {
                    *x ^= crate::ring::mul_raw(q, s, g.get(i, j).coeffs());
                }
            }
            out.push(w);
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn enumeration_matches_brute_force_span() {
        let lim = Limits::default();
        let r1 = ring(1);
        let r2 = ring(2);
        let mats = [
            simplex_alpha_generator(1, 2, &lim).unwrap(),
            simplex_alpha_generator(2, 1, &lim).unwrap(),
            RqMatrix::from_rows(
                r1.clone(),
                vec![vec![r1.theta(), r1.one(), r1.zero()], vec![r1.theta(), r1.zero(), r1.theta()]],
            )
            .unwrap(),
            RqMatrix::from_rows(
                r2.clone(),
                vec![
                    vec![r2.element(2).unwrap(), r2.element(4).unwrap(), r2.theta()],
                    vec![r2.element(6).unwrap(), r2.element(6).unwrap(), r2.zero()],
                ],
            )
            .unwrap(),
        ];
        for g in &mats {
            let c = CodeOverRq::enumerate(g, &lim).unwrap();
            let brute = brute_span(g);
            let fast: Vec<Vec<u16>> = c.codewords().map(<[u16]>::to_vec).collect();
            assert_eq!(fast, brute);
            assert_eq!(1usize << c.two_dimension(), brute.len());
        }
    }
}
