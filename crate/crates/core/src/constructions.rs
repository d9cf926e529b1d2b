//! Generator matrices for simplex, MacDonald and repetition codes over `R_q`
//! and their binary counterparts.
//!
//! Row conventions: in `G^α_{(q,k)}` the newest row sits at the bottom, so row
//! `i` of column `j` is digit `i` of `j` in base `|R_q|` (row 0 varies fastest).
//! `G^β_{(q,k)}` and the binary matrices put the newest row on top.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bits::{BinaryMatrix, BitVec};
use crate::error::{Error, Result};
use crate::linalg::RqMatrix;
use crate::ring::{RingSpec, RqElement};
use crate::Limits;

fn check_entries(rows: u128, cols: u128, limits: &Limits, what: &'static str) -> Result<()> {
    let needed = rows.saturating_mul(cols);
    if needed > u128::from(limits.enum_limit) {
        return Err(Error::ResourceLimit { what, needed, limit: u128::from(limits.enum_limit) });
    }
    Ok(())
}

fn pow2(exp: u32) -> u128 {
    if exp >= 128 {
        u128::MAX
    } else {
        1u128 << exp
    }
}

fn ring(q: u32) -> Result<RingSpec> {
    RingSpec::new(q, None)
}

/// Column count of `G^α_{(q,k)}`: `2^(2^q k)`.
pub fn simplex_alpha_width(q: u32, k: u32) -> u128 {
    pow2((1u32 << q).saturating_mul(k))
}

/// Column count of `G^β_{(q,k)}`: `2^((2^q - 1)(k - 1)) (2^k - 1)`.
pub fn simplex_beta_width(q: u32, k: u32) -> u128 {
    if k == 0 {
        return 0;
    }
    pow2(((1u32 << q) - 1).saturating_mul(k - 1)).saturating_mul(pow2(k) - 1)
}

pub fn simplex_alpha_generator(q: u32, k: u32, limits: &Limits) -> Result<RqMatrix> {
    let ring = ring(q)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let width = simplex_alpha_width(q, k);
    check_entries(u128::from(k), width, limits, "simplex alpha generator")?;
    let order = ring.order() as usize;
    let width = width as usize;
    let k = k as usize;
    let mut entries = Vec::with_capacity(k * width);
    let mut stride = 1usize;
    for _ in 0..k {
        entries.extend((0..width).map(|j| RqElement::raw(q, ((j / stride) % order) as u16)));
        stride *= order;
    }
    RqMatrix::new(ring, k, width, entries)
}

pub fn simplex_beta_generator(q: u32, k: u32, limits: &Limits) -> Result<RqMatrix> {
    let ring = ring(q)?;
    if k < 2 {
        return Err(Error::InvalidParameter("simplex beta needs k >= 2".into()));
    }
    check_entries(u128::from(k), simplex_beta_width(q, k), limits, "simplex beta generator")?;
    beta_rec(&ring, k, limits)
}

/// `G^β_{(q,k)}` with the convention `G^β_{(q,1)} = (1)`, which makes the
/// general recursion reproduce the two-row base case.
fn beta_rec(ring: &RingSpec, k: u32, limits: &Limits) -> Result<RqMatrix> {
    if k == 1 {
        return RqMatrix::new(ring.clone(), 1, 1, vec![ring.one()]);
    }
    let alpha = simplex_alpha_generator(ring.q(), k - 1, limits)?;
    let inner = beta_rec(ring, k - 1, limits)?;
    let mut top: Vec<RqElement> = vec![ring.one(); alpha.cols()];
    let mut bottom = alpha;
    for z in ring.zero_divisors() {
        top.extend(core::iter::repeat_n(z, inner.cols()));
        bottom = bottom.hconcat(&inner)?;
    }
    let head = RqMatrix::new(ring.clone(), 1, top.len(), top)?;
    head.vconcat(&bottom)
}

fn check_macdonald(k: u32, u: u32) -> Result<()> {
    if u == 0 || u >= k {
        return Err(Error::InvalidParameter(alloc::format!(
            "MacDonald codes need 1 <= u <= k-1 (got k = {k}, u = {u})"
        )));
    }
    Ok(())
}

/// Drops the columns whose first `k - u` entries are all zero, checking the count.
fn delete_low_block(g: &RqMatrix, k: u32, u: u32, expected: u128, name: &str) -> Result<RqMatrix> {
    let top = (k - u) as usize;
    let keep = |j: usize| (0..top).any(|i| !g.get(i, j).is_zero());
    let out = g.select_columns(keep);
    let removed = (g.cols() - out.cols()) as u128;
    if removed != expected {
        return Err(Error::ConstructionDefect(alloc::format!(
            "{name}: removed {removed} columns, expected {expected}"
        )));
    }
    Ok(out)
}

pub fn macdonald_alpha_generator(q: u32, k: u32, u: u32, limits: &Limits) -> Result<RqMatrix> {
    ring(q)?;
    check_macdonald(k, u)?;
    let g = simplex_alpha_generator(q, k, limits)?;
    delete_low_block(&g, k, u, simplex_alpha_width(q, u), "MacDonald alpha")
}

pub fn macdonald_beta_generator(q: u32, k: u32, u: u32, limits: &Limits) -> Result<RqMatrix> {
    ring(q)?;
    check_macdonald(k, u)?;
    let g = simplex_beta_generator(q, k, limits)?;
    delete_low_block(&g, k, u, simplex_beta_width(q, u), "MacDonald beta")
}

/// `G_k`: all binary `k`-tuples, newest row on top.
pub fn binary_simplex_alpha(k: u32, limits: &Limits) -> Result<BinaryMatrix> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    check_entries(u128::from(k), pow2(k), limits, "binary simplex alpha")?;
    let width = 1usize << k;
    let rows = (0..k).map(|i| BitVec::from_bools((0..width).map(|j| j >> (k - 1 - i) & 1 == 1))).collect();
    BinaryMatrix::new(rows, width)
}

/// `Ĝ_k = [1…1 0…0 ; G_{k-1} Ĝ_{k-1}]` with `Ĝ_1 = (1)`.
pub fn binary_simplex_beta(k: u32, limits: &Limits) -> Result<BinaryMatrix> {
    if k < 2 {
        return Err(Error::InvalidParameter("binary simplex beta needs k >= 2".into()));
    }
    check_entries(u128::from(k), pow2(k) - 1, limits, "binary simplex beta")?;
    binary_beta_rec(k, limits)
}

fn binary_beta_rec(k: u32, limits: &Limits) -> Result<BinaryMatrix> {
    if k == 1 {
        return BinaryMatrix::new(vec![BitVec::parse("1").expect("literal")], 1);
    }
    let alpha = binary_simplex_alpha(k - 1, limits)?;
    let inner = binary_beta_rec(k - 1, limits)?;
    let mut top = BitVec::zeros(0);
    top.push_bits(u64::MAX, alpha.cols());
    for _ in 0..inner.cols() {
        top.push(false);
    }
    let bottom = alpha.hconcat(&inner)?;
    let mut rows = vec![top];
    rows.extend(bottom.row_vectors().iter().cloned());
    BinaryMatrix::new(rows, alpha.cols() + inner.cols())
}

fn delete_low_binary(g: &BinaryMatrix, k: u32, u: u32) -> BinaryMatrix {
    let top = (k - u) as usize;
    g.select_columns(|j| (0..top).any(|i| g.get(i, j)))
}

/// Binary MacDonald code of type α: `G_k` without the columns that are zero on the first `k-u` rows.
pub fn binary_macdonald_alpha(k: u32, u: u32, limits: &Limits) -> Result<BinaryMatrix> {
    check_macdonald(k, u)?;
    Ok(delete_low_binary(&binary_simplex_alpha(k, limits)?, k, u))
}

/// Binary MacDonald code of type β, obtained from `Ĝ_k` the same way.
pub fn binary_macdonald_beta(k: u32, u: u32, limits: &Limits) -> Result<BinaryMatrix> {
    check_macdonald(k, u)?;
    Ok(delete_low_binary(&binary_simplex_beta(k, limits)?, k, u))
}

/// `(c c ⋯ c)` of length `n`.
pub fn repetition_generator(c: RqElement, n: usize, limits: &Limits) -> Result<RqMatrix> {
    let ring = ring(c.q())?;
    if c.is_zero() {
        return Err(Error::InvalidParameter("repetition element must be nonzero".into()));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    check_entries(1, n as u128, limits, "repetition generator")?;
    RqMatrix::new(ring, 1, n, vec![c; n])
}

/// Every nonzero element in canonical order, each repeated `n` times.
pub fn block_repetition_generator(q: u32, n: usize, limits: &Limits) -> Result<RqMatrix> {
    let ring = ring(q)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    check_entries(1, (u128::from(ring.order()) - 1) * n as u128, limits, "block repetition generator")?;
    let entries: Vec<RqElement> = ring.elements().skip(1).flat_map(|x| core::iter::repeat_n(x, n)).collect();
    let cols = entries.len();
    RqMatrix::new(ring, 1, cols, entries)
}

/// Code families exposed by the builders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    SimplexAlpha,
    SimplexBeta,
    MacdonaldAlpha,
    MacdonaldBeta,
    BinarySimplexAlpha,
    BinarySimplexBeta,
    Repetition,
    BlockRepetition,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::SimplexAlpha,
        Family::SimplexBeta,
        Family::MacdonaldAlpha,
        Family::MacdonaldBeta,
        Family::BinarySimplexAlpha,
        Family::BinarySimplexBeta,
        Family::Repetition,
        Family::BlockRepetition,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::SimplexAlpha => "simplex-alpha",
            Family::SimplexBeta => "simplex-beta",
            Family::MacdonaldAlpha => "macdonald-alpha",
            Family::MacdonaldBeta => "macdonald-beta",
            Family::BinarySimplexAlpha => "binary-simplex-alpha",
            Family::BinarySimplexBeta => "binary-simplex-beta",
            Family::Repetition => "repetition",
            Family::BlockRepetition => "block-repetition",
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, Family::BinarySimplexAlpha | Family::BinarySimplexBeta)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(alloc::format!("unknown family {s:?}")))
    }
}

/// Parameters for [`ConstructionParams::build`]; unused fields are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionParams {
    pub family: Family,
    pub q: u32,
    pub k: u32,
    pub u: u32,
    pub n: usize,
    /// Repetition element as decimal bitmask or symbolic text; `theta` names the socle.
    pub c: Option<String>,
}

/// A generator over `R_q` or over F_2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Ring(RqMatrix),
    Binary(BinaryMatrix),
}

impl ConstructionParams {
    pub fn new(family: Family) -> Self {
        ConstructionParams { family, q: 1, k: 1, u: 1, n: 1, c: None }
    }

    /// The repetition element, defaulting to 1.
    pub fn element(&self) -> Result<RqElement> {
        let ring = ring(self.q)?;
        match self.c.as_deref() {
            None => Ok(ring.one()),
            Some("theta") | Some("θ") => Ok(ring.theta()),
            Some(text) => ring.parse_element(text),
        }
    }

    pub fn build(&self, limits: &Limits) -> Result<Generator> {
        let (q, k, u) = (self.q, self.k, self.u);
        Ok(match self.family {
            Family::SimplexAlpha => Generator::Ring(simplex_alpha_generator(q, k, limits)?),
            Family::SimplexBeta => Generator::Ring(simplex_beta_generator(q, k, limits)?),
            Family::MacdonaldAlpha => Generator::Ring(macdonald_alpha_generator(q, k, u, limits)?),
            Family::MacdonaldBeta => Generator::Ring(macdonald_beta_generator(q, k, u, limits)?),
            Family::BinarySimplexAlpha => Generator::Binary(binary_simplex_alpha(k, limits)?),
            Family::BinarySimplexBeta => Generator::Binary(binary_simplex_beta(k, limits)?),
            Family::Repetition => Generator::Ring(repetition_generator(self.element()?, self.n, limits)?),
            Family::BlockRepetition => Generator::Ring(block_repetition_generator(q, self.n, limits)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::column_multiset_equal;
    use alloc::string::ToString;

    fn lim() -> Limits {
        Limits::default()
    }

    fn all_tuples(q: u32, k: u32) -> RqMatrix {
        // Independent oracle: enumerate k-tuples with the last row fastest.
        let r = RingSpec::new(q, None).unwrap();
        let order = r.order() as usize;
        let total = order.pow(k);
        let mut rows = vec![Vec::new(); k as usize];
        for idx in 0..total {
            let mut m = idx;
            for i in (0..k as usize).rev() {
                rows[i].push(r.element((m % order) as u32).unwrap());
                m /= order;
            }
        }
        RqMatrix::from_rows(r, rows).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let g = simplex_alpha_generator(1, 1, &lim()).unwrap();
        assert_eq!(g.to_string(), "0 1 2 3");
        let g = simplex_alpha_generator(2, 1, &lim()).unwrap();
        assert_eq!(g.cols(), 16);
        for (j, e) in g.row(0).iter().enumerate() {
            assert_eq!(usize::from(e.coeffs()), j);
        }
    }

    #[test]
    fn alpha_columns_are_all_tuples() {
        for (q, k) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)] {
            let g = simplex_alpha_generator(q, k, &lim()).unwrap();
            assert!(column_multiset_equal(&g, &all_tuples(q, k)).unwrap(), "q={q} k={k}");
        }
    }

    #[test]
    fn alpha_rows_are_balanced() {
        for (q, k) in [(1, 2), (1, 3), (2, 2)] {
            let g = simplex_alpha_generator(q, k, &lim()).unwrap();
            let expect = 1usize << ((1 << q) * (k - 1));
            for i in 0..g.rows() {
                let mut counts = vec![0usize; g.ring().order() as usize];
                for e in g.row(i) {
                    counts[usize::from(e.coeffs())] += 1;
                }
                assert!(counts.iter().all(|&c| c == expect));
            }
        }
    }

    #[test]
    fn beta_examples() {
        let g = simplex_beta_generator(1, 2, &lim()).unwrap();
        let cols: Vec<Vec<u16>> = (0..g.cols()).map(|j| g.column(j).iter().map(|e| e.coeffs()).collect()).collect();
        assert_eq!(cols, vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3], vec![0, 1], vec![2, 1]]);
        assert_eq!(simplex_beta_generator(1, 3, &lim()).unwrap().cols(), 28);
        assert_eq!(simplex_beta_generator(2, 2, &lim()).unwrap().cols(), 24);
        assert!(simplex_beta_generator(1, 1, &lim()).is_err());
    }

    #[test]
    fn beta_width_recursion() {
        // Oracle: W(1) = 1, W(k) = N^(k-1) + |D| W(k-1).
        for q in 1..=2u32 {
            let n = 1u128 << (1 << q);
            let mut w = 1u128;
            for k in 2..=3u32 {
                w = n.pow(k - 1) + (n / 2) * w;
                assert_eq!(simplex_beta_width(q, k), w);
                assert_eq!(simplex_beta_generator(q, k, &lim()).unwrap().cols() as u128, w);
            }
        }
    }

    #[test]
    fn macdonald_examples() {
        assert_eq!(macdonald_alpha_generator(1, 2, 1, &lim()).unwrap().cols(), 12);
        assert_eq!(macdonald_alpha_generator(2, 3, 1, &lim()).unwrap().cols(), 4080);
        assert!(matches!(macdonald_alpha_generator(1, 2, 2, &lim()), Err(Error::InvalidParameter(_))));
        assert_eq!(macdonald_beta_generator(1, 3, 2, &lim()).unwrap().cols(), 22);
        assert_eq!(macdonald_beta_generator(1, 2, 1, &lim()).unwrap().cols(), 5);
        let full = simplex_beta_generator(2, 3, &lim()).unwrap().cols();
        assert_eq!(full - macdonald_beta_generator(2, 3, 2, &lim()).unwrap().cols(), 24);
    }

    #[test]
    fn macdonald_alpha_has_no_low_columns() {
        let g = macdonald_alpha_generator(1, 3, 1, &lim()).unwrap();
        for j in 0..g.cols() {
            assert!(!(g.get(0, j).is_zero() && g.get(1, j).is_zero()));
        }
    }

    #[test]
    fn binary_examples() {
        assert_eq!(binary_simplex_alpha(1, &lim()).unwrap().to_string(), "01");
        assert_eq!(binary_simplex_alpha(2, &lim()).unwrap().to_string(), "0011\n0101");
        assert_eq!(binary_simplex_beta(2, &lim()).unwrap().to_string(), "110\n011");
        let b3 = binary_simplex_beta(3, &lim()).unwrap();
        assert_eq!((b3.rows(), b3.cols()), (3, 7));
        let span = binary_simplex_beta(2, &lim()).unwrap().span();
        let words: Vec<_> = span.words().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["000", "011", "101", "110"]);
        for k in 2..=4 {
            let code = binary_simplex_beta(k, &lim()).unwrap().span();
            assert_eq!(code.weight_counts(), vec![(0, 1), (1 << (k - 1), (1 << k) - 1)]);
        }
        for k in 1..=4 {
            let g = binary_simplex_alpha(k, &lim()).unwrap();
            let mut cols: Vec<_> = (0..g.cols()).map(|j| g.column(j)).collect();
            cols.sort();
            cols.dedup();
            assert_eq!(cols.len(), 1 << k);
        }
    }

    #[test]
    fn repetition_examples() {
        let r = RingSpec::new(1, None).unwrap();
        assert_eq!(repetition_generator(r.one(), 3, &lim()).unwrap().to_string(), "1 1 1");
        assert!(repetition_generator(r.zero(), 3, &lim()).is_err());
        assert_eq!(block_repetition_generator(1, 1, &lim()).unwrap().to_string(), "1 2 3");
        assert_eq!(block_repetition_generator(1, 2, &lim()).unwrap().to_string(), "1 1 2 2 3 3");
    }

    #[test]
    fn size_guard() {
        assert!(matches!(simplex_alpha_generator(3, 3, &lim()), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("simplex".parse::<Family>().is_err());
    }
}
