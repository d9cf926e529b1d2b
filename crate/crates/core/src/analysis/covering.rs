//! Exact covering radii.
//!
//! Three independent engines:
//!
//! * [`ExhaustiveScan`] walks the whole ambient space `R_q^n` in lexicographic
//!   order, abandoning a point as soon as some codeword is close enough that it
//!   cannot beat the best value so far. Ranges of the scan can be run on
//!   separate threads and merged with [`ScanBest::merge`].
//! * [`gray_syndrome`] works in the Lee metric only: it maps the code to its
//!   binary Lee-Gray image and runs a breadth-first search over syndromes,
//!   whose deepest level is the binary covering radius.
//! * [`profile_dp`] sweeps the coordinates keeping, for every surviving prefix,
//!   the vector of partial distances to all codewords. Dominated vectors and
//!   translates of a kept vector are dropped.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;

use super::weights::{Metric, SymbolWeights};
use crate::bits::{row_reduce, BitVec};
use crate::error::{Error, Result};
use crate::linalg::{CodeOverRq, RqMatrix};
use crate::ring::{lee_raw, mul_monomial, RqElement};
use crate::{Limits, Rational};

/// Covering-radius algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Engine {
    Exhaustive,
    ProfileDp,
    GraySyndrome,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Exhaustive, Engine::ProfileDp, Engine::GraySyndrome];

    pub fn name(&self) -> &'static str {
        match self {
            Engine::Exhaustive => "exhaustive",
            Engine::ProfileDp => "profile_dp",
            Engine::GraySyndrome => "gray_syndrome",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Engine::Exhaustive),
            "profile_dp" | "profile-dp" | "dp" => Ok(Engine::ProfileDp),
            "gray_syndrome" | "gray-syndrome" | "syndrome" => Ok(Engine::GraySyndrome),
            _ => Err(Error::Parse(alloc::format!("unknown engine {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringRadiusResult {
    pub metric: Metric,
    pub value: Rational,
    pub engine: Engine,
    /// A vector whose distance to the code equals `value`.
    pub certificate: Vec<RqElement>,
}

/// Distance from `x` to the nearest codeword.
pub fn distance_to_code(code: &CodeOverRq, weights: &SymbolWeights, x: &[RqElement]) -> Result<Rational> {
    if x.len() != code.length() {
        return Err(Error::Dimension(alloc::format!(
            "vector of length {} against code of length {}",
            x.len(),
            code.length()
        )));
    }
    let raw: Vec<u16> = x.iter().map(RqElement::coeffs).collect();
    let best = code.codewords().map(|c| weights.raw_distance(&raw, c)).min().unwrap_or(0);
    Ok(weights.scaled(u64::from(best)))
}

/// Covering radius bound for a direct sum: `r0 + r1`.
pub fn compose_bound(r0: Rational, r1: Rational) -> Rational {
    r0 + r1
}

/// Best point found by a partial exhaustive scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanBest {
    pub raw: u32,
    pub index: u64,
}

impl ScanBest {
    /// Larger value wins; ties go to the smaller index.
    pub fn merge(a: Option<ScanBest>, b: Option<ScanBest>) -> Option<ScanBest> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => Some(if y.raw > x.raw || (y.raw == x.raw && y.index < x.index) { y } else { x }),
        }
    }
}

/// Prepared exhaustive search over `R_q^n`.
///
/// Point `i` is the vector whose base-`|R_q|` digits, most significant first,
/// are its coefficient bitmasks; scanning indices in order is lexicographic.
pub struct ExhaustiveScan<'a> {
    code: &'a CodeOverRq,
    weights: SymbolWeights,
    total: u64,
}

impl<'a> ExhaustiveScan<'a> {
    pub fn new(code: &'a CodeOverRq, weights: SymbolWeights, limits: &Limits) -> Result<Self> {
        let order = u128::from(code.ring().order());
        let total = order.checked_pow(code.length() as u32).unwrap_or(u128::MAX);
        if total > u128::from(limits.enum_limit) {
            return Err(Error::ResourceLimit {
                what: "exhaustive covering-radius scan",
                needed: total,
                limit: u128::from(limits.enum_limit),
            });
        }
        Ok(ExhaustiveScan { code, weights, total: total as u64 })
    }

    /// Number of ambient points.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn point(&self, index: u64) -> Vec<u16> {
        let order = u64::from(self.code.ring().order());
        let n = self.code.length();
        let mut out = vec![0u16; n];
        let mut m = index;
        for slot in out.iter_mut().rev() {
            *slot = (m % order) as u16;
            m /= order;
        }
        out
    }

    /// First maximiser of the distance to the code within `range`.
    pub fn scan(&self, range: Range<u64>) -> Option<ScanBest> {
        let range = range.start..range.end.min(self.total);
        if range.is_empty() {
            return None;
        }
        let order = self.code.ring().order();
        let mut x = self.point(range.start);
        let mut best: Option<ScanBest> = None;
        for index in range {
            let floor = best.map(|b| b.raw);
            if let Some(d) = self.distance_above(&x, floor) {
                best = Some(ScanBest { raw: d, index });
            }
            for slot in x.iter_mut().rev() {
                if u32::from(*slot) + 1 < order {
                    *slot += 1;
                    break;
                }
                *slot = 0;
            }
        }
        best
    }

    /// `d(x, C)` if it exceeds `floor` (always when `floor` is `None`).
    fn distance_above(&self, x: &[u16], floor: Option<u32>) -> Option<u32> {
        let table = self.weights.raw_table();
        let mut min = u32::MAX;
        for c in self.code.codewords() {
            let mut d = 0u32;
            for (&a, &b) in x.iter().zip(c) {
                d += table[usize::from(a ^ b)];
                if d >= min {
                    break;
                }
            }
            if d < min {
                min = d;
                if floor.is_some_and(|f| min <= f) {
                    return None;
                }
            }
        }
        Some(if min == u32::MAX { 0 } else { min })
    }

    pub fn finish(&self, best: Option<ScanBest>) -> CoveringRadiusResult {
        let best = best.unwrap_or(ScanBest { raw: 0, index: 0 });
        let q = self.code.ring().q();
        CoveringRadiusResult {
            metric: self.weights.metric(),
            value: self.weights.scaled(u64::from(best.raw)),
            engine: Engine::Exhaustive,
            certificate: self.point(best.index).into_iter().map(|c| RqElement::raw(q, c)).collect(),
        }
    }
}

/// Single-threaded exhaustive engine.
pub fn exhaustive(code: &CodeOverRq, weights: &SymbolWeights, limits: &Limits) -> Result<CoveringRadiusResult> {
    let scan = ExhaustiveScan::new(code, weights.clone(), limits)?;
    let best = scan.scan(0..scan.total());
    Ok(scan.finish(best))
}

/// Lee covering radius from the syndrome table of the binary Lee-Gray image.
pub fn gray_syndrome(generator: &RqMatrix, limits: &Limits) -> Result<CoveringRadiusResult> {
    let q = generator.ring().q();
    let width = 1usize << q;
    let n = generator.cols();
    let len = n * width;
    let mut gens = Vec::new();
    for i in 0..generator.rows() {
        for set in 0..(1u32 << q) {
            let mut v = BitVec::zeros(0);
            for e in generator.row(i) {
                v.push_bits(u64::from(lee_raw(mul_monomial(e.coeffs(), set))), width);
            }
            gens.push(v);
        }
    }
    let (basis, pivots) = row_reduce(&gens);
    let redundancy = len - basis.len();
    if redundancy > limits.syndrome_bits as usize || redundancy > 31 {
        return Err(Error::ResourceLimit {
            what: "syndrome table bits",
            needed: redundancy as u128,
            limit: u128::from(limits.syndrome_bits.min(31)),
        });
    }

    // The syndrome of y is y reduced by the RREF basis, read on the non-pivot positions.
    let mut slot = vec![usize::MAX; len];
    let mut next = 0;
    for (j, s) in slot.iter_mut().enumerate() {
        if !pivots.contains(&j) {
            *s = next;
            next += 1;
        }
    }
    let project = |v: &BitVec| -> u32 {
        let mut s = 0u32;
        for (j, &t) in slot.iter().enumerate() {
            if t != usize::MAX && v.get(j) {
                s |= 1 << t;
            }
        }
        s
    };
    let columns: Vec<u32> = slot
        .iter()
        .enumerate()
        .map(|(j, &t)| match pivots.iter().position(|&p| p == j) {
            Some(r) => {
                let mut v = basis[r].clone();
                v.flip(j);
                project(&v)
            }
            None => 1 << t,
        })
        .collect();

    let size = 1usize << redundancy;
    let mut depth = vec![u8::MAX; size];
    depth[0] = 0;
    let mut frontier = vec![0u32];
    let mut level = 0u8;
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for &s in &frontier {
            for &h in &columns {
                let t = (s ^ h) as usize;
                if depth[t] == u8::MAX {
                    depth[t] = level + 1;
                    fresh.push(t as u32);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        level += 1;
        frontier = fresh;
    }
    let radius = level;
    let mut s = depth.iter().position(|&d| d == radius).expect("deepest level is populated") as u32;

    let mut leader = BitVec::zeros(len);
    for d in (0..radius).rev() {
        let j = (0..len)
            .find(|&j| depth[(s ^ columns[j]) as usize] == d)
            .expect("a predecessor exists on the previous level");
        leader.flip(j);
        s ^= columns[j];
    }

    let inverse = lee_inverse(q);
    let certificate = (0..n)
        .map(|i| {
            let mut block = 0u16;
            for b in 0..width {
                if leader.get(i * width + b) {
                    block |= 1 << b;
                }
            }
            RqElement::raw(q, inverse[usize::from(block)])
        })
        .collect();
    Ok(CoveringRadiusResult {
        metric: Metric::Lee,
        value: Rational::from_integer(i128::from(radius)),
        engine: Engine::GraySyndrome,
        certificate,
    })
}

fn lee_inverse(q: u32) -> Vec<u16> {
    let size = 1usize << (1u32 << q);
    let mut inv = vec![0u16; size];
    for c in 0..size {
        inv[usize::from(lee_raw(c as u16))] = c as u16;
    }
    inv
}

/// Exact covering radius by a Pareto-frontier sweep over coordinates.
pub fn profile_dp(code: &CodeOverRq, weights: &SymbolWeights, limits: &Limits) -> Result<CoveringRadiusResult> {
    let m = code.size();
    if m > limits.profile_codewords {
        return Err(Error::ResourceLimit {
            what: "profile engine codewords",
            needed: m as u128,
            limit: limits.profile_codewords as u128,
        });
    }
    let n = code.length();
    let q = code.ring().q();
    let order = code.ring().order();

    // translate[c][i] = index of codeword_i + codeword_c
    let translate: Vec<Vec<usize>> = (0..m)
        .map(|c| {
            (0..m)
                .map(|i| {
                    let mut w = code.codeword_coeffs(i).to_vec();
                    crate::linalg::xor_slices(&mut w, code.codeword_coeffs(c));
                    code.position(&w).expect("code is closed under addition")
                })
                .collect()
        })
        .collect();

    // Each state is (profile, prefix), with profile[i] = partial distance to codeword i.
    let mut frontier: Vec<(Vec<u32>, Vec<u16>)> = vec![(vec![0; m], Vec::new())];
    for col in 0..n {
        let symbols: Vec<u16> = (0..m).map(|i| code.codeword_coeffs(i)[col]).collect();
        let mut candidates: BTreeMap<Vec<u32>, Vec<u16>> = BTreeMap::new();
        for (profile, prefix) in &frontier {
            for a in (0..order).map(|a| a as u16) {
                let p: Vec<u32> = profile.iter().zip(&symbols).map(|(&d, &s)| d + weights.raw(a ^ s)).collect();
                let mut x = prefix.clone();
                x.push(a);
                let (p, x) = canonical(&p, &x, &translate, code);
                match candidates.get(&p) {
                    Some(old) if *old <= x => {}
                    _ => {
                        candidates.insert(p, x);
                    }
                }
            }
        }
        frontier = pareto(candidates, limits.frontier_limit)?;
    }

    let mut best: Option<(u32, &Vec<u16>)> = None;
    for (profile, prefix) in &frontier {
        let v = profile.iter().copied().min().unwrap_or(0);
        let better = match best {
            None => true,
            Some((bv, bx)) => v > bv || (v == bv && prefix < bx),
        };
        if better {
            best = Some((v, prefix));
        }
    }
    let (raw, prefix) = best.expect("frontier is never empty");
    Ok(CoveringRadiusResult {
        metric: weights.metric(),
        value: weights.scaled(u64::from(raw)),
        engine: Engine::ProfileDp,
        certificate: prefix.iter().map(|&c| RqElement::raw(q, c)).collect(),
    })
}

/// Smallest translate of a state under the codeword action `x -> x + c`.
fn canonical(p: &[u32], x: &[u16], translate: &[Vec<usize>], code: &CodeOverRq) -> (Vec<u32>, Vec<u16>) {
    let mut best_p = p.to_vec();
    let mut best_c = 0usize;
    for (c, perm) in translate.iter().enumerate().skip(1) {
        let cand: Vec<u32> = perm.iter().map(|&i| p[i]).collect();
        if cand < best_p {
            best_p = cand;
            best_c = c;
        }
    }
    let mut x = x.to_vec();
    if best_c != 0 {
        let shift = &code.codeword_coeffs(best_c)[..x.len()];
        crate::linalg::xor_slices(&mut x, shift);
    }
    (best_p, x)
}

/// Drops every profile that is componentwise at most another one.
fn pareto(candidates: BTreeMap<Vec<u32>, Vec<u16>>, limit: usize) -> Result<Vec<(Vec<u32>, Vec<u16>)>> {
    let mut items: Vec<(u64, Vec<u32>, Vec<u16>)> =
        candidates.into_iter().map(|(p, x)| (p.iter().map(|&d| u64::from(d)).sum(), p, x)).collect();
    items.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let mut kept: Vec<(Vec<u32>, Vec<u16>)> = Vec::new();
    for (_, p, x) in items {
        let dominated = kept.iter().any(|(k, _)| k.iter().zip(&p).all(|(a, b)| a >= b));
        if !dominated {
            if kept.len() == limit {
                return Err(Error::ResourceLimit {
                    what: "profile engine frontier",
                    needed: limit as u128 + 1,
                    limit: limit as u128,
                });
            }
            kept.push((p, x));
        }
    }
    kept.sort();
    Ok(kept)
}

/// The first applicable engine, trying the syndrome table (Lee only), then
/// the exhaustive scan, then the profile sweep.
pub fn choose_engine(generator: &RqMatrix, metric: Metric, limits: &Limits) -> Engine {
    let q = generator.ring().q();
    let len = generator.cols() << q;
    let max_dim = (generator.rows() << q).min(len);
    if metric == Metric::Lee && len.saturating_sub(max_dim) <= limits.syndrome_bits as usize {
        return Engine::GraySyndrome;
    }
    let order = u128::from(generator.ring().order());
    match order.checked_pow(generator.cols() as u32) {
        Some(t) if t <= u128::from(limits.enum_limit) => Engine::Exhaustive,
        _ => Engine::ProfileDp,
    }
}

/// Runs one engine on the code generated by `generator`.
pub fn covering_radius(
    generator: &RqMatrix,
    metric: Metric,
    engine: Engine,
    limits: &Limits,
) -> Result<CoveringRadiusResult> {
    match engine {
        Engine::GraySyndrome => {
            if metric != Metric::Lee {
                return Err(Error::InvalidParameter("the syndrome engine computes Lee covering radii only".into()));
            }
            gray_syndrome(generator, limits)
        }
        Engine::Exhaustive => {
            let code = CodeOverRq::enumerate(generator, limits)?;
            exhaustive(&code, &SymbolWeights::new(generator.ring(), metric), limits)
        }
        Engine::ProfileDp => {
            let code = CodeOverRq::enumerate(generator, limits)?;
            profile_dp(&code, &SymbolWeights::new(generator.ring(), metric), limits)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{block_repetition_generator, repetition_generator, simplex_alpha_generator};
    use crate::ring::RingSpec;

    fn lim() -> Limits {
        Limits::default()
    }

    fn r(v: i128) -> Rational {
        Rational::from_integer(v)
    }

    fn check_all(g: &RqMatrix, metric: Metric, expect: i128) {
        let code = CodeOverRq::enumerate(g, &lim()).unwrap();
        let w = SymbolWeights::new(g.ring(), metric);
        let mut engines = vec![Engine::Exhaustive, Engine::ProfileDp];
        if metric == Metric::Lee {
            engines.push(Engine::GraySyndrome);
        }
        for e in engines {
            let res = covering_radius(g, metric, e, &lim()).unwrap();
            assert_eq!(res.value, r(expect), "{e} {metric}");
            assert_eq!(distance_to_code(&code, &w, &res.certificate).unwrap(), res.value, "{e} certificate");
        }
    }

    #[test]
    fn theta_repetition() {
        let ring = RingSpec::new(1, None).unwrap();
        for (n, lee, hom) in [(1, 1, 2), (2, 2, 4), (3, 3, 6)] {
            let g = repetition_generator(ring.theta(), n, &lim()).unwrap();
            check_all(&g, Metric::Lee, lee);
            check_all(&g, Metric::Hom, hom);
        }
        let g = repetition_generator(ring.theta(), 1, &lim()).unwrap();
        let res = covering_radius(&g, Metric::Lee, Engine::Exhaustive, &lim()).unwrap();
        assert_eq!(res.certificate, vec![ring.one()]);
        let g = repetition_generator(ring.theta(), 3, &lim()).unwrap();
        let res = covering_radius(&g, Metric::Lee, Engine::Exhaustive, &lim()).unwrap();
        let cert: Vec<u16> = res.certificate.iter().map(|e| e.coeffs()).collect();
        assert_eq!(cert, [0, 1, 2]);
    }

    #[test]
    fn unit_repetition() {
        let ring = RingSpec::new(1, None).unwrap();
        for n in [2, 3] {
            let g = repetition_generator(ring.one(), n, &lim()).unwrap();
            check_all(&g, Metric::Lee, 2);
            check_all(&g, Metric::Hom, 4);
        }
    }

    #[test]
    fn small_simplex_and_block() {
        let g = simplex_alpha_generator(1, 1, &lim()).unwrap();
        check_all(&g, Metric::Lee, 5);
        check_all(&g, Metric::Hom, 10);
        let res = covering_radius(&g, Metric::Lee, Engine::Exhaustive, &lim()).unwrap();
        let cert: Vec<u16> = res.certificate.iter().map(|e| e.coeffs()).collect();
        assert_eq!(cert, [2, 0, 1, 2]);
        let g = block_repetition_generator(1, 1, &lim()).unwrap();
        check_all(&g, Metric::Lee, 3);
        check_all(&g, Metric::Hom, 6);
    }

    #[test]
    fn whole_space_and_zero_code() {
        let ring = RingSpec::new(1, None).unwrap();
        let g = repetition_generator(ring.one(), 1, &lim()).unwrap();
        check_all(&g, Metric::Lee, 0);
        let z = RqMatrix::zeros(ring.clone(), 1, 2);
        check_all(&z, Metric::Lee, 4);
        check_all(&z, Metric::Hom, 8);
        check_all(&z, Metric::Hamming, 2);
    }

    #[test]
    fn scan_ranges_merge() {
        let ring = RingSpec::new(1, None).unwrap();
        let g = repetition_generator(ring.theta(), 3, &lim()).unwrap();
        let code = CodeOverRq::enumerate(&g, &lim()).unwrap();
        let scan = ExhaustiveScan::new(&code, SymbolWeights::new(&ring, Metric::Lee), &lim()).unwrap();
        let whole = scan.scan(0..scan.total());
        let mut merged = None;
        for s in (0..scan.total()).step_by(7) {
            merged = ScanBest::merge(merged, scan.scan(s..s + 7));
        }
        assert_eq!(merged, whole);
    }

    #[test]
    fn guards() {
        let ring = RingSpec::new(2, None).unwrap();
        let g = repetition_generator(ring.one(), 8, &lim()).unwrap();
        assert!(covering_radius(&g, Metric::Hom, Engine::Exhaustive, &lim()).unwrap_err().is_resource());
        assert!(covering_radius(&g, Metric::Hom, Engine::GraySyndrome, &lim()).is_err());
        let small = Limits { profile_codewords: 2, ..Limits::default() };
        assert!(covering_radius(&g, Metric::Lee, Engine::ProfileDp, &small).unwrap_err().is_resource());
    }

    #[test]
    fn compose() {
        assert_eq!(compose_bound(r(1), r(2)), r(3));
        assert_eq!(compose_bound(r(0), r(0)), r(0));
    }
}
