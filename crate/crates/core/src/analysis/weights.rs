use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::CodeOverRq;
use crate::ring::{hom_units, lee_raw, RingSpec, RqElement};
use crate::Rational;

/// Distance family on `R_q^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Hamming,
    Lee,
    Hom,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Hamming, Metric::Lee, Metric::Hom];

    pub fn name(&self) -> &'static str {
        match self {
            Metric::Hamming => "hamming",
            Metric::Lee => "lee",
            Metric::Hom => "hom",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hamming" | "ham" => Ok(Metric::Hamming),
            "lee" => Ok(Metric::Lee),
            "hom" | "homogeneous" => Ok(Metric::Hom),
            _ => Err(Error::Parse(alloc::format!("unknown metric {s:?}"))),
        }
    }
}

/// Per-symbol weights as small integers times a common rational scale.
///
/// Every metric here is additive over coordinates, so all distance
/// arithmetic runs on `u32` and only the final value is scaled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolWeights {
    metric: Metric,
    q: u32,
    table: Vec<u32>,
    scale: Rational,
}

impl SymbolWeights {
    /// Weights for `metric`, with the homogeneous scale taken from `ring`.
    pub fn new(ring: &RingSpec, metric: Metric) -> Self {
        let q = ring.q();
        let size = 1usize << (1u32 << q);
        let (table, scale): (Vec<u32>, Rational) = match metric {
            Metric::Hamming => ((0..size).map(|c| u32::from(c != 0)).collect(), Rational::from_integer(1)),
            Metric::Lee => ((0..size).map(|c| lee_raw(c as u16).count_ones()).collect(), Rational::from_integer(1)),
            Metric::Hom => ((0..size).map(|c| hom_units(q, c as u16)).collect(), ring.gamma()),
        };
        SymbolWeights { metric, q, table, scale }
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn scale(&self) -> Rational {
        self.scale
    }

    /// Integer weight of the symbol with coefficient bitmask `c`.
    #[inline]
    pub fn raw(&self, c: u16) -> u32 {
        self.table[usize::from(c)]
    }

    pub fn raw_table(&self) -> &[u32] {
        &self.table
    }

    /// Largest single-symbol weight, unscaled.
    pub fn raw_max(&self) -> u32 {
        self.table.iter().copied().max().unwrap_or(0)
    }

    pub fn scaled(&self, raw: u64) -> Rational {
        self.scale * Rational::from_integer(i128::from(raw))
    }

    pub fn weight(&self, x: RqElement) -> Rational {
        self.scaled(u64::from(self.raw(x.coeffs())))
    }

    pub fn raw_vector_weight(&self, v: &[u16]) -> u64 {
        v.iter().map(|&c| u64::from(self.raw(c))).sum()
    }

    /// Unscaled distance between coefficient vectors.
    #[inline]
    pub fn raw_distance(&self, a: &[u16], b: &[u16]) -> u32 {
        a.iter().zip(b).map(|(&x, &y)| self.table[usize::from(x ^ y)]).sum()
    }

    /// `n` times the largest symbol weight: no vector is farther than this from any code.
    pub fn max_distance(&self, n: usize) -> Rational {
        self.scaled(u64::from(self.raw_max()) * n as u64)
    }
}

/// Exact weight enumerator `weight -> count` for one metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub metric: Metric,
    pub counts: BTreeMap<Rational, u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, weight: Rational) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    /// Smallest nonzero weight, if the code is nonzero.
    pub fn min_nonzero(&self) -> Option<Rational> {
        self.counts.keys().copied().find(|w| *w != Rational::from_integer(0))
    }
}

impl fmt::Display for WeightDistribution {
    /// Compact JSON-style map, e.g. `{"0":1,"4":3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (w, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "\"{w}\":{c}")?;
        }
        f.write_str("}")
    }
}

pub fn weight_distribution(code: &CodeOverRq, metric: Metric) -> WeightDistribution {
    weight_distribution_with(code, &SymbolWeights::new(code.ring(), metric))
}

pub fn weight_distribution_with(code: &CodeOverRq, weights: &SymbolWeights) -> WeightDistribution {
    let mut raw: BTreeMap<u64, u64> = BTreeMap::new();
    for w in code.codewords() {
        *raw.entry(weights.raw_vector_weight(w)).or_insert(0) += 1;
    }
    WeightDistribution {
        metric: weights.metric(),
        counts: raw.into_iter().map(|(w, c)| (weights.scaled(w), c)).collect(),
    }
}

/// Codeword counts by filtration level: the minimum level over the entries,
/// so level 0 means some entry is a unit and level `q+1` is the zero word.
pub fn count_types(code: &CodeOverRq) -> BTreeMap<u32, u64> {
    let q = code.ring().q();
    let mut out = BTreeMap::new();
    for w in code.codewords() {
        let level = w.iter().map(|&c| RqElement::raw(q, c).filtration_level()).min().unwrap_or(q + 1);
        *out.entry(level).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::simplex_alpha_generator;
    use crate::Limits;
    use alloc::string::ToString;

    fn sa(q: u32, k: u32) -> CodeOverRq {
        let lim = Limits::default();
        CodeOverRq::enumerate(&simplex_alpha_generator(q, k, &lim).unwrap(), &lim).unwrap()
    }

    fn dist(pairs: &[(i128, u64)]) -> BTreeMap<Rational, u64> {
        pairs.iter().map(|&(w, c)| (Rational::from_integer(w), c)).collect()
    }

    #[test]
    fn simplex_alpha_distributions() {
        let c = sa(1, 1);
        assert_eq!(weight_distribution(&c, Metric::Hamming).counts, dist(&[(0, 1), (2, 1), (3, 2)]));
        assert_eq!(weight_distribution(&c, Metric::Lee).counts, dist(&[(0, 1), (4, 3)]));
        assert_eq!(weight_distribution(&c, Metric::Hom).counts, dist(&[(0, 1), (8, 3)]));
        assert_eq!(weight_distribution(&c, Metric::Lee).to_string(), r#"{"0":1,"4":3}"#);
    }

    #[test]
    fn lee_distribution_matches_gray_image() {
        for (q, k) in [(1, 1), (1, 2), (2, 1)] {
            let c = sa(q, k);
            let lee = weight_distribution(&c, Metric::Lee);
            let img = c.gray_image(crate::linalg::GrayMap::Lee).weight_counts();
            let img: BTreeMap<Rational, u64> =
                img.into_iter().map(|(w, n)| (Rational::from_integer(w as i128), n)).collect();
            assert_eq!(lee.counts, img);
            assert_eq!(lee.total(), c.size() as u64);
        }
    }

    #[test]
    fn types_of_small_simplex() {
        let t = count_types(&sa(1, 1));
        assert_eq!(t.into_iter().collect::<Vec<_>>(), [(0, 2), (1, 1), (2, 1)]);
        assert_eq!(count_types(&sa(1, 2)).get(&0), Some(&12));
    }

    #[test]
    fn gamma_scales_hom_weights() {
        let lim = Limits::default();
        let ring = RingSpec::new(1, Some(Rational::from_integer(1))).unwrap();
        let g = simplex_alpha_generator(1, 1, &lim).unwrap();
        let g = crate::linalg::RqMatrix::new(ring, 1, 4, g.entries().to_vec()).unwrap();
        let c = CodeOverRq::enumerate(&g, &lim).unwrap();
        assert_eq!(weight_distribution(&c, Metric::Hom).counts, dist(&[(0, 1), (4, 3)]));
    }

    #[test]
    fn metric_names() {
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
        }
    }
}
