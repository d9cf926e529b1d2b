//! Arithmetic in `R_q = F_2[u_1, ..., u_q] / (u_i^2)`.
//!
//! An element is stored as the coefficient vector over the monomial basis
//! `{u_A : A ⊆ {1..q}}`. Bit `j` of [`RqElement::coeffs`] is the coefficient of
//! the monomial whose index set has characteristic vector `j`, so bit 0 is the
//! constant term and bit `2^q - 1` is the socle monomial `θ = u_1 u_2 ⋯ u_q`.
//! Ordering elements by this bitmask gives the canonical sequence
//! `0, 1, u1, 1+u1, u2, ...` used by every builder in the crate.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::Rational;

/// Largest supported number of generators; `|R_4| = 2^16`.
pub const Q_MAX: u32 = 4;

/// `SUBSETS[a]` has bit `b` set iff `b ⊆ a` (as index sets).
const SUBSETS: [u16; 16] = subset_masks();

const fn subset_masks() -> [u16; 16] {
    let mut out = [0u16; 16];
    let mut a = 0;
    while a < 16 {
        let mut b = 0;
        while b < 16 {
            if b & a == b {
                out[a] |= 1 << b;
            }
            b += 1;
        }
        a += 1;
    }
    out
}

/// A member of the ring family together with the homogeneous-weight scale.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    q: u32,
    gamma: Rational,
}

impl RingSpec {
    /// Validates `q` and defaults `gamma` to `2^q`.
    pub fn new(q: u32, gamma: Option<Rational>) -> Result<Self> {
        if q == 0 || q > Q_MAX {
            return Err(Error::RingOutOfRange { q });
        }
        let gamma = gamma.unwrap_or_else(|| Rational::from_integer(1i128 << q));
        if gamma <= Rational::from_integer(0) {
            return Err(Error::NonPositiveGamma);
        }
        Ok(RingSpec { q, gamma })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn gamma(&self) -> Rational {
        self.gamma
    }

    /// Same ring, different homogeneous scale.
    pub fn with_gamma(&self, gamma: Rational) -> Result<Self> {
        RingSpec::new(self.q, Some(gamma))
    }

    /// Number of monomials, `2^q`.
    pub fn coeff_len(&self) -> u32 {
        1 << self.q
    }

    /// `|R_q| = 2^(2^q)`.
    pub fn order(&self) -> u32 {
        1 << self.coeff_len()
    }

    pub fn zero(&self) -> RqElement {
        RqElement::raw(self.q, 0)
    }

    pub fn one(&self) -> RqElement {
        RqElement::raw(self.q, 1)
    }

    /// The socle element `u_1 u_2 ⋯ u_q`.
    pub fn theta(&self) -> RqElement {
        RqElement::raw(self.q, theta_bits(self.q))
    }

    /// The monomial `u_A` for the index set with characteristic vector `set`.
    pub fn monomial(&self, set: u32) -> Result<RqElement> {
        if set >= self.coeff_len() {
            return Err(Error::InvalidParameter(alloc::format!(
                "monomial index {set} out of range for q = {}",
                self.q
            )));
        }
        Ok(RqElement::raw(self.q, 1 << set))
    }

    /// Builds an element from its coefficient bitmask.
    pub fn element(&self, coeffs: u32) -> Result<RqElement> {
        if coeffs >= self.order() {
            return Err(Error::InvalidParameter(alloc::format!("bitmask {coeffs} out of range for q = {}", self.q)));
        }
        Ok(RqElement::raw(self.q, coeffs as u16))
    }

    /// All elements in canonical (increasing bitmask) order.
    pub fn elements(&self) -> impl Iterator<Item = RqElement> + Clone {
        let q = self.q;
        (0..self.order()).map(move |c| RqElement::raw(q, c as u16))
    }

    pub fn units(&self) -> impl Iterator<Item = RqElement> + Clone {
        self.elements().filter(|x| x.is_unit())
    }

    pub fn zero_divisors(&self) -> impl Iterator<Item = RqElement> + Clone {
        self.elements().filter(|x| !x.is_unit())
    }

    /// Closed-form homogeneous weight: `0`, `2γ` on the socle, `γ` elsewhere.
    pub fn hom_weight_closed(&self, x: RqElement) -> Rational {
        self.gamma * Rational::from_integer(i128::from(hom_units(self.q, x.coeffs)))
    }

    /// Homogeneous weight from the generating character,
    /// `γ (1 - |U|^-1 Σ_{u ∈ U} χ(xu))`, evaluated exactly.
    pub fn hom_weight_character(&self, x: RqElement) -> Rational {
        let units = (self.order() / 2) as i128;
        let sum: i128 = self
            .units()
            .map(|u| i128::from(mul_raw(self.q, x.coeffs, u.coeffs).count_ones().is_multiple_of(2)) * 2 - 1)
            .sum();
        self.gamma * Rational::new(units - sum, units)
    }

    /// Parses decimal bitmask (`"3"`) or symbolic (`"1+u1"`) text.
    pub fn parse_element(&self, text: &str) -> Result<RqElement> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        if text.bytes().all(|b| b.is_ascii_digit()) {
            let value: u32 = text.parse().map_err(|_| Error::Parse(alloc::format!("bad bitmask {text:?}")))?;
            return self.element(value);
        }
        let mut coeffs = 0u16;
        for term in text.split('+') {
            let set = self.parse_monomial(term.trim())?;
            coeffs ^= 1 << set;
        }
        Ok(RqElement::raw(self.q, coeffs))
    }

    fn parse_monomial(&self, term: &str) -> Result<u32> {
        if term == "1" {
            return Ok(0);
        }
        let rest = term.strip_prefix('u').ok_or_else(|| Error::Parse(alloc::format!("bad term {term:?}")))?;
        let mut set = 0u32;
        for index in rest.split('u') {
            let i: u32 = index.parse().map_err(|_| Error::Parse(alloc::format!("bad term {term:?}")))?;
            if i == 0 || i > self.q || set & (1 << (i - 1)) != 0 {
                return Err(Error::Parse(alloc::format!("bad generator in {term:?} for q = {}", self.q)));
            }
            set |= 1 << (i - 1);
        }
        Ok(set)
    }
}

#[inline]
pub(crate) fn theta_bits(q: u32) -> u16 {
    1 << ((1u32 << q) - 1)
}

#[inline]
pub(crate) fn mul_raw(q: u32, x: u16, y: u16) -> u16 {
    let width = 1u32 << q;
    let mut out = 0u16;
    let mut xs = x;
    while xs != 0 {
        let a = xs.trailing_zeros();
        xs &= xs - 1;
        let mut ys = y;
        while ys != 0 {
            let b = ys.trailing_zeros();
            ys &= ys - 1;
            if a & b == 0 {
                debug_assert!((a | b) < width);
                out ^= 1 << (a | b);
            }
        }
    }
    out
}

/// `u_A · x` for a single monomial.
#[inline]
pub(crate) fn mul_monomial(x: u16, set: u32) -> u16 {
    let mut out = 0u16;
    let mut xs = x;
    while xs != 0 {
        let b = xs.trailing_zeros();
        xs &= xs - 1;
        if b & set == 0 {
            out ^= 1 << (b | set);
        }
    }
    out
}

#[inline]
pub(crate) fn lee_raw(x: u16) -> u16 {
    let mut out = 0u16;
    let mut xs = x;
    while xs != 0 {
        let a = xs.trailing_zeros();
        xs &= xs - 1;
        out ^= SUBSETS[a as usize];
    }
    out
}

/// Homogeneous weight in units of γ: 0, 1 or 2.
#[inline]
pub(crate) fn hom_units(q: u32, x: u16) -> u32 {
    if x == 0 {
        0
    } else if x == theta_bits(q) {
        2
    } else {
        1
    }
}

/// Which Gray map produced a [`GrayVector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrayKind {
    Lee,
    Hom,
}

/// Construction used for the homogeneous Gray map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HomMode {
    /// `Ψ_Lee(x) ‖ Ψ_Lee(x(1+θ))`: F_2-linear for every q, weight-exact for q ≤ 2.
    #[default]
    Linear,
    /// `Ψ_Lee(x) ‖ ¬Ψ_Lee(x)` off `{0, θ}`: exact weight profile, not linear for q ≥ 2.
    WeightExact,
}

/// Binary image of a single ring symbol. Position `j` is bit `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GrayVector {
    bits: u32,
    len: u8,
    kind: GrayKind,
}

impl GrayVector {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn kind(&self) -> GrayKind {
        self.kind
    }

    pub fn bit(&self, pos: usize) -> bool {
        pos < self.len() && self.bits >> pos & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl fmt::Display for GrayVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in 0..self.len() {
            f.write_str(if self.bit(pos) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One element of `R_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RqElement {
    q: u8,
    coeffs: u16,
}

impl RqElement {
    #[inline]
    pub(crate) fn raw(q: u32, coeffs: u16) -> Self {
        RqElement { q: q as u8, coeffs }
    }

    pub fn q(&self) -> u32 {
        u32::from(self.q)
    }

    /// Coefficient bitmask over the monomial basis.
    pub fn coeffs(&self) -> u16 {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == 0
    }

    pub fn is_theta(&self) -> bool {
        self.coeffs == theta_bits(self.q())
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs & 1 == 1
    }

    fn check_same(&self, other: &RqElement) -> Result<()> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.q(), right: other.q() })
        }
    }

    pub fn checked_add(self, other: RqElement) -> Result<RqElement> {
        self.check_same(&other)?;
        Ok(RqElement::raw(self.q(), self.coeffs ^ other.coeffs))
    }

    pub fn checked_mul(self, other: RqElement) -> Result<RqElement> {
        self.check_same(&other)?;
        Ok(RqElement::raw(self.q(), mul_raw(self.q(), self.coeffs, other.coeffs)))
    }

    /// Generating character `(-1)^{wt(c)}`.
    pub fn chi(&self) -> i32 {
        if self.coeffs.count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `Ψ_Lee`: monomial `u_A` maps to the indicator of `{B : B ⊆ A}`, extended linearly.
    pub fn lee_gray(&self) -> GrayVector {
        GrayVector { bits: u32::from(lee_raw(self.coeffs)), len: 1 << self.q, kind: GrayKind::Lee }
    }

    pub fn lee_weight(&self) -> u32 {
        lee_raw(self.coeffs).count_ones()
    }

    pub fn hom_gray(&self, mode: HomMode) -> GrayVector {
        let q = self.q();
        let half = 1u32 << q;
        let full = if half == 32 { u32::MAX } else { (1u32 << half) - 1 };
        let head = u32::from(lee_raw(self.coeffs));
        let tail = match mode {
            HomMode::Linear => {
                let shifted = mul_raw(q, self.coeffs, 1 | theta_bits(q));
                u32::from(lee_raw(shifted))
            }
            HomMode::WeightExact => {
                if self.coeffs == 0 || self.is_theta() {
                    head
                } else {
                    !head & full
                }
            }
        };
        GrayVector { bits: head | tail << half, len: (half * 2) as u8, kind: GrayKind::Hom }
    }

    /// `Γ_q`: drops every monomial containing `u_q`.
    pub fn gamma_project(&self) -> Result<RqElement> {
        let q = self.q();
        if q < 2 {
            return Err(Error::NoProjection);
        }
        let keep = (1u32 << (1u32 << (q - 1))) - 1;
        Ok(RqElement::raw(q - 1, self.coeffs & keep as u16))
    }

    /// Largest `j` with every present monomial of degree `>= j`; `q + 1` for zero.
    pub fn filtration_level(&self) -> u32 {
        if self.coeffs == 0 {
            return self.q() + 1;
        }
        let mut level = u32::MAX;
        let mut xs = self.coeffs;
        while xs != 0 {
            let a = xs.trailing_zeros();
            xs &= xs - 1;
            level = level.min(a.count_ones());
        }
        level
    }

    pub fn render_decimal(&self) -> String {
        self.coeffs.to_string()
    }

    pub fn render_symbolic(&self) -> String {
        if self.coeffs == 0 {
            return "0".into();
        }
        let mut out = String::new();
        for set in 0..(1u32 << self.q) {
            if self.coeffs >> set & 1 == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            if set == 0 {
                out.push('1');
            }
            for i in 0..self.q() {
                if set >> i & 1 == 1 {
                    out.push('u');
                    out.push_str(&(i + 1).to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for RqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_symbolic())
    }
}

/// Panics if the operands come from different rings; see [`RqElement::checked_add`].
impl Add for RqElement {
    type Output = RqElement;

    fn add(self, rhs: RqElement) -> RqElement {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

/// Panics if the operands come from different rings; see [`RqElement::checked_mul`].
impl Mul for RqElement {
    type Output = RqElement;

    fn mul(self, rhs: RqElement) -> RqElement {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn ring(q: u32) -> RingSpec {
        RingSpec::new(q, None).unwrap()
    }

    fn el(r: &RingSpec, s: &str) -> RqElement {
        r.parse_element(s).unwrap()
    }

    #[test]
    fn ring_sizes_and_guard() {
        assert_eq!(ring(1).order(), 4);
        assert_eq!(ring(2).order(), 16);
        let r1: Vec<_> = ring(1).elements().map(|x| x.render_symbolic()).collect();
        assert_eq!(r1, ["0", "1", "u1", "1+u1"]);
        assert_eq!(RingSpec::new(5, None), Err(Error::RingOutOfRange { q: 5 }));
        assert_eq!(RingSpec::new(0, None), Err(Error::RingOutOfRange { q: 0 }));
        assert_eq!(RingSpec::new(1, Some(Rational::from_integer(0))), Err(Error::NonPositiveGamma));
        assert_eq!(ring(3).gamma(), Rational::from_integer(8));
    }

    #[test]
    fn addition_examples() {
        let r = ring(1);
        assert_eq!(r.one() + r.one(), r.zero());
        assert_eq!(el(&r, "u1") + el(&r, "1+u1"), r.one());
        assert_eq!(r.theta() + r.zero(), r.theta());
        let r2 = ring(2);
        assert_eq!(r.one().checked_add(r2.one()), Err(Error::RingMismatch { left: 1, right: 2 }));
    }

    #[test]
    fn multiplication_examples() {
        let r = ring(1);
        let x = el(&r, "1+u1");
        assert_eq!(x * x, r.one());
        let r2 = ring(2);
        assert_eq!(el(&r2, "u1") * el(&r2, "u2"), el(&r2, "u1u2"));
        for a in r2.elements() {
            let expect = if a.is_unit() { r2.theta() } else { r2.zero() };
            assert_eq!(a * r2.theta(), expect);
        }
        assert!(r.one().checked_mul(r2.one()).is_err());
    }

    #[test]
    fn units() {
        let r2 = ring(2);
        assert!(r2.one().is_unit());
        assert!(!el(&r2, "u1").is_unit());
        assert!(el(&r2, "1+u1u2").is_unit());
    }

    #[test]
    fn character_values() {
        let r = ring(2);
        assert_eq!(r.zero().chi(), 1);
        for s in ["1", "u1", "u2", "u1u2"] {
            assert_eq!(el(&r, s).chi(), -1);
        }
        assert_eq!(el(&r, "1+u1").chi(), 1);
        assert_eq!(el(&r, "u1+u2").chi(), 1);
    }

    #[test]
    fn homogeneous_weight_examples() {
        let r = ring(1);
        let four = Rational::from_integer(4);
        let two = Rational::from_integer(2);
        assert_eq!(r.hom_weight_closed(r.zero()), Rational::from_integer(0));
        assert_eq!(r.hom_weight_closed(r.theta()), four);
        assert_eq!(r.hom_weight_closed(el(&r, "1+u1")), two);
        assert_eq!(r.hom_weight_character(r.zero()), Rational::from_integer(0));
        assert_eq!(r.hom_weight_character(r.theta()), four);
        assert_eq!(r.hom_weight_character(r.one()), two);
    }

    #[test]
    fn lee_gray_examples() {
        let r = ring(1);
        let img: Vec<_> = r.elements().map(|x| x.lee_gray().to_string()).collect();
        assert_eq!(img, ["00", "10", "11", "01"]);
        assert_eq!(el(&ring(2), "u1").lee_gray().to_string(), "1100");
        assert_eq!(el(&ring(2), "u1u2").lee_weight(), 4);
        assert_eq!(el(&r, "1+u1").lee_weight(), 1);
        assert_eq!(r.zero().lee_weight(), 0);
    }

    #[test]
    fn hom_gray_examples() {
        let r = ring(1);
        for mode in [HomMode::Linear, HomMode::WeightExact] {
            assert_eq!(r.zero().hom_gray(mode).to_string(), "0000");
            assert_eq!(r.theta().hom_gray(mode).to_string(), "1111");
        }
        assert_eq!(r.one().hom_gray(HomMode::Linear).to_string(), "1001");
        assert_eq!(r.one().hom_gray(HomMode::Linear).kind(), GrayKind::Hom);
    }

    #[test]
    fn projection_examples() {
        let r2 = ring(2);
        let r1 = ring(1);
        assert_eq!(el(&r2, "1+u2").gamma_project().unwrap(), r1.one());
        assert_eq!(el(&r2, "u1u2").gamma_project().unwrap(), r1.zero());
        assert_eq!(el(&r2, "1+u1").gamma_project().unwrap(), el(&r1, "1+u1"));
        assert_eq!(r1.one().gamma_project(), Err(Error::NoProjection));
    }

    #[test]
    fn filtration_examples() {
        let r2 = ring(2);
        assert_eq!(r2.zero().filtration_level(), 3);
        assert_eq!(r2.theta().filtration_level(), 2);
        assert_eq!(el(&r2, "u1+u1u2").filtration_level(), 1);
        assert_eq!(r2.one().filtration_level(), 0);
    }

    #[test]
    fn element_order_prefix() {
        let r2 = ring(2);
        let first: Vec<_> = r2.elements().take(4).map(|x| x.to_string()).collect();
        assert_eq!(first, ["0", "1", "u1", "1+u1"]);
        assert_eq!(r2.elements().count(), 16);
    }

    #[test]
    fn parse_errors() {
        let r = ring(2);
        assert!(r.parse_element("u3").is_err());
        assert!(r.parse_element("u1u1").is_err());
        assert!(r.parse_element("16").is_err());
        assert!(r.parse_element("").is_err());
        assert!(r.parse_element("v1").is_err());
    }

    #[test]
    fn render_parse_round_trip_exhaustive() {
        for q in 1..=3 {
            let r = ring(q);
            for x in r.elements() {
                assert_eq!(r.parse_element(&x.render_symbolic()).unwrap(), x);
                assert_eq!(r.parse_element(&x.render_decimal()).unwrap(), x);
            }
        }
    }
}
