//! Claim catalog and audit report.
//!
//! Every catalog entry pairs a closed-form statement with an exhaustive
//! computation and evaluates both at each parameter point inside a
//! [`Budget`]. Claims are independent, so callers may evaluate them in any
//! order or concurrently and assemble the result with
//! [`AuditReport::from_entries`], which fixes the ordering.

mod catalog;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Sub};

use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub};

use crate::error::{Error, Result};
use crate::{Limits, Rational};

pub use catalog::catalog;

/// Parameter ranges swept by the audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    pub max_q: u32,
    pub max_k: u32,
    pub max_n: usize,
    pub limits: Limits,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_q: 2, max_k: 3, max_n: 3, limits: Limits::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Agree,
    Mismatch,
    InfeasibleClaim,
    SkippedGuard,
}

impl Verdict {
    pub const ALL: [Verdict; 4] = [Verdict::Agree, Verdict::Mismatch, Verdict::InfeasibleClaim, Verdict::SkippedGuard];

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Agree => "agree",
            Verdict::Mismatch => "mismatch",
            Verdict::InfeasibleClaim => "infeasible-claim",
            Verdict::SkippedGuard => "skipped-guard",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A claimed or computed quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditValue {
    Number(Rational),
    /// Weight enumerator `weight -> count`.
    Distribution(BTreeMap<Rational, Rational>),
    Bool(bool),
    Text(String),
    Missing,
}

impl AuditValue {
    pub fn int(v: i128) -> Self {
        AuditValue::Number(Rational::from_integer(v))
    }

    /// Distribution from integer counts, dropping zero entries.
    pub fn counts<I: IntoIterator<Item = (Rational, u64)>>(pairs: I) -> Self {
        AuditValue::Distribution(
            pairs
                .into_iter()
                .filter(|&(_, c)| c > 0)
                .map(|(w, c)| (w, Rational::from_integer(i128::from(c))))
                .collect(),
        )
    }

    /// True when the value cannot be a nonnegative integer quantity.
    fn impossible(&self) -> bool {
        let bad = |r: &Rational| !r.is_integer() || *r < Rational::from_integer(0);
        match self {
            AuditValue::Number(r) => bad(r),
            AuditValue::Distribution(d) => d.iter().any(|(w, c)| bad(w) || bad(c)),
            _ => false,
        }
    }

    fn normalized(&self) -> AuditValue {
        match self {
            AuditValue::Distribution(d) => AuditValue::Distribution(
                d.iter().filter(|(_, c)| **c != Rational::from_integer(0)).map(|(w, c)| (*w, *c)).collect(),
            ),
            other => other.clone(),
        }
    }
}

impl From<Rational> for AuditValue {
    fn from(r: Rational) -> Self {
        AuditValue::Number(r)
    }
}

impl From<bool> for AuditValue {
    fn from(b: bool) -> Self {
        AuditValue::Bool(b)
    }
}

impl From<u64> for AuditValue {
    fn from(v: u64) -> Self {
        AuditValue::int(i128::from(v))
    }
}

impl From<usize> for AuditValue {
    fn from(v: usize) -> Self {
        AuditValue::int(v as i128)
    }
}

impl From<u128> for AuditValue {
    fn from(v: u128) -> Self {
        AuditValue::int(v as i128)
    }
}

impl fmt::Display for AuditValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditValue::Number(r) => write!(f, "{r}"),
            AuditValue::Distribution(d) => {
                f.write_str("{")?;
                for (i, (w, c)) in d.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "\"{w}\":{c}")?;
                }
                f.write_str("}")
            }
            AuditValue::Bool(b) => write!(f, "{b}"),
            AuditValue::Text(t) => f.write_str(t),
            AuditValue::Missing => f.write_str("null"),
        }
    }
}

/// Rational arithmetic that turns overflow into `None` instead of panicking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exact(pub(crate) Option<Rational>);

impl Exact {
    pub(crate) fn int(v: i128) -> Self {
        Exact(Some(Rational::from_integer(v)))
    }

    /// `2^e` for any integer `e`.
    pub(crate) fn p2(e: i64) -> Self {
        if e.unsigned_abs() > 125 {
            return Exact(None);
        }
        let m = 1i128 << e.unsigned_abs();
        Exact(Some(if e >= 0 { Rational::from_integer(m) } else { Rational::new(1, m) }))
    }

    /// `2^e` for an exponent that is itself rational; `None` unless integral.
    pub(crate) fn p2x(e: Exact) -> Self {
        match e.0 {
            Some(r) if r.is_integer() && r.to_integer().unsigned_abs() <= 125 => Exact::p2(r.to_integer() as i64),
            _ => Exact(None),
        }
    }
}

macro_rules! exact_op {
    ($tr:ident, $f:ident, $checked:ident) => {
        impl $tr for Exact {
            type Output = Exact;
            fn $f(self, rhs: Exact) -> Exact {
                match (self.0, rhs.0) {
                    (Some(a), Some(b)) => Exact(a.$checked(&b)),
                    _ => Exact(None),
                }
            }
        }
    };
}

exact_op!(Add, add, checked_add);
exact_op!(Sub, sub, checked_sub);
exact_op!(Mul, mul, checked_mul);
exact_op!(Div, div, checked_div);

const OVERFLOW: &str = "claimed value does not fit in 128 bits";

/// One claim evaluated at one parameter point under one normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub claim: &'static str,
    pub source: &'static str,
    pub params: Vec<(&'static str, i64)>,
    pub quantity: String,
    pub normalization: String,
    pub claimed: AuditValue,
    pub computed: AuditValue,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl AuditEntry {
    /// `q=1,k=2` style rendering of the parameter point.
    pub fn params_text(&self) -> String {
        let mut s = String::new();
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&alloc::format!("{k}={v}"));
        }
        s
    }

    fn sort_key_cmp(&self, other: &Self) -> Ordering {
        natural_cmp(self.claim, other.claim)
            .then_with(|| self.params.cmp(&other.params))
            .then_with(|| natural_cmp(&self.quantity, &other.quantity))
            .then_with(|| self.normalization.cmp(&other.normalization))
    }
}

/// How the computed value must relate to the claimed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Relation {
    Equal,
    /// The claim is an upper bound.
    AtMost,
    /// The claim is a lower bound.
    AtLeast,
}

/// Collects entries for one claim.
pub(crate) struct Sink {
    claim: &'static str,
    source: &'static str,
    entries: Vec<AuditEntry>,
}

/// An entry under construction; finished by one of the comparison methods.
pub(crate) struct Pending<'s> {
    sink: &'s mut Sink,
    params: Vec<(&'static str, i64)>,
    quantity: String,
    normalization: String,
    claimed: AuditValue,
    ceiling: Option<Rational>,
    note: Option<String>,
    overflow: bool,
}

impl Sink {
    fn new(claim: &'static str, source: &'static str) -> Self {
        Sink { claim, source, entries: Vec::new() }
    }

    pub(crate) fn at(&mut self, params: &[(&'static str, i64)], quantity: &str) -> Pending<'_> {
        Pending {
            sink: self,
            params: params.to_vec(),
            quantity: quantity.to_string(),
            normalization: "none".to_string(),
            claimed: AuditValue::Missing,
            ceiling: None,
            note: None,
            overflow: false,
        }
    }
}

impl<'s> Pending<'s> {
    pub(crate) fn norm(mut self, n: &str) -> Self {
        self.normalization = n.to_string();
        self
    }

    pub(crate) fn claim<V: Into<AuditValue>>(mut self, v: V) -> Self {
        self.claimed = v.into();
        self
    }

    pub(crate) fn claimx(mut self, x: Exact) -> Self {
        match x.0 {
            Some(r) => self.claimed = AuditValue::Number(r),
            None => {
                self.claimed = AuditValue::Text("overflow".into());
                self.overflow = true;
            }
        }
        self
    }

    /// Claimed enumerator; repeated weights add up.
    pub(crate) fn claim_dist(mut self, pairs: &[(Exact, Exact)]) -> Self {
        let mut d = BTreeMap::new();
        for &(w, c) in pairs {
            match (w.0, c.0) {
                (Some(w), Some(c)) => {
                    let slot = d.entry(w).or_insert(Rational::from_integer(0));
                    *slot += c;
                }
                _ => {
                    self.claimed = AuditValue::Text("overflow".into());
                    self.overflow = true;
                    return self;
                }
            }
        }
        self.claimed = AuditValue::Distribution(d);
        self
    }

    /// Largest value the quantity can take; a larger claim is infeasible.
    pub(crate) fn ceiling(mut self, c: Rational) -> Self {
        self.ceiling = Some(c);
        self
    }

    pub(crate) fn note(mut self, n: &str) -> Self {
        self.note = Some(n.to_string());
        self
    }

    pub(crate) fn eq<V: Into<AuditValue>>(self, computed: Result<V>) {
        self.finish(Relation::Equal, computed.map(Into::into))
    }

    pub(crate) fn le<V: Into<AuditValue>>(self, computed: Result<V>) {
        self.finish(Relation::AtMost, computed.map(Into::into))
    }

    pub(crate) fn ge<V: Into<AuditValue>>(self, computed: Result<V>) {
        self.finish(Relation::AtLeast, computed.map(Into::into))
    }

    /// Records the point without evaluating it.
    pub(crate) fn skip(mut self, why: &str) {
        self.note = Some(why.to_string());
        self.push(AuditValue::Missing, Verdict::SkippedGuard);
    }

    fn finish(mut self, relation: Relation, computed: Result<AuditValue>) {
        let over = match (&self.claimed, self.ceiling) {
            (AuditValue::Number(c), Some(max)) => *c > max,
            _ => false,
        };
        let infeasible = self.claimed.impossible() || over || (self.overflow && self.ceiling.is_some());
        if self.overflow && self.note.is_none() {
            self.note = Some(OVERFLOW.into());
        }
        if over && self.note.is_none() {
            let max = self.ceiling.expect("ceiling set");
            self.note = Some(alloc::format!("claimed value exceeds the ceiling {max}"));
        }
        let (computed, verdict) = match computed {
            Ok(v) => {
                let verdict = if infeasible {
                    Verdict::InfeasibleClaim
                } else if self.overflow {
                    Verdict::Mismatch
                } else if holds(relation, &self.claimed, &v) {
                    Verdict::Agree
                } else {
                    Verdict::Mismatch
                };
                (v, verdict)
            }
            Err(e) => {
                if self.note.is_none() {
                    self.note = Some(e.to_string());
                }
                let verdict = if infeasible { Verdict::InfeasibleClaim } else { Verdict::SkippedGuard };
                (AuditValue::Missing, verdict)
            }
        };
        self.push(computed, verdict);
    }

    fn push(self, computed: AuditValue, verdict: Verdict) {
        let entry = AuditEntry {
            claim: self.sink.claim,
            source: self.sink.source,
            params: self.params,
            quantity: self.quantity,
            normalization: self.normalization,
            claimed: self.claimed,
            computed,
            verdict,
            note: self.note,
        };
        self.sink.entries.push(entry);
    }
}

fn holds(relation: Relation, claimed: &AuditValue, computed: &AuditValue) -> bool {
    match (relation, claimed, computed) {
        (Relation::AtMost, AuditValue::Number(c), AuditValue::Number(v)) => v <= c,
        (Relation::AtLeast, AuditValue::Number(c), AuditValue::Number(v)) => v >= c,
        (Relation::Equal, c, v) => c.normalized() == v.normalized(),
        _ => false,
    }
}

/// One catalog claim.
pub struct Claim {
    pub id: &'static str,
    pub source: &'static str,
    pub summary: &'static str,
    eval: fn(&Budget, &mut Sink),
}

impl Claim {
    /// Runs the claim over the budget; a claim with no point in range yields
    /// a single skipped entry so that it still appears in the report.
    pub fn evaluate(&self, budget: &Budget) -> Vec<AuditEntry> {
        let mut sink = Sink::new(self.id, self.source);
        (self.eval)(budget, &mut sink);
        if sink.entries.is_empty() {
            sink.at(&[], "all").skip("no parameter point inside the budget");
        }
        sink.entries
    }
}

impl fmt::Debug for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Claim").field("id", &self.id).field("source", &self.source).finish()
    }
}

/// Ordered audit result.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    /// Sorts by claim id (numeric segments compared as numbers), then
    /// parameters, quantity and normalization.
    pub fn from_entries(mut entries: Vec<AuditEntry>) -> Self {
        entries.sort_by(AuditEntry::sort_key_cmp);
        AuditReport { entries }
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.entries.iter().filter(|e| e.verdict == verdict).count()
    }

    pub fn has_mismatch(&self) -> bool {
        self.count(Verdict::Mismatch) > 0
    }

    /// Entries of one claim.
    pub fn claim<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a AuditEntry> + 'a {
        self.entries.iter().filter(move |e| e.claim == id)
    }
}

/// Evaluates the whole catalog sequentially.
pub fn run_audit(budget: &Budget) -> AuditReport {
    let mut entries = Vec::new();
    for claim in catalog() {
        entries.extend(claim.evaluate(budget));
    }
    AuditReport::from_entries(entries)
}

/// Looks up a claim by id.
pub fn find_claim(id: &str) -> Result<&'static Claim> {
    catalog().iter().find(|c| c.id == id).ok_or_else(|| Error::InvalidParameter(alloc::format!("unknown claim {id:?}")))
}

/// Compares strings chunkwise, with digit runs compared by value.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let i = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let j = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let (p, q) = (trim_zeros(&x[..i]), trim_zeros(&y[..j]));
                let ord = p.len().cmp(&q.len()).then_with(|| p.cmp(q));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[i..];
                y = &y[j..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn trim_zeros(s: &[u8]) -> &[u8] {
    let z = s.iter().take_while(|&&c| c == b'0').count();
    &s[z..]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order() {
        let mut ids = ["thm-3.10", "thm-3.5-iii", "thm-3.5-i", "lem-2.3", "thm-3.5-ii", "thm-3.7"];
        ids.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(ids, ["lem-2.3", "thm-3.5-i", "thm-3.5-ii", "thm-3.5-iii", "thm-3.7", "thm-3.10"]);
    }

    #[test]
    fn verdict_rules() {
        let mut sink = Sink::new("x", "X");
        sink.at(&[], "a").claim(AuditValue::int(3)).eq(Ok(AuditValue::int(3)));
        sink.at(&[], "b").claim(AuditValue::int(3)).eq(Ok(AuditValue::int(4)));
        sink.at(&[], "c").claim(AuditValue::int(9)).ceiling(Rational::from_integer(8)).eq(Ok(AuditValue::int(4)));
        sink.at(&[], "d").claim(Rational::new(1, 2)).eq(Ok(AuditValue::int(4)));
        sink.at(&[], "e").claim(AuditValue::int(3)).le(Ok(AuditValue::int(2)));
        sink.at(&[], "f").claim(AuditValue::int(3)).ge::<AuditValue>(Err(Error::ResourceLimit {
            what: "t",
            needed: 2,
            limit: 1,
        }));
        let v: Vec<Verdict> = sink.entries.iter().map(|e| e.verdict).collect();
        assert_eq!(
            v,
            [
                Verdict::Agree,
                Verdict::Mismatch,
                Verdict::InfeasibleClaim,
                Verdict::InfeasibleClaim,
                Verdict::Agree,
                Verdict::SkippedGuard
            ]
        );
    }

    #[test]
    fn zero_counts_ignored() {
        let r = Rational::from_integer;
        let a = AuditValue::Distribution([(r(0), r(1)), (r(2), r(0))].into_iter().collect());
        let b = AuditValue::Distribution([(r(0), r(1))].into_iter().collect());
        assert!(holds(Relation::Equal, &a, &b));
        assert_eq!(b.to_string(), r#"{"0":1}"#);
    }
}
