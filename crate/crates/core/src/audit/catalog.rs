use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{AuditValue, Budget, Claim, Exact as X, Sink};
use crate::analysis::{
    count_types, exhaustive, gray_syndrome, profile_dp, weight_distribution, weight_distribution_with,
    CoveringRadiusResult, Engine, Metric, SymbolWeights,
};
use crate::bits::BinaryMatrix;
use crate::constructions::{
    binary_macdonald_alpha, binary_macdonald_beta, binary_simplex_alpha, binary_simplex_beta,
    block_repetition_generator, macdonald_alpha_generator, macdonald_beta_generator, repetition_generator,
    simplex_alpha_generator, simplex_beta_generator,
};
use crate::error::{Error, Result};
use crate::linalg::{concatenation_multiplicity, CodeOverRq, ColumnMatrix, GrayMap, RqMatrix};
use crate::ring::{HomMode, RingSpec, RqElement, Q_MAX};
use crate::Rational;

type Params = Vec<(&'static str, i64)>;

macro_rules! claims {
    ($($id:literal, $src:literal, $sum:literal => $f:ident;)*) => {
        static CATALOG: &[Claim] = &[$(Claim { id: $id, source: $src, summary: $sum, eval: $f }),*];
    };
}

claims! {
    "lem-2.1", "Lemma 2.1", "ring order and size of the maximal ideal" => lem_2_1;
    "prop-2.2", "Proposition 2.2", "unit counts and socle absorption" => prop_2_2;
    "lem-2.3", "Lemma 2.3", "parameters of the Lee-Gray image" => lem_2_3;
    "lem-2.6", "Lemma 2.6", "character sums vanish off {0, theta}" => lem_2_6;
    "thm-2.7", "Theorem 2.7", "closed form of the homogeneous weight" => thm_2_7;
    "lem-2.8", "Lemma 2.8", "parameters of the homogeneous Gray image" => lem_2_8;
    "eq-1", "Equation (1)", "Tor_empty is the residue code" => eq_1;
    "eq-2", "Equation (2)", "torsion tower and size product" => eq_2;
    "prop-2.12", "Proposition 2.12", "Lee covering radius equals that of the Gray image" => prop_2_12;
    "prop-2.13", "Proposition 2.13", "covering radius composition bounds" => prop_2_13;
    "alpha-params", "Section 3", "length, 2-dimension and columns of G^alpha" => alpha_params;
    "rem-3.2", "Remark 3.2", "weights of the rows of G^alpha" => rem_3_2;
    "lem-3.3", "Lemma 3.3", "codewords with a unit coordinate are balanced" => lem_3_3;
    "lem-3.4", "Lemma 3.4", "number of codewords of each type" => lem_3_4;
    "thm-3.5-i", "Theorem 3.5(i)", "Hamming distribution of S^alpha" => thm_3_5_i;
    "thm-3.5-ii", "Theorem 3.5(ii)", "Lee distribution of S^alpha" => thm_3_5_ii;
    "thm-3.5-iii", "Theorem 3.5(iii)", "homogeneous distribution of S^alpha" => thm_3_5_iii;
    "lem-3.6", "Lemma 3.6", "torsion code of S^alpha" => lem_3_6;
    "thm-3.7", "Theorem 3.7", "projection of S^alpha" => thm_3_7;
    "thm-3.8", "Theorem 3.8", "iterated projection of S^alpha" => thm_3_8;
    "thm-3.10", "Theorem 3.10", "Lee-Gray image of S^alpha" => thm_3_10;
    "thm-3.11", "Theorem 3.11", "homogeneous Gray image of S^alpha" => thm_3_11;
    "beta-params", "Section 4", "length and 2-dimension of G^beta" => beta_params;
    "prop-4.2-i", "Proposition 4.2(i)", "symbol multiplicities in the rows of G^beta" => prop_4_2_i;
    "prop-4.2-ii", "Proposition 4.2(ii)", "Hamming weight of the rows of G^beta" => prop_4_2_ii;
    "prop-4.2-lee", "Proposition 4.2 (unnumbered item)", "Lee weight of the first row of G^beta" => prop_4_2_lee;
    "prop-4.2-iii", "Proposition 4.2(iii)", "homogeneous weight of the rows of G^beta" => prop_4_2_iii;
    "prop-4.3", "Proposition 4.3", "codewords of S^beta with a unit coordinate" => prop_4_3;
    "lem-4.4", "Lemma 4.4", "torsion code of S^beta" => lem_4_4;
    "thm-4.5-i", "Theorem 4.5(i)", "Hamming distribution of S^beta" => thm_4_5_i;
    "thm-4.5-ii", "Theorem 4.5(ii)", "homogeneous distribution of S^beta" => thm_4_5_ii;
    "thm-4.6", "Theorem 4.6", "projection of S^beta" => thm_4_6;
    "thm-4.7", "Theorem 4.7", "iterated projection of S^beta" => thm_4_7;
    "thm-4.8", "Theorem 4.8", "Lee-Gray image of S^beta" => thm_4_8;
    "thm-4.9", "Theorem 4.9", "homogeneous Gray image of S^beta" => thm_4_9;
    "macdonald-params", "Section 5", "length and 2-dimension of the MacDonald codes" => macdonald_params;
    "thm-5.1", "Theorem 5.1", "projection of the MacDonald codes" => thm_5_1;
    "thm-5.2", "Theorem 5.2", "iterated projection of the MacDonald codes" => thm_5_2;
    "thm-5.3", "Theorem 5.3", "torsion code of M^alpha" => thm_5_3;
    "thm-5.4-i", "Theorem 5.4(i)", "Hamming distribution of M^alpha" => thm_5_4_i;
    "thm-5.4-ii", "Theorem 5.4(ii)", "Lee distribution of M^alpha" => thm_5_4_ii;
    "thm-5.4-iii", "Theorem 5.4(iii)", "homogeneous distribution of M^alpha" => thm_5_4_iii;
    "thm-5.5", "Theorem 5.5", "torsion code of M^beta" => thm_5_5;
    "thm-5.6", "Theorem 5.6", "Lee-Gray image of M^alpha" => thm_5_6;
    "thm-5.7", "Theorem 5.7", "homogeneous Gray image of M^alpha" => thm_5_7;
    "thm-5.8", "Theorem 5.8", "Lee-Gray image of M^beta" => thm_5_8;
    "thm-5.9", "Theorem 5.9", "homogeneous Gray image of M^beta" => thm_5_9;
    "thm-6.1-i", "Theorem 6.1(i)", "covering radius of C_c" => thm_6_1_i;
    "thm-6.1-ii", "Theorem 6.1(ii)", "covering radius of C_theta" => thm_6_1_ii;
    "thm-6.2", "Theorem 6.2", "covering radius of the block repetition code" => thm_6_2;
    "thm-7.1-i", "Theorem 7.1(i)", "homogeneous covering radius of S^alpha" => thm_7_1_i;
    "thm-7.1-ii", "Theorem 7.1(ii)", "Lee covering radius of S^alpha" => thm_7_1_ii;
    "thm-7.2-i", "Theorem 7.2(i)", "homogeneous covering radius of S^beta" => thm_7_2_i;
    "thm-7.2-ii", "Theorem 7.2(ii)", "Lee covering radius of S^beta" => thm_7_2_ii;
    "thm-7.3-i", "Theorem 7.3(i)", "homogeneous covering radius bound for M^alpha" => thm_7_3_i;
    "thm-7.3-ii", "Theorem 7.3(ii)", "Lee covering radius of M^alpha" => thm_7_3_ii;
    "thm-7.4-i", "Theorem 7.4(i)", "homogeneous covering radius bound for M^beta" => thm_7_4_i;
    "thm-7.4-ii", "Theorem 7.4(ii)", "Lee covering radius of M^beta" => thm_7_4_ii;
}

/// Every claim, in catalog order.
pub fn catalog() -> &'static [Claim] {
    CATALOG
}

// ---------------------------------------------------------------------------
// Points, constructions and oracles

fn r(v: i128) -> Rational {
    Rational::from_integer(v)
}

fn n(v: i128) -> X {
    X::int(v)
}

fn p2(e: i64) -> X {
    X::p2(e)
}

/// `2^q` as a signed exponent.
fn sq(q: u32) -> i64 {
    1i64 << q
}

fn ring(q: u32) -> RingSpec {
    RingSpec::new(q, None).expect("q inside the audited range")
}

fn qs(b: &Budget, lo: u32) -> impl Iterator<Item = u32> {
    lo..=b.max_q.min(Q_MAX)
}

fn qk(b: &Budget, qlo: u32, klo: u32) -> Vec<(u32, u32)> {
    qs(b, qlo).flat_map(|q| (klo..=b.max_k).map(move |k| (q, k))).collect()
}

fn qku(b: &Budget, qlo: u32) -> Vec<(u32, u32, u32)> {
    qk(b, qlo, 2).into_iter().flat_map(|(q, k)| (1..k).map(move |u| (q, k, u))).collect()
}

fn pqk(q: u32, k: u32) -> Params {
    vec![("q", i64::from(q)), ("k", i64::from(k))]
}

fn pqku(q: u32, k: u32, u: u32) -> Params {
    vec![("q", i64::from(q)), ("k", i64::from(k)), ("u", i64::from(u))]
}

/// Homogeneous-weight scales audited for `R_q`.
fn gammas(q: u32) -> Vec<(&'static str, Rational)> {
    let mut v = vec![("gamma=2^q", r(1 << q)), ("gamma=2^(q-1)", r(1 << (q - 1)))];
    if q >= 2 {
        v.push(("gamma=1", r(1)));
    }
    v
}

const MODES: [(&str, HomMode); 2] =
    [("hom-mode=linear", HomMode::Linear), ("hom-mode=weight-exact", HomMode::WeightExact)];

fn alpha(q: u32, k: u32, b: &Budget) -> Result<RqMatrix> {
    simplex_alpha_generator(q, k, &b.limits)
}

fn beta(q: u32, k: u32, b: &Budget) -> Result<RqMatrix> {
    simplex_beta_generator(q, k, &b.limits)
}

fn mac_alpha(q: u32, k: u32, u: u32, b: &Budget) -> Result<RqMatrix> {
    macdonald_alpha_generator(q, k, u, &b.limits)
}

fn mac_beta(q: u32, k: u32, u: u32, b: &Budget) -> Result<RqMatrix> {
    macdonald_beta_generator(q, k, u, &b.limits)
}

fn code(g: &Result<RqMatrix>, b: &Budget) -> Result<CodeOverRq> {
    g.as_ref().map_err(Clone::clone).and_then(|g| CodeOverRq::enumerate(g, &b.limits))
}

fn with<T, V, F: FnOnce(&T) -> Result<V>>(x: &Result<T>, f: F) -> Result<V> {
    match x {
        Ok(v) => f(v),
        Err(e) => Err(e.clone()),
    }
}

fn dist(code: &CodeOverRq, metric: Metric) -> AuditValue {
    AuditValue::counts(weight_distribution(code, metric).counts)
}

fn hom_dist(code: &CodeOverRq, gamma: Rational) -> Result<AuditValue> {
    let ring = code.ring().with_gamma(gamma)?;
    let d = weight_distribution_with(code, &SymbolWeights::new(&ring, Metric::Hom));
    Ok(AuditValue::counts(d.counts))
}

/// Multiplicity of `block` in `m`, or a marker when `m` is not a concatenation of it.
fn copies<M: ColumnMatrix>(m: &M, block: &M) -> AuditValue {
    match concatenation_multiplicity(m, block) {
        Some(c) => AuditValue::from(c),
        None => AuditValue::Text("not a concatenation".into()),
    }
}

fn project_to(g: &RqMatrix, q: u32) -> Result<RqMatrix> {
    let mut m = g.clone();
    while m.ring().q() > q {
        m = m.project()?;
    }
    Ok(m)
}

/// Codeword counts of a single number across rows: the value if uniform.
fn uniform(values: &[i128]) -> AuditValue {
    match values.first() {
        Some(&v) if values.iter().all(|&w| w == v) => AuditValue::int(v),
        Some(_) => {
            let parts: Vec<String> = values.iter().map(|v| format!("{v}")).collect();
            AuditValue::Text(format!("varies: {}", parts.join("/")))
        }
        None => AuditValue::Missing,
    }
}

fn row_weight(row: &[RqElement], metric: Metric) -> i128 {
    let ring = ring(row.first().map_or(1, |e| e.q()));
    let w = SymbolWeights::new(&ring.with_gamma(r(1)).expect("positive"), metric);
    w.raw_vector_weight(&row.iter().map(|e| e.coeffs()).collect::<Vec<_>>()) as i128
}

fn scale_row(row: &[RqElement], s: RqElement) -> Vec<RqElement> {
    row.iter().map(|&e| e * s).collect()
}

/// Upper bound on any distance in `R_q^n` for the metric.
fn ceiling(q: u32, len: usize, metric: Metric, gamma: Rational) -> Rational {
    let per = match metric {
        Metric::Hamming => r(1),
        Metric::Lee => r(1 << q),
        Metric::Hom => gamma * r(2),
    };
    per * r(len as i128)
}

const EXHAUSTIVE_EASY: u128 = 1 << 22;
const EXHAUSTIVE_MAX: u128 = 1 << 28;

/// Covering radius with the homogeneous metric taken at `gamma = 1`.
///
/// The syndrome table is tried first for Lee, then a cheap exhaustive scan,
/// then the profile sweep, then a longer exhaustive scan.
fn radius(g: &RqMatrix, metric: Metric, b: &Budget) -> Result<CoveringRadiusResult> {
    if metric == Metric::Lee {
        match gray_syndrome(g, &b.limits) {
            Err(e) if e.is_resource() => {}
            other => return other,
        }
    }
    let ring = g.ring().with_gamma(r(1))?;
    let g = RqMatrix::new(ring, g.rows(), g.cols(), g.entries().to_vec())?;
    let code = CodeOverRq::enumerate(&g, &b.limits)?;
    let weights = SymbolWeights::new(code.ring(), metric);
    let work = u128::from(code.ring().order())
        .checked_pow(code.length() as u32)
        .and_then(|p| p.checked_mul(code.size() as u128))
        .unwrap_or(u128::MAX);
    if work <= EXHAUSTIVE_EASY {
        return exhaustive(&code, &weights, &b.limits);
    }
    match profile_dp(&code, &weights, &b.limits) {
        Err(e) if e.is_resource() => {}
        other => return other,
    }
    if work <= EXHAUSTIVE_MAX {
        return exhaustive(&code, &weights, &b.limits);
    }
    Err(Error::ResourceLimit { what: "audit covering-radius search", needed: work, limit: EXHAUSTIVE_MAX })
}

fn radius_value(g: &RqMatrix, metric: Metric, b: &Budget) -> Result<(Rational, Engine)> {
    radius(g, metric, b).map(|res| (res.value, res.engine))
}

/// Records a covering-radius claim under Lee or every homogeneous scale.
fn radius_claims(sink: &mut Sink, p: &Params, q: u32, g: &Result<RqMatrix>, metric: Metric, claimed: X, b: &Budget) {
    let value = with(g, |g| radius_value(g, metric, b));
    let len = g.as_ref().map(|g| g.cols()).unwrap_or(0);
    let engine_note = |v: &Result<(Rational, Engine)>| v.as_ref().ok().map(|(_, e)| format!("engine {e}"));
    match metric {
        Metric::Hom => {
            for (label, gamma) in gammas(q) {
                let mut e = sink.at(p, "r_hom").norm(label).claimx(claimed).ceiling(ceiling(q, len, metric, gamma));
                if let Some(note) = engine_note(&value) {
                    e = e.note(&note);
                }
                e.eq(value.clone().map(|(v, _)| v * gamma));
            }
        }
        _ => {
            let mut e = sink.at(p, "r_Lee").norm("lee").claimx(claimed).ceiling(ceiling(q, len, metric, r(1)));
            if let Some(note) = engine_note(&value) {
                e = e.note(&note);
            }
            e.eq(value.map(|(v, _)| v));
        }
    }
}

// ---------------------------------------------------------------------------
// Section 2

fn lem_2_1(b: &Budget, s: &mut Sink) {
    for q in qs(b, 1) {
        let ring = ring(q);
        let p = vec![("q", i64::from(q))];
        s.at(&p, "|R_q|").claimx(p2(sq(q))).eq(Ok(ring.elements().count()));
        s.at(&p, "|m_q|").claimx(p2(sq(q)) / n(2)).eq(Ok(ring.zero_divisors().count()));
    }
}

fn prop_2_2(b: &Budget, s: &mut Sink) {
    for q in qs(b, 1) {
        let ring = ring(q);
        let p = vec![("q", i64::from(q))];
        let theta = ring.theta();
        s.at(&p, "units").claimx(p2(sq(q) - 1)).eq(Ok(ring.units().count()));
        s.at(&p, "zero divisors").claimx(p2(sq(q) - 1)).eq(Ok(ring.zero_divisors().count()));
        let shifted: Vec<RqElement> = ring.zero_divisors().map(|d| d + ring.one()).collect();
        let mut units: Vec<RqElement> = ring.units().collect();
        let mut shifted = shifted;
        units.sort();
        shifted.sort();
        s.at(&p, "units = zero divisors + 1").claim(true).eq(Ok(units == shifted));
        let absorb = ring.elements().all(|a| a * theta == if a.is_unit() { theta } else { ring.zero() });
        s.at(&p, "(i) a*theta").claim(true).eq(Ok(absorb));
        if q <= 3 {
            let ok = ring.units().all(|a| ring.elements().all(|x| (a * x == theta) == (x == theta)));
            s.at(&p, "(ii) a*x = theta iff x = theta").claim(true).eq(Ok(ok));
        } else {
            s.at(&p, "(ii) a*x = theta iff x = theta").claim(true).skip("pair scan limited to q <= 3");
        }
    }
}

fn lem_2_3(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let p = pqk(q, k);
        let c = code(&alpha(q, k, b), b);
        let img = with(&c, |c| Ok(c.gray_image(GrayMap::Lee)));
        let len = c.as_ref().map(|c| c.length() as i128).unwrap_or(0);
        s.at(&p, "length").claimx(p2(sq(q)) * n(len)).eq(with(&img, |i| Ok(i.len())));
        s.at(&p, "linear").claim(true).eq(with(&img, |i| Ok(i.is_linear())));
        let dim = c.as_ref().map(|c| c.two_dimension() as i128).unwrap_or(0);
        s.at(&p, "dimension").claimx(n(dim)).eq(with(&img, |i| Ok(i.rank())));
        let dmin = with(&c, |c| Ok(weight_distribution(c, Metric::Lee).min_nonzero().unwrap_or(r(0))));
        let e = s.at(&p, "minimum distance");
        match dmin {
            Ok(d) => e.claim(d).eq(with(&img, |i| Ok(i.min_nonzero_weight().unwrap_or(0)))),
            Err(err) => e.skip(&format!("{err}")),
        }
    }
}

fn lem_2_6(b: &Budget, s: &mut Sink) {
    for q in qs(b, 1) {
        let p = vec![("q", i64::from(q))];
        let e = s.at(&p, "sum of chi(a*x) over a is 0").claim(true);
        if q > 3 {
            e.skip("pair scan limited to q <= 3");
            continue;
        }
        let ring = ring(q);
        let ok = ring
            .elements()
            .filter(|x| !x.is_zero() && !x.is_theta())
            .all(|x| ring.elements().map(|a| (a * x).chi()).sum::<i32>() == 0);
        e.eq(Ok(ok));
    }
}

fn thm_2_7(b: &Budget, s: &mut Sink) {
    for q in qs(b, 1) {
        let p = vec![("q", i64::from(q))];
        for (label, gamma) in gammas(q) {
            let ring = ring(q).with_gamma(gamma).expect("positive");
            let e = s.at(&p, "closed form = character formula").norm(label).claim(true);
            if q > 3 {
                e.skip("unit sum limited to q <= 3");
            } else {
                let ok = ring.elements().all(|x| ring.hom_weight_closed(x) == ring.hom_weight_character(x));
                e.eq(Ok(ok));
            }
            s.at(&p, "w_hom(theta)")
                .norm(label)
                .claimx(p2(i64::from(q) + 1))
                .eq(Ok(ring.hom_weight_closed(ring.theta())));
            s.at(&p, "w_hom(1)").norm(label).claimx(p2(i64::from(q))).eq(Ok(ring.hom_weight_closed(ring.one())));
        }
    }
}

fn lem_2_8(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let p = pqk(q, k);
        let c = code(&alpha(q, k, b), b);
        let len = c.as_ref().map(|c| c.length() as i128).unwrap_or(0);
        let dim = c.as_ref().map(|c| c.two_dimension() as i128).unwrap_or(0);
        let dmin = with(&c, |c| Ok(weight_distribution(c, Metric::Hom).min_nonzero().unwrap_or(r(0))));
        for (label, mode) in MODES {
            let img = with(&c, |c| Ok(c.gray_image(GrayMap::Hom(mode))));
            s.at(&p, "length").norm(label).claimx(p2(sq(q + 1)) * n(len)).eq(with(&img, |i| Ok(i.len())));
            s.at(&p, "linear").norm(label).claim(true).eq(with(&img, |i| Ok(i.is_linear())));
            s.at(&p, "dimension").norm(label).claimx(n(dim)).eq(with(&img, |i| Ok(i.rank())));
            let e = s.at(&p, "minimum distance").norm(label);
            match &dmin {
                Ok(d) => e.claim(*d).eq(with(&img, |i| Ok(i.min_nonzero_weight().unwrap_or(0)))),
                Err(err) => e.skip(&format!("{err}")),
            }
        }
    }
}

/// Simplex codes of both types at every budget point, labelled by family.
fn simplex_codes(b: &Budget) -> Vec<(&'static str, u32, u32, Result<RqMatrix>)> {
    let mut v = Vec::new();
    for (q, k) in qk(b, 1, 1) {
        v.push(("S^alpha", q, k, alpha(q, k, b)));
        if k >= 2 {
            v.push(("S^beta", q, k, beta(q, k, b)));
        }
    }
    v
}

fn eq_1(b: &Budget, s: &mut Sink) {
    for (fam, q, k, g) in simplex_codes(b) {
        let c = code(&g, b);
        s.at(&pqk(q, k), &format!("{fam}: Tor_empty = Res"))
            .claim(true)
            .eq(with(&c, |c| Ok(c.torsion_code(0)? == c.residue_code())));
    }
}

/// Index sets `{}, {1}, {1,2}, ..., {1..q}` as bitmasks.
fn chain(q: u32) -> Vec<u32> {
    (0..=q).map(|i| (1u32 << i) - 1).collect()
}

fn eq_2(b: &Budget, s: &mut Sink) {
    for (fam, q, k, g) in simplex_codes(b) {
        let p = pqk(q, k);
        let c = code(&g, b);
        for residue in [false, true] {
            let tor = if residue { "tor-empty=residue" } else { "tor-empty=literal" };
            let get = |c: &CodeOverRq, set: u32| -> Result<crate::bits::BinaryCode> {
                if set == 0 && residue {
                    Ok(c.residue_code())
                } else {
                    c.torsion_code(set)
                }
            };
            let tower = with(&c, |c| {
                let sets = chain(q);
                let codes = sets.iter().map(|&a| get(c, a)).collect::<Result<Vec<_>>>()?;
                Ok(codes.windows(2).all(|w| w[0].is_subset_of(&w[1])))
            });
            s.at(&p, &format!("{fam}: tower")).norm(tor).claim(true).eq(tower);
            for (factors, sets) in [("chain", chain(q)), ("all-subsets", (0..1u32 << q).collect())] {
                let size = c.as_ref().map(|c| c.size() as i128).unwrap_or(0);
                let product = with(&c, |c| {
                    let mut prod = n(1);
                    for &a in &sets {
                        prod = prod * n(get(c, a)?.size() as i128);
                    }
                    prod.0.map(AuditValue::Number).ok_or(Error::ResourceLimit {
                        what: "torsion size product",
                        needed: 0,
                        limit: 0,
                    })
                });
                s.at(&p, &format!("{fam}: |C| = product of |Tor_A|"))
                    .norm(&format!("{tor}, factors={factors}"))
                    .claimx(n(size))
                    .eq(product);
            }
        }
    }
}

fn repetition(q: u32, c: u16, len: usize, b: &Budget) -> Result<RqMatrix> {
    repetition_generator(ring(q).element(u32::from(c))?, len, &b.limits)
}

fn prop_2_12(b: &Budget, s: &mut Sink) {
    let mut cases: Vec<(String, Params, Result<RqMatrix>)> = Vec::new();
    for q in qs(b, 1).take(2) {
        let theta = ring(q).theta().coeffs();
        for len in 1..=b.max_n {
            let p = vec![("q", i64::from(q)), ("n", len as i64)];
            cases.push(("C_theta".into(), p.clone(), repetition(q, theta, len, b)));
            cases.push(("C_1".into(), p, repetition(q, 1, len, b)));
        }
        let p = vec![("q", i64::from(q)), ("n", 1)];
        cases.push(("block repetition".into(), p, block_repetition_generator(q, 1, &b.limits)));
    }
    if b.max_k >= 1 {
        cases.push(("S^alpha(1,1)".into(), pqk(1, 1), alpha(1, 1, b)));
    }
    for (label, p, g) in cases {
        let image = with(&g, |g| gray_syndrome(g, &b.limits));
        let direct = with(&g, |g| {
            let c = CodeOverRq::enumerate(g, &b.limits)?;
            exhaustive(&c, &SymbolWeights::new(c.ring(), Metric::Lee), &b.limits)
        });
        let e = s.at(&p, &format!("{label}: r_Ham(Gray image) vs r_Lee")).norm("lee");
        match image {
            Ok(img) => e.claim(img.value).eq(direct.map(|d| d.value)),
            Err(err) => e.skip(&format!("{err}")),
        }
    }
}

fn prop_2_13(b: &Budget, s: &mut Sink) {
    for q in qs(b, 1).take(2) {
        let rg = ring(q);
        let one = rg.one();
        let theta = rg.theta();
        for a in 1..=b.max_n.min(2) {
            for bb in 1..=b.max_n.min(2) {
                let p = vec![("q", i64::from(q)), ("a", a as i64), ("b", bb as i64)];
                let g0 = repetition(q, one.coeffs(), a, b);
                let g1 = repetition(q, theta.coeffs(), bb, b);
                let mut concat = vec![one; a];
                concat.extend(vec![theta; bb]);
                let gc = RqMatrix::from_rows(rg.clone(), vec![concat]);
                let mut top = vec![rg.zero(); a];
                top.extend(vec![theta; bb]);
                let mut bottom = vec![one; a];
                bottom.extend(vec![one; bb]);
                let gs = RqMatrix::from_rows(rg.clone(), vec![top, bottom]);
                for (metric, label, gamma) in [(Metric::Lee, "lee", r(1)), (Metric::Hom, "gamma=2^q", r(1 << q))] {
                    let r0 = with(&g0, |g| radius_value(g, metric, b));
                    let r1 = with(&g1, |g| radius_value(g, metric, b));
                    let bound = match (&r0, &r1) {
                        (Ok((x, _)), Ok((y, _))) => Ok((*x + *y) * gamma),
                        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                    };
                    let rc = with(&gc, |g| radius_value(g, metric, b)).map(|(v, _)| v * gamma);
                    let rs = with(&gs, |g| radius_value(g, metric, b)).map(|(v, _)| v * gamma);
                    let e = s.at(&p, "concatenation (1^a | theta^b) lower bound").norm(label);
                    match &bound {
                        Ok(v) => e.claim(*v).ge(rc),
                        Err(err) => e.skip(&format!("{err}")),
                    }
                    let e = s.at(&p, "stacked [0 theta^b; 1^a 1^b] upper bound").norm(label);
                    match &bound {
                        Ok(v) => e.claim(*v).le(rs),
                        Err(err) => e.skip(&format!("{err}")),
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Section 3

fn alpha_params(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let p = pqk(q, k);
        let g = alpha(q, k, b);
        let kk = i64::from(k);
        s.at(&p, "length").claimx(p2(sq(q) * kk)).eq(with(&g, |g| Ok(g.cols())));
        s.at(&p, "2-dimension")
            .claimx(p2(i64::from(q)) * n(i128::from(k)))
            .eq(with(&code(&g, b), |c| Ok(c.two_dimension() as u64)));
        s.at(&p, "columns are all k-tuples once").claim(true).eq(with(&g, |g| {
            let keys = g.sorted_column_keys();
            let distinct = keys.windows(2).all(|w| w[0] != w[1]);
            let total = u128::from(g.ring().order()).checked_pow(k);
            Ok(distinct && total == Some(keys.len() as u128))
        }));
        s.at(&p, "each element appears 2^(2^q(k-1)) times per row").claim(true).eq(with(&g, |g| {
            let want = 1usize << ((1usize << q) * (k as usize - 1));
            Ok((0..g.rows()).all(|i| {
                let mut counts = vec![0usize; g.ring().order() as usize];
                for e in g.row(i) {
                    counts[usize::from(e.coeffs())] += 1;
                }
                counts.iter().all(|&c| c == want)
            }))
        }));
    }
}

fn rem_3_2(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let p = pqk(q, k);
        let g = alpha(q, k, b);
        let rg = ring(q);
        let kk = i64::from(k);
        let ham = |scalar: RqElement| {
            with(&g, |g| {
                let v: Vec<i128> =
                    (0..g.rows()).map(|i| row_weight(&scale_row(g.row(i), scalar), Metric::Hamming)).collect();
                Ok(uniform(&v))
            })
        };
        let e = s.at(&p, "w_Ham(l_i)");
        if q == 1 {
            e.claimx(n(3) * p2(2 * kk - 2)).eq(ham(rg.one()));
        } else {
            e.skip("product expression is ambiguous for q >= 2");
        }
        let e = s.at(&p, "w_Ham(u_j l_i)");
        if q == 1 {
            e.claimx(n(3) * p2(2 * kk - 1)).eq(ham(rg.monomial(1).expect("in range")));
        } else {
            e.skip("product expression is ambiguous for q >= 2");
        }
        s.at(&p, "w_Ham(theta l_i)").claimx(p2(sq(q) * kk - 1)).eq(ham(rg.theta()));
        for set in 0..(1u32 << q) {
            let m = rg.monomial(set).expect("in range");
            let name = m.render_symbolic();
            let weights = |metric: Metric| {
                with(&g, |g| {
                    let v: Vec<i128> = (0..g.rows()).map(|i| row_weight(&scale_row(g.row(i), m), metric)).collect();
                    Ok(v)
                })
            };
            s.at(&p, &format!("w_Lee(u_A l_i), u_A={name}"))
                .claimx(p2(sq(q) * kk + i64::from(q) - 1))
                .eq(weights(Metric::Lee).map(|v| uniform(&v)));
            let raw = weights(Metric::Hom);
            for (label, gamma) in gammas(q) {
                s.at(&p, &format!("w_hom(u_A l_i), u_A={name}")).norm(label).claimx(p2(sq(q) * kk)).eq(raw
                    .clone()
                    .map(|v| {
                        let scaled: Vec<Rational> = v.iter().map(|&x| r(x) * gamma).collect();
                        if scaled.iter().all(|x| *x == scaled[0]) {
                            AuditValue::Number(scaled[0])
                        } else {
                            AuditValue::Text("varies by row".into())
                        }
                    }));
            }
        }
    }
}

/// Symbol counts of one coefficient vector.
fn symbol_counts(w: &[u16], order: usize) -> Vec<usize> {
    let mut counts = vec![0usize; order];
    for &c in w {
        counts[usize::from(c)] += 1;
    }
    counts
}

fn lem_3_3(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let c = code(&alpha(q, k, b), b);
        s.at(&pqk(q, k), "unit coordinate implies each element 2^(2^q(k-1)) times").claim(true).eq(with(&c, |c| {
            let order = c.ring().order() as usize;
            let want = 1usize << ((1usize << q) * (k as usize - 1));
            Ok(c.codewords()
                .all(|w| !w.iter().any(|&x| x & 1 == 1) || symbol_counts(w, order).iter().all(|&n| n == want)))
        }));
    }
}

fn lem_3_4(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let p = pqk(q, k);
        let types = with(&code(&alpha(q, k, b), b), |c| Ok(count_types(c)));
        let kk = i64::from(k);
        for m in 0..=q {
            let mm = i64::from(m);
            let level = q + 1 - m;
            s.at(&p, &format!("type m={m}"))
                .norm("type m = filtration level q+1-m")
                .claimx(p2((mm - 1) * kk) * (p2(kk) - n(1)))
                .eq(types.clone().map(|t| t.get(&level).copied().unwrap_or(0)));
        }
    }
}

fn thm_3_5_i(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let c = code(&alpha(q, k, b), b);
        let kk = i64::from(k);
        let mut pairs = vec![(n(0), n(1))];
        for m in 0..=i64::from(q) {
            pairs.push((p2(sq(q) * kk - m) * (p2(m) - n(1)), p2((m - 1) * kk) * (p2(m) - n(1))));
        }
        s.at(&pqk(q, k), "A_Ham").claim_dist(&pairs).eq(with(&c, |c| Ok(dist(c, Metric::Hamming))));
    }
}

fn thm_3_5_ii(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let c = code(&alpha(q, k, b), b);
        let e = sq(q) * i64::from(k);
        s.at(&pqk(q, k), "A_Lee")
            .norm("lee")
            .claim_dist(&[(n(0), n(1)), (p2(e + i64::from(q) - 1), p2(e) - n(1))])
            .eq(with(&c, |c| Ok(dist(c, Metric::Lee))));
    }
}

fn thm_3_5_iii(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let c = code(&alpha(q, k, b), b);
        let e = sq(q) * i64::from(k);
        for (label, gamma) in gammas(q) {
            s.at(&pqk(q, k), "A_hom")
                .norm(label)
                .claim_dist(&[(n(0), n(1)), (p2(e), p2(e) - n(1))])
                .eq(with(&c, |c| hom_dist(c, gamma)));
        }
    }
}

fn full_set(q: u32) -> u32 {
    (1u32 << q) - 1
}

#[allow(clippy::too_many_arguments)]
fn torsion_claims(
    s: &mut Sink,
    p: &Params,
    q: u32,
    k: u32,
    g: &Result<RqMatrix>,
    block: Result<BinaryMatrix>,
    claimed: X,
    b: &Budget,
) {
    let found = match (g, &block) {
        (Ok(g), Ok(bk)) => Ok(copies(&g.torsion_generator(), bk)),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    s.at(p, "copies of the binary simplex generator").claimx(claimed).eq(found);
    s.at(p, "torsion code dimension")
        .claimx(n(i128::from(k)))
        .eq(with(&code(g, b), |c| Ok(c.torsion_code(full_set(q))?.rank())));
}

fn lem_3_6(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let claimed = p2((sq(q) - 1) * i64::from(k));
        torsion_claims(s, &pqk(q, k), q, k, &alpha(q, k, b), binary_simplex_alpha(k, &b.limits), claimed, b);
    }
}

fn projection_claim(
    s: &mut Sink,
    p: &Params,
    quantity: &str,
    norm: &str,
    m: &Result<RqMatrix>,
    block: &Result<RqMatrix>,
    claimed: X,
) {
    let found = match (m, block) {
        (Ok(m), Ok(bk)) => Ok(copies(m, bk)),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    s.at(p, quantity).norm(norm).claimx(claimed).eq(found);
}

fn thm_3_7(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 2, 1) {
        let m = with(&alpha(q, k, b), |g| g.project());
        let claimed = p2(sq(q - 1) * i64::from(k));
        projection_claim(s, &pqk(q, k), "copies of G^alpha(q-1,k)", "none", &m, &alpha(q - 1, k, b), claimed);
    }
}

fn thm_3_8(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 2, 1) {
        let m = with(&alpha(q, k, b), |g| project_to(g, 1));
        let block = alpha(1, k, b);
        let (qq, kk) = (i64::from(q), i64::from(k));
        for (label, exponent) in
            [("exponent=2^(q(q-1)/q)", sq(q - 1)), ("exponent=2^(q(q-1)/2)", 1i64 << (qq * (qq - 1) / 2))]
        {
            let claimed = X::p2x(n(i128::from(exponent)) * n(i128::from(kk)));
            projection_claim(s, &pqk(q, k), "copies of G^alpha(1,k)", label, &m, &block, claimed);
        }
    }
}

/// Copies, length, dimension and minimum distance of a Gray image claim.
#[allow(clippy::too_many_arguments)]
fn gray_claims(
    s: &mut Sink,
    p: &Params,
    norm: &str,
    g: &Result<RqMatrix>,
    c: &Result<CodeOverRq>,
    map: GrayMap,
    block: &Result<BinaryMatrix>,
    claims: [X; 4],
) {
    let [n_copies, length, dimension, dmin] = claims;
    let img = with(g, |g| Ok(g.gray_image(map)));
    let found = match (&img, block) {
        (Ok(m), Ok(bk)) => Ok(copies(m, bk)),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    s.at(p, "copies of the binary block").norm(norm).claimx(n_copies).eq(found);
    let code_img = with(c, |c| Ok(c.gray_image(map)));
    s.at(p, "length").norm(norm).claimx(length).eq(with(&code_img, |i| Ok(i.len())));
    s.at(p, "dimension").norm(norm).claimx(dimension).eq(with(&code_img, |i| Ok(i.rank())));
    s.at(p, "minimum distance")
        .norm(norm)
        .claimx(dmin)
        .eq(with(&code_img, |i| Ok(i.min_nonzero_weight().unwrap_or(0))));
}

fn thm_3_10(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let (qq, kk) = (i64::from(q), i64::from(k));
        let g = alpha(q, k, b);
        let c = code(&g, b);
        let claims = [p2((sq(q) - 1) * kk + qq), p2(sq(q) * kk + qq), n(i128::from(k)), p2(sq(q) * kk + qq - 1)];
        let block = binary_simplex_alpha(k, &b.limits);
        gray_claims(s, &pqk(q, k), "block=G_k", &g, &c, GrayMap::Lee, &block, claims);
    }
}

fn thm_3_11(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let (qq, kk) = (i64::from(q), i64::from(k));
        let g = alpha(q, k, b);
        let c = code(&g, b);
        let block = binary_simplex_alpha(k, &b.limits);
        for (label, mode) in MODES {
            let claims =
                [p2((sq(q) - 1) * kk + qq + 1), p2(sq(q) * kk + qq + 1), n(i128::from(k)), p2(sq(q) * kk + qq)];
            gray_claims(s, &pqk(q, k), &format!("block=G_k, {label}"), &g, &c, GrayMap::Hom(mode), &block, claims);
        }
    }
}

// ---------------------------------------------------------------------------
// Section 4

/// `2^((2^q - 1)(x - 1)) (2^x - 1)`, the β length with the short exponent.
fn beta_len(q: u32, x: i64) -> X {
    p2((sq(q) - 1) * (x - 1)) * (p2(x) - n(1))
}

fn beta_params(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let p = pqk(q, k);
        let g = beta(q, k, b);
        let kk = i64::from(k);
        let width = with(&g, |g| Ok(g.cols()));
        s.at(&p, "length").norm("exponent=2^q-1").claimx(beta_len(q, kk)).eq(width.clone());
        s.at(&p, "length")
            .norm("exponent=2^(2^q)-1")
            .claimx(X::p2x(n(i128::from((1i64 << sq(q)) - 1)) * n(i128::from(kk - 1))) * (p2(kk) - n(1)))
            .eq(width);
        s.at(&p, "2-dimension")
            .claimx(p2(i64::from(q)) * n(i128::from(k)))
            .eq(with(&code(&g, b), |c| Ok(c.two_dimension() as u64)));
    }
}

fn row_params(q: u32, k: u32, row: usize) -> Params {
    vec![("q", i64::from(q)), ("k", i64::from(k)), ("row", row as i64 + 1)]
}

fn prop_4_2_i(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let g = beta(q, k, b);
        let kk = i64::from(k);
        let rows = g.as_ref().map(|g| g.rows()).unwrap_or(k as usize);
        for j in 0..rows {
            let p = row_params(q, k, j);
            let counts = with(&g, |g| {
                Ok(symbol_counts(&g.row(j).iter().map(|e| e.coeffs()).collect::<Vec<_>>(), g.ring().order() as usize))
            });
            s.at(&p, "unit occurrences")
                .claimx(p2(sq(q) * (kk - 1)))
                .eq(counts.clone().map(|c| c.iter().skip(1).step_by(2).sum::<usize>()));
            s.at(&p, "occurrences of each zero divisor").claimx(p2((sq(q) - 1) * (kk - 2)) * (p2(kk - 1) - n(1))).eq(
                counts.map(|c| {
                    let zd: Vec<i128> = c.iter().step_by(2).map(|&x| x as i128).collect();
                    uniform(&zd)
                }),
            );
        }
    }
}

fn prop_4_2_ii(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let g = beta(q, k, b);
        let rows = g.as_ref().map(|g| g.rows()).unwrap_or(k as usize);
        for j in 0..rows {
            let p = row_params(q, k, j);
            let e = s.at(&p, "w_Ham(l_j)");
            if k == 2 {
                let claimed = p2((sq(q) - 1) * (i64::from(k) - 1) - sq(q)) * (n(3) + n(1));
                e.claimx(claimed).eq(with(&g, |g| Ok(AuditValue::int(row_weight(g.row(j), Metric::Hamming)))));
            } else {
                e.skip("product expression is ambiguous for k >= 3");
            }
        }
    }
}

fn prop_4_2_lee(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let g = beta(q, k, b);
        let kk = i64::from(k);
        let claimed = p2(sq(q) * (kk - 1)) + p2(sq(q) * kk - (sq(q) - 1)) - p2(4 * kk - (sq(q) - 2));
        s.at(&row_params(q, k, 0), "w_Lee(l_1)")
            .claimx(claimed)
            .eq(with(&g, |g| Ok(AuditValue::int(row_weight(g.row(0), Metric::Lee)))));
    }
}

fn prop_4_2_iii(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let g = beta(q, k, b);
        let kk = i64::from(k);
        let rows = g.as_ref().map(|g| g.rows()).unwrap_or(k as usize);
        for j in 0..rows {
            let raw = with(&g, |g| Ok(row_weight(g.row(j), Metric::Hom)));
            for (label, gamma) in gammas(q) {
                s.at(&row_params(q, k, j), "w_hom(l_j)")
                    .norm(label)
                    .claimx(p2((sq(q) - 1) * kk - 1) * (p2(kk) - n(1)))
                    .eq(raw.clone().map(|w| r(w) * gamma));
            }
        }
    }
}

fn prop_4_3(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let c = code(&beta(q, k, b), b);
        let kk = k as usize;
        s.at(&pqk(q, k), "unit coordinate implies the stated multiplicities").claim(true).eq(with(&c, |c| {
            let order = c.ring().order() as usize;
            let units_want = 1usize << ((1usize << q) * (kk - 1));
            let zd_want = (1usize << (((1usize << q) - 1) * (kk - 2))) * ((1usize << (kk - 1)) - 1);
            Ok(c.codewords().all(|w| {
                if !w.iter().any(|&x| x & 1 == 1) {
                    return true;
                }
                let counts = symbol_counts(w, order);
                let units: usize = counts.iter().skip(1).step_by(2).sum();
                units == units_want && counts.iter().step_by(2).all(|&x| x == zd_want)
            }))
        }));
    }
}

fn lem_4_4(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let claimed = p2((sq(q) - 1) * (i64::from(k) - 2));
        torsion_claims(s, &pqk(q, k), q, k, &beta(q, k, b), binary_simplex_beta(k, &b.limits), claimed, b);
    }
}

fn thm_4_5_i(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let c = code(&beta(q, k, b), b);
        let kk = i64::from(k);
        let mut pairs = vec![(n(0), n(1))];
        for m in 0..=i64::from(q) {
            let w = p2((sq(q) - 1) * (kk - 1)) * (p2(kk - m) * (p2(m) - n(1)) + (p2(1 - m) - n(1)));
            pairs.push((w, p2((m - 1) * kk) * (p2(m) - n(1))));
        }
        s.at(&pqk(q, k), "A_Ham").claim_dist(&pairs).eq(with(&c, |c| Ok(dist(c, Metric::Hamming))));
    }
}

fn thm_4_5_ii(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let c = code(&beta(q, k, b), b);
        let kk = i64::from(k);
        let pairs =
            [(n(0), n(1)), (p2((sq(q) - 1) * kk - 1) * (p2(kk) - n(1)), p2(kk) * (p2((sq(q) - 1) * kk) - n(1)))];
        for (label, gamma) in gammas(q) {
            s.at(&pqk(q, k), "A_hom").norm(label).claim_dist(&pairs).eq(with(&c, |c| hom_dist(c, gamma)));
        }
    }
}

fn thm_4_6(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 2, 2) {
        let m = with(&beta(q, k, b), |g| g.project());
        let block = beta(q - 1, k, b);
        let kk = i64::from(k);
        for (label, claimed) in [("reading=statement", p2(sq(q - 1) * kk)), ("reading=proof", p2(2 * kk))] {
            projection_claim(s, &pqk(q, k), "copies of G^beta(q-1,k)", label, &m, &block, claimed);
        }
    }
}

fn thm_4_7(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 2, 2) {
        let m = with(&beta(q, k, b), |g| project_to(g, 1));
        let block = beta(1, k, b);
        let (qq, kk) = (i64::from(q), i64::from(k));
        for (label, exponent) in [
            ("exponent=2^(q(q-1)/2)", 1i64 << (qq * (qq - 1) / 2)),
            ("exponent=2^((q-2)(q+1)/2)", 1i64 << ((qq - 2) * (qq + 1) / 2)),
        ] {
            let claimed = X::p2x(n(i128::from(exponent)) * n(i128::from(kk)));
            projection_claim(s, &pqk(q, k), "copies of G^beta(1,k)", label, &m, &block, claimed);
        }
    }
}

/// `2^(2^q)`-based exponent `(2^(2^q) - c)(k - 1)` used by the β Gray-image statements.
fn wide(q: u32, c: i64, k: i64) -> X {
    n(i128::from((1i64 << sq(q)) - c)) * n(i128::from(k - 1))
}

fn thm_4_8(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let (qq, kk) = (i64::from(q), i64::from(k));
        let g = beta(q, k, b);
        let c = code(&g, b);
        let claims = [
            X::p2x(wide(q, 1, kk) + n(i128::from(qq))),
            X::p2x(wide(q, 1, kk) + n(i128::from(qq))) * (p2(kk) - n(1)),
            n(i128::from(k)),
            p2((sq(q - 1) - 2) * kk + qq),
        ];
        for (label, block) in
            [("block=G_k", binary_simplex_alpha(k, &b.limits)), ("block=hat G_k", binary_simplex_beta(k, &b.limits))]
        {
            gray_claims(s, &pqk(q, k), label, &g, &c, GrayMap::Lee, &block, claims);
        }
    }
}

fn thm_4_9(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let (qq, kk) = (i64::from(q), i64::from(k));
        let g = beta(q, k, b);
        let c = code(&g, b);
        let claims = [
            X::p2x(wide(q, 1, kk) + n(i128::from(qq + 1))),
            X::p2x(wide(q, 1, kk) + n(i128::from(qq + 1))) * (p2(kk) - n(1)),
            n(i128::from(k)),
            X::p2x(wide(q, 2, kk) + n(i128::from(qq + 1))),
        ];
        for (mlabel, mode) in MODES {
            for (blabel, block) in [
                ("block=G_k", binary_simplex_alpha(k, &b.limits)),
                ("block=hat G_k", binary_simplex_beta(k, &b.limits)),
            ] {
                let norm = format!("{blabel}, {mlabel}");
                gray_claims(s, &pqk(q, k), &norm, &g, &c, GrayMap::Hom(mode), &block, claims);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Section 5

fn mac_alpha_len(q: u32, k: i64, u: i64) -> X {
    p2(sq(q) * k) - p2(sq(q) * u)
}

fn mac_beta_len(q: u32, k: i64, u: i64) -> X {
    beta_len(q, k) - beta_len(q, u)
}

fn macdonald_params(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 1) {
        let p = pqku(q, k, u);
        let (kk, uu) = (i64::from(k), i64::from(u));
        let dim = p2(i64::from(q)) * n(i128::from(k));
        let ga = mac_alpha(q, k, u, b);
        s.at(&p, "alpha length").claimx(mac_alpha_len(q, kk, uu)).eq(with(&ga, |g| Ok(g.cols())));
        s.at(&p, "alpha 2-dimension").claimx(dim).eq(with(&code(&ga, b), |c| Ok(c.two_dimension() as u64)));
        let gb = mac_beta(q, k, u, b);
        s.at(&p, "beta length").claimx(mac_beta_len(q, kk, uu)).eq(with(&gb, |g| Ok(g.cols())));
        s.at(&p, "beta 2-dimension").claimx(dim).eq(with(&code(&gb, b), |c| Ok(c.two_dimension() as u64)));
    }
}

fn thm_5_1(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 2) {
        let claimed = p2(sq(q - 1) * i64::from(k));
        let p = pqku(q, k, u);
        let ma = with(&mac_alpha(q, k, u, b), |g| g.project());
        projection_claim(s, &p, "alpha copies", "none", &ma, &mac_alpha(q - 1, k, u, b), claimed);
        let mb = with(&mac_beta(q, k, u, b), |g| g.project());
        projection_claim(s, &p, "beta copies", "none", &mb, &mac_beta(q - 1, k, u, b), claimed);
    }
}

fn thm_5_2(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 2) {
        let p = pqku(q, k, u);
        let (qq, kk) = (i64::from(q), i64::from(k));
        let readings = [
            ("exponent=2^(q(q-1)/2)*k", X::p2x(n(1i128 << (qq * (qq - 1) / 2)) * n(i128::from(kk)))),
            ("exponent=2^(q(q-1)k/2)", X::p2x(X::p2x(n(i128::from(qq * (qq - 1) * kk / 2))))),
        ];
        let ma = with(&mac_alpha(q, k, u, b), |g| project_to(g, 1));
        let mb = with(&mac_beta(q, k, u, b), |g| project_to(g, 1));
        let ba = mac_alpha(1, k, u, b);
        let bb = mac_beta(1, k, u, b);
        for (label, claimed) in readings {
            projection_claim(s, &p, "alpha copies", label, &ma, &ba, claimed);
            projection_claim(s, &p, "beta copies", label, &mb, &bb, claimed);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn macdonald_torsion(s: &mut Sink, p: &Params, q: u32, k: u32, c: &Result<CodeOverRq>, length: X, low: X, high: X) {
    let u = p.iter().find(|(name, _)| *name == "u").map_or(1, |x| x.1);
    let kk = i64::from(k);
    let tor = with(c, |c| c.torsion_code(full_set(q)));
    s.at(p, "length").claimx(length).eq(with(&tor, |t| Ok(t.len())));
    s.at(p, "dimension").claimx(n(i128::from(k))).eq(with(&tor, |t| Ok(t.rank())));
    s.at(p, "minimum distance").claimx(low).eq(with(&tor, |t| Ok(t.min_nonzero_weight().unwrap_or(0))));
    s.at(p, "weight distribution")
        .claim_dist(&[(n(0), n(1)), (low, p2(kk) - p2(kk - u)), (high, p2(kk - u) - n(1))])
        .eq(with(&tor, |t| Ok(AuditValue::counts(t.weight_counts().into_iter().map(|(w, c)| (r(w as i128), c))))));
}

fn thm_5_3(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 1) {
        let (kk, uu) = (i64::from(k), i64::from(u));
        let c = code(&mac_alpha(q, k, u, b), b);
        let low = p2(sq(q) * kk - 1) - p2(sq(q) * uu - 1);
        macdonald_torsion(s, &pqku(q, k, u), q, k, &c, mac_alpha_len(q, kk, uu), low, p2(sq(q) * kk - 1));
    }
}

fn thm_5_5(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 1) {
        let (kk, uu) = (i64::from(k), i64::from(u));
        let c = code(&mac_beta(q, k, u, b), b);
        let low = p2(sq(q) * kk - sq(q)) - p2(sq(q) * uu - sq(q));
        macdonald_torsion(s, &pqku(q, k, u), q, k, &c, mac_beta_len(q, kk, uu), low, p2(sq(q) * kk - sq(q)));
    }
}

fn thm_5_4_i(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 1) {
        let (kk, uu) = (i64::from(k), i64::from(u));
        let c = code(&mac_alpha(q, k, u, b), b);
        let pairs = [
            (n(0), n(1)),
            (p2(sq(q) * kk - 1) - p2(sq(q) * uu - 1), p2(kk) - p2(kk - uu)),
            (p2(sq(q) * kk - 1), p2(kk - uu) - n(1)),
        ];
        s.at(&pqku(q, k, u), "A_Ham").claim_dist(&pairs).eq(with(&c, |c| Ok(dist(c, Metric::Hamming))));
    }
}

fn mac_lee_hom_pairs(q: u32, kk: i64, uu: i64) -> [(X, X); 3] {
    [
        (n(0), n(1)),
        (p2(sq(q) * kk + 1), p2(sq(q) * (kk - uu)) - n(1)),
        (p2(sq(q) * kk + 1) - p2(sq(q) * uu + 1), p2(sq(q) * (kk - uu)) * (p2(sq(q) * uu) - n(1))),
    ]
}

fn thm_5_4_ii(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 1) {
        let c = code(&mac_alpha(q, k, u, b), b);
        s.at(&pqku(q, k, u), "A_Lee")
            .norm("lee")
            .claim_dist(&mac_lee_hom_pairs(q, i64::from(k), i64::from(u)))
            .eq(with(&c, |c| Ok(dist(c, Metric::Lee))));
    }
}

fn thm_5_4_iii(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 1) {
        let c = code(&mac_alpha(q, k, u, b), b);
        for (label, gamma) in gammas(q) {
            s.at(&pqku(q, k, u), "A_hom")
                .norm(label)
                .claim_dist(&mac_lee_hom_pairs(q, i64::from(k), i64::from(u)))
                .eq(with(&c, |c| hom_dist(c, gamma)));
        }
    }
}

const SIMPLEX_NAMED: &str = "the statement names the simplex code; the MacDonald code is used";

#[allow(clippy::too_many_arguments)]
fn mac_gray(
    s: &mut Sink,
    p: &Params,
    norm: &str,
    g: &Result<RqMatrix>,
    c: &Result<CodeOverRq>,
    map: GrayMap,
    block: &Result<BinaryMatrix>,
    claims: [X; 4],
) {
    let before = s.entries.len();
    gray_claims(s, p, norm, g, c, map, block, claims);
    for e in &mut s.entries[before..] {
        if e.note.is_none() {
            e.note = Some(SIMPLEX_NAMED.into());
        }
    }
}

fn thm_5_6(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 1) {
        let (qq, kk, uu) = (i64::from(q), i64::from(k), i64::from(u));
        let g = mac_alpha(q, k, u, b);
        let c = code(&g, b);
        let len = p2(sq(q) * kk + qq) - p2(sq(q) * uu + qq);
        let claims =
            [len / (p2(kk) - p2(uu)), len, n(i128::from(k)), p2(sq(q) * kk + qq - 1) - p2(sq(q) * uu + qq - 1)];
        let block = binary_macdonald_alpha(k, u, &b.limits);
        mac_gray(s, &pqku(q, k, u), "block=binary MacDonald alpha", &g, &c, GrayMap::Lee, &block, claims);
    }
}

fn thm_5_7(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 1) {
        let (qq, kk, uu) = (i64::from(q), i64::from(k), i64::from(u));
        let g = mac_alpha(q, k, u, b);
        let c = code(&g, b);
        let len = p2(sq(q) * kk + qq + 1) - p2(sq(q) * uu + qq + 1);
        let claims = [len / (p2(kk) - p2(uu)), len, n(i128::from(k)), p2(sq(q) * kk + qq) - p2(sq(q) * uu + qq)];
        let block = binary_macdonald_alpha(k, u, &b.limits);
        for (label, mode) in MODES {
            let norm = format!("block=binary MacDonald alpha, {label}");
            mac_gray(s, &pqku(q, k, u), &norm, &g, &c, GrayMap::Hom(mode), &block, claims);
        }
    }
}

/// `2^((2^q-1)(x-1)+e) (2^x - 1)`.
fn beta_term(q: u32, x: i64, e: i64) -> X {
    p2((sq(q) - 1) * (x - 1) + e) * (p2(x) - n(1))
}

fn mac_beta_blocks(k: u32, u: u32, b: &Budget) -> [(&'static str, Result<BinaryMatrix>); 2] {
    [
        ("block=binary MacDonald beta", binary_macdonald_beta(k, u, &b.limits)),
        ("block=binary MacDonald alpha", binary_macdonald_alpha(k, u, &b.limits)),
    ]
}

fn thm_5_8(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 1) {
        let (qq, kk, uu) = (i64::from(q), i64::from(k), i64::from(u));
        let g = mac_beta(q, k, u, b);
        let c = code(&g, b);
        let len = beta_term(q, kk, qq) - beta_term(q, uu, qq);
        let claims =
            [len / (p2(kk) - p2(uu)), len, n(i128::from(k)), beta_term(q, kk, qq - 1) - beta_term(q, uu, qq - 1)];
        for (label, block) in mac_beta_blocks(k, u, b) {
            mac_gray(s, &pqku(q, k, u), label, &g, &c, GrayMap::Lee, &block, claims);
        }
    }
}

fn thm_5_9(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 1) {
        let (qq, kk, uu) = (i64::from(q), i64::from(k), i64::from(u));
        let g = mac_beta(q, k, u, b);
        let c = code(&g, b);
        let len = beta_term(q, kk, qq + 1) - beta_term(q, uu, qq + 1);
        let claims = [len / (p2(kk) - p2(uu)), len, n(i128::from(k)), beta_term(q, kk, qq) - beta_term(q, uu, qq)];
        for (mlabel, mode) in MODES {
            for (blabel, block) in mac_beta_blocks(k, u, b) {
                let norm = format!("{blabel}, {mlabel}");
                mac_gray(s, &pqku(q, k, u), &norm, &g, &c, GrayMap::Hom(mode), &block, claims);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Sections 6 and 7

fn qn(b: &Budget) -> Vec<(u32, usize)> {
    qs(b, 1).flat_map(|q| (1..=b.max_n).map(move |len| (q, len))).collect()
}

fn thm_6_1_i(b: &Budget, s: &mut Sink) {
    for (q, len) in qn(b) {
        let (qq, nn) = (i64::from(q), len as i128);
        let mut cs = vec![1u16, 3];
        if q >= 2 {
            cs.insert(1, 2);
        }
        for c in cs {
            let p = vec![("q", qq), ("n", len as i64), ("c", i64::from(c))];
            let g = repetition(q, c, len, b);
            radius_claims(s, &p, q, &g, Metric::Lee, p2(qq) * n(nn), b);
            radius_claims(s, &p, q, &g, Metric::Hom, p2(qq) * n(nn), b);
        }
    }
}

fn thm_6_1_ii(b: &Budget, s: &mut Sink) {
    for (q, len) in qn(b) {
        let (qq, nn) = (i64::from(q), len as i128);
        let p = vec![("q", qq), ("n", len as i64)];
        let g = repetition(q, ring(q).theta().coeffs(), len, b);
        radius_claims(s, &p, q, &g, Metric::Lee, p2(qq) * n(nn), b);
        radius_claims(s, &p, q, &g, Metric::Hom, p2(qq + 1) * n(nn), b);
    }
}

fn thm_6_2(b: &Budget, s: &mut Sink) {
    for (q, len) in qn(b) {
        let (qq, nn) = (i64::from(q), len as i128);
        let p = vec![("q", qq), ("n", len as i64)];
        let g = block_repetition_generator(q, len, &b.limits);
        radius_claims(s, &p, q, &g, Metric::Lee, (p2(sq(q)) - n(1)) * p2(qq - 1) * n(nn), b);
        radius_claims(s, &p, q, &g, Metric::Hom, p2(sq(q) + qq) * n(nn), b);
    }
}

fn thm_7_1_i(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let (qq, kk) = (i64::from(q), i64::from(k));
        let claimed = n(i128::from(k)) * p2(sq(q) * kk + qq);
        radius_claims(s, &pqk(q, k), q, &alpha(q, k, b), Metric::Hom, claimed, b);
    }
}

fn thm_7_1_ii(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 1) {
        let kk = i64::from(k);
        radius_claims(s, &pqk(q, k), q, &alpha(q, k, b), Metric::Lee, p2((sq(q) + 1) * kk + 1), b);
    }
}

fn thm_7_2_i(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let (qq, kk) = (i64::from(q), i64::from(k));
        let p = pqk(q, k);
        let g = beta(q, k, b);
        let value = with(&g, |g| radius_value(g, Metric::Hom, b));
        let len = g.as_ref().map(|g| g.cols()).unwrap_or(0);
        let front = p2(sq(q) * (kk - 2) + qq);
        let tail = n(4) - p2(1 - qq);
        let inner = n(i128::from(kk)) - p2(-qq);
        let readings = [
            ("reading=product", front * (p2(sq(q)) * inner + tail)),
            ("reading=exponent", front * (p2(sq(q) * kk - 1) + tail)),
        ];
        for (rlabel, claimed) in readings {
            for (glabel, gamma) in gammas(q) {
                s.at(&p, "r_hom")
                    .norm(&format!("{rlabel}, {glabel}"))
                    .claimx(claimed)
                    .ceiling(ceiling(q, len, Metric::Hom, gamma))
                    .eq(value.clone().map(|(v, _)| v * gamma));
            }
        }
    }
}

fn thm_7_2_ii(b: &Budget, s: &mut Sink) {
    for (q, k) in qk(b, 1, 2) {
        let (qq, kk) = (i64::from(q), i64::from(k));
        radius_claims(s, &pqk(q, k), q, &beta(q, k, b), Metric::Lee, beta_term(q, kk, qq - 1), b);
    }
}

/// Upper-bound claims `r(M(k,u)) <= L(k) - L(x) + r(M(e,u))` for `u < e < k`.
fn macdonald_bound<B, L>(b: &Budget, s: &mut Sink, build: B, len: L)
where
    B: Fn(u32, u32, u32, &Budget) -> Result<RqMatrix>,
    L: Fn(u32, i64) -> X,
{
    for (q, k, u) in qku(b, 1) {
        for e in (u + 1)..k {
            let p = vec![("q", i64::from(q)), ("k", i64::from(k)), ("u", i64::from(u)), ("e", i64::from(e))];
            let big = with(&build(q, k, u, b), |g| radius_value(g, Metric::Hom, b));
            let small = with(&build(q, e, u, b), |g| radius_value(g, Metric::Hom, b));
            let (kk, uu, ee) = (i64::from(k), i64::from(u), i64::from(e));
            for (rlabel, lower) in [("reading=statement", uu), ("reading=proof", ee)] {
                for (glabel, gamma) in gammas(q) {
                    let norm = format!("{rlabel}, {glabel}");
                    let entry = s.at(&p, "r_hom upper bound").norm(&norm);
                    match &small {
                        Ok((v, _)) => {
                            let claimed = len(q, kk) - len(q, lower) + X(Some(*v * gamma));
                            entry.claimx(claimed).le(big.clone().map(|(v, _)| v * gamma));
                        }
                        Err(err) => entry.skip(&format!("{err}")),
                    }
                }
            }
        }
    }
}

fn thm_7_3_i(b: &Budget, s: &mut Sink) {
    macdonald_bound(b, s, mac_alpha, |q, x| p2(sq(q) * x));
}

fn thm_7_3_ii(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 1) {
        let (qq, kk, uu) = (i64::from(q), i64::from(k), i64::from(u));
        let claimed = p2(sq(q) * kk + qq - 1) - p2(sq(q) * uu + qq - 1);
        radius_claims(s, &pqku(q, k, u), q, &mac_alpha(q, k, u, b), Metric::Lee, claimed, b);
    }
}

fn thm_7_4_i(b: &Budget, s: &mut Sink) {
    macdonald_bound(b, s, mac_beta, beta_len);
}

fn thm_7_4_ii(b: &Budget, s: &mut Sink) {
    for (q, k, u) in qku(b, 1) {
        let (qq, kk, uu) = (i64::from(q), i64::from(k), i64::from(u));
        let claimed = beta_term(q, kk, qq - 1) - beta_term(q, uu, qq - 1);
        radius_claims(s, &pqku(q, k, u), q, &mac_beta(q, k, u, b), Metric::Lee, claimed, b);
    }
}
