use proptest::prelude::*;
use rqcodes_core::analysis::{exhaustive, gray_syndrome, profile_dp, weight_distribution};
use rqcodes_core::{
    CodeOverRq, GrayMap, HomMode, Limits, Metric, Rational, RingSpec, RqElement, RqMatrix, SymbolWeights,
};

fn ring(q: u32) -> RingSpec {
    RingSpec::new(q, None).unwrap()
}

fn element(q: u32) -> impl Strategy<Value = RqElement> {
    (0u32..(1 << (1u32 << q))).prop_map(move |c| ring(q).element(c).unwrap())
}

fn triple() -> impl Strategy<Value = (RqElement, RqElement, RqElement)> {
    (1u32..=3).prop_flat_map(|q| (element(q), element(q), element(q)))
}

fn generator(q: u32, rows: usize, cols: usize) -> impl Strategy<Value = RqMatrix> {
    prop::collection::vec(element(q), rows * cols).prop_map(move |v| RqMatrix::new(ring(q), rows, cols, v).unwrap())
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a + a, ring(a.q()).zero());
    }

    #[test]
    fn lee_gray_is_additive((a, b, _) in triple()) {
        prop_assert_eq!((a + b).lee_gray().bits(), a.lee_gray().bits() ^ b.lee_gray().bits());
        prop_assert_eq!(a.lee_weight(), a.lee_gray().weight());
    }

    #[test]
    fn linear_hom_gray_is_additive((a, b, _) in triple()) {
        let g = |x: RqElement| x.hom_gray(HomMode::Linear).bits();
        prop_assert_eq!(g(a + b), g(a) ^ g(b));
    }

    #[test]
    fn weight_exact_hom_gray_matches_weight((a, _, _) in triple()) {
        let r = ring(a.q());
        let w = Rational::from_integer(i128::from(a.hom_gray(HomMode::WeightExact).weight()));
        prop_assert_eq!(w, r.hom_weight_closed(a));
    }

    #[test]
    fn hom_weight_formulas_agree((a, _, _) in triple(), g in 1i128..9) {
        let r = ring(a.q()).with_gamma(Rational::from_integer(g)).unwrap();
        prop_assert_eq!(r.hom_weight_closed(a), r.hom_weight_character(a));
    }

    #[test]
    fn projection_is_a_homomorphism((a, b, _) in (2u32..=3).prop_flat_map(|q| (element(q), element(q), element(q)))) {
        let p = |x: RqElement| x.gamma_project().unwrap();
        prop_assert_eq!(p(a + b), p(a) + p(b));
        prop_assert_eq!(p(a * b), p(a) * p(b));
    }

    #[test]
    fn gray_images_are_linear(g in (1u32..=2).prop_flat_map(|q| generator(q, 1, 2))) {
        let lim = Limits::default();
        let code = CodeOverRq::enumerate(&g, &lim).unwrap();
        for map in [GrayMap::Lee, GrayMap::Hom(HomMode::Linear)] {
            let img = code.gray_image(map);
            prop_assert!(img.is_linear());
            prop_assert_eq!(img.size(), code.size());
        }
        let lee = weight_distribution(&code, Metric::Lee);
        let img = code.gray_image(GrayMap::Lee).weight_counts();
        let img: Vec<_> = img.into_iter().map(|(w, c)| (Rational::from_integer(w as i128), c)).collect();
        prop_assert_eq!(lee.counts.into_iter().collect::<Vec<_>>(), img);
    }

    #[test]
    fn covering_engines_agree(g in (1usize..=3).prop_flat_map(|n| generator(1, 1, n))) {
        let lim = Limits::default();
        let code = CodeOverRq::enumerate(&g, &lim).unwrap();
        for metric in [Metric::Hamming, Metric::Lee, Metric::Hom] {
            let w = SymbolWeights::new(code.ring(), metric);
            let a = exhaustive(&code, &w, &lim).unwrap().value;
            let b = profile_dp(&code, &w, &lim).unwrap().value;
            prop_assert_eq!(a, b);
            if metric == Metric::Lee {
                prop_assert_eq!(a, gray_syndrome(&g, &lim).unwrap().value);
            }
        }
    }
}
