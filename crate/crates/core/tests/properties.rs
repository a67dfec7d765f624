use graded_qs::elementary::{normalize_mod_plus, split_word, word_eval, word_inverse};
use graded_qs::forms::{is_in_g, is_in_s};
use graded_qs::local::{dilate_pullback, dilation_exponent, LocRing};
use graded_qs::matrix::{det_bareiss, det_cofactor};
use graded_qs::sample::{level_close, SampleBounds, Sampler};
use graded_qs::{Coeff, CoefficientRing, Error, GradedPoly, GroupCase, Matrix, MatrixG, PolyRing};
use proptest::prelude::*;

fn rings() -> [PolyRing; 3] {
    [
        PolyRing::new(CoefficientRing::Integers, 2),
        PolyRing::new(CoefficientRing::Rationals, 2),
        PolyRing::new(CoefficientRing::prime_field(7).unwrap(), 2),
    ]
}

fn poly_in(r: PolyRing) -> impl Strategy<Value = GradedPoly> {
    prop::collection::vec((0u32..=3, 0u32..=3, -9i64..=9, 1i64..=4), 0..6).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(a, b, num, den)| {
            let den = if r.coeffs == CoefficientRing::Rationals {
                den
            } else {
                1
            };
            (vec![a, b], Coeff::new(num.into(), den.into()))
        });
        GradedPoly::from_terms(r, terms).unwrap()
    })
}

fn ring_and_polys(k: usize) -> impl Strategy<Value = (PolyRing, Vec<GradedPoly>)> {
    (0usize..3).prop_flat_map(move |i| {
        let r = rings()[i];
        (Just(r), prop::collection::vec(poly_in(r), k))
    })
}

fn scalar() -> impl Strategy<Value = Coeff> {
    (-6i64..=6).prop_map(|t| Coeff::from_integer(t.into()))
}

fn shape(i: usize) -> (GroupCase, usize) {
    [
        (GroupCase::Linear, 3),
        (GroupCase::Linear, 4),
        (GroupCase::Symplectic, 6),
        (GroupCase::Orthogonal, 6),
    ][i]
}

fn zxy() -> PolyRing {
    PolyRing::new(CoefficientRing::Integers, 2)
}

fn small() -> SampleBounds {
    SampleBounds {
        max_degree: 2,
        max_coeff: 4,
        max_terms: 3,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_composes((r, ps) in ring_and_polys(1), s in scalar(), t in scalar()) {
        let b = &ps[0];
        let st = r.coeffs.mul(&s, &t);
        let st = r.coeffs.reduce(&st).unwrap();
        prop_assert_eq!(b.plus_eval_coeff(&s).plus_eval_coeff(&t), b.plus_eval_coeff(&st));
    }

    #[test]
    fn evaluation_is_a_ring_map((_r, ps) in ring_and_polys(2), t in scalar()) {
        let (a, b) = (&ps[0], &ps[1]);
        prop_assert_eq!(a.add(b).plus_eval_coeff(&t), a.plus_eval_coeff(&t).add(&b.plus_eval_coeff(&t)));
        prop_assert_eq!(a.mul(b).plus_eval_coeff(&t), a.plus_eval_coeff(&t).mul(&b.plus_eval_coeff(&t)));
        prop_assert_eq!(a.plus_eval_coeff(&Coeff::from_integer(1.into())), a.clone());
        prop_assert_eq!(a.plus_eval_coeff(&Coeff::from_integer(0.into())), a.degree_zero_part());
    }

    #[test]
    fn grading_reassembles((r, ps) in ring_and_polys(1)) {
        let p = &ps[0];
        let dec = p.grade_decompose();
        prop_assert_eq!(dec.reassemble(r), p.clone());
        let mut last = None;
        for (d, part) in &dec.parts {
            prop_assert!(last.is_none_or(|l| l < *d));
            prop_assert!(!part.is_zero());
            prop_assert!(part.terms().all(|(m, _)| m.degree() == *d));
            prop_assert_eq!(&p.homogeneous_component(*d), part);
            last = Some(*d);
        }
    }

    #[test]
    fn extension_is_a_ring_map((_r, ps) in ring_and_polys(2), t in scalar()) {
        let (a, b) = (&ps[0], &ps[1]);
        let (ea, eb) = (a.swan_weibel_extend(), b.swan_weibel_extend());
        prop_assert_eq!(a.add(b).swan_weibel_extend(), ea.add(&eb));
        prop_assert_eq!(a.mul(b).swan_weibel_extend(), ea.mul(&eb));
        prop_assert_eq!(ea.eval(&t), a.plus_eval_coeff(&t));
    }

    #[test]
    fn splitting_preserves_value(seed in any::<u64>(), which in 0usize..4, len in 1usize..6) {
        let (case, n) = shape(which);
        let r = zxy();
        let w = Sampler::new(seed, small()).word(case, n, &r, len);
        let split = split_word(&w);
        prop_assert_eq!(split.len(), 2 * w.len());
        prop_assert_eq!(word_eval(&split), word_eval(&w));
        for pair in split.gens().chunks(2) {
            prop_assert!(pair[0].arg().is_constant());
            prop_assert!(pair[1].arg().degree_zero_part().is_zero());
        }
    }

    #[test]
    fn generator_products_stay_in_the_group(seed in any::<u64>(), which in 0usize..4, len in 1usize..6) {
        let (case, n) = shape(which);
        let r = zxy();
        let w = Sampler::new(seed, small()).word(case, n, &r, len);
        let a = word_eval(&w);
        prop_assert!(is_in_g(case, &a));
        prop_assert!(is_in_s(case, &a));
        prop_assert!(a.mul(&word_eval(&word_inverse(&w))).unwrap().is_identity());
    }

    #[test]
    fn normalization_reproduces_level_words(seed in any::<u64>(), which in 0usize..4, half in 1usize..4) {
        let (case, n) = shape(which);
        let r = zxy();
        let w = Sampler::new(seed, small()).level_word(case, n, &r, half);
        let cw = normalize_mod_plus(&w).unwrap();
        prop_assert_eq!(cw.eval().unwrap(), word_eval(&w));
        prop_assert!(word_eval(&cw.residual).is_identity());
        for (eps, core) in &cw.pairs {
            prop_assert!(eps.gens().iter().all(|g| g.arg().is_constant()));
            prop_assert!(core.arg().degree_zero_part().is_zero());
        }
    }

    #[test]
    fn dilation_clears_exactly(seed in any::<u64>(), which in 0usize..4, s in prop::sample::select(vec![2i64, 3, 5])) {
        let (case, n) = shape(which);
        let r = zxy();
        let loc = LocRing::from_int(r, s).unwrap();
        let mut sm = Sampler::new(seed, small());
        let len = 1 + sm.below(3);
        let u = sm.localized_word(&loc, case, n, len, 3);
        let a = word_eval(&level_close(&u));
        let l = dilation_exponent(&a).unwrap();
        let pulled = dilate_pullback(&a, l).unwrap();
        prop_assert_eq!(loc.localize_matrix(&pulled).unwrap(), a.plus_eval(&loc.s_power(l)));
        prop_assert!(is_in_g(case, &pulled));
        if l > 0 {
            prop_assert!(matches!(dilate_pullback(&a, l - 1), Err(Error::DenominatorNotCleared(_))));
        }
    }

    #[test]
    fn determinants_agree_and_commute_with_evaluation(seed in any::<u64>(), n in 1usize..5, t in scalar()) {
        let r = zxy();
        let mut sm = Sampler::new(seed, small());
        let a: MatrixG = Matrix::from_fn(&r, n, |_, _| sm.poly(&r));
        let d = det_bareiss(&a);
        prop_assert_eq!(&d, &det_cofactor(&a));
        prop_assert_eq!(a.plus_eval(&t).det(), d.plus_eval_coeff(&t));
    }
}
