use std::sync::Arc;

use progcover::arith::rational::{int, ratio};
use progcover::arith::{FieldElement, RootDescriptor};
use progcover::cover::{brute_force_min_cover, min_ap_cover, min_gp_cover, CoverInstance, Mode};
use progcover::progression::{ArithmeticProgression, GeometricProgression};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn sqrt2() -> Arc<RootDescriptor> {
    Arc::new(RootDescriptor::new(int(2), 2).unwrap())
}

fn distinct(mut v: Vec<FieldElement>) -> Vec<FieldElement> {
    let mut out = Vec::new();
    for x in v.drain(..) {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn rational_set(max: usize) -> impl Strategy<Value = Vec<FieldElement>> {
    prop::collection::vec((0i64..40, 1i64..4), 1..=max)
        .prop_map(|v| distinct(v.into_iter().map(|(n, d)| FieldElement::rational(ratio(n, d))).collect()))
}

fn quadratic_set(max: usize) -> impl Strategy<Value = Vec<FieldElement>> {
    prop::collection::vec((0i64..6, 0i64..6), 1..=max).prop_map(|v| {
        let f = sqrt2();
        distinct(
            v.into_iter()
                .map(|(a, b)| FieldElement::from_coords(f.clone(), vec![int(a), int(b)]).unwrap())
                .collect(),
        )
    })
}

fn smooth_set(max: usize) -> impl Strategy<Value = Vec<FieldElement>> {
    prop::collection::vec((-2i32..4, -2i32..4, 0i32..3), 1..=max).prop_map(|v| {
        distinct(
            v.into_iter()
                .map(|(a, b, c)| {
                    let x = ratio(2, 1).pow(a) * ratio(3, 1).pow(b) * ratio(5, 1).pow(c);
                    FieldElement::rational(x)
                })
                .collect(),
        )
    })
}

fn count(elements: Vec<FieldElement>, mode: Mode) -> usize {
    let inst = CoverInstance::from_elements(elements).unwrap();
    let sol = match mode {
        Mode::Ap => min_ap_cover(&inst),
        Mode::Gp => min_gp_cover(&inst),
    }
    .unwrap();
    sol.verify(&inst).unwrap();
    assert_eq!(sol.blocks.len(), sol.count);
    if inst.len() >= 2 {
        assert!(sol.count <= inst.len().div_ceil(2));
    }
    sol.count
}

fn oracle(elements: Vec<FieldElement>, mode: Mode) -> usize {
    brute_force_min_cover(&CoverInstance::from_elements(elements).unwrap(), mode).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ap_matches_oracle_over_q(s in rational_set(10)) {
        prop_assert_eq!(count(s.clone(), Mode::Ap), oracle(s, Mode::Ap));
    }

    #[test]
    fn ap_matches_oracle_over_sqrt2(s in quadratic_set(10)) {
        prop_assert_eq!(count(s.clone(), Mode::Ap), oracle(s, Mode::Ap));
    }

    #[test]
    fn gp_matches_oracle(s in smooth_set(10)) {
        prop_assert_eq!(count(s.clone(), Mode::Gp), oracle(s, Mode::Gp));
    }

    #[test]
    fn subsets_never_need_more(
        (s, t) in rational_set(12).prop_flat_map(|s| {
            let n = s.len();
            (Just(s.clone()), subsequence(s, 1..=n))
        })
    ) {
        prop_assert!(count(t, Mode::Ap) <= count(s, Mode::Ap));
    }

    #[test]
    fn gp_subsets_never_need_more(
        (s, t) in smooth_set(12).prop_flat_map(|s| {
            let n = s.len();
            (Just(s.clone()), subsequence(s, 1..=n))
        })
    ) {
        prop_assert!(count(t, Mode::Gp) <= count(s, Mode::Gp));
    }

    #[test]
    fn order_does_not_matter(s in quadratic_set(10), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut t = s.clone();
        t.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(count(s, Mode::Ap), count(t, Mode::Ap));
    }

    #[test]
    fn prefixes_cover_themselves(v in 0i64..20, d in 1i64..20, u in 1i64..20, q in 2i64..6, n in 1usize..25) {
        let ap = ArithmeticProgression::new(FieldElement::rational(ratio(v, 3)), FieldElement::rational(ratio(d, 2))).unwrap();
        prop_assert_eq!(count(ap.prefix(n), Mode::Ap), 1);
        let gp = GeometricProgression::new(FieldElement::rational(ratio(u, 1)), FieldElement::rational(ratio(q, 1))).unwrap();
        prop_assert_eq!(count(gp.prefix(n), Mode::Gp), 1);
    }

    #[test]
    fn root_ratio_prefix_needs_m(m in 2u32..5, r in prop::sample::select(vec![2i64, 3, 5, 6]), u in 1i64..5, extra in 0usize..4) {
        let f = Arc::new(RootDescriptor::new(int(r), m).unwrap());
        let g = GeometricProgression::new(FieldElement::rational(ratio(u, 1)), FieldElement::generator(f)).unwrap();
        let n = 2 * m as usize + extra;
        prop_assert_eq!(count(g.prefix(n), Mode::Ap), m as usize);
    }
}
