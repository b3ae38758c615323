use std::sync::OnceLock;

use fusionkit::fusion::{self, Backend, Level};
use fusionkit::{Context, Limits, RootSystem, Weight};
use proptest::prelude::*;

fn a2() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| Context::new("A2".parse().unwrap(), Limits::default()).unwrap())
}

fn rank2_systems() -> &'static [RootSystem] {
    static RS: OnceLock<Vec<RootSystem>> = OnceLock::new();
    RS.get_or_init(|| ["A2", "B2", "C2", "G2"].iter().map(|t| RootSystem::new(t.parse().unwrap()).unwrap()).collect())
}

fn weight2(range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Weight> {
    (range.clone(), range).prop_map(|(a, b)| Weight::new(vec![a, b]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_weight_is_an_involution(idx in 0usize..4, w in weight2(0..=6)) {
        let rs = &rank2_systems()[idx];
        prop_assert_eq!(rs.dual_weight(&rs.dual_weight(&w)), w);
    }

    #[test]
    fn make_dominant_is_weyl_invariant(idx in 0usize..4, w in weight2(-6..=6), g in 0usize..12) {
        let rs = &rank2_systems()[idx];
        let elements = rs.weyl_elements();
        let x = elements[g % elements.len()].apply(&w);
        prop_assert_eq!(rs.dominant_conjugate(&x), rs.dominant_conjugate(&w));
        prop_assert!(rs.dominant_conjugate(&w).is_dominant());
        prop_assert_eq!(rs.form(&x, &x), rs.form(&w, &w));
    }

    #[test]
    fn tensor_product_commutes(l in weight2(0..=2), m in weight2(0..=2)) {
        let ctx = a2();
        let lm = ctx.tensor_decompose(&l, &m).unwrap();
        let ml = ctx.tensor_decompose(&m, &l).unwrap();
        prop_assert_eq!(lm.terms, ml.terms);
    }

    #[test]
    fn tensor_dimensions_add_up(l in weight2(0..=2), m in weight2(0..=2)) {
        let ctx = a2();
        let dec = ctx.tensor_decompose(&l, &m).unwrap();
        let total: u64 = dec.terms.iter().map(|(nu, c)| c * ctx.dimension(nu)).sum();
        prop_assert_eq!(total, ctx.dimension(&l) * ctx.dimension(&m));
    }

    #[test]
    fn fusion_is_symmetric_and_truncates(k in 1u64..=3, l in weight2(0..=3), m in weight2(0..=3), n in weight2(0..=3)) {
        let ctx = a2();
        let rs = ctx.root_system();
        let level = Level::new(k).unwrap();
        prop_assume!([&l, &m, &n].iter().all(|w| fusion::in_alcove(rs, w, level)));
        let c = fusion::fusion_coefficient(ctx, level, &l, &m, &n).unwrap();
        prop_assert_eq!(c, fusion::fusion_coefficient(ctx, level, &m, &l, &n).unwrap());
        // N^nu_{lambda,mu} = N^{mu*}_{lambda,nu*}
        let (ms, ns) = (rs.dual_weight(&m), rs.dual_weight(&n));
        prop_assert_eq!(c, fusion::fusion_coefficient(ctx, level, &l, &ns, &ms).unwrap());
        prop_assert!(c <= ctx.tensor_multiplicity(&l, &m, &n).unwrap());
        prop_assert_eq!(c, fusion::coefficient(ctx, level, Backend::KacWalton, &l, &m, &n).unwrap());
    }
}
