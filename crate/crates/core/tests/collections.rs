use kronmod::bundle::BundleExpr;
use kronmod::collection::{
    builtin, euler_pairing, verify_collection, verify_collection_on, CollectionSpec, Verdict, BUILTIN_NAMES,
};
use kronmod::strata::{unstable_strata, ModuliContext, StratumData};
use proptest::prelude::*;

fn cached_strata() -> &'static [StratumData] {
    static STRATA: std::sync::OnceLock<Vec<StratumData>> = std::sync::OnceLock::new();
    STRATA.get_or_init(|| unstable_strata(&ModuliContext::kronecker_2_3()).unwrap())
}

fn verify(spec: &CollectionSpec) -> kronmod::collection::VerificationMatrix {
    verify_collection_on(spec, &ModuliContext::kronecker_2_3(), cached_strata()).unwrap()
}

#[test]
fn thirteen_object_collection() {
    let m = verify_collection(&builtin("1exc").unwrap()).unwrap();
    for p in m.pairs() {
        match p.i.cmp(&p.j) {
            std::cmp::Ordering::Equal => assert_eq!(p.verdict, Verdict::ExceptionalCertified, "{p:?}"),
            std::cmp::Ordering::Less => assert_eq!(p.verdict, Verdict::StrongExtCertified, "{p:?}"),
            std::cmp::Ordering::Greater => assert_eq!(p.chi, 0, "{p:?}"),
        }
    }
    assert!(m.undetermined().iter().all(|(i, j)| i > j));
    assert!(m.chi_consistent() && m.forward_certified());
    // Hom(sl(U1), U2*) is three dimensional.
    assert_eq!(m.entries[0][2].hom_dim(), Some(3));
}

#[test]
fn variant_collections_are_chi_consistent() {
    for name in BUILTIN_NAMES {
        let m = verify(&builtin(name).unwrap());
        eprintln!("{name}: undetermined {:?}", m.undetermined());
        assert!(m.chi_consistent(), "{name}");
        for p in m.pairs().filter(|p| p.verdict != Verdict::Undetermined) {
            assert!(!p.teleman_pass || p.blocker.is_none());
            assert!(p.teleman_pass);
        }
    }
}

#[test]
fn line_bundle_pair() {
    let m = verify(&CollectionSpec::from_pairs(&[("O", "O(0)"), ("O(1)", "O(1)")]).unwrap());
    assert_eq!(m.entries[0][1].verdict, Verdict::StrongExtCertified);
    assert_eq!(m.entries[0][1].chi, 20);
    assert_eq!(m.entries[1][0].verdict, Verdict::OrthogonalityCertified);
    assert!(m.undetermined().is_empty());
}

#[test]
fn sl_and_structure_sheaf_are_orthogonal() {
    let m = verify(&CollectionSpec::from_pairs(&[("sl(U1)", "sl(U1)"), ("O", "O(0)")]).unwrap());
    assert_eq!((m.entries[0][1].chi, m.entries[1][0].chi), (0, 0));
    assert!(m.entries[0][1].teleman_pass && m.entries[1][0].teleman_pass);
    assert!(m.undetermined().is_empty());
}

fn expr_strategy() -> impl Strategy<Value = BundleExpr> {
    let leaf = prop_oneof![Just(BundleExpr::U1), Just(BundleExpr::U2), (-3i64..=3).prop_map(BundleExpr::O)];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(BundleExpr::dual),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BundleExpr::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BundleExpr::sum(a, b)),
            inner.clone().prop_map(BundleExpr::sl),
            inner.prop_map(BundleExpr::sym2),
        ]
    })
    .prop_filter("valid", |e| e.rank().is_ok())
}

fn symmetry(g: &BundleExpr) -> BundleExpr {
    BundleExpr::twist(BundleExpr::dual(g.clone()), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetry_functor_preserves_pairing(e in expr_strategy(), f in expr_strategy()) {
        prop_assert_eq!(euler_pairing(&e, &f).unwrap(), euler_pairing(&symmetry(&f), &symmetry(&e)).unwrap());
    }

    #[test]
    fn serre_pairing(e in expr_strategy(), f in expr_strategy()) {
        let shifted = BundleExpr::twist(e.clone(), -3);
        prop_assert_eq!(euler_pairing(&e, &f).unwrap(), euler_pairing(&f, &shifted).unwrap());
    }
}
