use kronmod::bundle::BundleExpr;
use kronmod::chow::{ch_of, chi, todd_y, tangent_chern, ChowElement, BASIS_DEGREES, BASIS_LEN};
use kronmod::linalg;
use kronmod::rational::{frac, int, Q};
use num_traits::Zero;
use proptest::prelude::*;

fn p(text: &str) -> ChowElement {
    ChowElement::parse(text).unwrap()
}

fn ratios(v: &[(i64, i64)]) -> ChowElement {
    ChowElement::from_ratios(v)
}

#[test]
fn top_intersection_numbers() {
    let c1 = ChowElement::c1();
    let c2 = ChowElement::c2();
    let c3 = ChowElement::c3();
    let d2 = ChowElement::d2();
    let cases = [
        (c1.pow(6), 57),
        (&c1.pow(4) * &c2, 27),
        (&c1.pow(4) * &d2, 18),
        (&c1.pow(3) * &c3, 5),
        (&c1.pow(2) * &c2.pow(2), 14),
        (&c1.pow(2) * &d2.pow(2), 6),
        (&(&c1.pow(2) * &c2) * &d2, 9),
        (&(&c1 * &c3) * &d2, 2),
        (&(&c1 * &c2) * &c3, 3),
        (c2.pow(3), 9),
        (&c2.pow(2) * &d2, 5),
        (&c2 * &d2.pow(2), 3),
        (c3.pow(2), 1),
        (d2.pow(3), 2),
    ];
    for (i, (x, n)) in cases.iter().enumerate() {
        assert_eq!(x.integral(), int(*n), "case {i}");
    }
}

#[test]
fn multiplication_is_associative_and_commutative() {
    let basis: Vec<ChowElement> = (0..BASIS_LEN).map(ChowElement::basis).collect();
    for a in &basis {
        for b in &basis {
            assert_eq!(a * b, b * a);
            for c in &basis {
                assert_eq!(&(a * b) * c, a * &(b * c));
            }
        }
    }
}

#[test]
fn products_respect_degree() {
    for (i, di) in BASIS_DEGREES.iter().enumerate() {
        for (j, dj) in BASIS_DEGREES.iter().enumerate() {
            let prod = &ChowElement::basis(i) * &ChowElement::basis(j);
            for (c, dk) in prod.coords().iter().zip(BASIS_DEGREES) {
                if !c.is_zero() {
                    assert_eq!(dk, di + dj);
                }
            }
        }
    }
}

#[test]
fn poincare_pairing_is_perfect() {
    let pairing: Vec<Vec<Q>> = (0..BASIS_LEN)
        .map(|i| (0..BASIS_LEN).map(|j| (&ChowElement::basis(i) * &ChowElement::basis(j)).integral()).collect())
        .collect();
    assert_eq!(linalg::rank(&pairing), BASIS_LEN);
}

/// Power sums of the Chern roots of a class with total Chern class `c`.
fn power_sums(c: &ChowElement) -> Vec<ChowElement> {
    let e: Vec<ChowElement> = (0..=6).map(|k| c.graded(k)).collect();
    let mut p = vec![ChowElement::zero(); 7];
    for k in 1..=6usize {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let mut pk = e[k].scale(&int(sign * k as i64));
        for i in 1..k {
            let s = if i % 2 == 1 { 1 } else { -1 };
            pk = &pk + &(&e[i] * &p[k - i]).scale(&int(s));
        }
        p[k] = pk;
    }
    p
}

fn ch_from_chern(rank: i64, c: &ChowElement) -> ChowElement {
    let p = power_sums(c);
    let mut factorial = 1;
    let mut out = ChowElement::scalar(int(rank));
    for (k, pk) in p.iter().enumerate().skip(1) {
        factorial *= k as i64;
        out = &out + &pk.scale(&frac(1, factorial));
    }
    out
}

#[test]
fn todd_class_from_the_tangent_bundle() {
    // log(x / (1 - e^-x)) = x/2 - x^2/24 + x^4/2880 - x^6/181440
    let p = power_sums(&tangent_chern());
    let log = [
        p[1].scale(&frac(1, 2)),
        p[2].scale(&frac(-1, 24)),
        p[4].scale(&frac(1, 2880)),
        p[6].scale(&frac(-1, 181440)),
    ]
    .iter()
    .fold(ChowElement::zero(), |a, b| &a + b);
    assert_eq!(log.exp().unwrap(), todd_y());
    assert_eq!(todd_y().graded(1), tangent_chern().graded(1).scale(&frac(1, 2)));
}

#[test]
fn euler_number_is_total_rank() {
    assert_eq!(tangent_chern().integral(), int(BASIS_LEN as i64));
}

#[test]
fn character_table_rows() {
    let rows = [
        ("U2", ratios(&[(3, 1), (-1, 1), (1, 2), (-1, 1), (0, 1), (1, 2), (-2, 3), (0, 1), (1, 8), (-7, 24), (1, 8), (-1, 180), (0, 1)])),
        ("sl(dual(U1))", ratios(&[(3, 1), (0, 1), (1, 1), (0, 1), (-4, 1), (0, 1), (0, 1), (0, 1), (-1, 4), (3, 4), (-5, 12), (0, 1), (1, 360)])),
        ("dual(U2)", ratios(&[(3, 1), (1, 1), (1, 2), (-1, 1), (0, 1), (-1, 2), (2, 3), (0, 1), (1, 8), (-7, 24), (1, 8), (1, 180), (0, 1)])),
        ("dual(U1)", ratios(&[(2, 1), (1, 1), (1, 2), (0, 1), (-1, 1), (0, 1), (1, 6), (-1, 2), (-1, 8), (3, 8), (-7, 24), (-1, 120), (-1, 720)])),
        ("twist(U2,1)", ratios(&[(3, 1), (2, 1), (1, 1), (-1, 1), (0, 1), (-1, 2), (4, 3), (-3, 2), (-1, 2), (19, 12), (-5, 4), (-11, 360), (-1, 240)])),
        ("O(1)", ratios(&[(1, 1), (1, 1), (1, 2), (0, 1), (0, 1), (0, 1), (2, 3), (-1, 2), (-1, 8), (3, 8), (1, 8), (19, 120), (19, 240)])),
        ("tensor(dual(U1),U2,O(1))", ratios(&[(6, 1), (7, 1), (11, 2), (-2, 1), (-3, 1), (-2, 1), (55, 6), (-21, 2), (-43, 8), (391, 24), (-83, 8), (89, 360), (53, 240)])),
    ];
    for (text, row) in rows {
        assert_eq!(ch_of(&BundleExpr::parse(text).unwrap()).unwrap(), row, "{text}");
    }
    assert_eq!(ch_of(&BundleExpr::parse("sl(U1)").unwrap()).unwrap(), rows_sl());
}

fn rows_sl() -> ChowElement {
    ch_of(&BundleExpr::parse("sl(dual(U1))").unwrap()).unwrap()
}

#[test]
fn characters_from_chern_classes() {
    assert_eq!(ch_from_chern(3, &p("1 + c1 + c2 + c3")), ch_of(&BundleExpr::parse("dual(U2)").unwrap()).unwrap());
    assert_eq!(ch_from_chern(2, &p("1 + c1 + d2")), ch_of(&BundleExpr::parse("dual(U1)").unwrap()).unwrap());
    assert_eq!(ch_from_chern(1, &p("1 + c1")), ch_of(&BundleExpr::O(1)).unwrap());
}

#[test]
fn orbit_classes() {
    let orbit = p("-3c2d2 + 6d2^2");
    assert_eq!((&p("c1^2") * &orbit).integral(), int(9));
    assert_eq!((&p("d2") * &orbit).integral(), int(3));
    assert_eq!((&p("d2") * &p("3c2d2 - 3d2^2")).integral(), int(3));
}

fn expr_strategy() -> impl Strategy<Value = BundleExpr> {
    let leaf = prop_oneof![Just(BundleExpr::U1), Just(BundleExpr::U2), (-4i64..=4).prop_map(BundleExpr::O)];
    leaf.prop_recursive(3, 10, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(BundleExpr::dual),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BundleExpr::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BundleExpr::sum(a, b)),
            inner.clone().prop_map(BundleExpr::det),
            inner.clone().prop_map(BundleExpr::sl),
            inner.clone().prop_map(BundleExpr::sym2),
            inner.prop_map(BundleExpr::wedge2),
        ]
    })
    .prop_filter("valid", |e| e.rank().is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn serre_duality(e in expr_strategy()) {
        let dual = BundleExpr::tensor(BundleExpr::dual(e.clone()), BundleExpr::O(-3));
        prop_assert_eq!(chi(&e).unwrap(), chi(&dual).unwrap());
    }

    #[test]
    fn ch_is_a_ring_homomorphism(e in expr_strategy(), f in expr_strategy()) {
        let (x, y) = (ch_of(&e).unwrap(), ch_of(&f).unwrap());
        prop_assert_eq!(ch_of(&BundleExpr::sum(e.clone(), f.clone())).unwrap(), &x + &y);
        prop_assert_eq!(ch_of(&BundleExpr::tensor(e.clone(), f.clone())).unwrap(), &x * &y);
        prop_assert_eq!(
            chi(&BundleExpr::sum(e.clone(), f.clone())).unwrap(),
            chi(&e).unwrap() + chi(&f).unwrap()
        );
    }

    #[test]
    fn rank_is_degree_zero_part(e in expr_strategy()) {
        prop_assert_eq!(ch_of(&e).unwrap().coords()[0].clone(), int(e.rank().unwrap() as i64));
    }

    #[test]
    fn double_dual_is_identity(e in expr_strategy()) {
        prop_assert_eq!(ch_of(&BundleExpr::dual(BundleExpr::dual(e.clone()))).unwrap(), ch_of(&e).unwrap());
    }
}
