use proptest::prelude::*;
use stabkit::flop::{
    classify_conifold, conifold_charge, AdeConfig, AdeType, ConifoldClass, Region, SlicePoint,
};
use stabkit::lattice::LatticeVector;
use stabkit::scalar::{int, rat};
use stabkit::Rational;

fn small_types() -> Vec<AdeType> {
    vec![AdeType::A(1), AdeType::A(2), AdeType::A(3), AdeType::D(4), AdeType::D(5), AdeType::E6]
}

#[test]
fn root_sets_are_weyl_invariant() {
    for kind in small_types() {
        let c = AdeConfig::new(kind).unwrap();
        let roots = c.roots();
        assert_eq!(roots.len(), kind.root_count(), "{kind}");
        assert_eq!(c.positive_roots().count() * 2, roots.len());
        for a in roots {
            assert_eq!(c.lattice().norm(a).unwrap(), 2);
            let mut image: Vec<LatticeVector> = roots.iter().map(|b| c.reflect(a, b).unwrap()).collect();
            image.sort();
            assert_eq!(image, roots, "{kind}: s_{a:?} permutes the roots");
        }
    }
}

#[test]
fn root_box_is_the_smallest_that_works() {
    // one box less loses roots: the constants are tight
    for kind in [AdeType::D(4), AdeType::E6] {
        let c = AdeConfig::from_cartan(kind.cartan(), kind.root_box() - 1).unwrap();
        assert!(c.roots().len() < kind.root_count(), "{kind}");
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn maybe_zero() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(int(0)), rational()]
}

proptest! {
    #[test]
    fn toda_complement_matches_root_scan(
        kind in prop::sample::select(small_types()),
        raw in prop::collection::vec((rational(), maybe_zero()), 6),
    ) {
        let c = AdeConfig::new(kind).unwrap();
        let r = c.rank();
        let beta: Vec<Rational> = raw[..r].iter().map(|x| x.0.clone()).collect();
        let omega: Vec<Rational> = raw[..r].iter().map(|x| x.1.clone()).collect();
        let p = SlicePoint::new(beta, omega).unwrap();
        let excluded = c.roots().iter().any(|a| {
            let (b, w) = p.pair_curve(a.coords());
            w == int(0) && b.is_integer()
        });
        prop_assert_eq!(c.in_toda_complement(&p).unwrap().is_in(), !excluded);
    }

    #[test]
    fn twisting_shifts_the_chamber(b in rational(), w in maybe_zero(), k in -5i64..=5) {
        let p = SlicePoint::rank_one(b, w);
        let d = classify_conifold(&p).unwrap();
        let t = classify_conifold(&p.twisted(k)).unwrap();
        prop_assert_eq!(t.twist, d.twist + k);
        let expected = match d.region {
            Region::PerverseFace(j) => Region::PerverseFace(j + k),
            other => other,
        };
        prop_assert_eq!(t.region, expected);
    }

    #[test]
    fn excluded_iff_a_curve_sheaf_is_massless(b in rational(), w in maybe_zero()) {
        let p = SlicePoint::rank_one(b.clone(), w.clone());
        let d = classify_conifold(&p).unwrap();
        let massless = (-40..=40).any(|k| {
            let z = conifold_charge(&p, ConifoldClass::curve_sheaf(k)).unwrap();
            z.re == int(0) && z.im == int(0)
        });
        prop_assert_eq!(d.region == Region::Excluded, massless);
        let a1 = AdeConfig::new(AdeType::A(1)).unwrap();
        prop_assert_eq!(a1.in_toda_complement(&p).unwrap().is_in(), !massless);
    }

    #[test]
    fn charges_are_additive(b in rational(), w in rational(), m1 in -5i64..=5, n1 in -5i64..=5, m2 in -5i64..=5, n2 in -5i64..=5) {
        let p = SlicePoint::rank_one(b, w);
        let (x, y) = (ConifoldClass::new(m1, n1), ConifoldClass::new(m2, n2));
        let zx = conifold_charge(&p, x).unwrap();
        let zy = conifold_charge(&p, y).unwrap();
        let zs = conifold_charge(&p, x.plus(y)).unwrap();
        prop_assert_eq!(zs, zx + zy);
        let zsh = conifold_charge(&p, x.shift()).unwrap();
        prop_assert_eq!(zsh, -conifold_charge(&p, x).unwrap());
    }
}

#[test]
fn grid_of_ten_thousand_points() {
    let a1 = AdeConfig::new(AdeType::A(1)).unwrap();
    let mut excluded = 0;
    for i in 0..100i64 {
        for j in 0..100i64 {
            let p = SlicePoint::rank_one(rat(i - 50, 10), rat(j - 50, 10));
            let d = classify_conifold(&p).unwrap();
            let by_definition = j == 50 && (i - 50) % 10 == 0;
            assert_eq!(d.region == Region::Excluded, by_definition, "({i}, {j})");
            assert_eq!(a1.in_toda_complement(&p).unwrap().is_in(), !by_definition);
            excluded += usize::from(by_definition);
        }
    }
    assert_eq!(excluded, 10);
}
