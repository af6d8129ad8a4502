use proptest::prelude::*;
use stabkit::k3::{mukai_vector, K3Model, MukaiVector, PeriodClass, PeriodPoint};
use stabkit::lattice::LatticeVector;
use stabkit::scalar::{int, rat};
use stabkit::Rational;

fn grams() -> Vec<Vec<Vec<i64>>> {
    stabkit::selftest::test_ns_grams()
}

fn model(i: usize) -> K3Model {
    K3Model::new(grams()[i % 4].clone(), None).unwrap()
}

/// Walls found by scanning a box directly with the pairing.
fn naive_walls(m: &K3Model, p: &PeriodPoint<Rational>, bound: i64) -> Vec<MukaiVector> {
    let l = m.mukai_lattice();
    let mut out: Vec<MukaiVector> = l
        .enumerate_norm(-2, bound)
        .unwrap()
        .into_iter()
        .map(|v| MukaiVector::from_lattice(&v))
        .filter(|v| {
            let (re, im) = p.charge(m, v).unwrap();
            re == int(0) && im == int(0)
        })
        .collect();
    out.sort();
    out
}

#[test]
fn structure_of_mukai_lattices() {
    for (i, g) in grams().into_iter().enumerate() {
        let rho = g.len();
        let m = model(i);
        let l = m.mukai_lattice();
        assert!(l.is_even());
        assert_eq!(l.signature(), (2, rho, 0));
        let o = mukai_vector(1, vec![0; rho], 0);
        assert_eq!(o, MukaiVector::new(1, vec![0; rho], 1));
        assert_eq!(m.euler_form(&o, &o).unwrap(), 2);
        assert_eq!(m.pair(&o, &o).unwrap(), -2);
    }
}

proptest! {
    #[test]
    fn pairing_formula(i in 0usize..4, x in prop::collection::vec(-8i64..=8, 6)) {
        // (v, v) = D^2 - 2 r s
        let m = model(i);
        let v = MukaiVector::from_lattice(&LatticeVector(x[..m.rho() + 2].to_vec()));
        let d2 = m.ns().norm(&LatticeVector(v.d.clone())).unwrap();
        prop_assert_eq!(m.pair(&v, &v).unwrap(), d2 - 2 * v.r * v.s);
        prop_assert_eq!(m.euler_form(&v, &v).unwrap(), -m.pair(&v, &v).unwrap());
    }

    #[test]
    fn twists_preserve_pairing(
        i in 0usize..4,
        pick in 0usize..1000,
        x in prop::collection::vec(-8i64..=8, 6),
        y in prop::collection::vec(-8i64..=8, 6),
    ) {
        let m = model(i);
        let n = m.rho() + 2;
        let deltas = m.delta_set(1).unwrap();
        let s = &deltas[pick % deltas.len()];
        let v = MukaiVector::from_lattice(&LatticeVector(x[..n].to_vec()));
        let w = MukaiVector::from_lattice(&LatticeVector(y[..n].to_vec()));
        let tv = m.spherical_twist_class(s, &v).unwrap();
        let tw = m.spherical_twist_class(s, &w).unwrap();
        prop_assert_eq!(m.pair(&tv, &tw).unwrap(), m.pair(&v, &w).unwrap());
        prop_assert_eq!(m.spherical_twist_class(s, &tv).unwrap(), v);
        prop_assert_eq!(m.spherical_twist_class(s, s).unwrap(), s.neg());
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugation_swaps_components(i in 0usize..4, b in prop::collection::vec(-2i64..=2, 4), t in 2i64..=3) {
        let m = model(i);
        let rho = m.rho();
        let beta: Vec<Rational> = b[..rho].iter().map(|&x| rat(x, 2)).collect();
        let omega: Vec<Rational> = m.reference_ample().0.iter().map(|&x| int(t * x)).collect();
        let p = PeriodPoint::exp_b_field(&m, &beta, &omega).unwrap();
        let c = m.classify_period(&p, None).unwrap();
        let cc = m.classify_period(&p.conjugate(), None).unwrap();
        match (&c.class, &cc.class) {
            (PeriodClass::InP0Plus, PeriodClass::InP0Minus) => {}
            (PeriodClass::OnWall(w1), PeriodClass::OnWall(w2)) => prop_assert_eq!(w1, w2),
            other => prop_assert!(false, "unexpected pair {:?}", other),
        }
        prop_assert!(c.complete);
    }


    #[test]
    fn wall_scan_is_complete(i in 0usize..4, b in prop::collection::vec(-2i64..=2, 4), d in 1i64..=2) {
        let m = model(i);
        let rho = m.rho();
        let beta: Vec<Rational> = b[..rho].iter().map(|&x| rat(x, d)).collect();
        let omega: Vec<Rational> = m.reference_ample().0.iter().map(|&x| int(x)).collect();
        let p = PeriodPoint::exp_b_field(&m, &beta, &omega).unwrap();
        let c = m.classify_period(&p, None).unwrap();
        let bound = c.required_box.unwrap();
        // a box beyond the proven bound finds nothing new
        let extra = naive_walls(&m, &p, if rho >= 3 { bound + 1 } else { 2 * bound });
        match c.class {
            PeriodClass::OnWall(mut w) => {
                w.sort();
                prop_assert_eq!(w, extra);
            }
            PeriodClass::InP0Plus | PeriodClass::InP0Minus => prop_assert!(extra.is_empty()),
            other => prop_assert!(false, "{:?}", other),
        }
    }
}

#[test]
fn exp_t_h_only_hits_a_wall_at_t_one() {
    let m = model(0);
    for (num, den) in [(1, 2), (2, 3), (1, 1), (3, 2), (2, 1), (7, 3), (10, 1)] {
        let t = rat(num, den);
        let p = PeriodPoint::exp_i(&m, std::slice::from_ref(&t)).unwrap();
        let c = m.classify_period(&p, None).unwrap();
        if num == den {
            let PeriodClass::OnWall(w) = c.class else { panic!("t = 1 must be on a wall") };
            assert_eq!(w, vec![MukaiVector::new(-1, vec![0], -1), MukaiVector::new(1, vec![0], 1)]);
        } else {
            assert_eq!(c.class, PeriodClass::InP0Plus, "t = {t}");
            assert_eq!(naive_walls(&m, &p, 6), Vec::<MukaiVector>::new());
        }
    }
}

#[test]
fn forced_small_box_is_flagged_incomplete() {
    let m = model(3);
    let p = m.reference_period::<Rational>().unwrap();
    let c = m.classify_period(&p, None).unwrap();
    let needed = c.required_box.unwrap();
    if needed > 1 {
        let small = m.classify_period(&p, Some(1)).unwrap();
        assert!(!small.complete);
        assert_eq!(small.box_used, Some(1));
    }
    let bigger = m.classify_period(&p, Some(needed + 1)).unwrap();
    assert!(bigger.complete);
    assert_eq!(bigger.class.label(), c.class.label());
}
