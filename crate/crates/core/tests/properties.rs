use num::{One, Zero};
use proptest::prelude::*;
use ybd_core::scalars::{format_scalar, parse_scalar, Monomial};
use ybd_core::standard_p::{build_standard_p, check_braid, check_hecke, convert_p_r, BraidForm};
use ybd_core::tensorspace::Legs;
use ybd_core::{Cyc, Jet, PairOp, ParamSet, Ring};

fn small() -> impl Strategy<Value = i64> {
    -6i64..=6
}

fn cyc() -> impl Strategy<Value = Cyc> {
    (small(), 1i64..=5, small(), 1i64..=5).prop_map(|(a, b, c, d)| Cyc::frac(a, b) + Cyc::frac(c, d) * Cyc::omega())
}

fn nonzero_rational() -> impl Strategy<Value = Cyc> {
    (1i64..=7, 1i64..=7, any::<bool>()).prop_map(|(a, b, s)| Cyc::frac(if s { a } else { -a }, b))
}

fn jet() -> impl Strategy<Value = Jet> {
    (cyc(), cyc(), cyc()).prop_map(|(a, b, c)| Jet::new(a, b, c))
}

fn pair_op(n: usize) -> impl Strategy<Value = PairOp> {
    let m = n as u8;
    proptest::collection::vec(((1..=m, 1..=m), (1..=m, 1..=m), small()), 0..8).prop_map(move |es| {
        let mut op = PairOp::zero(n);
        for ((i, j), (k, l), v) in es {
            op.add_entry([i, j], [k, l], &Cyc::from_int(v));
        }
        op
    })
}

fn params(n: usize) -> impl Strategy<Value = ParamSet> {
    let pairs = n * (n - 1) / 2;
    (proptest::collection::vec(nonzero_rational(), pairs), prop_oneof![Just(2), Just(3), Just(5), Just(-2)]).prop_map(
        move |(qs, a)| {
            let mut it = qs.into_iter();
            let q = (1..=n as u8)
                .flat_map(|i| (i + 1..=n as u8).map(move |j| (i, j)))
                .map(|p| (p, it.next().unwrap()))
                .collect();
            ParamSet::new(n, Cyc::from_int(a), q).unwrap()
        },
    )
}

proptest! {
    #[test]
    fn cyc_field_axioms(x in cyc(), y in cyc(), z in cyc()) {
        prop_assert_eq!((x.clone() + y.clone()) + z.clone(), x.clone() + (y.clone() + z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        if !x.is_zero() {
            prop_assert!((x.clone() * x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn omega_is_primitive_cube_root(x in cyc()) {
        let w = Cyc::omega();
        prop_assert!(w.pow(3).unwrap().is_one());
        prop_assert!((Cyc::one() + w.clone() + w.clone() * w).is_zero());
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn scalar_text_round_trip(x in cyc()) {
        prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
    }

    #[test]
    fn jet_ring_axioms(x in jet(), y in jet(), z in jet()) {
        prop_assert_eq!(x.mul_ref(&y).mul_ref(&z), x.mul_ref(&y.mul_ref(&z)));
        prop_assert_eq!(x.mul_ref(&(y.clone() + z.clone())), x.mul_ref(&y) + x.mul_ref(&z));
        if !x.coeff(0).is_zero() {
            prop_assert!(x.mul_ref(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn monomial_group_laws(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
        let m = Monomial::var("a", a, false).mul(&Monomial::var("u1", b, false)).unwrap();
        let n = Monomial::var("u1", c, false);
        prop_assert!(m.mul(&m.inv()).unwrap().is_one());
        prop_assert_eq!(m.mul(&n).unwrap(), n.mul(&m).unwrap());
        prop_assert_eq!(m.pow(2), m.mul(&m).unwrap());
    }

    #[test]
    fn compose_is_associative(a in pair_op(2), b in pair_op(2), c in pair_op(2)) {
        let l = a.compose(&b).unwrap().compose(&c).unwrap();
        let r = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn lift_is_a_homomorphism(a in pair_op(3), b in pair_op(3)) {
        for legs in [Legs::L12, Legs::L23, Legs::L13] {
            let ab = a.compose(&b).unwrap().lift(legs);
            prop_assert_eq!(ab, a.lift(legs).compose(&b.lift(legs)).unwrap());
        }
    }

    #[test]
    fn flips_are_involutions(a in pair_op(3)) {
        prop_assert_eq!(a.flip_output().flip_output(), a.clone());
        prop_assert_eq!(a.flip_conjugate().flip_conjugate(), a.clone());
        let s = PairOp::flip(3);
        prop_assert_eq!(a.flip_conjugate(), s.compose(&a).unwrap().compose(&s).unwrap());
        prop_assert_eq!(a.flip_output(), a.compose(&s).unwrap());
    }

    #[test]
    fn json_round_trip(a in pair_op(3)) {
        prop_assert_eq!(PairOp::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn standard_p_is_a_hecke_braid_symmetry(p in params(3)) {
        let op = build_standard_p(&p);
        prop_assert!(check_hecke(&op, p.a()).unwrap().pass);
        prop_assert!(check_braid(&op, BraidForm::Braid).pass);
        prop_assert!(check_braid(&convert_p_r(&op), BraidForm::Qybe).pass);
    }
}
