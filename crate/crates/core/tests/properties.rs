use denniston::ff::{Elem, FiniteField};
use denniston::params::{self, Family};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![(Just(2u32), 1u32..=10), (Just(3u32), 1u32..=6), (Just(5u32), 1u32..=4), (Just(7u32), 1u32..=3)]
}

proptest! {
    #[test]
    fn field_axioms((p, n) in field_strategy(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = FiniteField::new(p, n).unwrap();
        let el = |x: u32| f.from_packed(x % f.order());
        let (x, y, z) = (el(a), el(b), el(c));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
        prop_assert_eq!(f.sub(f.add(x, y), y), x);
        if x != Elem::Zero {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
        prop_assert_eq!(f.frobenius(f.mul(x, y), 1), f.mul(f.frobenius(x, 1), f.frobenius(y, 1)));
    }

    #[test]
    fn closed_forms_are_consistent(
        (p, s) in prop_oneof![(Just(2u32), 1u32..=3), (Just(3u32), 1u32..=2), (Just(5u32), Just(1u32))],
        m in 1u32..=4,
        l in 1u32..=3,
        r_frac in 0.0f64..=1.0,
    ) {
        let r = (r_frac * m as f64).round() as u32;
        let rep = params::param_report(p, s, m, l, r).unwrap();
        prop_assert!(rep.primal.satisfies_identity());
        prop_assert!(rep.dual.satisfies_identity());
        prop_assert_eq!(params::delsarte_dual_params(&rep.dual).unwrap(), rep.primal);
        let q = rep.q;
        prop_assert_eq!(params::complement_params(&rep.primal), params::family_params(Family::Dual, q, m, l, m - r).unwrap());
        prop_assert_eq!(rep.code.n * (q as i128 - 1), rep.primal.k);
    }
}
