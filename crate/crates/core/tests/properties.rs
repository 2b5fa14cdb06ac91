use affine_pbw::pairing::pair_monomials;
use affine_pbw::pbw::{ExpEntry, ExpVec, Normalization};
use affine_pbw::qlaurent::{eval_at_root_of_unity, is_regular_at, parse_ratfunc, LaurentPoly, RatFunc};
use affine_pbw::rootsys::{build_iota, enumerate_ordered_roots, CartanData};
use affine_pbw::series::{phi_transform, psi_transform, SeriesVec};
use proptest::prelude::*;

const TYPES: [&str; 8] = ["A1", "A3", "B3", "C2", "D4", "E6", "F4", "G2"];

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..3, prop::collection::vec(-4i64..=4, 1..4)).prop_map(|(low, c)| LaurentPoly::from_int_coeffs(low, &c))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), laurent()).prop_filter_map("nonzero denominator", |(n, d)| RatFunc::new(&n, &d).ok())
}

fn data(t: &str) -> CartanData {
    CartanData::new(t.parse().unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn display_round_trips(a in ratfunc()) {
        prop_assert_eq!(parse_ratfunc(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn bar_is_an_involutive_automorphism(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
    }

    #[test]
    fn evaluation_is_multiplicative(a in ratfunc(), b in ratfunc(), ell in 1u64..12) {
        if is_regular_at(&a, ell) && is_regular_at(&b, ell) {
            let ab = eval_at_root_of_unity(&(&a * &b), ell).unwrap();
            let prod = eval_at_root_of_unity(&a, ell).unwrap().mul(&eval_at_root_of_unity(&b, ell).unwrap());
            prop_assert_eq!(ab, prod);
        }
    }

    #[test]
    fn psi_phi_inverse(xs in prop::collection::vec(ratfunc(), 1..7)) {
        let s = SeriesVec::with_unit_constant(xs);
        prop_assert_eq!(phi_transform(&psi_transform(&s).unwrap()).unwrap(), s.clone());
        prop_assert_eq!(psi_transform(&phi_transform(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn reflections_are_isometric_involutions(
        t in prop::sample::select(TYPES.to_vec()),
        v in prop::collection::vec(-5i64..=5, 9),
        w in prop::collection::vec(-5i64..=5, 9),
        i in 0usize..9,
    ) {
        let c = data(t);
        let n = c.size();
        let (v, w, i) = (&v[..n], &w[..n], i % n);
        prop_assert_eq!(c.reflect(i, &c.reflect(i, v)), v.to_vec());
        prop_assert_eq!(c.bilinear(&c.reflect(i, v), &c.reflect(i, w)), c.bilinear(v, w));
        prop_assert_eq!(c.bilinear(v, w), c.bilinear(w, v));
    }

    #[test]
    fn order_is_total_and_transitive(t in prop::sample::select(vec!["A1", "A2", "C2", "G2"]), a in 0usize..400, b in 0usize..400, d in 0usize..400) {
        let c = data(t);
        let order = enumerate_ordered_roots(&c, &build_iota(&c, 3).unwrap(), 3);
        let roots: Vec<_> = order.roots().cloned().collect();
        let (x, y, z) = (&roots[a % roots.len()], &roots[b % roots.len()], &roots[d % roots.len()]);
        let xy = order.compare(x, y).unwrap();
        prop_assert_eq!(xy, order.compare(y, x).unwrap().reverse());
        prop_assert_eq!(xy == std::cmp::Ordering::Equal, x == y);
        if xy.is_le() && order.compare(y, z).unwrap().is_le() {
            prop_assert!(order.compare(x, z).unwrap().is_le());
        }
    }

    #[test]
    fn weight_is_additive_and_pairing_symmetric(
        t in prop::sample::select(vec!["A2", "C2", "G2"]),
        picks in prop::collection::vec((0usize..200, 1u32..3), 0..4),
        more in prop::collection::vec((0usize..200, 1u32..3), 0..4),
    ) {
        let c = data(t);
        let order = enumerate_ordered_roots(&c, &build_iota(&c, 2).unwrap(), 2);
        let roots: Vec<_> = order.roots().cloned().collect();
        let make = |p: &[(usize, u32)]| {
            let mut seen = std::collections::BTreeSet::new();
            let entries = p
                .iter()
                .filter(|(i, _)| seen.insert(i % roots.len()))
                .map(|&(i, exp)| {
                    let root = roots[i % roots.len()].clone();
                    ExpEntry { normalization: Normalization::divided_for(&root), root, exp }
                })
                .collect();
            ExpVec::ordered(&order, entries).unwrap()
        };
        let (u, v) = (make(&picks), make(&more));
        let sum: Vec<i64> = u.weight(&c).iter().zip(v.weight(&c)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(u.merge(&v, &order).unwrap().weight(&c), sum);
        let one = |_: i64, _: usize| RatFunc::one();
        prop_assert_eq!(pair_monomials(&c, &u, &v, &one), pair_monomials(&c, &v, &u, &one));
    }
}
