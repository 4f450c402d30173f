//! Structural invariants on randomly generated posets, permutations and
//! words.

use proptest::prelude::*;

use ptl::cm::{is_cm, is_doubly_cm, is_k_cm, wedge_verdict};
use ptl::coxeter::{abs_length, abs_leq, brady_leq_type_a, kreweras, GroupElement, Permutation};
use ptl::homology::{order_complex, poset_homology, reduced_euler, Coefficients};
use ptl::poset::{is_isomorphic, mobius, mobius_hat, Poset};
use ptl::words::{injective_word_poset, InjectiveWord};

const Q: Coefficients = Coefficients::Rationals;
const Z: Coefficients = Coefficients::Integers;

/// A poset on `p0..p{n-1}` from a random set of pairs `i < j`.
fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let relations: Vec<_> = pairs.into_iter().zip(bits).filter(|(_, b)| *b).map(|(r, _)| r).collect();
            Poset::from_relations(labels, &relations).unwrap()
        })
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u8).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn arb_word(n: u8) -> impl Strategy<Value = InjectiveWord> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_flat_map(move |v| (0..=v.len()).prop_map(move |k| InjectiveWord::new(v[..k].to_vec()).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_roundtrip(p in arb_poset(8)) {
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back = Poset::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn dual_is_an_involution(p in arb_poset(8)) {
        let d = p.dual();
        prop_assert_eq!(d.dual(), p.clone());
        prop_assert_eq!(d.minimal_elements(), p.maximal_elements());
        prop_assert_eq!(d.cover_count(), p.cover_count());
    }

    #[test]
    fn euler_characteristic_is_mobius(p in arb_poset(7)) {
        prop_assert_eq!(reduced_euler(&order_complex(&p)), mobius_hat(&p));
        let h = poset_homology(&p, Z).unwrap();
        prop_assert_eq!(h.euler(), mobius_hat(&p));
    }

    #[test]
    fn mobius_inverts_zeta(p in arb_poset(7)) {
        let mu = mobius(&p);
        // unbounded posets get a table over the bounded extension
        let p = if p.is_bounded() { p } else { p.bounded_extension().0 };
        prop_assert_eq!(&mu.elements, p.labels());
        for x in 0..p.len() {
            for z in 0..p.len() {
                if p.leq(x, z) {
                    let s: i64 = (0..p.len()).filter(|&y| p.leq(x, y) && p.leq(y, z)).map(|y| mu.get(x, y).unwrap()).sum();
                    prop_assert_eq!(s, i64::from(x == z));
                }
            }
        }
    }

    #[test]
    fn integral_and_rational_betti_numbers_agree(p in arb_poset(7)) {
        let hz = poset_homology(&p, Z).unwrap();
        let hq = poset_homology(&p, Q).unwrap();
        for d in -1..=p.longest_chain().unwrap_or(0) as i32 {
            prop_assert_eq!(hz.betti(d), hq.betti(d));
        }
    }

    #[test]
    fn cm_over_integers_implies_cm_over_rationals(p in arb_poset(7)) {
        if is_cm(&p, Z).unwrap().verdict {
            prop_assert!(is_cm(&p, Q).unwrap().verdict);
        }
    }

    #[test]
    fn k_cm_levels(p in arb_poset(6)) {
        let cm = is_cm(&p, Q).unwrap().verdict;
        let two = is_k_cm(&p, 2, Q).unwrap().verdict;
        prop_assert_eq!(is_k_cm(&p, 1, Q).unwrap().verdict, cm);
        prop_assert_eq!(two, is_doubly_cm(&p, Q).unwrap().verdict);
        prop_assert!(!two || cm);
        prop_assert!(!is_k_cm(&p, 3, Q).unwrap().verdict || two);
    }

    #[test]
    fn cm_posets_are_wedges_of_top_spheres(p in arb_poset(7)) {
        if is_cm(&p, Z).unwrap().verdict {
            let w = wedge_verdict(&p).unwrap();
            prop_assert!(w.is_wedge);
            prop_assert!(w.mobius_agrees);
        }
    }

    #[test]
    fn products_add_ranks(p in arb_poset(4), q in arb_poset(4)) {
        let prod = Poset::product(&p, &q);
        prop_assert_eq!(prod.len(), p.len() * q.len());
        prop_assert_eq!(prod.longest_chain(), Some(p.longest_chain().unwrap() + q.longest_chain().unwrap()));
        prop_assert!(is_isomorphic(&prod, &Poset::product(&q, &p)));
        let sum = Poset::ordinal_sum(&p, &q);
        prop_assert_eq!(sum.longest_chain(), Some(p.longest_chain().unwrap() + q.longest_chain().unwrap() + 1));
    }

    #[test]
    fn absolute_length_is_a_length_function(u in arb_perm(6), v in arb_perm(6)) {
        prop_assert_eq!(abs_length(&u.inverse()), abs_length(&u));
        prop_assert!(abs_length(&u.compose(&v)) <= abs_length(&u) + abs_length(&v));
        prop_assert_eq!(abs_length(&v.inverse().compose(&u).compose(&v)), abs_length(&u));
    }

    #[test]
    fn brady_agrees_with_absolute_order(u in arb_perm(7), v in arb_perm(7)) {
        prop_assert_eq!(brady_leq_type_a(&u, &v), abs_leq(&u, &v).unwrap());
    }

    #[test]
    fn kreweras_is_order_reversing(u in arb_perm(6), v in arb_perm(6)) {
        let c = Permutation::standard_coxeter(6);
        if abs_leq(&u, &c).unwrap() && abs_leq(&v, &c).unwrap() {
            let (ku, kv) = (kreweras(&u, &c).unwrap(), kreweras(&v, &c).unwrap());
            prop_assert_eq!(abs_length(&ku), abs_length(&c) - abs_length(&u));
            prop_assert!(abs_leq(&ku, &c).unwrap());
            prop_assert_eq!(abs_leq(&u, &v).unwrap(), abs_leq(&kv, &ku).unwrap());
        }
    }

    #[test]
    fn word_deletion_and_subwords(w in arb_word(6), a in 1u8..=6) {
        let d = w.delete(a);
        prop_assert!(d.is_subword_of(&w));
        prop_assert!(!d.contains(a));
        prop_assert_eq!(d.len() + usize::from(w.contains(a)), w.len());
        prop_assert_eq!(d.content(), w.content() & !(1u64 << (a - 1)) & w.content());
        prop_assert_eq!(InjectiveWord::parse(&w.label(6)).unwrap(), w);
    }
}

#[test]
fn word_intervals_are_boolean() {
    let i4 = injective_word_poset(4).unwrap();
    let bottom = i4.require("").unwrap();
    for top in 0..i4.len() {
        let iv = i4.interval(bottom, top, false).unwrap();
        let k = i4.label(top).len();
        assert!(is_isomorphic(&iv, &Poset::boolean_algebra(k)), "[∅, {}] is not Boolean", i4.label(top));
    }
}
