//! Worked examples for each operation, small enough to check by hand.

use std::sync::Arc;

use ptl::cm::{is_cm, is_doubly_cm, is_k_cm, wedge_verdict, FailureReason};
use ptl::constructible::{
    certificate_for_in, certificate_product_chain, remove_maximal, verify_certificate, Certificate, ConstructError,
    LeafKind,
};
use ptl::coxeter::{
    abs_length, abs_leq, brady_leq_type_a, coxeter_ideal, cycle_deletion_map, kreweras, nc_lattice,
    verify_fixpoint_lemma, CoxeterError, CoxeterType, GroupElement, Permutation, SignedPermutation,
};
use ptl::fiber::{FiberError, FiberVerifier};
use ptl::homology::{
    homological_connectivity, order_complex, reduced_euler, reduced_homology, Coefficients, SimplicialComplex,
};
use ptl::poset::{find_isomorphism, is_isomorphic, mobius, Poset, PosetError, PosetMap};
use ptl::words::{
    content_map, delete_letter, gamma_complex, gamma_poset_restricted, gamma_quotient, injective_word_poset,
    verify_fiber_ideal_claim, verify_word_deletion_claim, without_minimum_members, word_deletion_map, InjectiveWord,
};

const Q: Coefficients = Coefficients::Rationals;
const Z: Coefficients = Coefficients::Integers;

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn simplex(n: usize) -> SimplicialComplex {
    SimplicialComplex::new(n, vec![(0..n).collect()]).unwrap()
}

fn boundary_of_simplex(n: usize) -> SimplicialComplex {
    SimplicialComplex::new(n, (0..n).map(|i| (0..n).filter(|&j| j != i).collect()).collect()).unwrap()
}

fn hollow_triangle() -> SimplicialComplex {
    boundary_of_simplex(3)
}

fn punctured(p: &Poset) -> Poset {
    p.induced(&without_minimum_members(p))
}

// poset core

#[test]
fn from_covers_validation() {
    assert_eq!(Poset::from_covers(&["a"], &[]).unwrap().len(), 1);
    assert!(matches!(Poset::from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]), Err(PosetError::CycleDetected(_))));
    assert!(matches!(
        Poset::from_covers(&["0", "1", "2"], &[("0", "1"), ("1", "2"), ("0", "2")]),
        Err(PosetError::RedundantCover(..))
    ));
}

#[test]
fn gradedness() {
    let c = Poset::chain(2);
    assert!(c.is_graded());
    assert_eq!(c.rank().unwrap(), 1);
    let v = Poset::from_covers(&["a", "b", "c", "d", "e"], &[("a", "c"), ("b", "c"), ("a", "d"), ("d", "e")]).unwrap();
    assert!(!v.is_graded());
    let i3 = injective_word_poset(3).unwrap();
    assert!(i3.is_graded());
    assert_eq!(i3.rank().unwrap(), 3);
}

#[test]
fn intervals_and_ideals() {
    let c = Poset::chain(3);
    let whole = c.interval(0, 2, false).unwrap();
    assert!(is_isomorphic(&whole, &Poset::chain(3)));
    assert!(c.interval(1, 1, true).unwrap().is_empty());

    let i5 = injective_word_poset(5).unwrap();
    let iv = i5.interval(i5.require("12").unwrap(), i5.require("12345").unwrap(), false).unwrap();
    assert!(is_isomorphic(&iv, &Poset::boolean_algebra(3)));

    let i3 = injective_word_poset(3).unwrap();
    assert_eq!(i3.order_ideal(&i3.maximal_elements()).len(), i3.len());
    let b = Poset::boolean_algebra(3);
    assert_eq!(b.order_ideal(&[b.minimum().unwrap()]).len(), 1);
    let ideal = i3.order_ideal_by_labels(&["12", "21"]).unwrap();
    assert_eq!(ideal.labels(), ["", "1", "12", "2", "21"]);
}

#[test]
fn duality() {
    assert!(Poset::chain(4).is_self_dual());
    let v = Poset::from_covers(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
    assert_eq!(v.dual().minimal_elements().len(), 2);
    assert!(!v.is_self_dual());

    let abs = ptl::coxeter::abs_poset(&Permutation::all(4)).unwrap();
    let ideal = abs.order_ideal_by_labels(&["c(1,2,3,4)"]).unwrap();
    assert!(ideal.is_self_dual());
}

#[test]
fn products_and_sums() {
    let b2 = Poset::product(&Poset::chain(2), &Poset::chain(2));
    assert!(is_isomorphic(&b2, &Poset::boolean_algebra(2)));
    let two = Poset::ordinal_sum(&Poset::chain(1), &Poset::chain(1));
    assert!(is_isomorphic(&two, &Poset::chain(2)));
    let p = Poset::product(&injective_word_poset(2).unwrap(), &Poset::two_chain());
    assert_eq!(p.len(), 10);
    assert!(p.is_graded());
    assert_eq!(p.rank().unwrap(), 3);
}

#[test]
fn mobius_values() {
    assert_eq!(mobius(&Poset::chain(2)).bottom_top(), -1);
    assert_eq!(mobius(&Poset::chain(3)).bottom_top(), 0);
    let proper = nc_lattice(CoxeterType::A, 3).unwrap().proper_part().unwrap();
    let (hat, bot, top) = proper.bounded_extension();
    assert_eq!(mobius(&hat).get(bot, top), Some(2));
}

#[test]
fn map_checks() {
    let i3 = Arc::new(injective_word_poset(3).unwrap());
    assert!(PosetMap::identity(i3).check().all());

    let point = Arc::new(Poset::chain(1));
    let chain = Arc::new(Poset::chain(2));
    let constant = PosetMap::new(chain, point, vec![0, 0]).unwrap();
    let c = constant.check();
    assert!(c.order_preserving && c.surjective);
    assert_eq!(c.rank_preserving, Some(false));

    assert!(word_deletion_map(3).unwrap().check().all());
}

#[test]
fn isomorphisms() {
    assert!(is_isomorphic(&Poset::boolean_algebra(2), &Poset::product(&Poset::two_chain(), &Poset::two_chain())));
    let (b2_hat, _, _) = Poset::boolean_algebra(2).bounded_extension();
    assert!(!is_isomorphic(&Poset::chain(4), &b2_hat));
    let i3 = injective_word_poset(3).unwrap();
    let iv = i3.interval(i3.require("").unwrap(), i3.require("312").unwrap(), false).unwrap();
    let witness = find_isomorphism(&iv, &Poset::boolean_algebra(3)).expect("witness");
    assert_eq!(witness.len(), 8);
}

// homology

#[test]
fn order_complexes() {
    let k = order_complex(&Poset::antichain(3));
    assert_eq!(k.f_vector(), [1, 3]);
    let k = order_complex(&Poset::chain(3));
    assert_eq!(k.facets().len(), 1);
    assert_eq!(k.dimension(), Some(2));
    let hex = order_complex(&Poset::boolean_algebra(3).proper_part().unwrap());
    assert_eq!(hex.f_vector(), [1, 6, 6]);
}

#[test]
fn reduced_homology_examples() {
    let h = reduced_homology(&hollow_triangle(), Z).unwrap();
    assert_eq!([h.betti(-1), h.betti(0), h.betti(1)], [0, 0, 1]);
    let nc3 = order_complex(&nc_lattice(CoxeterType::A, 3).unwrap().proper_part().unwrap());
    assert_eq!(reduced_homology(&nc3, Q).unwrap().betti(0), 2);
}

#[test]
fn euler_characteristics() {
    assert_eq!(reduced_euler(&simplex(1)), 0);
    assert_eq!(reduced_euler(&hollow_triangle()), -1);
    let bar = punctured(&injective_word_poset(4).unwrap());
    assert_eq!(reduced_euler(&order_complex(&bar)), -9);
}

#[test]
fn connectivity() {
    let hex = order_complex(&Poset::boolean_algebra(3).proper_part().unwrap());
    assert!(homological_connectivity(&hex, 0).unwrap());
    assert!(!homological_connectivity(&hex, 1).unwrap());
    let two_points = SimplicialComplex::new(2, vec![vec![0], vec![1]]).unwrap();
    assert!(!homological_connectivity(&two_points, 0).unwrap());
    let i3 = order_complex(&punctured(&injective_word_poset(3).unwrap()));
    assert!(homological_connectivity(&i3, 1).unwrap());
    assert!(!homological_connectivity(&i3, 2).unwrap());
    assert_eq!(reduced_homology(&i3, Z).unwrap().betti(2), 2);
}

// Cohen-Macaulay checks

#[test]
fn cm_examples() {
    assert!(is_cm(&Poset::chain(5), Q).unwrap().verdict);
    assert!(is_cm(&Poset::boolean_algebra(3).proper_part().unwrap(), Z).unwrap().verdict);
    let broken = Poset::from_covers(&["a", "b", "c"], &[("a", "b")]).unwrap();
    assert!(!is_cm(&broken, Q).unwrap().verdict);
}

#[test]
fn doubly_cm_examples() {
    for coeff in [Q, Z] {
        assert!(is_doubly_cm(&Poset::boolean_algebra(3).proper_part().unwrap(), coeff).unwrap().verdict);
        let r = is_doubly_cm(&Poset::chain(2), coeff).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.reason, Some(FailureReason::RankChanged));
        assert!(is_doubly_cm(&nc_lattice(CoxeterType::A, 4).unwrap().proper_part().unwrap(), coeff).unwrap().verdict);
    }
}

#[test]
fn k_cm_examples() {
    let hex = Poset::boolean_algebra(3).proper_part().unwrap();
    assert_eq!(is_k_cm(&hex, 1, Q).unwrap().verdict, is_cm(&hex, Q).unwrap().verdict);
    assert!(is_k_cm(&hex, 2, Q).unwrap().verdict);
    assert!(!is_k_cm(&hex, 3, Q).unwrap().verdict);
    assert!(is_k_cm(&Poset::boolean_algebra(4).proper_part().unwrap(), 2, Q).unwrap().verdict);
}

#[test]
fn wedge_examples() {
    let w = wedge_verdict(&nc_lattice(CoxeterType::A, 3).unwrap().proper_part().unwrap()).unwrap();
    assert!(w.is_wedge);
    assert_eq!((w.sphere_count, w.dimension), (2, 0));
    let w = wedge_verdict(&punctured(&injective_word_poset(4).unwrap())).unwrap();
    assert_eq!((w.sphere_count, w.dimension), (9, 3));
    assert!(w.mobius_agrees);
    assert_eq!(wedge_verdict(&Poset::chain(3)).unwrap().sphere_count, 0);
}

// absolute order

#[test]
fn absolute_length_examples() {
    assert_eq!(abs_length(&Permutation::identity(4)), 0);
    assert_eq!(abs_length(&perm("c(1,2,3,4)")), 3);
    let balanced: SignedPermutation = "b[1,2]".parse().unwrap();
    assert_eq!(abs_length(&balanced), 2);
}

#[test]
fn absolute_order_examples() {
    let c = perm("c(1,2,3,4)");
    for w in Permutation::all(4) {
        assert!(abs_leq(&Permutation::identity(4), &w).unwrap());
    }
    assert!(abs_leq(&perm("c(1,2)(3)(4)"), &c).unwrap());
    assert!(!abs_leq(&perm("c(1,3)(2)(4)"), &perm("c(1,2)(3,4)")).unwrap());
    assert!(matches!(abs_leq(&perm("c(1,2)"), &c), Err(CoxeterError::GroupMismatch(2, 4))));
}

#[test]
fn brady_criterion_examples() {
    let c = perm("c(1,2,3,4)");
    assert!(!brady_leq_type_a(&perm("c(1,3)(2)(4)"), &perm("c(1,2)(3,4)")));
    assert!(!brady_leq_type_a(&perm("c(1,3)(2,4)"), &c));
    assert!(brady_leq_type_a(&perm("c(1,2)(3,4)"), &c));
}

#[test]
fn nc_lattice_examples() {
    let a3 = nc_lattice(CoxeterType::A, 3).unwrap();
    assert_eq!((a3.len(), a3.rank().unwrap()), (5, 2));
    assert_eq!(nc_lattice(CoxeterType::A, 4).unwrap().len(), 14);
    let b2 = nc_lattice(CoxeterType::B, 2).unwrap();
    assert_eq!((b2.len(), b2.rank().unwrap()), (6, 2));
    assert!(matches!(nc_lattice(CoxeterType::A, 9), Err(CoxeterError::SizeCapExceeded { .. })));
}

#[test]
fn coxeter_ideal_examples() {
    assert_eq!(coxeter_ideal(CoxeterType::A, 3).unwrap().len(), 6);
    assert_eq!(coxeter_ideal(CoxeterType::A, 2).unwrap().len(), 2);
    let j2 = coxeter_ideal(CoxeterType::B, 2).unwrap();
    // e, four reflections, two paired 2-cycles and two balanced 2-cycles
    assert_eq!(j2.rank_sizes(), [1, 4, 2]);
}

#[test]
fn kreweras_examples() {
    let c = perm("c(1,2,3,4)");
    assert_eq!(kreweras(&Permutation::identity(4), &c).unwrap(), c);
    assert_eq!(kreweras(&c, &c).unwrap(), Permutation::identity(4));
    let k = kreweras(&perm("c(1,2)(3,4)"), &c).unwrap();
    assert_eq!(k.apply(1), 1);
    assert!(matches!(kreweras(&perm("c(1,3)(2,4)"), &c), Err(CoxeterError::NotBelowMu(..))));

    let cb = SignedPermutation::standard_coxeter(4);
    for w in ptl::coxeter::nc_elements::<SignedPermutation>(4) {
        let paired_transpositions = abs_length(&w) == 2 && w.to_string().matches("p(").count() == 2;
        if paired_transpositions && !w.has_fixed_point() {
            assert_eq!(kreweras(&w, &cb).unwrap(), w.compose(&cb), "{w}");
        }
    }
}

#[test]
fn fixpoint_lemma_examples() {
    let a = verify_fixpoint_lemma(CoxeterType::A, 4).unwrap();
    assert!(a.passed);
    assert_eq!(a.elements, 14);
    let b = verify_fixpoint_lemma(CoxeterType::B, 3).unwrap();
    assert!(b.passed);
    assert_eq!(b.elements, 20);
    let w = perm("c(1,2,3)");
    assert!(!w.has_fixed_point());
    assert_eq!(kreweras(&w, &w).unwrap(), Permutation::identity(3));
}

#[test]
fn cycle_deletion_examples() {
    let g = cycle_deletion_map(CoxeterType::A, 4).unwrap();
    let image = |s: &str| g.target().label(g.apply(g.source().require(s).unwrap())).to_string();
    assert_eq!(image("c(1)(2)(3)(4)"), "(c(1)(2)(3),0)");
    assert_eq!(image("c(1,2,3,4)"), "(c(1,2,3),1)");
    assert!(g.check().all());
}

// injective words

#[test]
fn injective_word_examples() {
    let i5 = injective_word_poset(5).unwrap();
    assert!(i5.lt(i5.require("124").unwrap(), i5.require("12345").unwrap()));
    let i3 = injective_word_poset(3).unwrap();
    assert!(!i3.comparable(i3.require("12").unwrap(), i3.require("23").unwrap()));
    assert_eq!(i3.rank_sizes(), [1, 3, 6, 6]);
}

#[test]
fn word_deletion_examples() {
    let w = |s| InjectiveWord::parse(s).unwrap();
    assert_eq!(delete_letter(&w("12534"), 5), w("1234"));
    assert_eq!(delete_letter(&w("341"), 5), w("341"));
    let f = word_deletion_map(3).unwrap();
    let image = |s: &str| f.target().label(f.apply(f.source().require(s).unwrap())).to_string();
    assert_eq!(image("12"), "(12,0)");
    assert_eq!(image("312"), "(12,1)");
}

#[test]
fn fiber_ideal_claim_examples() {
    let f = word_deletion_map(3).unwrap();
    let q = f.target().require("(12,1)").unwrap();
    let mut fiber: Vec<_> = f.fiber(q).into_iter().map(|x| f.source().label(x).to_string()).collect();
    fiber.sort();
    assert_eq!(fiber, ["123", "132", "312"]);
    // the union of the ideals of 312, 132 and 123
    let p = f.source();
    let union: Vec<_> = (0..p.len()).filter(|&w| fiber.iter().any(|t| p.leq(w, p.require(t).unwrap()))).collect();
    assert_eq!(union.len(), 12);
    assert_eq!(f.preimage_of_ideal(q).ones().collect::<Vec<_>>(), union);
    assert!(verify_fiber_ideal_claim(&f).passed);
    let r = verify_word_deletion_claim(4).unwrap();
    assert!(r.passed);
    assert_eq!(r.targets_checked, 16 * 2);
}

#[test]
fn gamma_complex_examples() {
    let full = gamma_complex(&simplex(4)).unwrap();
    assert!(is_isomorphic(&full.poset, &injective_word_poset(4).unwrap()));
    let points = SimplicialComplex::new(3, vec![vec![0], vec![1], vec![2]]).unwrap();
    assert_eq!(gamma_complex(&points).unwrap().poset.len(), 4);
    assert_eq!(gamma_complex(&hollow_triangle()).unwrap().poset.len(), 10);
}

#[test]
fn restricted_gamma_examples() {
    let delta = boundary_of_simplex(4);
    let anti = Poset::from_covers(&["1", "2", "3", "4"], &[]).unwrap();
    let restricted = gamma_poset_restricted(&delta, &anti).unwrap();
    assert_eq!(restricted.poset, gamma_complex(&delta).unwrap().poset);

    let total = Poset::from_covers(&["1", "2", "3"], &[("1", "2"), ("2", "3")]).unwrap();
    assert_eq!(gamma_poset_restricted(&hollow_triangle(), &total).unwrap().poset.len(), 7);

    let one_relation = Poset::from_covers(&["1", "2", "3"], &[("1", "2")]).unwrap();
    let g = gamma_poset_restricted(&simplex(3), &one_relation).unwrap();
    assert!(g.poset.index_of("21").is_none());
    assert!(g.poset.index_of("213").is_none());
    assert!(g.poset.index_of("312").is_some());
}

#[test]
fn gamma_quotient_examples() {
    let complete = gamma_quotient(&simplex(3), &[(1, 2), (1, 3), (2, 3)]).unwrap();
    assert!(is_isomorphic(&complete.poset, &gamma_complex(&simplex(3)).unwrap().poset));

    let free = gamma_quotient(&simplex(2), &[]).unwrap();
    assert_eq!(free.poset.len(), 4);
    assert!(free.poset.maximum().is_some());

    let path = gamma_quotient(&simplex(3), &[(1, 2), (2, 3)]).unwrap();
    let ranks = path.poset.rank_sizes();
    // six words of length two, with 13 ~ 31 merged
    assert_eq!(ranks[2], 5);
}

#[test]
fn content_map_examples() {
    let delta = boundary_of_simplex(4);
    let anti = Poset::from_covers(&["1", "2", "3", "4"], &[]).unwrap();
    let gamma = gamma_poset_restricted(&delta, &anti).unwrap();
    let f = content_map(&gamma, &delta).unwrap();
    assert!(f.check().all());
    assert_eq!(f.apply(f.source().require("").unwrap()), f.target().minimum().unwrap());

    let full = gamma_complex(&simplex(3)).unwrap();
    let f = content_map(&full, &simplex(3)).unwrap();
    assert_eq!(f.target().label(f.apply(f.source().require("312").unwrap())), "{1,2,3}");
}

// fiber theorems

#[test]
fn quillen_examples() {
    let v = FiberVerifier::default();
    let hex = Arc::new(Poset::boolean_algebra(3).proper_part().unwrap());
    let r = v.check_quillen(&PosetMap::identity(hex)).unwrap();
    assert!(r.hypotheses_hold() && r.conclusion_holds);
    let r = v.check_quillen(&word_deletion_map(4).unwrap()).unwrap();
    assert!(r.hypotheses_hold() && r.conclusion_holds);
    let r = v.check_quillen(&cycle_deletion_map(CoxeterType::A, 4).unwrap()).unwrap();
    assert!(r.hypotheses_hold() && r.conclusion_holds);
}

#[test]
fn interval_theorem_examples() {
    let v = FiberVerifier::default();
    let f = word_deletion_map(4).unwrap();
    let (p, q) = (f.source(), f.target());
    let at = |x: &str, q0: &str| {
        v.check_interval_theorem(
            &f,
            p.require("").unwrap(),
            p.require("1234").unwrap(),
            p.require(x).unwrap(),
            q.require(q0).unwrap(),
        )
        .unwrap()
    };
    let r = at("12", "(12,0)");
    assert!(r.hypotheses_hold() && r.conclusion_holds);
    // 14 and 41 share the image (1,1)
    let r = at("14", "(1,1)");
    assert!(!r.hypotheses_hold());
    assert!(!r.is_falsification());

    let g = cycle_deletion_map(CoxeterType::A, 5).unwrap();
    let p = g.source();
    let x = p.require("c(1,2)(3)(4)(5)").unwrap();
    let r = v
        .check_interval_theorem(
            &g,
            p.require("c(1)(2)(3)(4)(5)").unwrap(),
            p.require("c(1,2,3,4,5)").unwrap(),
            x,
            g.apply(x),
        )
        .unwrap();
    assert!(r.hypotheses_hold() && r.conclusion_holds);
}

#[test]
fn bounded_corollary_examples() {
    let v = FiberVerifier::default();
    let f = word_deletion_map(4).unwrap();
    let g = f.restrict_to_image(&without_minimum_members(f.source()));
    let x = g.source().require("12").unwrap();
    let r = v.check_corollary_bounded(&g, x, g.apply(x)).unwrap();
    assert!(r.hypotheses_hold() && r.conclusion_holds);

    let delta = boundary_of_simplex(4);
    let anti = Poset::from_covers(&["1", "2", "3", "4"], &[]).unwrap();
    let gamma = gamma_poset_restricted(&delta, &anti).unwrap();
    let h = content_map(&gamma, &delta).unwrap();
    let h = h.restrict_to_image(&without_minimum_members(h.source()));
    let x = h.source().require("1").unwrap();
    let r = v.check_corollary_bounded(&h, x, h.apply(x)).unwrap();
    assert!(r.hypotheses_hold() && r.conclusion_holds);

    // target disconnected in its proper part: hypotheses fail
    let p = Arc::new(Poset::from_covers(&["a", "b", "c"], &[("a", "b")]).unwrap());
    let id = PosetMap::identity(p.clone());
    let r = v.check_corollary_bounded(&id, p.require("a").unwrap(), p.require("a").unwrap()).unwrap();
    assert!(!r.hypotheses_hold());
    assert!(!r.is_falsification());
}

#[test]
fn k_proposition_examples() {
    let v = FiberVerifier::default();
    let f = word_deletion_map(4).unwrap();
    let g = f.restrict_to_image(&without_minimum_members(f.source()));
    let x = g.source().require("12").unwrap();
    let one = v.check_k_proposition(&g, &[x], &[g.apply(x)]).unwrap();
    let bounded = v.check_corollary_bounded(&g, x, g.apply(x)).unwrap();
    assert_eq!(one.hypotheses_hold(), bounded.hypotheses_hold());
    assert_eq!(one.conclusion_holds, bounded.conclusion_holds);

    let xs = [g.source().require("12").unwrap(), g.source().require("21").unwrap()];
    let r = v.check_k_proposition(&g, &xs, &[g.apply(xs[0]), g.apply(xs[1])]).unwrap();
    assert!(r.conclusion_checked || !r.hypotheses_hold());

    let xs = [g.source().require("14").unwrap()];
    let r = v.check_k_proposition(&g, &xs, &[g.apply(xs[0])]).unwrap();
    assert!(!r.hypotheses_hold());
    assert!(matches!(v.check_k_proposition(&g, &xs, &[]), Err(FiberError::ArityMismatch { .. })));
}

#[test]
fn martina_examples() {
    let v = FiberVerifier::default();
    let b3 = Poset::boolean_algebra(3);
    for atom in ["{1}", "{2}", "{3}"] {
        let r = v.verify_martina(&b3, b3.require(atom).unwrap()).unwrap();
        assert!(r.identity_holds && r.passed);
    }
    let i3 = injective_word_poset(3).unwrap();
    // the proper part of I_3 is not doubly CM (deleting a letter leaves
    // homology below the top), so the decomposition is not applicable
    let r = v.verify_martina(&i3, i3.require("12").unwrap());
    assert!(matches!(r, Err(FiberError::PreconditionFailed(ref m)) if m.contains("not doubly CM")));
    assert!(matches!(v.verify_martina(&b3, b3.require("{}").unwrap()), Err(FiberError::PreconditionFailed(_))));
}

// constructibility

#[test]
fn certificate_examples() {
    let i3 = injective_word_poset(3).unwrap();
    let iv = i3.interval(i3.require("").unwrap(), i3.require("231").unwrap(), false).unwrap();
    let leaf = Certificate::Leaf { elements: iv.labels().to_vec(), leaf: LeafKind::BooleanInterval };
    assert!(verify_certificate(&iv, &leaf).valid);

    let (p, cert) = certificate_for_in(3).unwrap();
    assert!(verify_certificate(&p, &cert).valid);

    let (p1, c1) = certificate_for_in(1).unwrap();
    assert_eq!(p1.len(), 2);
    assert!(matches!(c1, Certificate::Leaf { .. }));

    let (p4, c4) = certificate_for_in(4).unwrap();
    assert!(verify_certificate(&p4, &c4).valid);
    assert!(is_cm(&p4, Q).unwrap().verdict);
}

/// Replaces the intersection of the first node reached along `j1` links
/// with a rank 0 leaf, and returns how many `j1` steps it took.
fn corrupt_first_node(cert: &mut Certificate, depth: usize) -> Option<usize> {
    let Certificate::Node { j1, intersection, .. } = cert else { return None };
    if depth == 0 {
        **intersection = Certificate::Leaf { elements: vec![String::new()], leaf: LeafKind::BooleanInterval };
        return Some(0);
    }
    corrupt_first_node(j1, depth - 1).map(|d| d + 1)
}

#[test]
fn bad_node_is_rejected_with_a_path() {
    let (p, cert) = certificate_for_in(3).unwrap();
    let mut root_bad = cert.clone();
    corrupt_first_node(&mut root_bad, 0).expect("I_3 certificate is a node");
    let v = verify_certificate(&p, &root_bad);
    assert!(!v.valid);
    assert!(v.path.is_empty());
    assert!(v.reason.is_some());

    let mut nested = cert;
    if corrupt_first_node(&mut nested, 1) == Some(1) {
        let v = verify_certificate(&p, &nested);
        assert!(!v.valid);
        assert_eq!(v.path.first().map(String::as_str), Some("j1"));
    }
}

#[test]
fn product_chain_examples() {
    let (p, c) = certificate_for_in(2).unwrap();
    let (prod, pc) = certificate_product_chain(&p, &c).unwrap();
    assert!(verify_certificate(&prod, &pc).valid);
    assert_eq!(prod.rank().unwrap(), 3);

    let chain = Poset::chain(2);
    let leaf = Certificate::Leaf { elements: chain.labels().to_vec(), leaf: LeafKind::BooleanInterval };
    let (prod, pc) = certificate_product_chain(&chain, &leaf).unwrap();
    assert!(verify_certificate(&prod, &pc).valid);

    let wrong = Certificate::Leaf { elements: vec!["nope".into()], leaf: LeafKind::BooleanInterval };
    assert!(matches!(certificate_product_chain(&chain, &wrong), Err(ConstructError::InvalidInputCertificate(_))));
}

#[test]
fn remove_maximal_examples() {
    let (p, cert) = certificate_for_in(3).unwrap();
    let x = p.require("321").unwrap();
    let smaller = remove_maximal(&p, &cert, x).unwrap();
    let rest = p.remove(&[x]);
    assert!(verify_certificate(&rest, &smaller).valid);
    assert!(is_cm(&rest, Q).unwrap().verdict);
    assert_eq!(rest.rank().unwrap(), 3);

    assert!(matches!(remove_maximal(&p, &cert, p.require("32").unwrap()), Err(ConstructError::PreconditionFailed(_))));
    let b = Poset::boolean_algebra(2);
    let leaf = Certificate::Leaf { elements: b.labels().to_vec(), leaf: LeafKind::BooleanInterval };
    assert!(matches!(remove_maximal(&b, &leaf, b.maximum().unwrap()), Err(ConstructError::PreconditionFailed(_))));
}
