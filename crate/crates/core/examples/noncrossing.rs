// Absolute order on the symmetric and hyperoctahedral groups, the
// non-crossing partition lattices, the Kreweras complement and its
// fixed-point lemma.
//
// ```text
// cargo run --example noncrossing
// ```

use std::error::Error;

use ptl::coxeter::{
    abs_length, abs_leq, brady_leq_type_a, coxeter_ideal, cycle_deletion_map, kreweras, nc_lattice,
    verify_fixpoint_lemma, CoxeterType, GroupElement, Permutation, SignedPermutation,
};
use ptl::oracle::{catalan, type_b_catalan};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let c: Permutation = "c(1,2,3,4)".parse()?;
    let u: Permutation = "c(1,2)(3,4)".parse()?;
    let crossing: Permutation = "c(1,3)(2,4)".parse()?;
    println!("l_T({c}) = {}", abs_length(&c));
    println!("{u} <= {c}: {} (Brady: {})", abs_leq(&u, &c)?, brady_leq_type_a(&u, &c));
    println!("{crossing} <= {c}: {} (Brady: {})", abs_leq(&crossing, &c)?, brady_leq_type_a(&crossing, &c));
    println!("K({u}) = {}", kreweras(&u, &c)?);

    let balanced: SignedPermutation = SignedPermutation::standard_coxeter(2);
    println!("Coxeter element of B_2: {balanced}, l_T = {}", abs_length(&balanced));

    for n in 3..=5 {
        let a = nc_lattice(CoxeterType::A, n)?;
        let b = nc_lattice(CoxeterType::B, n)?;
        println!(
            "|NC^A({n})| = {} (Catalan {}), |NC^B({n})| = {} (binom {}), self-dual: {}",
            a.len(),
            catalan(n as u64),
            b.len(),
            type_b_catalan(n as u64),
            a.is_self_dual()
        );
    }

    let j4 = coxeter_ideal(CoxeterType::A, 4)?;
    println!("J_4 in S_4: {} elements", j4.len());
    let g = cycle_deletion_map(CoxeterType::A, 4)?;
    let img = g.target().label(g.apply(g.source().require("c(1,2,3,4)")?)).to_string();
    println!("g((1234)) = {img}; map check {:?}", g.check());

    for (ty, n) in [(CoxeterType::A, 6), (CoxeterType::B, 4)] {
        let r = verify_fixpoint_lemma(ty, n)?;
        println!("fixed-point lemma type {ty}, n = {n}: passed {} on {} elements", r.passed, r.elements);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
