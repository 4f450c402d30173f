// Cohen-Macaulay, doubly and k-fold Cohen-Macaulay checks, and wedge
// verdicts.
//
// ```text
// cargo run --example cohen_macaulay
// ```

use std::error::Error;

use ptl::cm::{is_cm, is_doubly_cm, is_k_cm, wedge_verdict, CmChecker};
use ptl::homology::Coefficients;
use ptl::poset::Poset;
use ptl::suite::describe_cm;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let hexagon = Poset::boolean_algebra(3).proper_part().ok_or("bounded")?;
    let q = Coefficients::Rationals;
    println!("hexagon CM: {}", describe_cm(&is_cm(&hexagon, q)?));
    println!("hexagon doubly CM: {}", describe_cm(&is_doubly_cm(&hexagon, q)?));
    let three = is_k_cm(&hexagon, 3, q)?;
    println!("hexagon 3-CM: {}", describe_cm(&three));
    assert!(!three.verdict);

    let two_chain = Poset::chain(2);
    println!("2-chain doubly CM: {}", describe_cm(&is_doubly_cm(&two_chain, q)?));

    let broken = Poset::from_covers(&["a", "b", "c"], &[("a", "b")])?;
    println!("chain plus a point CM: {}", describe_cm(&is_cm(&broken, q)?));

    // one checker reuses interval homology across calls
    let checker = CmChecker::new(Coefficients::Integers);
    let b4 = Poset::boolean_algebra(4).proper_part().ok_or("bounded")?;
    let r = checker.is_doubly_cm(&b4)?;
    println!("proper part of B_4 doubly CM over Z: {} ({} cached intervals)", r.verdict, checker.cache_len());

    let w = wedge_verdict(&b4)?;
    println!(
        "proper part of B_4: wedge of {} spheres of dimension {} (mu = {})",
        w.sphere_count, w.dimension, w.mobius
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
