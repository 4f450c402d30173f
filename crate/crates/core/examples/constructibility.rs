// Strong constructibility certificates: building one for the poset of
// injective words, verifying it, serializing it and removing a maximal
// element.
//
// ```text
// cargo run --example constructibility
// ```

use std::error::Error;

use ptl::constructible::{
    certificate_for_in, certificate_product_chain, remove_maximal, shelling_leaf, verify_certificate, Certificate,
};
use ptl::poset::Poset;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for n in 1..=4 {
        let (p, cert) = certificate_for_in(n)?;
        let v = verify_certificate(&p, &cert);
        println!("I_{n}: {} leaves, depth {}, valid {}", cert.leaf_count(), cert.depth(), v.valid);
    }

    let (p, cert) = certificate_for_in(3)?;
    let json = serde_json::to_string(&cert)?;
    let back: Certificate = serde_json::from_str(&json)?;
    assert!(verify_certificate(&p, &back).valid);
    println!("certificate for I_3 is {} bytes of JSON", json.len());

    let x = p.require("321")?;
    let smaller = remove_maximal(&p, &cert, x)?;
    let rest = p.remove(&[x]);
    println!("I_3 - {{321}}: certificate valid {}", verify_certificate(&rest, &smaller).valid);

    let b2 = Poset::boolean_algebra(2);
    let leaf = shelling_leaf(&b2, 1_000).ok_or("B_2 is shellable")?;
    let (prod, pc) = certificate_product_chain(&b2, &leaf)?;
    println!("B_2 x 2: {} elements, certificate valid {}", prod.len(), verify_certificate(&prod, &pc).valid);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
