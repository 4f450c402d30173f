// Building posets, combining them, and reading off ranks, intervals and
// Möbius values.
//
// ```text
// cargo run --example posets
// ```

use std::error::Error;

use ptl::poset::{is_isomorphic, mobius, mobius_hat, Poset};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let diamond = Poset::from_covers(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])?;
    println!("diamond: {} elements, rank {}, graded {}", diamond.len(), diamond.rank()?, diamond.is_graded());

    let b2 = Poset::boolean_algebra(2);
    assert!(is_isomorphic(&diamond, &b2));
    println!("diamond is B_2: {}", is_isomorphic(&diamond, &b2));

    let b3 = Poset::boolean_algebra(3);
    let lo = b3.require("{}")?;
    let hi = b3.require("{1,2,3}")?;
    let table = mobius(&b3);
    println!("mu(B_3) = {}", table.get(lo, hi).unwrap_or(0));

    let hexagon = b3.proper_part().ok_or("B_3 is bounded")?;
    println!("proper part of B_3: rank sizes {:?}, mu-hat {}", hexagon.rank_sizes(), mobius_hat(&hexagon));

    let square = Poset::product(&Poset::chain(2), &Poset::chain(2));
    let stacked = Poset::ordinal_sum(&square, &Poset::antichain(2));
    println!("(2 x 2) ⊕ antichain(2): {} elements, rank {}", stacked.len(), stacked.rank()?);

    let x = b3.require("{1}")?;
    let upper = b3.interval(x, hi, false)?;
    println!("[{{1}}, {{1,2,3}}] has {} elements", upper.len());

    let json = serde_json::to_string(&b3.to_json())?;
    let back = Poset::from_json(&serde_json::from_str(&json)?)?;
    assert_eq!(back.to_json(), b3.to_json());
    println!("JSON roundtrip: {} bytes", json.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
