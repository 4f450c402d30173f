// Exact reduced homology of simplicial complexes and order complexes,
// over the rationals and the integers.
//
// ```text
// cargo run --example homology
// ```

use std::error::Error;

use ptl::homology::{order_complex, poset_homology, reduced_homology, Coefficients, SimplicialComplex};
use ptl::poset::Poset;

/// The six-vertex triangulation of the real projective plane.
fn projective_plane() -> Result<SimplicialComplex, Box<dyn Error>> {
    let facets = vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 5],
        vec![0, 1, 5],
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![1, 3, 4],
        vec![1, 3, 5],
        vec![2, 4, 5],
    ];
    Ok(SimplicialComplex::new(6, facets)?)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let rp2 = projective_plane()?;
    let over_z = reduced_homology(&rp2, Coefficients::Integers)?;
    let over_q = reduced_homology(&rp2, Coefficients::Rationals)?;
    println!("RP^2 f-vector {:?}", rp2.f_vector());
    println!("  over Z: H_1 torsion {:?}, b_2 = {}", over_z.torsion(1), over_z.betti(2));
    println!("  over Q: b_1 = {}, b_2 = {}", over_q.betti(1), over_q.betti(2));
    assert_eq!(over_z.torsion(1), &[2]);

    let sphere = SimplicialComplex::new(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])?;
    let h = reduced_homology(&sphere, Coefficients::Integers)?;
    println!("boundary of the tetrahedron: b_2 = {}, Euler {}", h.betti(2), h.euler());

    let hexagon = Poset::boolean_algebra(3).proper_part().ok_or("bounded")?;
    let k = order_complex(&hexagon);
    println!("order complex of the proper part of B_3: {} facets", k.facets().len());
    let h = poset_homology(&hexagon, Coefficients::Integers)?;
    println!("  b_1 = {} (a circle)", h.betti(1));
    println!("{}", serde_json::to_string(&h)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
