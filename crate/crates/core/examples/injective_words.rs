// The poset of injective words, its sphere count, the complexes Γ(Δ),
// Γ(Δ,P) and Γ/G(Δ), and the content map.
//
// ```text
// cargo run --example injective_words
// ```

use std::error::Error;

use ptl::cm::wedge_verdict;
use ptl::homology::SimplicialComplex;
use ptl::oracle::derangements;
use ptl::poset::Poset;
use ptl::words::{
    content_map, gamma_complex, gamma_poset_restricted, gamma_quotient, injective_word_poset,
    verify_word_deletion_claim, without_minimum_members, word_deletion_map, InjectiveWord,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let w = InjectiveWord::parse("312")?;
    println!("{} has content {:b}, deleting 1 gives {}", w.label(3), w.content(), w.delete(1).label(3));

    for n in 2..=4 {
        let p = injective_word_poset(n)?;
        let bar = p.induced(&without_minimum_members(&p));
        let v = wedge_verdict(&bar)?;
        println!(
            "I_{n}: {} words; I_{n} - {{∅}} is a wedge of {} spheres (D_{n} = {})",
            p.len(),
            v.sphere_count,
            derangements(n as u64)
        );
    }

    let f = word_deletion_map(3)?;
    println!("word deletion I_3 -> I_2 x 2: {:?}", f.check());
    let claim = verify_word_deletion_claim(4)?;
    println!("fiber-ideal claim for n = 4: {} over {} targets", claim.passed, claim.targets_checked);

    let delta = SimplicialComplex::new(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])?;
    let plain = gamma_complex(&delta)?;
    let order = Poset::from_covers(&["1", "2", "3", "4"], &[("1", "2"), ("3", "4")])?;
    let restricted = gamma_poset_restricted(&delta, &order)?;
    let quotient = gamma_quotient(&delta, &[(1, 2), (2, 3), (3, 4)])?;
    for (name, g) in [("Γ(Δ)", &plain), ("Γ(Δ,P)", &restricted), ("Γ/G(Δ)", &quotient)] {
        let m = content_map(g, &delta)?;
        println!(
            "{name}: {} cells, Boolean cells {}, content map surjective {}",
            g.poset.len(),
            g.boolean_cell,
            m.check().surjective
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
