// Checking the hypotheses and conclusions of poset fiber theorems on
// concrete maps, including a case where the hypotheses hold and the
// conclusion does not.
//
// ```text
// cargo run --example fiber_theorems
// ```

use std::error::Error;

use ptl::fiber::FiberVerifier;
use ptl::poset::Poset;
use ptl::words::{without_minimum_members, word_deletion_map};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let verifier = FiberVerifier::default();
    let f = word_deletion_map(4)?;
    let (p, q) = (f.source(), f.target());

    let r = verifier.check_quillen(&f)?;
    println!("Quillen on I_4 -> I_3 x 2: hypotheses {}, conclusion {}", r.hypotheses_hold(), r.conclusion_holds);

    let (u, v, x) = (p.require("")?, p.require("1234")?, p.require("12")?);
    let r = verifier.check_interval_theorem(&f, u, v, x, q.require("(12,0)")?)?;
    for h in &r.hypotheses {
        println!("  {:<16} {}", h.name, h.holds);
    }
    println!("interval theorem at x = 12: conclusion {}, rank kept {:?}", r.conclusion_holds, r.rank_preserved);

    let g = f.restrict_to_image(&without_minimum_members(f.source()));
    for label in ["12", "1"] {
        let x = g.source().require(label)?;
        let r = verifier.check_corollary_bounded(&g, x, g.apply(x))?;
        println!(
            "bounded corollary at x = {label}: hypotheses {}, conclusion {}, falsified {}",
            r.hypotheses_hold(),
            r.conclusion_holds,
            r.is_falsification()
        );
        if let Some(w) = &r.conclusion_witness {
            println!("  witness: {w}");
        }
    }

    let b3 = Poset::boolean_algebra(3);
    let m = verifier.verify_martina(&b3, b3.require("{1}")?)?;
    for piece in &m.pieces {
        println!(
            "  {:<24} size {:>2} rank {:?} (expected {}) CM {}",
            piece.name, piece.size, piece.rank, piece.expected_rank, piece.cm
        );
    }
    println!("product decomposition for B_3 at {{1}}: {}", m.passed);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
