//! The independent-sink bijection: weakly decreasing recurrent
//! configurations of S(m,n) with sink w_n correspond to DH words — Motzkin
//! words with m U's and n-1 H's whose first H comes after the first D.
//!
//! Run with: cargo run --example independent_sink

use std::str::FromStr;

use splitpile::bijections::{decreasing_recurrent, g_map, g_target};
use splitpile::motzkin::MotzkinWord;
use splitpile::split_graph::SplitGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = SplitGraph::independent_sink(4, 4)?;

    let w = MotzkinWord::from_str("UUDHUDHUDDH")?;
    assert!(w.is_dh());
    assert_eq!(g_target(&w), (4, 4));
    let rep = g_map(&w)?;
    println!("{w}  ->  {}", rep.as_configuration().display_with(&g));

    // Unlike the clique case, H's returning "too early" would break
    // stability: that is why only DH words appear here.
    let not_dh = MotzkinWord::from_str("HUDUD")?;
    println!("{not_dh} is DH? {}", not_dh.is_dh());
    assert!(g_map(&not_dh).is_err());

    // All representatives for S(3,3), smallest first.
    let g33 = SplitGraph::independent_sink(3, 3)?;
    let reps = decreasing_recurrent(&g33, 100_000)?;
    println!("\nS(3,3) with sink w3 has {} decreasing recurrent configurations:", reps.len());
    for rep in reps.iter().take(5) {
        println!("  {}", rep.as_configuration().display_with(&g33));
    }
    println!("  ... ({} more)", reps.len().saturating_sub(5));
    Ok(())
}
