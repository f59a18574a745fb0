//! The clique-sink bijection: weakly decreasing recurrent configurations
//! of S(m,n) correspond to Motzkin words with m-1 U's and n H's.
//!
//! Run with: cargo run --example clique_sink

use std::str::FromStr;

use splitpile::bijections::{classify, decreasing_recurrent, f_map, Classification};
use splitpile::motzkin::MotzkinWord;
use splitpile::sandpile::Configuration;
use splitpile::split_graph::SplitGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = SplitGraph::clique_sink(4, 4)?;

    // Word -> configuration: each U's height counts the D's and H's after
    // it (minus one); each H's height counts the D's after it.
    let w = MotzkinWord::from_str("HUHHUDHUDD")?;
    let rep = f_map(&w);
    println!("{w}  ->  {}", rep.as_configuration().display_with(&g));

    // Configuration -> word: the inverse rebuilds the word or explains
    // why the configuration cannot be recurrent.
    match classify(&g, rep.as_configuration())? {
        Classification::Recurrent(back) => println!("and back:  {back}"),
        Classification::NotRecurrent(reason) => unreachable!("image is recurrent: {reason:?}"),
    }

    // A failing example: everything empty on S(2,1).
    let g21 = SplitGraph::clique_sink(2, 1)?;
    let empty = Configuration::new(vec![0], vec![0]);
    match classify(&g21, &empty)? {
        Classification::Recurrent(w) => unreachable!("{w}"),
        Classification::NotRecurrent(reason) => {
            println!("\n{} on S(2,1) is not recurrent: {reason:?}", empty.display_with(&g21));
        }
    }

    // Every recurrent configuration is a rearrangement of exactly one
    // weakly decreasing representative; orbit sizes refine the total
    // count (m+n)^(m-1) * m^(n-1).
    let reps = decreasing_recurrent(&g, 1_000_000)?;
    let total: num_bigint::BigUint = reps.iter().map(|r| r.orbit_size()).sum();
    println!(
        "\nS(4,4): {} decreasing representatives expand to {} recurrent configurations",
        reps.len(),
        total
    );
    Ok(())
}
