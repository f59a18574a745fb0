//! Motzkin words as necklaces: prepending a U and closing the word into a
//! cycle is a bijection, because a cyclic word with one more U than D has
//! exactly one rotation that starts with U and leaves a Motzkin word.
//!
//! Run with: cargo run --example necklaces

use std::str::FromStr;

use splitpile::motzkin::{letters_to_string, MotzkinWord};
use splitpile::necklace::{enumerate_necklaces, motzkin_from_necklace, necklace_from_motzkin};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = MotzkinWord::from_str("UDHUD")?;
    let x = necklace_from_motzkin(&w);
    println!("word {w} closes into the necklace {}", letters_to_string(x.beads()));

    println!("its rotations:");
    for r in x.rotations() {
        println!("  {}", letters_to_string(&r));
    }

    // Cutting at the unique distinguished U recovers the original word.
    let back = motzkin_from_necklace(&x)?;
    println!("cutting the necklace returns: {back}");
    assert_eq!(back, w);

    // Necklaces with bead counts (m, m-1, n) = (3, 2, 2), i.e. the
    // closures of the words with 2 U's and 2 H's.
    let all = enumerate_necklaces(3, 2, 10_000)?;
    println!("\nnecklaces with 3 U / 2 D / 2 H beads ({} total):", all.len());
    for x in &all {
        println!("  {}", letters_to_string(x.beads()));
    }
    Ok(())
}
