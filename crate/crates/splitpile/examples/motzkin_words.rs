//! Generate Motzkin words, count them with the closed forms, and round a
//! DH word through its two-row-plus-leg tableau.
//!
//! Run with: cargo run --example motzkin_words

use std::str::FromStr;

use splitpile::motzkin::{
    count_dh, count_motzkin, count_syt_hook, dh_from_syt, generate_all, syt_from_dh, MotzkinWord,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Words with two U/D pairs and two H's, in lexicographic order (D < H < U).
    let words = generate_all(2, 2, 10_000)?;
    println!("Motzkin words with 2 U's and 2 H's ({} total):", words.len());
    for w in &words {
        let marker = if w.is_dh() { "  [no H before the first D]" } else { "" };
        println!("  {w}{marker}");
    }
    assert_eq!(count_motzkin(2, 2).to_string(), words.len().to_string());

    // The DH subfamily has its own product formula, which matches the
    // hook-length count for the shape (m, m, 1^h).
    let dh = words.iter().filter(|w| w.is_dh()).count();
    println!(
        "\nDH words: {dh} (formula {}, hook-length formula {})",
        count_dh(2, 2),
        count_syt_hook(2, 2)
    );

    // A DH word is a standard Young tableau in disguise: U's fill the top
    // row, D's the second row, trailing H's the leg.
    let w = MotzkinWord::from_str("UUDHUDHUDDH")?;
    let t = syt_from_dh(&w)?;
    println!("\n{w} as a tableau of shape {:?}:", t.shape());
    for row in t.rows() {
        println!("  {row:?}");
    }
    assert_eq!(dh_from_syt(&t)?, w);
    println!("decoding the tableau returns the word: ok");
    Ok(())
}
