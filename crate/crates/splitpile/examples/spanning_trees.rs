//! Spanning trees of S(m,n) and their two-word code: delete the
//! smallest-labelled leaf until one edge remains, recording each leaf's
//! neighbor in the clique word or the independent word.
//!
//! Run with: cargo run --example spanning_trees

use splitpile::prufer::{count_spanning_trees, decode, encode, SpanningTree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A spanning tree of S(5,4).  Labels 1..=5 are clique vertices
    // v1..v5, labels 6..=9 are w1..w4; independent vertices are never
    // adjacent to each other.
    let tree = SpanningTree::new(
        5,
        4,
        vec![(1, 5), (2, 7), (3, 6), (5, 8), (3, 5), (3, 7), (4, 7), (4, 9)],
    )?;
    println!("tree edges: {:?}", tree.edges());

    let pair = encode(&tree);
    println!("clique word f: {:?}", pair.f_word);
    println!("independent word g: {:?}", pair.g_word);

    let back = decode(5, 4, &pair)?;
    assert_eq!(back, tree);
    println!("decoding the pair rebuilds the same tree: ok");

    // The code is a bijection, so the tree count factors as
    // (m+n)^(m-1) * m^(n-1).
    println!("\nS(5,4) has {} spanning trees", count_spanning_trees(5, 4));
    println!("S(2,1) has {} spanning trees", count_spanning_trees(2, 1));
    Ok(())
}
