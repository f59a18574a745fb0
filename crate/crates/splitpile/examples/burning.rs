//! Stabilize a configuration and test recurrence with the burning
//! algorithm.
//!
//! Run with: cargo run --example burning

use splitpile::sandpile::{burning_certificate, is_recurrent, stabilize, Configuration};
use splitpile::split_graph::SplitGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // S(4,4): clique v1..v4, independent w1..w4, sink v4.
    let g = SplitGraph::clique_sink(4, 4)?;
    println!(
        "S({m},{n}) with sink {sink}: clique degree {cd}, independent degree {id}",
        m = g.m(),
        n = g.n(),
        sink = g.sink(),
        cd = g.m() - 1 + g.n(),
        id = g.m(),
    );

    // Overload one vertex and let the cascade settle.  Heights list the
    // non-sink clique vertices first, then the independent vertices.
    let unstable = Configuration::new(vec![9, 3, 1], vec![3, 3, 3, 2]);
    let (stable, odometer) = stabilize(&g, &unstable)?;
    println!("\nstabilize {} -> {}", unstable.display_with(&g), stable.display_with(&g));
    println!("topple counts (clique; independent): {:?}; {:?}", odometer.clique, odometer.independent);

    // The settled state is recurrent: fire the sink once and everything
    // topples exactly once.
    let cert = burning_certificate(&g, &stable)?.expect("stabilization of an overload is recurrent");
    let order: Vec<String> = cert.order.iter().map(|v| v.to_string()).collect();
    println!("\nburning order starting at the sink: {}", order.join(" "));
    assert!(cert.verify(&g, &stable)?);

    // A stable configuration that the fire cannot reach is transient.
    let frozen = Configuration::new(vec![0, 0, 0], vec![0, 0, 0, 0]);
    println!(
        "\n{} recurrent? {}",
        frozen.display_with(&g),
        is_recurrent(&g, &frozen)?
    );
    Ok(())
}
