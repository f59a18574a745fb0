//! Tiered parking: cars in tiers park on a one-way street, each car
//! demanding lower-tier cars before it.  The literal "at least" reading
//! admits a simple closed form; the strict exact-count reading is the one
//! that characterizes sandpile recurrence.
//!
//! Run with: cargo run --example tiered_parking

use splitpile::parking::{
    check_street_literal, is_recurrent_via_parking_clique, is_tiered_pf_literal,
    parking_witness_clique, TieredParkingInstance,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Four tiers of sizes (4,5,4,3); each list gives the per-car demands
    // of one tier, starting at tier 2.
    let p = TieredParkingInstance::new(
        vec![4, 5, 4, 3],
        vec![vec![2, 1, 0, 4, 2], vec![8, 2, 1, 2], vec![4, 10, 8]],
    )?;
    match is_tiered_pf_literal(&p) {
        Some(street) => {
            println!("literal semantics: feasible");
            println!("street (tier labels): {:?}", street.tier_sequence());
            assert!(check_street_literal(&p, &street));
        }
        None => println!("literal semantics: infeasible"),
    }

    // One tier-2 car demanding two tier-1 cars when only one exists.
    let q = TieredParkingInstance::new(vec![1, 1], vec![vec![2]])?;
    println!("\nover-demanding instance feasible? {}", is_tiered_pf_literal(&q).is_some());

    // Strict semantics on S(2,1), sink v2: heights are (a1; b1), tier-2
    // demands exactly b1 tier-1 cars before it, tier-3 exactly a1+1.
    // The literal reading cannot tell these two configurations apart;
    // the strict reading recovers the recurrence distinction.
    for (a1, b1) in [(0u64, 0u64), (1, 0)] {
        let strict = is_recurrent_via_parking_clique(2, 1, &[b1], &[a1 + 1])?;
        println!("\nconfig ({a1},-;{b1}): strict parking says recurrent = {strict}");
    }

    // A strict witness street for the configuration (5,3,1,-;3,3,3,2).
    let street = parking_witness_clique(4, 4, &[3, 3, 3, 2], &[6, 4, 2])?
        .expect("recurrent configuration");
    println!("\nstrict street for (5,3,1,-;3,3,3,2): {:?}", street.tier_sequence());
    Ok(())
}
