//! Fuzzy sets over a word universe: connectives, sigma-count and the two
//! set similarities.
//!
//!     cargo run --example fuzzy_sets

use std::sync::Arc;

use frsim::{FuzzySet, Universe};

fn main() -> frsim::Result<()> {
    let universe = Arc::new(Universe::new(["guitar", "man", "stage", "person"]));
    println!("universe: {:?}", universe.tokens());

    let s1 = FuzzySet::new(universe.clone(), vec![1.0, 1.0, 0.55, 0.75])?;
    let s2 = FuzzySet::new(universe.clone(), vec![1.0, 0.71, 0.5, 1.0])?;
    println!("S1 = {s1}");
    println!("S2 = {s2}");
    println!("S1 ∩ S2 = {}", s1.intersect(&s2)?);
    println!("S1 ∪ S2 = {}", s1.union_of(&s2)?);
    println!("|S1| = {:.4}, |S2| = {:.4}", s1.sigma_count(), s2.sigma_count());
    println!("jaccard = {:.5}", s1.jaccard_similarity(&s2)?);
    println!("cosine  = {:.5}", s1.cosine_similarity(&s2)?);

    let empty = FuzzySet::empty(universe.clone());
    println!("cosine(S1, ∅) = {}", s1.cosine_similarity(&empty)?);

    // out-of-range memberships are rejected
    if let Err(e) = FuzzySet::new(universe, vec![0.2, 1.3, 0.0, 0.0]) {
        println!("rejected: {e}");
    }
    Ok(())
}
