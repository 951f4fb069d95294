//! Fuzzy-rough lower and upper approximations of a fuzzy set under a
//! reflexive, symmetric word relation.
//!
//!     cargo run --example rough_approximation

use std::sync::Arc;

use frsim::{lower_approximation, upper_approximation, FuzzyRelation, FuzzySet, Universe};

fn main() -> frsim::Result<()> {
    let universe = Arc::new(Universe::new(["cat", "dog", "guitar"]));
    let rel = FuzzyRelation::new(
        universe.clone(),
        vec![
            vec![1.0, 0.86, 0.3],
            vec![0.86, 1.0, 0.25],
            vec![0.3, 0.25, 1.0],
        ],
    )?;
    let mu = FuzzySet::new(universe.clone(), vec![0.0, 1.0, 0.4])?;
    let lower = lower_approximation(&rel, &mu)?;
    let upper = upper_approximation(&rel, &mu)?;

    println!("{:>8} {:>8} {:>8} {:>8}", "word", "lower", "mu", "upper");
    for (i, w) in universe.tokens().iter().enumerate() {
        println!(
            "{w:>8} {:>8.3} {:>8.3} {:>8.3}",
            lower.memberships()[i],
            mu.memberships()[i],
            upper.memberships()[i]
        );
    }

    // a relation that is not symmetric is refused
    let bad = FuzzyRelation::new(
        universe,
        vec![vec![1.0, 0.5, 0.0], vec![0.4, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
    );
    println!("asymmetric relation: {}", bad.unwrap_err());
    Ok(())
}
