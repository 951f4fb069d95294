//! Scoring one sentence pair end to end: tokens, universe, memberships,
//! approximations, similarities and the fused rank.
//!
//!     WORDNET_DIR=/path/to/wordnet/dict cargo run --example sentence_rank -- \
//!         "A man is playing a guitar on stage" "A bald person is playing a guitar"

use std::path::PathBuf;
use std::sync::Arc;

use frsim::fisdsl::presets;
use frsim::pipeline::{self, Pipeline, SimilarityKind, Stopwords};
use frsim::wordnet::WordnetDb;
use frsim::{lower_approximation, upper_approximation};

fn main() -> frsim::Result<()> {
    let mut args = std::env::args().skip(1);
    let s1 = args.next().unwrap_or_else(|| "A man is playing a guitar on stage".into());
    let s2 = args.next().unwrap_or_else(|| "There is no man playing a guitar on stage".into());
    let dir = std::env::var_os("WORDNET_DIR").map(PathBuf::from).unwrap_or_else(|| {
        eprintln!("WORDNET_DIR not set; using the bundled mini dictionary");
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/mini-wordnet")
    });
    let db = WordnetDb::load(&dir)?;

    let t1 = pipeline::tokenize(&s1)?;
    let t2 = pipeline::tokenize(&s2)?;
    let universe = Arc::new(pipeline::build_universe(&t1, &t2));
    let rel = pipeline::relation_matrix(&db, universe.clone());
    let mu1 = pipeline::membership_from_relation(&rel, &t1);
    let mu2 = pipeline::membership_from_relation(&rel, &t2);
    println!("tokens 1: {t1:?}\ntokens 2: {t2:?}\n");
    println!("{:>12} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6}", "word", "mu1", "low1", "up1", "mu2", "low2", "up2");
    let (l1, u1) = (lower_approximation(&rel, &mu1)?, upper_approximation(&rel, &mu1)?);
    let (l2, u2) = (lower_approximation(&rel, &mu2)?, upper_approximation(&rel, &mu2)?);
    for (i, w) in universe.tokens().iter().enumerate() {
        println!(
            "{w:>12} {:>6.3} {:>6.3} {:>6.3} {:>6.3} {:>6.3} {:>6.3}",
            mu1.memberships()[i],
            l1.memberships()[i],
            u1.memberships()[i],
            mu2.memberships()[i],
            l2.memberships()[i],
            u2.memberships()[i]
        );
    }

    let fis = presets::model1();
    for kind in [SimilarityKind::Cosine, SimilarityKind::Jaccard] {
        let r = Pipeline::new(&db, Stopwords::bundled(), kind).rank(&fis, &s1, &s2)?;
        println!(
            "\n{kind}: lower {:.4}, upper {:.4}, rank {:.4}",
            r.lower_similarity, r.upper_similarity, r.rank
        );
    }
    Ok(())
}
