//! Grid search over membership parameters, then evaluating the winner on
//! the held-out sample.
//!
//!     WORDNET_DIR=/path/to/wordnet/dict cargo run --release --example grid_tune -- SICK.txt [N] [SEED]
//!
//! Without arguments a small synthetic file from the test fixtures is used.

use std::path::PathBuf;

use frsim::dataset::{self, evaluate};
use frsim::fisdsl::{presets, serialize_fis};
use frsim::pipeline::{Pipeline, SimilarityKind, Stopwords};
use frsim::tuner::{grid_candidates, tune, GridSpec};
use frsim::wordnet::WordnetDb;

fn main() -> frsim::Result<()> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut args = std::env::args().skip(1);
    let path = args.next().map(PathBuf::from).unwrap_or_else(|| fixtures.join("sick-synthetic.txt"));
    let records = dataset::load_sick(&path)?;
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(records.len().min(1000) / 2);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);

    let dir = std::env::var_os("WORDNET_DIR").map(PathBuf::from).unwrap_or_else(|| {
        eprintln!("WORDNET_DIR not set; using the bundled mini dictionary");
        fixtures.join("mini-wordnet")
    });
    let db = WordnetDb::load(&dir)?;
    let (train, test) = dataset::split_random(&records, n, n, seed)?;
    let pipeline = Pipeline::new(&db, Stopwords::bundled(), SimilarityKind::Cosine);

    let candidates = grid_candidates(&presets::model1(), &GridSpec::default_grid())?;
    let outcome = tune(&pipeline, &train, &candidates)?;
    println!("top of the leaderboard ({} candidates):", outcome.leaderboard.len());
    for e in outcome.leaderboard.iter().take(5) {
        println!("  #{:<3} mse {:.4}  {}", e.index, e.mse.unwrap_or(f64::NAN), e.label);
    }

    let report = evaluate(&pipeline, &outcome.best.config, &test)?;
    println!(
        "winner on held-out pairs: mse {:.4}, spearman {}",
        report.mse.unwrap_or(f64::NAN),
        report.spearman.map_or("-".into(), |s| format!("{s:.4}"))
    );
    println!("\n{}", serialize_fis(&outcome.best.config));
    Ok(())
}
