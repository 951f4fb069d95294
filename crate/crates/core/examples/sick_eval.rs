//! Evaluating a configuration on a SICK-format file with a seeded
//! train/test split.
//!
//!     WORDNET_DIR=/path/to/wordnet/dict cargo run --release --example sick_eval -- SICK.txt [N_TEST] [SEED]
//!
//! Without arguments a small synthetic file from the test fixtures is used.

use std::path::PathBuf;

use frsim::dataset::{self, evaluate};
use frsim::fisdsl::presets;
use frsim::pipeline::{Pipeline, SimilarityKind, Stopwords};
use frsim::wordnet::WordnetDb;

fn main() -> frsim::Result<()> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut args = std::env::args().skip(1);
    let path = args.next().map(PathBuf::from).unwrap_or_else(|| fixtures.join("sick-synthetic.txt"));
    let records = dataset::load_sick(&path)?;
    let n_test: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(records.len().min(500) / 2);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);
    let n_train = (records.len() - n_test).min(n_test);

    let dir = std::env::var_os("WORDNET_DIR").map(PathBuf::from).unwrap_or_else(|| {
        eprintln!("WORDNET_DIR not set; using the bundled mini dictionary");
        fixtures.join("mini-wordnet")
    });
    let db = WordnetDb::load(&dir)?;
    let (_, test) = dataset::split_random(&records, n_train, n_test, seed)?;
    let pipeline = Pipeline::new(&db, Stopwords::bundled(), SimilarityKind::Cosine);

    for (name, config) in [("model1", presets::model1()), ("model2", presets::model2())] {
        let report = evaluate(&pipeline, &config, &test)?;
        println!(
            "{name}: n={} failures={} mse={} spearman={}",
            report.n,
            report.failures.len(),
            report.mse.map_or("-".into(), |m| format!("{m:.4}")),
            report.spearman.map_or("-".into(), |s| format!("{s:.4}")),
        );
    }
    Ok(())
}
