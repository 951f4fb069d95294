//! `frsim` command line. Every successful run prints exactly one JSON
//! document on stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or parse error (stdout then
//! carries `{"error": <kind>, "message": ...}`).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::dataset::{self, EvalReport};
use crate::error::{Error, Result};
use crate::fis::FisConfig;
use crate::fisdsl::{self, presets};
use crate::json;
use crate::pipeline::{Pipeline, SimilarityKind, Stopwords};
use crate::tuner::{self, GridSpec, LeaderboardEntry};
use crate::wordnet::WordnetDb;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "frsim", version, about = "Fuzzy-rough sentence similarity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FisArgs {
    /// FIS file; the bundled model1 when omitted
    #[arg(long)]
    pub fis: Option<PathBuf>,
    /// Use rule 2 as printed (`upper is average and upper is poor`)
    #[arg(long)]
    pub strict_rule2: bool,
}

#[derive(Debug, Args)]
pub struct WordnetArgs {
    /// WordNet 3.0 dict directory; falls back to $WORDNET_DIR
    #[arg(long)]
    pub wordnet: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score one sentence pair
    Rank {
        #[command(flatten)]
        wordnet: WordnetArgs,
        #[command(flatten)]
        fis: FisArgs,
        #[arg(long, value_enum, default_value_t)]
        similarity: SimilarityKind,
        /// Stopword file (one word per line, '#' comments)
        #[arg(long)]
        stopwords: Option<PathBuf>,
        s1: String,
        s2: String,
    },
    /// Run the inference system on given similarities
    FisEval {
        #[command(flatten)]
        fis: FisArgs,
        #[arg(long)]
        lower: f64,
        #[arg(long)]
        upper: f64,
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Evaluate on a SICK-format file
    Eval {
        #[command(flatten)]
        wordnet: WordnetArgs,
        #[command(flatten)]
        fis: FisArgs,
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value_t = 500)]
        n_train: usize,
        #[arg(long, default_value_t = 500)]
        n_test: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Evaluate every record instead of a seeded test sample
        #[arg(long, conflicts_with_all = ["n_train", "n_test", "seed"])]
        full_test: bool,
        #[arg(long, value_enum, default_value_t)]
        similarity: SimilarityKind,
        #[arg(long)]
        stopwords: Option<PathBuf>,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Grid-search membership parameters on a seeded training sample
    Tune {
        #[command(flatten)]
        wordnet: WordnetArgs,
        #[command(flatten)]
        fis: FisArgs,
        /// Grid JSON; the bundled default grid when omitted
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value_t = 500)]
        n_train: usize,
        /// Size of the held-out sample drawn alongside the training one, so
        /// that `eval` with the same seed tests on unseen pairs
        #[arg(long, default_value_t = 500)]
        n_test: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        similarity: SimilarityKind,
        #[arg(long)]
        stopwords: Option<PathBuf>,
        /// Where to write the winning configuration
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Word-level Wu-Palmer similarity
    WordnetSim {
        #[command(flatten)]
        wordnet: WordnetArgs,
        w1: String,
        w2: String,
    },
}

impl WordnetArgs {
    fn load(&self) -> Result<WordnetDb> {
        match &self.wordnet {
            Some(dir) => WordnetDb::load(dir),
            None => WordnetDb::from_env(),
        }
    }
}

impl FisArgs {
    fn load(&self) -> Result<(FisConfig, String)> {
        let (config, name) = match &self.fis {
            Some(path) => (fisdsl::load_fis(path)?, config_name(path)),
            None => (presets::model1(), "model1".to_string()),
        };
        if self.strict_rule2 {
            Ok((presets::with_verbatim_rule2(&config)?, format!("{name}+strict-rule2")))
        } else {
            Ok((config, name))
        }
    }
}

fn config_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn stopwords(path: &Option<PathBuf>) -> Result<Stopwords> {
    match path {
        Some(p) => Stopwords::load(p),
        None => Ok(Stopwords::bundled().clone()),
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

#[derive(Serialize)]
struct RankOutput {
    lower: f64,
    upper: f64,
    rank: f64,
    universe_size: usize,
    similarity: SimilarityKind,
    config_name: String,
}

#[derive(Serialize)]
struct FisEvalOutput {
    lower: f64,
    upper: f64,
    rank: f64,
    resolution: usize,
    config_name: String,
}

#[derive(Serialize)]
struct WordnetSimOutput<'a> {
    w1: &'a str,
    w2: &'a str,
    similarity: f64,
}

#[derive(Serialize)]
struct TuneOutput {
    seed: u64,
    n_train: usize,
    similarity: SimilarityKind,
    best_index: usize,
    best_label: String,
    best_mse: f64,
    out: String,
    skipped_pairs: Vec<u64>,
    leaderboard: Vec<LeaderboardEntry>,
}

#[derive(Serialize)]
struct ErrorOutput<'a> {
    error: &'a str,
    message: String,
}

fn execute(command: Command, err: &mut dyn Write) -> Result<String> {
    match command {
        Command::Rank {
            wordnet,
            fis,
            similarity,
            stopwords: stop_path,
            s1,
            s2,
        } => {
            let (config, config_name) = fis.load()?;
            let stops = stopwords(&stop_path)?;
            let db = wordnet.load()?;
            let r = Pipeline::new(&db, &stops, similarity).rank(&config, &s1, &s2)?;
            Ok(json::to_string(&RankOutput {
                lower: r.lower_similarity,
                upper: r.upper_similarity,
                rank: r.rank,
                universe_size: r.universe_size,
                similarity,
                config_name,
            }))
        }
        Command::FisEval {
            fis,
            lower,
            upper,
            resolution,
        } => {
            let (mut config, config_name) = fis.load()?;
            if let Some(n) = resolution {
                config = config.with_resolution(n)?;
            }
            let rank = config.rank(lower, upper)?;
            Ok(json::to_string(&FisEvalOutput {
                lower,
                upper,
                rank,
                resolution: config.resolution(),
                config_name,
            }))
        }
        Command::Eval {
            wordnet,
            fis,
            dataset: data_path,
            n_train,
            n_test,
            seed,
            full_test,
            similarity,
            stopwords: stop_path,
            jobs,
        } => {
            let (config, config_name) = fis.load()?;
            let stops = stopwords(&stop_path)?;
            let records = dataset::load_sick(&data_path)?;
            let (test, seed) = if full_test {
                (records, None)
            } else {
                (dataset::split_random(&records, n_train, n_test, seed)?.1, Some(seed))
            };
            let db = wordnet.load()?;
            let pipeline = Pipeline::new(&db, &stops, similarity);
            let mut report: EvalReport =
                with_jobs(jobs, || dataset::evaluate(&pipeline, &config, &test))??;
            report.seed = seed;
            report.config_name = config_name;
            report.split = if full_test {
                "full".to_string()
            } else {
                format!("random:{n_train}/{n_test}")
            };
            if !report.failures.is_empty() {
                let _ = writeln!(err, "warning: {} pairs could not be scored", report.failures.len());
            }
            Ok(report.to_json())
        }
        Command::Tune {
            wordnet,
            fis,
            grid,
            dataset: data_path,
            n_train,
            n_test,
            seed,
            similarity,
            stopwords: stop_path,
            out,
            jobs,
        } => {
            let (base, _) = fis.load()?;
            let spec = match &grid {
                Some(p) => GridSpec::load(p)?,
                None => GridSpec::default_grid(),
            };
            let candidates = tuner::grid_candidates(&base, &spec)?;
            let stops = stopwords(&stop_path)?;
            let records = dataset::load_sick(&data_path)?;
            let (train, _) = dataset::split_random(&records, n_train, n_test, seed)?;
            let db = wordnet.load()?;
            let pipeline = Pipeline::new(&db, &stops, similarity);
            let _ = writeln!(err, "tuning {} candidates on {} pairs", candidates.len(), train.len());
            let outcome = with_jobs(jobs, || tuner::tune(&pipeline, &train, &candidates))??;
            let text = format!(
                "# Grid winner #{}: {}\n# training MSE {:.6} on {} pairs, seed {seed}\n\n{}",
                outcome.best.index,
                outcome.best.label,
                outcome.best_mse,
                n_train - outcome.skipped_pairs.len(),
                fisdsl::serialize_fis(&outcome.best.config)
            );
            std::fs::write(&out, text).map_err(|e| Error::io(&out, e))?;
            Ok(json::to_string(&TuneOutput {
                seed,
                n_train,
                similarity,
                best_index: outcome.best.index,
                best_label: outcome.best.label.clone(),
                best_mse: outcome.best_mse,
                out: out.display().to_string(),
                skipped_pairs: outcome.skipped_pairs,
                leaderboard: outcome.leaderboard,
            }))
        }
        Command::WordnetSim { wordnet, w1, w2 } => {
            let db = wordnet.load()?;
            let similarity = db.word_similarity(&w1.to_lowercase(), &w2.to_lowercase());
            Ok(json::to_string(&WordnetSimOutput {
                w1: &w1,
                w2: &w2,
                similarity,
            }))
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing to the
/// given streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, err) {
        Ok(doc) => {
            let _ = writeln!(out, "{doc}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let doc = json::to_string(&ErrorOutput {
                error: e.kind(),
                message: e.to_string(),
            });
            let _ = writeln!(out, "{doc}");
            EXIT_DATA
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
