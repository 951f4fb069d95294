//! SICK-format TSV loading, seeded splits, MSE / Spearman, and the
//! evaluation harness.

use std::collections::HashMap;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fis::FisConfig;
use crate::pipeline::{Pipeline, SimilarityKind};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SickRecord {
    pub pair_id: u64,
    pub sentence_a: String,
    pub sentence_b: String,
    /// Gold relatedness in `[1, 5]`.
    pub relatedness: f64,
    /// Entailment label; kept for completeness, never used for scoring.
    pub entailment: String,
}

const PAIR_ID: &str = "pair_ID";
const SENTENCE_A: &str = "sentence_A";
const SENTENCE_B: &str = "sentence_B";
const RELATEDNESS: &str = "relatedness_score";
const ENTAILMENT: [&str; 2] = ["entailment_judgment", "entailment_label"];

pub fn load_sick(path: &Path) -> Result<Vec<SickRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_sick(&text)
}

/// Parses a tab-separated file whose first line names the columns. Columns
/// are found by name, extra columns are ignored, and the entailment column
/// is optional.
pub fn parse_sick(text: &str) -> Result<Vec<SickRecord>> {
    let mut lines = text.lines().enumerate();
    let header = match lines.next() {
        Some((_, h)) => h.trim_end_matches('\r'),
        None => return Err(Error::MissingColumn(PAIR_ID.to_string())),
    };
    let columns: HashMap<&str, usize> = header
        .split('\t')
        .enumerate()
        .map(|(i, name)| (name.trim(), i))
        .collect();
    let col = |name: &str| {
        columns
            .get(name)
            .copied()
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let (id_col, a_col, b_col, rel_col) =
        (col(PAIR_ID)?, col(SENTENCE_A)?, col(SENTENCE_B)?, col(RELATEDNESS)?);
    let ent_col = ENTAILMENT.iter().find_map(|n| columns.get(n).copied());

    let mut records = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let row_error = |reason: String| Error::RowError {
            line: line_no,
            reason,
        };
        let field = |c: usize, name: &str| {
            fields
                .get(c)
                .map(|f| f.trim())
                .ok_or_else(|| row_error(format!("missing field {name}")))
        };
        let id_text = field(id_col, PAIR_ID)?;
        let pair_id = id_text
            .parse()
            .map_err(|_| row_error(format!("invalid pair id `{id_text}`")))?;
        let rel_text = field(rel_col, RELATEDNESS)?;
        let relatedness: f64 = rel_text
            .parse()
            .map_err(|_| row_error(format!("invalid relatedness `{rel_text}`")))?;
        if !(1.0..=5.0).contains(&relatedness) {
            return Err(row_error(format!("relatedness {relatedness} outside [1, 5]")));
        }
        let sentence_a = field(a_col, SENTENCE_A)?.to_string();
        let sentence_b = field(b_col, SENTENCE_B)?.to_string();
        if sentence_a.is_empty() || sentence_b.is_empty() {
            return Err(row_error("empty sentence".to_string()));
        }
        let entailment = match ent_col {
            Some(c) => field(c, ENTAILMENT[0])?.to_string(),
            None => String::new(),
        };
        records.push(SickRecord {
            pair_id,
            sentence_a,
            sentence_b,
            relatedness,
            entailment,
        });
    }
    Ok(records)
}

/// Writes records back in the five-column trial layout.
pub fn write_sick(records: &[SickRecord]) -> String {
    let mut out = format!("{PAIR_ID}\t{SENTENCE_A}\t{SENTENCE_B}\t{RELATEDNESS}\t{}\n", ENTAILMENT[0]);
    for r in records {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.pair_id, r.sentence_a, r.sentence_b, r.relatedness, r.entailment
        ));
    }
    out
}

fn check_lengths(predictions: &[f64], golds: &[f64]) -> Result<()> {
    if predictions.len() != golds.len() {
        return Err(Error::LengthMismatch {
            expected: predictions.len(),
            found: golds.len(),
        });
    }
    if predictions.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(())
}

pub fn mse(predictions: &[f64], golds: &[f64]) -> Result<f64> {
    check_lengths(predictions, golds)?;
    let sum: f64 = predictions
        .iter()
        .zip(golds)
        .map(|(p, g)| (p - g) * (p - g))
        .sum();
    Ok(sum / predictions.len() as f64)
}

/// 1-based ranks; tied values share the mean of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateInput);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman's rho: Pearson correlation of the average ranks.
pub fn spearman(predictions: &[f64], golds: &[f64]) -> Result<f64> {
    check_lengths(predictions, golds)?;
    pearson(&average_ranks(predictions), &average_ranks(golds))
}

/// Disjoint train/test samples drawn without replacement by a ChaCha8
/// generator seeded with `seed`. Each side is returned in pair-id order.
pub fn split_random(
    records: &[SickRecord],
    n_train: usize,
    n_test: usize,
    seed: u64,
) -> Result<(Vec<SickRecord>, Vec<SickRecord>)> {
    let needed = n_train + n_test;
    if needed > records.len() {
        return Err(Error::InsufficientRecords {
            needed,
            available: records.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = rand::seq::index::sample(&mut rng, records.len(), needed).into_vec();
    let take = |idx: &[usize]| {
        let mut v: Vec<SickRecord> = idx.iter().map(|&i| records[i].clone()).collect();
        v.sort_by_key(|r| r.pair_id);
        v
    };
    Ok((take(&picked[..n_train]), take(&picked[n_train..])))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairOutcome {
    pub pair_id: u64,
    pub rank: f64,
    pub gold: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub pair_id: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    /// Pairs that scored; failures are excluded from the metrics.
    pub n: usize,
    pub mse: Option<f64>,
    /// `None` when either side is constant or fewer than two pairs scored.
    pub spearman: Option<f64>,
    pub seed: Option<u64>,
    pub config_name: String,
    /// `random:<train>/<test>` for a seeded sample, `full` for every record.
    pub split: String,
    pub similarity: SimilarityKind,
    pub per_pair: Vec<PairOutcome>,
    pub failures: Vec<PairFailure>,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        crate::json::to_string(self)
    }
}

/// Scores every record and reports metrics over those that succeed. Pairs
/// are scored in parallel on the current rayon pool; results are gathered
/// in pair-id order so the report does not depend on record order or
/// thread count.
pub fn evaluate(
    pipeline: &Pipeline<'_>,
    config: &FisConfig,
    records: &[SickRecord],
) -> Result<EvalReport> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut ordered: Vec<&SickRecord> = records.iter().collect();
    ordered.sort_by(|a, b| {
        (a.pair_id, &a.sentence_a, &a.sentence_b).cmp(&(b.pair_id, &b.sentence_a, &b.sentence_b))
    });
    let results: Vec<_> = ordered
        .par_iter()
        .map(|r| (r, pipeline.rank(config, &r.sentence_a, &r.sentence_b)))
        .collect();

    let mut per_pair = Vec::new();
    let mut failures = Vec::new();
    for (r, res) in results {
        match res {
            Ok(rr) => per_pair.push(PairOutcome {
                pair_id: r.pair_id,
                rank: rr.rank,
                gold: r.relatedness,
                lower: rr.lower_similarity,
                upper: rr.upper_similarity,
            }),
            Err(e) => failures.push(PairFailure {
                pair_id: r.pair_id,
                error: e.kind().to_string(),
            }),
        }
    }
    Ok(report_from(per_pair, failures, pipeline.kind))
}

/// Runs [`evaluate`] on a dedicated pool of `jobs` threads.
pub fn evaluate_with_jobs(
    pipeline: &Pipeline<'_>,
    config: &FisConfig,
    records: &[SickRecord],
    jobs: usize,
) -> Result<EvalReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    pool.install(|| evaluate(pipeline, config, records))
}

pub(crate) fn report_from(
    per_pair: Vec<PairOutcome>,
    failures: Vec<PairFailure>,
    similarity: SimilarityKind,
) -> EvalReport {
    let preds: Vec<f64> = per_pair.iter().map(|p| p.rank).collect();
    let golds: Vec<f64> = per_pair.iter().map(|p| p.gold).collect();
    EvalReport {
        n: per_pair.len(),
        mse: mse(&preds, &golds).ok(),
        spearman: spearman(&preds, &golds).ok(),
        seed: None,
        config_name: String::new(),
        split: String::new(),
        similarity,
        per_pair,
        failures,
    }
}
