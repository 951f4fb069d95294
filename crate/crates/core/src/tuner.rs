//! Grid search over triangular membership parameters, scored by training
//! MSE.
//!
//! The rule base and the similarity kind stay fixed, so each training
//! pair's (lower, upper) similarities are computed once and every candidate
//! only re-runs inference on them.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{mse, SickRecord};
use crate::error::{Error, Result};
use crate::fis::{FisConfig, TriangularMf};
use crate::fisdsl::round_significant;
use crate::pipeline::Pipeline;

pub const DEFAULT_GRID_SOURCE: &str = include_str!("../../../configs/default_grid.json");

/// Candidate triangles per tunable term, keyed `variable.term`.
///
/// `mirror` lists `[source, target]` variable pairs: whatever triangle the
/// source's i-th term receives is also given to the target's i-th term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub terms: BTreeMap<String, Vec<[f64; 3]>>,
    #[serde(default)]
    pub mirror: Vec<[String; 2]>,
}

impl GridSpec {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::GridSpec(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// Average apex and right foot, and high/good left foot, applied to both
    /// inputs alike; contains both documented models.
    pub fn default_grid() -> Self {
        Self::parse(DEFAULT_GRID_SOURCE).expect("bundled default grid is valid")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    /// Position in enumeration order, counting only valid combinations.
    pub index: usize,
    pub label: String,
    pub config: FisConfig,
}

fn split_key(key: &str) -> Result<(&str, &str)> {
    key.rsplit_once('.')
        .ok_or_else(|| Error::GridSpec(format!("term key `{key}` is not `variable.term`")))
}

fn mirrored_terms(
    base: &FisConfig,
    spec: &GridSpec,
    variable: &str,
    term: &str,
) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for [source, target] in &spec.mirror {
        if source != variable {
            continue;
        }
        let src = base
            .variable(source)
            .ok_or_else(|| Error::GridSpec(format!("unknown mirror variable `{source}`")))?;
        let dst = base
            .variable(target)
            .ok_or_else(|| Error::GridSpec(format!("unknown mirror variable `{target}`")))?;
        let pos = src.terms.iter().position(|t| t.name == term).expect("checked by caller");
        let t = dst.terms.get(pos).ok_or_else(|| {
            Error::GridSpec(format!("`{target}` has no term at position {}", pos + 1))
        })?;
        out.push((target.clone(), t.name.clone()));
    }
    Ok(out)
}

fn label_part(key: &str, t: &[f64; 3]) -> String {
    let f = |x: f64| crate::fisdsl::format_number(round_significant(x));
    format!("{key}=tri({}, {}, {})", f(t[0]), f(t[1]), f(t[2]))
}

/// Cartesian product of the per-term candidates applied to `base`, last key
/// varying fastest. Combinations that break `a <= b <= c` or leave the
/// variable's domain are dropped.
pub fn grid_candidates(base: &FisConfig, spec: &GridSpec) -> Result<Vec<Candidate>> {
    struct Axis<'a> {
        key: &'a str,
        targets: Vec<(String, String)>,
        triples: &'a [[f64; 3]],
    }
    let mut axes = Vec::new();
    for (key, triples) in &spec.terms {
        let (variable, term) = split_key(key)?;
        let var = base
            .variable(variable)
            .ok_or_else(|| Error::GridSpec(format!("unknown variable in `{key}`")))?;
        if var.term(term).is_none() {
            return Err(Error::GridSpec(format!("unknown term in `{key}`")));
        }
        if triples.is_empty() {
            return Err(Error::GridSpec(format!("`{key}` lists no candidates")));
        }
        let mut targets = vec![(variable.to_string(), term.to_string())];
        targets.extend(mirrored_terms(base, spec, variable, term)?);
        axes.push(Axis {
            key,
            targets,
            triples,
        });
    }

    let total: usize = axes.iter().map(|a| a.triples.len()).product();
    let mut out = Vec::new();
    let mut choice = vec![0usize; axes.len()];
    for _ in 0..total {
        let mut config = Ok(base.clone());
        let mut label = Vec::with_capacity(axes.len());
        for (axis, &c) in axes.iter().zip(&choice) {
            let t = axis.triples[c];
            label.push(label_part(axis.key, &t));
            for (v, term) in &axis.targets {
                config = config.and_then(|cfg| {
                    cfg.with_term(v, term, TriangularMf::new(t[0], t[1], t[2])?)
                });
            }
        }
        if let Ok(config) = config {
            out.push(Candidate {
                index: out.len(),
                label: label.join(" "),
                config,
            });
        }
        // odometer increment, last axis fastest
        for k in (0..axes.len()).rev() {
            choice[k] += 1;
            if choice[k] < axes[k].triples.len() {
                break;
            }
            choice[k] = 0;
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyGrid);
    }
    Ok(out)
}

/// A training pair reduced to what inference needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CachedPair {
    pub pair_id: u64,
    pub lower: f64,
    pub upper: f64,
    pub gold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeaderboardEntry {
    pub index: usize,
    pub label: String,
    /// `None` when no pair could be ranked.
    pub mse: Option<f64>,
    pub n: usize,
    pub failures: usize,
}

#[derive(Debug, Clone)]
pub struct TuneOutcome {
    pub best: Candidate,
    pub best_mse: f64,
    /// Sorted by ascending MSE, ties by enumeration order.
    pub leaderboard: Vec<LeaderboardEntry>,
    /// Training pairs whose similarities could not be computed.
    pub skipped_pairs: Vec<u64>,
}

/// Similarities for every record, in pair-id order; failing pairs are
/// returned separately.
pub fn cache_similarities(
    pipeline: &Pipeline<'_>,
    records: &[SickRecord],
) -> (Vec<CachedPair>, Vec<u64>) {
    let mut ordered: Vec<&SickRecord> = records.iter().collect();
    ordered.sort_by_key(|r| r.pair_id);
    let results: Vec<_> = ordered
        .par_iter()
        .map(|r| (r, pipeline.similarities(&r.sentence_a, &r.sentence_b)))
        .collect();
    let mut pairs = Vec::new();
    let mut skipped = Vec::new();
    for (r, res) in results {
        match res {
            Ok(s) => pairs.push(CachedPair {
                pair_id: r.pair_id,
                lower: s.lower_similarity,
                upper: s.upper_similarity,
                gold: r.relatedness,
            }),
            Err(_) => skipped.push(r.pair_id),
        }
    }
    (pairs, skipped)
}

/// MSE of one configuration over cached pairs; pairs where no rule fires
/// are left out and counted.
pub fn score_cached(config: &FisConfig, pairs: &[CachedPair]) -> (Option<f64>, usize, usize) {
    let mut preds = Vec::with_capacity(pairs.len());
    let mut golds = Vec::with_capacity(pairs.len());
    for p in pairs {
        if let Ok(r) = config.rank(p.lower, p.upper) {
            preds.push(r);
            golds.push(p.gold);
        }
    }
    let n = preds.len();
    (mse(&preds, &golds).ok(), n, pairs.len() - n)
}

pub fn tune_cached(pairs: &[CachedPair], candidates: &[Candidate]) -> Result<TuneOutcome> {
    if candidates.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if pairs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut leaderboard: Vec<LeaderboardEntry> = candidates
        .par_iter()
        .map(|c| {
            let (mse, n, failures) = score_cached(&c.config, pairs);
            LeaderboardEntry {
                index: c.index,
                label: c.label.clone(),
                mse,
                n,
                failures,
            }
        })
        .collect();
    leaderboard.sort_by(|x, y| match (x.mse, y.mse) {
        (Some(a), Some(b)) => a.total_cmp(&b).then(x.index.cmp(&y.index)),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => x.index.cmp(&y.index),
    });
    let top = &leaderboard[0];
    let best_mse = top.mse.ok_or(Error::EmptyInput)?;
    let best = candidates
        .iter()
        .find(|c| c.index == top.index)
        .expect("leaderboard indices come from candidates")
        .clone();
    Ok(TuneOutcome {
        best,
        best_mse,
        leaderboard,
        skipped_pairs: Vec::new(),
    })
}

/// Picks the candidate with the lowest training MSE.
pub fn tune(
    pipeline: &Pipeline<'_>,
    train: &[SickRecord],
    candidates: &[Candidate],
) -> Result<TuneOutcome> {
    if candidates.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if train.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (pairs, skipped) = cache_similarities(pipeline, train);
    let mut outcome = tune_cached(&pairs, candidates)?;
    outcome.skipped_pairs = skipped;
    Ok(outcome)
}
