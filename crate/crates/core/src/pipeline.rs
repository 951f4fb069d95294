//! Sentence-pair scoring: tokenize, build the pair universe, derive
//! membership vectors and the word relation, approximate, compare, rank.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fis::FisConfig;
use crate::fuzzyset::{FuzzySet, Universe};
use crate::roughapprox::{lower_approximation, upper_approximation, FuzzyRelation};
use crate::wordnet::WordnetDb;

pub const BUNDLED_STOPWORDS: &str = include_str!("../data/stopwords.txt");

/// How two approximation vectors are compared.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SimilarityKind {
    #[default]
    Cosine,
    Jaccard,
}

impl SimilarityKind {
    pub fn name(self) -> &'static str {
        match self {
            SimilarityKind::Cosine => "cosine",
            SimilarityKind::Jaccard => "jaccard",
        }
    }

    pub fn compare(self, a: &FuzzySet, b: &FuzzySet) -> Result<f64> {
        match self {
            SimilarityKind::Cosine => a.cosine_similarity(b),
            SimilarityKind::Jaccard => a.jaccard_similarity(b),
        }
    }
}

impl fmt::Display for SimilarityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimilarityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cosine" => Ok(SimilarityKind::Cosine),
            "jaccard" => Ok(SimilarityKind::Jaccard),
            other => Err(Error::InvalidConfig(format!(
                "unknown similarity kind `{other}`"
            ))),
        }
    }
}

/// Words dropped before scoring. One lowercase token per line; `#` starts a
/// comment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stopwords {
    words: HashSet<String>,
}

impl Stopwords {
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::to_lowercase)
            .collect();
        Stopwords { words }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&text))
    }

    /// The list shipped with the crate.
    pub fn bundled() -> &'static Stopwords {
        static BUNDLED: OnceLock<Stopwords> = OnceLock::new();
        BUNDLED.get_or_init(|| Stopwords::parse(BUNDLED_STOPWORDS))
    }

    pub fn none() -> Self {
        Stopwords {
            words: HashSet::new(),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Lowercases, strips punctuation, splits on whitespace and drops
    /// stopwords. Order and duplicates are kept.
    pub fn tokenize(&self, text: &str) -> Result<Vec<String>> {
        let cleaned: String = text
            .chars()
            .filter(|&c| c != '\'' && c != '’')
            .map(|c| {
                if c.is_alphanumeric() {
                    c.to_lowercase().next().unwrap_or(c)
                } else {
                    ' '
                }
            })
            .collect();
        let tokens: Vec<String> = cleaned
            .split_whitespace()
            .filter(|t| !self.contains(t))
            .map(str::to_string)
            .collect();
        if tokens.is_empty() {
            return Err(Error::EmptySentence(text.to_string()));
        }
        Ok(tokens)
    }
}

impl Default for Stopwords {
    fn default() -> Self {
        Stopwords::bundled().clone()
    }
}

/// [`Stopwords::tokenize`] with the bundled list.
pub fn tokenize(text: &str) -> Result<Vec<String>> {
    Stopwords::bundled().tokenize(text)
}

pub fn build_universe(tokens1: &[String], tokens2: &[String]) -> Universe {
    Universe::new(tokens1.iter().chain(tokens2).cloned())
}

/// `R(x, y)` over the universe, Wu-Palmer based, exactly 1 on the diagonal.
pub fn relation_matrix(db: &WordnetDb, universe: Arc<Universe>) -> FuzzyRelation {
    FuzzyRelation::from_fn(universe, |a, b| db.word_similarity(a, b))
}

/// `μ(w)` is 1 for a word of the sentence, otherwise the best relation value
/// between `w` and any sentence word. Every sentence token must belong to the
/// relation's universe.
pub fn membership_from_relation(rel: &FuzzyRelation, tokens: &[String]) -> FuzzySet {
    let universe = rel.universe().clone();
    let present: Vec<usize> = tokens
        .iter()
        .filter_map(|t| universe.index_of(t))
        .collect();
    let memberships = (0..universe.len())
        .map(|i| {
            if present.contains(&i) {
                1.0
            } else {
                present
                    .iter()
                    .map(|&j| rel.get(i, j))
                    .fold(0.0, f64::max)
            }
        })
        .collect();
    FuzzySet::from_raw(universe, memberships)
}

/// Membership vector of a sentence computed directly from WordNet.
pub fn membership_vector(db: &WordnetDb, tokens: &[String], universe: Arc<Universe>) -> FuzzySet {
    let memberships = universe
        .tokens()
        .iter()
        .map(|w| {
            if tokens.contains(w) {
                1.0
            } else {
                tokens
                    .iter()
                    .map(|v| db.word_similarity(w, v))
                    .fold(0.0, f64::max)
            }
        })
        .collect();
    FuzzySet::from_raw(universe, memberships)
}

/// Lower and upper similarity of a sentence pair, before fusion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairSimilarity {
    pub lower_similarity: f64,
    pub upper_similarity: f64,
    pub universe_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankResult {
    pub lower_similarity: f64,
    pub upper_similarity: f64,
    pub rank: f64,
    pub universe_size: usize,
    pub similarity_kind: SimilarityKind,
}

/// Everything needed to score pairs except the FIS: shared, read-only, and
/// safe to use from many threads at once.
#[derive(Debug, Clone, Copy)]
pub struct Pipeline<'a> {
    pub db: &'a WordnetDb,
    pub stopwords: &'a Stopwords,
    pub kind: SimilarityKind,
}

impl<'a> Pipeline<'a> {
    pub fn new(db: &'a WordnetDb, stopwords: &'a Stopwords, kind: SimilarityKind) -> Self {
        Pipeline {
            db,
            stopwords,
            kind,
        }
    }

    pub fn similarities(&self, s1: &str, s2: &str) -> Result<PairSimilarity> {
        let t1 = self.stopwords.tokenize(s1)?;
        let t2 = self.stopwords.tokenize(s2)?;
        let universe = Arc::new(build_universe(&t1, &t2));
        let rel = relation_matrix(self.db, universe.clone());
        let mu1 = membership_from_relation(&rel, &t1);
        let mu2 = membership_from_relation(&rel, &t2);
        let lower = self.kind.compare(
            &lower_approximation(&rel, &mu1)?,
            &lower_approximation(&rel, &mu2)?,
        )?;
        let upper = self.kind.compare(
            &upper_approximation(&rel, &mu1)?,
            &upper_approximation(&rel, &mu2)?,
        )?;
        Ok(PairSimilarity {
            lower_similarity: lower,
            upper_similarity: upper,
            universe_size: universe.len(),
        })
    }

    pub fn rank(&self, config: &FisConfig, s1: &str, s2: &str) -> Result<RankResult> {
        let sim = self.similarities(s1, s2)?;
        Ok(RankResult {
            lower_similarity: sim.lower_similarity,
            upper_similarity: sim.upper_similarity,
            rank: config.rank(sim.lower_similarity, sim.upper_similarity)?,
            universe_size: sim.universe_size,
            similarity_kind: self.kind,
        })
    }
}

/// Scores a pair with the bundled stopword list.
pub fn sentence_rank(
    db: &WordnetDb,
    config: &FisConfig,
    s1: &str,
    s2: &str,
    kind: SimilarityKind,
) -> Result<RankResult> {
    Pipeline::new(db, Stopwords::bundled(), kind).rank(config, s1, s2)
}
