//! Fuzzy sets over a shared, finite word universe.
//!
//! Cardinality is the sigma-count (sum of memberships), intersection is the
//! pointwise minimum and union the pointwise maximum.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Ordered set of distinct tokens. Indices into membership vectors follow
/// lexicographic token order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Universe {
    tokens: Vec<String>,
}

impl Universe {
    /// Builds a universe from any tokens; duplicates are dropped and the
    /// remainder sorted.
    pub fn new<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = tokens.into_iter().map(Into::into).collect();
        Universe {
            tokens: set.into_iter().collect(),
        }
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.tokens
            .binary_search_by(|t| t.as_str().cmp(token))
            .ok()
    }
}

/// Membership degrees over a [`Universe`]. Every degree lies in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzySet {
    #[serde(skip)]
    universe: Arc<Universe>,
    memberships: Vec<f64>,
}

impl FuzzySet {
    pub fn new(universe: Arc<Universe>, memberships: Vec<f64>) -> Result<Self> {
        if memberships.len() != universe.len() {
            return Err(Error::LengthMismatch {
                expected: universe.len(),
                found: memberships.len(),
            });
        }
        if let Some((index, &value)) = memberships
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::MembershipOutOfRange { index, value });
        }
        Ok(FuzzySet {
            universe,
            memberships,
        })
    }

    /// The all-zero set.
    pub fn empty(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        FuzzySet {
            universe,
            memberships: vec![0.0; n],
        }
    }

    pub(crate) fn from_raw(universe: Arc<Universe>, memberships: Vec<f64>) -> Self {
        debug_assert_eq!(universe.len(), memberships.len());
        FuzzySet {
            universe,
            memberships,
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn memberships(&self) -> &[f64] {
        &self.memberships
    }

    pub fn membership(&self, token: &str) -> Option<f64> {
        self.universe
            .index_of(token)
            .map(|i| self.memberships[i])
    }

    pub fn is_all_zero(&self) -> bool {
        self.memberships.iter().all(|&m| m == 0.0)
    }

    pub fn intersect(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, f64::min)
    }

    pub fn union_of(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, f64::max)
    }

    /// Fuzzy cardinality: the sum of membership degrees.
    pub fn sigma_count(&self) -> f64 {
        self.memberships.iter().sum()
    }

    /// `|A ∩ B| / |A ∪ B|` with sigma-count cardinality. Two all-zero sets
    /// are considered identical and score 1.0.
    pub fn jaccard_similarity(&self, other: &FuzzySet) -> Result<f64> {
        self.check_universe(other)?;
        let (mut inter, mut union) = (0.0, 0.0);
        for (&a, &b) in self.memberships.iter().zip(&other.memberships) {
            inter += a.min(b);
            union += a.max(b);
        }
        if union == 0.0 {
            return Ok(1.0);
        }
        Ok((inter / union).clamp(0.0, 1.0))
    }

    /// Cosine of the angle between the two membership vectors. Two all-zero
    /// sets score 1.0; an all-zero set against a non-empty one scores 0.0.
    pub fn cosine_similarity(&self, other: &FuzzySet) -> Result<f64> {
        self.check_universe(other)?;
        let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
        for (&a, &b) in self.memberships.iter().zip(&other.memberships) {
            dot += a * b;
            na += a * a;
            nb += b * b;
        }
        match (na == 0.0, nb == 0.0) {
            (true, true) => Ok(1.0),
            (true, false) | (false, true) => Ok(0.0),
            // sqrt of the product keeps x·x exactly 1: sqrt(n²) == n in IEEE
            // arithmetic
            _ => Ok((dot / (na * nb).sqrt()).clamp(0.0, 1.0)),
        }
    }

    fn zip_with(&self, other: &FuzzySet, f: impl Fn(f64, f64) -> f64) -> Result<FuzzySet> {
        self.check_universe(other)?;
        let memberships = self
            .memberships
            .iter()
            .zip(&other.memberships)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(FuzzySet::from_raw(self.universe.clone(), memberships))
    }

    pub(crate) fn check_universe(&self, other: &FuzzySet) -> Result<()> {
        check_same_universe(&self.universe, &other.universe)
    }
}

pub(crate) fn check_same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::UniverseMismatch)
    }
}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (t, m)) in self
            .universe
            .tokens()
            .iter()
            .zip(&self.memberships)
            .enumerate()
        {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}:{m}")?;
        }
        write!(f, "}}")
    }
}
