//! Fuzzy-rough lower and upper approximations.
//!
//! For a relation `R` and a fuzzy set `μ` over the same universe:
//!
//! ```text
//! lower(x) = min_y max(1 - R(x, y), μ(y))
//! upper(x) = max_y min(R(x, y), μ(y))
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fuzzyset::{check_same_universe, FuzzySet, Universe};

/// Reflexive, symmetric `[0, 1]`-valued relation over a universe, stored as a
/// dense row-major matrix. Transitivity is not required.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyRelation {
    universe: Arc<Universe>,
    values: Vec<f64>,
}

impl FuzzyRelation {
    /// Validates range, reflexivity and symmetry; the first offending entry is
    /// reported.
    pub fn new(universe: Arc<Universe>, values: Vec<Vec<f64>>) -> Result<Self> {
        let n = universe.len();
        if values.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: values.len(),
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &values {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        for i in 0..n {
            for j in 0..n {
                let v = flat[i * n + j];
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidRelation {
                        row: i,
                        col: j,
                        reason: "value outside [0, 1]",
                    });
                }
                if i == j && v != 1.0 {
                    return Err(Error::InvalidRelation {
                        row: i,
                        col: j,
                        reason: "not reflexive",
                    });
                }
                if j > i && v != flat[j * n + i] {
                    return Err(Error::InvalidRelation {
                        row: i,
                        col: j,
                        reason: "not symmetric",
                    });
                }
            }
        }
        Ok(FuzzyRelation {
            universe,
            values: flat,
        })
    }

    /// Crisp identity: 1 on the diagonal, 0 elsewhere.
    pub fn identity(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            values[i * n + i] = 1.0;
        }
        FuzzyRelation { universe, values }
    }

    /// Builds a relation from a symmetric similarity function; the diagonal is
    /// forced to 1 and `sim` is only called for `i < j`.
    pub fn from_fn(universe: Arc<Universe>, mut sim: impl FnMut(&str, &str) -> f64) -> Self {
        let n = universe.len();
        let mut values = vec![0.0; n * n];
        let tokens = universe.tokens();
        for i in 0..n {
            values[i * n + i] = 1.0;
            for j in (i + 1)..n {
                let v = sim(&tokens[i], &tokens[j]).clamp(0.0, 1.0);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        FuzzyRelation { universe, values }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.values[i * n..(i + 1) * n]
    }
}

pub fn lower_approximation(rel: &FuzzyRelation, mu: &FuzzySet) -> Result<FuzzySet> {
    check_same_universe(rel.universe(), mu.universe())?;
    let m = mu.memberships();
    let out = (0..rel.len())
        .map(|x| {
            rel.row(x)
                .iter()
                .zip(m)
                .map(|(&r, &my)| (1.0 - r).max(my))
                .fold(1.0, f64::min)
        })
        .collect();
    Ok(FuzzySet::from_raw(mu.universe().clone(), out))
}

pub fn upper_approximation(rel: &FuzzyRelation, mu: &FuzzySet) -> Result<FuzzySet> {
    check_same_universe(rel.universe(), mu.universe())?;
    let m = mu.memberships();
    let out = (0..rel.len())
        .map(|x| {
            rel.row(x)
                .iter()
                .zip(m)
                .map(|(&r, &my)| r.min(my))
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(FuzzySet::from_raw(mu.universe().clone(), out))
}
