//! Mamdani inference over two inputs (lower and upper similarity) and one
//! output (the 0–5 rank).
//!
//! Operators: conjunction is `min`, implication clips the consequent with
//! `min`, aggregation is pointwise `max`, and the crisp output is the
//! centroid of the aggregate sampled on a uniform grid.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};

pub const LOWER_VARIABLE: &str = "similarity_lower";
pub const UPPER_VARIABLE: &str = "similarity_upper";

/// Default number of samples spanning the output domain (step 0.001 on [0, 5]).
pub const DEFAULT_RESOLUTION: usize = 5001;

/// Aggregates with less total mass than this are treated as "no rule fired".
pub const ZERO_MASS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangularMf {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TriangularMf {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "non-finite triangle tri({a}, {b}, {c})"
            )));
        }
        if a > b || b > c {
            return Err(Error::InvalidConfig(format!(
                "triangle tri({a}, {b}, {c}) violates a <= b <= c"
            )));
        }
        Ok(TriangularMf { a, b, c })
    }

    /// Membership of `x`. A vertical edge (`a == b` or `b == c`) belongs to
    /// the plateau, so `tri(0, 0, 0.5)` is 1 at 0.
    pub fn eval(&self, x: f64) -> f64 {
        let TriangularMf { a, b, c } = *self;
        if x < a || x > c {
            0.0
        } else if x == b {
            1.0
        } else if x < b {
            (x - a) / (b - a)
        } else {
            (c - x) / (c - b)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    pub name: String,
    pub mf: TriangularMf,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinguisticVariable {
    pub name: String,
    pub domain: (f64, f64),
    pub terms: Vec<Term>,
}

impl LinguisticVariable {
    pub fn new(name: impl Into<String>, domain: (f64, f64), terms: Vec<Term>) -> Result<Self> {
        let name = name.into();
        let (lo, hi) = domain;
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::InvalidConfig(format!(
                "variable `{name}` has empty domain [{lo}, {hi}]"
            )));
        }
        let mut seen = HashSet::new();
        for term in &terms {
            if !seen.insert(term.name.as_str()) {
                return Err(Error::InvalidConfig(format!(
                    "duplicate term `{}` in variable `{name}`",
                    term.name
                )));
            }
            if term.mf.a < lo || term.mf.c > hi {
                return Err(Error::InvalidConfig(format!(
                    "term `{}` of `{name}` leaves the domain [{lo}, {hi}]",
                    term.name
                )));
            }
        }
        Ok(LinguisticVariable { name, domain, terms })
    }

    pub fn term(&self, name: &str) -> Option<&Term> {
        self.terms.iter().find(|t| t.name == name)
    }

    fn term_index(&self, name: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.name == name)
    }

    /// Degree of `x` in every term, in declaration order. `x` is clamped to
    /// the domain first.
    pub fn degrees(&self, x: f64) -> Vec<f64> {
        let x = x.clamp(self.domain.0, self.domain.1);
        self.terms.iter().map(|t| t.mf.eval(x)).collect()
    }

    pub fn fuzzify(&self, x: f64) -> BTreeMap<String, f64> {
        self.terms
            .iter()
            .zip(self.degrees(x))
            .map(|(t, d)| (t.name.clone(), d))
            .collect()
    }
}

/// `variable is term`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Clause {
    pub variable: String,
    pub term: String,
}

impl Clause {
    pub fn new(variable: impl Into<String>, term: impl Into<String>) -> Self {
        Clause {
            variable: variable.into(),
            term: term.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rule {
    pub antecedents: Vec<Clause>,
    pub consequent: Clause,
}

impl Rule {
    pub fn new(antecedents: Vec<Clause>, consequent: Clause) -> Self {
        Rule {
            antecedents,
            consequent,
        }
    }
}

/// Fuzzified inputs keyed by variable name, then term name.
pub type FuzzifiedInputs = BTreeMap<String, BTreeMap<String, f64>>;

/// Firing strength: the minimum antecedent degree.
pub fn rule_strength(rule: &Rule, inputs: &FuzzifiedInputs) -> Result<f64> {
    let mut strength = 1.0f64;
    for clause in &rule.antecedents {
        let degree = inputs
            .get(&clause.variable)
            .and_then(|terms| terms.get(&clause.term))
            .ok_or_else(|| {
                Error::UnknownVariableOrTerm(format!("{}.{}", clause.variable, clause.term))
            })?;
        strength = strength.min(*degree);
    }
    Ok(strength)
}

// Rule with variable/term names resolved to indices.
#[derive(Debug, Clone, PartialEq)]
struct CompiledRule {
    antecedents: Vec<(Input, usize)>,
    consequent: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Input {
    Lower,
    Upper,
}

/// A validated inference system: the two similarity inputs, one output
/// variable, a nonempty rule base and the centroid grid resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct FisConfig {
    lower: LinguisticVariable,
    upper: LinguisticVariable,
    output: LinguisticVariable,
    rules: Vec<Rule>,
    compiled: Vec<CompiledRule>,
    resolution: usize,
}

impl FisConfig {
    /// The output variable is the one that only appears in consequents; the
    /// remaining two must be `similarity_lower` and `similarity_upper`.
    pub fn new(variables: Vec<LinguisticVariable>, rules: Vec<Rule>) -> Result<Self> {
        if rules.is_empty() {
            return Err(Error::InvalidConfig("rule base is empty".into()));
        }
        let mut names = HashSet::new();
        for v in &variables {
            if !names.insert(v.name.as_str()) {
                return Err(Error::InvalidConfig(format!("duplicate variable `{}`", v.name)));
            }
        }
        let consequent_vars: HashSet<&str> =
            rules.iter().map(|r| r.consequent.variable.as_str()).collect();
        if consequent_vars.len() != 1 {
            return Err(Error::InvalidConfig(format!(
                "ambiguous output variable: consequents name {} variables",
                consequent_vars.len()
            )));
        }
        let output_name = consequent_vars.into_iter().next().unwrap().to_string();
        if rules
            .iter()
            .flat_map(|r| &r.antecedents)
            .any(|c| c.variable == output_name)
        {
            return Err(Error::InvalidConfig(format!(
                "output variable `{output_name}` also appears in an antecedent"
            )));
        }

        let mut lower = None;
        let mut upper = None;
        let mut output = None;
        for v in variables {
            match v.name.as_str() {
                n if n == output_name => output = Some(v),
                LOWER_VARIABLE => lower = Some(v),
                UPPER_VARIABLE => upper = Some(v),
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "unexpected input variable `{other}`; inputs are `{LOWER_VARIABLE}` and `{UPPER_VARIABLE}`"
                    )))
                }
            }
        }
        let output = output.ok_or_else(|| {
            Error::UnknownVariableOrTerm(output_name.clone())
        })?;
        let lower = lower.ok_or_else(|| {
            Error::InvalidConfig(format!("missing input variable `{LOWER_VARIABLE}`"))
        })?;
        let upper = upper.ok_or_else(|| {
            Error::InvalidConfig(format!("missing input variable `{UPPER_VARIABLE}`"))
        })?;

        let mut compiled = Vec::with_capacity(rules.len());
        for rule in &rules {
            if rule.antecedents.is_empty() {
                return Err(Error::InvalidConfig("rule without antecedents".into()));
            }
            let mut antecedents = Vec::with_capacity(rule.antecedents.len());
            for clause in &rule.antecedents {
                let (input, var) = match clause.variable.as_str() {
                    LOWER_VARIABLE => (Input::Lower, &lower),
                    UPPER_VARIABLE => (Input::Upper, &upper),
                    _ => return Err(unknown(clause)),
                };
                let t = var.term_index(&clause.term).ok_or_else(|| unknown(clause))?;
                antecedents.push((input, t));
            }
            let consequent = output
                .term_index(&rule.consequent.term)
                .ok_or_else(|| unknown(&rule.consequent))?;
            compiled.push(CompiledRule {
                antecedents,
                consequent,
            });
        }

        Ok(FisConfig {
            lower,
            upper,
            output,
            rules,
            compiled,
            resolution: DEFAULT_RESOLUTION,
        })
    }

    pub fn with_resolution(mut self, resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::InvalidConfig(format!(
                "resolution must be at least 2, got {resolution}"
            )));
        }
        self.resolution = resolution;
        Ok(self)
    }

    pub fn lower(&self) -> &LinguisticVariable {
        &self.lower
    }

    pub fn upper(&self) -> &LinguisticVariable {
        &self.upper
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.output
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// All variables, sorted by name.
    pub fn variables(&self) -> Vec<&LinguisticVariable> {
        let mut vars = vec![&self.lower, &self.upper, &self.output];
        vars.sort_by(|a, b| a.name.cmp(&b.name));
        vars
    }

    pub fn variable(&self, name: &str) -> Option<&LinguisticVariable> {
        [&self.lower, &self.upper, &self.output]
            .into_iter()
            .find(|v| v.name == name)
    }

    /// Replaces the triangle of an existing term, re-validating the domain.
    pub fn with_term(mut self, variable: &str, term: &str, mf: TriangularMf) -> Result<Self> {
        let var = [&mut self.lower, &mut self.upper, &mut self.output]
            .into_iter()
            .find(|v| v.name == variable)
            .ok_or_else(|| Error::UnknownVariableOrTerm(variable.to_string()))?;
        let (lo, hi) = var.domain;
        if mf.a < lo || mf.c > hi {
            return Err(Error::InvalidConfig(format!(
                "term `{term}` of `{variable}` leaves the domain [{lo}, {hi}]"
            )));
        }
        let slot = var
            .terms
            .iter_mut()
            .find(|t| t.name == term)
            .ok_or_else(|| Error::UnknownVariableOrTerm(format!("{variable}.{term}")))?;
        slot.mf = mf;
        Ok(self)
    }

    pub fn fuzzify_inputs(&self, lower: f64, upper: f64) -> FuzzifiedInputs {
        let mut map = BTreeMap::new();
        map.insert(self.lower.name.clone(), self.lower.fuzzify(lower));
        map.insert(self.upper.name.clone(), self.upper.fuzzify(upper));
        map
    }

    /// Strongest firing level per output term (clip heights).
    fn clip_levels(&self, lower: f64, upper: f64) -> Vec<f64> {
        let lo = self.lower.degrees(lower);
        let up = self.upper.degrees(upper);
        let mut levels = vec![0.0f64; self.output.terms.len()];
        for rule in &self.compiled {
            let strength = rule
                .antecedents
                .iter()
                .map(|&(input, t)| match input {
                    Input::Lower => lo[t],
                    Input::Upper => up[t],
                })
                .fold(1.0, f64::min);
            let level = &mut levels[rule.consequent];
            *level = level.max(strength);
        }
        levels
    }

    /// Clipped-and-aggregated output membership sampled on the grid.
    pub fn infer(&self, lower: f64, upper: f64) -> AggregateCurve {
        let levels = self.clip_levels(lower, upper);
        let (lo, hi) = self.output.domain;
        let n = self.resolution;
        let step = (hi - lo) / (n - 1) as f64;
        let mut z = Vec::with_capacity(n);
        let mut m = Vec::with_capacity(n);
        for i in 0..n {
            let zi = if i == n - 1 { hi } else { lo + i as f64 * step };
            let mi = self
                .output
                .terms
                .iter()
                .zip(&levels)
                .filter(|(_, &h)| h > 0.0)
                .map(|(t, &h)| h.min(t.mf.eval(zi)))
                .fold(0.0, f64::max);
            z.push(zi);
            m.push(mi);
        }
        AggregateCurve { z, m }
    }

    /// Crisp rank for a pair of similarities (inputs are clamped to their
    /// domains).
    pub fn rank(&self, lower: f64, upper: f64) -> Result<f64> {
        defuzzify_centroid(&self.infer(lower, upper))
    }
}

fn unknown(clause: &Clause) -> Error {
    Error::UnknownVariableOrTerm(format!("{}.{}", clause.variable, clause.term))
}

/// Output membership sampled at `z`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateCurve {
    pub z: Vec<f64>,
    pub m: Vec<f64>,
}

impl AggregateCurve {
    pub fn mass(&self) -> f64 {
        self.m.iter().sum()
    }
}

/// Discrete centroid `Σ z·m / Σ m`.
pub fn defuzzify_centroid(curve: &AggregateCurve) -> Result<f64> {
    if curve.z.len() < 2 || curve.z.len() != curve.m.len() {
        return Err(Error::InvalidConfig(
            "aggregate curve needs at least two samples".into(),
        ));
    }
    let (mut num, mut den) = (0.0, 0.0);
    for (&z, &m) in curve.z.iter().zip(&curve.m) {
        num += z * m;
        den += m;
    }
    if den < ZERO_MASS {
        return Err(Error::ZeroAggregate);
    }
    Ok(num / den)
}
