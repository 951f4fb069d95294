//! Strategies and invariant checks shared by the property suites and the
//! acceptance runner.
#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;
use std::sync::Arc;

use frsim::dataset::{self, SickRecord};
use frsim::fis::{Clause, FisConfig, LinguisticVariable, Rule, Term, TriangularMf};
use frsim::fisdsl::{self, presets, round_significant};
use frsim::{lower_approximation, upper_approximation, FuzzyRelation, FuzzySet, Universe};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// A membership degree, with the endpoints drawn often.
pub fn degree() -> impl Strategy<Value = f64> {
    prop_oneof![
        1 => Just(0.0),
        1 => Just(1.0),
        6 => 0.0..=1.0f64,
    ]
}

fn universe(n: usize) -> Arc<Universe> {
    Arc::new(Universe::new((0..n).map(|i| format!("w{i}"))))
}

/// Three fuzzy sets over one universe of 1..=8 words.
pub fn set_triple() -> impl Strategy<Value = (FuzzySet, FuzzySet, FuzzySet)> {
    (1usize..=8).prop_flat_map(|n| {
        let u = universe(n);
        let v = || prop::collection::vec(degree(), n);
        (v(), v(), v()).prop_map(move |(a, b, c)| {
            (
                FuzzySet::new(u.clone(), a).unwrap(),
                FuzzySet::new(u.clone(), b).unwrap(),
                FuzzySet::new(u.clone(), c).unwrap(),
            )
        })
    })
}

/// Raw symmetric matrix with a unit diagonal.
pub fn relation_values(n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(degree(), n * (n - 1) / 2).prop_map(move |upper| {
        let mut m = vec![vec![1.0; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m[i][j] = upper[k];
                m[j][i] = upper[k];
                k += 1;
            }
        }
        m
    })
}

/// Relation plus two memberships with `mu1 <= mu2` pointwise, universe of
/// 1..=max_n words.
pub fn rough_instance(
    max_n: usize,
) -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>, Vec<f64>)> {
    (1usize..=max_n).prop_flat_map(|n| {
        (
            relation_values(n),
            prop::collection::vec((degree(), degree()), n),
        )
            .prop_map(|(rel, pairs)| {
                let (mu1, mu2) = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).unzip();
                (rel, mu1, mu2)
            })
    })
}

pub fn naive_lower(rel: &[Vec<f64>], mu: &[f64]) -> Vec<f64> {
    let n = mu.len();
    let mut out = vec![0.0; n];
    for x in 0..n {
        let mut acc = 1.0f64;
        for y in 0..n {
            acc = acc.min((1.0 - rel[x][y]).max(mu[y]));
        }
        out[x] = acc;
    }
    out
}

pub fn naive_upper(rel: &[Vec<f64>], mu: &[f64]) -> Vec<f64> {
    let n = mu.len();
    let mut out = vec![0.0; n];
    for x in 0..n {
        let mut acc = 0.0f64;
        for y in 0..n {
            acc = acc.max(rel[x][y].min(mu[y]));
        }
        out[x] = acc;
    }
    out
}

// ---- fuzzy sets -----------------------------------------------------------

pub fn check_connectives((a, b, c): (FuzzySet, FuzzySet, FuzzySet)) -> Result<(), TestCaseError> {
    let i = a.intersect(&b).unwrap();
    let u = a.union_of(&b).unwrap();
    for k in 0..a.memberships().len() {
        let (x, y) = (a.memberships()[k], b.memberships()[k]);
        prop_assert!(i.memberships()[k] <= x && i.memberships()[k] <= y);
        prop_assert!(u.memberships()[k] >= x && u.memberships()[k] >= y);
    }
    prop_assert_eq!(&i, &b.intersect(&a).unwrap());
    prop_assert_eq!(&u, &b.union_of(&a).unwrap());
    prop_assert_eq!(
        a.intersect(&b).unwrap().intersect(&c).unwrap(),
        a.intersect(&b.intersect(&c).unwrap()).unwrap()
    );
    prop_assert_eq!(
        a.union_of(&b).unwrap().union_of(&c).unwrap(),
        a.union_of(&b.union_of(&c).unwrap()).unwrap()
    );
    prop_assert_eq!(&a.intersect(&a).unwrap(), &a);
    prop_assert_eq!(&a.union_of(&a).unwrap(), &a);
    let lhs = i.sigma_count() + u.sigma_count();
    let rhs = a.sigma_count() + b.sigma_count();
    prop_assert!((lhs - rhs).abs() <= 1e-12, "{} vs {}", lhs, rhs);
    Ok(())
}

pub fn check_similarities((a, b, _): (FuzzySet, FuzzySet, FuzzySet)) -> Result<(), TestCaseError> {
    let j = a.jaccard_similarity(&b).unwrap();
    prop_assert!((0.0..=1.0).contains(&j));
    prop_assert_eq!(j, b.jaccard_similarity(&a).unwrap());
    let equal = a.memberships() == b.memberships();
    prop_assert_eq!(j == 1.0, equal, "jaccard {} for equal={}", j, equal);
    prop_assert_eq!(a.jaccard_similarity(&a).unwrap(), 1.0);

    let c = a.cosine_similarity(&b).unwrap();
    prop_assert!((0.0..=1.0).contains(&c));
    prop_assert_eq!(c, b.cosine_similarity(&a).unwrap());
    prop_assert_eq!(a.cosine_similarity(&a).unwrap(), 1.0);
    Ok(())
}

// ---- rough approximations -------------------------------------------------

pub fn check_approximations(
    (values, mu1, mu2): (Vec<Vec<f64>>, Vec<f64>, Vec<f64>),
) -> Result<(), TestCaseError> {
    let n = mu1.len();
    let u = universe(n);
    let rel = FuzzyRelation::new(u.clone(), values.clone()).unwrap();
    let s1 = FuzzySet::new(u.clone(), mu1.clone()).unwrap();
    let s2 = FuzzySet::new(u, mu2.clone()).unwrap();
    let (lo1, up1) = (lower_approximation(&rel, &s1).unwrap(), upper_approximation(&rel, &s1).unwrap());
    let (lo2, up2) = (lower_approximation(&rel, &s2).unwrap(), upper_approximation(&rel, &s2).unwrap());

    // bit-for-bit against the double loop
    let (naive_lo, naive_up) = (naive_lower(&values, &mu1), naive_upper(&values, &mu1));
    prop_assert_eq!(lo1.memberships(), naive_lo.as_slice());
    prop_assert_eq!(up1.memberships(), naive_up.as_slice());
    for x in 0..n {
        prop_assert!(lo1.memberships()[x] <= mu1[x] && mu1[x] <= up1.memberships()[x]);
        prop_assert!(lo1.memberships()[x] <= lo2.memberships()[x]);
        prop_assert!(up1.memberships()[x] <= up2.memberships()[x]);
        for v in [lo1.memberships()[x], up1.memberships()[x]] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
    }
    Ok(())
}

// ---- inference ------------------------------------------------------------

fn rounded(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo..=hi).prop_map(round_significant)
}

/// Sorted triangle inside `[lo, hi]`, six significant digits.
fn triangle(lo: f64, hi: f64) -> impl Strategy<Value = TriangularMf> {
    prop::collection::vec(rounded(lo, hi), 3).prop_map(|mut v| {
        v.sort_by(f64::total_cmp);
        TriangularMf::new(v[0], v[1], v[2]).unwrap()
    })
}

const TERM_NAMES: [&str; 5] = ["low", "average", "high", "mid", "tiny"];

fn variable(name: &'static str, lo: f64, hi: f64) -> impl Strategy<Value = LinguisticVariable> {
    prop::collection::vec(triangle(lo, hi), 1..=4).prop_map(move |mfs| {
        let terms = mfs
            .into_iter()
            .zip(TERM_NAMES)
            .map(|(mf, n)| Term { name: n.to_string(), mf })
            .collect();
        LinguisticVariable::new(name, (lo, hi), terms).unwrap()
    })
}

/// Any valid configuration: random triangles, output domain and rules.
pub fn fis_config() -> impl Strategy<Value = FisConfig> {
    let output = prop_oneof![Just(("rank", 5.0)), Just(("score", 1.0)), Just(("grade", 10.0))];
    (
        variable("similarity_lower", 0.0, 1.0),
        variable("similarity_upper", 0.0, 1.0),
        output.prop_flat_map(|(name, hi)| variable(name, 0.0, hi)),
        prop::collection::vec((any::<u8>(), any::<u8>(), any::<u8>(), 0u8..3), 1..=9),
    )
        .prop_map(|(lower, upper, out, picks)| {
            let pick = |v: &LinguisticVariable, k: u8| v.terms[k as usize % v.terms.len()].name.clone();
            let rules = picks
                .into_iter()
                .map(|(l, u, o, shape)| {
                    let lc = Clause::new(&lower.name, pick(&lower, l));
                    let uc = Clause::new(&upper.name, pick(&upper, u));
                    let antecedents = match shape {
                        0 => vec![lc],
                        1 => vec![uc],
                        _ => vec![lc, uc],
                    };
                    Rule::new(antecedents, Clause::new(&out.name, pick(&out, o)))
                })
                .collect();
            FisConfig::new(vec![lower, upper, out], rules).unwrap()
        })
}

pub fn check_dsl_round_trip(config: FisConfig) -> Result<(), TestCaseError> {
    let text = fisdsl::serialize_fis(&config);
    let parsed = fisdsl::parse_fis(&text).unwrap();
    prop_assert_eq!(&parsed, &config);
    prop_assert_eq!(fisdsl::serialize_fis(&parsed), text);
    Ok(())
}

/// Any parse failure of a corrupted source names a 1-based position.
pub fn check_error_positions((pos, junk): (usize, char)) -> Result<(), TestCaseError> {
    let source = presets::MODEL2_SOURCE;
    let cut = pos % source.len();
    let cut = (0..=cut).rev().find(|&i| source.is_char_boundary(i)).unwrap();
    let mut broken = source.to_string();
    broken.insert(cut, junk);
    if let Err(e) = fisdsl::parse_fis(&broken) {
        use frsim::Error::*;
        let (line, column) = match e {
            Syntax { line, column, .. }
            | UnknownTerm { line, column, .. }
            | DuplicateName { line, column, .. }
            | Domain { line, column, .. }
            | Structure { line, column, .. } => (line, column),
            other => return Err(TestCaseError::fail(format!("unpositioned error {other:?}"))),
        };
        prop_assert!(line >= 1 && column >= 1);
    }
    Ok(())
}

pub fn check_rank_bounds((config, l, u): (FisConfig, f64, f64)) -> Result<(), TestCaseError> {
    let (lo, hi) = config.output().domain;
    match config.rank(l, u) {
        Ok(r) => prop_assert!(r >= lo && r <= hi, "rank {} outside [{}, {}]", r, lo, hi),
        Err(e) => prop_assert_eq!(e.kind(), "ZeroAggregate"),
    }
    Ok(())
}

/// Rule order and duplicated rules leave the aggregate untouched; finer
/// grids move the centroid by less than five grid steps.
pub fn check_rule_base_algebra(
    (config, l, u, rot): (FisConfig, f64, f64, usize),
) -> Result<(), TestCaseError> {
    let vars: Vec<LinguisticVariable> = config.variables().into_iter().cloned().collect();
    let mut rules = config.rules().to_vec();
    let k = rot % rules.len();
    rules.rotate_left(k);
    rules.reverse();
    let permuted = FisConfig::new(vars.clone(), rules.clone()).unwrap();
    prop_assert_eq!(permuted.infer(l, u), config.infer(l, u));
    rules.push(rules[k % rules.len()].clone());
    let duplicated = FisConfig::new(vars, rules).unwrap();
    prop_assert_eq!(duplicated.infer(l, u), config.infer(l, u));

    if let Ok(r) = config.rank(l, u) {
        let res = config.resolution();
        let fine = config.clone().with_resolution(2 * res - 1).unwrap().rank(l, u).unwrap();
        let (lo, hi) = config.output().domain;
        prop_assert!((fine - r).abs() < 5.0 * (hi - lo) / res as f64, "{} vs {}", r, fine);
    }
    Ok(())
}

pub fn check_presets_always_fire((l, u): (f64, f64)) -> Result<(), TestCaseError> {
    for config in [presets::model1(), presets::model2()] {
        let r = config.rank(l, u);
        prop_assert!(r.is_ok(), "{:?}", r);
        let r = r.unwrap();
        prop_assert!((0.0..=5.0).contains(&r));
        for degrees in config.fuzzify_inputs(l, u).values() {
            prop_assert!(degrees.values().all(|d| (0.0..=1.0).contains(d)));
        }
    }
    Ok(())
}

// ---- dataset metrics ------------------------------------------------------

pub fn paired_values() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..40).prop_flat_map(|n| {
        let v = || prop::collection::vec((0i32..50).prop_map(|k| k as f64 / 10.0), n);
        (v(), v())
    })
}

pub fn check_mse((p, g): (Vec<f64>, Vec<f64>)) -> Result<(), TestCaseError> {
    let m = dataset::mse(&p, &g).unwrap();
    prop_assert!(m >= 0.0);
    prop_assert_eq!(m == 0.0, p == g);
    prop_assert_eq!(dataset::mse(&g, &g).unwrap(), 0.0);
    Ok(())
}

pub fn check_spearman((p, g): (Vec<f64>, Vec<f64>)) -> Result<(), TestCaseError> {
    let Ok(rho) = dataset::spearman(&p, &g) else {
        let constant = |v: &[f64]| v.iter().all(|x| *x == v[0]);
        prop_assert!(constant(&p) || constant(&g));
        return Ok(());
    };
    prop_assert!((-1.0..=1.0).contains(&rho));
    // strictly increasing maps keep the ranks
    let warped: Vec<f64> = p.iter().map(|x| x * x * x + 2.0 * x + 7.0).collect();
    let shifted: Vec<f64> = g.iter().map(|x| (x + 1.0).ln()).collect();
    prop_assert_eq!(dataset::spearman(&warped, &shifted).unwrap(), rho);
    prop_assert!((dataset::spearman(&g, &p).unwrap() - rho).abs() < 1e-12);
    Ok(())
}

pub fn sick_records() -> impl Strategy<Value = Vec<SickRecord>> {
    let sentence = "[A-Za-z][A-Za-z ,.'!?-]{0,40}[A-Za-z.]";
    prop::collection::vec(
        (
            0u64..100_000,
            sentence,
            sentence,
            (10u32..=50).prop_map(|k| k as f64 / 10.0),
            prop_oneof![Just("NEUTRAL"), Just("ENTAILMENT"), Just("CONTRADICTION")],
        ),
        0..20,
    )
    .prop_map(|rows| {
        rows.into_iter()
            .map(|(id, a, b, rel, ent)| SickRecord {
                pair_id: id,
                sentence_a: a,
                sentence_b: b,
                relatedness: rel,
                entailment: ent.to_string(),
            })
            .collect()
    })
}

pub fn check_sick_round_trip(records: Vec<SickRecord>) -> Result<(), TestCaseError> {
    let text = dataset::write_sick(&records);
    prop_assert_eq!(dataset::parse_sick(&text).unwrap(), records);
    Ok(())
}
