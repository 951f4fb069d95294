use std::collections::HashMap;

use super::Pos;

pub const NOUN_SUFFIX_RULES: &[(&str, &str)] = &[
    ("s", ""),
    ("ses", "s"),
    ("xes", "x"),
    ("zes", "z"),
    ("ches", "ch"),
    ("shes", "sh"),
    ("men", "man"),
    ("ies", "y"),
];

pub const VERB_SUFFIX_RULES: &[(&str, &str)] = &[
    ("s", ""),
    ("ies", "y"),
    ("es", "e"),
    ("es", ""),
    ("ed", "e"),
    ("ed", ""),
    ("ing", "e"),
    ("ing", ""),
];

/// An exception-list hit replaces rule-based detachment. The word itself is
/// tried first; only indexed candidates survive, without duplicates.
pub(super) fn base_forms(
    word: &str,
    pos: Pos,
    exceptions: &HashMap<String, Vec<String>>,
    indexed: impl Fn(&str) -> bool,
) -> Vec<String> {
    let rules = match pos {
        Pos::Noun => NOUN_SUFFIX_RULES,
        Pos::Verb => VERB_SUFFIX_RULES,
    };
    let candidates: Vec<String> = match exceptions.get(word) {
        Some(bases) => bases.clone(),
        None => rules
            .iter()
            .filter_map(|(old, new)| {
                word.strip_suffix(old).map(|stem| format!("{stem}{new}"))
            })
            .collect(),
    };
    let mut out: Vec<String> = Vec::new();
    for form in std::iter::once(word.to_string()).chain(candidates) {
        if indexed(&form) && !out.contains(&form) {
            out.push(form);
        }
    }
    out
}
