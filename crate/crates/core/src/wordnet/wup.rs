//! Wu-Palmer similarity `2·d / (l1 + l2 + 2·d)`.
//!
//! Conventions follow the widely used NLTK implementation so that scores
//! can be compared against it:
//!
//! - the least common subsumer is a common ancestor (or the synset itself)
//!   with the greatest shortest-path depth; ties go to one of the two inputs
//!   if it qualifies, otherwise to the lexicographically smallest name;
//! - `d` counts the nodes on the subsumer's longest path to its root;
//! - `l1`, `l2` are shortest hypernym-edge distances to the subsumer;
//! - verbs, which have many roots, get a virtual root at depth 1 sitting
//!   beside the real roots. A synset's distance to it is one more than its
//!   distance to its farthest ancestor.

use std::collections::HashMap;

use super::{Pos, PosTable, SynsetId, WordnetDb};
use crate::error::{Error, Result};

const VIRTUAL_ROOT_NAME: &str = "*ROOT*";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    Synset(usize),
    VirtualRoot,
}

/// Shortest edge distance to every ancestor, the synset itself included.
struct Ancestry {
    node: usize,
    dist: HashMap<usize, u32>,
    farthest: u32,
}

fn ancestry(table: &PosTable, node: usize) -> Ancestry {
    let mut dist = HashMap::new();
    let mut frontier = vec![node];
    let mut d = 0u32;
    let mut farthest = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in frontier {
            if dist.contains_key(&s) {
                continue;
            }
            dist.insert(s, d);
            farthest = d;
            next.extend(table.hypernyms[s].iter().copied());
        }
        frontier = next;
        d += 1;
    }
    Ancestry {
        node,
        dist,
        farthest,
    }
}

fn needs_virtual_root(pos: Pos) -> bool {
    pos == Pos::Verb
}

fn distance_to(table: &PosTable, from: &Ancestry, to: Node, virtual_root: bool) -> u32 {
    match to {
        Node::Synset(t) if t == from.node => 0,
        Node::VirtualRoot => from.farthest + 1,
        Node::Synset(t) => {
            let target = ancestry(table, t);
            let mut best = from
                .dist
                .iter()
                .filter_map(|(k, d1)| target.dist.get(k).map(|d2| d1 + d2))
                .min()
                .unwrap_or(u32::MAX);
            if virtual_root {
                best = best.min(from.farthest + 1 + target.farthest + 1);
            }
            best
        }
    }
}

fn score(table: &PosTable, pos: Pos, a: &Ancestry, b: &Ancestry) -> Result<f64> {
    if a.node == b.node {
        return Ok(1.0);
    }
    let virtual_root = needs_virtual_root(pos);
    let mut candidates: Vec<(u32, Node)> = a
        .dist
        .keys()
        .filter(|k| b.dist.contains_key(k))
        .map(|&k| (table.min_depth[k], Node::Synset(k)))
        .collect();
    if virtual_root {
        candidates.push((0, Node::VirtualRoot));
    }
    let deepest = candidates
        .iter()
        .map(|&(d, _)| d)
        .max()
        .ok_or(Error::NoCommonAncestor)?;
    candidates.retain(|&(d, _)| d == deepest);

    let name = |n: &Node| match *n {
        Node::Synset(i) => table.synsets[i].name.as_str(),
        Node::VirtualRoot => VIRTUAL_ROOT_NAME,
    };
    let lcs = [Node::Synset(a.node), Node::Synset(b.node)]
        .into_iter()
        .find(|n| candidates.iter().any(|(_, c)| c == n))
        .unwrap_or_else(|| {
            candidates
                .iter()
                .map(|&(_, c)| c)
                .min_by(|x, y| name(x).cmp(name(y)))
                .expect("candidates are nonempty")
        });

    let depth = match lcs {
        Node::Synset(i) => table.max_depth[i] + 1,
        Node::VirtualRoot => 1,
    } as f64;
    let l1 = distance_to(table, a, lcs, virtual_root) as f64;
    let l2 = distance_to(table, b, lcs, virtual_root) as f64;
    Ok(2.0 * depth / (l1 + l2 + 2.0 * depth))
}

pub(super) fn wup_similarity(db: &WordnetDb, s1: SynsetId, s2: SynsetId) -> Result<f64> {
    if s1.pos != s2.pos {
        return Err(Error::NoCommonAncestor);
    }
    let table = db.table(s1.pos);
    let lookup = |id: SynsetId| {
        table
            .by_offset
            .get(&id.offset)
            .copied()
            .ok_or(Error::UnknownVariableOrTerm(id.to_string()))
    };
    let a = ancestry(table, lookup(s1)?);
    let b = ancestry(table, lookup(s2)?);
    score(table, s1.pos, &a, &b)
}

pub(super) fn word_similarity(db: &WordnetDb, w1: &str, w2: &str) -> f64 {
    let mut best = 0.0f64;
    for pos in Pos::ALL {
        let table = db.table(pos);
        let senses = |w: &str| -> Vec<Ancestry> {
            let mut seen = Vec::new();
            for form in db.morphy(w, pos) {
                for &i in &table.lemma_index[&form] {
                    if !seen.contains(&i) {
                        seen.push(i);
                    }
                }
            }
            seen.into_iter().map(|i| ancestry(table, i)).collect()
        };
        let left = senses(w1);
        if left.is_empty() {
            continue;
        }
        let right = senses(w2);
        for a in &left {
            for b in &right {
                if let Ok(s) = score(table, pos, a, b) {
                    best = best.max(s);
                }
            }
        }
    }
    best
}
