//! WordNet 3.0 noun and verb taxonomies, read from the standard `dict`
//! directory, with morphological lookup and Wu-Palmer similarity.

mod morphy;
mod parse;
mod wup;

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

pub use morphy::{NOUN_SUFFIX_RULES, VERB_SUFFIX_RULES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Pos {
    Noun,
    Verb,
}

impl Pos {
    pub const ALL: [Pos; 2] = [Pos::Noun, Pos::Verb];

    pub fn tag(self) -> char {
        match self {
            Pos::Noun => 'n',
            Pos::Verb => 'v',
        }
    }

    fn file_suffix(self) -> &'static str {
        match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
        }
    }
}

/// Byte offset in the data file plus part of speech.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SynsetId {
    pub offset: u32,
    pub pos: Pos,
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08}-{}", self.offset, self.pos.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Synset {
    pub id: SynsetId,
    /// Conventional `lemma.pos.NN` name (first lemma, sense number from the
    /// index file).
    pub name: String,
    pub lemmas: Vec<String>,
    /// Targets of `@` (hypernym) and `@i` (instance hypernym) pointers.
    pub hypernym_ids: Vec<SynsetId>,
}

/// Everything loaded for one part of speech. Synsets are addressed by their
/// position in `synsets` internally.
#[derive(Debug, Default)]
struct PosTable {
    synsets: Vec<Synset>,
    by_offset: HashMap<u32, usize>,
    hypernyms: Vec<Vec<usize>>,
    lemma_index: HashMap<String, Vec<usize>>,
    exceptions: HashMap<String, Vec<String>>,
    /// Edges on the shortest / longest path to a hierarchy root.
    min_depth: Vec<u32>,
    max_depth: Vec<u32>,
}

/// Immutable after [`WordnetDb::load`]; all queries are read-only.
#[derive(Debug)]
pub struct WordnetDb {
    nouns: PosTable,
    verbs: PosTable,
}

impl WordnetDb {
    /// Reads `index.{noun,verb}`, `data.{noun,verb}` and `{noun,verb}.exc`.
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        for pos in Pos::ALL {
            for name in parse::files_for(pos) {
                if !dir.join(&name).is_file() {
                    return Err(Error::MissingWordnetFile(name));
                }
            }
        }
        Ok(WordnetDb {
            nouns: parse::load_pos(dir, Pos::Noun)?,
            verbs: parse::load_pos(dir, Pos::Verb)?,
        })
    }

    /// Reads the directory named by `WORDNET_DIR`.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os("WORDNET_DIR") {
            Some(dir) => Self::load(dir),
            None => Err(Error::MissingWordnetFile(
                "WORDNET_DIR is not set".to_string(),
            )),
        }
    }

    fn table(&self, pos: Pos) -> &PosTable {
        match pos {
            Pos::Noun => &self.nouns,
            Pos::Verb => &self.verbs,
        }
    }

    pub fn synset_count(&self, pos: Pos) -> usize {
        self.table(pos).synsets.len()
    }

    pub fn synset(&self, id: SynsetId) -> Option<&Synset> {
        let t = self.table(id.pos);
        t.by_offset.get(&id.offset).map(|&i| &t.synsets[i])
    }

    pub fn synsets(&self, pos: Pos) -> impl Iterator<Item = &Synset> {
        self.table(pos).synsets.iter()
    }

    /// Looks a synset up by its `lemma.pos.NN` name.
    pub fn synset_by_name(&self, name: &str) -> Option<&Synset> {
        let mut parts = name.rsplitn(3, '.');
        let sense: usize = parts.next()?.parse().ok()?;
        let pos = match parts.next()? {
            "n" => Pos::Noun,
            "v" => Pos::Verb,
            _ => return None,
        };
        let lemma = parts.next()?;
        let t = self.table(pos);
        let idx = *t.lemma_index.get(lemma)?.get(sense.checked_sub(1)?)?;
        Some(&t.synsets[idx])
    }

    /// Synsets indexed under exactly `lemma`, in index-file order.
    pub fn lemma_synsets(&self, lemma: &str, pos: Pos) -> Vec<&Synset> {
        let t = self.table(pos);
        t.lemma_index
            .get(lemma)
            .map(|v| v.iter().map(|&i| &t.synsets[i]).collect())
            .unwrap_or_default()
    }

    pub fn is_indexed(&self, lemma: &str, pos: Pos) -> bool {
        self.table(pos).lemma_index.contains_key(lemma)
    }

    /// Base forms of `word` that are indexed lemmas.
    pub fn morphy(&self, word: &str, pos: Pos) -> Vec<String> {
        let t = self.table(pos);
        morphy::base_forms(word, pos, &t.exceptions, |f| t.lemma_index.contains_key(f))
    }

    /// Noun synsets then verb synsets of every base form of `word`, without
    /// duplicates.
    pub fn synsets_of(&self, word: &str) -> Vec<&Synset> {
        let mut out: Vec<&Synset> = Vec::new();
        for pos in Pos::ALL {
            let t = self.table(pos);
            let mut seen = std::collections::HashSet::new();
            for form in self.morphy(word, pos) {
                for &i in &t.lemma_index[&form] {
                    if seen.insert(i) {
                        out.push(&t.synsets[i]);
                    }
                }
            }
        }
        out
    }

    /// Nodes on the shortest hypernym path from the synset to the root of
    /// its hierarchy, both ends included (so a root has depth 1).
    pub fn depth(&self, id: SynsetId) -> Option<u32> {
        let t = self.table(id.pos);
        t.by_offset.get(&id.offset).map(|&i| t.min_depth[i] + 1)
    }

    /// Nodes on the longest hypernym path to a root, both ends included.
    pub fn max_depth(&self, id: SynsetId) -> Option<u32> {
        let t = self.table(id.pos);
        t.by_offset.get(&id.offset).map(|&i| t.max_depth[i] + 1)
    }

    pub fn wup_similarity(&self, s1: &Synset, s2: &Synset) -> Result<f64> {
        wup::wup_similarity(self, s1.id, s2.id)
    }

    /// `R(w1, w2)`: 1 for identical strings, otherwise the best Wu-Palmer
    /// score over same-part-of-speech sense pairs, 0 when there is none.
    pub fn word_similarity(&self, w1: &str, w2: &str) -> f64 {
        if w1 == w2 {
            return 1.0;
        }
        wup::word_similarity(self, w1, w2)
    }
}
