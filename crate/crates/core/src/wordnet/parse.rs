use std::collections::HashMap;
use std::fs;
use std::path::Path;

use super::{Pos, PosTable, Synset, SynsetId};
use crate::error::{Error, Result};

pub(super) fn files_for(pos: Pos) -> [String; 3] {
    let s = pos.file_suffix();
    [format!("index.{s}"), format!("data.{s}"), format!("{s}.exc")]
}

fn read(dir: &Path, name: &str) -> Result<String> {
    let path = dir.join(name);
    let bytes = fs::read(&path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingWordnetFile(name.to_string()),
        _ => Error::io(path, e),
    })?;
    // The 3.0 files are ASCII apart from a few Latin-1 glosses.
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

/// Content lines with their 1-based line numbers; license lines (two leading
/// spaces) and blank lines are skipped.
fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with("  ") && !l.trim().is_empty())
}

struct Fields<'a> {
    file: &'a str,
    line: usize,
    iter: std::str::SplitAsciiWhitespace<'a>,
}

impl<'a> Fields<'a> {
    fn new(file: &'a str, line: usize, text: &'a str) -> Self {
        Fields {
            file,
            line,
            iter: text.split_ascii_whitespace(),
        }
    }

    fn error(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            file: self.file.to_string(),
            line: self.line,
            reason: reason.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        self.iter
            .next()
            .ok_or_else(|| self.error(format!("truncated record: missing {what}")))
    }

    fn number(&mut self, what: &str, radix: u32) -> Result<usize> {
        let tok = self.next(what)?;
        usize::from_str_radix(tok, radix)
            .map_err(|_| self.error(format!("invalid {what} `{tok}`")))
    }

    fn offset(&mut self, what: &str) -> Result<u32> {
        let tok = self.next(what)?;
        if tok.len() != 8 {
            return Err(self.error(format!("invalid {what} `{tok}`")));
        }
        tok.parse()
            .map_err(|_| self.error(format!("invalid {what} `{tok}`")))
    }
}

#[derive(Debug)]
struct RawSynset {
    line: usize,
    offset: u32,
    lemmas: Vec<String>,
    hypernyms: Vec<u32>,
}

fn parse_data_line(file: &str, line: usize, text: &str, pos: Pos) -> Result<RawSynset> {
    let body = text.split('|').next().unwrap_or("");
    let mut f = Fields::new(file, line, body);
    let offset = f.offset("synset offset")?;
    f.number("lexicographer file number", 10)?;
    let ss_type = f.next("synset type")?;
    if !ss_type.starts_with(pos.tag()) {
        return Err(f.error(format!("unexpected synset type `{ss_type}`")));
    }
    let w_cnt = f.number("word count", 16)?;
    let mut lemmas = Vec::with_capacity(w_cnt);
    for _ in 0..w_cnt {
        lemmas.push(f.next("word")?.to_string());
        f.number("lex id", 16)?;
    }
    let p_cnt = f.number("pointer count", 10)?;
    let mut hypernyms = Vec::new();
    for _ in 0..p_cnt {
        let symbol = f.next("pointer symbol")?;
        let target = f.offset("pointer offset")?;
        let target_pos = f.next("pointer part of speech")?;
        f.next("pointer source/target")?;
        if (symbol == "@" || symbol == "@i") && target_pos == pos.tag().to_string() {
            hypernyms.push(target);
        }
    }
    Ok(RawSynset {
        line,
        offset,
        lemmas,
        hypernyms,
    })
}

fn parse_index_line(file: &str, line: usize, text: &str) -> Result<(String, Vec<u32>)> {
    let mut f = Fields::new(file, line, text);
    let lemma = f.next("lemma")?.to_string();
    f.next("part of speech")?;
    let synset_cnt = f.number("synset count", 10)?;
    let p_cnt = f.number("pointer count", 10)?;
    for _ in 0..p_cnt {
        f.next("pointer symbol")?;
    }
    f.number("sense count", 10)?;
    f.number("tagged sense count", 10)?;
    let mut offsets = Vec::with_capacity(synset_cnt);
    for _ in 0..synset_cnt {
        offsets.push(f.offset("synset offset")?);
    }
    Ok((lemma, offsets))
}

pub(super) fn load_pos(dir: &Path, pos: Pos) -> Result<PosTable> {
    let [index_name, data_name, exc_name] = files_for(pos);

    let data = read(dir, &data_name)?;
    let mut raw = Vec::new();
    for (line, text) in records(&data) {
        raw.push(parse_data_line(&data_name, line, text, pos)?);
    }
    let mut by_offset = HashMap::with_capacity(raw.len());
    for (i, r) in raw.iter().enumerate() {
        if by_offset.insert(r.offset, i).is_some() {
            return Err(Error::Parse {
                file: data_name.clone(),
                line: r.line,
                reason: format!("duplicate synset offset {:08}", r.offset),
            });
        }
    }
    let mut hypernyms = Vec::with_capacity(raw.len());
    for r in &raw {
        let mut targets = Vec::with_capacity(r.hypernyms.len());
        for h in &r.hypernyms {
            let &t = by_offset.get(h).ok_or_else(|| Error::Parse {
                file: data_name.clone(),
                line: r.line,
                reason: format!("hypernym {h:08} does not resolve"),
            })?;
            targets.push(t);
        }
        hypernyms.push(targets);
    }

    let index = read(dir, &index_name)?;
    let mut lemma_index = HashMap::new();
    for (line, text) in records(&index) {
        let (lemma, offsets) = parse_index_line(&index_name, line, text)?;
        let mut targets = Vec::with_capacity(offsets.len());
        for off in offsets {
            let &t = by_offset.get(&off).ok_or_else(|| Error::Parse {
                file: index_name.clone(),
                line,
                reason: format!("synset {off:08} does not resolve"),
            })?;
            targets.push(t);
        }
        lemma_index.insert(lemma, targets);
    }

    let exc = read(dir, &exc_name)?;
    let mut exceptions: HashMap<String, Vec<String>> = HashMap::new();
    for (_, text) in records(&exc) {
        let mut words = text.split_ascii_whitespace();
        if let Some(surface) = words.next() {
            exceptions
                .entry(surface.to_string())
                .or_default()
                .extend(words.map(str::to_string));
        }
    }

    let (min_depth, max_depth) = depths(&hypernyms).map_err(|i| Error::Parse {
        file: data_name.clone(),
        line: raw[i].line,
        reason: "hypernym cycle".to_string(),
    })?;

    let synsets = raw
        .iter()
        .zip(&hypernyms)
        .map(|(r, hyps)| Synset {
            id: SynsetId {
                offset: r.offset,
                pos,
            },
            name: synset_name(r, pos, &lemma_index, &by_offset),
            lemmas: r.lemmas.clone(),
            hypernym_ids: hyps
                .iter()
                .map(|&h| SynsetId {
                    offset: raw[h].offset,
                    pos,
                })
                .collect(),
        })
        .collect();

    Ok(PosTable {
        synsets,
        by_offset,
        hypernyms,
        lemma_index,
        exceptions,
        min_depth,
        max_depth,
    })
}

fn synset_name(
    r: &RawSynset,
    pos: Pos,
    lemma_index: &HashMap<String, Vec<usize>>,
    by_offset: &HashMap<u32, usize>,
) -> String {
    let lemma = r.lemmas.first().map(|l| l.to_lowercase()).unwrap_or_default();
    let me = by_offset[&r.offset];
    let sense = lemma_index
        .get(&lemma)
        .and_then(|v| v.iter().position(|&i| i == me))
        .map(|p| p + 1);
    match sense {
        Some(n) => format!("{lemma}.{}.{n:02}", pos.tag()),
        None => format!("{lemma}.{}.{:08}", pos.tag(), r.offset),
    }
}

/// Shortest and longest edge counts to a root for every node; `Err(i)` names
/// a node on a cycle.
fn depths(hypernyms: &[Vec<usize>]) -> std::result::Result<(Vec<u32>, Vec<u32>), usize> {
    const UNSEEN: u8 = 0;
    const OPEN: u8 = 1;
    const DONE: u8 = 2;
    let n = hypernyms.len();
    let mut state = vec![UNSEEN; n];
    let mut min_d = vec![0u32; n];
    let mut max_d = vec![0u32; n];
    for start in 0..n {
        if state[start] == DONE {
            continue;
        }
        // iterative post-order DFS
        let mut stack = vec![(start, 0usize)];
        state[start] = OPEN;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if let Some(&h) = hypernyms[node].get(*next) {
                *next += 1;
                match state[h] {
                    UNSEEN => {
                        state[h] = OPEN;
                        stack.push((h, 0));
                    }
                    OPEN => return Err(h),
                    _ => {}
                }
            } else {
                let hyps = &hypernyms[node];
                if !hyps.is_empty() {
                    min_d[node] = 1 + hyps.iter().map(|&h| min_d[h]).min().unwrap();
                    max_d[node] = 1 + hyps.iter().map(|&h| max_d[h]).max().unwrap();
                }
                state[node] = DONE;
                stack.pop();
            }
        }
    }
    Ok((min_d, max_d))
}
