//! Word-level Wu-Palmer similarity.
//!
//!     WORDNET_DIR=/path/to/wordnet/dict cargo run --example wordnet_similarity -- dog cat
//!
//! With no arguments, reads whitespace-separated word pairs from stdin and
//! prints `w1<TAB>w2<TAB>similarity` per line. Without `WORDNET_DIR` the small
//! test dictionary bundled with the crate is used.

use std::io::BufRead;
use std::path::PathBuf;

use frsim::wordnet::{Pos, WordnetDb};

fn open_db() -> WordnetDb {
    let dir = std::env::var_os("WORDNET_DIR").map(PathBuf::from).unwrap_or_else(|| {
        eprintln!("WORDNET_DIR not set; using the bundled mini dictionary");
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/mini-wordnet")
    });
    WordnetDb::load(&dir).unwrap_or_else(|e| {
        eprintln!("cannot load {}: {e}", dir.display());
        std::process::exit(2);
    })
}

fn main() {
    let db = open_db();
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [w1, w2] = args.as_slice() {
        println!("{w1} / {w2}: {:.6}", db.word_similarity(w1, w2));
        for w in [w1, w2] {
            for pos in Pos::ALL {
                let forms = db.morphy(w, pos);
                if !forms.is_empty() {
                    println!("  {w} ({}) -> {}", pos.tag(), forms.join(", "));
                }
            }
        }
        let (s1, s2) = (db.synsets_of(w1), db.synsets_of(w2));
        if let (Some(a), Some(b)) = (s1.first(), s2.first()) {
            if let Ok(s) = db.wup_similarity(a, b) {
                println!("  first senses {} / {}: {s:.6}", a.name, b.name);
            }
        }
        return;
    }
    for line in std::io::stdin().lock().lines() {
        let line = line.expect("stdin");
        let mut words = line.split_whitespace();
        if let (Some(w1), Some(w2)) = (words.next(), words.next()) {
            println!("{w1}\t{w2}\t{:.10}", db.word_similarity(w1, w2));
        }
    }
}
