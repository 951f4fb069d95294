//! The `.fis` configuration language: parse, inspect, modify, serialize,
//! and the errors it reports.
//!
//!     cargo run --example fis_dsl [-- FILE.fis]

use frsim::fis::{TriangularMf, LOWER_VARIABLE};
use frsim::fisdsl::{load_fis, parse_fis, presets, serialize_fis};

fn main() -> frsim::Result<()> {
    let config = match std::env::args().nth(1) {
        Some(path) => load_fis(path.as_ref())?,
        None => presets::model1(),
    };
    for var in config.variables() {
        let terms: Vec<String> = var
            .terms
            .iter()
            .map(|t| format!("{}=tri({}, {}, {})", t.name, t.mf.a, t.mf.b, t.mf.c))
            .collect();
        println!("{} in [{}, {}]: {}", var.name, var.domain.0, var.domain.1, terms.join(" "));
    }
    println!("{} rules", config.rules().len());

    // move the apex of `average` and round-trip through text
    let tweaked = config
        .clone()
        .with_term(LOWER_VARIABLE, "average", TriangularMf::new(0.4, 0.65, 0.9)?)?;
    let text = serialize_fis(&tweaked);
    assert_eq!(parse_fis(&text)?, tweaked);
    println!("\n{text}");

    for broken in [
        "var x in [0, 1] { term a = tri(0, 0.5 1); }",
        "var similarity_lower in [0, 1] { term low = tri(0, 0, 1.5); }",
    ] {
        match parse_fis(broken) {
            Err(e) => println!("{:<16} {e}", e.kind()),
            Ok(_) => unreachable!(),
        }
    }
    Ok(())
}
