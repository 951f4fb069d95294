//! Fusing lower and upper similarity into a 0-5 rank with the two bundled
//! inference systems.
//!
//!     cargo run --example fis_rank [-- LOWER UPPER]

use frsim::fisdsl::presets;

// (lower, upper, expert rank) from published sample pairs
const SAMPLES: [(f64, f64, f64); 7] = [
    (0.9308, 0.9562, 3.8),
    (0.8129, 0.8452, 4.2),
    (0.9114, 0.9407, 3.6),
    (0.7462, 0.7698, 3.0),
    (0.8832, 0.9035, 3.8),
    (0.7522, 0.7550, 3.0),
    (0.6962, 0.7114, 2.8),
];

fn main() -> frsim::Result<()> {
    let model1 = presets::model1();
    let model2 = presets::model2();
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    if let [lower, upper] = args[..] {
        println!("model1 rank: {:.4}", model1.rank(lower, upper)?);
        println!("model2 rank: {:.4}", model2.rank(lower, upper)?);
        let inputs = model1.fuzzify_inputs(lower, upper);
        println!("model1 fuzzified inputs: {inputs:?}");
        return Ok(());
    }
    println!("{:>7} {:>7} {:>7} {:>8} {:>8}", "lower", "upper", "expert", "model1", "model2");
    for (l, u, expert) in SAMPLES {
        println!(
            "{l:>7.4} {u:>7.4} {expert:>7.1} {:>8.4} {:>8.4}",
            model1.rank(l, u)?,
            model2.rank(l, u)?
        );
    }
    println!("identical sentences (1, 1): {:.4}", model1.rank(1.0, 1.0)?);
    Ok(())
}
