//! Draws seeded Monte Carlo samples from a reconstructed tree and compares
//! the empirical frequencies with the exact leaf probabilities. Branches
//! with zero probability are never visited, so their counts stay at zero.

use qdtree::io::fmt_number;
use qdtree::{reconstruct_tree, sample_tree, ProbabilityVector};

fn main() -> Result<(), qdtree::Error> {
    let probs = ProbabilityVector::new(vec![0.5, 0.0, 0.0, 0.5])?;
    let tree = reconstruct_tree(&probs);

    let report = sample_tree(&tree, 10_000, 42);
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));

    println!("\noutcome  exact     sampled");
    for (k, &p) in probs.probs().iter().enumerate() {
        let outcome = format!("{k:02b}");
        println!(
            "{outcome}       {:<9} {}",
            fmt_number(p),
            fmt_number(report.frequency(&outcome))
        );
    }

    let rerun = sample_tree(&tree, 10_000, 42);
    println!("\nsame seed, same counts: {}", rerun.counts == report.counts);
    Ok(())
}
