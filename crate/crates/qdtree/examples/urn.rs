//! Classical urn with black, white, and mixed balls: exact event
//! probabilities next to their seeded Monte Carlo estimates.
//!
//! The conjunction "one ball shows both colors" and the two-draw sequences
//! are different events with different probabilities, which is easy to
//! miss when the two questions are phrased alike.

use qdtree::io::fmt_number;
use qdtree::{sample_urn, urn_event_probs, UrnSpec};

fn main() -> Result<(), qdtree::Error> {
    let urn = UrnSpec::new(60, 30, 10)?;
    let exact = urn_event_probs(&urn);
    let estimate = sample_urn(&urn, 100_000, 7);

    println!("urn: 60 black, 30 white, 10 mixed ({} balls)", urn.total());
    println!("event        exact     estimated");
    let rows = [
        ("P(black)", exact.p_black, estimate.p_black),
        ("P(white)", exact.p_white, estimate.p_white),
        ("P(both)", exact.p_both, estimate.p_both),
        ("P(B then W)", exact.p_seq_bw, estimate.p_seq_bw),
        ("P(W then B)", exact.p_seq_wb, estimate.p_seq_wb),
    ];
    for (name, want, got) in rows {
        println!("{name:<12} {:<9} {}", fmt_number(want), fmt_number(got));
    }
    println!(
        "(n={}, seed={}, rng={}; P(black)·P(white)={} ≠ P(both))",
        estimate.n,
        estimate.seed,
        estimate.rng,
        fmt_number(exact.p_black * exact.p_white)
    );

    let pure = UrnSpec::new(50, 50, 0)?;
    let sequential = urn_event_probs(&pure);
    println!(
        "\n50/50 urn without mixed balls: P(B then W) = {}",
        fmt_number(sequential.p_seq_bw)
    );
    Ok(())
}
