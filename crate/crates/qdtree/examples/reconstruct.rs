//! Rebuilds the exact decision tree of a three-qubit pure state and walks
//! it level by level, then confirms the leaves reproduce the Born-rule
//! distribution.

use qdtree::io::{fmt_edge_label, fmt_number};
use qdtree::{reconstruct_tree, PureState, TreeNode};

fn print_node(node: &TreeNode, path: &str) {
    let label = if path.is_empty() { "root" } else { path };
    println!(
        "{label:<6} p0={} p1={}",
        fmt_edge_label(node.p0()),
        fmt_edge_label(node.p1())
    );
    for bit in [0u8, 1] {
        if let Some(child) = node.child(bit) {
            print_node(child, &format!("{path}{bit}"));
        }
    }
}

fn main() -> Result<(), qdtree::Error> {
    let state = PureState::from_real(&[0.6, 0.5, 0.2, 0.2, 0.3, 0.3, 0.2, 0.3])?;
    let probs = state.outcome_probs();

    println!("outcome probabilities:");
    for (k, &p) in probs.probs().iter().enumerate() {
        println!("  {:03b} {}", k, fmt_number(p));
    }

    let tree = reconstruct_tree(&probs);
    println!("\nreconstructed tree ({} levels):", tree.num_levels());
    print_node(tree.root(), "");

    let round_trip = tree.leaf_probs();
    let worst = probs
        .probs()
        .iter()
        .zip(round_trip.probs())
        .map(|(&want, &got)| (want - got).abs())
        .fold(0.0f64, f64::max);
    println!("\nlargest leaf round-trip error: {worst:.3e}");
    Ok(())
}
