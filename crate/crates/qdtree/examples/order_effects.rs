//! Shows how the tree's shape depends on measurement order: permuting the
//! qubits rearranges every branch probability while the leaf distribution
//! stays the same multiset.

use qdtree::io::fmt_edge_label;
use qdtree::{reconstruct_tree, reorder_tree, DecisionTree, ProbabilityVector};

fn describe(label: &str, tree: &DecisionTree) {
    let root = tree.root();
    let left = root.child(0).expect("interior node");
    let right = root.child(1).expect("interior node");
    println!(
        "{label}: root p0={}, then p0={} | p0={}",
        fmt_edge_label(root.p0()),
        fmt_edge_label(left.p0()),
        fmt_edge_label(right.p0())
    );
    let leaves: Vec<String> = tree
        .leaf_probs()
        .probs()
        .iter()
        .map(|&p| fmt_edge_label(p))
        .collect();
    println!("  leaves: {}", leaves.join(" "));
}

fn main() -> Result<(), qdtree::Error> {
    let probs = ProbabilityVector::new(vec![0.42, 0.18, 0.28, 0.12])?;

    describe("order 0,1", &reconstruct_tree(&probs));
    describe("order 1,0", &reorder_tree(&probs, &[1, 0])?);

    println!("\nBoth trees put identical mass on the outcomes; only the");
    println!("question asked first changes, and with it every branch.");
    Ok(())
}
