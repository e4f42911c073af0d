//! Renders reconstructed trees as Graphviz DOT text. Pipe the output to
//! `dot -Tpng` to draw them; zero-probability branches are omitted.

use qdtree::io::tree_to_dot;
use qdtree::{reconstruct_tree, ProbabilityVector, PureState};

fn main() -> Result<(), qdtree::Error> {
    let correlated = ProbabilityVector::new(vec![0.5, 0.0, 0.0, 0.5])?;
    println!("// two perfectly correlated qubits");
    println!("{}", tree_to_dot(&reconstruct_tree(&correlated)));

    let probs = PureState::from_real(&[0.6, 0.5, 0.2, 0.2, 0.3, 0.3, 0.2, 0.3])?.outcome_probs();
    println!("// three-qubit state with every branch alive");
    println!("{}", tree_to_dot(&reconstruct_tree(&probs)));
    Ok(())
}
