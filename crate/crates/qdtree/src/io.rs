//! JSON file schemas, Graphviz export, and number formatting.
//!
//! States travel as `{"kind": "pure", "qubits": n, "amplitudes": [[re, im], ...]}`
//! or `{"kind": "density", "qubits": n, "matrix": [[[re, im], ...], ...]}`;
//! trees as `{"levels": n, "node": {"p0": p, "child0": ..., "child1": ...}}`
//! with `null` children marking pruned subtrees; coincidence streams as JSON
//! arrays of three-character bitstrings.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::discriminator::{Triple, TripleStream};
use crate::dtree::{reconstruct_tree, DecisionTree, TreeNode};
use crate::error::Error;
use crate::qstate::{DensityMatrix, ProbabilityVector, PureState};

/// Serialized form of a pure state or density matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateFile {
    /// Complex amplitudes in bitstring order.
    Pure {
        qubits: usize,
        amplitudes: Vec<[f64; 2]>,
    },
    /// Complex matrix entries in row-major bitstring order.
    Density {
        qubits: usize,
        matrix: Vec<Vec<[f64; 2]>>,
    },
}

/// A state parsed and validated from a [`StateFile`].
#[derive(Debug, Clone)]
pub enum State {
    Pure(PureState),
    Density(DensityMatrix),
}

impl State {
    /// Outcome probabilities: squared amplitudes or the matrix diagonal.
    pub fn probs(&self) -> ProbabilityVector {
        match self {
            State::Pure(state) => state.outcome_probs(),
            State::Density(matrix) => matrix.diag_probs(),
        }
    }

    /// Density-matrix view of the state.
    pub fn density(&self) -> DensityMatrix {
        match self {
            State::Pure(state) => state.density(),
            State::Density(matrix) => matrix.clone(),
        }
    }

    /// Number of qubits.
    pub fn num_qubits(&self) -> usize {
        match self {
            State::Pure(state) => state.num_qubits(),
            State::Density(matrix) => matrix.num_qubits(),
        }
    }
}

impl StateFile {
    /// Parses the JSON schema without validating state invariants.
    pub fn from_json(json: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(json)?)
    }

    /// Pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state files always serialize")
    }

    /// Snapshot of a pure state.
    pub fn pure(state: &PureState) -> Self {
        StateFile::Pure {
            qubits: state.num_qubits(),
            amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    /// Snapshot of a density matrix.
    pub fn density(matrix: &DensityMatrix) -> Self {
        let entries = matrix.entries();
        StateFile::Density {
            qubits: matrix.num_qubits(),
            matrix: (0..matrix.dim())
                .map(|i| {
                    (0..matrix.dim())
                        .map(|j| [entries[(i, j)].re, entries[(i, j)].im])
                        .collect()
                })
                .collect(),
        }
    }

    /// Validates the payload into a state, checking both the declared qubit
    /// count and the state invariants.
    pub fn to_state(&self) -> Result<State, Error> {
        match self {
            StateFile::Pure { qubits, amplitudes } => {
                let state = PureState::new(
                    amplitudes
                        .iter()
                        .map(|&[re, im]| Complex64::new(re, im))
                        .collect(),
                )?;
                if state.num_qubits() != *qubits {
                    return Err(Error::DeclaredQubitsMismatch {
                        declared: *qubits,
                        implied: state.num_qubits(),
                    });
                }
                Ok(State::Pure(state))
            }
            StateFile::Density { qubits, matrix } => {
                let rows = matrix.len();
                for row in matrix {
                    if row.len() != rows {
                        return Err(Error::NotSquare {
                            rows,
                            cols: row.len(),
                        });
                    }
                }
                let entries =
                    DMatrix::from_fn(rows, rows, |i, j| Complex64::new(matrix[i][j][0], matrix[i][j][1]));
                let matrix = DensityMatrix::new(entries)?;
                if matrix.num_qubits() != *qubits {
                    return Err(Error::DeclaredQubitsMismatch {
                        declared: *qubits,
                        implied: matrix.num_qubits(),
                    });
                }
                Ok(State::Density(matrix))
            }
        }
    }
}

/// Parses a state file and validates it in one step.
pub fn parse_state(json: &str) -> Result<State, Error> {
    StateFile::from_json(json)?.to_state()
}

/// Serialized form of a decision tree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeFile {
    levels: usize,
    node: FileNode,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FileNode {
    p0: f64,
    child0: Option<Box<FileNode>>,
    child1: Option<Box<FileNode>>,
}

impl TreeFile {
    /// Parses the JSON schema without validating tree invariants.
    pub fn from_json(json: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(json)?)
    }

    /// Pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree files always serialize")
    }

    /// Snapshot of a tree.
    pub fn from_tree(tree: &DecisionTree) -> Self {
        fn snapshot(node: &TreeNode) -> FileNode {
            FileNode {
                p0: node.p0(),
                child0: node.child(0).map(|c| Box::new(snapshot(c))),
                child1: node.child(1).map(|c| Box::new(snapshot(c))),
            }
        }
        TreeFile {
            levels: tree.num_levels(),
            node: snapshot(tree.root()),
        }
    }

    /// Validates the payload into a tree.
    pub fn to_tree(&self) -> Result<DecisionTree, Error> {
        fn rebuild(node: &FileNode) -> TreeNode {
            TreeNode::new(
                node.p0,
                node.child0.as_deref().map(rebuild),
                node.child1.as_deref().map(rebuild),
            )
        }
        DecisionTree::from_parts(self.levels, rebuild(&self.node))
    }
}

/// Parses a tree file and validates it in one step.
pub fn parse_tree(json: &str) -> Result<DecisionTree, Error> {
    TreeFile::from_json(json)?.to_tree()
}

/// Input accepted by sampling: a state (whose outcome distribution is
/// reconstructed into a tree) or a ready-made tree.
pub enum SampleInput {
    State(State),
    Tree(DecisionTree),
}

impl SampleInput {
    /// The tree to walk.
    pub fn into_tree(self) -> DecisionTree {
        match self {
            SampleInput::State(state) => reconstruct_tree(&state.probs()),
            SampleInput::Tree(tree) => tree,
        }
    }
}

/// Parses either schema, telling them apart by their distinctive keys.
pub fn parse_sample_input(json: &str) -> Result<SampleInput, Error> {
    let value: serde_json::Value = serde_json::from_str(json)?;
    if value.get("levels").is_some() {
        let file: TreeFile = serde_json::from_value(value)?;
        Ok(SampleInput::Tree(file.to_tree()?))
    } else {
        let file: StateFile = serde_json::from_value(value)?;
        Ok(SampleInput::State(file.to_state()?))
    }
}

/// Parses a coincidence stream from a JSON array of bitstrings.
pub fn parse_triples(json: &str) -> Result<TripleStream, Error> {
    let strings: Vec<String> = serde_json::from_str(json)?;
    let triples = strings
        .iter()
        .map(|s| s.parse::<Triple>())
        .collect::<Result<Vec<Triple>, Error>>()?;
    Ok(TripleStream::new(triples))
}

/// Renders a coincidence stream as a JSON array of bitstrings.
pub fn triples_to_json(stream: &TripleStream) -> String {
    let strings: Vec<String> = stream.triples().iter().map(Triple::to_string).collect();
    serde_json::to_string(&strings).expect("strings always serialize")
}

/// Renders a tree in Graphviz DOT form.
///
/// Vertices are named by outcome prefix with `ε` for the root; each edge is
/// labeled with its branch probability at 6 significant digits; within a
/// node the 0-edge precedes the 1-edge; zero-probability branches are
/// omitted entirely.
pub fn tree_to_dot(tree: &DecisionTree) -> String {
    fn emit(node: &TreeNode, levels_left: usize, prefix: &mut String, out: &mut String) {
        let parent = if prefix.is_empty() { "ε" } else { prefix.as_str() };
        let mut edges = Vec::new();
        for (bit, prob) in [('0', node.p0()), ('1', node.p1())] {
            if prob > 0.0 {
                out.push_str(&format!(
                    "    \"{parent}\" -> \"{prefix}{bit}\" [label=\"{}\"];\n",
                    fmt_edge_label(prob)
                ));
                edges.push(bit);
            }
        }
        if levels_left > 1 {
            for bit in edges {
                if let Some(child) = node.child(if bit == '0' { 0 } else { 1 }) {
                    prefix.push(bit);
                    emit(child, levels_left - 1, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = String::from("digraph decision_tree {\n");
    emit(tree.root(), tree.num_levels(), &mut String::new(), &mut out);
    out.push_str("}\n");
    out
}

/// Rounds to the given number of significant decimal digits.
fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x)
        .parse()
        .expect("rescaled float always parses")
}

/// Formats a number at 12 significant digits for probability tables,
/// always with a decimal point: `1` becomes `"1.0"`.
pub fn fmt_number(x: f64) -> String {
    let rounded = round_sig(x, 12).to_string();
    if rounded.bytes().all(|b| b.is_ascii_digit() || b == b'-') {
        rounded + ".0"
    } else {
        rounded
    }
}

/// Formats an edge label at 6 significant digits, plain: `1` stays `"1"`.
pub fn fmt_edge_label(x: f64) -> String {
    round_sig(x, 6).to_string()
}

/// Formats one matrix entry, spelling out the imaginary part only when it
/// is nonzero: `0.9`, `-0.24`, or `0.1+0.2i`.
pub fn fmt_complex_entry(re: f64, im: f64) -> String {
    if im == 0.0 {
        fmt_number(re)
    } else {
        let sign = if im < 0.0 { '-' } else { '+' };
        format!("{}{}{}i", fmt_number(re), sign, fmt_number(im.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn bell_tree() -> DecisionTree {
        reconstruct_tree(&ProbabilityVector::new(vec![0.5, 0.0, 0.0, 0.5]).unwrap())
    }

    #[test]
    fn pure_state_file_round_trip() {
        let state = PureState::from_real(&[0.6, 0.5, 0.2, 0.2, 0.3, 0.3, 0.2, 0.3]).unwrap();
        let json = StateFile::pure(&state).to_json();
        let State::Pure(back) = parse_state(&json).unwrap() else {
            panic!("expected a pure state");
        };
        assert_eq!(back, state);
    }

    #[test]
    fn density_state_file_round_trip() {
        let x = DensityMatrix::from_real(2, &[0.6, 0.3, 0.3, 0.4]).unwrap();
        let y = DensityMatrix::from_real(2, &[0.7, 0.1, 0.1, 0.3]).unwrap();
        let rho = x.tensor(&y);
        let json = StateFile::density(&rho).to_json();
        let state = parse_state(&json).unwrap();
        let expected = [0.42, 0.18, 0.28, 0.12];
        for (&got, &want) in state.probs().probs().iter().zip(&expected) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn state_file_parses_literal_json() {
        let json = r#"{"kind": "pure", "qubits": 1, "amplitudes": [[1.0, 0.0], [0.0, 0.0]]}"#;
        let state = parse_state(json).unwrap();
        assert_eq!(state.num_qubits(), 1);
        assert_eq!(state.probs().probs(), &[1.0, 0.0]);
    }

    #[test]
    fn state_file_rejects_declared_mismatch() {
        let json = r#"{"kind": "pure", "qubits": 2, "amplitudes": [[1.0, 0.0], [0.0, 0.0]]}"#;
        assert!(matches!(
            parse_state(json).unwrap_err(),
            Error::DeclaredQubitsMismatch {
                declared: 2,
                implied: 1
            }
        ));
    }

    #[test]
    fn state_file_rejects_invalid_states() {
        let unnormalized = r#"{"kind": "pure", "qubits": 1, "amplitudes": [[1.0, 0.0], [1.0, 0.0]]}"#;
        assert!(matches!(
            parse_state(unnormalized).unwrap_err(),
            Error::NotNormalized { .. }
        ));
        let ragged = r#"{"kind": "density", "qubits": 1, "matrix": [[[1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]}"#;
        assert!(matches!(parse_state(ragged).unwrap_err(), Error::NotSquare { .. }));
        assert!(matches!(parse_state("not json").unwrap_err(), Error::Json(_)));
        assert!(matches!(
            parse_state(r#"{"kind": "spooky"}"#).unwrap_err(),
            Error::Json(_)
        ));
    }

    #[test]
    fn tree_file_round_trip_preserves_pruning() {
        let tree = bell_tree();
        let json = TreeFile::from_tree(&tree).to_json();
        assert!(json.contains("null"));
        assert_eq!(parse_tree(&json).unwrap(), tree);
    }

    #[test]
    fn tree_file_parses_literal_json() {
        let json = r#"{
            "levels": 2,
            "node": {
                "p0": 0.5,
                "child0": {"p0": 1.0, "child0": null, "child1": null},
                "child1": {"p0": 0.0, "child0": null, "child1": null}
            }
        }"#;
        assert_eq!(parse_tree(json).unwrap(), bell_tree());
    }

    #[test]
    fn tree_file_rejects_malformed_trees() {
        let out_of_range = r#"{"levels": 1, "node": {"p0": 1.5, "child0": null, "child1": null}}"#;
        assert!(matches!(
            parse_tree(out_of_range).unwrap_err(),
            Error::MalformedTree { .. }
        ));
        let missing_child =
            r#"{"levels": 2, "node": {"p0": 0.5, "child0": null, "child1": null}}"#;
        assert!(matches!(
            parse_tree(missing_child).unwrap_err(),
            Error::MalformedTree { .. }
        ));
    }

    #[test]
    fn sample_input_accepts_both_schemas() {
        let tree_json = TreeFile::from_tree(&bell_tree()).to_json();
        let input = parse_sample_input(&tree_json).unwrap();
        assert_eq!(input.into_tree(), bell_tree());
        let state_json = r#"{"kind": "pure", "qubits": 1, "amplitudes": [[1.0, 0.0], [0.0, 0.0]]}"#;
        let input = parse_sample_input(state_json).unwrap();
        assert_eq!(input.into_tree().leaf_probs().probs(), &[1.0, 0.0]);
    }

    #[test]
    fn triple_stream_round_trip() {
        let stream = parse_triples(r#"["000", "010", "111"]"#).unwrap();
        assert_eq!(stream.len(), 3);
        assert_eq!(triples_to_json(&stream), r#"["000","010","111"]"#);
        assert!(matches!(
            parse_triples(r#"["00x"]"#).unwrap_err(),
            Error::BadTriple { .. }
        ));
    }

    #[test]
    fn dot_output_for_pruned_tree() {
        let expected = "digraph decision_tree {\n    \"ε\" -> \"0\" [label=\"0.5\"];\n    \"ε\" -> \"1\" [label=\"0.5\"];\n    \"0\" -> \"00\" [label=\"1\"];\n    \"1\" -> \"11\" [label=\"1\"];\n}\n";
        assert_eq!(tree_to_dot(&bell_tree()), expected);
    }

    #[test]
    fn dot_labels_use_six_significant_digits() {
        let p = ProbabilityVector::new(vec![0.36, 0.25, 0.04, 0.04, 0.09, 0.09, 0.04, 0.09]).unwrap();
        let dot = tree_to_dot(&reconstruct_tree(&p));
        assert!(dot.contains("\"ε\" -> \"0\" [label=\"0.69\"]"));
        assert!(dot.contains("\"0\" -> \"00\" [label=\"0.884058\"]"));
    }

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_number(1.0), "1.0");
        assert_eq!(fmt_number(0.0), "0.0");
        assert_eq!(fmt_number(0.36), "0.36");
        assert_eq!(fmt_number(0.2 * 0.2), "0.04");
        assert_eq!(fmt_number(-0.25), "-0.25");
        assert_eq!(fmt_number(f64::INFINITY), "inf");
        assert_eq!(fmt_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_edge_label(1.0), "1");
        assert_eq!(fmt_edge_label(0.5), "0.5");
        assert_eq!(fmt_edge_label(0.61 / 0.69), "0.884058");
    }

    #[test]
    fn complex_entry_formatting() {
        assert_eq!(fmt_complex_entry(0.9, 0.0), "0.9");
        assert_eq!(fmt_complex_entry(-0.24, 0.0), "-0.24");
        assert_eq!(fmt_complex_entry(0.1, 0.2), "0.1+0.2i");
        assert_eq!(fmt_complex_entry(0.0, -0.5), "0.0-0.5i");
    }
}
