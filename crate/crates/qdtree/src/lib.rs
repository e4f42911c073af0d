//! Classical probabilistic decision trees for quantum measurement outcomes.
//!
//! The crate turns computational-basis outcome distributions of small
//! quantum states into explicit branching trees, fits the two-parameter
//! constrained tree, tests two-qubit states for tensor-product structure,
//! discriminates classical from quantum coincidence sources, and samples
//! everything reproducibly. Each capability has a runnable example:
//!
//! ```text
//! cargo run --example reconstruct       exact tree from a state
//! cargo run --example constrained_fit   two-parameter tree approximation
//! cargo run --example separability      tensor-factorization test
//! cargo run --example order_effects     measurement-order permutation
//! cargo run --example sample_tree       seeded Monte Carlo over a tree
//! cargo run --example urn               classical urn probabilities
//! cargo run --example discriminate      coincidence-ratio classifier
//! cargo run --example export_dot        Graphviz rendering of a tree
//! ```
//!
//! The same functionality is scriptable through the `qdt` binary, which
//! reads JSON state and tree files.

#![forbid(unsafe_code)]

mod error;

pub mod cli;
pub mod discriminator;
pub mod dtree;
pub mod io;
pub mod qstate;
pub mod sampler;

pub use discriminator::{
    classify, estimate_ratio, gen_triples, r_separable_threshold, RatioEstimate, SourceLabel,
    Triple, TripleStream, Verdict,
};
pub use dtree::{
    divergence, fit_constrained, reconstruct_tree, reorder_tree, ConstrainedFit, DecisionTree,
    DivergenceKind, TreeNode,
};
pub use error::Error;
pub use qstate::{DensityMatrix, ProbabilityVector, PureState, SeparabilityReport};
pub use sampler::{
    sample_tree, sample_urn, urn_event_probs, SampleReport, UrnEstimates, UrnProbs, UrnSpec,
};
