//! Branching trees over measurement outcomes.
//!
//! A tree on `n` levels measures one bit per level. Every node carries the
//! probability `p0` of branching to bit 0 (left); the 1-branch gets the
//! complement. A subtree is materialized only when its branch probability
//! is nonzero, so unreachable outcomes stay pruned and the product of
//! branch probabilities along each surviving path recovers the leaf
//! probability exactly.

use crate::error::Error;
use crate::qstate::ProbabilityVector;

/// One interior node: a branch probability and up to two children.
///
/// Nodes on the deepest level have no children; their two branches end in
/// implicit leaves. Above that, a child is present iff its branch
/// probability is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode {
    p0: f64,
    child0: Option<Box<TreeNode>>,
    child1: Option<Box<TreeNode>>,
}

impl TreeNode {
    /// Assembles a node; validity is checked when the tree is assembled.
    pub fn new(p0: f64, child0: Option<TreeNode>, child1: Option<TreeNode>) -> Self {
        Self {
            p0,
            child0: child0.map(Box::new),
            child1: child1.map(Box::new),
        }
    }

    /// Probability of branching to bit 0.
    pub fn p0(&self) -> f64 {
        self.p0
    }

    /// Probability of branching to bit 1.
    pub fn p1(&self) -> f64 {
        1.0 - self.p0
    }

    /// Child under the given bit, if that branch is materialized.
    pub fn child(&self, bit: u8) -> Option<&TreeNode> {
        match bit {
            0 => self.child0.as_deref(),
            _ => self.child1.as_deref(),
        }
    }
}

/// A probabilistic decision tree over `2^num_levels` bitstring outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    num_levels: usize,
    root: TreeNode,
}

impl DecisionTree {
    /// Validates a hand-assembled (or deserialized) tree.
    ///
    /// Checks that every branch probability lies in `[0, 1]`, that children
    /// exist exactly where branch probabilities are nonzero, and that all
    /// paths reach depth `num_levels`.
    pub fn from_parts(num_levels: usize, root: TreeNode) -> Result<Self, Error> {
        if num_levels == 0 {
            return Err(Error::MalformedTree {
                reason: "tree must have at least one level".into(),
            });
        }
        validate_node(&root, num_levels, &mut String::new())?;
        Ok(Self { num_levels, root })
    }

    /// Number of measured bits, equal to the depth of every leaf.
    pub fn num_levels(&self) -> usize {
        self.num_levels
    }

    /// The level-1 node.
    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    /// Probability of each leaf: the product of branch probabilities along
    /// the path spelled by its bitstring. Pruned subtrees contribute zeros.
    pub fn leaf_probs(&self) -> ProbabilityVector {
        let mut out = vec![0.0; 1 << self.num_levels];
        accumulate_leaves(&self.root, self.num_levels, 0, 1.0, &mut out);
        ProbabilityVector::from_validated(out)
    }
}

fn validate_node(node: &TreeNode, levels_left: usize, path: &mut String) -> Result<(), Error> {
    let describe = |path: &str| {
        if path.is_empty() {
            "root".to_string()
        } else {
            format!("node {path}")
        }
    };
    if !(0.0..=1.0).contains(&node.p0) {
        return Err(Error::MalformedTree {
            reason: format!("{} has p0 = {} outside [0, 1]", describe(path), node.p0),
        });
    }
    if levels_left == 1 {
        if node.child0.is_some() || node.child1.is_some() {
            return Err(Error::MalformedTree {
                reason: format!("{} lies on the last level but has children", describe(path)),
            });
        }
        return Ok(());
    }
    for (bit, child, prob) in [
        ('0', &node.child0, node.p0),
        ('1', &node.child1, 1.0 - node.p0),
    ] {
        match child {
            Some(child) => {
                if prob == 0.0 {
                    return Err(Error::MalformedTree {
                        reason: format!(
                            "{} has a {bit}-child on a zero-probability branch",
                            describe(path)
                        ),
                    });
                }
                path.push(bit);
                validate_node(child, levels_left - 1, path)?;
                path.pop();
            }
            None => {
                if prob != 0.0 {
                    return Err(Error::MalformedTree {
                        reason: format!(
                            "{} is missing its {bit}-child on a branch of probability {prob}",
                            describe(path)
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

fn accumulate_leaves(node: &TreeNode, levels_left: usize, index: usize, mass: f64, out: &mut [f64]) {
    let p0 = node.p0;
    if levels_left == 1 {
        out[index << 1] = mass * p0;
        out[(index << 1) | 1] = mass * (1.0 - p0);
        return;
    }
    if let Some(child) = &node.child0 {
        accumulate_leaves(child, levels_left - 1, index << 1, mass * p0, out);
    }
    if let Some(child) = &node.child1 {
        accumulate_leaves(child, levels_left - 1, (index << 1) | 1, mass * (1.0 - p0), out);
    }
}

/// Builds the tree whose leaf probabilities reproduce `p` exactly.
///
/// Each node's `p0` is the conditional probability that the next measured
/// bit is 0 given the bits already fixed by the path. Prefixes of zero
/// probability get no subtree.
pub fn reconstruct_tree(p: &ProbabilityVector) -> DecisionTree {
    DecisionTree {
        num_levels: p.num_qubits(),
        root: build_node(p.probs()),
    }
}

fn build_node(slice: &[f64]) -> TreeNode {
    let (zero_half, one_half) = slice.split_at(slice.len() / 2);
    let mass0: f64 = zero_half.iter().sum();
    let mass1: f64 = one_half.iter().sum();
    let p0 = (mass0 / (mass0 + mass1)).clamp(0.0, 1.0);
    if slice.len() == 2 {
        return TreeNode::new(p0, None, None);
    }
    let child = |mass: f64, half: &[f64]| (mass > 0.0).then(|| build_node(half));
    TreeNode::new(p0, child(mass0, zero_half), child(mass1, one_half))
}

/// Builds the tree for the distribution re-read in a different measurement
/// order: level `j` of the result measures the qubit `perm[j]` of `p`.
pub fn reorder_tree(p: &ProbabilityVector, perm: &[usize]) -> Result<DecisionTree, Error> {
    Ok(reconstruct_tree(&p.permute_qubits(perm)?))
}

/// Divergence measures between outcome distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DivergenceKind {
    /// Half the L1 distance; bounded, symmetric, and the default.
    #[default]
    TotalVariation,
    /// Kullback-Leibler divergence `Σ p·ln(p/q)`, with `0·ln(0/·) = 0` and
    /// `+∞` whenever `p` puts mass where `q` has none.
    KullbackLeibler,
}

/// Computes the chosen divergence from `p` to `q`.
pub fn divergence(
    p: &ProbabilityVector,
    q: &ProbabilityVector,
    measure: DivergenceKind,
) -> Result<f64, Error> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let pairs = p.probs().iter().zip(q.probs());
    Ok(match measure {
        DivergenceKind::TotalVariation => 0.5 * pairs.map(|(a, b)| (a - b).abs()).sum::<f64>(),
        DivergenceKind::KullbackLeibler => {
            let mut sum = 0.0;
            for (&a, &b) in pairs {
                if a == 0.0 {
                    continue;
                }
                if b == 0.0 {
                    return Ok(f64::INFINITY);
                }
                sum += a * (a / b).ln();
            }
            sum
        }
    })
}

/// The two-parameter tree fitted to a two-qubit outcome distribution:
/// one branch probability `a` for the first level and one probability `c`
/// shared by both second-level nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedFit {
    /// First-level branch-to-0 probability.
    pub a: f64,
    /// Second-level branch-to-0 probability, common to both nodes.
    pub c: f64,
    /// Divergence between the predicted and target distributions.
    pub residual: f64,
    /// Leaf distribution of the fitted tree.
    pub predicted: ProbabilityVector,
}

/// Fits the constrained two-parameter tree to a four-outcome distribution.
///
/// With target probabilities `(A, B, C, D)`, the closed-form estimates are
/// `a = A + B` and `c = A + C`; the predicted leaves are
/// `(ac, a(1−c), (1−a)c, (1−a)(1−c))`. The residual vanishes exactly when
/// the target factorizes, i.e. when `A·D == B·C`.
pub fn fit_constrained(
    p: &ProbabilityVector,
    measure: DivergenceKind,
) -> Result<ConstrainedFit, Error> {
    if p.len() != 4 {
        return Err(Error::TwoQubitsRequired { got: p.num_qubits() });
    }
    let [pa, pb, pc, _] = p.probs() else {
        unreachable!("length checked above")
    };
    let a = (pa + pb).clamp(0.0, 1.0);
    let c = (pa + pc).clamp(0.0, 1.0);
    let predicted = ProbabilityVector::from_validated(vec![
        a * c,
        a * (1.0 - c),
        (1.0 - a) * c,
        (1.0 - a) * (1.0 - c),
    ]);
    let residual = divergence(&predicted, p, measure)?;
    Ok(ConstrainedFit {
        a,
        c,
        residual,
        predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn vector(probs: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(probs.to_vec()).unwrap()
    }

    #[test]
    fn reconstructs_three_level_tree() {
        let p = vector(&[0.36, 0.25, 0.04, 0.04, 0.09, 0.09, 0.04, 0.09]);
        let tree = reconstruct_tree(&p);
        let root = tree.root();
        assert_abs_diff_eq!(root.p0(), 0.69, epsilon = 1e-12);
        assert_abs_diff_eq!(root.p1(), 0.31, epsilon = 1e-12);
        let left = root.child(0).unwrap();
        let right = root.child(1).unwrap();
        assert_abs_diff_eq!(left.p0(), 0.61 / 0.69, epsilon = 1e-12);
        assert_abs_diff_eq!(left.p1(), 0.08 / 0.69, epsilon = 1e-12);
        assert_abs_diff_eq!(right.p0(), 0.18 / 0.31, epsilon = 1e-12);
        assert_abs_diff_eq!(right.p1(), 0.13 / 0.31, epsilon = 1e-12);
        assert_abs_diff_eq!(left.child(0).unwrap().p0(), 0.36 / 0.61, epsilon = 1e-12);
        assert_abs_diff_eq!(left.child(1).unwrap().p0(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(right.child(0).unwrap().p0(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(right.child(1).unwrap().p0(), 0.04 / 0.13, epsilon = 1e-12);
    }

    #[test]
    fn reconstructs_entangled_tree_with_pruned_branches() {
        let tree = reconstruct_tree(&vector(&[0.5, 0.0, 0.0, 0.5]));
        let root = tree.root();
        assert_abs_diff_eq!(root.p0(), 0.5, epsilon = 1e-15);
        assert_eq!(root.child(0).unwrap().p0(), 1.0);
        assert_eq!(root.child(1).unwrap().p0(), 0.0);
    }

    #[test]
    fn reconstructs_correlated_two_level_tree() {
        let tree = reconstruct_tree(&vector(&[0.81, 0.09, 0.01, 0.09]));
        let root = tree.root();
        assert_abs_diff_eq!(root.p0(), 0.9, epsilon = 1e-12);
        assert_abs_diff_eq!(root.child(0).unwrap().p0(), 0.9, epsilon = 1e-12);
        assert_abs_diff_eq!(root.child(1).unwrap().p0(), 0.1, epsilon = 1e-12);
    }

    #[test]
    fn leaf_probs_inverts_reconstruction() {
        let cases: [&[f64]; 4] = [
            &[0.36, 0.25, 0.04, 0.04, 0.09, 0.09, 0.04, 0.09],
            &[0.5, 0.0, 0.0, 0.5],
            &[0.81, 0.09, 0.01, 0.09],
            &[1.0, 0.0],
        ];
        for probs in cases {
            let p = vector(probs);
            let back = reconstruct_tree(&p).leaf_probs();
            for (&got, &want) in back.probs().iter().zip(probs) {
                assert_abs_diff_eq!(got, want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn single_level_deterministic_tree() {
        let tree = reconstruct_tree(&vector(&[1.0, 0.0]));
        assert_eq!(tree.num_levels(), 1);
        assert_eq!(tree.leaf_probs().probs(), &[1.0, 0.0]);
    }

    #[test]
    fn zero_probability_leaves_stay_exactly_zero() {
        let p = vector(&[0.5, 0.0, 0.0, 0.5]);
        let back = reconstruct_tree(&p).leaf_probs();
        assert_eq!(back.probs()[1], 0.0);
        assert_eq!(back.probs()[2], 0.0);
    }

    #[test]
    fn from_parts_accepts_reconstructed_trees() {
        let tree = reconstruct_tree(&vector(&[0.5, 0.0, 0.0, 0.5]));
        let rebuilt = DecisionTree::from_parts(tree.num_levels(), tree.root().clone()).unwrap();
        assert_eq!(rebuilt, tree);
    }

    #[test]
    fn from_parts_rejects_malformed_trees() {
        let leaf = TreeNode::new(0.5, None, None);
        assert!(matches!(
            DecisionTree::from_parts(1, TreeNode::new(1.5, None, None)).unwrap_err(),
            Error::MalformedTree { .. }
        ));
        assert!(matches!(
            DecisionTree::from_parts(2, TreeNode::new(0.5, Some(leaf.clone()), None)).unwrap_err(),
            Error::MalformedTree { .. }
        ));
        assert!(matches!(
            DecisionTree::from_parts(2, TreeNode::new(0.0, Some(leaf.clone()), Some(leaf.clone())))
                .unwrap_err(),
            Error::MalformedTree { .. }
        ));
        assert!(matches!(
            DecisionTree::from_parts(1, TreeNode::new(0.5, Some(leaf), None)).unwrap_err(),
            Error::MalformedTree { .. }
        ));
    }

    #[test]
    fn fits_product_distribution_exactly() {
        let fit = fit_constrained(&vector(&[0.42, 0.18, 0.28, 0.12]), DivergenceKind::default())
            .unwrap();
        assert_abs_diff_eq!(fit.a, 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.c, 0.7, epsilon = 1e-12);
        assert!(fit.residual <= 1e-12);
    }

    #[test]
    fn fits_uniform_distribution() {
        let fit = fit_constrained(&vector(&[0.25; 4]), DivergenceKind::default()).unwrap();
        assert_abs_diff_eq!(fit.a, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(fit.c, 0.5, epsilon = 1e-15);
        assert!(fit.residual <= 1e-15);
    }

    #[test]
    fn reports_residual_for_entangled_distribution() {
        let fit = fit_constrained(
            &vector(&[0.5, 0.0, 0.0, 0.5]),
            DivergenceKind::TotalVariation,
        )
        .unwrap();
        assert_abs_diff_eq!(fit.a, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(fit.c, 0.5, epsilon = 1e-15);
        assert_eq!(fit.predicted.probs(), &[0.25; 4]);
        assert_abs_diff_eq!(fit.residual, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn fit_requires_four_outcomes() {
        let p = vector(&[0.5, 0.5]);
        assert!(matches!(
            fit_constrained(&p, DivergenceKind::default()).unwrap_err(),
            Error::TwoQubitsRequired { got: 1 }
        ));
    }

    #[test]
    fn divergence_of_identical_vectors_is_zero() {
        let p = vector(&[0.36, 0.25, 0.04, 0.04, 0.09, 0.09, 0.04, 0.09]);
        assert_eq!(divergence(&p, &p, DivergenceKind::TotalVariation).unwrap(), 0.0);
        assert_eq!(divergence(&p, &p, DivergenceKind::KullbackLeibler).unwrap(), 0.0);
    }

    #[test]
    fn total_variation_of_bell_vs_uniform() {
        let bell = vector(&[0.5, 0.0, 0.0, 0.5]);
        let uniform = vector(&[0.25; 4]);
        assert_abs_diff_eq!(
            divergence(&bell, &uniform, DivergenceKind::TotalVariation).unwrap(),
            0.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn kl_of_point_mass_vs_uniform() {
        let point = vector(&[1.0, 0.0]);
        let uniform = vector(&[0.5, 0.5]);
        assert_abs_diff_eq!(
            divergence(&point, &uniform, DivergenceKind::KullbackLeibler).unwrap(),
            2.0_f64.ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn kl_signals_infinity_on_support_mismatch() {
        let p = vector(&[0.5, 0.5]);
        let q = vector(&[1.0, 0.0]);
        assert_eq!(
            divergence(&p, &q, DivergenceKind::KullbackLeibler).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn divergence_requires_equal_lengths() {
        let p = vector(&[0.5, 0.5]);
        let q = vector(&[0.25; 4]);
        assert!(matches!(
            divergence(&p, &q, DivergenceKind::default()).unwrap_err(),
            Error::LengthMismatch { left: 2, right: 4 }
        ));
    }

    #[test]
    fn reorder_with_identity_is_reconstruction() {
        let p = vector(&[0.42, 0.18, 0.28, 0.12]);
        assert_eq!(reorder_tree(&p, &[0, 1]).unwrap(), reconstruct_tree(&p));
    }

    #[test]
    fn reorder_swaps_marginals() {
        let p = vector(&[0.42, 0.18, 0.28, 0.12]);
        let tree = reorder_tree(&p, &[1, 0]).unwrap();
        assert_abs_diff_eq!(tree.root().p0(), 0.7, epsilon = 1e-12);
        assert_abs_diff_eq!(tree.root().child(0).unwrap().p0(), 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(tree.root().child(1).unwrap().p0(), 0.6, epsilon = 1e-12);
    }

    #[test]
    fn reorder_of_symmetric_distribution_is_invariant() {
        let bell = vector(&[0.5, 0.0, 0.0, 0.5]);
        assert_eq!(
            reorder_tree(&bell, &[1, 0]).unwrap(),
            reconstruct_tree(&bell)
        );
    }

    #[test]
    fn reorder_rejects_invalid_permutation() {
        let p = vector(&[0.25; 4]);
        assert!(matches!(
            reorder_tree(&p, &[0, 2]).unwrap_err(),
            Error::InvalidPermutation { .. }
        ));
    }

    prop_compose! {
        fn arb_distribution(max_qubits: usize)
            (n in 1..=max_qubits)
            (weights in prop::collection::vec(0.0..1.0f64, 1 << n)) -> Vec<f64> {
            let total: f64 = weights.iter().sum();
            if total == 0.0 {
                let mut probs = vec![0.0; weights.len()];
                probs[0] = 1.0;
                probs
            } else {
                weights.iter().map(|w| w / total).collect()
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip_preserves_probabilities(probs in arb_distribution(4)) {
            let p = ProbabilityVector::new(probs).unwrap();
            let back = reconstruct_tree(&p).leaf_probs();
            for (&got, &want) in back.probs().iter().zip(p.probs()) {
                prop_assert!((got - want).abs() <= 1e-12);
            }
        }

        #[test]
        fn product_distributions_fit_exactly(a in 0.0..=1.0f64, c in 0.0..=1.0f64) {
            let p = ProbabilityVector::from_validated(vec![
                a * c, a * (1.0 - c), (1.0 - a) * c, (1.0 - a) * (1.0 - c),
            ]);
            let fit = fit_constrained(&p, DivergenceKind::default()).unwrap();
            prop_assert!((fit.a - a).abs() <= 1e-12);
            prop_assert!((fit.c - c).abs() <= 1e-12);
            prop_assert!(fit.residual <= 1e-12);
        }

        #[test]
        fn reorder_preserves_leaf_multiset(probs in arb_distribution(3), seed in 0u64..1000) {
            let p = ProbabilityVector::new(probs).unwrap();
            let n = p.num_qubits();
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, (seed as usize + i) % (i + 1));
            }
            let reordered = reorder_tree(&p, &perm).unwrap().leaf_probs();
            let mut left: Vec<f64> = reordered.probs().to_vec();
            let mut right: Vec<f64> = p.probs().to_vec();
            left.sort_by(f64::total_cmp);
            right.sort_by(f64::total_cmp);
            for (&a, &b) in left.iter().zip(&right) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }
    }
}
