//! Seeded Monte Carlo sampling of decision trees and the classical urn.
//!
//! All sampling uses the ChaCha12 stream cipher as its random generator, so
//! a report is reproducible bit-for-bit from its `(input, n, seed)` triple
//! on any platform. Reports record the generator identity.

use std::collections::BTreeMap;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::dtree::DecisionTree;
use crate::error::Error;
use crate::qstate::bitstring;

/// Name of the random generator behind every sampling report.
pub const RNG_ALGORITHM: &str = "chacha12";

/// Outcome counts from repeated root-to-leaf walks of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    /// Samples per outcome bitstring, with explicit zeros.
    pub counts: BTreeMap<String, u64>,
    /// Number of walks taken.
    pub total: u64,
    /// Seed the generator was started from.
    pub seed: u64,
    /// Identity of the random generator.
    pub rng: String,
}

impl SampleReport {
    /// Empirical frequency of one outcome.
    pub fn frequency(&self, outcome: &str) -> f64 {
        self.counts.get(outcome).map_or(0.0, |&c| c as f64) / self.total as f64
    }
}

/// Walks the tree `n` times and tallies the leaves reached.
///
/// Each step branches to bit 0 when the next uniform draw falls below the
/// node's `p0`, so zero-probability branches are never taken and their
/// leaves finish with a count of exactly zero.
pub fn sample_tree(tree: &DecisionTree, n: u64, seed: u64) -> SampleReport {
    assert!(n >= 1, "sample count must be positive");
    let levels = tree.num_levels();
    let mut counts: BTreeMap<String, u64> =
        (0..1usize << levels).map(|k| (bitstring(k, levels), 0)).collect();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut outcome = String::with_capacity(levels);
    for _ in 0..n {
        outcome.clear();
        let mut node = tree.root();
        for level in 0..levels {
            let bit = if rng.random::<f64>() < node.p0() { 0 } else { 1 };
            outcome.push(if bit == 0 { '0' } else { '1' });
            if level + 1 < levels {
                node = node
                    .child(bit)
                    .expect("a branch that was taken has positive probability");
            }
        }
        *counts.get_mut(&outcome).expect("all outcomes preallocated") += 1;
    }
    SampleReport {
        counts,
        total: n,
        seed,
        rng: RNG_ALGORITHM.to_string(),
    }
}

/// An urn of black, white, and half-black/half-white balls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UrnSpec {
    black: u64,
    white: u64,
    mixed: u64,
}

impl UrnSpec {
    /// Builds an urn; it must contain at least one ball.
    pub fn new(black: u64, white: u64, mixed: u64) -> Result<Self, Error> {
        if black + white + mixed == 0 {
            return Err(Error::EmptyUrn);
        }
        Ok(Self {
            black,
            white,
            mixed,
        })
    }

    /// Total number of balls.
    pub fn total(&self) -> u64 {
        self.black + self.white + self.mixed
    }
}

/// Exact event probabilities of an urn under draw-with-replacement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UrnProbs {
    /// A drawn ball shows black (purely black or mixed).
    pub p_black: f64,
    /// A drawn ball shows white (purely white or mixed).
    pub p_white: f64,
    /// A drawn ball shows both colors (mixed).
    pub p_both: f64,
    /// First of two draws shows black, second shows white.
    pub p_seq_bw: f64,
    /// First of two draws shows white, second shows black.
    pub p_seq_wb: f64,
}

/// Computes the exact single-draw and two-draw event probabilities.
///
/// The conjunction on a single ball (`p_both`) and the two-draw sequences
/// (`p_seq_*`) are distinct events: a mixed ball shows both colors at once,
/// while the sequences multiply independent draws. The two sequence
/// probabilities are equal by construction.
pub fn urn_event_probs(urn: &UrnSpec) -> UrnProbs {
    let total = urn.total() as f64;
    let p_black = (urn.black + urn.mixed) as f64 / total;
    let p_white = (urn.white + urn.mixed) as f64 / total;
    let p_seq = p_black * p_white;
    UrnProbs {
        p_black,
        p_white,
        p_both: urn.mixed as f64 / total,
        p_seq_bw: p_seq,
        p_seq_wb: p_seq,
    }
}

/// Empirical urn estimates from seeded sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct UrnEstimates {
    /// Fraction of first draws showing black.
    pub p_black: f64,
    /// Fraction of first draws showing white.
    pub p_white: f64,
    /// Fraction of first draws that were mixed balls.
    pub p_both: f64,
    /// Fraction of draw pairs showing black then white.
    pub p_seq_bw: f64,
    /// Fraction of draw pairs showing white then black.
    pub p_seq_wb: f64,
    /// Number of iterations (each draws two balls).
    pub n: u64,
    /// Seed the generator was started from.
    pub seed: u64,
    /// Identity of the random generator.
    pub rng: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ball {
    Black,
    White,
    Mixed,
}

impl Ball {
    fn shows_black(self) -> bool {
        self != Ball::White
    }

    fn shows_white(self) -> bool {
        self != Ball::Black
    }
}

/// Runs `n` iterations of two with-replacement draws and reports the
/// empirical counterparts of [`urn_event_probs`].
///
/// Single-event estimates come from the first draw of each iteration, the
/// sequence estimates from the ordered pair.
pub fn sample_urn(urn: &UrnSpec, n: u64, seed: u64) -> UrnEstimates {
    assert!(n >= 1, "sample count must be positive");
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha12Rng| {
        let x = rng.random_range(0..urn.total());
        if x < urn.black {
            Ball::Black
        } else if x < urn.black + urn.white {
            Ball::White
        } else {
            Ball::Mixed
        }
    };
    let (mut black, mut white, mut both, mut seq_bw, mut seq_wb) = (0u64, 0u64, 0u64, 0u64, 0u64);
    for _ in 0..n {
        let first = draw(&mut rng);
        let second = draw(&mut rng);
        black += u64::from(first.shows_black());
        white += u64::from(first.shows_white());
        both += u64::from(first == Ball::Mixed);
        seq_bw += u64::from(first.shows_black() && second.shows_white());
        seq_wb += u64::from(first.shows_white() && second.shows_black());
    }
    let frac = |count: u64| count as f64 / n as f64;
    UrnEstimates {
        p_black: frac(black),
        p_white: frac(white),
        p_both: frac(both),
        p_seq_bw: frac(seq_bw),
        p_seq_wb: frac(seq_wb),
        n,
        seed,
        rng: RNG_ALGORITHM.to_string(),
    }
}
