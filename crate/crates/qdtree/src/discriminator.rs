//! Classical/quantum source discrimination from 3-way coincidences.
//!
//! A stream of triple outcomes is reduced to the ratio of all-equal to
//! not-all-equal triples. A classical source gives 1/2, a maximally
//! entangled quantum source 1/3; the midpoint 5/12 separates the two.

use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::Error;

/// Decision threshold between the classical ratio 1/2 and the quantum 1/3.
pub const CLASSIFICATION_THRESHOLD: f64 = 5.0 / 12.0;

/// Largest amplitude ratio at which the non-maximally entangled state
/// `(r|00⟩ + |11⟩)/√(1+r²)` remains distinguishable from a classical source.
pub const R_SEPARABILITY_BOUND: f64 = 5.83;

/// One 3-way coincidence outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triple {
    bits: [bool; 3],
}

impl Triple {
    /// Builds a triple from its three detector bits.
    pub fn new(b1: bool, b2: bool, b3: bool) -> Self {
        Self { bits: [b1, b2, b3] }
    }

    /// The three detector bits.
    pub fn bits(&self) -> [bool; 3] {
        self.bits
    }

    /// Whether all three outcomes agree.
    pub fn is_same(&self) -> bool {
        self.bits[0] == self.bits[1] && self.bits[1] == self.bits[2]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.bits {
            write!(f, "{}", u8::from(bit))?;
        }
        Ok(())
    }
}

impl FromStr for Triple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::BadTriple { got: s.to_string() };
        let mut bits = [false; 3];
        let mut chars = s.chars();
        for slot in &mut bits {
            *slot = match chars.next() {
                Some('0') => false,
                Some('1') => true,
                _ => return Err(bad()),
            };
        }
        if chars.next().is_some() {
            return Err(bad());
        }
        Ok(Self { bits })
    }
}

/// A sequence of coincidence triples.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TripleStream {
    triples: Vec<Triple>,
}

impl TripleStream {
    /// Wraps a sequence of triples.
    pub fn new(triples: Vec<Triple>) -> Self {
        Self { triples }
    }

    /// The triples in order.
    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    /// Number of triples.
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    /// Whether the stream holds no triples.
    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }
}

impl FromIterator<Triple> for TripleStream {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// Same/not-same statistics of a coincidence stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioEstimate {
    /// Number of triples observed.
    pub n: u64,
    /// Triples with all three bits equal.
    pub count_same: u64,
    /// Fraction of all-equal triples.
    pub p_s: f64,
    /// Fraction of not-all-equal triples, exactly `1 - p_s`.
    pub p_n: f64,
    /// `p_s / p_n`, infinite when every triple agrees.
    pub ratio: f64,
    /// Delta-method standard error of the ratio, infinite with the ratio.
    pub stderr_ratio: f64,
}

/// Reduces a stream to its same/different ratio with a standard error.
pub fn estimate_ratio(stream: &TripleStream) -> Result<RatioEstimate, Error> {
    if stream.is_empty() {
        return Err(Error::EmptyStream);
    }
    let n = stream.len() as u64;
    let count_same = stream.triples().iter().filter(|t| t.is_same()).count() as u64;
    let count_diff = n - count_same;
    let p_s = count_same as f64 / n as f64;
    let p_n = 1.0 - p_s;
    let (ratio, stderr_ratio) = if count_diff == 0 {
        (f64::INFINITY, f64::INFINITY)
    } else {
        let spread = (p_s * (1.0 - p_s) / n as f64).sqrt();
        (
            count_same as f64 / count_diff as f64,
            spread / ((1.0 - p_s) * (1.0 - p_s)),
        )
    };
    Ok(RatioEstimate {
        n,
        count_same,
        p_s,
        p_n,
        ratio,
        stderr_ratio,
    })
}

/// Which kind of source a ratio points to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceLabel {
    /// Ratio at or above the threshold.
    Classical,
    /// Ratio below the threshold.
    Quantum,
}

impl fmt::Display for SourceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SourceLabel::Classical => "Classical",
            SourceLabel::Quantum => "Quantum",
        })
    }
}

/// A classification with the threshold it was made against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    /// Classical or Quantum.
    pub label: SourceLabel,
    /// The decision threshold, 5/12.
    pub threshold: f64,
    /// `ratio - threshold`; nonnegative exactly for Classical verdicts.
    pub margin: f64,
}

/// Labels an estimate Classical when its ratio reaches 5/12, Quantum below.
pub fn classify(estimate: &RatioEstimate) -> Verdict {
    let margin = estimate.ratio - CLASSIFICATION_THRESHOLD;
    Verdict {
        label: if margin >= 0.0 {
            SourceLabel::Classical
        } else {
            SourceLabel::Quantum
        },
        threshold: CLASSIFICATION_THRESHOLD,
        margin,
    }
}

/// Draws `n` triples from a synthetic source with the given probability of
/// an all-equal outcome.
///
/// Same-mass is split evenly between `000` and `111`; different-mass is
/// spread uniformly over the six mixed triples. Deterministic per seed.
pub fn gen_triples(p_s_target: f64, n: u64, seed: u64) -> TripleStream {
    assert!(
        (0.0..=1.0).contains(&p_s_target),
        "target probability must lie in [0, 1]"
    );
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let triple_of = |index: u8| {
        Triple::new(index >> 2 & 1 == 1, index >> 1 & 1 == 1, index & 1 == 1)
    };
    (0..n)
        .map(|_| {
            if rng.random::<f64>() < p_s_target {
                triple_of(rng.random_range(0..2u8) * 7)
            } else {
                triple_of(rng.random_range(1..7u8))
            }
        })
        .collect()
}

/// Whether the non-maximally entangled state with amplitude ratio `r` can
/// still be told apart from a classical source: true iff `r < 5.83`.
pub fn r_separable_threshold(r: f64) -> Result<bool, Error> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::BadRatioParameter { got: r });
    }
    Ok(r < R_SEPARABILITY_BOUND)
}
