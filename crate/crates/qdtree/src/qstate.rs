//! Pure states, density matrices, and outcome probability vectors.
//!
//! Outcome index convention: index `k` spells the measurement record as a
//! bitstring with the first-measured qubit in the most significant bit, so
//! on two qubits `|01⟩` is index 1 and `|10⟩` is index 2.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Error;

/// Tolerance applied by every construction-time validity check.
pub const VALIDITY_TOL: f64 = 1e-9;

/// Renders an outcome index as a bitstring of the given width.
pub(crate) fn bitstring(index: usize, bits: usize) -> String {
    (0..bits)
        .rev()
        .map(|b| if (index >> b) & 1 == 0 { '0' } else { '1' })
        .collect()
}

/// Number of qubits encoded by a vector of the given length, if any.
fn qubits_for_len(len: usize) -> Option<usize> {
    if len >= 2 && len.is_power_of_two() {
        Some(len.trailing_zeros() as usize)
    } else {
        None
    }
}

/// A normalized pure state on one or more qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Builds a state from complex amplitudes in bitstring order.
    ///
    /// The amplitude count must be a power of two of at least 2, and the
    /// squared magnitudes must sum to 1 within [`VALIDITY_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, Error> {
        let num_qubits = qubits_for_len(amplitudes.len()).ok_or(Error::BadAmplitudeCount {
            got: amplitudes.len(),
        })?;
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > VALIDITY_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self, Error> {
        Self::new(
            amplitudes
                .iter()
                .map(|&re| Complex64::new(re, 0.0))
                .collect(),
        )
    }

    /// Builds the two-qubit state with amplitude ratio `r` between `|00⟩`
    /// and `|11⟩`: amplitudes `r/√(1+r²)` and `1/√(1+r²)`.
    ///
    /// `r = 1` gives the maximally entangled state.
    pub fn from_r(r: f64) -> Result<Self, Error> {
        if !r.is_finite() || r <= 0.0 {
            return Err(Error::BadRatioParameter { got: r });
        }
        let h = r.hypot(1.0);
        Self::from_real(&[r / h, 0.0, 0.0, 1.0 / h])
    }

    /// Number of qubits.
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Number of basis outcomes, `2^num_qubits`.
    pub fn num_outcomes(&self) -> usize {
        self.amplitudes.len()
    }

    /// Amplitudes in bitstring order.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Probability of each basis outcome: the squared amplitude magnitudes.
    pub fn outcome_probs(&self) -> ProbabilityVector {
        ProbabilityVector::from_validated(self.amplitudes.iter().map(|a| a.norm_sqr()).collect())
    }

    /// The rank-1 density matrix `|ψ⟩⟨ψ|` of this state.
    pub fn density(&self) -> DensityMatrix {
        let dim = self.amplitudes.len();
        let entries = DMatrix::from_fn(dim, dim, |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        });
        DensityMatrix {
            num_qubits: self.num_qubits,
            entries,
        }
    }
}

/// A Hermitian, positive semidefinite, trace-1 matrix over qubit outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates and wraps a complex matrix.
    ///
    /// The matrix must be square with power-of-two dimension of at least 2,
    /// Hermitian within [`VALIDITY_TOL`] elementwise, have trace 1 within
    /// [`VALIDITY_TOL`], and have no eigenvalue below `-`[`VALIDITY_TOL`].
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self, Error> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        let dim = entries.nrows();
        let num_qubits = qubits_for_len(dim).ok_or(Error::BadDimension { dim })?;
        for i in 0..dim {
            for j in i..dim {
                let deviation = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                if deviation > VALIDITY_TOL {
                    return Err(Error::NotHermitian {
                        row: i,
                        col: j,
                        deviation,
                    });
                }
            }
        }
        let trace: Complex64 = (0..dim).map(|i| entries[(i, i)]).sum();
        if (trace - Complex64::new(1.0, 0.0)).norm() > VALIDITY_TOL {
            return Err(Error::BadTrace { trace: trace.re });
        }
        let eigenvalues = entries.clone().symmetric_eigenvalues();
        let min_eigenvalue = eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_eigenvalue < -VALIDITY_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(Self {
            num_qubits,
            entries,
        })
    }

    /// Validates and wraps a real matrix given row-major entries.
    pub fn from_real(dim: usize, row_major: &[f64]) -> Result<Self, Error> {
        if row_major.len() != dim * dim {
            return Err(Error::NotSquare {
                rows: dim,
                cols: row_major.len().checked_div(dim).unwrap_or(0),
            });
        }
        let entries = DMatrix::from_fn(dim, dim, |i, j| Complex64::new(row_major[i * dim + j], 0.0));
        Self::new(entries)
    }

    /// Wraps entries that are already known to satisfy the invariants
    /// because they came out of an invariant-preserving computation.
    pub(crate) fn from_parts_unchecked(num_qubits: usize, entries: DMatrix<Complex64>) -> Self {
        Self {
            num_qubits,
            entries,
        }
    }

    /// Number of qubits.
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Matrix dimension, `2^num_qubits`.
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// The underlying matrix.
    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Kronecker product, with `self`'s qubits ordered before `other`'s.
    pub fn tensor(&self, other: &Self) -> Self {
        Self::from_parts_unchecked(
            self.num_qubits + other.num_qubits,
            self.entries.kronecker(&other.entries),
        )
    }

    /// Traces out one qubit of a two-qubit state, keeping `keep` (0 or 1).
    ///
    /// Returns the marginal density matrix of the kept qubit.
    pub fn partial_trace(&self, keep: usize) -> Result<Self, Error> {
        if self.num_qubits != 2 {
            return Err(Error::TwoQubitsRequired {
                got: self.num_qubits,
            });
        }
        if keep > 1 {
            return Err(Error::QubitOutOfRange {
                index: keep,
                num_qubits: 2,
            });
        }
        let m = &self.entries;
        let entry = |i: usize, j: usize| -> Complex64 {
            if keep == 0 {
                m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)]
            } else {
                m[(i, j)] + m[(2 + i, 2 + j)]
            }
        };
        let entries = DMatrix::from_fn(2, 2, entry);
        Ok(Self::from_parts_unchecked(1, entries))
    }

    /// Tests whether a two-qubit state is the tensor product of its
    /// single-qubit marginals.
    ///
    /// The candidate factors are the two partial traces. `max_deviation` is
    /// the largest absolute difference between the outcome probabilities of
    /// `self` and those of the factor product; the state is reported
    /// separable when it does not exceed `tol`.
    pub fn factor_test(&self, tol: f64) -> Result<SeparabilityReport, Error> {
        let factor_first = self.partial_trace(0)?;
        let factor_second = self.partial_trace(1)?;
        let product = factor_first.tensor(&factor_second);
        let max_deviation = (0..self.dim())
            .map(|k| (self.entries[(k, k)] - product.entries[(k, k)]).norm())
            .fold(0.0, f64::max);
        Ok(SeparabilityReport {
            separable: max_deviation <= tol,
            factor_first,
            factor_second,
            max_deviation,
            tolerance: tol,
        })
    }

    /// Outcome probabilities: the real parts of the diagonal.
    pub fn diag_probs(&self) -> ProbabilityVector {
        ProbabilityVector::from_validated((0..self.dim()).map(|k| self.entries[(k, k)].re).collect())
    }
}

/// Result of the tensor-factorization separability test.
#[derive(Debug, Clone)]
pub struct SeparabilityReport {
    /// Whether the factor product reproduces the state within tolerance.
    pub separable: bool,
    /// Marginal of the first qubit.
    pub factor_first: DensityMatrix,
    /// Marginal of the second qubit.
    pub factor_second: DensityMatrix,
    /// Largest outcome-probability difference between state and product.
    pub max_deviation: f64,
    /// Tolerance the test was run with.
    pub tolerance: f64,
}

/// A probability distribution over the `2^n` outcomes of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    probs: Vec<f64>,
}

impl ProbabilityVector {
    /// Validates and wraps raw probabilities in bitstring order.
    ///
    /// The length must be a power of two of at least 2, every entry must lie
    /// in `[0, 1]` within [`VALIDITY_TOL`] (tiny excursions are clamped),
    /// and the sum must be 1 within [`VALIDITY_TOL`].
    pub fn new(probs: Vec<f64>) -> Result<Self, Error> {
        qubits_for_len(probs.len()).ok_or(Error::BadOutcomeCount { got: probs.len() })?;
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() || !(-VALIDITY_TOL..=1.0 + VALIDITY_TOL).contains(&value) {
                return Err(Error::ProbabilityOutOfRange { index, value });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > VALIDITY_TOL {
            return Err(Error::BadProbabilitySum { sum });
        }
        Ok(Self::from_validated(probs))
    }

    /// Wraps probabilities produced by an invariant-preserving computation,
    /// clamping rounding excursions back into `[0, 1]`.
    pub(crate) fn from_validated(mut probs: Vec<f64>) -> Self {
        for p in &mut probs {
            *p = p.clamp(0.0, 1.0);
        }
        Self { probs }
    }

    /// The probabilities in bitstring order.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Number of outcomes.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    /// Always false: the vector covers at least one qubit.
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Number of qubits, `log2` of the outcome count.
    pub fn num_qubits(&self) -> usize {
        self.probs.len().trailing_zeros() as usize
    }

    /// Reindexes outcomes for a new measurement order.
    ///
    /// `perm[j]` names the original qubit measured at new position `j`; the
    /// probability of a bitstring in the result equals the probability of
    /// the correspondingly permuted bitstring in `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self, Error> {
        let n = self.num_qubits();
        let mut seen = vec![false; n];
        let valid = perm.len() == n
            && perm.iter().all(|&q| {
                q < n && !std::mem::replace(&mut seen[q.min(n - 1)], true)
            });
        if !valid {
            return Err(Error::InvalidPermutation {
                perm: perm.to_vec(),
                num_qubits: n,
            });
        }
        let mut out = vec![0.0; self.probs.len()];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut src = 0usize;
            for (j, &q) in perm.iter().enumerate() {
                let bit = (k >> (n - 1 - j)) & 1;
                src |= bit << (n - 1 - q);
            }
            *slot = self.probs[src];
        }
        Ok(Self { probs: out })
    }
}
