//! Game specifications, parity sets, parity-oblivious constraint checks and
//! the classical / quantum success evaluators.
//!
//! Bit strings of length n are packed into `usize` with bit index y (0-based)
//! stored at position n−1−y, so the string literal `011` is the integer
//! `0b011`. The parity set 𝒫ₙ contains every string of Hamming weight ≥ 2;
//! a strategy is parity-oblivious (PO) when the message carries no information
//! about any parity s·x with s ∈ 𝒫ₙ.

use crate::qalgebra::{
    bloch_from_state, povm_element, BlochVector, ComplexMatrix, DensityMatrix, UnsharpSetting,
};
use crate::{Error, Result};

/// Bit y (0-based, left-to-right) of the packed n-bit string x.
#[inline]
pub fn bit(x: usize, y: usize, n: usize) -> u8 {
    ((x >> (n - 1 - y)) & 1) as u8
}

/// Inner product s·x mod 2.
#[inline]
pub fn parity(s: usize, x: usize) -> u8 {
    ((s & x).count_ones() % 2) as u8
}

/// A PORAC instance: n input bits, PO flag, carrier dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameSpec {
    pub n: usize,
    pub parity_oblivious: bool,
    pub dim: usize,
}

impl GameSpec {
    pub fn new(n: usize, parity_oblivious: bool, dim: usize) -> Result<Self> {
        if !(2..=4).contains(&n) {
            return Err(Error::OutOfRange(format!("n must be in 2..=4, got {n}")));
        }
        if dim != 2 && (dim != 4 || n != 4) {
            return Err(Error::DimMismatch(format!(
                "dim {dim} not supported for n = {n} (dim 4 requires n = 4)"
            )));
        }
        Ok(Self { n, parity_oblivious, dim })
    }

    pub fn num_strings(&self) -> usize {
        1 << self.n
    }
}

/// Deterministic classical strategy: a 1-bit encoding of each string and a
/// guess for each (message, index) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalStrategy {
    /// `encoding[x]` ∈ {0,1} for every packed string x.
    pub encoding: Vec<u8>,
    /// `decoding[m][y]` ∈ {0,1}.
    pub decoding: [Vec<u8>; 2],
}

/// All n-bit strings of Hamming weight ≥ 2, ascending.
pub fn parity_set(n: usize) -> Result<Vec<usize>> {
    if !(2..=4).contains(&n) {
        return Err(Error::OutOfRange(format!("parity_set needs n in 2..=4, got {n}")));
    }
    Ok((0..1usize << n).filter(|s| s.count_ones() >= 2).collect())
}

/// A complete set of 2ⁿ preparations, one per input string.
#[derive(Clone, Debug)]
pub struct PreparationEnsemble {
    n: usize,
    states: Vec<DensityMatrix>,
}

impl PreparationEnsemble {
    pub fn new(states: Vec<DensityMatrix>) -> Result<Self> {
        let n = match states.len() {
            4 => 2,
            8 => 3,
            16 => 4,
            other => {
                return Err(Error::DimMismatch(format!(
                    "ensemble must hold 2^n states for n in 2..=4, got {other}"
                )))
            }
        };
        let dim = states[0].dim();
        if states.iter().any(|s| s.dim() != dim) {
            return Err(Error::DimMismatch("mixed state dimensions in ensemble".into()));
        }
        Ok(Self { n, states })
    }

    /// Qubit ensemble from Bloch vectors, indexed by packed string.
    pub fn from_bloch(vectors: &[BlochVector]) -> Result<Self> {
        let states = vectors
            .iter()
            .map(crate::qalgebra::state_from_bloch)
            .collect::<Result<Vec<_>>>()?;
        Self::new(states)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn state(&self, x: usize) -> &DensityMatrix {
        &self.states[x]
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }
}

/// Result of the quantum parity-oblivious check: for every parity string s the
/// entrywise deviation between the two conditional average states.
#[derive(Clone, Debug)]
pub struct PoReport {
    /// (s, max absolute entrywise deviation) per parity string.
    pub deviations: Vec<(usize, f64)>,
    pub max_deviation: f64,
    pub pass: bool,
}

/// Checks the quantum PO condition: for every s ∈ 𝒫ₙ the average state over
/// {x : s·x = 0} equals the average over {x : s·x = 1}.
pub fn quantum_po_check(e: &PreparationEnsemble) -> PoReport {
    let n = e.n();
    let half = (1 << (n - 1)) as f64;
    let mut deviations = Vec::new();
    let mut max_deviation: f64 = 0.0;
    for s in parity_set(n).unwrap() {
        let mut even = ComplexMatrix::zeros(e.dim()).unwrap();
        let mut odd = ComplexMatrix::zeros(e.dim()).unwrap();
        for x in 0..e.states.len() {
            if parity(s, x) == 0 {
                even = even.add(e.state(x).matrix());
            } else {
                odd = odd.add(e.state(x).matrix());
            }
        }
        let dev = even.max_abs_diff(&odd) / half;
        max_deviation = max_deviation.max(dev);
        deviations.push((s, dev));
    }
    PoReport { deviations, max_deviation, pass: max_deviation <= 1e-9 }
}

/// The nontrivial PO constraints in Bloch form, assuming antipodal pairing
/// (a_{x̄} = −a_x): only odd-weight parity strings with weight ≥ 2 survive the
/// pairing, and each reduces to a signed sum over a fixed half of the strings.
///
/// For n = 3 this is the single residual a₀₀₀ − a₀₀₁ − a₀₁₀ − a₁₀₀ (s = 111);
/// for n = 4 the four residuals R₁₀₁₁, R₀₁₁₁, R₁₁₁₀, R₁₁₀₁ over the half-set
/// {0000, 0001, 0010, 0100, 1000, 0011, 0101, 0110}.
pub fn nontrivial_constraint_vectors(
    e: &PreparationEnsemble,
) -> Result<Vec<(usize, BlochVector)>> {
    if e.dim() != 2 {
        return Err(Error::Unsupported("Bloch residuals require qubit states".into()));
    }
    let n = e.n();
    let half_set: Vec<usize> = match n {
        3 => vec![0b000, 0b001, 0b010, 0b100],
        4 => vec![0b0000, 0b0001, 0b0010, 0b0100, 0b1000, 0b0011, 0b0101, 0b0110],
        _ => (0..1usize << (n - 1)).collect(),
    };
    let mut out = Vec::new();
    for s in parity_set(n)? {
        if s.count_ones() % 2 == 0 {
            continue; // trivially satisfied by antipodality
        }
        let mut r = BlochVector::new(0.0, 0.0, 0.0);
        for &x in &half_set {
            let a = bloch_from_state(e.state(x))?;
            r = if parity(s, x) == 0 { r.add(&a) } else { r.sub(&a) };
        }
        out.push((s, r));
    }
    Ok(out)
}

/// Average success of a deterministic classical strategy.
pub fn classical_success(spec: &GameSpec, strat: &ClassicalStrategy) -> f64 {
    let mut hits = 0usize;
    for x in 0..spec.num_strings() {
        let m = strat.encoding[x] as usize;
        for y in 0..spec.n {
            if strat.decoding[m][y] == bit(x, y, spec.n) {
                hits += 1;
            }
        }
    }
    hits as f64 / (spec.num_strings() * spec.n) as f64
}

/// Classical PO condition: for every parity string s and message value m, the
/// encoding maps equally many strings from each parity class to m.
pub fn classical_strategy_is_po(spec: &GameSpec, strat: &ClassicalStrategy) -> bool {
    encoding_is_po(spec.n, &strat.encoding)
}

fn encoding_is_po(n: usize, encoding: &[u8]) -> bool {
    for s in parity_set(n).unwrap() {
        for m in 0..2u8 {
            let count = |p: u8| {
                (0..1usize << n)
                    .filter(|&x| parity(s, x) == p && encoding[x] == m)
                    .count()
            };
            if count(0) != count(1) {
                return false;
            }
        }
    }
    true
}

/// Exact classical bound with an optimal witness strategy attached.
#[derive(Clone, Debug)]
pub struct BruteforceBound {
    pub numerator: u64,
    pub denominator: u64,
    pub strategy: ClassicalStrategy,
}

impl BruteforceBound {
    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

/// Maximizes classical success over all deterministic encodings (restricted to
/// PO encodings when the spec requires it), choosing the decoding greedily:
/// for a fixed encoding the optimal guess for (m, y) is the majority value of
/// bit y among the strings encoded to m. Exact rational arithmetic throughout.
pub fn classical_bound_bruteforce(spec: &GameSpec) -> BruteforceBound {
    let n = spec.n;
    let strings = spec.num_strings();
    let mut best_hits = 0u64;
    let mut best: Option<ClassicalStrategy> = None;
    for enc_mask in 0..1u64 << strings {
        let encoding: Vec<u8> = (0..strings).map(|x| ((enc_mask >> x) & 1) as u8).collect();
        if spec.parity_oblivious && !encoding_is_po(n, &encoding) {
            continue;
        }
        let mut hits = 0u64;
        let mut decoding = [vec![0u8; n], vec![0u8; n]];
        for (m, dec) in decoding.iter_mut().enumerate() {
            for y in 0..n {
                let ones = (0..strings)
                    .filter(|&x| encoding[x] as usize == m && bit(x, y, n) == 1)
                    .count() as u64;
                let total = (0..strings).filter(|&x| encoding[x] as usize == m).count() as u64;
                let zeros = total - ones;
                dec[y] = if ones > zeros { 1 } else { 0 };
                hits += ones.max(zeros);
            }
        }
        if hits > best_hits {
            best_hits = hits;
            best = Some(ClassicalStrategy { encoding, decoding });
        }
    }
    BruteforceBound {
        numerator: best_hits,
        denominator: (strings * n) as u64,
        strategy: best.expect("at least one encoding exists"),
    }
}

/// Average quantum success: (1/(2ⁿ·n)) Σ_{x,y} tr(ρₓ · M_{x_y|y}).
pub fn quantum_success(e: &PreparationEnsemble, settings: &[UnsharpSetting]) -> Result<f64> {
    let n = e.n();
    if settings.len() != n {
        return Err(Error::DimMismatch(format!(
            "need {n} settings, got {}",
            settings.len()
        )));
    }
    if settings.iter().any(|s| s.dim() != e.dim()) {
        return Err(Error::DimMismatch("setting dimension does not match ensemble".into()));
    }
    let mut total = 0.0;
    for x in 0..e.states.len() {
        for (y, s) in settings.iter().enumerate() {
            let m = povm_element(s, bit(x, y, n));
            total += e.state(x).matrix().mul(&m).trace().re;
        }
    }
    Ok(total / (e.states.len() * n) as f64)
}
