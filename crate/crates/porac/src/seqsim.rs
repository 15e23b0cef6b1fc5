//! Exact simulation of the sequential measurement chain.
//!
//! Each observer applies the unsharp instrument to every branch state ρₓ and
//! passes the outcome-averaged, setting-averaged state on:
//! ρₓᵏ = (1/n) Σ_y Σ_± K±ρₓᵏ⁻¹K±†. The chain is simulated per input string —
//! 2ⁿ branches of d ≤ 4 density matrices — so all success probabilities are
//! exact up to float rounding.

use crate::closedform::Scenario;
use crate::qalgebra::{
    kraus_pair, BlochVector, ComplexMatrix, DensityMatrix, Observable,
    UnsharpSetting,
};
use crate::racgame::{bit, quantum_success, GameSpec, PreparationEnsemble};
use crate::{Error, Result};

/// One observer: n unsharp settings (one per input index) sharing a single λ.
#[derive(Clone, Debug)]
pub struct ObserverConfig {
    settings: Vec<UnsharpSetting>,
}

impl ObserverConfig {
    pub fn new(settings: Vec<UnsharpSetting>) -> Result<Self> {
        if settings.is_empty() {
            return Err(Error::DimMismatch("observer needs at least one setting".into()));
        }
        let lambda = settings[0].lambda;
        if settings.iter().any(|s| (s.lambda - lambda).abs() > 1e-12) {
            return Err(Error::OutOfRange(
                "all settings of one observer must share the same lambda".into(),
            ));
        }
        let dim = settings[0].dim();
        if settings.iter().any(|s| s.dim() != dim) {
            return Err(Error::DimMismatch("mixed setting dimensions".into()));
        }
        Ok(Self { settings })
    }

    pub fn from_observables(observables: &[Observable], lambda: f64) -> Result<Self> {
        let settings = observables
            .iter()
            .map(|o| UnsharpSetting::new(o.clone(), lambda))
            .collect::<Result<Vec<_>>>()?;
        Self::new(settings)
    }

    pub fn settings(&self) -> &[UnsharpSetting] {
        &self.settings
    }

    pub fn lambda(&self) -> f64 {
        self.settings[0].lambda
    }

    pub fn n(&self) -> usize {
        self.settings.len()
    }
}

/// Full chain: game, preparations, and the ordered observers.
#[derive(Clone, Debug)]
pub struct ChainConfig {
    pub spec: GameSpec,
    pub preparations: PreparationEnsemble,
    pub observers: Vec<ObserverConfig>,
}

/// Per-observer successes and the relayed ensembles after each observer.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub success: Vec<f64>,
    pub intermediate_states: Vec<PreparationEnsemble>,
}

/// Outcome- and setting-averaged post-measurement state
/// ρ' = (1/n) Σ_y (K₊ρK₊† + K₋ρK₋†).
pub fn average_post_state(rho: &DensityMatrix, obs: &ObserverConfig) -> Result<DensityMatrix> {
    if obs.settings[0].dim() != rho.dim() {
        return Err(Error::DimMismatch("observer dimension does not match state".into()));
    }
    let mut sum = ComplexMatrix::zeros(rho.dim())?;
    for s in &obs.settings {
        let (kp, km) = kraus_pair(s);
        sum = sum
            .add(&kp.mul(rho.matrix()).mul(&kp.dagger()))
            .add(&km.mul(rho.matrix()).mul(&km.dagger()));
    }
    DensityMatrix::new(sum.scale_re(1.0 / obs.n() as f64))
}

/// Runs the chain: observer k's success is evaluated on the ensemble it
/// receives, then every branch state is relayed through the averaged
/// instrument.
pub fn run_chain(cfg: &ChainConfig) -> Result<ChainReport> {
    if cfg.observers.is_empty() {
        return Err(Error::OutOfRange("chain needs at least one observer".into()));
    }
    for obs in &cfg.observers {
        if obs.n() != cfg.spec.n {
            return Err(Error::DimMismatch(format!(
                "observer has {} settings, game has n = {}",
                obs.n(),
                cfg.spec.n
            )));
        }
    }
    let mut current = cfg.preparations.clone();
    let mut success = Vec::new();
    let mut intermediate_states = Vec::new();
    for obs in &cfg.observers {
        success.push(quantum_success(&current, obs.settings())?);
        let next = current
            .states()
            .iter()
            .map(|rho| average_post_state(rho, obs))
            .collect::<Result<Vec<_>>>()?;
        current = PreparationEnsemble::new(next)?;
        intermediate_states.push(current.clone());
    }
    Ok(ChainReport { success, intermediate_states })
}

/// The optimal preparation ensemble for each scenario.
///
/// - 3-bit: the pure tetrahedron a_x = ((−1)^{x₁}, (−1)^{x₂}, (−1)^{x₃})/√3,
///   whose vertices pair antipodally and satisfy the PO constraint.
/// - 4-bit standard qubit: a_x ∝ Σ_y (−1)^{x_y} b̂_y with the optimal setting
///   directions (x̂, ŷ, ẑ, ẑ).
/// - 4-bit PO qubit: a_x = ((−1)^{x₁}x̂ + (−1)^{x₂}ŷ)/√2 — only weight-one
///   Fourier components, so PO-compliant, and optimal for the same
///   (x̂, ŷ, ẑ, ẑ) settings.
/// - 4-bit PO two-qubit: ρ_x = (I₄ + (1/2) Σ_y (−1)^{x_y} B_y)/4 over the
///   anticommuting set (rank-2 projectors scaled to unit trace).
pub fn canonical_ensemble(scenario: Scenario) -> PreparationEnsemble {
    match scenario {
        Scenario::ThreeBitPo => {
            let s3 = 1.0 / 3f64.sqrt();
            let vectors: Vec<BlochVector> = (0..8)
                .map(|x| {
                    BlochVector::new(
                        s3 * sign(bit(x, 0, 3)),
                        s3 * sign(bit(x, 1, 3)),
                        s3 * sign(bit(x, 2, 3)),
                    )
                })
                .collect();
            PreparationEnsemble::from_bloch(&vectors).unwrap()
        }
        Scenario::FourBitStdQubit => {
            let dirs = qubit_4bit_directions();
            let vectors: Vec<BlochVector> = (0..16)
                .map(|x| {
                    let mut v = BlochVector::new(0.0, 0.0, 0.0);
                    for (y, d) in dirs.iter().enumerate() {
                        v = v.add(&d.scaled(sign(bit(x, y, 4))));
                    }
                    v.normalized()
                })
                .collect();
            PreparationEnsemble::from_bloch(&vectors).unwrap()
        }
        Scenario::FourBitPoQubit => {
            let r2 = 1.0 / 2f64.sqrt();
            let vectors: Vec<BlochVector> = (0..16)
                .map(|x| BlochVector::new(r2 * sign(bit(x, 0, 4)), r2 * sign(bit(x, 1, 4)), 0.0))
                .collect();
            PreparationEnsemble::from_bloch(&vectors).unwrap()
        }
        Scenario::FourBitPoTwoQubit => {
            let set = crate::qalgebra::two_qubit_anticommuting_set();
            let states: Vec<DensityMatrix> = (0..16)
                .map(|x| {
                    let mut m = ComplexMatrix::identity(4).unwrap();
                    for (y, b) in set.iter().enumerate() {
                        m = m.add(&b.matrix().scale_re(0.5 * sign(bit(x, y, 4))));
                    }
                    DensityMatrix::new(m.scale_re(0.25)).unwrap()
                })
                .collect();
            PreparationEnsemble::new(states).unwrap()
        }
    }
}

/// The optimal measurement observables for each scenario.
pub fn canonical_settings(scenario: Scenario) -> Vec<Observable> {
    match scenario {
        Scenario::ThreeBitPo => vec![
            Observable::new(crate::qalgebra::pauli_x()).unwrap(),
            Observable::new(crate::qalgebra::pauli_y()).unwrap(),
            Observable::new(crate::qalgebra::pauli_z()).unwrap(),
        ],
        Scenario::FourBitStdQubit | Scenario::FourBitPoQubit => qubit_4bit_directions()
            .iter()
            .map(|d| Observable::from_direction(d).unwrap())
            .collect(),
        Scenario::FourBitPoTwoQubit => crate::qalgebra::two_qubit_anticommuting_set().to_vec(),
    }
}

/// Full canonical chain for the scenario with the given per-observer λ values.
pub fn canonical_chain(scenario: Scenario, lambdas: &[f64]) -> Result<ChainConfig> {
    let spec = GameSpec::new(scenario.n(), scenario.parity_oblivious(), scenario.dim())?;
    let observables = canonical_settings(scenario);
    let observers = lambdas
        .iter()
        .map(|&l| ObserverConfig::from_observables(&observables, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainConfig { spec, preparations: canonical_ensemble(scenario), observers })
}

fn sign(b: u8) -> f64 {
    if b == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Optimal qubit setting directions for both 4-bit qubit games: (x̂, ŷ, ẑ, ẑ).
fn qubit_4bit_directions() -> [BlochVector; 4] {
    [
        BlochVector::new(1.0, 0.0, 0.0),
        BlochVector::new(0.0, 1.0, 0.0),
        BlochVector::new(0.0, 0.0, 1.0),
        BlochVector::new(0.0, 0.0, 1.0),
    ]
}
