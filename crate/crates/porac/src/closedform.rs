//! Analytic optimal success probabilities, trade-off curves and minimal-λ
//! cascades for the four scenarios.
//!
//! Throughout, a "λ-chain" (λ₁, …, λₖ) lists the unsharpness parameters of the
//! first k observers; the formula for observer k's optimal success is linear
//! in λₖ and shrinks with every earlier λᵢ through factors √(1−λᵢ²).

use crate::{Error, Result};

/// The four game scenarios treated by this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// 3-bit parity-oblivious RAC on a qubit (MUB measurements).
    ThreeBitPo,
    /// 4-bit standard RAC on a qubit.
    FourBitStdQubit,
    /// 4-bit parity-oblivious RAC on a qubit.
    FourBitPoQubit,
    /// 4-bit parity-oblivious RAC on two qubits (anticommuting observables).
    FourBitPoTwoQubit,
}

impl Scenario {
    pub fn all() -> [Scenario; 4] {
        [
            Scenario::ThreeBitPo,
            Scenario::FourBitStdQubit,
            Scenario::FourBitPoQubit,
            Scenario::FourBitPoTwoQubit,
        ]
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Scenario::ThreeBitPo => "3bit-po",
            Scenario::FourBitStdQubit => "4bit-std-qubit",
            Scenario::FourBitPoQubit => "4bit-po-qubit",
            Scenario::FourBitPoTwoQubit => "4bit-po-twoqubit",
        }
    }

    pub fn parse(tag: &str) -> Result<Self> {
        Scenario::all()
            .into_iter()
            .find(|s| s.tag() == tag)
            .ok_or_else(|| Error::Unsupported(format!("unknown scenario '{tag}'")))
    }

    pub fn n(&self) -> usize {
        match self {
            Scenario::ThreeBitPo => 3,
            _ => 4,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Scenario::FourBitPoTwoQubit => 4,
            _ => 2,
        }
    }

    pub fn parity_oblivious(&self) -> bool {
        !matches!(self, Scenario::FourBitStdQubit)
    }

    /// Classical (preparation-noncontextual for PO games) bound as an exact
    /// fraction.
    pub fn classical_bound_rational(&self) -> (u64, u64) {
        match self {
            Scenario::ThreeBitPo => (2, 3),
            Scenario::FourBitStdQubit => (11, 16),
            Scenario::FourBitPoQubit | Scenario::FourBitPoTwoQubit => (5, 8),
        }
    }

    pub fn classical_bound(&self) -> f64 {
        let (p, q) = self.classical_bound_rational();
        p as f64 / q as f64
    }

    /// How many sequential observers can each beat the classical bound.
    pub fn max_sharing(&self) -> usize {
        match self {
            Scenario::ThreeBitPo => 3,
            Scenario::FourBitStdQubit => 1,
            Scenario::FourBitPoQubit => 2,
            Scenario::FourBitPoTwoQubit => 4,
        }
    }

    /// Optimal success of observer k for a λ-chain of length k.
    pub fn success_k(&self, chain: &[f64]) -> Result<f64> {
        match self {
            Scenario::ThreeBitPo => delta_k_3bit(chain),
            Scenario::FourBitStdQubit => omega_4bit_std(chain),
            Scenario::FourBitPoQubit => omega_4bit_po(chain),
            Scenario::FourBitPoTwoQubit => xi_4bit_twoqubit(chain),
        }
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::parse(s)
    }
}

fn check_chain(chain: &[f64], max_len: usize) -> Result<()> {
    if chain.is_empty() || chain.len() > max_len {
        return Err(Error::OutOfRange(format!(
            "chain length {} not in 1..={max_len}",
            chain.len()
        )));
    }
    for &l in chain {
        if !(0.0..=1.0).contains(&l) {
            return Err(Error::OutOfRange(format!("lambda {l} not in [0,1]")));
        }
    }
    Ok(())
}

fn shrink_mub(l: f64) -> f64 {
    (1.0 + 2.0 * (1.0 - l * l).sqrt()) / 3.0
}

fn shrink_anticommuting(l: f64) -> f64 {
    (1.0 + 3.0 * (1.0 - l * l).sqrt()) / 4.0
}

/// 3-bit optimal success of observer k = |chain|:
/// Δₖ = 1/2 + λₖ · Π_{i<k}(1 + 2√(1−λᵢ²)) / (2√3 · 3^{k−1}).
pub fn delta_k_3bit(chain: &[f64]) -> Result<f64> {
    check_chain(chain, 4)?;
    let (last, prior) = chain.split_last().unwrap();
    let shrink: f64 = prior.iter().map(|&l| shrink_mub(l)).product();
    Ok(0.5 + last * shrink / (2.0 * 3f64.sqrt()))
}

/// Radicand 12Δ₁ − 12Δ₁² − 2 = 1 − λ₁², clamped against float dust at the
/// endpoints, negative values rejected as off-curve.
fn radicand_3bit(delta1: f64) -> Result<f64> {
    let r = 12.0 * delta1 - 12.0 * delta1 * delta1 - 2.0;
    if r < -1e-9 {
        return Err(Error::OutOfRange(format!(
            "delta1 = {delta1} outside the quantum range [1/2, (1+1/sqrt(3))/2]"
        )));
    }
    Ok(r.max(0.0))
}

/// Optimal 3-bit pair trade-off Δ₂(Δ₁) = 1/2 + (1 + 2√(12Δ₁−12Δ₁²−2))/(6√3).
pub fn tradeoff_3bit_pair(delta1: f64) -> Result<f64> {
    Ok(0.5 + (1.0 + 2.0 * radicand_3bit(delta1)?.sqrt()) / (6.0 * 3f64.sqrt()))
}

/// Optimal 3-bit triple trade-off. With Ξ₁ = 1 + 2√(12Δ₁−12Δ₁²−2) and
/// Ξ₂ = 3√3(2Δ₂−1): Δ₃ = (1 + (Ξ₁ + 2√(Ξ₁²−Ξ₂²))/(9√3))/2.
pub fn tradeoff_3bit_triple(delta1: f64, delta2: f64) -> Result<f64> {
    let xi1 = 1.0 + 2.0 * radicand_3bit(delta1)?.sqrt();
    let xi2 = 3.0 * 3f64.sqrt() * (2.0 * delta2 - 1.0);
    let rad = xi1 * xi1 - xi2 * xi2;
    if rad < -1e-9 {
        return Err(Error::Infeasible(format!(
            "(delta1, delta2) = ({delta1}, {delta2}) violates the pair trade-off"
        )));
    }
    Ok(0.5 * (1.0 + (xi1 + 2.0 * rad.max(0.0).sqrt()) / (9.0 * 3f64.sqrt())))
}

/// 4-bit standard RAC on a qubit:
/// Ω₁ = 1/2 + λ₁(√2+√6)/16, Ω₂ = 1/2 + λ₂(√2+√6)(1+3√(1−λ₁²))/64.
pub fn omega_4bit_std(chain: &[f64]) -> Result<f64> {
    check_chain(chain, 2)?;
    let c = (2f64.sqrt() + 6f64.sqrt()) / 16.0;
    match chain {
        [l1] => Ok(0.5 + l1 * c),
        [l1, l2] => Ok(0.5 + l2 * c * shrink_anticommuting(*l1)),
        _ => unreachable!(),
    }
}

/// 4-bit parity-oblivious RAC on a qubit:
/// Ωₖ = 1/2 + λₖ · Π_{i<k}(1 + 3√(1−λᵢ²)) / (4√2 · 4^{k−1}) — explicitly,
/// Ω₁ = 1/2 + λ₁/(4√2), Ω₂ = 1/2 + λ₂(1+3√(1−λ₁²))/(16√2),
/// Ω₃ = 1/2 + λ₃·√2·Π_{i≤2}(1+3√(1−λᵢ²))/128.
pub fn omega_4bit_po(chain: &[f64]) -> Result<f64> {
    check_chain(chain, 3)?;
    let (last, prior) = chain.split_last().unwrap();
    let shrink: f64 = prior.iter().map(|&l| shrink_anticommuting(l)).product();
    Ok(0.5 + last * shrink / (4.0 * 2f64.sqrt()))
}

/// 4-bit parity-oblivious RAC on two qubits:
/// ξₖ = 1/2 + λₖ · Π_{i<k}(1 + 3√(1−λᵢ²)) / 4ᵏ.
pub fn xi_4bit_twoqubit(chain: &[f64]) -> Result<f64> {
    check_chain(chain, 5)?;
    let (last, prior) = chain.split_last().unwrap();
    let shrink: f64 = prior.iter().map(|&l| shrink_anticommuting(l)).product();
    Ok(0.5 + last * shrink / 4.0)
}

/// Outcome of the minimal-λ cascade: the feasible prefix of λ values at which
/// each observer exactly meets the classical bound, plus — when the cascade
/// runs out — the (>1) λ the next observer would need and the best success
/// that observer could reach with λ = 1.
#[derive(Clone, Debug)]
pub struct CascadeResult {
    pub lambdas: Vec<f64>,
    /// Extrapolated λ > 1 of the first infeasible observer, if reached.
    pub infeasible_lambda: Option<f64>,
    /// Maximum success of the first infeasible observer (at λ = 1).
    pub blocked_success: Option<f64>,
}

/// Iteratively solves Sⱼ(λ₁ᵐⁱⁿ, …, λⱼ₋₁ᵐⁱⁿ, λⱼ) = classical bound for λⱼ by
/// bisection on [0,1] to 1e-12 (the formulas are monotone in λⱼ), stopping
/// once the bound is unreachable even at λⱼ = 1.
pub fn min_lambda_cascade(scenario: Scenario, k: usize) -> Result<CascadeResult> {
    if k > 5 {
        return Err(Error::OutOfRange(format!("cascade length {k} > 5")));
    }
    let bound = scenario.classical_bound();
    let mut lambdas: Vec<f64> = Vec::new();
    for _ in 0..k {
        let mut chain = lambdas.clone();
        chain.push(1.0);
        let max_len = match scenario {
            Scenario::ThreeBitPo => 4,
            Scenario::FourBitStdQubit => 2,
            Scenario::FourBitPoQubit => 3,
            Scenario::FourBitPoTwoQubit => 5,
        };
        if chain.len() > max_len {
            break;
        }
        let at_one = scenario.success_k(&chain)?;
        if at_one < bound {
            // Sⱼ is linear in λⱼ, so the λ that would be needed follows from
            // the λ=0 and λ=1 values even though it lies outside [0,1].
            *chain.last_mut().unwrap() = 0.0;
            let at_zero = scenario.success_k(&chain)?;
            return Ok(CascadeResult {
                lambdas,
                infeasible_lambda: Some((bound - at_zero) / (at_one - at_zero)),
                blocked_success: Some(at_one),
            });
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            *chain.last_mut().unwrap() = mid;
            if scenario.success_k(&chain)? < bound {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lambdas.push(0.5 * (lo + hi));
    }
    Ok(CascadeResult { lambdas, infeasible_lambda: None, blocked_success: None })
}

/// Length of the feasible prefix of the minimal-λ cascade.
pub fn max_sharing_observers(scenario: Scenario) -> usize {
    min_lambda_cascade(scenario, 5).map(|c| c.lambdas.len()).unwrap_or(0)
}
