//! Build a preparation ensemble by hand, check the parity-obliviousness
//! constraint, and run it through the simulator against the canonical
//! measurement settings.

use porac::closedform::Scenario;
use porac::qalgebra::BlochVector;
use porac::racgame::{quantum_po_check, GameSpec, PreparationEnsemble};
use porac::seqsim::{canonical_settings, run_chain, ChainConfig, ObserverConfig};

fn main() {
    // States carrying only single-bit components are parity-oblivious by
    // construction; this one deliberately under-weights the third bit.
    let r3 = 3f64.sqrt();
    let weights = [1.2 / r3, 1.2 / r3, 0.4 / r3];
    let blochs: Vec<BlochVector> = (0..8)
        .map(|x| {
            BlochVector::new(
                weights[0] * if x & 4 == 0 { 1.0 } else { -1.0 },
                weights[1] * if x & 2 == 0 { 1.0 } else { -1.0 },
                weights[2] * if x & 1 == 0 { 1.0 } else { -1.0 },
            )
            .scaled(1.0 / (weights[0].powi(2) + weights[1].powi(2) + weights[2].powi(2)).sqrt())
        })
        .collect();
    let ensemble = PreparationEnsemble::from_bloch(&blochs).unwrap();

    let po = quantum_po_check(&ensemble);
    println!("parity check: pass = {}, max deviation {:.1e}", po.pass, po.max_deviation);

    let observers = vec![
        ObserverConfig::from_observables(&canonical_settings(Scenario::ThreeBitPo), 0.8).unwrap(),
        ObserverConfig::from_observables(&canonical_settings(Scenario::ThreeBitPo), 1.0).unwrap(),
    ];
    let cfg = ChainConfig {
        spec: GameSpec::new(3, true, 2).unwrap(),
        preparations: ensemble,
        observers,
    };
    let report = run_chain(&cfg).unwrap();
    println!("successes: {:?}", report.success);
    println!("(below the canonical tetrahedron's, since the encoding is skewed)");
}
