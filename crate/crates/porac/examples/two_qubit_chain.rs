//! The 4-bit parity-oblivious game on two qubits: anticommuting observables
//! let four sequential observers share the quantum advantage.

use porac::certify::{intervals_twoqubit, WitnessTuple};
use porac::closedform::{min_lambda_cascade, xi_4bit_twoqubit, Scenario};
use porac::seqsim::{canonical_chain, run_chain};

fn main() {
    let scenario = Scenario::FourBitPoTwoQubit;
    let cascade = min_lambda_cascade(scenario, 5).unwrap();
    let mut lambdas = cascade.lambdas.clone();
    lambdas.push(1.0);
    println!(
        "minimal cascade: {:?}  (fifth observer would need lambda = {:.4})",
        cascade.lambdas.iter().map(|l| (l * 1e4).round() / 1e4).collect::<Vec<_>>(),
        cascade.infeasible_lambda.unwrap()
    );

    let report = run_chain(&canonical_chain(scenario, &lambdas).unwrap()).unwrap();
    for (k, s) in report.success.iter().enumerate() {
        let closed = xi_4bit_twoqubit(&lambdas[..=k]).unwrap();
        println!(
            "observer {}: simulator {:.9}  closed form {:.9}  advantage {:+.4}",
            k + 1,
            s,
            closed,
            s - scenario.classical_bound()
        );
    }

    // Certify lambda1 from the first four observed successes alone.
    let w = WitnessTuple::new(scenario, report.success[..4].to_vec()).unwrap();
    for (k, i) in intervals_twoqubit(&w).unwrap().iter().enumerate() {
        println!(
            "from the first {} successes: lambda1 in [{:.4}, {:.4}]",
            k + 2,
            i.lo,
            i.hi
        );
    }
}
