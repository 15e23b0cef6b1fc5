//! Minimal unsharpness cascades: the lambda each observer needs to exactly
//! meet the classical bound given that everyone before them did the same.
//! When the cascade runs out, the extrapolated (infeasible) lambda of the
//! next observer is shown.

use porac::closedform::{min_lambda_cascade, Scenario};

fn main() {
    for scenario in Scenario::all() {
        let c = min_lambda_cascade(scenario, 5).unwrap();
        let lambdas: Vec<String> = c.lambdas.iter().map(|l| format!("{l:.4}")).collect();
        print!(
            "{:<18} {} observers share the advantage: [{}]",
            scenario.tag(),
            c.lambdas.len(),
            lambdas.join(", ")
        );
        if let Some(next) = c.infeasible_lambda {
            print!("  (next observer would need lambda = {next:.4} > 1)");
        }
        println!();
    }
}
