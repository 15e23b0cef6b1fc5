//! Certify unsharpness parameters from observed success probabilities: a
//! witness on the optimal trade-off surface pins the lambdas to a point, a
//! sub-optimal witness still confines them to an interval.

use porac::certify::{
    interval_from_pair_3bit, interval_pair_coupled_3bit, point_from_triple_3bit,
};

fn main() {
    // On-surface triple: both lambdas certified uniquely.
    let p = point_from_triple_3bit(0.686, 0.686, 0.686).unwrap();
    println!(
        "triple (0.686, 0.686, 0.686) -> lambda1 = {:.4}, lambda2 = {:.4} (residual {:.1e})",
        p.lambdas[0], p.lambdas[1], p.residual
    );

    // Sub-optimal pair: only an interval for lambda1.
    let i = interval_from_pair_3bit(2.0 / 3.0, 2.0 / 3.0);
    println!("pair (2/3, 2/3)           -> lambda1 in [{:.4}, {:.4}]", i.lo, i.hi);

    // A third observer's requirement narrows the interval.
    let (i1, i2) = interval_pair_coupled_3bit(2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0);
    println!(
        "adding S3 = 2/3           -> lambda1 in [{:.4}, {:.4}], lambda2 in [{:.4}, {:.4}]",
        i1.lo, i1.hi, i2.lo, i2.hi
    );

    // An over-strong witness falsifies the qubit model instead of erroring.
    let bad = interval_from_pair_3bit(0.7, 0.99);
    println!("pair (0.70, 0.99)         -> feasible: {}", bad.feasible);
}
