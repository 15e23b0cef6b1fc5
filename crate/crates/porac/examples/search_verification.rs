//! Verify closed-form claims by direct numerical search over preparations
//! and measurement directions: attainment of the sharp optimum, the pair
//! trade-off, and the no-advantage margin for the observer past the sharing
//! limit.

use porac::closedform::Scenario;
use porac::optsearch::{maximize_with_options, verify_no_advantage, SearchSpace};

fn main() {
    let scenario = Scenario::ThreeBitPo;

    // Sharp single observer.
    let space = SearchSpace::tradeoff(scenario, vec![1.0], 1).unwrap();
    let r = maximize_with_options(&space, 0, 20, 20_000).unwrap();
    let optimum = scenario.success_k(&[1.0]).unwrap();
    println!(
        "sharp optimum: search {:.9} vs closed form {:.9} (gap {:.1e})",
        r.best_value,
        optimum,
        (optimum - r.best_value).abs()
    );

    // Second observer at the trade-off optimum, first observer pinned to its
    // own optimal value.
    let l1 = (3.0 + 4.0 * 3f64.sqrt()) / 13.0;
    let space = SearchSpace::tradeoff(scenario, vec![l1, 1.0], 2).unwrap();
    let r = maximize_with_options(&space, 0, 20, 20_000).unwrap();
    let closed = scenario.success_k(&[l1, 1.0]).unwrap();
    println!(
        "pair trade-off at lambda1 = {l1:.4}: search {:.9} vs closed form {:.9}",
        r.best_value, closed
    );

    // Fourth observer cannot beat 2/3 while the first three keep theirs.
    let na = verify_no_advantage(scenario, 1, 20).unwrap();
    println!(
        "observer {} best found {:.6}, classical bound {:.6}, margin {:+.4e}",
        na.target, na.max_found, na.classical_bound, na.margin
    );
}
