//! Exact classical bounds by exhaustive strategy enumeration, with the
//! optimal encoding/decoding witness for each game.

use porac::racgame::{classical_bound_bruteforce, GameSpec};

fn main() {
    for (n, po) in [(3, true), (3, false), (4, true), (4, false)] {
        let spec = GameSpec::new(n, po, 2).unwrap();
        let bound = classical_bound_bruteforce(&spec);
        let encoding: String =
            bound.strategy.encoding.iter().map(|b| char::from(b'0' + b)).collect();
        println!(
            "{n}-bit {}: {}/{} = {:.6}  (optimal encoding {encoding})",
            if po { "parity-oblivious" } else { "standard" },
            bound.numerator,
            bound.denominator,
            bound.value()
        );
    }
}
