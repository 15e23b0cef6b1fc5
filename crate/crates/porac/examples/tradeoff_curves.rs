//! Sample the optimal two-observer trade-off curve for the 3-bit game and
//! locate the equal-advantage point where both observers do equally well.

use porac::closedform::{delta_k_3bit, tradeoff_3bit_pair};

fn main() {
    println!("lambda1     S1          S2(optimal)");
    for i in 0..=10 {
        let l1 = i as f64 / 10.0;
        let s1 = delta_k_3bit(&[l1]).unwrap();
        let s2 = tradeoff_3bit_pair(s1).unwrap();
        println!("{l1:.4}      {s1:.6}    {s2:.6}");
    }

    let r3 = 3f64.sqrt();
    let l1 = (3.0 + 4.0 * r3) / 13.0;
    let equal = (17.0 + r3) / 26.0;
    println!();
    println!("equal advantage at lambda1 = (3+4*sqrt(3))/13 = {l1:.6}");
    println!("common success S1 = S2 = (17+sqrt(3))/26 = {equal:.6}");
}
