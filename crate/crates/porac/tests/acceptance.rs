//! Acceptance suite: one test per release criterion, each printing a single
//! pass/fail line (run with `--nocapture` to see them). Reference values come
//! from the published analysis this crate reproduces; known divergences are
//! asserted as divergences rather than silently reconciled.

use porac::certify::{
    interval_4bit_po, interval_from_pair_3bit, interval_pair_coupled_3bit,
    intervals_twoqubit, lambda2_interval_3bit, lambda3_min_3bit, point_from_triple_3bit,
    WitnessTuple,
};
use porac::closedform::{
    delta_k_3bit, min_lambda_cascade, omega_4bit_po, xi_4bit_twoqubit, Scenario,
};
use porac::optsearch::{maximize_with_options, SearchSpace};
use porac::qalgebra::{kraus_pair, povm_element, Observable, UnsharpSetting};
use porac::racgame::{classical_bound_bruteforce, quantum_po_check, GameSpec};
use porac::seqsim::{canonical_chain, canonical_ensemble, run_chain};

const R3: f64 = 1.732_050_807_568_877_2;

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if ok { "pass" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion}: {detail}");
}

/// Splitmix-style generator, good enough for sampling test grids.
fn rand01(state: &mut u64) -> f64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let z = (*state >> 33) ^ *state;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

#[test]
fn criterion_01_classical_bounds_exact() {
    let cases = [
        (3, true, 2u64, 3u64),
        (3, false, 3, 4),
        (4, true, 5, 8),
        (4, false, 11, 16),
    ];
    let mut ok = true;
    for (n, po, num, den) in cases {
        let b = classical_bound_bruteforce(&GameSpec::new(n, po, 2).unwrap());
        // Exact rational equality, independent of gcd normalization.
        ok &= b.numerator * den == num * b.denominator;
    }
    report("1", ok, "brute-force classical bounds 2/3, 3/4, 5/8, 11/16");
}

#[test]
fn criterion_02_sharp_optimal_values() {
    let three = run_chain(&canonical_chain(Scenario::ThreeBitPo, &[1.0]).unwrap()).unwrap();
    let d1 = (three.success[0] - 0.5 * (1.0 + 1.0 / R3)).abs();
    let two = run_chain(&canonical_chain(Scenario::FourBitPoTwoQubit, &[1.0]).unwrap()).unwrap();
    let x1 = (two.success[0] - 0.75).abs();
    report(
        "2",
        d1 < 1e-10 && x1 < 1e-10,
        &format!("sharp optima: 3-bit dev {d1:.2e}, two-qubit dev {x1:.2e}"),
    );
}

#[test]
fn criterion_03_equal_advantage_pair_point() {
    let l1 = (3.0 + 4.0 * R3) / 13.0;
    let equal = (17.0 + R3) / 26.0;
    let sim = run_chain(&canonical_chain(Scenario::ThreeBitPo, &[l1, 1.0]).unwrap()).unwrap();
    let closed = [
        delta_k_3bit(&[l1]).unwrap(),
        delta_k_3bit(&[l1, 1.0]).unwrap(),
    ];
    let dev = (sim.success[0] - closed[0])
        .abs()
        .max((sim.success[1] - closed[1]).abs())
        .max((sim.success[0] - equal).abs())
        .max((sim.success[1] - equal).abs());
    let rounded_ok = (l1 - 0.763).abs() < 5e-3 && (equal - 0.72).abs() < 5e-3;
    report(
        "3",
        dev < 1e-10 && rounded_ok,
        &format!("S1 = S2 = (17+sqrt(3))/26 at lambda1 = (3+4*sqrt(3))/13, dev {dev:.2e}"),
    );
}

#[test]
fn criterion_04_cascade_and_no_advantage() {
    let cascade = min_lambda_cascade(Scenario::ThreeBitPo, 3).unwrap().lambdas;
    let refs = [0.5773, 0.6578, 0.7873];
    let cascade_ok = cascade
        .iter()
        .zip(refs)
        .all(|(got, want)| (got - want).abs() < 1e-4);
    let d4 = delta_k_3bit(&[cascade[0], cascade[1], cascade[2], 1.0]).unwrap();
    let d4_ok = (d4 - 0.6575).abs() < 5e-4;

    let space = SearchSpace::no_advantage(Scenario::ThreeBitPo).unwrap();
    let mut worst = f64::NEG_INFINITY;
    for seed in 0..64u64 {
        let r = maximize_with_options(&space, seed, 1, 20_000).unwrap();
        worst = worst.max(r.best_value);
    }
    let margin = 2.0 / 3.0 - worst;
    report(
        "4",
        cascade_ok && d4_ok && margin > 0.0,
        &format!("cascade ok, Delta4 = {d4:.6}, S4 search margin {margin:.4e} over 64 seeds"),
    );
}

#[test]
fn criterion_05_certified_intervals() {
    let pair = interval_from_pair_3bit(2.0 / 3.0, 2.0 / 3.0);
    let pair_ok = pair.feasible
        && (pair.lo - 0.5774).abs() < 1e-3
        && (pair.hi - 0.9306).abs() < 1e-3;

    let (coupled, _) = interval_pair_coupled_3bit(2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0);
    let coupled_ok = coupled.feasible && (coupled.hi - 0.772).abs() < 5e-3;

    // Adding the third-observer requirement never widens the lambda1 interval.
    let mut monotone = true;
    for (s1, s2, s3) in [
        (2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0),
        (0.67, 0.67, 0.66),
        (0.69, 0.68, 0.655),
        (0.70, 0.70, 0.63),
    ] {
        let wide = interval_from_pair_3bit(s1, s2);
        let (narrow, _) = interval_pair_coupled_3bit(s1, s2, s3);
        monotone &= wide.feasible && narrow.feasible;
        monotone &= narrow.hi <= wide.hi + 1e-9 && narrow.lo >= wide.lo - 1e-9;
    }
    report(
        "5",
        pair_ok && coupled_ok && monotone,
        &format!(
            "pair interval [{:.4}, {:.4}], coupled upper bound {:.4}, narrowing monotone",
            pair.lo, pair.hi, coupled.hi
        ),
    );
}

#[test]
fn criterion_06_triple_point_certification() {
    let a = point_from_triple_3bit(0.686, 0.686, 0.686).unwrap();
    let a_ok = (a.lambdas[0] - 0.6443).abs() < 1e-3 && (a.lambdas[1] - 0.7641).abs() < 1e-3;
    let b = point_from_triple_3bit(0.67, 0.675, 0.704).unwrap();
    let b_ok = (b.lambdas[0] - 0.588).abs() < 2e-3 && (b.lambdas[1] - 0.695).abs() < 2e-3;
    report(
        "6",
        a_ok && b_ok,
        &format!(
            "triples map to ({:.4}, {:.4}) and ({:.4}, {:.4})",
            a.lambdas[0], a.lambdas[1], b.lambdas[0], b.lambdas[1]
        ),
    );
}

#[test]
fn criterion_07_epsilon_cascade() {
    let i2 = lambda2_interval_3bit(0.6273, 2.0 / 3.0, 2.0 / 3.0);
    let i2_ok = i2.feasible && (i2.lo - 0.6772).abs() < 1e-3 && (i2.hi - 0.8566).abs() < 1e-3;
    let l3 = lambda3_min_3bit(0.6273, i2.lo, 2.0 / 3.0);
    let l3_ok = (l3 - 0.8220).abs() < 1e-3;
    report(
        "7",
        i2_ok && l3_ok,
        &format!("lambda2 in [{:.4}, {:.4}], lambda3 >= {l3:.4}", i2.lo, i2.hi),
    );
}

#[test]
fn criterion_08_four_bit_qubit_scenarios() {
    let std = min_lambda_cascade(Scenario::FourBitStdQubit, 2).unwrap();
    let std_ok = std.lambdas.len() == 1
        && (std.lambdas[0] - 0.776).abs() < 2e-3
        && (std.infeasible_lambda.unwrap() - 1.074).abs() < 2e-3;

    let interval = interval_4bit_po(0.625, 0.625);
    let interval_ok = interval.feasible
        && (interval.lo - 0.707).abs() < 1e-3
        && (interval.hi - 0.793).abs() < 1e-3;

    // Equal-advantage lambda1. The common success value derived from the
    // closed forms is 0.6322; the often-quoted 0.6805 is inconsistent with
    // them and is asserted to be so.
    let l1 = (4.0 + 6.0 * 6f64.sqrt()) / 25.0;
    let o1 = omega_4bit_po(&[l1]).unwrap();
    let o2 = omega_4bit_po(&[l1, 1.0]).unwrap();
    let equal_ok = (o1 - o2).abs() < 1e-6
        && (o1 - 0.6322073197015945).abs() < 1e-6
        && (o1 - 0.6805).abs() > 1e-2;
    let point = interval_4bit_po(o1, o2);
    let degenerate_ok = (point.lo - l1).abs() < 1e-6 && (point.hi - l1).abs() < 1e-6;

    report(
        "8",
        std_ok && interval_ok && equal_ok && degenerate_ok,
        &format!(
            "std minimal pair ({:.4}, {:.4}) with observer-2 infeasibility, \
             PO interval [{:.4}, {:.4}], equal-advantage value {o1:.4}",
            std.lambdas[0],
            std.infeasible_lambda.unwrap(),
            interval.lo,
            interval.hi
        ),
    );
}

#[test]
fn criterion_08_po_qubit_third_lambda_reference() {
    // Reference value 1.56 for the minimal third-observer sharpness. The
    // closed forms it is quoted alongside give 0.125 * 128 / (sqrt(2) *
    // prod(1 + 3*sqrt(1 - lambda_i^2))) = 1.5976 at the minimal cascade
    // (0.7071, 0.9062); the 1.56 print is not reproducible from them at the
    // stated tolerance. Kept as stated; expected to fail.
    let cascade = min_lambda_cascade(Scenario::FourBitPoQubit, 3).unwrap();
    let l3 = cascade.infeasible_lambda.unwrap();
    report(
        "8 (third-observer lambda reference)",
        (l3 - 1.56).abs() < 2e-2,
        &format!("derived lambda3_min = {l3:.4} vs reference 1.56 (tolerance 2e-2)"),
    );
}

#[test]
fn criterion_09_two_qubit_scenario() {
    // Closed form vs simulator on 100 random lambda-chains.
    let mut state = 0x243f6a8885a308d3u64;
    let mut dev: f64 = 0.0;
    for _ in 0..100 {
        let len = 1 + (rand01(&mut state) * 5.0) as usize;
        let chain: Vec<f64> = (0..len).map(|_| rand01(&mut state)).collect();
        let sim = run_chain(&canonical_chain(Scenario::FourBitPoTwoQubit, &chain).unwrap())
            .unwrap();
        for k in 1..=len {
            let closed = xi_4bit_twoqubit(&chain[..k]).unwrap();
            dev = dev.max((sim.success[k - 1] - closed).abs());
        }
    }
    let chains_ok = dev < 1e-10;

    let cascade = min_lambda_cascade(Scenario::FourBitPoTwoQubit, 5).unwrap();
    let prefix_ok = cascade.lambdas.len() == 4;

    // Fifth-observer minimal lambda from the published cascade prints.
    let printed = [0.5f64, 0.556, 0.679, 0.795];
    let shrink: f64 = printed.iter().map(|l| 1.0 + 3.0 * (1.0 - l * l).sqrt()).product();
    let l5 = 0.125 * 4f64.powi(5) / shrink;
    let l5_ok = (l5 - 1.12).abs() < 2e-2;

    // The third cascade value derived from the closed forms is 0.636, not the
    // printed 0.679; asserted as a documented divergence.
    let l3 = cascade.lambdas[2];
    let divergence_ok = (l3 - 0.636).abs() < 1e-3 && (l3 - 0.679).abs() > 2e-2;

    report(
        "9",
        chains_ok && prefix_ok && l5_ok && divergence_ok,
        &format!(
            "sim dev {dev:.2e}, feasible prefix 4, lambda5_min = {l5:.4}, \
             lambda3 divergence 0.636 vs printed 0.679 confirmed"
        ),
    );
}

#[test]
fn criterion_10_property_suites() {
    // Kraus completeness and POVM positivity across a lambda grid.
    let mut kraus_ok = true;
    let dirs = [
        Observable::from_direction(&porac::qalgebra::BlochVector::new(0.0, 0.0, 1.0)).unwrap(),
        Observable::from_direction(
            &porac::qalgebra::BlochVector::new(0.6, -0.8, 0.0),
        )
        .unwrap(),
    ];
    for i in 0..=10 {
        let lambda = i as f64 / 10.0;
        for obs in &dirs {
            let s = UnsharpSetting::new(obs.clone(), lambda).unwrap();
            let (kp, km) = kraus_pair(&s);
            let sum = kp.dagger().mul(&kp).add(&km.dagger().mul(&km));
            kraus_ok &= sum
                .max_abs_diff(&porac::qalgebra::ComplexMatrix::identity(2).unwrap())
                < 1e-12;
            for outcome in 0..2 {
                let e = povm_element(&s, outcome);
                kraus_ok &= e
                    .eigenvalues_hermitian()
                    .into_iter()
                    .all(|ev| ev > -1e-12);
            }
        }
    }

    // Parity-obliviousness check: canonical PO ensembles pass, a biased one
    // fails.
    let mut po_ok = true;
    for s in [
        Scenario::ThreeBitPo,
        Scenario::FourBitPoQubit,
        Scenario::FourBitPoTwoQubit,
    ] {
        po_ok &= quantum_po_check(&canonical_ensemble(s)).pass;
    }
    let biased = porac::racgame::PreparationEnsemble::from_bloch(
        &(0..8)
            .map(|x| {
                porac::qalgebra::BlochVector::new(0.0, 0.0, if x == 0 { 1.0 } else { -1.0 })
            })
            .collect::<Vec<_>>(),
    )
    .unwrap();
    po_ok &= !quantum_po_check(&biased).pass;

    // Simulator vs closed form over 200 random chains, per scenario up to the
    // length where the closed form tracks the canonical construction exactly.
    let mut state = 0x13198a2e03707344u64;
    let mut chain_dev: f64 = 0.0;
    for i in 0..200 {
        let (scenario, max_len) = match i % 3 {
            0 => (Scenario::ThreeBitPo, 4),
            1 => (Scenario::FourBitPoQubit, 3),
            _ => (Scenario::FourBitPoTwoQubit, 5),
        };
        let len = 1 + (rand01(&mut state) * max_len as f64) as usize;
        let chain: Vec<f64> = (0..len).map(|_| rand01(&mut state)).collect();
        let sim = run_chain(&canonical_chain(scenario, &chain).unwrap()).unwrap();
        for k in 1..=len {
            let closed = scenario.success_k(&chain[..k]).unwrap();
            chain_dev = chain_dev.max((sim.success[k - 1] - closed).abs());
        }
    }
    let chains_ok = chain_dev < 1e-10;

    // Interval soundness against simulated ground-truth chains.
    let mut sound_ok = true;
    for _ in 0..100 {
        let l1 = rand01(&mut state);
        let l2 = rand01(&mut state);
        let rep =
            run_chain(&canonical_chain(Scenario::ThreeBitPo, &[l1, l2]).unwrap()).unwrap();
        let i = interval_from_pair_3bit(rep.success[0], rep.success[1]);
        sound_ok &= i.feasible && i.lo <= l1 + 1e-9 && l1 <= i.hi + 1e-9;

        let rep =
            run_chain(&canonical_chain(Scenario::FourBitPoQubit, &[l1, 1.0]).unwrap()).unwrap();
        let i = interval_4bit_po(rep.success[0], rep.success[1]);
        sound_ok &= i.feasible && i.lo <= l1 + 1e-9 && l1 <= i.hi + 1e-9;
    }
    // Two-qubit intervals with intermediates at their minimal cascade values,
    // as the interval assumes.
    let cascade = min_lambda_cascade(Scenario::FourBitPoTwoQubit, 4).unwrap().lambdas;
    for _ in 0..20 {
        let l1 = rand01(&mut state);
        let chain = [l1, cascade[1], cascade[2], 1.0];
        let rep =
            run_chain(&canonical_chain(Scenario::FourBitPoTwoQubit, &chain).unwrap()).unwrap();
        let w = WitnessTuple::new(Scenario::FourBitPoTwoQubit, rep.success.clone()).unwrap();
        for i in intervals_twoqubit(&w).unwrap() {
            sound_ok &= i.feasible && i.lo <= l1 + 1e-9 && l1 <= i.hi + 1e-9;
        }
    }

    // Never-exceed: the pinned search stays below the classical bound for the
    // scenarios whose sharing limit follows from exact trade-offs. (For the
    // 4-bit PO qubit game the limit derives from a formula known to understate
    // the qubit optimum and a feasible third observer can exceed the bound;
    // that divergence is exercised elsewhere.)
    let mut exceed_ok = true;
    let mut min_margin = f64::INFINITY;
    for (scenario, seeds) in [(Scenario::ThreeBitPo, 32u64), (Scenario::FourBitStdQubit, 32)] {
        let space = SearchSpace::no_advantage(scenario).unwrap();
        let bound = scenario.classical_bound();
        for seed in 0..seeds {
            let r = maximize_with_options(&space, seed, 1, 20_000).unwrap();
            min_margin = min_margin.min(bound - r.best_value);
            exceed_ok &= r.best_value < bound;
        }
    }

    report(
        "10",
        kraus_ok && po_ok && chains_ok && sound_ok && exceed_ok,
        &format!(
            "kraus grid, parity checks, 200-chain dev {chain_dev:.2e}, interval soundness, \
             never-exceed min margin {min_margin:.4e}"
        ),
    );
}
