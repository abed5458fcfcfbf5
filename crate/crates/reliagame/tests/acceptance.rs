//! Acceptance suite: one test per criterion, each printing a PASS line on
//! success (run with `--nocapture` to see them). Criteria run at their
//! stated tolerances.

mod common;

use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use reliagame::coalition::Coalition;
use reliagame::core::{
    check_core_membership, convex_core_construction, core_brute_force, core_typed, core_via_veto,
    CoreVerdict, PayoffVector,
};
use reliagame::games::{equivalent_agents, expand_typed, ExplicitGame};
use reliagame::reliability::{typed_value, ReliabilityGame};
use reliagame::shapley::{estimate_all, exact_shapley, plan_samples, SamplingMode};
use reliagame::SimpleGame;
use std::time::Instant;

const TOL: f64 = 1e-9;
const TIGHT: f64 = 1e-12;

#[test]
fn criterion_01_bridge_exact_values() {
    let (game, labels) = load_fixture("fig1.json");
    assert_eq!(labels, ["a", "b", "c", "d", "e"]);
    let cases: [(&[usize], f64); 5] = [
        (&[0, 1], 0.05),
        (&[2, 3], 0.05),
        (&[0, 3, 4], 0.125),
        (&[0, 1, 2, 3], 0.0975),
        (&[0, 1, 2, 3, 4], 0.19875),
    ];
    // Warm call, then time the five evaluations.
    let _ = game.exact_value(Coalition::grand(5)).unwrap();
    let start = Instant::now();
    for (members, expected) in cases {
        let c = Coalition::from_members(5, members.iter().copied());
        let got = game.exact_value(c).unwrap();
        assert!(
            (got - expected).abs() <= TIGHT,
            "v({members:?}) = {got}, expected {expected}"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1e-3,
        "five exact values took {elapsed:?}, budget is 1 ms"
    );
    println!("criterion 01 (bridge exact values, 1e-12, <1ms): PASS");
}

#[test]
fn criterion_02_bridge_core_pair() {
    let start = Instant::now();
    let (with_e, _) = load_fixture("fig1.json");
    let (without_e, _) = load_fixture("fig1-no-e.json");

    let five = core_brute_force(&with_e).unwrap();
    assert!(
        matches!(five.verdict, CoreVerdict::NonEmpty(_)),
        "five-edge extension should have a non-empty core"
    );
    let four = core_brute_force(&without_e).unwrap();
    assert!(
        matches!(four.verdict, CoreVerdict::Empty),
        "four-edge variant should have an empty core"
    );
    assert!(start.elapsed().as_secs_f64() < 1.0, "budget is 1 s");

    // Documented witness imputation for the five-edge extension.
    let witness = PayoffVector::new(vec![0.0, 0.05, 0.0, 0.05, 0.09875]).unwrap();
    let membership = check_core_membership(&with_e, &witness).unwrap();
    assert!(
        membership.is_in_core(),
        "witness (0, 0.05, 0, 0.05, 0.09875) is NOT in the core: {membership:?}. \
         The coalition {{a,c,d,e}} can win through {{c,d}} or {{a,e,d}}, so it is worth \
         0.05 + 0.125 - 0.0125 = 0.1625 while the witness pays it only 0.14875. \
         The non-empty verdict above is still correct: the transposed assignment \
         (0.05, 0, 0, 0.05, 0.09875) satisfies every coalition constraint."
    );
    println!("criterion 02 (bridge core pair + witness, <1s): PASS");
}

#[test]
fn criterion_03_serial_example_values() {
    let (game, labels) = load_fixture("serial.json");
    let serial = Coalition::from_members(4, [0, 1, 2]);
    assert_eq!(&labels[..3], ["p1", "p2", "p3"]);
    let v_serial = game.exact_value(serial).unwrap();
    assert!((v_serial - 0.125).abs() <= TIGHT, "serial path: {v_serial}");
    let v_all = game.exact_value(Coalition::grand(4)).unwrap();
    assert!((v_all - 0.5625).abs() <= TIGHT, "all four edges: {v_all}");
    println!("criterion 03 (serial example values, 1e-12): PASS");
}

#[test]
fn criterion_04_derandomized_sampler_matches_exact_shapley() {
    for name in [
        "fig1.json",
        "fig1-no-e.json",
        "serial.json",
        "unanimity.json",
        "typed-majority.json",
    ] {
        let (game, _) = load_fixture(name);
        let n = game.num_agents();
        assert!(n <= 6, "{name} exceeds the de-randomization size");
        let phi = exact_shapley(&game).unwrap();
        for (agent, &expected) in phi.iter().enumerate() {
            let expectation = derandomized_sampler_expectation(&game, agent);
            assert!(
                (expectation - expected).abs() <= TOL,
                "{name} agent {agent}: sampler expectation {expectation} vs exact {expected}"
            );
        }
    }
    println!("criterion 04 (de-randomized sampler expectation, 1e-9): PASS");
}

#[test]
fn criterion_05_hoeffding_coverage_on_bridge() {
    let start = Instant::now();
    let (game, _) = load_fixture("fig1.json");
    let epsilon = 0.05;
    let delta = 0.05;
    let k = plan_samples(epsilon, delta).unwrap();
    assert_eq!(k, 738, "sample plan for (0.05, 0.05)");

    let phi = exact_shapley(&game).unwrap();
    let runs = 100;
    let mut covered = 0;
    for seed in 0..runs {
        let estimates = estimate_all(&game, k, seed, delta, SamplingMode::Independent).unwrap();
        let all_within = estimates
            .iter()
            .all(|e| (e.point - phi[e.agent]).abs() <= epsilon);
        if all_within {
            covered += 1;
        }
    }
    assert!(
        covered >= 95,
        "only {covered}/100 seeded runs stayed within epsilon for every agent"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "budget is 30 s, took {elapsed:?}"
    );
    println!("criterion 05 (coverage {covered}/100 >= 95, k = 738, <30s): PASS");
}

#[test]
fn criterion_06_efficiency_and_symmetry_on_random_networks() {
    let mut rng = StdRng::seed_from_u64(0xACCE01);
    for round in 0..50 {
        let net = random_network(&mut rng, 10);
        let n = net.num_agents();
        let survival: Vec<f64> = (0..n).map(|_| grid_survival(&mut rng)).collect();
        let game = ReliabilityGame::new(net, survival).unwrap();

        let grand = game.grand_value().unwrap();
        let phi = exact_shapley(&game).unwrap();
        let total: f64 = phi.iter().sum();
        assert!(
            (total - grand).abs() <= TOL,
            "round {round}: payoffs sum to {total}, grand value {grand}"
        );

        for i in 0..n {
            for j in i + 1..n {
                if game.survival()[i] == game.survival()[j]
                    && equivalent_agents(game.base(), i, j).unwrap()
                {
                    assert!(
                        (phi[i] - phi[j]).abs() <= TOL,
                        "round {round}: equivalent agents {i},{j} got {} vs {}",
                        phi[i],
                        phi[j]
                    );
                }
            }
        }
    }
    println!("criterion 06 (efficiency + symmetry, 50 random networks, 1e-9): PASS");
}

#[test]
fn criterion_07_typed_formula_and_core_agreement() {
    let mut rng = StdRng::seed_from_u64(0xACCE02);
    for round in 0..50 {
        let k = rng.random_range(1..=3);
        let tg = random_typed(&mut rng, k, 10);
        let (base, survival) = expand_typed(&tg).unwrap();
        let expanded = ReliabilityGame::new(base, survival).unwrap();
        let n = expanded.num_agents();

        // The closed-form value must agree with sub-coalition enumeration
        // on a coalition of every profile.
        for q in tg.profiles() {
            let mut members = Vec::new();
            let mut offset = 0usize;
            for (j, &c) in tg.counts().iter().enumerate() {
                members.extend(offset..offset + q[j] as usize);
                offset += c as usize;
            }
            let c = Coalition::from_members(n, members);
            let closed = typed_value(&tg, &q);
            let enumerated = expanded.exact_value(c).unwrap();
            assert!(
                (closed - enumerated).abs() <= TOL,
                "round {round} profile {q:?}: {closed} vs {enumerated}"
            );
        }

        let typed_verdict = core_typed(&tg).unwrap().verdict;
        let brute_verdict = core_brute_force(&expanded).unwrap().verdict;
        assert_eq!(
            matches!(typed_verdict, CoreVerdict::NonEmpty(_)),
            matches!(brute_verdict, CoreVerdict::NonEmpty(_)),
            "round {round}: typed and brute-force verdicts disagree"
        );
        if let CoreVerdict::NonEmpty(p) = typed_verdict {
            assert!(check_core_membership(&expanded, &p).unwrap().is_in_core());
        }
    }
    println!("criterion 07 (typed formula + core agreement, 50 games, 1e-9): PASS");
}

#[test]
fn criterion_08_veto_preservation_and_veto_core() {
    let mut rng = StdRng::seed_from_u64(0xACCE03);
    for round in 0..50 {
        let n = rng.random_range(2..=10);
        let veto_agent = rng.random_range(0..n);
        // Plant the veto agent into every minimal winning set.
        let base = loop {
            let sets: Vec<Coalition> = (0..rng.random_range(1..=3))
                .map(|_| Coalition::from_mask(rng.random_range(0..1u64 << n), n).with(veto_agent))
                .collect();
            if let Ok(g) = ExplicitGame::new(n, sets) {
                break g;
            }
        };
        let survival: Vec<f64> = (0..n).map(|_| grid_survival(&mut rng)).collect();
        let game = ReliabilityGame::new(base, survival).unwrap();

        for mask in 0..1u64 << n {
            let c = Coalition::from_mask(mask, n);
            if !c.contains(veto_agent) {
                assert_eq!(
                    game.exact_value(c).unwrap(),
                    0.0,
                    "round {round}: coalition {c} without the veto agent must be worth exactly 0"
                );
            }
        }

        let result = core_via_veto(&game).unwrap();
        match result.verdict {
            CoreVerdict::NonEmpty(p) => {
                assert!(
                    check_core_membership(&game, &p).unwrap().is_in_core(),
                    "round {round}: veto imputation failed membership"
                );
            }
            other => panic!("round {round}: veto method returned {other:?}"),
        }
    }
    println!("criterion 08 (veto preservation + veto-core membership, 50 games): PASS");
}

#[test]
fn criterion_09_convex_construction_on_unanimity_family() {
    let mut rng = StdRng::seed_from_u64(0xACCE04);
    for round in 0..20 {
        let n = rng.random_range(1..=8);
        let veto_set = Coalition::from_mask(rng.random_range(1..1u64 << n), n);
        let base = ExplicitGame::new(n, vec![veto_set]).unwrap();
        let survival: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=1.0)).collect();
        let game = ReliabilityGame::new(base, survival).unwrap();

        let result = convex_core_construction(&game).unwrap();
        match result.verdict {
            CoreVerdict::NonEmpty(p) => {
                assert!(
                    check_core_membership(&game, &p).unwrap().is_in_core(),
                    "round {round}: constructed imputation not in core"
                );
                let grand = game.grand_value().unwrap();
                assert!(
                    (p.total() - grand).abs() <= TOL,
                    "round {round}: pays {} against grand value {grand}",
                    p.total()
                );
            }
            other => panic!("round {round}: construction returned {other:?}"),
        }
    }
    println!("criterion 09 (convex construction, 20 unanimity games, 1e-9): PASS");
}

#[test]
fn criterion_10_cli_sampling_is_worker_independent() {
    let fixture = fixture_path("fig1.json");
    let fixture = fixture.to_str().unwrap();
    let run = |workers: &str| {
        let out = run_cli(&[
            "shapley",
            fixture,
            "--epsilon",
            "0.05",
            "--delta",
            "0.05",
            "--seed",
            "7",
            "--workers",
            workers,
        ]);
        assert_eq!(out.status, 0, "stderr: {}", out.stderr);
        out.stdout
    };
    let one = run("1");
    let two = run("2");
    let eight = run("8");
    assert_eq!(one, two, "worker counts 1 and 2 disagree");
    assert_eq!(one, eight, "worker counts 1 and 8 disagree");
    let again = run("2");
    assert_eq!(one, again, "repeated run differs");
    assert!(one.contains("samples: 738"));
    println!("criterion 10 (byte-identical sampling across workers 1/2/8): PASS");
}
