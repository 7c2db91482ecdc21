use proptest::prelude::*;

use super::*;
use crate::ballots::SyntheticBallot;
use crate::cowpea::cowpea_weights;
use crate::method::RunOptions;
use crate::rational::{int, ratio};
use crate::testutil::{arb_profile, profile};

const EX1_CORE: &str = "candidates: A1 A2 A3 B1 B2 B3\n2: A1 A2 A3\n1: B1 B2 B3";
const EX4: &str = "candidates: A B C\n99: A B\n99: A C\n1: B\n1: C";
const EX7: &str = "candidates: A1 A2 B1 B2\n6: A1 A2\n3: B1 B2";
const EX9: &str = "candidates: A1 A2 B1 B2\n9: A1 A2\n3: B1 B2";
const EX15: &str = "candidates: A B C D\n250: A C\n250: A D\n250: B C\n250: B D\n2: C\n2: D";
const EX16: &str = "candidates: A B C D\n5: A C\n4: B C\n1: B D";
const EX19: &str = "candidates: A B C D\n150: A C\n100: A D\n140: B C\n110: B D\n1: C\n1: D";
const EX20: &str = "candidates: A B C\n2: A C\n1: A\n3: B";
const EX21: &str = "candidates: A B C\n3: A\n2: B C\n1: B";
const EX23: &str = "candidates: A B C D\n150: A D\n100: A C\n140: B D\n110: B C\n1: D\n1: C";
const EX26: &str = "candidates: A B U\n2: U A\n1: U B\n2: A\n1: B\n1: U";

fn opts() -> RunOptions {
    RunOptions::default()
}

fn idx(p: &BallotProfile, name: &str) -> usize {
    p.index_of(name).unwrap()
}

fn set(p: &BallotProfile, names: &str) -> CandidateSet {
    p.set_of(names).unwrap()
}

#[test]
fn perfect_representation_examples() {
    let p = profile(EX16);
    let (ok, flow) = pr_feasible(&p, &pr::committee_weights(4, set(&p, "A B")));
    assert!(ok);
    let flow = flow.unwrap();
    // per-ballot shares add up to w_i / v, and only approved pairs carry flow
    for (i, b) in p.ballots().iter().enumerate() {
        let got: Rational = flow.assignment.iter().filter(|(j, _, _)| *j == i).map(|(_, _, s)| s.clone()).sum();
        assert_eq!(got, &b.weight / int(10));
    }
    assert!(flow.assignment.iter().all(|(i, c, _)| p.ballots()[*i].approved.contains(*c)));
    assert!(!committee_pr_feasible(&p, set(&p, "C D")));
    assert_eq!(misrepresentation(&p, set(&p, "C D")), ratio(2, 5));

    let q = profile("candidates: A B\n3: A\n2: A B");
    assert!(committee_pr_feasible(&q, set(&q, "A")));
}

#[test]
fn empty_ballots_count_as_demand() {
    let p = profile("candidates: A\n1: A\n1:");
    assert_eq!(misrepresentation(&p, set(&p, "A")), ratio(1, 2));
}

#[test]
fn pareto_dominance_examples() {
    let p = profile(EX15);
    assert!(pareto_dominates(&p, set(&p, "C D"), set(&p, "A B")));
    assert!(!pareto_dominates(&p, set(&p, "A B"), set(&p, "A B")));
    let q = profile(EX16);
    assert!(!pareto_dominates(&q, set(&q, "A B"), set(&q, "C D")));
}

#[test]
fn pav_matrix() {
    let p = profile(EX1_CORE);
    let v = iuac_probe(Method::Pav, &p, 3, 3, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Fail, "{:?}", v.checks);
    let v = iib_probe(Method::Pav, &p, SyntheticBallot::Full, int(2), 3, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong);
    let v = iib_probe(Method::Pav, &p, SyntheticBallot::Empty, int(5), 3, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong);
    let q = profile(EX4);
    let v = monotonicity_probe(Method::Pav, &q, 2, idx(&q, "A"), 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong, "{:?}", v.checks);
}

#[test]
fn phragmen_matrix() {
    let p7 = profile(EX7);
    let v = iib_probe(Method::MaxPhragmen, &p7, SyntheticBallot::Full, int(2), 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Fail);
    let v = iib_probe(Method::MaxPhragmen, &p7, SyntheticBallot::Empty, int(2), 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong);

    let p9 = profile(EX9);
    let v = iib_probe(Method::VarPhragmen, &p9, SyntheticBallot::Full, int(2), 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Fail);
    assert!(v.checks[0].detail.contains("A1,B1"), "{}", v.checks[0].detail);
    let v = iib_probe(Method::VarPhragmen, &p9, SyntheticBallot::Empty, int(2), 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong);
    let v = iuac_probe(Method::VarPhragmen, &p9, 1, 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Fail, "{:?}", v.checks);

    let core = profile(EX1_CORE);
    for m in [Method::MaxPhragmen, Method::VarPhragmen] {
        assert_eq!(iuac_probe(m, &core, 3, 3, &opts()).unwrap().outcome, Outcome::Fail, "{m}");
    }

    let p4 = profile(EX4);
    let v = monotonicity_probe(Method::VarPhragmen, &p4, 2, idx(&p4, "A"), 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassWeak, "{:?}", v.checks);
}

#[test]
fn monroe_fails_iib_with_empty_ballots() {
    let p = profile(EX9);
    let v = iib_probe(Method::Monroe, &p, SyntheticBallot::Empty, int(2), 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Fail);
}

#[test]
fn cc_consistency_on_mirrored_profiles() {
    let v = consistency_probe(Method::Cc, &profile(EX19), &profile(EX23), 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong, "{:?}", v.checks);
    let v = consistency_probe(Method::Pav, &profile(EX19), &profile(EX23), 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong);
    for m in [Method::MaxPhragmen, Method::VarPhragmen, Method::Monroe] {
        let v = consistency_probe(m, &profile(EX19), &profile(EX23), 2, &opts()).unwrap();
        assert_eq!(v.outcome, Outcome::Fail, "{m}");
    }
}

#[test]
fn cowpea_matrix() {
    let v = consistency_probe(Method::Cowpea, &profile(EX20), &profile(EX21), 0, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Fail);
    assert_eq!(v.after["weights"]["C"]["rational"], "1/9");

    let p15 = profile(EX15);
    let v = pareto_probe(Method::Cowpea, &p15, 0, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Fail);
    assert!(v.checks[0].detail.contains("C,D"));
    let v = pareto_probe(Method::CowpeaLottery, &p15, 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Fail);
    let v = pareto_probe(Method::Pav, &p15, 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong);

    let core = profile(EX1_CORE);
    let v = iuac_probe(Method::CowpeaLottery, &core, 3, 3, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong, "{:?}", v.checks);
    assert_eq!(iuac_probe(Method::Cowpea, &core, 3, 3, &opts()).unwrap().outcome, Outcome::NotApplicable);
    for kind in [SyntheticBallot::Full, SyntheticBallot::Empty] {
        for m in [Method::Cowpea, Method::CowpeaLottery] {
            assert_eq!(iib_probe(m, &core, kind, int(3), 3, &opts()).unwrap().outcome, Outcome::PassStrong);
        }
    }

    let p4 = profile(EX4);
    for m in [Method::Cowpea, Method::CowpeaLottery] {
        let v = monotonicity_probe(m, &p4, 2, idx(&p4, "A"), 2, &opts()).unwrap();
        assert_eq!(v.outcome, Outcome::PassStrong, "{m}: {:?}", v.checks);
    }
}

#[test]
fn cowpea_clone_examples() {
    let p = profile(EX26);
    let v = clone_probe(Method::Cowpea, &p, idx(&p, "U"), 1, 0, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong, "{:?}", v.checks);
    assert_eq!(v.checks[0].detail, "11/28 -> 11/28");

    let single = profile("candidates: X\n3: X");
    let v = clone_probe(Method::Cowpea, &single, 0, 2, 0, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong);
    assert_eq!(v.after["weights"]["X'1"]["rational"], "1/3");
}

#[test]
fn clone_probe_on_committee_methods() {
    let p = profile(EX1_CORE);
    let v = clone_probe(Method::CowpeaLottery, &p, idx(&p, "B1"), 1, 3, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong, "{:?}", v.checks);
    let v = clone_probe(Method::Pav, &p, idx(&p, "A1"), 2, 3, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong, "{:?}", v.checks);
}

#[test]
fn iia_probe_removes_only_losers() {
    let p = profile(EX16);
    let v = iia_probe(Method::Pav, &p, idx(&p, "D"), 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::PassStrong);
    let v = iia_probe(Method::Pav, &p, idx(&p, "C"), 2, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::NotApplicable);
    let q = profile(EX20);
    assert_eq!(iia_probe(Method::Cowpea, &q, idx(&q, "C"), 0, &opts()).unwrap().outcome, Outcome::PassStrong);
}

#[test]
fn probe_errors() {
    let p = profile(EX4);
    assert!(matches!(
        monotonicity_probe(Method::Pav, &p, 0, idx(&p, "A"), 2, &opts()),
        Err(Error::AlreadyApproved { ballot: 0, .. })
    ));
    assert_eq!(monotonicity_probe(Method::Pav, &p, 9, 0, 2, &opts()).unwrap_err(), Error::BallotOutOfRange(9));
    assert_eq!(consistency_probe(Method::Pav, &p, &profile(EX16), 2, &opts()).unwrap_err(), Error::CandidateMismatch);
    let tight = RunOptions { budget: 3, ..opts() };
    assert!(pareto_probe(Method::Pav, &profile(EX15), 2, &tight).unwrap_err().is_resource_guard());
}

#[test]
fn consistency_not_applicable_when_results_differ() {
    let v = consistency_probe(Method::Cowpea, &profile(EX19), &profile(EX23), 0, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::NotApplicable);
}

#[test]
fn verdicts_replay_identically() {
    let p = profile(EX9);
    let a = iib_probe(Method::VarPhragmen, &p, SyntheticBallot::Full, int(2), 2, &opts()).unwrap();
    let b = iib_probe(Method::VarPhragmen, &p, SyntheticBallot::Full, int(2), 2, &opts()).unwrap();
    assert_eq!(a, b);
    // the recorded perturbed profile reproduces the `after` payload
    let replay = crate::ballots::parse_approval_profile(a.perturbed_profile.as_deref().unwrap()).unwrap();
    let out = crate::method::run_method(Method::VarPhragmen, &replay, 2, &opts()).unwrap();
    assert_eq!(out.to_json(&replay), a.after);
    assert_eq!(a.to_json()["outcome"], "fail");
}

#[test]
fn pril_trivial_and_party_list() {
    let p = profile("candidates: A B\n2: A B\n1: A");
    let series = pril_convergence(&p, &[1], 50, 7).unwrap();
    assert_eq!(series[0].mean_misrepresentation, 0.0);

    let party = |size: usize| {
        let names = |s: &str| (1..=size).map(|i| format!("{s}{i}")).collect::<Vec<_>>().join(" ");
        profile(&format!(
            "candidates: {} {} {}\n3: {}\n2: {}\n1: {}",
            names("A"),
            names("B"),
            names("C"),
            names("A"),
            names("B"),
            names("C")
        ))
    };
    let shares = [1.0 / 2.0, 1.0 / 3.0, 1.0 / 6.0];
    let p = party(6);
    let series = pril_convergence(&p, &[2, 6], 2000, 11).unwrap();
    assert!(series[1].mean_misrepresentation < series[0].mean_misrepresentation);
    for point in &series {
        let exact = expected_party_list_misrepresentation(&shares, point.seats);
        assert!((point.mean_misrepresentation - exact).abs() < 0.01, "{point:?} vs {exact}");
    }
}

#[test]
fn party_list_expectation_matches_enumeration() {
    // direct sum over all seat sequences for k = 3
    let shares = [0.5, 0.3, 0.2];
    let k = 3;
    let mut total = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let seq = [a, b, c];
                let p: f64 = seq.iter().map(|&j| shares[j]).product();
                let served: f64 =
                    (0..3).map(|j| shares[j].min(seq.iter().filter(|&&x| x == j).count() as f64 / k as f64)).sum();
                total += p * (1.0 - served);
            }
        }
    }
    assert!((expected_party_list_misrepresentation(&shares, k) - total).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cowpea_weights_give_perfect_representation(p in arb_profile(5, 6, true)) {
        let w = cowpea_weights(&p).unwrap();
        prop_assert!(pr_feasible(&p, &w.weights).0);
    }

    #[test]
    fn dominance_is_a_strict_partial_order(p in arb_profile(5, 6, false), k in 1usize..=3, picks in prop::collection::vec(any::<u8>(), 3)) {
        let n = p.num_candidates();
        prop_assume!(k <= n);
        let all: Vec<usize> = (0..n).collect();
        let committees = crate::set::k_subsets(&all, k);
        let pick = |b: u8| committees[b as usize % committees.len()];
        let (x, y, z) = (pick(picks[0]), pick(picks[1]), pick(picks[2]));
        prop_assert!(!pareto_dominates(&p, x, x));
        if pareto_dominates(&p, x, y) {
            prop_assert!(!pareto_dominates(&p, y, x));
            if pareto_dominates(&p, y, z) {
                prop_assert!(pareto_dominates(&p, x, z));
            }
        }
    }

    #[test]
    fn pav_monotonicity_is_strong(p in arb_profile(4, 4, false), b in any::<u8>(), c in any::<u8>()) {
        let ballot = b as usize % p.ballots().len();
        let cand = c as usize % p.num_candidates();
        prop_assume!(!p.ballots()[ballot].approved.contains(cand) && !p.ballots()[ballot].weight.is_zero());
        let k = p.num_candidates().min(2);
        let v = monotonicity_probe(Method::Pav, &p, ballot, cand, k, &opts()).unwrap();
        prop_assert_eq!(v.checks[0].outcome, Outcome::PassStrong);
        prop_assert_eq!(v.outcome, Outcome::PassStrong);
    }

    #[test]
    fn cowpea_passes_iib(p in arb_profile(4, 4, false), full in any::<bool>(), w in 1i64..5) {
        let kind = if full { SyntheticBallot::Full } else { SyntheticBallot::Empty };
        let v = iib_probe(Method::Cowpea, &p, kind, int(w), 0, &opts()).unwrap();
        prop_assert_eq!(v.outcome, Outcome::PassStrong);
    }
}
