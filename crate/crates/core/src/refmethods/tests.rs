use std::cmp::Ordering;

use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::flow::{Capacity, FlowNetwork};
use crate::method::{run_method, Method, MethodOutput, RunOptions};
use crate::rational::{int, ratio, to_f64};
use crate::testutil::{arb_profile, profile};

const EX1: &str = "candidates: U1 U2 U3 A1 A2 A3 B1 B2 B3\n2: U1 U2 U3 A1 A2 A3\n1: U1 U2 U3 B1 B2 B3";
const EX3: &str = "candidates: A B C\n1: A B\n1: A C";
const EX8: &str = "candidates: A1 A2 B1 B2\n6: A1 A2\n3: B1 B2\n2: A1 A2 B1 B2";
const EX9: &str = "candidates: A1 A2 B1 B2\n9: A1 A2\n3: B1 B2";
const EX10: &str = "candidates: A1 A2 B1 B2\n9: A1 A2\n3: B1 B2\n2: A1 A2 B1 B2";
const EX14: &str = "candidates: A1 A2 B1 B2 C1 C2\n9: A1 A2\n3: B1 B2\n2: C1 C2";
const EX19: &str = "candidates: A B C D\n150: A C\n100: A D\n140: B C\n110: B D\n1: C\n1: D";
const EX24: &str = "candidates: U A B C\n2: U A\n2: U B\n1: A\n1: B\n6: C";
const EX26: &str = "candidates: A B U\n2: U A\n1: U B\n2: A\n1: B\n1: U";

fn ex2() -> BallotProfile {
    let names = |p: &str, n: usize| (1..=n).map(|i| format!("{p}{i}")).collect::<Vec<_>>().join(" ");
    let text = format!(
        "candidates: {} {} {} {}\n2: {} {}\n2: {} {}\n1: {}",
        names("U", 10),
        names("A", 10),
        names("B", 10),
        names("C", 20),
        names("U", 10),
        names("A", 10),
        names("U", 10),
        names("B", 10),
        names("C", 20)
    );
    profile(&text)
}

fn set(p: &BallotProfile, names: &str) -> CandidateSet {
    p.set_of(names).unwrap()
}

fn committees(out: MethodOutput) -> TiedCommittees {
    match out {
        MethodOutput::Committees(t) => t,
        MethodOutput::WeightedCommittees(cc) => cc.committees,
        other => panic!("not a committee output: {other:?}"),
    }
}

#[test]
fn harmonic_numbers() {
    assert_eq!(harmonic(0), int(0));
    assert_eq!(harmonic(3), ratio(11, 6));
    assert_eq!(harmonic(6), ratio(49, 20));
}

#[test]
fn pav_note_scores() {
    let p = profile(EX1);
    let a = pav_score(&p, set(&p, "U1 U2 U3 A1 A2 A3"));
    let b = pav_score(&p, set(&p, "U1 U2 U3 A1 A2 B1"));
    assert_eq!(a, ratio(101, 15));
    assert_eq!(b, ratio(133, 20));
    assert_eq!(a, int(2) * harmonic(6) + harmonic(3));
    assert_eq!(b, int(2) * harmonic(5) + harmonic(4));
    assert_eq!(pav_score(&p, CandidateSet::EMPTY), int(0));

    let won = committees(run_method(Method::Pav, &p, 6, &RunOptions::default()).unwrap());
    assert_eq!(won.representatives(), vec![set(&p, "U1 U2 U3 A1 A2 A3")]);
    assert_eq!(won.count(), 1);
    assert_eq!(won.score, Score::Exact(ratio(101, 15)));
}

#[test]
fn pav_large_example_elects_six_from_the_small_faction() {
    let p = ex2();
    let won = committees(run_method(Method::Pav, &p, 20, &RunOptions::default()).unwrap());
    assert_eq!(won.patterns.len(), 1);
    let w = won.representatives()[0];
    let count = |prefix: char| p.names_of(w).iter().filter(|n| n.starts_with(prefix)).count();
    assert_eq!((count('U'), count('A'), count('B'), count('C')), (10, 2, 2, 6));
    let best = int(4) * harmonic(12) + harmonic(6);
    assert_eq!(won.score, Score::Exact(best.clone()));
    let proportional = set(&p, "U1 U2 U3 U4 U5 U6 U7 U8 U9 U10 A1 A2 A3 B1 B2 B3 C1 C2 C3 C4");
    let alt = pav_score(&p, proportional);
    assert_eq!(alt, int(4) * harmonic(13) + harmonic(4));
    assert_eq!(format!("{:.2} {:.2}", to_f64(&best), to_f64(&alt)), "14.86 14.80");
    assert_eq!(won.count(), 45 * 45 * 38760);
    assert!(won.concrete(1000).is_err());
}

#[test]
fn single_seat_goes_to_most_approved() {
    let p = profile("candidates: A B C\n2: A B\n1: B\n2: C");
    let won = committees(run_method(Method::Pav, &p, 1, &RunOptions::default()).unwrap());
    assert_eq!(won.representatives(), vec![set(&p, "B")]);
    let cc = cc_elect(&p, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(cc.committees.representatives(), vec![set(&p, "B")]);
    assert_eq!(cc.weights[0].weights[1], int(1));
}

#[test]
fn maxphragmen_examples() {
    let p = profile(EX8);
    assert_eq!(maxphragmen_score(&p, set(&p, "A1 B1")), Score::Exact(ratio(1, 5)));
    assert_eq!(maxphragmen_score(&p, set(&p, "A1 A2")), Score::Exact(ratio(1, 4)));
    let won = committees(run_method(Method::MaxPhragmen, &p, 2, &RunOptions::default()).unwrap());
    assert!(won.contains(set(&p, "A1 B1")) && !won.contains(set(&p, "A1 A2")));

    let p7 = profile("candidates: A1 A2 B1 B2\n6: A1 A2\n3: B1 B2");
    let won = committees(run_method(Method::MaxPhragmen, &p7, 2, &RunOptions::default()).unwrap());
    assert!(won.contains(set(&p7, "A1 B1")) && won.contains(set(&p7, "A1 A2")));
    assert_eq!(won.score, Score::Exact(ratio(1, 3)));

    let single = profile("candidates: A B\n5: A\n2: A B");
    assert_eq!(maxphragmen_score(&single, set(&single, "A")), Score::Exact(ratio(1, 7)));
    let nobody = profile("candidates: A B\n5: A");
    assert_eq!(maxphragmen_score(&nobody, set(&nobody, "A B")), Score::Worst);
}

#[test]
fn varphragmen_examples() {
    let tol = 1e-10;
    let p = profile(EX9);
    for names in ["A1 A2", "A1 B1"] {
        let (score, witness) = varphragmen_score(&p, set(&p, names), tol).unwrap();
        assert!((score.to_f64(Direction::Minimize) - 4.0 / 9.0).abs() < 1e-9, "{names}: {score:?}");
        let witness = witness.unwrap();
        for (m, row) in witness.shares.iter().enumerate() {
            let total: f64 = row.iter().zip(p.ballots()).map(|(f, b)| f * to_f64(&b.weight)).sum();
            assert!((total - 1.0).abs() < 1e-12, "member {m}");
            for (i, f) in row.iter().enumerate() {
                assert!(*f >= 0.0);
                assert!(*f == 0.0 || p.ballots()[i].approved.contains(witness.members[m]));
            }
        }
    }
    let won = committees(run_method(Method::VarPhragmen, &p, 2, &RunOptions::default()).unwrap());
    assert!(won.contains(set(&p, "A1 A2")) && won.contains(set(&p, "A1 B1")));

    let p = profile(EX10);
    let score = |names: &str| varphragmen_score(&p, set(&p, names), tol).unwrap().0.to_f64(Direction::Minimize);
    assert!((score("A1 B1") - 14.0 / 45.0).abs() < 1e-9);
    assert!((score("A1 A2") - 4.0 / 11.0).abs() < 1e-9);
    let won = committees(run_method(Method::VarPhragmen, &p, 2, &RunOptions::default()).unwrap());
    assert_eq!(won.patterns.len(), 1);
    assert!(won.contains(set(&p, "A1 B1")));

    let exact = |names: &str| -> Rational {
        let loads = balanced_loads(&p, set(&p, names)).unwrap();
        p.ballots().iter().zip(&loads).map(|(b, l)| &b.weight * l * l).sum()
    };
    assert_eq!(exact("A1 B1"), ratio(14, 45));
    assert_eq!(exact("A1 A2"), ratio(4, 11));

    let single = profile("candidates: A\n4: A\n3: A");
    let (s, _) = varphragmen_score(&single, single.all_candidates(), tol).unwrap();
    assert!((s.to_f64(Direction::Minimize) - 1.0 / 7.0).abs() < 1e-12);
}

#[test]
fn phragmen_comparison_on_mixed_profile() {
    let p = profile(EX19);
    let exact = |names: &str| -> Rational {
        let loads = balanced_loads(&p, set(&p, names)).unwrap();
        p.ballots().iter().zip(&loads).map(|(b, l)| &b.weight * l * l).sum()
    };
    assert_eq!(exact("A B"), ratio(1, 125));
    assert_eq!(exact("A B"), int(500) * ratio(1, 250) * ratio(1, 250));
    assert_eq!(exact("C D"), ratio(502, 61401));
    assert_eq!(exact("C D"), ratio(1, 291) + ratio(1, 211));
    for (names, value) in [("A B", 1.0 / 125.0), ("C D", 502.0 / 61401.0)] {
        let (s, _) = varphragmen_score(&p, set(&p, names), 1e-10).unwrap();
        assert!((s.to_f64(Direction::Minimize) - value).abs() < 1e-9);
    }
    for method in [Method::MaxPhragmen, Method::VarPhragmen] {
        let won = committees(run_method(method, &p, 2, &RunOptions::default()).unwrap());
        assert_eq!(won.representatives(), vec![set(&p, "A B")], "{method}");
    }
    assert_eq!(maxphragmen_score(&p, set(&p, "A B")), Score::Exact(ratio(1, 250)));
    assert_eq!(maxphragmen_score(&p, set(&p, "C D")), Score::Exact(ratio(1, 211)));
}

#[test]
fn leximax_refines_ties() {
    let p = profile(EX9);
    // max load 2/9 against 1/3
    assert_eq!(leximax_cmp(&p, set(&p, "A1 A2"), set(&p, "A1 B1")), Ordering::Less);
    assert_eq!(leximax_cmp(&p, set(&p, "A1 B1"), set(&p, "A1 B1")), Ordering::Equal);
    let p7 = profile("candidates: A1 A2 B1 B2\n6: A1 A2\n3: B1 B2");
    // both peak at 1/3, but A1 B1 puts that load on three voters instead of six
    assert_eq!(leximax_cmp(&p7, set(&p7, "A1 B1"), set(&p7, "A1 A2")), Ordering::Less);
}

#[test]
fn ebert_examples() {
    let p = profile(EX3);
    assert_eq!(ebert_score(&p, set(&p, "B C")), Score::Exact(int(2)));
    assert_eq!(ebert_score(&p, set(&p, "A B")), Score::Exact(ratio(5, 2)));
    let won = committees(run_method(Method::Ebert, &p, 2, &RunOptions::default()).unwrap());
    assert_eq!(won.representatives(), vec![set(&p, "B C")]);
    let single = profile("candidates: A\n3: A\n2: A");
    assert_eq!(ebert_score(&single, single.all_candidates()), Score::Exact(ratio(1, 5)));

    // 2:1 slates with an all-approving ballot elect two A's and one B
    let p = profile("candidates: A1 A2 A3 B1 B2 B3\n2: A1 A2 A3\n1: B1 B2 B3\n1: A1 A2 A3 B1 B2 B3");
    let won = committees(run_method(Method::Ebert, &p, 3, &RunOptions::default()).unwrap());
    assert_eq!(won.representatives(), vec![set(&p, "A1 A2 B1")]);
}

#[test]
fn monroe_examples() {
    let p = profile(EX14);
    assert_eq!(monroe_score(&p, set(&p, "A1 B1")), int(10));
    assert_eq!(monroe_score(&p, set(&p, "A1 A2")), int(9));
    let won = committees(run_method(Method::Monroe, &p, 2, &RunOptions::default()).unwrap());
    assert_eq!(won.representatives(), vec![set(&p, "A1 B1")]);
    let p9 = profile(EX9);
    let won = committees(run_method(Method::Monroe, &p9, 2, &RunOptions::default()).unwrap());
    assert!(won.contains(set(&p9, "A1 A2")) && won.contains(set(&p9, "A1 B1")));
    let all = profile("candidates: A B\n3: A\n2: A B");
    assert_eq!(monroe_score(&all, set(&all, "A")), int(5));
}

#[test]
fn cc_examples() {
    let p = profile(EX19);
    let res = cc_elect(&p, 2, DEFAULT_BUDGET).unwrap();
    assert!(res.committees.contains(set(&p, "C D")));
    let cd = res.weights.iter().find(|w| w.committee == set(&p, "C D")).unwrap();
    assert_eq!(cd.weights, vec![int(0), int(0), ratio(291, 502), ratio(211, 502)]);
    assert!(!cd.assignment_tie);

    let p = profile(EX3);
    let res = cc_elect(&p, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(res.committees.concrete(10).unwrap(), vec![set(&p, "A B"), set(&p, "A C"), set(&p, "B C")]);
    let ab = res.weights.iter().find(|w| w.committee == set(&p, "A B")).unwrap();
    assert!(ab.assignment_tie);
    assert_eq!(ab.weights, vec![ratio(3, 4), ratio(1, 4), int(0)]);
}

#[test]
fn optimised_pav_examples() {
    let p = profile(EX24);
    let r = optimised_pav_weights(&p, 1e-6).unwrap();
    let expect = [1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.5];
    for (x, e) in r.weights.iter().zip(expect) {
        assert!((x - e).abs() < 1e-3, "{:?}", r.weights);
    }
    assert!((r.lambda - 12.0).abs() < 1e-4);

    let p = profile(EX26);
    let r = optimised_pav_weights(&p, 1e-6).unwrap();
    for (x, e) in r.weights.iter().zip([0.442019, 0.192019, 0.365962]) {
        assert!((x - e).abs() < 1e-4, "{:?}", r.weights);
    }

    let p = profile("candidates: A B\n2: A\n1: B");
    let r = optimised_pav_weights(&p, 1e-9).unwrap();
    assert!((r.weights[0] - 2.0 / 3.0).abs() < 1e-8 && (r.weights[1] - 1.0 / 3.0).abs() < 1e-8);

    let p = profile("candidates: A B\n3: A\n1:");
    let r = optimised_pav_weights(&p, 1e-9).unwrap();
    assert_eq!(r.excluded_ballots, vec![1]);
    assert_eq!(r.weights, vec![1.0, 0.0]);
}

#[test]
fn harmonic_oracle_tracks_continuous_shares() {
    let p = profile(EX24);
    let cont = optimised_pav_weights(&p, 1e-9).unwrap();
    let seats = 10_000;
    let alloc = harmonic_oracle(&p, seats);
    assert_eq!(alloc.iter().sum::<u64>(), seats);
    for (a, x) in alloc.iter().zip(&cont.weights) {
        assert!((*a as f64 / seats as f64 - x).abs() < 0.01);
    }

    let p = profile(EX26);
    let seats = 100_000;
    let alloc = harmonic_oracle(&p, seats);
    for (a, e) in alloc.iter().zip([0.442019, 0.192019, 0.365962]) {
        assert!((*a as f64 / seats as f64 - e).abs() < 0.005);
    }

    let p = profile("candidates: A B C\n2: A B\n1: B\n2: C");
    assert_eq!(harmonic_oracle(&p, 1), vec![0, 1, 0]);
}

#[test]
fn budget_is_enforced() {
    let p = ex2();
    let err = elect_by_score(&p, 20, Direction::Maximize, 10, |w| Score::Exact(pav_score(&p, w))).unwrap_err();
    assert!(err.is_resource_guard());
    assert!(matches!(
        elect_by_score(&p, 51, Direction::Maximize, 10, |_| Score::Worst),
        Err(Error::TooManySeats { .. })
    ));
}

/// Smallest `t` with a load spread of maximum voter load at most `t`,
/// searched over every `m / W` with `W` a sum of ballot weights.
fn flow_maxphragmen(p: &BallotProfile, committee: CandidateSet) -> Rational {
    let ballots = p.ballots();
    let k = committee.len();
    let mut sums = vec![Rational::zero()];
    for b in ballots {
        let more: Vec<Rational> = sums.iter().map(|s| s + &b.weight).collect();
        sums.extend(more);
    }
    let mut candidates: Vec<Rational> =
        sums.iter().filter(|s| !s.is_zero()).flat_map(|s| (1..=k).map(move |m| int(m as i64) / s)).collect();
    candidates.sort();
    candidates.dedup();
    let members: Vec<usize> = committee.iter().collect();
    let feasible = |t: &Rational| {
        let (source, sink) = (0, 1 + k + ballots.len());
        let mut g = FlowNetwork::new(sink + 1);
        for (m, &c) in members.iter().enumerate() {
            g.add_edge(source, 1 + m, Capacity::Finite(int(1)));
            for (i, b) in ballots.iter().enumerate() {
                if b.approved.contains(c) && !b.weight.is_zero() {
                    g.add_edge(1 + m, 1 + k + i, Capacity::Infinite);
                }
            }
        }
        for (i, b) in ballots.iter().enumerate() {
            g.add_edge(1 + k + i, sink, Capacity::Finite(&b.weight * t));
        }
        g.max_flow(source, sink) == int(k as i64)
    };
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    assert!(feasible(&candidates[hi]));
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo].clone()
}

fn arb_committee(p: &BallotProfile, bits: u128) -> CandidateSet {
    CandidateSet::from_bits(bits & p.all_candidates().bits())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn bottleneck_matches_flow_oracle(p in arb_profile(5, 6, false), bits in 1u128..32) {
        let w = arb_committee(&p, bits);
        prop_assume!(!w.is_empty());
        match maxphragmen_score(&p, w) {
            Score::Exact(s) => prop_assert_eq!(s, flow_maxphragmen(&p, w)),
            Score::Worst => prop_assert!(w.iter().any(|c| p.approval_weight(c).is_zero())),
            Score::Approx(_) => unreachable!(),
        }
    }

    #[test]
    fn descent_matches_balanced_loads(p in arb_profile(5, 6, false), bits in 1u128..32) {
        let w = arb_committee(&p, bits);
        prop_assume!(!w.is_empty());
        let Some(loads) = balanced_loads(&p, w) else {
            prop_assert_eq!(varphragmen_score(&p, w, 1e-10).unwrap().0, Score::Worst);
            return Ok(());
        };
        let exact: Rational = p.ballots().iter().zip(&loads).map(|(b, l)| &b.weight * l * l).sum();
        let (score, witness) = varphragmen_score(&p, w, 1e-10).unwrap();
        let approx = score.to_f64(Direction::Minimize);
        prop_assert!((approx - to_f64(&exact)).abs() <= 1e-9 * to_f64(&exact).max(1.0), "{} vs {}", approx, exact);
        let witness = witness.unwrap();
        for (l, e) in witness.voter_loads.iter().zip(&loads) {
            prop_assert!((l - to_f64(e)).abs() < 1e-4);
        }
        // the top load of the balanced vector is the max-Phragmén value
        let top = loads.iter().max().unwrap().clone();
        prop_assert_eq!(maxphragmen_score(&p, w), Score::Exact(top));
    }

    #[test]
    fn monroe_bounded_by_total(p in arb_profile(5, 6, false), bits in 1u128..32) {
        let w = arb_committee(&p, bits);
        let s = monroe_score(&p, w);
        prop_assert!(s <= p.total_weight());
        prop_assert!(s <= p.coverage_weight(w));
    }

    #[test]
    fn pav_gains_from_an_added_approval(p in arb_profile(4, 5, false), line in 0usize..5, cand in 0usize..4) {
        let (line, c) = (line % p.ballots().len(), cand % p.num_candidates());
        prop_assume!(!p.ballots()[line].approved.contains(c));
        let mut ballots = p.ballots().to_vec();
        ballots[line].approved.insert(c);
        let q = BallotProfile::new(p.candidates().to_vec(), ballots).unwrap();
        for bits in 0u128..(1 << p.num_candidates()) {
            let w = CandidateSet::from_bits(bits);
            let (before, after) = (pav_score(&p, w), pav_score(&q, w));
            if w.contains(c) {
                prop_assert!(after > before);
            } else {
                prop_assert_eq!(after, before);
            }
        }
    }

    #[test]
    fn outputs_are_homogeneous(p in arb_profile(4, 5, true), num in 1i64..5, den in 1i64..5, k in 1usize..4) {
        let k = k.min(p.num_candidates());
        let q = p.scaled(&ratio(num, den));
        let opts = RunOptions::default();
        for method in [Method::Pav, Method::MaxPhragmen, Method::VarPhragmen, Method::Ebert, Method::Monroe, Method::Cc] {
            let a = committees(run_method(method, &p, k, &opts).unwrap());
            let b = committees(run_method(method, &q, k, &opts).unwrap());
            prop_assert_eq!(a.patterns, b.patterns, "{}", method);
        }
        let (a, b) = (optimised_pav_weights(&p, 1e-8).unwrap(), optimised_pav_weights(&q, 1e-8).unwrap());
        for (x, y) in a.weights.iter().zip(&b.weights) {
            prop_assert!((x - y).abs() < 1e-5);
        }
    }

    #[test]
    fn optimised_pav_certificate(p in arb_profile(4, 5, true)) {
        let tol = 1e-7;
        let r = optimised_pav_weights(&p, tol).unwrap();
        prop_assert!((r.weights.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        let cov: Vec<f64> = p.ballots().iter().map(|b| b.approved.iter().map(|c| r.weights[c]).sum()).collect();
        for c in 0..p.num_candidates() {
            let g: f64 = p.ballots().iter().zip(&cov).filter(|(b, _)| b.approved.contains(c)).map(|(b, cv)| to_f64(&b.weight) / cv).sum();
            if r.weights[c] > 0.0 {
                prop_assert!((g - r.lambda).abs() <= 2.0 * tol * r.lambda, "supported {}: {} vs {}", c, g, r.lambda);
            } else {
                prop_assert!(g <= r.lambda * (1.0 + 2.0 * tol));
            }
        }
    }
}
