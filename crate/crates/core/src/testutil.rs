//! Shared helpers for unit tests.

use proptest::prelude::*;

use crate::ballots::{parse_approval_profile, ApprovalBallot, BallotProfile, CandidateId};
use crate::rational::{int, Rational};
use crate::set::CandidateSet;

pub fn profile(text: &str) -> BallotProfile {
    parse_approval_profile(text).unwrap()
}

/// Weight map by candidate name.
pub fn by_name<'a>(p: &'a BallotProfile, values: &'a [Rational]) -> impl Fn(&str) -> Rational + 'a {
    move |name| values[p.index_of(name).unwrap()].clone()
}

/// Random profiles with `1..=max_c` candidates and `1..=max_lines` ballot
/// lines of weight 1..=4; `nonempty` forces every ballot to approve someone.
pub fn arb_profile(max_c: usize, max_lines: usize, nonempty: bool) -> impl Strategy<Value = BallotProfile> {
    (1..=max_c).prop_flat_map(move |n| {
        let lo = if nonempty { 1u128 } else { 0 };
        let line = (lo..(1u128 << n), 1i64..=4);
        prop::collection::vec(line, 1..=max_lines).prop_map(move |lines| {
            let candidates = (0..n).map(|i| CandidateId::new(format!("C{i}")).unwrap()).collect();
            let ballots =
                lines.into_iter().map(|(bits, w)| ApprovalBallot::new(int(w), CandidateSet::from_bits(bits))).collect();
            BallotProfile::new(candidates, ballots).unwrap()
        })
    })
}
