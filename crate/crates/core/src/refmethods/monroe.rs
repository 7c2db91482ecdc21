//! Monroe's method with fractional assignment.

use num_traits::Zero;

use crate::ballots::BallotProfile;
use crate::flow::{Capacity, FlowNetwork};
use crate::rational::Rational;
use crate::set::CandidateSet;

/// Largest ballot weight that can be assigned to approved members when each
/// member takes at most `v / k` (`v` counts every ballot, empty ones too).
/// The committee is feasible for Monroe exactly when every member's quota
/// fills, but the maximum is what gets compared.
pub fn monroe_score(profile: &BallotProfile, committee: CandidateSet) -> Rational {
    let k = committee.len();
    if k == 0 {
        return Rational::zero();
    }
    let quota = profile.total_weight() / Rational::from_integer((k as i64).into());
    let ballots = profile.ballots();
    let members: Vec<usize> = committee.iter().collect();
    // nodes: source, ballots, members, sink
    let (source, sink) = (0, 1 + ballots.len() + k);
    let mut g = FlowNetwork::new(sink + 1);
    for (i, b) in ballots.iter().enumerate() {
        if b.weight.is_zero() || !b.approved.intersects(committee) {
            continue;
        }
        g.add_edge(source, 1 + i, Capacity::Finite(b.weight.clone()));
        for (m, &c) in members.iter().enumerate() {
            if b.approved.contains(c) {
                g.add_edge(1 + i, 1 + ballots.len() + m, Capacity::Infinite);
            }
        }
    }
    for m in 0..k {
        g.add_edge(1 + ballots.len() + m, sink, Capacity::Finite(quota.clone()));
    }
    g.max_flow(source, sink)
}
