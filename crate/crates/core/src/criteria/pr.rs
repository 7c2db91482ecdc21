//! Perfect Representation as a transportation problem.
//!
//! Each ballot demands `w_i / v` of the representation (`v` is the total
//! weight, empty ballots included) and may draw it only from approved
//! candidates; candidate `c` supplies its weight. Perfect Representation
//! holds when all demand can be met.

use num_traits::{One, Zero};

use crate::ballots::BallotProfile;
use crate::flow::{Capacity, FlowNetwork};
use crate::rational::Rational;
use crate::set::CandidateSet;

/// Share of each ballot's demand served by each candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationFlow {
    /// `(ballot index, candidate, share)` for every positive share.
    pub assignment: Vec<(usize, usize, Rational)>,
    /// Total demand served; 1 means Perfect Representation.
    pub served: Rational,
}

pub fn representation_flow(profile: &BallotProfile, weights: &[Rational]) -> RepresentationFlow {
    let v = profile.total_weight();
    let ballots = profile.ballots();
    let n = profile.num_candidates();
    let (source, sink) = (0, 1 + ballots.len() + n);
    let mut g = FlowNetwork::new(sink + 1);
    let mut arcs = Vec::new();
    for (i, b) in ballots.iter().enumerate() {
        if b.weight.is_zero() {
            continue;
        }
        g.add_edge(source, 1 + i, Capacity::Finite(&b.weight / &v));
        for c in b.approved.iter().filter(|&c| !weights[c].is_zero()) {
            arcs.push((i, c, g.add_edge(1 + i, 1 + ballots.len() + c, Capacity::Infinite)));
        }
    }
    for (c, w) in weights.iter().enumerate() {
        if !w.is_zero() {
            g.add_edge(1 + ballots.len() + c, sink, Capacity::Finite(w.clone()));
        }
    }
    let served = g.max_flow(source, sink);
    let assignment =
        arcs.into_iter().filter(|(_, _, e)| !g.flow(*e).is_zero()).map(|(i, c, e)| (i, c, g.flow(e).clone())).collect();
    RepresentationFlow { assignment, served }
}

/// Feasibility of Perfect Representation for candidate weights summing to 1,
/// with a witness flow when feasible.
pub fn pr_feasible(profile: &BallotProfile, weights: &[Rational]) -> (bool, Option<RepresentationFlow>) {
    let flow = representation_flow(profile, weights);
    if flow.served == Rational::one() {
        (true, Some(flow))
    } else {
        (false, None)
    }
}

/// Equal weight `1/k` on each committee member.
pub fn committee_weights(n: usize, committee: CandidateSet) -> Vec<Rational> {
    let share = Rational::one() / Rational::from_integer((committee.len() as i64).into());
    (0..n).map(|c| if committee.contains(c) { share.clone() } else { Rational::zero() }).collect()
}

pub fn committee_pr_feasible(profile: &BallotProfile, committee: CandidateSet) -> bool {
    pr_feasible(profile, &committee_weights(profile.num_candidates(), committee)).0
}

/// Demand left unserved by an equal-weight committee.
pub fn misrepresentation(profile: &BallotProfile, committee: CandidateSet) -> Rational {
    Rational::one() - representation_flow(profile, &committee_weights(profile.num_candidates(), committee)).served
}
