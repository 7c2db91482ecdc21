//! Chamberlin–Courant with candidate weights.

use num_traits::{One, Zero};

use super::{elect_by_score, Direction, Score, TiedCommittees};
use crate::ballots::BallotProfile;
use crate::error::Result;
use crate::rational::Rational;
use crate::set::CandidateSet;

/// Weight of ballots approving at least one member.
pub fn cc_score(profile: &BallotProfile, committee: CandidateSet) -> Rational {
    profile.coverage_weight(committee)
}

/// Member weights for one committee: each covered ballot is assigned to its
/// approved members (split equally when it approves several), normalized by
/// the covered weight.
#[derive(Debug, Clone, PartialEq)]
pub struct CcWeights {
    pub committee: CandidateSet,
    pub weights: Vec<Rational>,
    /// Some covered ballot approves two or more members, so other
    /// assignments (and other weights) are equally valid.
    pub assignment_tie: bool,
}

pub fn cc_weights(profile: &BallotProfile, committee: CandidateSet) -> CcWeights {
    let mut weights = vec![Rational::zero(); profile.num_candidates()];
    let covered = cc_score(profile, committee);
    let mut assignment_tie = false;
    if covered.is_zero() {
        return CcWeights { committee, weights, assignment_tie };
    }
    for b in profile.ballots() {
        let hit = b.approved.intersection(committee);
        if hit.is_empty() || b.weight.is_zero() {
            continue;
        }
        assignment_tie |= hit.len() > 1;
        let share = &b.weight / Rational::from_integer((hit.len() as i64).into()) / &covered;
        for c in hit.iter() {
            weights[c] += &share;
        }
    }
    debug_assert!(weights.iter().sum::<Rational>() == Rational::one());
    CcWeights { committee, weights, assignment_tie }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CcResult {
    pub committees: TiedCommittees,
    /// Weights for each representative committee, in the same order.
    pub weights: Vec<CcWeights>,
}

pub fn cc_elect(profile: &BallotProfile, k: usize, budget: u64) -> Result<CcResult> {
    let committees = elect_by_score(profile, k, Direction::Maximize, budget, |w| Score::Exact(cc_score(profile, w)))?;
    let weights = committees.representatives().into_iter().map(|w| cc_weights(profile, w)).collect();
    Ok(CcResult { committees, weights })
}
