//! Proportional Approval Voting.

use num_traits::Zero;

use crate::ballots::BallotProfile;
use crate::rational::{ratio, Rational};
use crate::set::CandidateSet;

/// `1 + 1/2 + ... + 1/m`, exactly.
pub fn harmonic(m: usize) -> Rational {
    (1..=m).map(|i| ratio(1, i as i64)).sum()
}

/// Harmonic satisfaction summed over ballots.
pub fn pav_score(profile: &BallotProfile, committee: CandidateSet) -> Rational {
    let mut table: Vec<Rational> = vec![Rational::zero()];
    let mut total = Rational::zero();
    for b in profile.ballots() {
        let m = b.approved.intersection(committee).len();
        while table.len() <= m {
            let next = table.last().unwrap() + ratio(1, table.len() as i64);
            table.push(next);
        }
        total += &b.weight * &table[m];
    }
    total
}
