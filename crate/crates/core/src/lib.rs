//! Exact COWPEA weights, the COWPEA Lottery, reference multiwinner approval
//! methods and probes for proportionality criteria.
//!
//! All weights and probabilities are exact rationals ([`Rational`]).
//! Candidates are indexed `0..n` in profile order; sets of candidates are
//! [`CandidateSet`] bitmasks.

pub mod ballots;
pub mod cowpea;
pub mod criteria;
pub mod error;
pub mod flow;
pub mod method;
pub mod rational;
pub mod refmethods;
pub mod rng;
pub mod set;

#[cfg(test)]
mod testutil;

pub use ballots::{
    parse_approval_profile, parse_profile, ApprovalBallot, BallotProfile, CandidateId, Profile, ScoreBallot,
    ScoreProfile, SyntheticBallot,
};
pub use cowpea::{
    cowpea_lottery, cowpea_weights, lottery_exact_distribution, ElectedSequence, SeatDistribution, WeightVector,
};
pub use criteria::{Outcome, Probe, ProbeVerdict};
pub use error::{Error, Result};
pub use method::{run_method, Method, MethodOutput, RunOptions};
pub use rational::{ExactValue, Rational};
pub use refmethods::{Direction, Score, TiedCommittees};
pub use rng::LotteryRng;
pub use set::CandidateSet;
