//! Uniform entry point over every method.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::ballots::BallotProfile;
use crate::cowpea::{
    cowpea_weights_with_limit, lottery_exact_distribution_with_limit, SeatDistribution, WeightVector,
    DEFAULT_DISTRIBUTION_LIMIT, DEFAULT_WEIGHT_LIMIT,
};
use crate::error::{Error, Result};
use crate::rational::{round_sig12, ExactValue, Rational};
use crate::refmethods::{
    cc_elect, cc_score, ebert_score, elect_by_score, maxphragmen_score, monroe_score, optimised_pav_weights, pav_score,
    varphragmen_score, CcResult, Direction, OptPavResult, Score, TiedCommittees, DEFAULT_BUDGET,
};
use crate::set::CandidateSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Pav,
    MaxPhragmen,
    VarPhragmen,
    Ebert,
    Monroe,
    Cc,
    OptPav,
    Cowpea,
    CowpeaLottery,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Pav,
        Method::MaxPhragmen,
        Method::VarPhragmen,
        Method::Ebert,
        Method::Monroe,
        Method::Cc,
        Method::OptPav,
        Method::Cowpea,
        Method::CowpeaLottery,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Pav => "pav",
            Method::MaxPhragmen => "maxphragmen",
            Method::VarPhragmen => "varphragmen",
            Method::Ebert => "ebert",
            Method::Monroe => "monroe",
            Method::Cc => "cc",
            Method::OptPav => "optpav",
            Method::Cowpea => "cowpea",
            Method::CowpeaLottery => "cowpea-lottery",
        }
    }

    /// Methods that elect equal-weight committees by optimizing a committee score.
    pub fn is_committee_method(self) -> bool {
        self.direction().is_some()
    }

    /// Methods whose output is a weight per candidate rather than a fixed-size committee.
    pub fn ignores_seats(self) -> bool {
        matches!(self, Method::OptPav | Method::Cowpea)
    }

    pub fn direction(self) -> Option<Direction> {
        match self {
            Method::Pav | Method::Monroe | Method::Cc => Some(Direction::Maximize),
            Method::MaxPhragmen | Method::VarPhragmen | Method::Ebert => Some(Direction::Minimize),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    /// Cap on committee patterns scored per election.
    pub budget: u64,
    pub varphragmen_tolerance: f64,
    pub optpav_tolerance: f64,
    pub weight_limit: usize,
    pub distribution_limit: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            budget: DEFAULT_BUDGET,
            varphragmen_tolerance: 1e-10,
            optpav_tolerance: 1e-6,
            weight_limit: DEFAULT_WEIGHT_LIMIT,
            distribution_limit: DEFAULT_DISTRIBUTION_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MethodOutput {
    Committees(TiedCommittees),
    WeightedCommittees(CcResult),
    Weights(WeightVector),
    ApproxWeights(OptPavResult),
    Distribution(SeatDistribution),
}

/// Score of one committee under a committee method.
pub fn committee_score(
    method: Method,
    profile: &BallotProfile,
    committee: CandidateSet,
    opts: &RunOptions,
) -> Result<Score> {
    let exact = |r: Rational| Score::Exact(r);
    Ok(match method {
        Method::Pav => exact(pav_score(profile, committee)),
        Method::MaxPhragmen => maxphragmen_score(profile, committee),
        Method::VarPhragmen => varphragmen_score(profile, committee, opts.varphragmen_tolerance)?.0,
        Method::Ebert => ebert_score(profile, committee),
        Method::Monroe => exact(monroe_score(profile, committee)),
        Method::Cc => exact(cc_score(profile, committee)),
        other => return Err(Error::InvalidArgument(format!("`{other}` does not score committees"))),
    })
}

pub fn run_method(method: Method, profile: &BallotProfile, k: usize, opts: &RunOptions) -> Result<MethodOutput> {
    match method {
        Method::Cowpea => cowpea_weights_with_limit(profile, opts.weight_limit).map(MethodOutput::Weights),
        Method::CowpeaLottery => {
            lottery_exact_distribution_with_limit(profile, k, opts.distribution_limit).map(MethodOutput::Distribution)
        }
        Method::OptPav => optimised_pav_weights(profile, opts.optpav_tolerance).map(MethodOutput::ApproxWeights),
        Method::Cc => cc_elect(profile, k, opts.budget).map(MethodOutput::WeightedCommittees),
        _ => {
            let direction = method.direction().expect("committee method");
            let mut failure = None;
            let tied = elect_by_score(profile, k, direction, opts.budget, |w| {
                committee_score(method, profile, w, opts).unwrap_or_else(|e| {
                    failure.get_or_insert(e);
                    Score::Worst
                })
            })?;
            match failure {
                Some(e) => Err(e),
                None => Ok(MethodOutput::Committees(tied)),
            }
        }
    }
}

/// Tied committees are listed one by one up to this many, otherwise as patterns.
pub const LISTED_COMMITTEES: usize = 1000;

pub fn score_json(score: &Score) -> Value {
    match score {
        Score::Exact(r) => serde_json::to_value(ExactValue(r.clone())).unwrap(),
        Score::Approx(x) => json!({ "decimal": round_sig12(*x) }),
        Score::Worst => json!("worst"),
    }
}

fn committees_json(profile: &BallotProfile, tied: &TiedCommittees) -> Value {
    let count = tied.count();
    let mut out = json!({
        "score": score_json(&tied.score),
        "count": count.to_string(),
        "distinctUpToClones": tied.patterns.len(),
    });
    match tied.concrete(LISTED_COMMITTEES) {
        Ok(list) => out["committees"] = json!(list.iter().map(|w| profile.names_of(*w)).collect::<Vec<_>>()),
        Err(_) => {
            let patterns: Vec<Value> = tied
                .patterns
                .iter()
                .map(|p| {
                    let parts: Vec<Value> = tied
                        .classes
                        .iter()
                        .zip(p)
                        .filter(|(_, &m)| m > 0)
                        .map(|(class, &m)| json!({ "choose": m, "from": profile.names_of(*class) }))
                        .collect();
                    Value::Array(parts)
                })
                .collect();
            out["patterns"] = Value::Array(patterns);
        }
    }
    out
}

fn named_weights(profile: &BallotProfile, weights: &[Rational]) -> Value {
    let map: serde_json::Map<String, Value> = weights
        .iter()
        .enumerate()
        .map(|(c, w)| (profile.name(c).to_string(), serde_json::to_value(ExactValue(w.clone())).unwrap()))
        .collect();
    Value::Object(map)
}

impl MethodOutput {
    pub fn to_json(&self, profile: &BallotProfile) -> Value {
        match self {
            MethodOutput::Committees(t) => {
                let mut v = committees_json(profile, t);
                v["kind"] = json!("tiedCommittees");
                v
            }
            MethodOutput::WeightedCommittees(cc) => {
                let mut v = committees_json(profile, &cc.committees);
                v["kind"] = json!("weightedCommittees");
                v["weighted"] = cc
                    .weights
                    .iter()
                    .map(|w| {
                        json!({
                            "members": profile.names_of(w.committee),
                            "weights": named_weights(profile, &w.weights),
                            "assignmentTie": w.assignment_tie,
                        })
                    })
                    .collect();
                v
            }
            MethodOutput::Weights(w) => json!({ "kind": "weights", "weights": named_weights(profile, &w.weights) }),
            MethodOutput::ApproxWeights(r) => {
                let map: serde_json::Map<String, Value> = r
                    .weights
                    .iter()
                    .enumerate()
                    .map(|(c, x)| (profile.name(c).to_string(), json!(round_sig12(*x))))
                    .collect();
                json!({
                    "kind": "approxWeights",
                    "weights": map,
                    "iterations": r.iterations,
                    "lambda": round_sig12(r.lambda),
                    "kktResidual": r.kkt_residual,
                    "excludedBallots": r.excluded_ballots,
                })
            }
            MethodOutput::Distribution(d) => {
                let mut v = d.to_json(profile);
                v["kind"] = json!("seatDistribution");
                v
            }
        }
    }
}
