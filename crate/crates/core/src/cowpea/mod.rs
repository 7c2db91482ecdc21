//! COWPEA candidate weights and the COWPEA Lottery.
//!
//! A candidate's COWPEA weight is its probability of winning one lottery run
//! started from the full candidate list. See [`engine`] for the recursion and
//! why conditioning on effective ballots gives the exact answer.
//!
//! "Ties that cannot be broken" are read as states with no effective ballot:
//! every remaining candidate is then elected with equal probability.

pub mod engine;
pub mod sampler;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::ballots::{group_identical, BallotProfile, ScoreProfile};
use crate::error::{Error, Result};
use crate::rational::{ExactValue, Rational};
use crate::rng::LotteryRng;
use crate::set::CandidateSet;
pub use engine::{GradeLayers, LotteryChain, Reducer};
pub use sampler::LotterySampler;

/// Default candidate limit for exact weights.
pub const DEFAULT_WEIGHT_LIMIT: usize = 20;
/// Default candidate limit for exact k-seat distributions.
pub const DEFAULT_DISTRIBUTION_LIMIT: usize = 12;

/// Exact candidate weights, one per profile candidate, summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    pub weights: Vec<Rational>,
}

impl WeightVector {
    pub fn get(&self, candidate: usize) -> &Rational {
        &self.weights[candidate]
    }

    pub fn sum(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn support(&self) -> CandidateSet {
        self.weights.iter().enumerate().filter(|(_, w)| !w.is_zero()).map(|(i, _)| i).collect()
    }

    pub fn to_json(&self, profile_names: &[String]) -> Value {
        let map: serde_json::Map<String, Value> = profile_names
            .iter()
            .zip(&self.weights)
            .map(|(n, w)| (n.clone(), serde_json::to_value(ExactValue(w.clone())).unwrap()))
            .collect();
        Value::Object(map)
    }
}

/// Exact probability of each unordered elected set of size `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeatDistribution {
    pub seats: usize,
    pub probabilities: BTreeMap<CandidateSet, Rational>,
}

impl SeatDistribution {
    pub fn probability(&self, set: CandidateSet) -> Rational {
        self.probabilities.get(&set).cloned().unwrap_or_else(Rational::zero)
    }

    /// Probability that `candidate` is among the elected.
    pub fn inclusion(&self, candidate: usize) -> Rational {
        self.probabilities.iter().filter(|(s, _)| s.contains(candidate)).map(|(_, p)| p).sum()
    }

    pub fn to_json(&self, profile: &BallotProfile) -> Value {
        let entries: Vec<Value> = self
            .probabilities
            .iter()
            .map(|(s, p)| json!({ "elected": profile.names_of(*s), "probability": ExactValue(p.clone()) }))
            .collect();
        json!({ "seats": self.seats, "distribution": entries })
    }
}

fn approval_chain(profile: &BallotProfile) -> LotteryChain<CandidateSet> {
    let grouped = group_identical(profile);
    LotteryChain::new(
        profile.num_candidates(),
        grouped.ballots().iter().map(|b| (b.weight.clone(), b.approved)).collect(),
    )
}

fn graded_ballots(sp: &ScoreProfile) -> Vec<(Rational, GradeLayers)> {
    let mut out: Vec<(Rational, GradeLayers)> = Vec::new();
    for b in sp.ballots() {
        let layers = GradeLayers(b.grades.clone());
        match out.iter_mut().find(|(_, l)| *l == layers) {
            Some((w, _)) => *w += &b.weight,
            None => out.push((b.weight.clone(), layers)),
        }
    }
    out
}

fn check_limit(n: usize, limit: usize, what: &str) -> Result<()> {
    if n > limit {
        return Err(Error::too_large(what, format!("{n} candidates"), format!("{limit} candidates")));
    }
    Ok(())
}

/// COWPEA weights of the lottery started at `allowed`.
pub fn cowpea_weights_restricted(profile: &BallotProfile, allowed: CandidateSet) -> Result<WeightVector> {
    if allowed.is_empty() {
        return Err(Error::EmptyAllowedSet);
    }
    check_limit(allowed.len(), DEFAULT_WEIGHT_LIMIT, "exact COWPEA weights")?;
    let mut chain = approval_chain(profile);
    Ok(WeightVector { weights: chain.winner_distribution(allowed).to_vec() })
}

pub fn cowpea_weights(profile: &BallotProfile) -> Result<WeightVector> {
    cowpea_weights_with_limit(profile, DEFAULT_WEIGHT_LIMIT)
}

pub fn cowpea_weights_with_limit(profile: &BallotProfile, limit: usize) -> Result<WeightVector> {
    check_limit(profile.num_candidates(), limit, "exact COWPEA weights")?;
    let mut chain = approval_chain(profile);
    Ok(WeightVector { weights: chain.winner_distribution(profile.all_candidates()).to_vec() })
}

fn chain_distribution<R: Reducer>(chain: &mut LotteryChain<R>, k: usize) -> SeatDistribution {
    let all = CandidateSet::full(chain.num_candidates());
    let mut layer: BTreeMap<CandidateSet, Rational> = BTreeMap::from([(CandidateSet::EMPTY, Rational::one())]);
    for _ in 0..k {
        let mut next: BTreeMap<CandidateSet, Rational> = BTreeMap::new();
        for (elected, p) in &layer {
            let w = chain.winner_distribution(all.difference(*elected));
            for c in all.difference(*elected).iter() {
                if w[c].is_zero() {
                    continue;
                }
                *next.entry(elected.with(c)).or_insert_with(Rational::zero) += p * &w[c];
            }
        }
        layer = next;
    }
    SeatDistribution { seats: k, probabilities: layer }
}

/// Exact distribution of the COWPEA Lottery's elected set for `k` seats.
pub fn lottery_exact_distribution(profile: &BallotProfile, k: usize) -> Result<SeatDistribution> {
    lottery_exact_distribution_with_limit(profile, k, DEFAULT_DISTRIBUTION_LIMIT)
}

pub fn lottery_exact_distribution_with_limit(
    profile: &BallotProfile,
    k: usize,
    limit: usize,
) -> Result<SeatDistribution> {
    let n = profile.num_candidates();
    if k > n {
        return Err(Error::TooManySeats { seats: k, candidates: n });
    }
    check_limit(n, limit, "exact lottery distribution")?;
    Ok(chain_distribution(&mut approval_chain(profile), k))
}

pub fn approval_sampler(profile: &BallotProfile) -> LotterySampler<CandidateSet> {
    LotterySampler::new(profile.ballots().iter().map(|b| (b.weight.clone(), b.approved)).collect())
}

pub fn sample_winner(profile: &BallotProfile, allowed: CandidateSet, rng: &mut LotteryRng) -> Result<usize> {
    approval_sampler(profile).sample_winner(allowed, rng)
}

/// Elected candidates in election order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElectedSequence(pub Vec<usize>);

impl ElectedSequence {
    pub fn as_set(&self) -> CandidateSet {
        self.0.iter().copied().collect()
    }
}

pub fn cowpea_lottery(profile: &BallotProfile, k: usize, seed: u64) -> Result<ElectedSequence> {
    let mut rng = LotteryRng::new(seed);
    approval_sampler(profile).elect(profile.all_candidates(), k, &mut rng).map(ElectedSequence)
}

/// Per-candidate inclusion counts over `trials` independent elections
/// (trial `t` uses stream `t` of `seed`).
pub fn lottery_inclusion_counts(profile: &BallotProfile, k: usize, trials: u64, seed: u64) -> Result<Vec<u64>> {
    let sampler = approval_sampler(profile);
    let mut counts = vec![0u64; profile.num_candidates()];
    for t in 0..trials {
        let mut rng = LotteryRng::for_trial(seed, t);
        for c in sampler.elect(profile.all_candidates(), k, &mut rng)? {
            counts[c] += 1;
        }
    }
    Ok(counts)
}

/// COWPEA weights through the graded lottery: a draw keeps the candidates at
/// the ballot's highest grade among those still listed.
pub fn graded_weights(sp: &ScoreProfile) -> Result<WeightVector> {
    check_limit(sp.num_candidates(), DEFAULT_WEIGHT_LIMIT, "exact graded weights")?;
    let mut chain = LotteryChain::new(sp.num_candidates(), graded_ballots(sp));
    Ok(WeightVector { weights: chain.winner_distribution(CandidateSet::full(sp.num_candidates())).to_vec() })
}

pub fn graded_exact_distribution(sp: &ScoreProfile, k: usize) -> Result<SeatDistribution> {
    let n = sp.num_candidates();
    if k > n {
        return Err(Error::TooManySeats { seats: k, candidates: n });
    }
    check_limit(n, DEFAULT_DISTRIBUTION_LIMIT, "exact graded distribution")?;
    Ok(chain_distribution(&mut LotteryChain::new(n, graded_ballots(sp)), k))
}

pub fn graded_sampler(sp: &ScoreProfile) -> LotterySampler<GradeLayers> {
    LotterySampler::new(sp.ballots().iter().map(|b| (b.weight.clone(), GradeLayers(b.grades.clone()))).collect())
}

pub fn graded_lottery(sp: &ScoreProfile, k: usize, seed: u64) -> Result<ElectedSequence> {
    let mut rng = LotteryRng::new(seed);
    graded_sampler(sp).elect(CandidateSet::full(sp.num_candidates()), k, &mut rng).map(ElectedSequence)
}
