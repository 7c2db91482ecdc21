//! Literal simulation of the lottery.
//!
//! Ballots are drawn over the positive-weight ballot lines in profile order,
//! proportionally to weight, by inverting the cumulative integer weights
//! (all weights are rescaled to a common denominator first).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::engine::{is_effective, Reducer};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rng::LotteryRng;
use crate::set::CandidateSet;

enum Cumulative {
    Small(Vec<u64>),
    Big(Vec<BigUint>),
}

pub struct LotterySampler<R> {
    ballots: Vec<R>,
    cumulative: Cumulative,
}

impl<R: Reducer> LotterySampler<R> {
    pub fn new(ballots: Vec<(Rational, R)>) -> Self {
        let ballots: Vec<_> = ballots.into_iter().filter(|(w, _)| !w.is_zero()).collect();
        let lcm = ballots.iter().fold(num_bigint::BigInt::from(1), |acc, (w, _)| acc.lcm(w.denom()));
        let ints: Vec<BigUint> = ballots
            .iter()
            .map(|(w, _)| (w.numer() * (&lcm / w.denom())).to_biguint().expect("weights are non-negative"))
            .collect();
        let mut running = BigUint::zero();
        let big: Vec<BigUint> = ints
            .iter()
            .map(|w| {
                running += w;
                running.clone()
            })
            .collect();
        let cumulative = match big.iter().map(|x| x.to_u64()).collect::<Option<Vec<_>>>() {
            Some(small) => Cumulative::Small(small),
            None => Cumulative::Big(big),
        };
        LotterySampler { ballots: ballots.into_iter().map(|(_, r)| r).collect(), cumulative }
    }

    fn draw(&self, rng: &mut LotteryRng) -> &R {
        let idx = match &self.cumulative {
            Cumulative::Small(c) => {
                let x = rng.below(*c.last().unwrap());
                c.partition_point(|&s| s <= x)
            }
            Cumulative::Big(c) => {
                let x = rng.below_big(c.last().unwrap());
                c.partition_point(|s| *s <= x)
            }
        };
        &self.ballots[idx]
    }

    /// Runs one lottery starting from `allowed` and returns the survivor.
    pub fn sample_winner(&self, allowed: CandidateSet, rng: &mut LotteryRng) -> Result<usize> {
        if allowed.is_empty() {
            return Err(Error::EmptyAllowedSet);
        }
        let mut current = allowed;
        while current.len() > 1 {
            let stuck = !self.ballots.iter().any(|b| is_effective(b.reduce(current), current));
            if stuck {
                let members: Vec<usize> = current.iter().collect();
                return Ok(members[rng.below(members.len() as u64) as usize]);
            }
            let next = self.draw(rng).reduce(current);
            if is_effective(next, current) {
                current = next;
            }
        }
        Ok(current.first().unwrap())
    }

    /// Fills `k` seats, each lottery starting from the currently unelected candidates.
    pub fn elect(&self, candidates: CandidateSet, k: usize, rng: &mut LotteryRng) -> Result<Vec<usize>> {
        if k > candidates.len() {
            return Err(Error::TooManySeats { seats: k, candidates: candidates.len() });
        }
        let mut remaining = candidates;
        let mut elected = Vec::with_capacity(k);
        for _ in 0..k {
            let c = self.sample_winner(remaining, rng)?;
            remaining.remove(c);
            elected.push(c);
        }
        Ok(elected)
    }
}
