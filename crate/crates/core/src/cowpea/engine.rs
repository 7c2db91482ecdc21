//! Exact winner distribution of one lottery run.
//!
//! The lottery keeps a candidate list `S`, draws a ballot at random
//! (proportionally to weight, with replacement) and replaces `S` by the part
//! of `S` the ballot singles out. A draw that would leave `S` empty, or that
//! leaves it unchanged, has no effect. Call a ballot *effective* for `S` when
//! its reduction is a non-empty strict subset of `S`.
//!
//! Let `e` be the total weight of effective ballots and `v` the total weight.
//! From state `S` the next effective draw is ballot `b` with probability
//!
//! ```text
//! sum_{j >= 0} (1 - e/v)^j * w_b/v = w_b / e
//! ```
//!
//! so the chain of effective draws is all that matters and
//! `W(S) = sum_b (w_b / e) * W(reduce_b(S))`. Every effective draw strictly
//! shrinks `S`, so the recursion terminates. When no ballot is effective the
//! members of `S` cannot be separated and each wins with probability `1/|S|`.

use std::collections::HashMap;
use std::rc::Rc;

use num_traits::Zero;

use crate::rational::Rational;
use crate::set::CandidateSet;

/// How one ballot shrinks the current candidate list.
pub trait Reducer {
    fn reduce(&self, current: CandidateSet) -> CandidateSet;
}

/// Approval ballots keep the approved part of the list.
impl Reducer for CandidateSet {
    fn reduce(&self, current: CandidateSet) -> CandidateSet {
        current.intersection(*self)
    }
}

/// Graded ballots keep the members of the list holding the highest grade among them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradeLayers(pub Vec<u32>);

impl Reducer for GradeLayers {
    fn reduce(&self, current: CandidateSet) -> CandidateSet {
        let top = current.iter().map(|c| self.0[c]).max().unwrap_or(0);
        current.iter().filter(|&c| self.0[c] == top).collect()
    }
}

pub(crate) fn is_effective(next: CandidateSet, current: CandidateSet) -> bool {
    !next.is_empty() && next != current
}

/// Memoized `W(S)` over a fixed ballot list. Weights are dense vectors over
/// all `n` candidates, zero outside `S`.
pub struct LotteryChain<R> {
    n: usize,
    ballots: Vec<(Rational, R)>,
    memo: HashMap<CandidateSet, Rc<Vec<Rational>>>,
}

impl<R: Reducer> LotteryChain<R> {
    /// Zero-weight ballots are dropped.
    pub fn new(n: usize, ballots: Vec<(Rational, R)>) -> Self {
        let ballots = ballots.into_iter().filter(|(w, _)| !w.is_zero()).collect();
        LotteryChain { n, ballots, memo: HashMap::new() }
    }

    pub fn num_candidates(&self) -> usize {
        self.n
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn winner_distribution(&mut self, current: CandidateSet) -> Rc<Vec<Rational>> {
        if let Some(w) = self.memo.get(&current) {
            return w.clone();
        }
        let mut out = vec![Rational::zero(); self.n];
        if current.len() == 1 {
            out[current.first().unwrap()] = Rational::from_integer(1.into());
        } else {
            let mut next_states: Vec<(CandidateSet, Rational)> = Vec::new();
            let mut effective = Rational::zero();
            for (w, b) in &self.ballots {
                let next = b.reduce(current);
                if !is_effective(next, current) {
                    continue;
                }
                effective += w;
                match next_states.iter_mut().find(|(s, _)| *s == next) {
                    Some((_, acc)) => *acc += w,
                    None => next_states.push((next, w.clone())),
                }
            }
            if next_states.is_empty() {
                let share = Rational::new(1.into(), (current.len() as i64).into());
                for c in current.iter() {
                    out[c] = share.clone();
                }
            } else {
                for (next, w) in next_states {
                    let p = w / &effective;
                    let sub = self.winner_distribution(next);
                    for c in next.iter() {
                        out[c] += &p * &sub[c];
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert(current, out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn graded_reduction_keeps_top_layer() {
        let g = GradeLayers(vec![2, 1, 2, 0]);
        let all = CandidateSet::full(4);
        assert_eq!(g.reduce(all), [0, 2].into_iter().collect());
        assert_eq!(g.reduce([1, 3].into_iter().collect()), CandidateSet::singleton(1));
        assert_eq!(g.reduce(CandidateSet::singleton(3)), CandidateSet::singleton(3));
    }

    #[test]
    fn stuck_state_splits_uniformly() {
        let ab: CandidateSet = [0, 1].into_iter().collect();
        let mut chain = LotteryChain::new(3, vec![(ratio(1, 1), ab)]);
        let w = chain.winner_distribution(CandidateSet::full(3));
        assert_eq!(*w, vec![ratio(1, 2), ratio(1, 2), ratio(0, 1)]);
    }
}
