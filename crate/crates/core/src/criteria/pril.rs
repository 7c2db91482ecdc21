//! Perfect Representation In the Limit, measured empirically: the mean
//! misrepresentation of COWPEA Lottery committees as the seat count grows.

use num_traits::Zero;

use super::pr::misrepresentation;
use crate::ballots::BallotProfile;
use crate::cowpea::approval_sampler;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::rng::LotteryRng;

#[derive(Debug, Clone, PartialEq)]
pub struct PrilPoint {
    pub seats: usize,
    pub trials: u64,
    pub mean_misrepresentation: f64,
}

/// Mean misrepresentation over `trials` lottery elections for each seat
/// count. Trial `t` draws from stream `t` of `seed`, for every seat count.
pub fn pril_convergence(
    profile: &BallotProfile,
    seat_counts: &[usize],
    trials: u64,
    seed: u64,
) -> Result<Vec<PrilPoint>> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is needed".into()));
    }
    let sampler = approval_sampler(profile);
    seat_counts
        .iter()
        .map(|&k| {
            let mut total = Rational::zero();
            for t in 0..trials {
                let mut rng = LotteryRng::for_trial(seed, t);
                let elected = sampler.elect(profile.all_candidates(), k, &mut rng)?;
                total += misrepresentation(profile, elected.into_iter().collect());
            }
            let mean = total / Rational::from_integer((trials as i64).into());
            Ok(PrilPoint { seats: k, trials, mean_misrepresentation: to_f64(&mean) })
        })
        .collect()
}

/// Exact expected misrepresentation of the lottery on a party-list profile
/// with the given vote shares, when every party fields at least `k`
/// candidates: seats then fall to parties independently in proportion to
/// their shares, and a party with `m` seats serves `min(share, m/k)`.
pub fn expected_party_list_misrepresentation(shares: &[f64], k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    // binomial pmf by recurrence, in f64
    let pmf = |p: f64| -> Vec<f64> {
        let mut out = vec![0.0; k + 1];
        let mut log_c = 0.0f64;
        for (m, slot) in out.iter_mut().enumerate() {
            if m > 0 {
                log_c += ((k - m + 1) as f64).ln() - (m as f64).ln();
            }
            *slot = if p <= 0.0 {
                (m == 0) as u8 as f64
            } else if p >= 1.0 {
                (m == k) as u8 as f64
            } else {
                (log_c + m as f64 * p.ln() + (k - m) as f64 * (1.0 - p).ln()).exp()
            };
        }
        out
    };
    let served: f64 = shares
        .iter()
        .map(|&p| pmf(p).iter().enumerate().map(|(m, q)| q * p.min(m as f64 / k as f64)).sum::<f64>())
        .sum();
    1.0 - served
}
