//! Optimised PAV: PAV with unboundedly many seats and unlimited clones,
//! reported as each candidate's share of the seats.
//!
//! With `S` seats and share `x_c`, a ballot approving set `A` gets harmonic
//! satisfaction `H(S * cov)` where `cov = sum_{c in A} x_c`. Since
//! `H(m) = ln m + gamma + o(1)`, for large `S` the objective is
//! `W (ln S + gamma) + sum_i w_i ln cov_i + o(1)`, so the limiting shares
//! maximize `sum_i w_i ln cov_i` over the simplex. Ballots approving nobody
//! add a constant and are left out.
//!
//! The program is solved by the multiplicative update
//! `x_c <- x_c * g_c / W`, `g_c = sum_{i approves c} w_i / cov_i`, which
//! keeps `x` on the simplex and increases the objective monotonically. At
//! the optimum `g_c = W` on the support and `g_c <= W` elsewhere.

use num_traits::Zero;

use crate::ballots::BallotProfile;
use crate::error::{Error, Result};
use crate::rational::to_f64;

const MAX_ITERATIONS: usize = 2_000_000;
/// Shares below this are treated as outside the support.
const SUPPORT_THRESHOLD: f64 = 1e-12;
const PRUNE_EVERY: usize = 64;
/// Shares below this fraction of the largest are dropped from the active set.
const PRUNE_RATIO: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct OptPavResult {
    pub weights: Vec<f64>,
    pub iterations: usize,
    /// Common gradient value on the support.
    pub lambda: f64,
    pub kkt_residual: f64,
    /// Indices of ballots approving nobody, which were excluded.
    pub excluded_ballots: Vec<usize>,
}

struct Program {
    weights: Vec<f64>,
    approved: Vec<Vec<usize>>,
    n: usize,
}

impl Program {
    fn coverage(&self, x: &[f64]) -> Vec<f64> {
        self.approved.iter().map(|a| a.iter().map(|&c| x[c]).sum()).collect()
    }

    fn gradient(&self, cov: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.n];
        for ((w, a), cv) in self.weights.iter().zip(&self.approved).zip(cov) {
            for &c in a {
                g[c] += w / cv;
            }
        }
        g
    }

    /// Gradient, lambda, and the relative KKT residuals on the active set
    /// (`|g - lambda|`) and off it (`max(g - lambda, 0)`).
    fn kkt(&self, x: &[f64], active: &[bool]) -> (Vec<f64>, f64, f64, f64) {
        let g = self.gradient(&self.coverage(x));
        let lambda: f64 = x.iter().zip(&g).map(|(a, b)| a * b).sum();
        let (mut on, mut off) = (0.0f64, 0.0f64);
        for (c, &gc) in g.iter().enumerate() {
            if active[c] {
                on = on.max((gc - lambda).abs() / lambda);
            } else {
                off = off.max((gc - lambda) / lambda);
            }
        }
        (g, lambda, on, off)
    }
}

/// Candidates whose approving ballots are a strict subset of another's.
fn dominated(profile: &BallotProfile) -> Vec<bool> {
    let n = profile.num_candidates();
    let approvers: Vec<Vec<usize>> = (0..n).map(|c| profile.approvers(c)).collect();
    (0..n)
        .map(|c| {
            (0..n).any(|d| {
                approvers[d].len() > approvers[c].len() && approvers[c].iter().all(|i| approvers[d].contains(i))
            })
        })
        .collect()
}

/// Limiting seat shares, to a relative KKT residual of `tolerance`.
pub fn optimised_pav_weights(profile: &BallotProfile, tolerance: f64) -> Result<OptPavResult> {
    let n = profile.num_candidates();
    let mut excluded_ballots = Vec::new();
    let mut program = Program { weights: Vec::new(), approved: Vec::new(), n };
    for (i, b) in profile.ballots().iter().enumerate() {
        if b.weight.is_zero() {
            continue;
        }
        if b.approved.is_empty() {
            excluded_ballots.push(i);
            continue;
        }
        program.weights.push(to_f64(&b.weight));
        program.approved.push(b.approved.iter().collect());
    }
    if program.weights.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let total: f64 = program.weights.iter().sum();
    let mut active: Vec<bool> = dominated(profile).into_iter().map(|d| !d).collect();
    let live = active.iter().filter(|a| **a).count();
    let mut x: Vec<f64> = active.iter().map(|&a| if a { 1.0 / live as f64 } else { 0.0 }).collect();
    let mut prune_ratio = vec![PRUNE_RATIO; n];

    let mut iterations = 0;
    loop {
        let (g, lambda, on, off) = program.kkt(&x, &active);
        let residual = on.max(off);
        if residual <= tolerance {
            return Ok(finish(x, iterations, lambda, residual, excluded_ballots));
        }
        if iterations >= MAX_ITERATIONS {
            return Err(Error::NoConvergence { iterations, residual });
        }
        if on <= tolerance {
            // optimal on the active set but some inactive candidate would gain
            let c = (0..n).filter(|&c| !active[c]).max_by(|&a, &b| g[a].total_cmp(&g[b])).unwrap();
            active[c] = true;
            prune_ratio[c] *= PRUNE_RATIO;
            x[c] = PRUNE_RATIO / live as f64;
            normalize(&mut x);
            iterations += 1;
            continue;
        }
        if iterations % PRUNE_EVERY == 0 && prune(&program, &mut x, &mut active, &prune_ratio) {
            iterations += 1;
            continue;
        }
        for (xc, gc) in x.iter_mut().zip(&g) {
            *xc *= gc / total;
        }
        iterations += 1;
    }
}

fn normalize(x: &mut [f64]) {
    let s: f64 = x.iter().sum();
    x.iter_mut().for_each(|xc| *xc /= s);
}

/// Shares far below the largest one can take a very long time to decay
/// when their gradient tends to lambda; drop them unless that would leave
/// some ballot uncovered.
fn prune(program: &Program, x: &mut Vec<f64>, active: &mut [bool], ratio: &[f64]) -> bool {
    let top = x.iter().cloned().fold(0.0, f64::max);
    let mut trial = x.clone();
    let mut dropped = Vec::new();
    for c in 0..x.len() {
        if active[c] && x[c] < ratio[c] * top {
            trial[c] = 0.0;
            dropped.push(c);
        }
    }
    if dropped.is_empty() || program.coverage(&trial).iter().any(|&cv| cv <= 0.0) {
        return false;
    }
    for c in dropped {
        active[c] = false;
    }
    normalize(&mut trial);
    *x = trial;
    true
}

fn finish(
    mut x: Vec<f64>,
    iterations: usize,
    lambda: f64,
    kkt_residual: f64,
    excluded_ballots: Vec<usize>,
) -> OptPavResult {
    for xc in x.iter_mut() {
        if *xc <= SUPPORT_THRESHOLD {
            *xc = 0.0;
        }
    }
    normalize(&mut x);
    OptPavResult { weights: x, iterations, lambda, kkt_residual, excluded_ballots }
}

/// Seat counts for `seats` seats under the harmonic objective: greedy
/// seat-by-seat allocation followed by single-seat moves while any move
/// improves the score. A heuristic cross-check, not a certified optimum.
pub fn harmonic_oracle(profile: &BallotProfile, seats: u64) -> Vec<u64> {
    let n = profile.num_candidates();
    let ballots: Vec<(f64, Vec<usize>)> = profile
        .ballots()
        .iter()
        .filter(|b| !b.weight.is_zero() && !b.approved.is_empty())
        .map(|b| (to_f64(&b.weight), b.approved.iter().collect()))
        .collect();
    let mut alloc = vec![0u64; n];
    let mut cov = vec![0u64; ballots.len()];
    let gain = |cov: &[u64], c: usize| -> f64 {
        ballots.iter().zip(cov).filter(|((_, a), _)| a.contains(&c)).map(|((w, _), &m)| w / (m + 1) as f64).sum()
    };
    for _ in 0..seats {
        let mut best = 0;
        let mut best_gain = f64::NEG_INFINITY;
        for c in 0..n {
            let g = gain(&cov, c);
            if g > best_gain {
                best = c;
                best_gain = g;
            }
        }
        alloc[best] += 1;
        for (i, (_, a)) in ballots.iter().enumerate() {
            if a.contains(&best) {
                cov[i] += 1;
            }
        }
    }
    // single-seat moves from `from` to `to`
    loop {
        let mut improved = false;
        for from in 0..n {
            for to in 0..n {
                if from == to || alloc[from] == 0 {
                    continue;
                }
                let mut delta = 0.0;
                for ((w, a), &m) in ballots.iter().zip(&cov) {
                    match (a.contains(&from), a.contains(&to)) {
                        (true, false) => delta -= w / m as f64,
                        (false, true) => delta += w / (m + 1) as f64,
                        _ => {}
                    }
                }
                if delta > 1e-12 {
                    alloc[from] -= 1;
                    alloc[to] += 1;
                    for (i, (_, a)) in ballots.iter().enumerate() {
                        cov[i] = cov[i] + a.contains(&to) as u64 - a.contains(&from) as u64;
                    }
                    improved = true;
                }
            }
        }
        if !improved {
            return alloc;
        }
    }
}
