//! Benchmark fixtures: synthetic profiles of adjustable size.

use cowpea_core::{parse_approval_profile, BallotProfile};

/// `parties` slates of `size` candidates each; party `j` gets weight `j + 1`
/// and every third ballot line also approves the next party's slate.
pub fn overlapping_slates(parties: usize, size: usize) -> BallotProfile {
    let slate = |j: usize| (1..=size).map(|i| format!("P{j}c{i}")).collect::<Vec<_>>().join(" ");
    let mut text = format!("candidates: {}\n", (0..parties).map(slate).collect::<Vec<_>>().join(" "));
    for j in 0..parties {
        text.push_str(&format!("{}: {}\n", j + 1, slate(j)));
        if j % 3 == 2 {
            text.push_str(&format!("1: {} {}\n", slate(j), slate((j + 1) % parties)));
        }
    }
    parse_approval_profile(&text).expect("generated profile parses")
}

/// `n` candidates where ballot line `i` approves candidates `i` and `i + 1`
/// (cyclically) with weight `i + 1`: no two candidates share approvers.
pub fn ring(n: usize) -> BallotProfile {
    let name = |i: usize| format!("C{i}");
    let mut text = format!("candidates: {}\n", (0..n).map(name).collect::<Vec<_>>().join(" "));
    for i in 0..n {
        text.push_str(&format!("{}: {} {}\n", i + 1, name(i), name((i + 1) % n)));
    }
    parse_approval_profile(&text).expect("generated profile parses")
}
