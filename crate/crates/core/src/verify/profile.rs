use rayon::prelude::*;

use super::CheckResult;
use crate::error::{Error, Result};
use crate::group::GroupIndex;
use crate::params::SrgParams;

/// `c(g)` = number of ordered pairs `(d1, d2)` of distinct elements with `d1 - d2 = g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceProfile {
    pub counts: Vec<u64>,
}

impl DifferenceProfile {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn difference_profile(g: &GroupIndex, set: &[u64], cap: u64, parallel: bool) -> Result<DifferenceProfile> {
    let v = g.order();
    if v > cap {
        return Err(Error::CapExceeded { what: "difference profile", size: v, cap });
    }
    let add_row = |mut acc: Vec<u64>, &d1: &u64| {
        for &d2 in set {
            if d1 != d2 {
                acc[g.sub(d1, d2) as usize] += 1;
            }
        }
        acc
    };
    let zeros = || vec![0u64; v as usize];
    let counts = if parallel {
        set.par_iter().fold(zeros, add_row).reduce(zeros, |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        })
    } else {
        set.iter().fold(zeros(), add_row)
    };
    Ok(DifferenceProfile { counts })
}

/// Passes iff `c ≡ λ` on `D` and `c ≡ μ` off `D ∪ {0}`, and the expected tuple
/// satisfies `k² = k - μ + (λ - μ)k + μv`.
pub fn check_pds(
    g: &GroupIndex,
    profile: &DifferenceProfile,
    member: &[bool],
    expected: &SrgParams,
    label: impl Fn(u64) -> String,
) -> CheckResult {
    let mut bad = Vec::new();
    if !expected.satisfies_identity() {
        bad.push(format!("expected {expected} violates k^2 = k - mu + (lambda - mu)k + mu v"));
    }
    let k = member.iter().filter(|&&b| b).count() as u64;
    if k as i128 != expected.k {
        bad.push(format!("|D| = {k}, expected {}", expected.k));
    }
    if profile.total() != k * k.saturating_sub(1) {
        bad.push(format!("sum of counts {} != k(k-1)", profile.total()));
    }
    for x in 1..g.order() {
        let c = profile.counts[x as usize] as i128;
        let want = if member[x as usize] { expected.lambda } else { expected.mu };
        if c != want {
            bad.push(format!("{} appears {c} times, expected {want}", label(x)));
        }
        if profile.counts[g.neg(x) as usize] != profile.counts[x as usize] {
            bad.push(format!("c({0}) != c(-{0})", label(x)));
        }
    }
    let summary = format!("lambda={}, mu={} over {} nonzero elements", expected.lambda, expected.mu, g.order() - 1);
    CheckResult::from_witnesses("difference-profile", summary, bad)
}

/// Common neighbours of `0` and every `x` in the Cayley graph, by direct adjacency lookup.
pub fn srg_common_neighbors(
    g: &GroupIndex,
    set: &[u64],
    member: &[bool],
    expected: &SrgParams,
    cap: u64,
    parallel: bool,
    label: impl Fn(u64) -> String + Sync,
) -> Result<CheckResult> {
    let v = g.order();
    if v > cap {
        return Err(Error::CapExceeded { what: "neighbour check", size: v, cap });
    }
    let mut bad = Vec::new();
    if set.len() as i128 != expected.k {
        bad.push(format!("vertex 0 has degree {}, expected {}", set.len(), expected.k));
    }
    if let Some(&d) = set.iter().find(|&&d| !member[g.neg(d) as usize]) {
        bad.push(format!("{} is adjacent to 0 but not conversely", label(d)));
    }
    let check = |x: u64| -> Option<String> {
        let common = set.iter().filter(|&&y| member[g.sub(y, x) as usize]).count() as i128;
        let want = if member[x as usize] { expected.lambda } else { expected.mu };
        (common != want).then(|| format!("0 and {} have {common} common neighbours, expected {want}", label(x)))
    };
    let found: Vec<String> = if parallel {
        (1..v).into_par_iter().filter_map(check).collect()
    } else {
        (1..v).filter_map(check).collect()
    };
    bad.extend(found);
    let summary = format!("{} vertex pairs through vertex 0", v - 1);
    Ok(CheckResult::from_witnesses("common-neighbours", summary, bad))
}
