//! Exact verification oracles.

mod clique;
mod profile;
mod spectrum;

use std::fmt;

use serde::Serialize;

pub use clique::clique_certificate;
pub use profile::{check_pds, difference_profile, srg_common_neighbors, DifferenceProfile};
pub use spectrum::{
    character_spectrum, check_case_split, check_two_valued, delsarte_dual, eigen_check, CharacterSpectrum,
    TracePairing,
};

use crate::construct::{dual_subspace, scale_defects, symmetry_defects, PdsSet, Tower, TowerParams};
use crate::error::{Error, Result};
use crate::group::GroupIndex;
use crate::params::SrgParams;

/// Witness lists are truncated to this many entries.
pub const MAX_WITNESSES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub summary: String,
    /// Total number of failures found; `witnesses` holds the first few.
    pub failures: usize,
    pub witnesses: Vec<String>,
}

impl CheckResult {
    pub fn from_witnesses(name: &str, summary: String, mut bad: Vec<String>) -> Self {
        let failures = bad.len();
        bad.truncate(MAX_WITNESSES);
        let status = if failures == 0 { Status::Pass } else { Status::Fail };
        CheckResult { name: name.into(), status, summary, failures, witnesses: bad }
    }

    pub fn skipped(name: &str, reason: String) -> Self {
        CheckResult { name: name.into(), status: Status::Skipped, summary: reason, failures: 0, witnesses: vec![] }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Per-oracle brute-force caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Group order for the difference profile.
    pub profile: u64,
    /// `v·p` integers for the character spectrum.
    pub spectrum: u64,
    /// Group order for the common-neighbour pass.
    pub neighbors: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { profile: 1 << 16, spectrum: 1 << 24, neighbors: 1 << 12 }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub caps: Caps,
    pub parallel: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SrgCheckReport {
    pub set: String,
    pub params: TowerParams,
    pub expected: SrgParams,
    pub claimed: SrgParams,
    pub size: usize,
    pub checks: Vec<CheckResult>,
}

impl SrgCheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failed(&self) -> bool {
        !self.passed()
    }

    pub fn any_skipped(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Skipped)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for SrgCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "set       {}", self.set)?;
        writeln!(f, "tower     {}", self.params)?;
        writeln!(f, "expected  {}", self.expected)?;
        writeln!(f, "claimed   {}", self.claimed)?;
        writeln!(f, "size      {}", self.size)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            writeln!(f, "{:<width$}  {}  {}", c.name, c.status, c.summary)?;
            for w in &c.witnesses {
                writeln!(f, "{:<width$}        {w}", "")?;
            }
            if c.failures > c.witnesses.len() {
                writeln!(f, "{:<width$}        ... {} more", "", c.failures - c.witnesses.len())?;
            }
        }
        write!(f, "result    {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Shared state for verifying several sets on one tower.
pub struct Verifier<'a> {
    pub tower: &'a Tower,
    pub group: GroupIndex,
    pub pairing: TracePairing,
    pub opts: VerifyOptions,
}

impl<'a> Verifier<'a> {
    pub fn new(tower: &'a Tower, opts: VerifyOptions) -> Result<Self> {
        let group = GroupIndex::new(tower);
        let pairing = TracePairing::new(tower, &group)?;
        Ok(Verifier { tower, group, pairing, opts })
    }

    fn label(&self) -> impl Fn(u64) -> String + Sync + '_ {
        move |x| {
            let (a, b) = self.group.element(x);
            format!("({a:?},{b:?})")
        }
    }

    pub fn spectrum(&self, d: &PdsSet) -> Result<CharacterSpectrum> {
        let set = self.group.indices(&d.elements);
        character_spectrum(&self.group, &set, self.opts.caps.spectrum, self.opts.parallel)
    }

    /// Delsarte dual of `d`, through the trace pairing.
    pub fn delsarte_dual(&self, d: &PdsSet) -> Result<PdsSet> {
        let expected = d.provenance.expected_params(&d.params)?;
        let spec = self.spectrum(d)?;
        delsarte_dual(&self.group, &self.pairing, &spec, d, &expected)
    }

    /// Runs every oracle. Oracles whose cap is exceeded are reported as skipped.
    pub fn verify(&self, d: &PdsSet) -> Result<SrgCheckReport> {
        let tower = self.tower;
        let g = &self.group;
        if d.params.shape != tower.shape {
            return Err(Error::InvalidParams(format!("set on {} checked against tower {}", d.params, tower.shape)));
        }
        let expected = d.provenance.expected_params(&d.params)?;
        let set = g.indices(&d.elements);
        let member = g.bitmap(&d.elements);
        let label = self.label();
        let mut checks = Vec::new();

        let mut bad = Vec::new();
        if d.claimed != expected {
            bad.push(format!("claimed {} but closed forms give {expected}", d.claimed));
        }
        if !expected.satisfies_identity() {
            bad.push(format!("{expected} violates the parameter identity"));
        }
        checks.push(CheckResult::from_witnesses("parameters", format!("{expected}"), bad));

        let (has_zero, asym) = symmetry_defects(tower, d);
        let mut bad: Vec<String> = asym.iter().map(|x| format!("{x:?} in D but its negative is not")).collect();
        if has_zero {
            bad.insert(0, "0 lies in D".into());
        }
        checks.push(CheckResult::from_witnesses("symmetry", "0 not in D, D = -D".into(), bad));

        match difference_profile(g, &set, self.opts.caps.profile, self.opts.parallel) {
            Ok(prof) => checks.push(check_pds(g, &prof, &member, &expected, &label)),
            Err(e) if e.is_cap() => checks.push(CheckResult::skipped("difference-profile", e.to_string())),
            Err(e) => return Err(e),
        }

        match srg_common_neighbors(g, &set, &member, &expected, self.opts.caps.neighbors, self.opts.parallel, &label) {
            Ok(c) => checks.push(c),
            Err(e) if e.is_cap() => checks.push(CheckResult::skipped("common-neighbours", e.to_string())),
            Err(e) => return Err(e),
        }

        let spectral = ["character-spectrum", "eigenvalues", "case-split"];
        match self.spectrum(d) {
            Ok(spec) => {
                let values = match expected.eigenvalues() {
                    Ok((pos, neg)) => Some((pos as i64, neg as i64)),
                    Err(e) => {
                        checks.push(CheckResult::from_witnesses(spectral[0], "no eigenvalues".into(), vec![e.to_string()]));
                        None
                    }
                };
                if let Some(values) = values {
                    checks.push(check_two_valued(&spec, d.len(), &expected, values, |u| label(self.pairing.label(u))));
                    checks.push(eigen_check(&expected, &spec));
                    if d.provenance.is_primal_construction() {
                        let perp = dual_subspace(tower, &d.subspace)?;
                        checks.push(check_case_split(tower, g, &self.pairing, &spec, &perp, values));
                    } else {
                        checks.push(CheckResult::skipped(spectral[2], "applies to the primal construction only".into()));
                    }
                }
            }
            Err(e) if e.is_cap() => {
                for name in spectral {
                    checks.push(CheckResult::skipped(name, e.to_string()));
                }
            }
            Err(e) => return Err(e),
        }

        checks.extend(clique_certificate(tower, g, d, &member));

        let bad: Vec<String> = scale_defects(tower, d)
            .iter()
            .map(|x| format!("{x:?} in D but a GF(q)-multiple is not"))
            .collect();
        checks.push(CheckResult::from_witnesses("scale-closure", "D closed under GF(q)*".into(), bad));

        Ok(SrgCheckReport {
            set: d.provenance.label(),
            params: d.params,
            expected,
            claimed: d.claimed,
            size: d.len(),
            checks,
        })
    }
}

/// Convenience wrapper building a [`Verifier`] for a single set.
pub fn verify_set(tower: &Tower, d: &PdsSet, opts: VerifyOptions) -> Result<SrgCheckReport> {
    Verifier::new(tower, opts)?.verify(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_d, build_d_dual, complement, default_subspace, TowerShape};
    use crate::ff::Elem;

    fn tower(p: u32, s: u32, m: u32, l: u32) -> Tower {
        Tower::new(TowerShape::new(p, s, m, l).unwrap()).unwrap()
    }

    #[test]
    fn primal_64_18_2_6_passes_everything() {
        let t = tower(2, 1, 2, 1);
        let r = default_subspace(&t, 1).unwrap();
        let d = build_d(&t, &r).unwrap();
        let rep = verify_set(&t, &d, VerifyOptions::default()).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(!rep.any_skipped(), "{rep}");
        assert_eq!(rep.expected, SrgParams { v: 64, k: 18, lambda: 2, mu: 6 });
    }

    #[test]
    fn delsarte_dual_is_the_dual_construction() {
        for &(p, s, m, l) in &[(2, 1, 2, 1), (2, 1, 3, 1), (3, 1, 2, 1), (2, 2, 2, 1)] {
            let t = tower(p, s, m, l);
            let v = Verifier::new(&t, VerifyOptions::default()).unwrap();
            for r in 0..=m {
                let rsub = default_subspace(&t, r).unwrap();
                let d = build_d(&t, &rsub).unwrap();
                let plus = v.delsarte_dual(&d).unwrap();
                let direct = build_d_dual(&t, &rsub).unwrap();
                assert!(plus.same_elements(&direct), "{p} {s} {m} {l} r={r}");
                assert_eq!(plus.claimed, direct.claimed);
                let back = v.delsarte_dual(&plus).unwrap();
                assert!(back.same_elements(&d));
            }
        }
    }

    #[test]
    fn every_construction_passes_on_small_towers() {
        for &(p, s, m, l) in &[(2, 1, 2, 1), (3, 1, 2, 1), (2, 1, 3, 1)] {
            let t = tower(p, s, m, l);
            let v = Verifier::new(&t, VerifyOptions::default()).unwrap();
            for r in 0..=m {
                let rsub = default_subspace(&t, r).unwrap();
                let d = build_d(&t, &rsub).unwrap();
                let dual = build_d_dual(&t, &rsub).unwrap();
                let comp = complement(&t, &d).unwrap();
                for set in [&d, &dual, &comp] {
                    let rep = v.verify(set).unwrap();
                    assert!(rep.passed(), "{rep}");
                }
            }
        }
    }

    #[test]
    fn parallel_run_is_identical() {
        let t = tower(3, 1, 2, 1);
        let d = build_d(&t, &default_subspace(&t, 1).unwrap()).unwrap();
        let a = verify_set(&t, &d, VerifyOptions { parallel: false, ..Default::default() }).unwrap();
        let b = verify_set(&t, &d, VerifyOptions { parallel: true, ..Default::default() }).unwrap();
        assert_eq!(a.checks, b.checks);
    }

    #[test]
    fn swapping_one_element_is_detected() {
        let t = tower(2, 1, 2, 1);
        let d = build_d(&t, &default_subspace(&t, 1).unwrap()).unwrap();
        let outside = t.group_elements().find(|&x| x != (Elem::Zero, Elem::Zero) && !d.contains(x)).unwrap();
        let mut bad = d.clone();
        bad.elements.remove(0);
        bad.elements.push(outside);
        bad.elements.sort_unstable();
        let rep = verify_set(&t, &bad, VerifyOptions::default()).unwrap();
        assert!(rep.failed());
        let prof = rep.check("difference-profile").unwrap();
        assert_eq!(prof.status, Status::Fail);
        assert!(!prof.witnesses.is_empty());
    }

    #[test]
    fn caps_turn_checks_into_skips() {
        let t = tower(2, 1, 2, 1);
        let d = build_d(&t, &default_subspace(&t, 1).unwrap()).unwrap();
        let opts = VerifyOptions { caps: Caps { profile: 8, spectrum: 8, neighbors: 8 }, parallel: false };
        let rep = verify_set(&t, &d, opts).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.check("difference-profile").unwrap().status, Status::Skipped);
        assert_eq!(rep.check("eigenvalues").unwrap().status, Status::Skipped);
        assert_eq!(rep.check("clique").unwrap().status, Status::Pass);
    }

    #[test]
    fn degenerate_spectrum_is_a_union_of_cliques() {
        let t = tower(2, 1, 2, 1);
        let v = Verifier::new(&t, VerifyOptions::default()).unwrap();
        let d = build_d(&t, &default_subspace(&t, 0).unwrap()).unwrap();
        let spec = v.spectrum(&d).unwrap();
        let mut vals: Vec<i64> = (1..spec.order()).map(|u| spec.value(u).unwrap()).collect();
        vals.sort_unstable();
        vals.dedup();
        assert_eq!(vals, vec![-1, 3]);
    }

    #[test]
    fn spectrum_of_64_18_2_6() {
        let t = tower(2, 1, 2, 1);
        let v = Verifier::new(&t, VerifyOptions::default()).unwrap();
        let d = build_d(&t, &default_subspace(&t, 1).unwrap()).unwrap();
        let spec = v.spectrum(&d).unwrap();
        let pos = (1..64).filter(|&u| spec.value(u) == Some(2)).count();
        let neg = (1..64).filter(|&u| spec.value(u) == Some(-6)).count();
        assert_eq!((pos, neg), (45, 18));
    }
}
