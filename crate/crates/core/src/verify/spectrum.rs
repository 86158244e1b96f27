use rayon::prelude::*;

use super::CheckResult;
use crate::construct::{PdsSet, Provenance, Subspace, Tower};
use crate::error::{Error, Result};
use crate::ff::{Elem, FiniteField};
use crate::group::GroupIndex;
use crate::params::{self, SrgParams};

/// All character sums of a set, exactly, as elements of Z[ζ_p].
///
/// Entry `u` holds counts `(n_0, ..., n_{p-1})` with `χ_u(D) = Σ n_j ζ^j`,
/// where `χ_u(x) = ζ^{u·x}` for the digit vectors of `u` and `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSpectrum {
    p: u32,
    v: u64,
    counts: Vec<i64>,
}

impl CharacterSpectrum {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.v
    }

    pub fn counts(&self, u: u64) -> &[i64] {
        let p = self.p as usize;
        &self.counts[u as usize * p..(u as usize + 1) * p]
    }

    /// The value as a rational integer, if `n_1 = ... = n_{p-1}`.
    pub fn value(&self, u: u64) -> Option<i64> {
        let c = self.counts(u);
        match c.len() {
            1 => Some(c[0]),
            _ => c[2..].iter().all(|&x| x == c[1]).then(|| c[0] - c[1]),
        }
    }
}

/// Computes every `χ_u(D)` by a digit-by-digit transform over Z_p^N. Multiplying
/// by `ζ^t` is a cyclic shift of the count vector, so no floating point is involved.
pub fn character_spectrum(g: &GroupIndex, set: &[u64], cap: u64, parallel: bool) -> Result<CharacterSpectrum> {
    let p = g.characteristic() as usize;
    let v = g.order();
    let size = v.saturating_mul(p as u64);
    if size > cap {
        return Err(Error::CapExceeded { what: "character spectrum", size, cap });
    }
    let mut counts = vec![0i64; size as usize];
    for &d in set {
        counts[d as usize * p] += 1;
    }
    let mut stride = 1usize;
    for _ in 0..g.digits() {
        let block = stride * p * p;
        let step = |chunk: &mut [i64]| transform_block(chunk, stride, p);
        if parallel {
            counts.par_chunks_mut(block).for_each(step);
        } else {
            counts.chunks_mut(block).for_each(step);
        }
        stride *= p;
    }
    Ok(CharacterSpectrum { p: p as u32, v, counts })
}

/// One p-point transform along a digit of place value `stride`, on a block of
/// `stride * p` elements (each a length-`p` count vector).
fn transform_block(chunk: &mut [i64], stride: usize, p: usize) {
    let mut old = vec![0i64; p * p];
    for o in 0..stride {
        for x in 0..p {
            let at = (o + x * stride) * p;
            old[x * p..(x + 1) * p].copy_from_slice(&chunk[at..at + p]);
        }
        for c in 0..p {
            let at = (o + c * stride) * p;
            let out = &mut chunk[at..at + p];
            out.fill(0);
            for x in 0..p {
                let t = c * x % p;
                for j in 0..p {
                    out[(j + t) % p] += old[x * p + j];
                }
            }
        }
    }
}

/// The trace pairing `⟨(a,b),(x,y)⟩ = Tr(ax) + Tr(by)`, as a map from
/// character labels (group indices) to transform indices.
#[derive(Debug, Clone)]
pub struct TracePairing {
    to_standard: Vec<u64>,
    from_standard: Vec<u64>,
}

impl TracePairing {
    pub fn new(tower: &Tower, g: &GroupIndex) -> Result<Self> {
        let p = g.characteristic() as u64;
        let digits = g.digits();
        // image of each unit label
        let mut unit_images = Vec::with_capacity(digits as usize);
        for (field, offset) in [(&tower.f1, 0u32), (&tower.f2, tower.f1.degree())] {
            let len = field.degree();
            for k in 0..len {
                let xk = unit(field, k)?;
                let mut u = 0u64;
                for i in (0..len).rev() {
                    u = u * p + trace(field, field.mul(xk, unit(field, i)?))? as u64;
                }
                unit_images.push(u * p.pow(offset));
            }
        }
        let v = g.order();
        let mut to_standard = vec![0u64; v as usize];
        for idx in 1..v {
            // strip the lowest nonzero digit and reuse the smaller label
            let mut rest = idx;
            let mut k = 0usize;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            let prev = idx - p.pow(k as u32);
            to_standard[idx as usize] = g.add(to_standard[prev as usize], unit_images[k]);
        }
        let mut from_standard = vec![u64::MAX; v as usize];
        for (label, &u) in to_standard.iter().enumerate() {
            if from_standard[u as usize] != u64::MAX {
                return Err(Error::Internal("trace pairing is degenerate".into()));
            }
            from_standard[u as usize] = label as u64;
        }
        Ok(TracePairing { to_standard, from_standard })
    }

    pub fn standard(&self, label: u64) -> u64 {
        self.to_standard[label as usize]
    }

    pub fn label(&self, standard: u64) -> u64 {
        self.from_standard[standard as usize]
    }
}

fn unit(f: &FiniteField, k: u32) -> Result<Elem> {
    let mut c = vec![0u32; f.degree() as usize];
    c[k as usize] = 1;
    Ok(f.from_coeffs(&c)?)
}

fn trace(f: &FiniteField, x: Elem) -> Result<u32> {
    f.prime_value(f.trace_to(x, 1)?)
        .ok_or_else(|| Error::Internal("absolute trace outside the prime field".into()))
}

/// Multiplicities of the two expected nonprincipal values `(positive, negative)`.
pub fn check_two_valued(
    spec: &CharacterSpectrum,
    set_size: usize,
    expected: &SrgParams,
    values: (i64, i64),
    label: impl Fn(u64) -> String,
) -> CheckResult {
    let mut bad = Vec::new();
    if spec.value(0) != Some(set_size as i64) {
        bad.push(format!("principal character gives {:?}, expected {set_size}", spec.counts(0)));
    }
    let (pos, neg) = values;
    let (mut n_pos, mut n_neg, mut sum) = (0i128, 0i128, 0i128);
    for u in 1..spec.order() {
        match spec.value(u) {
            Some(x) if x == pos => n_pos += 1,
            Some(x) if x == neg => n_neg += 1,
            Some(x) => bad.push(format!("character {} has value {x}", label(u))),
            None => bad.push(format!("character {} has irrational value {:?}", label(u), spec.counts(u))),
        }
        if let Some(x) = spec.value(u) {
            sum += x as i128;
        }
    }
    if sum != -(set_size as i128) {
        bad.push(format!("nonprincipal values sum to {sum}, expected -{set_size}"));
    }
    match params::delsarte_dual_params(expected) {
        Ok(dual) => {
            if n_pos != dual.k || n_neg != expected.v - 1 - dual.k {
                bad.push(format!(
                    "multiplicities ({n_pos}, {n_neg}), expected ({}, {})",
                    dual.k,
                    expected.v - 1 - dual.k
                ));
            }
        }
        Err(e) => bad.push(format!("no dual parameters for {expected}: {e}")),
    }
    let summary = format!("values {{{pos}: {n_pos}, {neg}: {n_neg}}}");
    CheckResult::from_witnesses("character-spectrum", summary, bad)
}

/// The distinct nonprincipal values must be exactly the roots of `x² + (μ-λ)x + (μ-k)`.
pub fn eigen_check(expected: &SrgParams, spec: &CharacterSpectrum) -> CheckResult {
    let mut observed: Vec<i64> = (1..spec.order()).filter_map(|u| spec.value(u)).collect();
    observed.sort_unstable();
    observed.dedup();
    let poly = |x: i128| x * x + (expected.mu - expected.lambda) * x + (expected.mu - expected.k);
    let mut bad: Vec<String> = observed
        .iter()
        .filter(|&&x| poly(x as i128) != 0)
        .map(|x| format!("{x} is not a root"))
        .collect();
    if observed.len() != 2 {
        bad.push(format!("observed values {observed:?} are not two"));
    }
    let summary = format!(
        "x^2 + ({})x + ({}) vanishes on {observed:?}",
        expected.mu - expected.lambda,
        expected.mu - expected.k
    );
    CheckResult::from_witnesses("eigenvalues", summary, bad)
}

/// For the primal family: the character `(a,b)` takes the negative value exactly
/// when `a ≠ 0, b = 0`, or `ab ≠ 0` and `N(b)/N(a) ∈ R^⊥`.
pub fn check_case_split(
    tower: &Tower,
    g: &GroupIndex,
    pairing: &TracePairing,
    spec: &CharacterSpectrum,
    perp: &Subspace,
    values: (i64, i64),
) -> CheckResult {
    let (pos, neg) = values;
    let mut bad = Vec::new();
    // [a=0 b≠0, a≠0 b=0, ab≠0 in R^⊥, ab≠0 outside R^⊥]
    let mut counts = [0u64; 4];
    for label in 1..g.order() {
        let (a, b) = g.element(label);
        let (case, negative) = match (a.is_zero(), b.is_zero()) {
            (true, false) => (0, false),
            (false, true) => (1, true),
            _ => {
                let inside = perp.contains(tower.norm_ratio(a, b));
                (if inside { 2 } else { 3 }, inside)
            }
        };
        counts[case] += 1;
        let want = if negative { neg } else { pos };
        let got = spec.value(pairing.standard(label));
        if got != Some(want) {
            bad.push(format!("character ({a:?},{b:?}) in case {} gives {got:?}, expected {want}", case + 1));
        }
    }
    let q1 = tower.f1.order() as u64 - 1;
    let q2 = tower.f2.order() as u64 - 1;
    let qm = tower.fm.order() as u64 - 1;
    let fibre = q2 / qm;
    let inside = q1 * (perp.len() as u64 - 1) * fibre;
    let expect = [q2, q1, inside, q1 * q2 - inside];
    if counts != expect {
        bad.push(format!("case counts {counts:?}, expected {expect:?}"));
    }
    let summary = format!(
        "cases a=0: {}, b=0: {}, ratio in R-perp: {}, outside: {}",
        counts[0], counts[1], counts[2], counts[3]
    );
    CheckResult::from_witnesses("case-split", summary, bad)
}

/// The set of characters attaining the larger value, read back as group elements.
pub fn delsarte_dual(
    g: &GroupIndex,
    pairing: &TracePairing,
    spec: &CharacterSpectrum,
    d: &PdsSet,
    expected: &SrgParams,
) -> Result<PdsSet> {
    let (pos, neg) = expected.eigenvalues()?;
    let (pos, neg) = (pos as i64, neg as i64);
    let mut out = Vec::new();
    for u in 1..spec.order() {
        match spec.value(u) {
            Some(x) if x == pos => out.push(g.element(pairing.label(u))),
            Some(x) if x == neg => {}
            other => {
                return Err(Error::SpectrumNotTwoValued(format!(
                    "character {u} has value {other:?}, expected {pos} or {neg}"
                )))
            }
        }
    }
    let claimed = params::delsarte_dual_params(expected)?;
    let provenance = Provenance::DelsarteDual { of: Box::new(d.provenance.clone()) };
    Ok(PdsSet::new(d.params, provenance, claimed, out, d.subspace.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::TowerShape;

    // Direct evaluation of χ_u(D) = Σ_d ζ^{u·d}, one character at a time.
    fn naive(g: &GroupIndex, set: &[u64], u: u64) -> Vec<i64> {
        let p = g.characteristic() as u64;
        let mut c = vec![0i64; p as usize];
        for &d in set {
            let (mut x, mut y, mut dot) = (u, d, 0);
            for _ in 0..g.digits() {
                dot += (x % p) * (y % p);
                x /= p;
                y /= p;
            }
            c[(dot % p) as usize] += 1;
        }
        c
    }

    #[test]
    fn transform_matches_naive_sums() {
        for &(p, s, m, l) in &[(2, 1, 1, 1), (3, 1, 1, 1), (5, 1, 1, 1)] {
            let t = Tower::new(TowerShape::new(p, s, m, l).unwrap()).unwrap();
            let g = GroupIndex::new(&t);
            let set: Vec<u64> = (0..g.order()).filter(|x| x % 7 == 3 || x % 5 == 1).collect();
            let spec = character_spectrum(&g, &set, u64::MAX, false).unwrap();
            let par = character_spectrum(&g, &set, u64::MAX, true).unwrap();
            assert_eq!(spec, par);
            for u in 0..g.order() {
                assert_eq!(spec.counts(u), naive(&g, &set, u).as_slice());
            }
        }
    }

    #[test]
    fn pairing_matches_trace_form() {
        let t = Tower::new(TowerShape::new(3, 1, 1, 1).unwrap()).unwrap();
        let g = GroupIndex::new(&t);
        let pr = TracePairing::new(&t, &g).unwrap();
        let p = 3u64;
        for label in 0..g.order() {
            let (a, b) = g.element(label);
            let u = pr.standard(label);
            assert_eq!(pr.label(u), label);
            for x in 0..g.order() {
                let (xa, xb) = g.element(x);
                let tr = (trace(&t.f1, t.f1.mul(a, xa)).unwrap() + trace(&t.f2, t.f2.mul(b, xb)).unwrap()) as u64 % p;
                let (mut uu, mut xx, mut dot) = (u, x, 0);
                for _ in 0..g.digits() {
                    dot += (uu % p) * (xx % p);
                    uu /= p;
                    xx /= p;
                }
                assert_eq!(dot % p, tr);
            }
        }
    }

    #[test]
    fn two_element_set_values() {
        let t = Tower::new(TowerShape::new(3, 1, 1, 1).unwrap()).unwrap();
        let g = GroupIndex::new(&t);
        let x = 5u64;
        let set = vec![x, g.neg(x)];
        let spec = character_spectrum(&g, &set, u64::MAX, false).unwrap();
        assert_eq!(spec.value(0), Some(2));
        // ζ^t + ζ^{-t} is rational only when t = 0
        for u in 0..g.order() {
            let c = spec.counts(u);
            assert_eq!(c.iter().sum::<i64>(), 2);
        }
    }
}
