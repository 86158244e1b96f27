//! Projective two-intersection sets and projective two-weight codes obtained from a
//! scale-closed difference set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{scale_defects, PdsSet, Provenance, Tower, TowerParams};
use crate::error::{Error, Result};
use crate::ff::{Elem, FiniteField, SubfieldCoordinates};
use crate::linalg;
use crate::params::{self, CodeParams, Family, ProjectiveParams, SrgParams};
use crate::verify::CheckResult;

/// Arithmetic of GF(q) on packed values `0..q`.
#[derive(Debug, Clone)]
pub struct Gfq {
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl Gfq {
    pub fn new(fq: &FiniteField) -> Self {
        let q = fq.order();
        let el = |v| fq.from_packed(v);
        let mut add = vec![0; (q * q) as usize];
        let mut mul = vec![0; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                add[(a * q + b) as usize] = fq.to_packed(fq.add(el(a), el(b)));
                mul[(a * q + b) as usize] = fq.to_packed(fq.mul(el(a), el(b)));
            }
        }
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { fq.to_packed(fq.inv(el(a)).expect("nonzero")) })
            .collect();
        Gfq { q, add, mul, inv }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn dot(&self, x: &[u32], y: &[u32]) -> u32 {
        x.iter().zip(y).fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    /// Scales `x` so that its first nonzero entry is 1; `None` for the zero vector.
    pub fn normalize(&self, x: &[u32]) -> Option<Vec<u32>> {
        let lead = *x.iter().find(|&&c| c != 0)?;
        let s = self.inv[lead as usize];
        Some(x.iter().map(|&c| self.mul(c, s)).collect())
    }
}

/// GF(q)-coordinates of `G` in the power bases of the primitive elements of both fields.
#[derive(Debug, Clone)]
pub struct GfqCoordinates {
    c1: SubfieldCoordinates,
    c2: SubfieldCoordinates,
}

impl GfqCoordinates {
    pub fn new(tower: &Tower) -> Result<Self> {
        let s = tower.shape.s;
        let c1 = SubfieldCoordinates::primitive_basis(&tower.f1, s)?;
        let c2 = SubfieldCoordinates::primitive_basis(&tower.f2, s)?;
        Ok(GfqCoordinates { c1, c2 })
    }

    /// `m(2ℓ+1)`
    pub fn len(&self) -> usize {
        self.c1.len() + self.c2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coords(&self, tower: &Tower, (a, b): (Elem, Elem)) -> Vec<u32> {
        let pull = |emb: &crate::ff::SubfieldEmbedding, x: Elem| {
            tower.fq.to_packed(emb.pullback(x).expect("coordinate lies in GF(q)"))
        };
        let mut out: Vec<u32> = self.c1.to_coords(&tower.f1, a).into_iter().map(|x| pull(&tower.emb_q1, x)).collect();
        out.extend(self.c2.to_coords(&tower.f2, b).into_iter().map(|x| pull(&tower.emb_q2, x)));
        out
    }

    pub fn element(&self, tower: &Tower, v: &[u32]) -> Result<(Elem, Elem)> {
        if v.len() != self.len() {
            return Err(Error::Format(format!("vector of length {}, expected {}", v.len(), self.len())));
        }
        let (x, y) = v.split_at(self.c1.len());
        let push = |emb: &crate::ff::SubfieldEmbedding, v: &[u32]| -> Vec<Elem> {
            v.iter().map(|&c| emb.apply(tower.fq.from_packed(c))).collect()
        };
        let a = self.c1.from_coords(&tower.f1, &push(&tower.emb_q1, x))?;
        let b = self.c2.from_coords(&tower.f2, &push(&tower.emb_q2, y))?;
        Ok((a, b))
    }
}

/// The family and subspace dimension whose closed forms describe the geometry of a set.
pub fn geometry_of(prov: &Provenance, tp: &TowerParams) -> (Family, u32) {
    let flip = |f| match f {
        Family::Primal => Family::Dual,
        Family::Dual => Family::Primal,
    };
    match prov {
        Provenance::Primal | Provenance::PrimalCosets => (Family::Primal, tp.r),
        Provenance::Dual => (Family::Dual, tp.r),
        // the complement of one family at r has the other family's parameters at m - r
        Provenance::Complement { of } => {
            let (f, r) = geometry_of(of, tp);
            (flip(f), tp.shape.m - r)
        }
        Provenance::DelsarteDual { of } => {
            let (f, r) = geometry_of(of, tp);
            (flip(f), r)
        }
    }
}

/// Closed-form `(n, h1, h2)` and `(n, w1, w2)` for a set.
pub fn expected_geometry(d: &PdsSet) -> Result<(ProjectiveParams, CodeParams)> {
    let (family, r) = geometry_of(&d.provenance, &d.params);
    let sh = d.params.shape;
    Ok(params::geometry_params(family, sh.q(), sh.m, sh.l, r)?)
}

/// Normalized points, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectiveSet {
    pub q: u32,
    pub dim: usize,
    pub points: Vec<Vec<u32>>,
    pub claimed: ProjectiveParams,
}

impl ProjectiveSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point_strings(&self) -> Vec<String> {
        self.points.iter().map(|p| vector_string(self.q, p)).collect()
    }
}

/// Digits run together when every digit is a single character, comma separated otherwise.
pub fn vector_string(q: u32, v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    parts.join(if q <= 10 { "" } else { "," })
}

/// Collapses a GF(q)*-closed set to its projective points.
pub fn to_projective_set(tower: &Tower, coords: &GfqCoordinates, d: &PdsSet) -> Result<ProjectiveSet> {
    if let Some(x) = scale_defects(tower, d).first() {
        return Err(Error::NotScaleClosed(format!("{x:?}")));
    }
    let gfq = Gfq::new(&tower.fq);
    let points: BTreeSet<Vec<u32>> = d
        .elements
        .iter()
        .map(|&x| gfq.normalize(&coords.coords(tower, x)).ok_or_else(|| Error::Internal("zero in D".into())))
        .collect::<Result<_>>()?;
    let q = gfq.order();
    if points.len() * (q as usize - 1) != d.len() {
        return Err(Error::Internal(format!("{} points from {} elements", points.len(), d.len())));
    }
    let (claimed, _) = expected_geometry(d)?;
    Ok(ProjectiveSet { q, dim: coords.len(), points: points.into_iter().collect(), claimed })
}

/// Rows are coordinates, columns are the normalized points in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorMatrix {
    pub q: u32,
    pub rows: Vec<Vec<u32>>,
}

impl GeneratorMatrix {
    pub fn len(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }
}

pub fn build_code(set: &ProjectiveSet) -> GeneratorMatrix {
    let rows = (0..set.dim).map(|i| set.points.iter().map(|p| p[i]).collect()).collect();
    GeneratorMatrix { q: set.q, rows }
}

/// Pairs of columns that are GF(q)-multiples of each other (or zero columns).
pub fn dependent_columns(gfq: &Gfq, gm: &GeneratorMatrix) -> Vec<(usize, usize)> {
    let cols: Vec<Vec<u32>> = (0..gm.len()).map(|j| gm.column(j)).collect();
    let normal: Vec<Option<Vec<u32>>> = cols.iter().map(|c| gfq.normalize(c)).collect();
    let mut bad = Vec::new();
    for i in 0..cols.len() {
        if normal[i].is_none() {
            bad.push((i, i));
            continue;
        }
        for j in i + 1..cols.len() {
            if normal[i] == normal[j] {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Rank over GF(q).
pub fn rank(fq: &FiniteField, gm: &GeneratorMatrix) -> usize {
    let rows: Vec<Vec<Elem>> = gm.rows.iter().map(|r| r.iter().map(|&c| fq.from_packed(c)).collect()).collect();
    linalg::rank(fq, &rows)
}

/// Map from value to multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Distribution(pub BTreeMap<u64, u64>);

impl Distribution {
    fn from_counts(counts: &[u64]) -> Self {
        Distribution(counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(w, &c)| (w as u64, c)).collect())
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn get(&self, x: u64) -> u64 {
        self.0.get(&x).copied().unwrap_or(0)
    }

    pub fn keys(&self) -> Vec<u64> {
        self.0.keys().copied().collect()
    }
}

/// Weight → number of codewords, over all messages.
pub type WeightEnumerator = Distribution;
/// Intersection size → number of hyperplanes.
pub type HyperplaneProfile = Distribution;

/// Dot products of every vector of GF(q)^N with every column, split into a low and
/// a high half so each product is one table addition.
struct DotTables<'a> {
    gfq: &'a Gfq,
    n: usize,
    lo: Vec<u32>,
    hi: Vec<u32>,
    lo_count: u64,
    hi_count: u64,
}

impl<'a> DotTables<'a> {
    fn new(gfq: &'a Gfq, gm: &GeneratorMatrix, cap: u64, what: &'static str) -> Result<Self> {
        let q = gfq.order() as u64;
        let dim = gm.dimension();
        let size = q.checked_pow(dim as u32).unwrap_or(u64::MAX);
        if size > cap {
            return Err(Error::CapExceeded { what, size, cap });
        }
        let lo_len = dim / 2;
        let table = |rows: &[Vec<u32>]| -> (Vec<u32>, u64) {
            let count = q.pow(rows.len() as u32);
            let n = gm.len();
            let mut t = vec![0u32; count as usize * n];
            for x in 1..count {
                // strip the lowest nonzero digit c at place k
                let (mut rest, mut k) = (x, 0usize);
                while rest % q == 0 {
                    rest /= q;
                    k += 1;
                }
                let c = rest % q;
                let prev = (x - c * q.pow(k as u32)) as usize;
                for j in 0..n {
                    t[x as usize * n + j] = gfq.add(t[prev * n + j], gfq.mul(c as u32, rows[k][j]));
                }
            }
            (t, count)
        };
        let (lo, lo_count) = table(&gm.rows[..lo_len]);
        let (hi, hi_count) = table(&gm.rows[lo_len..]);
        Ok(DotTables { gfq, n: gm.len(), lo, hi, lo_count, hi_count })
    }

    /// Number of zero dot products of `(x_lo, x_hi)` with the columns.
    fn zeros(&self, x_lo: u64, x_hi: u64) -> usize {
        let a = &self.lo[x_lo as usize * self.n..(x_lo as usize + 1) * self.n];
        let b = &self.hi[x_hi as usize * self.n..(x_hi as usize + 1) * self.n];
        a.iter().zip(b).filter(|&(&x, &y)| self.gfq.add(x, y) == 0).count()
    }

    /// Histogram of zero counts over the vectors selected by `keep`.
    fn histogram(&self, parallel: bool, keep: impl Fn(u64, u64) -> bool + Sync) -> Vec<u64> {
        let n = self.n;
        let row = |x_hi: u64| -> Vec<u64> {
            let mut h = vec![0u64; n + 1];
            for x_lo in 0..self.lo_count {
                if keep(x_lo, x_hi) {
                    h[self.zeros(x_lo, x_hi)] += 1;
                }
            }
            h
        };
        let merge = |mut a: Vec<u64>, b: Vec<u64>| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        };
        if parallel {
            (0..self.hi_count).into_par_iter().map(row).reduce(|| vec![0; n + 1], merge)
        } else {
            (0..self.hi_count).map(row).fold(vec![0; n + 1], merge)
        }
    }
}

/// Exhaustive sweep over all `q^{N}` messages.
pub fn weight_enumerator(gfq: &Gfq, gm: &GeneratorMatrix, cap: u64, parallel: bool) -> Result<WeightEnumerator> {
    let t = DotTables::new(gfq, gm, cap, "weight enumeration")?;
    let zeros = t.histogram(parallel, |_, _| true);
    let n = gm.len();
    let weights: Vec<u64> = (0..=n).map(|w| zeros[n - w]).collect();
    Ok(Distribution::from_counts(&weights))
}

/// Intersection sizes with every hyperplane `x·y = 0`, `x` normalized.
pub fn hyperplane_profile(gfq: &Gfq, gm: &GeneratorMatrix, cap: u64, parallel: bool) -> Result<HyperplaneProfile> {
    let t = DotTables::new(gfq, gm, cap, "hyperplane enumeration")?;
    let q = gfq.order() as u64;
    let lead = |mut x: u64| -> Option<u64> {
        while x > 0 {
            if !x.is_multiple_of(q) {
                return Some(x % q);
            }
            x /= q;
        }
        None
    };
    // digit 0 of x_lo is coordinate 0, so the leading coordinate is the lowest nonzero digit
    let keep = |x_lo: u64, x_hi: u64| match lead(x_lo) {
        Some(c) => c == 1,
        None => lead(x_hi) == Some(1),
    };
    Ok(Distribution::from_counts(&t.histogram(parallel, keep)))
}

/// Checks a profile against the two closed-form intersection sizes.
pub fn check_hyperplanes(set: &ProjectiveSet, profile: &HyperplaneProfile) -> CheckResult {
    let want: BTreeSet<u64> = [set.claimed.h1, set.claimed.h2].into_iter().map(|h| h as u64).collect();
    let got: BTreeSet<u64> = profile.0.keys().copied().collect();
    let q = set.q as u64;
    let hyperplanes = (q.pow(set.dim as u32) - 1) / (q - 1);
    let mut bad = Vec::new();
    if got != want {
        bad.push(format!("intersection sizes {got:?}, expected {want:?}"));
    }
    if profile.total() != hyperplanes {
        bad.push(format!("{} hyperplanes counted, expected {hyperplanes}", profile.total()));
    }
    let summary = format!("{:?} over {hyperplanes} hyperplanes", profile.0);
    CheckResult::from_witnesses("hyperplanes", summary, bad)
}

/// Weights, the `w = n - h` correspondence, and the code-to-PDS identities against `expected`.
pub fn check_code_params(
    expected: &SrgParams,
    set: &ProjectiveSet,
    code: &CodeParams,
    weights: &WeightEnumerator,
    profile: Option<&HyperplaneProfile>,
) -> CheckResult {
    let q = set.q as i128;
    let n = set.len() as i128;
    let mut bad = Vec::new();
    if n != code.n || n != set.claimed.n {
        bad.push(format!("{n} points, expected {}", code.n));
    }
    let observed: Vec<i128> = weights.keys().into_iter().filter(|&w| w > 0).map(|w| w as i128).collect();
    if observed != code.nonzero_weights() {
        bad.push(format!("nonzero weights {observed:?}, expected {:?}", code.nonzero_weights()));
    }
    let total = (set.q as u64).pow(set.dim as u32);
    if weights.total() != total {
        bad.push(format!("{} messages, expected {total}", weights.total()));
    }
    if let Some(profile) = profile {
        // the q - 1 nonzero multiples of a dual vector give the same codeword weight
        for (&h, &count) in &profile.0 {
            let w = set.len() as u64 - h;
            let expect = if w == 0 { count * (set.q as u64 - 1) + 1 } else { count * (set.q as u64 - 1) };
            if weights.get(w) != expect {
                bad.push(format!("weight {w} occurs {} times, expected {expect}", weights.get(w)));
            }
        }
    }
    let (k, lambda, mu) = match params::two_weight_pds(q, code.n, code.w1, code.w2) {
        Ok(t) => t,
        Err(e) => {
            bad.push(e.to_string());
            (0, 0, 0)
        }
    };
    if (k, lambda, mu) != (expected.k, expected.lambda, expected.mu) {
        bad.push(format!("code gives ({k},{lambda},{mu}), set has {expected}"));
    }
    if expected.v != q.pow(set.dim as u32) {
        bad.push(format!("v = {} but the ambient space has {} vectors", expected.v, total));
    }
    let summary = format!("n={n}, weights {observed:?} give (k,lambda,mu) = ({k},{lambda},{mu})");
    CheckResult::from_witnesses("code-parameters", summary, bad)
}

/// Everything derived from one set through the code dictionary.
#[derive(Debug, Clone, Serialize)]
pub struct CodeReport {
    pub set: String,
    pub params: TowerParams,
    pub expected: SrgParams,
    pub projective: ProjectiveParams,
    pub code: CodeParams,
    pub length: usize,
    pub dimension: usize,
    pub rank: usize,
    pub weights: Option<WeightEnumerator>,
    pub hyperplanes: Option<HyperplaneProfile>,
    pub checks: Vec<CheckResult>,
}

impl CodeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != crate::verify::Status::Fail)
    }
}

/// The projective set, code, enumerator and profile of `d`, with their checks.
/// Enumerations above `cap` vectors are skipped.
pub fn analyze(tower: &Tower, d: &PdsSet, cap: u64, parallel: bool) -> Result<(ProjectiveSet, GeneratorMatrix, CodeReport)> {
    let coords = GfqCoordinates::new(tower)?;
    let gfq = Gfq::new(&tower.fq);
    let set = to_projective_set(tower, &coords, d)?;
    let gm = build_code(&set);
    let (_, code) = expected_geometry(d)?;
    let expected = d.provenance.expected_params(&d.params)?;
    let mut checks = Vec::new();

    let dep: Vec<String> = dependent_columns(&gfq, &gm).iter().map(|(i, j)| format!("columns {i} and {j}")).collect();
    checks.push(CheckResult::from_witnesses("projective", format!("{} pairwise independent columns", gm.len()), dep));

    let rk = rank(&tower.fq, &gm);
    let full = !d.degenerate();
    let bad = if full && rk != gm.dimension() {
        vec![format!("rank {rk} < {}", gm.dimension())]
    } else {
        vec![]
    };
    checks.push(CheckResult::from_witnesses("rank", format!("rank {rk} of {}", gm.dimension()), bad));

    let profile = match hyperplane_profile(&gfq, &gm, cap, parallel) {
        Ok(p) => {
            checks.push(check_hyperplanes(&set, &p));
            Some(p)
        }
        Err(e) if e.is_cap() => {
            checks.push(CheckResult::skipped("hyperplanes", e.to_string()));
            None
        }
        Err(e) => return Err(e),
    };
    let weights = match weight_enumerator(&gfq, &gm, cap, parallel) {
        Ok(w) => {
            checks.push(check_code_params(&expected, &set, &code, &w, profile.as_ref()));
            Some(w)
        }
        Err(e) if e.is_cap() => {
            checks.push(CheckResult::skipped("code-parameters", e.to_string()));
            None
        }
        Err(e) => return Err(e),
    };
    let report = CodeReport {
        set: d.provenance.label(),
        params: d.params,
        expected,
        projective: set.claimed,
        code,
        length: gm.len(),
        dimension: gm.dimension(),
        rank: rk,
        weights,
        hyperplanes: profile,
        checks,
    };
    Ok((set, gm, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_d, build_d_dual, complement, default_subspace, TowerShape};

    fn tower(p: u32, s: u32, m: u32, l: u32) -> Tower {
        Tower::new(TowerShape::new(p, s, m, l).unwrap()).unwrap()
    }

    #[test]
    fn coordinates_are_a_linear_bijection() {
        for &(p, s, m, l) in &[(2, 1, 1, 1), (3, 1, 1, 1), (2, 2, 1, 1)] {
            let t = tower(p, s, m, l);
            let c = GfqCoordinates::new(&t).unwrap();
            let gfq = Gfq::new(&t.fq);
            let all: Vec<(Elem, Elem)> = t.group_elements().collect();
            assert_eq!(c.coords(&t, (Elem::Zero, Elem::Zero)), vec![0; c.len()]);
            let mut seen = BTreeSet::new();
            for &x in &all {
                let v = c.coords(&t, x);
                assert_eq!(c.element(&t, &v).unwrap(), x);
                assert!(seen.insert(v.clone()));
                for cq in t.fq.elements() {
                    let sv: Vec<u32> = v.iter().map(|&d| gfq.mul(t.fq.to_packed(cq), d)).collect();
                    assert_eq!(c.coords(&t, t.scale(cq, x)), sv);
                }
                for &y in all.iter().step_by(5) {
                    let sum = (t.f1.add(x.0, y.0), t.f2.add(x.1, y.1));
                    let w: Vec<u32> = v.iter().zip(c.coords(&t, y)).map(|(&a, b)| gfq.add(a, b)).collect();
                    assert_eq!(c.coords(&t, sum), w);
                }
            }
        }
    }

    #[test]
    fn the_64_18_2_6_code() {
        let t = tower(2, 1, 2, 1);
        let d = build_d(&t, &default_subspace(&t, 1).unwrap()).unwrap();
        let (set, gm, rep) = analyze(&t, &d, 1 << 16, false).unwrap();
        assert_eq!(set.len(), 18);
        assert_eq!(gm.len(), 18);
        assert_eq!(rep.rank, 6);
        assert_eq!(rep.hyperplanes.as_ref().unwrap().keys(), vec![6, 10]);
        assert_eq!(rep.weights.as_ref().unwrap().keys(), vec![0, 8, 12]);
        assert!(rep.passed(), "{:?}", rep.checks);
    }

    #[test]
    fn ternary_instance_collapses_to_84_points() {
        let t = tower(3, 1, 2, 1);
        let d = build_d(&t, &default_subspace(&t, 1).unwrap()).unwrap();
        let coords = GfqCoordinates::new(&t).unwrap();
        let set = to_projective_set(&t, &coords, &d).unwrap();
        assert_eq!(set.len(), 84);
        assert!(set.points.windows(2).all(|w| w[0] < w[1]));
        assert!(set.points.iter().all(|p| p.iter().find(|&&c| c != 0) == Some(&1)));
    }

    #[test]
    fn all_families_pass_on_small_towers() {
        for &(p, s, m, l) in &[(2, 1, 2, 1), (3, 1, 2, 1), (2, 2, 2, 1), (2, 1, 3, 1)] {
            let t = tower(p, s, m, l);
            for r in 0..=m {
                let rs = default_subspace(&t, r).unwrap();
                let d = build_d(&t, &rs).unwrap();
                let dual = build_d_dual(&t, &rs).unwrap();
                let comp = complement(&t, &d).unwrap();
                for set in [&d, &dual, &comp] {
                    let (_, _, rep) = analyze(&t, set, 1 << 16, true).unwrap();
                    assert!(rep.passed(), "({p},{s},{m},{l}) r={r} {}: {:?}", set.provenance.label(), rep.checks);
                }
            }
        }
    }

    #[test]
    fn parallel_sweep_matches_serial() {
        let t = tower(3, 1, 2, 1);
        let d = build_d(&t, &default_subspace(&t, 1).unwrap()).unwrap();
        let set = to_projective_set(&t, &GfqCoordinates::new(&t).unwrap(), &d).unwrap();
        let gm = build_code(&set);
        let gfq = Gfq::new(&t.fq);
        assert_eq!(weight_enumerator(&gfq, &gm, 1 << 16, false).unwrap(), weight_enumerator(&gfq, &gm, 1 << 16, true).unwrap());
        assert_eq!(hyperplane_profile(&gfq, &gm, 1 << 16, false).unwrap(), hyperplane_profile(&gfq, &gm, 1 << 16, true).unwrap());
    }

    #[test]
    fn dot_tables_match_direct_products() {
        for (p, s) in [(3, 1), (2, 2)] {
            let t = tower(p, s, 1, 1);
            let gfq = Gfq::new(&t.fq);
            let q = gfq.order();
            let gm = GeneratorMatrix { q, rows: vec![vec![1, 0, 2, 1], vec![0, 1, 1, 2], vec![2, 2, 0, 1]] };
            let w = weight_enumerator(&gfq, &gm, 1 << 10, false).unwrap();
            let mut direct = BTreeMap::new();
            for x in 0..q * q * q {
                let v = [x % q, x / q % q, x / (q * q)];
                let wt = (0..4).filter(|&j| gfq.dot(&v, &gm.column(j)) != 0).count() as u64;
                *direct.entry(wt).or_insert(0) += 1;
            }
            assert_eq!(w.0, direct);
        }
    }

    #[test]
    fn unclosed_set_is_rejected() {
        let t = tower(3, 1, 1, 1);
        let mut d = build_d(&t, &default_subspace(&t, 1).unwrap()).unwrap();
        d.elements.remove(0);
        let err = to_projective_set(&t, &GfqCoordinates::new(&t).unwrap(), &d).unwrap_err();
        assert!(matches!(err, Error::NotScaleClosed(_)));
    }
}
