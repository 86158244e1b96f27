use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::subspace::{dual_subspace, index_set_t};
use super::{Subspace, Tower, TowerParams};
use crate::error::{Error, Result};
use crate::ff::Elem;
use crate::params::{self, Family, SrgParams};

/// How a set was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Norm-ratio form of the primal family.
    Primal,
    /// Cyclotomic-coset form of the primal family.
    PrimalCosets,
    /// Norm-ratio form of the dual family.
    Dual,
    Complement { of: Box<Provenance> },
    DelsarteDual { of: Box<Provenance> },
}

impl Provenance {
    /// The family whose clique structure the set carries.
    pub fn family(&self) -> Family {
        match self {
            Provenance::Primal | Provenance::PrimalCosets => Family::Primal,
            Provenance::Dual => Family::Dual,
            Provenance::Complement { of } | Provenance::DelsarteDual { of } => match of.family() {
                Family::Primal => Family::Dual,
                Family::Dual => Family::Primal,
            },
        }
    }

    /// Parameters predicted by the closed forms, never by a stored claim.
    pub fn expected_params(&self, tp: &TowerParams) -> Result<SrgParams> {
        Ok(match self {
            Provenance::Primal | Provenance::PrimalCosets => tp.expected(Family::Primal)?,
            Provenance::Dual => tp.expected(Family::Dual)?,
            Provenance::Complement { of } => params::complement_params(&of.expected_params(tp)?),
            Provenance::DelsarteDual { of } => params::delsarte_dual_params(&of.expected_params(tp)?)?,
        })
    }

    /// True for the two direct constructions of the primal family.
    pub fn is_primal_construction(&self) -> bool {
        matches!(self, Provenance::Primal | Provenance::PrimalCosets)
    }

    pub fn label(&self) -> String {
        match self {
            Provenance::Primal => "primal".into(),
            Provenance::PrimalCosets => "primal-cosets".into(),
            Provenance::Dual => "dual".into(),
            Provenance::Complement { of } => format!("complement({})", of.label()),
            Provenance::DelsarteDual { of } => format!("delsarte-dual({})", of.label()),
        }
    }
}

/// A subset of GF(q^{mℓ}) × GF(q^{m(ℓ+1)}) with its provenance and claimed parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdsSet {
    pub params: TowerParams,
    pub provenance: Provenance,
    pub claimed: SrgParams,
    /// Sorted, duplicate free.
    pub elements: Vec<(Elem, Elem)>,
    /// The subspace `R` (of dimension `r`) the set was built from.
    pub subspace: Subspace,
}

impl PdsSet {
    pub fn new(
        params: TowerParams,
        provenance: Provenance,
        claimed: SrgParams,
        mut elements: Vec<(Elem, Elem)>,
        subspace: Subspace,
    ) -> Self {
        elements.sort_unstable();
        elements.dedup();
        PdsSet { params, provenance, claimed, elements, subspace }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: (Elem, Elem)) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn degenerate(&self) -> bool {
        self.params.degenerate()
    }

    /// Same elements, regardless of provenance and claim.
    pub fn same_elements(&self, other: &PdsSet) -> bool {
        self.elements == other.elements
    }
}

fn check_r(tower: &Tower, tp: &TowerParams, rsub: &Subspace) -> Result<()> {
    if tp.shape != tower.shape {
        return Err(Error::InvalidParams(format!("params {tp} do not match tower {}", tower.shape)));
    }
    if rsub.dim != tp.r {
        return Err(Error::InvalidParams(format!(
            "subspace has dimension {}, but r = {}",
            rsub.dim, tp.r
        )));
    }
    Ok(())
}

/// `{(a,b) : ab ≠ 0, N(b)/N(a) ∈ R*} ∪ (GF(q^{mℓ})* × {0})`
pub fn build_d(tower: &Tower, rsub: &Subspace) -> Result<PdsSet> {
    let tp = tower.shape.with_r(rsub.dim)?;
    check_r(tower, &tp, rsub)?;
    let mut out = Vec::new();
    for a in tower.f1.elements().skip(1) {
        out.push((a, Elem::Zero));
        for b in tower.f2.elements().skip(1) {
            if rsub.contains(tower.norm_ratio(a, b)) {
                out.push((a, b));
            }
        }
    }
    let claimed = tp.expected(Family::Primal)?;
    Ok(PdsSet::new(tp, Provenance::Primal, claimed, out, rsub.clone()))
}

/// The same set as a union of products of cyclotomic classes:
/// `⋃_i C_i × ⋃_{t∈T} C_{i+t} ∪ (GF(q^{mℓ})* × {0})`, with `C_i = α^i⟨α^e⟩`, `β^i⟨β^e⟩`.
pub fn build_d_cosets(tower: &Tower, rsub: &Subspace) -> Result<PdsSet> {
    let tp = tower.shape.with_r(rsub.dim)?;
    check_r(tower, &tp, rsub)?;
    let t_set = index_set_t(tower, rsub);
    let e = tower.shape.e();
    let g1 = tower.f1.group_order() as u64;
    let g2 = tower.f2.group_order() as u64;
    let (alpha, beta) = (tower.compat.alpha as u64, tower.compat.beta as u64);
    let mut out = Vec::new();
    for x in 0..g1 {
        // α^x lies in C_{x mod e}
        let a = Elem::Pow((x * alpha % g1) as u32);
        out.push((a, Elem::Zero));
        for &t in &t_set {
            let class = (x + t as u64) % e;
            let mut y = class;
            while y < g2 {
                out.push((a, Elem::Pow((y * beta % g2) as u32)));
                y += e;
            }
        }
    }
    let claimed = tp.expected(Family::Primal)?;
    Ok(PdsSet::new(tp, Provenance::PrimalCosets, claimed, out, rsub.clone()))
}

/// `{(a,b) : ab ≠ 0, N(b)/N(a) ∉ R^⊥} ∪ ({0} × GF(q^{m(ℓ+1)})*)`
pub fn build_d_dual(tower: &Tower, rsub: &Subspace) -> Result<PdsSet> {
    let tp = tower.shape.with_r(rsub.dim)?;
    check_r(tower, &tp, rsub)?;
    let perp = dual_subspace(tower, rsub)?;
    let mut out = Vec::new();
    for b in tower.f2.elements().skip(1) {
        out.push((Elem::Zero, b));
    }
    for a in tower.f1.elements().skip(1) {
        for b in tower.f2.elements().skip(1) {
            if !perp.contains(tower.norm_ratio(a, b)) {
                out.push((a, b));
            }
        }
    }
    let claimed = tp.expected(Family::Dual)?;
    Ok(PdsSet::new(tp, Provenance::Dual, claimed, out, rsub.clone()))
}

/// `G \ (D ∪ {0})`
pub fn complement(tower: &Tower, d: &PdsSet) -> Result<PdsSet> {
    if d.params.shape != tower.shape {
        return Err(Error::InvalidParams("set and tower differ".into()));
    }
    let out: Vec<(Elem, Elem)> =
        tower.group_elements().skip(1).filter(|&x| !d.contains(x)).collect();
    let provenance = match &d.provenance {
        Provenance::Complement { of } => (**of).clone(),
        other => Provenance::Complement { of: Box::new(other.clone()) },
    };
    Ok(PdsSet::new(d.params, provenance, params::complement_params(&d.claimed), out, d.subspace.clone()))
}

/// Elements of `d` not fixed by negation, and whether `(0,0)` is present.
pub fn symmetry_defects(tower: &Tower, d: &PdsSet) -> (bool, Vec<(Elem, Elem)>) {
    let has_zero = d.contains((Elem::Zero, Elem::Zero));
    let asym = d.elements.iter().copied().filter(|&x| !d.contains(tower.neg(x))).collect();
    (has_zero, asym)
}

/// Elements whose GF(q)*-multiples leave `d`.
pub fn scale_defects(tower: &Tower, d: &PdsSet) -> Vec<(Elem, Elem)> {
    let members: HashSet<(Elem, Elem)> = d.elements.iter().copied().collect();
    let scalars: Vec<Elem> = tower.fq.elements().skip(1).collect();
    d.elements
        .iter()
        .copied()
        .filter(|&x| scalars.iter().any(|&c| !members.contains(&tower.scale(c, x))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::subspace::default_subspace;
    use crate::construct::TowerShape;

    fn tower(p: u32, s: u32, m: u32, l: u32) -> Tower {
        Tower::new(TowerShape::new(p, s, m, l).unwrap()).unwrap()
    }

    #[test]
    fn spot_sizes() {
        let t = tower(2, 1, 2, 1);
        let r1 = default_subspace(&t, 1).unwrap();
        assert_eq!(build_d(&t, &r1).unwrap().len(), 18);
        assert_eq!(build_d_dual(&t, &r1).unwrap().len(), 45);
        let r0 = default_subspace(&t, 0).unwrap();
        let d0 = build_d(&t, &r0).unwrap();
        assert_eq!(d0.len(), 3);
        assert!(d0.elements.iter().all(|&(a, b)| !a.is_zero() && b.is_zero()));
        assert!(d0.degenerate());
        let t3 = tower(3, 1, 2, 1);
        let d = build_d(&t3, &default_subspace(&t3, 1).unwrap()).unwrap();
        assert_eq!((d.len(), t3.shape.v()), (168, 729));
    }

    #[test]
    fn cosets_agree_with_norm_ratio_form() {
        for &(p, s, m, l) in &[(2, 1, 2, 1), (2, 1, 3, 1), (3, 1, 2, 1), (2, 2, 2, 1), (5, 1, 1, 1)] {
            let t = tower(p, s, m, l);
            for r in 0..=m {
                let rs = default_subspace(&t, r).unwrap();
                let d = build_d(&t, &rs).unwrap();
                let dc = build_d_cosets(&t, &rs).unwrap();
                assert!(d.same_elements(&dc), "({p},{s},{m},{l},{r})");
                assert_eq!(d.len() as i128, d.claimed.k);
            }
        }
    }

    #[test]
    fn dual_is_complement_at_m_minus_r() {
        for &(p, s, m, l) in &[(2, 1, 2, 1), (2, 1, 3, 1), (3, 1, 2, 1), (2, 2, 2, 1)] {
            let t = tower(p, s, m, l);
            for r in 0..=m {
                let rs = default_subspace(&t, r).unwrap();
                let dual = build_d_dual(&t, &rs).unwrap();
                assert_eq!(dual.len() as i128, dual.claimed.k);
                let perp = dual_subspace(&t, &rs).unwrap();
                let c = complement(&t, &build_d(&t, &perp).unwrap()).unwrap();
                assert!(c.same_elements(&dual));
                assert_eq!(c.claimed, dual.claimed);
            }
        }
    }

    #[test]
    fn symmetric_scale_closed_and_coordinate_free() {
        let t = tower(2, 2, 2, 1);
        for r in 0..=2 {
            let rs = default_subspace(&t, r).unwrap();
            for d in [build_d(&t, &rs).unwrap(), build_d_dual(&t, &rs).unwrap()] {
                let (zero, asym) = symmetry_defects(&t, &d);
                assert!(!zero && asym.is_empty());
                assert!(scale_defects(&t, &d).is_empty());
                // primal avoids {0} × F*, dual avoids F* × {0}
                match d.provenance.family() {
                    Family::Primal => assert!(d.elements.iter().all(|&(a, _)| !a.is_zero())),
                    Family::Dual => assert!(d.elements.iter().all(|&(_, b)| !b.is_zero())),
                }
            }
        }
    }

    #[test]
    fn same_r_from_another_basis_gives_same_set() {
        let t = tower(2, 1, 3, 1);
        let a = Subspace::from_gamma_exponents(&t, &[0, 1]).unwrap();
        let sum = t.fm.add(Elem::Pow(0), Elem::Pow(1));
        let b = Subspace::span(&t, &[sum, Elem::Pow(1)]).unwrap();
        assert_eq!(a.elements, b.elements);
        assert!(build_d(&t, &a).unwrap().same_elements(&build_d(&t, &b).unwrap()));
    }

    #[test]
    fn complement_is_an_involution() {
        let t = tower(2, 1, 2, 1);
        let d = build_d(&t, &default_subspace(&t, 1).unwrap()).unwrap();
        let c = complement(&t, &d).unwrap();
        assert_eq!(c.len() as u64, t.shape.v() - 18 - 1);
        assert_eq!(c.claimed, SrgParams::new(64, 45, 32, 30));
        let cc = complement(&t, &c).unwrap();
        assert_eq!(cc, d);
    }
}
