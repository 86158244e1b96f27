//! The field tower, the subspace `R`, and the two families of difference sets.

mod sets;
mod subspace;

pub use sets::{
    build_d, build_d_cosets, build_d_dual, complement, scale_defects, symmetry_defects, PdsSet, Provenance,
};
pub use subspace::{default_subspace, dual_subspace, index_set_t, Subspace};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, gcd, is_prime, mod_inverse};
use crate::error::{Error, Result};
use crate::ff::{Elem, FiniteField, SubfieldEmbedding, DEFAULT_TABLE_CAP};
use crate::params::{self, Family, SrgParams};

/// `(p, s, m, ℓ)`: `q = p^s`, fields GF(q^{mℓ}), GF(q^{m(ℓ+1)}) and GF(q^m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TowerShape {
    pub p: u32,
    pub s: u32,
    pub m: u32,
    pub l: u32,
}

impl fmt::Display for TowerShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, s={}, m={}, l={})", self.p, self.s, self.m, self.l)
    }
}

impl TowerShape {
    pub fn new(p: u32, s: u32, m: u32, l: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParams(format!("p = {p} is not prime")));
        }
        if s == 0 || m == 0 || l == 0 {
            return Err(Error::InvalidParams(format!(
                "s, m and l must be positive (s={s}, m={m}, l={l})"
            )));
        }
        let shape = TowerShape { p, s, m, l };
        if shape.checked_v().is_none() {
            return Err(Error::InvalidParams(format!("group order overflows for {shape}")));
        }
        Ok(shape)
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.s)
    }

    /// `e = (q^m - 1)/(q - 1)`
    pub fn e(&self) -> u64 {
        (self.q().pow(self.m) - 1) / (self.q() - 1)
    }

    /// Degrees over GF(p) of GF(q^{mℓ}), GF(q^{m(ℓ+1)}), GF(q^m).
    pub fn n1(&self) -> u32 {
        self.s * self.m * self.l
    }

    pub fn n2(&self) -> u32 {
        self.s * self.m * (self.l + 1)
    }

    pub fn nmid(&self) -> u32 {
        self.s * self.m
    }

    /// Dimension of the group over GF(p).
    pub fn group_dim(&self) -> u32 {
        self.n1() + self.n2()
    }

    /// Dimension of the group over GF(q), `m(2ℓ+1)`.
    pub fn gfq_dim(&self) -> u32 {
        self.m * (2 * self.l + 1)
    }

    fn checked_v(&self) -> Option<u64> {
        checked_pow(self.p as u64, self.s.checked_mul(self.m)?.checked_mul(2 * self.l + 1)?)
    }

    /// `v = q^{m(2ℓ+1)}`
    pub fn v(&self) -> u64 {
        self.checked_v().expect("validated at construction")
    }

    pub fn with_r(self, r: u32) -> Result<TowerParams> {
        if r > self.m {
            return Err(Error::InvalidParams(format!("r = {r} exceeds m = {}", self.m)));
        }
        Ok(TowerParams { shape: self, r })
    }
}

/// A tower shape together with `0 ≤ r ≤ m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TowerParams {
    #[serde(flatten)]
    pub shape: TowerShape,
    pub r: u32,
}

impl TowerParams {
    pub fn new(p: u32, s: u32, m: u32, l: u32, r: u32) -> Result<Self> {
        TowerShape::new(p, s, m, l)?.with_r(r)
    }

    pub fn degenerate(&self) -> bool {
        self.r == 0 || self.r == self.shape.m
    }

    pub fn expected(&self, family: Family) -> Result<SrgParams> {
        let sh = &self.shape;
        Ok(params::family_params(family, sh.q(), sh.m, sh.l, self.r)?)
    }
}

impl fmt::Display for TowerParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sh = &self.shape;
        write!(f, "(p={}, s={}, m={}, l={}, r={})", sh.p, sh.s, sh.m, sh.l, self.r)
    }
}

/// Primitive elements of the two big fields whose norms agree in GF(q^m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatiblePrimitives {
    /// Exponent of α with respect to the first big field's primitive element (always 1).
    pub alpha: u32,
    /// Exponent of β with respect to the second big field's primitive element.
    pub beta: u32,
    /// The adjustment exponent `d` with `β = β₀^d`.
    pub beta_adjust: u32,
    /// Exponent of γ with respect to the middle field's primitive element.
    pub gamma: u32,
}

/// All fields and embeddings of one tower shape.
#[derive(Debug)]
pub struct Tower {
    pub shape: TowerShape,
    pub f1: FiniteField,
    pub f2: FiniteField,
    pub fm: FiniteField,
    pub fq: FiniteField,
    pub emb_m1: SubfieldEmbedding,
    pub emb_m2: SubfieldEmbedding,
    pub emb_qm: SubfieldEmbedding,
    pub emb_q1: SubfieldEmbedding,
    pub emb_q2: SubfieldEmbedding,
    pub compat: CompatiblePrimitives,
    /// `norm1[i]`: exponent in GF(q^m) of the pulled-back norm of `α^i`, for `i < q^m - 1`
    norm1: Vec<u32>,
    norm2: Vec<u32>,
}

impl Tower {
    pub fn new(shape: TowerShape) -> Result<Self> {
        Self::with_cap(shape, DEFAULT_TABLE_CAP)
    }

    pub fn with_cap(shape: TowerShape, cap: u64) -> Result<Self> {
        let p = shape.p;
        let f1 = FiniteField::with_cap(p, shape.n1(), cap)?;
        let f2 = FiniteField::with_cap(p, shape.n2(), cap)?;
        let fm = FiniteField::with_cap(p, shape.nmid(), cap)?;
        let fq = FiniteField::with_cap(p, shape.s, cap)?;
        let emb_m1 = SubfieldEmbedding::new(&fm, &f1)?;
        let emb_m2 = SubfieldEmbedding::new(&fm, &f2)?;
        let emb_qm = SubfieldEmbedding::new(&fq, &fm)?;
        let emb_q1 = emb_qm.then(&emb_m1)?;
        let emb_q2 = emb_qm.then(&emb_m2)?;

        let gm = fm.group_order();
        let pull = |emb: &SubfieldEmbedding, f: &FiniteField, x: Elem| -> Result<u32> {
            let n = f.norm_to(x, shape.nmid())?;
            match emb.pullback(n) {
                Some(Elem::Pow(k)) => Ok(k),
                _ => Err(Error::Internal("norm does not lie in the middle field".into())),
            }
        };
        let gamma = pull(&emb_m1, &f1, f1.primitive())?;
        let c_raw = pull(&emb_m2, &f2, f2.primitive())?;
        // N(β₀) = γ^c
        let gamma_inv = mod_inverse(gamma as u64, gm as u64)
            .ok_or_else(|| Error::Internal("norm of α is not primitive".into()))?;
        let c = c_raw as u64 * gamma_inv % gm as u64;
        let c_inv = mod_inverse(c, gm as u64)
            .ok_or_else(|| Error::Internal("norm of β₀ is not primitive".into()))?;
        let g2 = f2.group_order() as u64;
        let mut d = if c_inv == 0 { gm as u64 } else { c_inv };
        while gcd(d, g2) != 1 {
            d += gm as u64;
            if d >= g2.max(2) {
                return Err(Error::Internal("no admissible adjustment exponent for β".into()));
            }
        }
        let beta = (d % g2.max(1)) as u32;
        let compat = CompatiblePrimitives { alpha: 1 % f1.group_order(), beta, beta_adjust: d as u32, gamma };

        let norm1 = (0..gm).map(|i| pull(&emb_m1, &f1, Elem::Pow(i))).collect::<Result<_>>()?;
        let norm2 = (0..gm).map(|i| pull(&emb_m2, &f2, Elem::Pow(i))).collect::<Result<_>>()?;

        let tower = Tower { shape, f1, f2, fm, fq, emb_m1, emb_m2, emb_qm, emb_q1, emb_q2, compat, norm1, norm2 };
        tower.check_compatibility()?;
        Ok(tower)
    }

    fn check_compatibility(&self) -> Result<()> {
        let g2 = self.f2.group_order() as u64;
        if gcd(self.compat.beta as u64, g2) != 1 && g2 > 1 {
            return Err(Error::Internal("β is not primitive".into()));
        }
        let na = self.norm_mid_1(self.alpha());
        let nb = self.norm_mid_2(self.beta());
        if na != nb || na != Elem::Pow(self.compat.gamma) {
            return Err(Error::Internal(format!("norms of α and β disagree: {na:?} vs {nb:?}")));
        }
        Ok(())
    }

    pub fn alpha(&self) -> Elem {
        Elem::Pow(self.compat.alpha)
    }

    pub fn beta(&self) -> Elem {
        Elem::Pow(self.compat.beta)
    }

    /// The middle-field primitive element compatible with α and β.
    pub fn gamma(&self) -> Elem {
        Elem::Pow(self.compat.gamma)
    }

    /// Norm of `a` from the first big field, as an element of GF(q^m).
    pub fn norm_mid_1(&self, a: Elem) -> Elem {
        self.norm_lookup(&self.norm1, a)
    }

    /// Norm of `b` from the second big field, as an element of GF(q^m).
    pub fn norm_mid_2(&self, b: Elem) -> Elem {
        self.norm_lookup(&self.norm2, b)
    }

    fn norm_lookup(&self, table: &[u32], x: Elem) -> Elem {
        match x {
            Elem::Zero => Elem::Zero,
            Elem::Pow(i) => Elem::Pow(table[(i % self.fm.group_order()) as usize]),
        }
    }

    /// `N(b)/N(a)` in GF(q^m), for `ab ≠ 0`.
    pub fn norm_ratio(&self, a: Elem, b: Elem) -> Elem {
        let na = self.norm_mid_1(a);
        let nb = self.norm_mid_2(b);
        self.fm.div(nb, na).expect("a is nonzero")
    }

    /// The scalar `c ∈ GF(q)` acting on a pair.
    pub fn scale(&self, c: Elem, (a, b): (Elem, Elem)) -> (Elem, Elem) {
        (self.f1.mul(self.emb_q1.apply(c), a), self.f2.mul(self.emb_q2.apply(c), b))
    }

    pub fn neg(&self, (a, b): (Elem, Elem)) -> (Elem, Elem) {
        (self.f1.neg(a), self.f2.neg(b))
    }

    /// Every group element, `(0,0)` first, in `(a, b)` order.
    pub fn group_elements(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.f1.elements().flat_map(move |a| self.f2.elements().map(move |b| (a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_derived_quantities() {
        let sh = TowerShape::new(2, 1, 2, 1).unwrap();
        assert_eq!((sh.q(), sh.e(), sh.v()), (2, 3, 64));
        assert_eq!((sh.n1(), sh.n2(), sh.nmid(), sh.group_dim()), (2, 4, 2, 6));
        let sh = TowerShape::new(3, 1, 2, 1).unwrap();
        assert_eq!((sh.e(), sh.v()), (4, 729));
        assert_eq!(sh.e() * (sh.q() - 1), sh.q().pow(sh.m) - 1);
        assert!(TowerShape::new(4, 1, 2, 1).is_err());
        assert!(TowerShape::new(2, 1, 0, 1).is_err());
        assert!(sh.with_r(3).is_err());
    }

    fn grid() -> Vec<TowerShape> {
        [(2, 1, 2, 1), (2, 1, 3, 1), (2, 1, 2, 2), (3, 1, 2, 1), (2, 2, 2, 1), (2, 1, 1, 1), (5, 1, 1, 2)]
            .iter()
            .map(|&(p, s, m, l)| TowerShape::new(p, s, m, l).unwrap())
            .collect()
    }

    fn order(f: &FiniteField, x: Elem) -> u32 {
        let mut y = x;
        let mut k = 1;
        while y != f.one() {
            y = f.mul(y, x);
            k += 1;
        }
        k
    }

    #[test]
    fn compatible_primitives_on_grid() {
        for sh in grid() {
            let t = Tower::new(sh).unwrap();
            assert_eq!(order(&t.f1, t.alpha()), t.f1.group_order(), "{sh}");
            assert_eq!(order(&t.f2, t.beta()), t.f2.group_order(), "{sh}");
            assert_eq!(order(&t.fm, t.gamma()), t.fm.group_order(), "{sh}");
            // the two norms pull back to the same middle-field element, computed afresh
            let na = t.f1.norm_to(t.alpha(), sh.nmid()).unwrap();
            let nb = t.f2.norm_to(t.beta(), sh.nmid()).unwrap();
            assert_eq!(t.emb_m1.pullback(na), t.emb_m2.pullback(nb));
            assert_eq!(t.emb_m1.pullback(na), Some(t.gamma()));
            assert_eq!(t.compat.beta as u64, t.compat.beta_adjust as u64 % t.f2.group_order() as u64);
        }
    }

    #[test]
    fn norm_to_prime_subfield_is_primitive() {
        for sh in grid() {
            let t = Tower::new(sh).unwrap();
            for (f, x) in [(&t.f1, t.alpha()), (&t.f2, t.beta()), (&t.fm, t.gamma())] {
                let n = f.norm_to(x, sh.s).unwrap();
                let gq = (sh.q() - 1) as u32;
                assert_eq!(order(f, n), gq.max(1), "{sh}");
            }
        }
    }

    #[test]
    fn scaling_is_consistent_across_both_fields() {
        let t = Tower::new(TowerShape::new(2, 2, 2, 1).unwrap()).unwrap();
        for c in t.fq.elements().skip(1) {
            let cm = t.emb_qm.apply(c);
            let c1 = t.emb_q1.apply(c);
            let c2 = t.emb_q2.apply(c);
            assert_eq!(t.emb_m1.apply(cm), c1);
            assert_eq!(t.emb_m2.apply(cm), c2);
            // N(ca)/N(a) = c^ℓ and N(cb)/N(b) = c^{ℓ+1}
            let a = t.alpha();
            let b = t.beta();
            let r1 = t.fm.div(t.norm_mid_1(t.f1.mul(c1, a)), t.norm_mid_1(a)).unwrap();
            let r2 = t.fm.div(t.norm_mid_2(t.f2.mul(c2, b)), t.norm_mid_2(b)).unwrap();
            assert_eq!(r1, cm);
            assert_eq!(r2, t.fm.mul(cm, cm));
        }
    }
}
