use super::{Elem, FiniteField};
use crate::arith::{gcd, mod_inverse};
use crate::error::FfError;

/// A ring embedding GF(p^d) -> GF(p^n), `d | n`.
///
/// Equal degrees give the identity. Otherwise the small field's polynomial
/// variable is sent to the root of its modulus
/// with the smallest exponent in the big field. On exponents the map is
/// multiplication by a fixed `multiplier = ratio * unit`, where
/// `ratio = (p^n - 1)/(p^d - 1)` and `unit` is coprime to `p^d - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfieldEmbedding {
    p: u32,
    small_degree: u32,
    big_degree: u32,
    small_group: u32,
    big_group: u32,
    multiplier: u32,
    ratio: u32,
    unit_inv: u32,
}

impl SubfieldEmbedding {
    pub fn new(small: &FiniteField, big: &FiniteField) -> Result<Self, FfError> {
        let not_sub = || FfError::NotASubfield {
            p: small.characteristic(),
            small: small.degree(),
            p2: big.characteristic(),
            big: big.degree(),
        };
        if small.characteristic() != big.characteristic() || !big.degree().is_multiple_of(small.degree()) {
            return Err(not_sub());
        }
        if small.degree() == big.degree() {
            let g = big.group_order();
            return Ok(SubfieldEmbedding {
                p: big.characteristic(),
                small_degree: big.degree(),
                big_degree: big.degree(),
                small_group: g,
                big_group: g,
                multiplier: 1 % g.max(1),
                ratio: 1,
                unit_inv: 1 % g.max(1),
            });
        }
        let eval = |coeffs: &[u32], at: Elem| {
            coeffs
                .iter()
                .rev()
                .fold(Elem::Zero, |acc, &c| big.add(big.mul(acc, at), big.from_prime(c)))
        };
        let modulus = small.modulus();
        // zero first: it is the root of the degree-one modulus `x`
        let root = big
            .elements()
            .find(|&x| eval(modulus, x).is_zero())
            .ok_or_else(|| FfError::Internal("small modulus has no root in big field".into()))?;
        let gen_coeffs = small.to_coeffs(small.primitive());
        let image = eval(&gen_coeffs, root);
        let multiplier = match image {
            Elem::Pow(t) => t,
            Elem::Zero => return Err(FfError::Internal("primitive element maps to zero".into())),
        };
        let small_group = small.group_order();
        let big_group = big.group_order();
        let ratio = big_group / small_group;
        if multiplier % ratio != 0 {
            return Err(FfError::Internal("embedded generator outside the subfield".into()));
        }
        let unit = multiplier / ratio;
        let unit_inv = mod_inverse(unit as u64, small_group as u64)
            .filter(|_| gcd(unit as u64, small_group as u64) == 1)
            .ok_or_else(|| FfError::Internal("embedded generator is not primitive".into()))?
            as u32;
        Ok(SubfieldEmbedding {
            p: small.characteristic(),
            small_degree: small.degree(),
            big_degree: big.degree(),
            small_group,
            big_group,
            multiplier,
            ratio,
            unit_inv,
        })
    }

    pub fn small_degree(&self) -> u32 {
        self.small_degree
    }

    pub fn big_degree(&self) -> u32 {
        self.big_degree
    }

    /// Exponent of the image of the small field's primitive element.
    pub fn multiplier(&self) -> u32 {
        self.multiplier
    }

    pub fn apply(&self, x: Elem) -> Elem {
        match x {
            Elem::Zero => Elem::Zero,
            Elem::Pow(i) => {
                Elem::Pow((i as u64 * self.multiplier as u64 % self.big_group as u64) as u32)
            }
        }
    }

    /// Inverse lookup: the small-field element mapping to `y`, if any.
    pub fn pullback(&self, y: Elem) -> Option<Elem> {
        match y {
            Elem::Zero => Some(Elem::Zero),
            Elem::Pow(j) if j % self.ratio == 0 => {
                let i = (j / self.ratio) as u64 * self.unit_inv as u64 % self.small_group as u64;
                Some(Elem::Pow(i as u32))
            }
            Elem::Pow(_) => None,
        }
    }

    /// `outer ∘ self`: small field of `self` into the big field of `outer`.
    pub fn then(&self, outer: &SubfieldEmbedding) -> Result<SubfieldEmbedding, FfError> {
        if self.p != outer.p || self.big_degree != outer.small_degree {
            return Err(FfError::NotASubfield {
                p: self.p,
                small: self.big_degree,
                p2: outer.p,
                big: outer.small_degree,
            });
        }
        let big_group = outer.big_group;
        let multiplier =
            (self.multiplier as u64 * outer.multiplier as u64 % big_group as u64) as u32;
        let ratio = big_group / self.small_group;
        let unit = multiplier / ratio;
        let unit_inv = mod_inverse(unit as u64, self.small_group as u64)
            .ok_or_else(|| FfError::Internal("composite embedding not injective".into()))?
            as u32;
        Ok(SubfieldEmbedding {
            p: self.p,
            small_degree: self.small_degree,
            big_degree: outer.big_degree,
            small_group: self.small_group,
            big_group,
            multiplier,
            ratio,
            unit_inv,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_homomorphism(small: &FiniteField, big: &FiniteField, e: &SubfieldEmbedding) {
        let all: Vec<Elem> = small.elements().collect();
        for &u in &all {
            assert_eq!(e.pullback(e.apply(u)), Some(u));
            for &v in &all {
                assert_eq!(e.apply(small.add(u, v)), big.add(e.apply(u), e.apply(v)));
                assert_eq!(e.apply(small.mul(u, v)), big.mul(e.apply(u), e.apply(v)));
            }
        }
    }

    #[test]
    fn identity_embedding() {
        let f = FiniteField::new(2, 3).unwrap();
        let e = SubfieldEmbedding::new(&f, &f).unwrap();
        for x in f.elements() {
            assert_eq!(e.apply(x), x);
        }
    }

    #[test]
    fn gf4_into_gf16_image_is_fixed_set() {
        let small = FiniteField::new(2, 2).unwrap();
        let big = FiniteField::new(2, 4).unwrap();
        let e = SubfieldEmbedding::new(&small, &big).unwrap();
        let mut image: Vec<Elem> = small.elements().map(|x| e.apply(x)).collect();
        image.sort();
        let mut fixed: Vec<Elem> = big.elements().filter(|&x| big.frobenius(x, 2) == x).collect();
        fixed.sort();
        assert_eq!(image, fixed);
        assert_eq!(fixed.len(), 4);
        check_homomorphism(&small, &big, &e);
    }

    #[test]
    fn gf9_into_gf81_homomorphism() {
        let small = FiniteField::new(3, 2).unwrap();
        let big = FiniteField::new(3, 4).unwrap();
        let e = SubfieldEmbedding::new(&small, &big).unwrap();
        check_homomorphism(&small, &big, &e);
        let non_image = big.elements().filter(|&y| e.pullback(y).is_none()).count();
        assert_eq!(non_image, 81 - 9);
    }

    #[test]
    fn composite_embedding_is_homomorphism() {
        let a = FiniteField::new(2, 2).unwrap();
        let b = FiniteField::new(2, 4).unwrap();
        let c = FiniteField::new(2, 8).unwrap();
        let ab = SubfieldEmbedding::new(&a, &b).unwrap();
        let bc = SubfieldEmbedding::new(&b, &c).unwrap();
        let ac = ab.then(&bc).unwrap();
        check_homomorphism(&a, &c, &ac);
        for x in a.elements() {
            assert_eq!(ac.apply(x), bc.apply(ab.apply(x)));
        }
    }

    #[test]
    fn rejects_non_subfield() {
        let a = FiniteField::new(2, 3).unwrap();
        let b = FiniteField::new(2, 4).unwrap();
        assert!(matches!(SubfieldEmbedding::new(&a, &b), Err(FfError::NotASubfield { .. })));
        let c = FiniteField::new(3, 2).unwrap();
        assert!(SubfieldEmbedding::new(&c, &b).is_err());
    }
}
