//! Integer indexing of G = GF(q^{mℓ}) × GF(q^{m(ℓ+1)}) as GF(p)^N.

use crate::construct::Tower;
use crate::ff::Elem;

/// Bijection between pairs `(a, b)` and `[0, v)`.
///
/// The index of `(a, b)` is `packed(a) + p^{n1} packed(b)`, where `packed`
/// reads the polynomial-basis coordinates as base-`p` digits. Group addition
/// is digit-wise addition mod `p`.
#[derive(Debug, Clone)]
pub struct GroupIndex {
    p: u32,
    digits: u32,
    v: u64,
    split: u64,
    g1: u32,
    g2: u32,
    pack1: Vec<u32>,
    pack2: Vec<u32>,
    dlog1: Vec<Elem>,
    dlog2: Vec<Elem>,
}

impl GroupIndex {
    pub fn new(tower: &Tower) -> Self {
        let (f1, f2) = (&tower.f1, &tower.f2);
        let pack1 = (0..f1.group_order()).map(|k| f1.to_packed(Elem::Pow(k))).collect();
        let pack2 = (0..f2.group_order()).map(|k| f2.to_packed(Elem::Pow(k))).collect();
        let dlog1 = (0..f1.order()).map(|v| f1.from_packed(v)).collect();
        let dlog2 = (0..f2.order()).map(|v| f2.from_packed(v)).collect();
        GroupIndex {
            p: tower.shape.p,
            digits: tower.shape.group_dim(),
            v: tower.shape.v(),
            split: f1.order() as u64,
            g1: f1.group_order(),
            g2: f2.group_order(),
            pack1,
            pack2,
            dlog1,
            dlog2,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Number of GF(p)-digits.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn order(&self) -> u64 {
        self.v
    }

    pub fn index(&self, (a, b): (Elem, Elem)) -> u64 {
        let pa = match a {
            Elem::Zero => 0,
            Elem::Pow(k) => self.pack1[(k % self.g1) as usize],
        };
        let pb = match b {
            Elem::Zero => 0,
            Elem::Pow(k) => self.pack2[(k % self.g2) as usize],
        };
        pa as u64 + self.split * pb as u64
    }

    pub fn element(&self, idx: u64) -> (Elem, Elem) {
        assert!(idx < self.v, "group index {idx} out of range");
        (self.dlog1[(idx % self.split) as usize], self.dlog2[(idx / self.split) as usize])
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        if self.p == 2 {
            return x ^ y;
        }
        self.combine(x, y, |a, b| (a + b) % self.p as u64)
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        if self.p == 2 {
            return x ^ y;
        }
        let p = self.p as u64;
        self.combine(x, y, |a, b| (a + p - b) % p)
    }

    pub fn neg(&self, x: u64) -> u64 {
        self.sub(0, x)
    }

    fn combine(&self, mut x: u64, mut y: u64, f: impl Fn(u64, u64) -> u64) -> u64 {
        let p = self.p as u64;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.digits {
            out += f(x % p, y % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    }

    /// Sorted indices of a list of pairs.
    pub fn indices(&self, elems: &[(Elem, Elem)]) -> Vec<u64> {
        let mut v: Vec<u64> = elems.iter().map(|&x| self.index(x)).collect();
        v.sort_unstable();
        v
    }

    /// Membership bitmap over `[0, v)`.
    pub fn bitmap(&self, elems: &[(Elem, Elem)]) -> Vec<bool> {
        let mut bits = vec![false; self.v as usize];
        for &x in elems {
            bits[self.index(x) as usize] = true;
        }
        bits
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::TowerShape;

    #[test]
    fn index_arithmetic_matches_group_law() {
        for &(p, s, m, l) in &[(2, 1, 1, 1), (3, 1, 1, 1), (2, 2, 1, 1)] {
            let t = Tower::new(TowerShape::new(p, s, m, l).unwrap()).unwrap();
            let g = GroupIndex::new(&t);
            let all: Vec<(Elem, Elem)> = t.group_elements().collect();
            assert_eq!(all.len() as u64, g.order());
            let mut seen = vec![false; g.order() as usize];
            for &x in &all {
                let i = g.index(x);
                assert!(!seen[i as usize]);
                seen[i as usize] = true;
                assert_eq!(g.element(i), x);
                assert_eq!(g.neg(i), g.index(t.neg(x)));
                for &y in all.iter().step_by(3) {
                    let sum = (t.f1.add(x.0, y.0), t.f2.add(x.1, y.1));
                    assert_eq!(g.add(i, g.index(y)), g.index(sum));
                    assert_eq!(g.sub(g.index(sum), g.index(y)), i);
                }
            }
        }
    }
}
