//! Dense polynomials over GF(p), coefficients stored low degree first.
//!
//! Only what the modulus and primitive-element searches need: reduction,
//! modular multiplication and powering, and gcd.

use crate::arith::{is_prime, mod_inverse, prime_divisors};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Fp(pub u32);

impl Fp {
    fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }
    fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.0 - b) % self.0
    }
    fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
    fn inv(self, a: u32) -> u32 {
        mod_inverse(a as u64, self.0 as u64).expect("nonzero residue mod prime") as u32
    }
}

pub(crate) fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo `f` (f nonzero).
pub(crate) fn rem(fp: Fp, a: &[u32], f: &[u32]) -> Vec<u32> {
    let df = degree(f).expect("nonzero modulus");
    let lead_inv = fp.inv(f[df]);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let c = fp.mul(r[dr], lead_inv);
        let shift = dr - df;
        for (i, &fc) in f.iter().enumerate().take(df + 1) {
            r[i + shift] = fp.sub(r[i + shift], fp.mul(c, fc));
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul_mod(fp: Fp, a: &[u32], b: &[u32], f: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = fp.add(prod[i + j], fp.mul(x, y));
        }
    }
    rem(fp, &prod, f)
}

pub(crate) fn pow_mod(fp: Fp, base: &[u32], mut exp: u64, f: &[u32]) -> Vec<u32> {
    let mut acc = rem(fp, &[1], f);
    let mut b = rem(fp, base, f);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(fp, &acc, &b, f);
        }
        b = mul_mod(fp, &b, &b, f);
        exp >>= 1;
    }
    acc
}

fn sub_poly(fp: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| fp.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub(crate) fn gcd(fp: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(fp, &x, &y);
        x = y;
        y = r;
    }
    x
}

/// Rabin's test: `f` of degree n is irreducible iff x^(p^n) = x mod f and
/// gcd(x^(p^(n/r)) - x, f) = 1 for every prime r dividing n.
pub(crate) fn is_irreducible(p: u32, f: &[u32]) -> bool {
    debug_assert!(is_prime(p as u64));
    let fp = Fp(p);
    let n = match degree(f) {
        Some(0) | None => return false,
        Some(d) => d,
    };
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![rem(fp, &x, f)];
    for k in 1..=n {
        let next = pow_mod(fp, &frob[k - 1], p as u64, f);
        frob.push(next);
    }
    if trim(frob[n].clone()) != rem(fp, &x, f) {
        return false;
    }
    for r in prime_divisors(n as u64) {
        let h = sub_poly(fp, &frob[n / r as usize], &x);
        let g = gcd(fp, &h, f);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// True when `g` has multiplicative order `p^n - 1` modulo the irreducible `f`.
pub(crate) fn is_generator(p: u32, g: &[u32], f: &[u32], group_order: u64) -> bool {
    let fp = Fp(p);
    let g = rem(fp, g, f);
    if g.is_empty() {
        return false;
    }
    let one = rem(fp, &[1], f);
    if pow_mod(fp, &g, group_order, f) != one {
        return false;
    }
    prime_divisors(group_order)
        .into_iter()
        .all(|r| pow_mod(fp, &g, group_order / r, f) != one)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Exhaustive trial division, independent of Rabin's test.
    fn irreducible_by_trial(p: u32, f: &[u32]) -> bool {
        let fp = Fp(p);
        let n = degree(f).unwrap();
        for d in 1..=n / 2 {
            let count = (p as usize).pow(d as u32);
            for code in 0..count {
                let mut g = vec![0u32; d + 1];
                let mut c = code;
                for coeff in g.iter_mut().take(d) {
                    *coeff = (c % p as usize) as u32;
                    c /= p as usize;
                }
                g[d] = 1;
                if rem(fp, f, &g).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_matches_trial_division() {
        for &(p, n) in &[(2u32, 2usize), (2, 3), (2, 4), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)] {
            let count = (p as usize).pow(n as u32);
            for code in 0..count {
                let mut f = vec![0u32; n + 1];
                let mut c = code;
                for coeff in f.iter_mut().take(n) {
                    *coeff = (c % p as usize) as u32;
                    c /= p as usize;
                }
                f[n] = 1;
                assert_eq!(is_irreducible(p, &f), irreducible_by_trial(p, &f), "p={p} f={f:?}");
            }
        }
    }

    #[test]
    fn unique_binary_quadratic() {
        let irr: Vec<Vec<u32>> = [[0, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 1]]
            .iter()
            .filter(|f| is_irreducible(2, &f[..]))
            .map(|f| f.to_vec())
            .collect();
        assert_eq!(irr, vec![vec![1, 1, 1]]);
    }
}
