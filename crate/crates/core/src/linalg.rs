//! Gaussian elimination over a finite field.

use std::fmt::Debug;

use crate::ff::{Elem, FiniteField};

/// Scalar arithmetic needed by elimination.
pub trait Scalars {
    type S: Copy + Eq + Debug;
    fn zero(&self) -> Self::S;
    fn one(&self) -> Self::S;
    fn add(&self, a: Self::S, b: Self::S) -> Self::S;
    fn sub(&self, a: Self::S, b: Self::S) -> Self::S;
    fn mul(&self, a: Self::S, b: Self::S) -> Self::S;
    /// Inverse of a nonzero scalar.
    fn inv(&self, a: Self::S) -> Self::S;
}

/// Residues modulo a prime.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField(pub u32);

impl Scalars for PrimeField {
    type S = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        crate::arith::mod_inverse(a as u64, self.0 as u64).expect("invertible") as u32
    }
}

impl Scalars for FiniteField {
    type S = Elem;
    fn zero(&self) -> Elem {
        Elem::Zero
    }
    fn one(&self) -> Elem {
        FiniteField::one(self)
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        FiniteField::add(self, a, b)
    }
    fn sub(&self, a: Elem, b: Elem) -> Elem {
        FiniteField::sub(self, a, b)
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        FiniteField::mul(self, a, b)
    }
    fn inv(&self, a: Elem) -> Elem {
        FiniteField::inv(self, a).expect("invertible")
    }
}

/// Brings `rows` to reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<F: Scalars>(f: &F, rows: &mut [Vec<F::S>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != f.zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == f.zero() {
                continue;
            }
            let factor = row[c];
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, pv));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Scalars>(f: &F, rows: &[Vec<F::S>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(f, &mut m).len()
}

/// Basis of `{x : A x = 0}` for the `rows x ncols` matrix `A`.
pub fn kernel<F: Scalars>(f: &F, rows: &[Vec<F::S>], ncols: usize) -> Vec<Vec<F::S>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(f, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); ncols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(f.zero(), m[r][fc]);
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<F: Scalars>(f: &F, a: &[Vec<F::S>]) -> Option<Vec<Vec<F::S>>> {
    let n = a.len();
    let mut aug: Vec<Vec<F::S>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec<F: Scalars>(f: &F, a: &[Vec<F::S>], x: &[F::S]) -> Vec<F::S> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(f.zero(), |acc, (&r, &v)| f.add(acc, f.mul(r, v)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = PrimeField(3);
        let a = vec![vec![1, 2, 0, 1], vec![2, 1, 1, 0], vec![0, 0, 1, 1]];
        let k = kernel(&f, &a, 4);
        assert_eq!(k.len(), 4 - rank(&f, &a));
        for v in &k {
            assert!(mat_vec(&f, &a, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_over_gf4() {
        let f = FiniteField::new(2, 2).unwrap();
        let w = f.primitive();
        let a = vec![vec![f.one(), w], vec![w, f.one()]];
        let inv = inverse(&f, &a).unwrap();
        for (i, row) in a.iter().enumerate() {
            for j in 0..2 {
                let col: Vec<Elem> = inv.iter().map(|r| r[j]).collect();
                let dot = mat_vec(&f, std::slice::from_ref(row), &col)[0];
                assert_eq!(dot, if i == j { f.one() } else { Elem::Zero });
            }
        }
        let singular = vec![vec![f.one(), w], vec![w, f.mul(w, w)]];
        assert!(inverse(&f, &singular).is_none());
    }
}
