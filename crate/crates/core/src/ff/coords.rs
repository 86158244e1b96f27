use super::{Elem, FiniteField};
use crate::error::FfError;
use crate::linalg::{self, PrimeField};

/// Coordinates of GF(p^n) over its subfield GF(p^d) in the power basis
/// `{1, π, ..., π^(n/d - 1)}` of a generator `π`.
///
/// Coordinates are subfield elements expressed inside the big field.
#[derive(Debug, Clone)]
pub struct SubfieldCoordinates {
    d: u32,
    len: usize,
    generator: Elem,
    /// θ^j for j < d, θ the subfield's primitive element
    theta_powers: Vec<Elem>,
    /// inverse of the GF(p) matrix whose column i*d + j is θ^j π^i
    basis_inv: Vec<Vec<u32>>,
}

impl SubfieldCoordinates {
    /// Power basis of the field's own primitive element.
    pub fn primitive_basis(field: &FiniteField, d: u32) -> Result<Self, FfError> {
        Self::new(field, d, field.primitive())
    }

    pub fn new(field: &FiniteField, d: u32, generator: Elem) -> Result<Self, FfError> {
        let n = field.degree();
        if d == 0 || !n.is_multiple_of(d) {
            return Err(FfError::NotADivisor { degree: n, target: d });
        }
        let len = (n / d) as usize;
        let theta = field.subfield_generator(d)?;
        let theta_powers: Vec<Elem> =
            (0..d as i64).map(|j| field.pow(theta, j)).collect::<Result<_, _>>()?;
        let mut cols = Vec::with_capacity(n as usize);
        for i in 0..len {
            let pi_i = field.pow(generator, i as i64)?;
            for &t in &theta_powers {
                cols.push(field.to_coeffs(field.mul(t, pi_i)));
            }
        }
        // transpose columns into rows
        let m: Vec<Vec<u32>> =
            (0..n as usize).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let basis_inv = linalg::inverse(&PrimeField(field.characteristic()), &m).ok_or_else(|| {
            FfError::Internal(format!("powers of {generator:?} do not form a basis"))
        })?;
        Ok(SubfieldCoordinates { d, len, generator, theta_powers, basis_inv })
    }

    pub fn base_degree(&self) -> u32 {
        self.d
    }

    /// Number of coordinates, `n / d`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn to_coords(&self, field: &FiniteField, x: Elem) -> Vec<Elem> {
        let a = linalg::mat_vec(&PrimeField(field.characteristic()), &self.basis_inv, &field.to_coeffs(x));
        a.chunks(self.d as usize)
            .map(|chunk| {
                chunk.iter().zip(&self.theta_powers).fold(Elem::Zero, |acc, (&c, &t)| {
                    field.add(acc, field.mul(field.from_prime(c), t))
                })
            })
            .collect()
    }

    pub fn from_coords(&self, field: &FiniteField, coords: &[Elem]) -> Result<Elem, FfError> {
        if coords.len() != self.len {
            return Err(FfError::BadCoordinates { got: coords.len(), expected: self.len });
        }
        let mut acc = Elem::Zero;
        let mut pw = field.one();
        for &c in coords {
            if !field.in_subfield(c, self.d)? {
                return Err(FfError::Internal(format!("coordinate {c:?} not in GF(p^{})", self.d)));
            }
            acc = field.add(acc, field.mul(c, pw));
            pw = field.mul(pw, self.generator);
        }
        Ok(acc)
    }
}
