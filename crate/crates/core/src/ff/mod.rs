//! Fully tabulated finite fields GF(p^n).
//!
//! Every field is built from a deterministic model: the modulus is the
//! lexicographically smallest monic irreducible polynomial of degree `n`
//! (coefficients compared from the constant term upward) and the primitive
//! element is the generator with the lexicographically smallest coefficient
//! vector under the same order. Nonzero elements are stored as discrete
//! logarithms, so multiplication, norms and cyclotomic classes are exponent
//! arithmetic; addition goes through a Zech logarithm table.

mod coords;
mod embed;
pub(crate) mod poly;

pub use coords::SubfieldCoordinates;
pub use embed::SubfieldEmbedding;

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, is_prime};
use crate::error::FfError;

/// Default upper bound on the number of field elements a table may hold.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 22;

const NONE: u32 = u32::MAX;

/// An element of a tabulated field: zero, or a power of the primitive element.
///
/// The exponent of `Pow` is always reduced modulo `p^n - 1`. The derived
/// order puts `Zero` first and then sorts by exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Zero,
    Pow(u32),
}

impl Elem {
    pub fn is_zero(self) -> bool {
        matches!(self, Elem::Zero)
    }

    /// Exponent with `-1` standing for zero (the serialized form).
    pub fn exponent_or_neg(self) -> i64 {
        match self {
            Elem::Zero => -1,
            Elem::Pow(k) => k as i64,
        }
    }
}

/// Reproducible description of a field model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub n: u32,
    /// Monic modulus, constant term first, length `n + 1`.
    pub modulus: Vec<u32>,
    /// Coefficients of the primitive element, constant term first.
    pub primitive: Vec<u32>,
}

#[derive(Debug)]
pub struct FiniteField {
    p: u32,
    n: u32,
    order: u32,
    modulus: Vec<u32>,
    primitive_packed: u32,
    /// exponent -> packed coefficient vector
    antilog: Vec<u32>,
    /// packed coefficient vector -> exponent (`NONE` at 0)
    dlog: Vec<u32>,
    /// k -> log(1 + g^k), `NONE` when 1 + g^k = 0
    zech: Vec<u32>,
    neg_one: u32,
}

impl FiniteField {
    pub fn new(p: u32, n: u32) -> Result<Self, FfError> {
        Self::with_cap(p, n, DEFAULT_TABLE_CAP)
    }

    pub fn with_cap(p: u32, n: u32, cap: u64) -> Result<Self, FfError> {
        if !is_prime(p as u64) {
            return Err(FfError::NonPrime(p));
        }
        if n == 0 {
            return Err(FfError::ZeroDegree);
        }
        let size = checked_pow(p as u64, n).unwrap_or(u64::MAX);
        if size > cap || size > u32::MAX as u64 / 2 {
            return Err(FfError::TableCapExceeded { size, cap });
        }
        let order = size as u32;
        let group = order - 1;

        let modulus = smallest_irreducible(p, n)?;
        let primitive_packed = smallest_generator(p, n, &modulus, group as u64)?;

        let mut field = FiniteField {
            p,
            n,
            order,
            modulus,
            primitive_packed,
            antilog: Vec::new(),
            dlog: Vec::new(),
            zech: Vec::new(),
            neg_one: 0,
        };
        field.build_tables()?;
        Ok(field)
    }

    fn build_tables(&mut self) -> Result<(), FfError> {
        let (p, n) = (self.p, self.n as usize);
        let group = self.order - 1;
        // rows[i] = digits of x^i * g mod f
        let g = unpack(p, n, self.primitive_packed);
        let fp = poly::Fp(p);
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut xi = vec![0u32; i + 1];
                xi[i] = 1;
                let prod = poly::mul_mod(fp, &xi, &g, &self.modulus);
                let mut d = prod;
                d.resize(n, 0);
                d
            })
            .collect();

        let mut antilog = Vec::with_capacity(group as usize);
        let mut dlog = vec![NONE; self.order as usize];
        let mut cur = vec![0u32; n];
        cur[0] = 1;
        let mut acc = vec![0u32; n];
        for k in 0..group {
            let packed = pack(p, &cur);
            if dlog[packed as usize] != NONE {
                return Err(FfError::Internal(format!(
                    "primitive element repeats at exponent {k}"
                )));
            }
            dlog[packed as usize] = k;
            antilog.push(packed);
            acc.iter_mut().for_each(|c| *c = 0);
            for (i, &ci) in cur.iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                for (a, &r) in acc.iter_mut().zip(&rows[i]) {
                    *a = (*a + ci * r) % p;
                }
            }
            std::mem::swap(&mut cur, &mut acc);
        }
        if pack(p, &cur) != 1 {
            return Err(FfError::Internal("primitive element has wrong order".into()));
        }
        let zech = antilog
            .iter()
            .map(|&v| {
                let d0 = v % p;
                let w = v - d0 + (d0 + 1) % p;
                if w == 0 {
                    NONE
                } else {
                    dlog[w as usize]
                }
            })
            .collect();
        self.neg_one = if p == 2 { 0 } else { group / 2 };
        self.antilog = antilog;
        self.dlog = dlog;
        self.zech = zech;
        Ok(())
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Number of elements, `p^n`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the multiplicative group, `p^n - 1`.
    pub fn group_order(&self) -> u32 {
        self.order - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            n: self.n,
            modulus: self.modulus.clone(),
            primitive: unpack(self.p, self.n as usize, self.primitive_packed),
        }
    }

    pub fn zero(&self) -> Elem {
        Elem::Zero
    }

    pub fn one(&self) -> Elem {
        Elem::Pow(0)
    }

    pub fn primitive(&self) -> Elem {
        Elem::Pow(1 % self.group_order())
    }

    /// All elements: zero first, then the powers of the primitive element.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        std::iter::once(Elem::Zero).chain((0..self.group_order()).map(Elem::Pow))
    }

    /// Packed coefficient vector: `sum c_i p^i`, constant term in the lowest digit.
    pub fn to_packed(&self, x: Elem) -> u32 {
        match x {
            Elem::Zero => 0,
            Elem::Pow(k) => self.antilog[k as usize],
        }
    }

    pub fn from_packed(&self, v: u32) -> Elem {
        assert!(v < self.order, "packed value {v} out of range");
        if v == 0 {
            Elem::Zero
        } else {
            Elem::Pow(self.dlog[v as usize])
        }
    }

    pub fn to_coeffs(&self, x: Elem) -> Vec<u32> {
        unpack(self.p, self.n as usize, self.to_packed(x))
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Elem, FfError> {
        if c.len() != self.n as usize || c.iter().any(|&d| d >= self.p) {
            return Err(FfError::BadCoordinates { got: c.len(), expected: self.n as usize });
        }
        Ok(self.from_packed(pack(self.p, c)))
    }

    /// The prime-field residue of `x`, if `x` lies in GF(p).
    pub fn prime_value(&self, x: Elem) -> Option<u32> {
        let v = self.to_packed(x);
        (v < self.p).then_some(v)
    }

    /// Embeds the residue `c mod p` of the prime field.
    pub fn from_prime(&self, c: u32) -> Elem {
        self.from_packed(c % self.p)
    }

    fn reduce(&self, e: u64) -> u32 {
        (e % self.group_order() as u64) as u32
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match (x, y) {
            (Elem::Zero, y) => y,
            (x, Elem::Zero) => x,
            (Elem::Pow(a), Elem::Pow(b)) => {
                let g = self.group_order();
                let diff = (b + g - a) % g;
                match self.zech[diff as usize] {
                    NONE => Elem::Zero,
                    z => Elem::Pow(self.reduce(a as u64 + z as u64)),
                }
            }
        }
    }

    pub fn neg(&self, x: Elem) -> Elem {
        match x {
            Elem::Zero => Elem::Zero,
            Elem::Pow(a) => Elem::Pow(self.reduce(a as u64 + self.neg_one as u64)),
        }
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match (x, y) {
            (Elem::Pow(a), Elem::Pow(b)) => Elem::Pow(self.reduce(a as u64 + b as u64)),
            _ => Elem::Zero,
        }
    }

    pub fn inv(&self, x: Elem) -> Result<Elem, FfError> {
        match x {
            Elem::Zero => Err(FfError::DivisionByZero),
            Elem::Pow(a) => Ok(Elem::Pow((self.group_order() - a) % self.group_order())),
        }
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem, FfError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e` for any integer `e`; `0^0 = 1`, negative powers of zero fail.
    pub fn pow(&self, x: Elem, e: i64) -> Result<Elem, FfError> {
        match x {
            Elem::Zero if e == 0 => Ok(self.one()),
            Elem::Zero if e < 0 => Err(FfError::DivisionByZero),
            Elem::Zero => Ok(Elem::Zero),
            Elem::Pow(a) => {
                let g = self.group_order() as i128;
                Ok(Elem::Pow((a as i128 * e as i128).rem_euclid(g) as u32))
            }
        }
    }

    /// `x^(p^k)`.
    pub fn frobenius(&self, x: Elem, k: u32) -> Elem {
        match x {
            Elem::Zero => Elem::Zero,
            Elem::Pow(a) => {
                let g = self.group_order() as u64;
                let mut e = a as u64;
                for _ in 0..k {
                    e = e * self.p as u64 % g;
                }
                Elem::Pow(e as u32)
            }
        }
    }

    fn check_divisor(&self, d: u32) -> Result<(), FfError> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(FfError::NotADivisor { degree: self.n, target: d });
        }
        Ok(())
    }

    /// `x + x^Q + ... + x^(Q^(n/d - 1))` with `Q = p^d`; lands in the subfield GF(p^d).
    pub fn trace_to(&self, x: Elem, d: u32) -> Result<Elem, FfError> {
        self.check_divisor(d)?;
        let mut acc = Elem::Zero;
        let mut term = x;
        for _ in 0..self.n / d {
            acc = self.add(acc, term);
            term = self.frobenius(term, d);
        }
        Ok(acc)
    }

    /// `x^((p^n - 1)/(p^d - 1))`, the norm down to GF(p^d).
    pub fn norm_to(&self, x: Elem, d: u32) -> Result<Elem, FfError> {
        self.check_divisor(d)?;
        match x {
            Elem::Zero => Ok(Elem::Zero),
            Elem::Pow(a) => {
                let sub = self.p.pow(d) - 1;
                let ratio = self.group_order() / sub;
                Ok(Elem::Pow(self.reduce(a as u64 * ratio as u64)))
            }
        }
    }

    /// Whether `x` lies in the copy of GF(p^d) inside this field.
    pub fn in_subfield(&self, x: Elem, d: u32) -> Result<bool, FfError> {
        self.check_divisor(d)?;
        Ok(match x {
            Elem::Zero => true,
            Elem::Pow(a) => a % (self.group_order() / (self.p.pow(d) - 1)) == 0,
        })
    }

    /// Primitive element of the subfield GF(p^d): `g^((p^n-1)/(p^d-1))`.
    pub fn subfield_generator(&self, d: u32) -> Result<Elem, FfError> {
        self.check_divisor(d)?;
        Ok(Elem::Pow(self.group_order() / (self.p.pow(d) - 1) % self.group_order()))
    }

    /// Wraps `x` with a reference to this field for checked arithmetic.
    pub fn element(&self, x: Elem) -> FieldElement<'_> {
        FieldElement { field: self, value: x }
    }
}

/// An element together with the field it belongs to.
#[derive(Debug, Clone, Copy)]
pub struct FieldElement<'a> {
    pub field: &'a FiniteField,
    pub value: Elem,
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) && self.value == other.value
    }
}

impl<'a> FieldElement<'a> {
    fn same(&self, other: &FieldElement<'a>) -> Result<(), FfError> {
        if std::ptr::eq(self.field, other.field) {
            Ok(())
        } else {
            Err(FfError::FieldMismatch)
        }
    }

    fn wrap(&self, value: Elem) -> FieldElement<'a> {
        FieldElement { field: self.field, value }
    }

    pub fn add(&self, other: &FieldElement<'a>) -> Result<FieldElement<'a>, FfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement<'a>) -> Result<FieldElement<'a>, FfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement<'a>) -> Result<FieldElement<'a>, FfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement<'a> {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement<'a>, FfError> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement<'a>, FfError> {
        Ok(self.wrap(self.field.pow(self.value, e)?))
    }

    pub fn trace_to(&self, d: u32) -> Result<FieldElement<'a>, FfError> {
        Ok(self.wrap(self.field.trace_to(self.value, d)?))
    }

    pub fn norm_to(&self, d: u32) -> Result<FieldElement<'a>, FfError> {
        Ok(self.wrap(self.field.norm_to(self.value, d)?))
    }
}

pub(crate) fn pack(p: u32, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

pub(crate) fn unpack(p: u32, n: usize, mut v: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(v % p);
        v /= p;
    }
    out
}

/// Candidate coefficient vectors in lexicographic order, constant term compared first.
fn lex_vectors(p: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(n as u32);
    (0..count).map(move |t| {
        let mut digits = vec![0u32; n];
        let mut t = t;
        for i in (0..n).rev() {
            digits[i] = (t % p as u64) as u32;
            t /= p as u64;
        }
        digits
    })
}

fn smallest_irreducible(p: u32, n: u32) -> Result<Vec<u32>, FfError> {
    lex_vectors(p, n as usize)
        .map(|mut c| {
            c.push(1);
            c
        })
        .find(|f| poly::is_irreducible(p, f))
        .ok_or_else(|| FfError::Internal(format!("no irreducible of degree {n} over GF({p})")))
}

fn smallest_generator(p: u32, n: u32, modulus: &[u32], group: u64) -> Result<u32, FfError> {
    if group == 1 {
        return Ok(1);
    }
    lex_vectors(p, n as usize)
        .find(|c| poly::is_generator(p, &poly::trim(c.clone()), modulus, group))
        .map(|c| pack(p, &c))
        .ok_or_else(|| FfError::Internal(format!("no generator found for GF({p}^{n})")))
}
