use super::Tower;
use crate::error::{Error, Result};
use crate::ff::{Elem, FiniteField};
use crate::linalg::{self, PrimeField};

/// A GF(q)-subspace of GF(q^m), fully materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    /// Dimension over GF(q).
    pub dim: u32,
    /// A GF(q)-basis, elements of the middle field.
    pub basis: Vec<Elem>,
    /// All `q^dim` elements, sorted.
    pub elements: Vec<Elem>,
}

impl Subspace {
    /// GF(q)-span of `gens`; the generators must be linearly independent.
    pub fn span(tower: &Tower, gens: &[Elem]) -> Result<Self> {
        let fm = &tower.fm;
        let scalars: Vec<Elem> = tower.fq.elements().map(|c| tower.emb_qm.apply(c)).collect();
        let mut member = vec![false; fm.order() as usize];
        member[0] = true;
        let mut elements = vec![Elem::Zero];
        for (i, &g) in gens.iter().enumerate() {
            if member[fm.to_packed(g) as usize] {
                return Err(Error::NotASubspace(format!(
                    "generator {i} ({g:?}) lies in the span of the previous ones"
                )));
            }
            let mut next = Vec::with_capacity(elements.len() * scalars.len());
            for &c in &scalars {
                let cg = fm.mul(c, g);
                for &x in &elements {
                    let y = fm.add(x, cg);
                    member[fm.to_packed(y) as usize] = true;
                    next.push(y);
                }
            }
            elements = next;
        }
        Self::finish(tower, gens.to_vec(), elements)
    }

    /// Span of `γ^k` for the listed exponents `k`, γ the middle field's primitive element.
    pub fn from_gamma_exponents(tower: &Tower, exps: &[u32]) -> Result<Self> {
        let g = tower.fm.group_order();
        let gens: Vec<Elem> = exps.iter().map(|&k| Elem::Pow(k % g)).collect();
        Self::span(tower, &gens)
    }

    /// GF(p)-span of coordinate rows (polynomial basis of the middle field),
    /// which must be closed under GF(q)-scaling.
    pub fn from_prime_coords(tower: &Tower, rows: &[Vec<u32>]) -> Result<Self> {
        let fm = &tower.fm;
        let gens = rows
            .iter()
            .map(|r| fm.from_coeffs(r).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        let elements = prime_span(fm, &gens);
        Self::from_element_list(tower, elements)
    }

    /// Wraps an explicit GF(p)-subspace, checking GF(q)-closure and extracting a GF(q)-basis.
    fn from_element_list(tower: &Tower, elements: Vec<Elem>) -> Result<Self> {
        let fm = &tower.fm;
        let mut member = vec![false; fm.order() as usize];
        for &x in &elements {
            member[fm.to_packed(x) as usize] = true;
        }
        let theta = tower.emb_qm.apply(tower.fq.primitive());
        if let Some(&x) = elements.iter().find(|&&x| !member[fm.to_packed(fm.mul(theta, x)) as usize]) {
            return Err(Error::NotASubspace(format!(
                "not closed under GF({})-scaling: {x:?}",
                tower.shape.q()
            )));
        }
        let mut sorted = elements.clone();
        sorted.sort();
        let mut basis = Vec::new();
        let mut spanned = Subspace::span(tower, &[])?;
        for &x in &sorted {
            if !spanned.contains(x) {
                basis.push(x);
                spanned = Subspace::span(tower, &basis)?;
            }
        }
        if spanned.elements.len() != elements.len() {
            return Err(Error::Internal("basis extraction lost elements".into()));
        }
        Ok(spanned)
    }

    fn finish(tower: &Tower, basis: Vec<Elem>, mut elements: Vec<Elem>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let q = tower.shape.q() as usize;
        let dim = basis.len() as u32;
        if elements.len() != q.pow(dim) {
            return Err(Error::NotASubspace(format!(
                "span has {} elements, expected {}",
                elements.len(),
                q.pow(dim)
            )));
        }
        let s = Subspace { dim, basis, elements };
        s.verify_closure(tower)?;
        Ok(s)
    }

    /// Checks closure under addition and GF(q)-scaling element by element.
    pub fn verify_closure(&self, tower: &Tower) -> Result<()> {
        let fm = &tower.fm;
        if !self.contains(Elem::Zero) {
            return Err(Error::NotASubspace("missing zero".into()));
        }
        let theta = tower.emb_qm.apply(tower.fq.primitive());
        for &x in &self.elements {
            if !self.contains(fm.mul(theta, x)) {
                return Err(Error::NotASubspace(format!("{x:?} scaled leaves the set")));
            }
            for &b in &self.basis {
                if !self.contains(fm.add(x, b)) {
                    return Err(Error::NotASubspace(format!("{x:?} + {b:?} leaves the set")));
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Basis as exponents of the middle field's primitive element (`-1` for zero).
    pub fn basis_exponents(&self) -> Vec<i64> {
        self.basis.iter().map(|b| b.exponent_or_neg()).collect()
    }
}

/// GF(p)-span of `gens` inside `f`.
fn prime_span(f: &FiniteField, gens: &[Elem]) -> Vec<Elem> {
    let mut seen = vec![false; f.order() as usize];
    seen[0] = true;
    let mut elements = vec![Elem::Zero];
    for &g in gens {
        if seen[f.to_packed(g) as usize] {
            continue;
        }
        let mut next = Vec::new();
        for c in 0..f.characteristic() {
            let cg = f.mul(f.from_prime(c), g);
            for &x in &elements {
                let y = f.add(x, cg);
                seen[f.to_packed(y) as usize] = true;
                next.push(y);
            }
        }
        elements = next;
    }
    elements
}

/// `span{1, γ, ..., γ^{r-1}}` with γ the middle field's primitive element.
pub fn default_subspace(tower: &Tower, r: u32) -> Result<Subspace> {
    if r > tower.shape.m {
        return Err(Error::InvalidParams(format!("r = {r} exceeds m = {}", tower.shape.m)));
    }
    let exps: Vec<u32> = (0..r).collect();
    Subspace::from_gamma_exponents(tower, &exps)
}

/// `T = {0 ≤ i < e : γ^i ∈ R}` for the compatible γ.
pub fn index_set_t(tower: &Tower, rsub: &Subspace) -> Vec<u32> {
    let e = tower.shape.e() as u32;
    let fm = &tower.fm;
    (0..e).filter(|&i| rsub.contains(fm.pow(tower.gamma(), i as i64).expect("nonzero"))).collect()
}

/// `R^⊥` with respect to `(x, y) ↦ Tr_{q^m/p}(xy)`.
pub fn dual_subspace(tower: &Tower, rsub: &Subspace) -> Result<Subspace> {
    let fm = &tower.fm;
    let n = fm.degree() as usize;
    let fp = PrimeField(fm.characteristic());
    let units: Vec<Elem> = (0..n)
        .map(|i| {
            let mut c = vec![0u32; n];
            c[i] = 1;
            fm.from_coeffs(&c)
        })
        .collect::<std::result::Result<_, _>>()?;
    let tr = |x: Elem| -> Result<u32> {
        fm.prime_value(fm.trace_to(x, 1)?)
            .ok_or_else(|| Error::Internal("trace left the prime field".into()))
    };
    // one row per GF(p)-generator y of R: x ↦ Tr(xy)
    let theta = tower.emb_qm.apply(tower.fq.primitive());
    let mut rows = Vec::new();
    for &b in &rsub.basis {
        for j in 0..tower.shape.s {
            let y = fm.mul(fm.pow(theta, j as i64)?, b);
            rows.push(units.iter().map(|&u| tr(fm.mul(u, y))).collect::<Result<Vec<_>>>()?);
        }
    }
    let kernel = linalg::kernel(&fp, &rows, n);
    let gens = kernel.iter().map(|v| fm.from_coeffs(v)).collect::<std::result::Result<Vec<_>, _>>()?;
    let perp = Subspace::from_element_list(tower, prime_span(fm, &gens))?;
    if perp.dim != tower.shape.m - rsub.dim {
        return Err(Error::Internal(format!(
            "dual space has dimension {}, expected {}",
            perp.dim,
            tower.shape.m - rsub.dim
        )));
    }
    Ok(perp)
}
