//! The JSON set file.

use serde::{Deserialize, Serialize};

use crate::construct::{CompatiblePrimitives, PdsSet, Provenance, Subspace, Tower, TowerParams};
use crate::error::{Error, Result};
use crate::ff::{Elem, FieldDescriptor, FiniteField};
use crate::group::GroupIndex;
use crate::params::SrgParams;

pub const FORMAT: &str = "denniston-set/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fields {
    pub first: FieldDescriptor,
    pub second: FieldDescriptor,
    pub middle: FieldDescriptor,
    pub base: FieldDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceRecord {
    pub dim: u32,
    /// Basis vectors as exponents of the middle field's primitive element.
    pub basis: Vec<i64>,
}

/// Serialized form of a [`PdsSet`]. Elements are exponent pairs of the two
/// fields' primitive elements, `-1` standing for zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFile {
    pub format: String,
    pub params: TowerParams,
    pub provenance: Provenance,
    pub claimed: SrgParams,
    pub degenerate: bool,
    pub size: usize,
    pub fields: Fields,
    pub primitives: CompatiblePrimitives,
    pub subspace: SubspaceRecord,
    pub pairing: String,
    pub elements: Vec<[i64; 2]>,
    /// Group indices in the polynomial-basis packing, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<u64>>,
}

impl SetFile {
    pub fn from_set(tower: &Tower, d: &PdsSet, with_indices: bool) -> Self {
        SetFile {
            format: FORMAT.into(),
            params: d.params,
            provenance: d.provenance.clone(),
            claimed: d.claimed,
            degenerate: d.degenerate(),
            size: d.len(),
            fields: Fields {
                first: tower.f1.descriptor(),
                second: tower.f2.descriptor(),
                middle: tower.fm.descriptor(),
                base: tower.fq.descriptor(),
            },
            primitives: tower.compat,
            subspace: SubspaceRecord { dim: d.subspace.dim, basis: d.subspace.basis_exponents() },
            pairing: "trace".into(),
            elements: d.elements.iter().map(|&(a, b)| [a.exponent_or_neg(), b.exponent_or_neg()]).collect(),
            indices: with_indices.then(|| GroupIndex::new(tower).indices(&d.elements)),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: SetFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if f.format != FORMAT {
            return Err(Error::Format(format!("unknown format {:?}", f.format)));
        }
        Ok(f)
    }

    /// Rebuilds the set on `tower`, checking that the file was written under the
    /// same field models. The claimed parameters are kept as written.
    pub fn into_set(self, tower: &Tower) -> Result<PdsSet> {
        if self.params.shape != tower.shape {
            return Err(Error::Format(format!("file is for {}, tower is {}", self.params, tower.shape)));
        }
        let pairs = [
            ("first", &self.fields.first, &tower.f1),
            ("second", &self.fields.second, &tower.f2),
            ("middle", &self.fields.middle, &tower.fm),
            ("base", &self.fields.base, &tower.fq),
        ];
        for (name, desc, field) in pairs {
            if *desc != field.descriptor() {
                return Err(Error::Format(format!("{name} field model differs: {desc:?}")));
            }
        }
        if self.primitives != tower.compat {
            return Err(Error::Format(format!("compatible primitives differ: {:?}", self.primitives)));
        }
        if self.pairing != "trace" {
            return Err(Error::Format(format!("unsupported pairing {:?}", self.pairing)));
        }
        let basis = self
            .subspace
            .basis
            .iter()
            .map(|&e| elem(&tower.fm, e))
            .collect::<Result<Vec<_>>>()?;
        let subspace = Subspace::span(tower, &basis)?;
        if subspace.dim != self.subspace.dim || subspace.dim != self.params.r {
            return Err(Error::Format(format!(
                "subspace of dimension {} recorded with dim {} and r = {}",
                subspace.dim, self.subspace.dim, self.params.r
            )));
        }
        let elements = self
            .elements
            .iter()
            .map(|&[a, b]| Ok((elem(&tower.f1, a)?, elem(&tower.f2, b)?)))
            .collect::<Result<Vec<_>>>()?;
        let n = elements.len();
        let d = PdsSet::new(self.params, self.provenance, self.claimed, elements, subspace);
        if d.len() != n {
            return Err(Error::Format(format!("{} duplicate elements", n - d.len())));
        }
        if let Some(idx) = &self.indices {
            if *idx != GroupIndex::new(tower).indices(&d.elements) {
                return Err(Error::Format("indices do not match elements".into()));
            }
        }
        Ok(d)
    }
}

fn elem(f: &FiniteField, e: i64) -> Result<Elem> {
    match e {
        -1 => Ok(Elem::Zero),
        e if e >= 0 && e < f.group_order() as i64 => Ok(Elem::Pow(e as u32)),
        e => Err(Error::Format(format!("exponent {e} out of range for GF({}^{})", f.characteristic(), f.degree()))),
    }
}
