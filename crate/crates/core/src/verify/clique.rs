use super::CheckResult;
use crate::construct::{PdsSet, Tower};
use crate::ff::Elem;
use crate::group::GroupIndex;
use crate::params::Family;

/// Above this many pairs the clique is checked through its subgroup structure.
const PAIR_BUDGET: u64 = 1 << 24;

/// Checks that the designated subgroup (`GF(q^{mℓ}) × {0}` for the primal family,
/// `{0} × GF(q^{m(ℓ+1)})` for the dual) is a clique, and that no element of the set
/// has a zero in the coordinate that must separate clique vertices.
pub fn clique_certificate(tower: &Tower, g: &GroupIndex, d: &PdsSet, member: &[bool]) -> Vec<CheckResult> {
    let family = d.provenance.family();
    let vertices: Vec<u64> = match family {
        Family::Primal => tower.f1.elements().map(|a| g.index((a, Elem::Zero))).collect(),
        Family::Dual => tower.f2.elements().map(|b| g.index((Elem::Zero, b))).collect(),
    };
    let n = vertices.len() as u64;
    let mut bad = Vec::new();
    if n * n <= PAIR_BUDGET {
        for (i, &x) in vertices.iter().enumerate() {
            for &y in &vertices[i + 1..] {
                if !member[g.sub(x, y) as usize] {
                    bad.push(format!("{:?} - {:?} not in D", g.element(x), g.element(y)));
                }
            }
        }
    } else {
        // a subgroup: the pairwise differences are exactly its nonzero elements
        for &x in &vertices[1..] {
            if !member[x as usize] {
                bad.push(format!("{:?} not in D", g.element(x)));
            }
        }
    }
    let clique = CheckResult::from_witnesses("clique", format!("{family} clique of size {n}"), bad);

    let offending: Vec<String> = d
        .elements
        .iter()
        .filter(|&&(a, b)| match family {
            Family::Primal => a.is_zero(),
            Family::Dual => b.is_zero(),
        })
        .map(|x| format!("{x:?}"))
        .collect();
    let coord = match family {
        Family::Primal => "first",
        Family::Dual => "second",
    };
    let bound = CheckResult::from_witnesses(
        "clique-bound",
        format!("no element with zero {coord} coordinate, so cliques have size at most {n}"),
        offending,
    );
    vec![clique, bound]
}
