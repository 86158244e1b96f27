//! The Cayley graph `Cay(G, D)`: export and coarse structure.

use std::io::{self, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupIndex;

/// Undirected Cayley graph on `[0, v)` with connection set given as a bitmap.
pub struct CayleyGraph<'a> {
    g: &'a GroupIndex,
    set: Vec<u64>,
    member: Vec<bool>,
}

impl<'a> CayleyGraph<'a> {
    /// `set` must be symmetric and avoid 0.
    pub fn new(g: &'a GroupIndex, set: Vec<u64>, cap: u64) -> Result<Self> {
        let v = g.order();
        if v > cap {
            return Err(Error::CapExceeded { what: "graph export", size: v, cap });
        }
        let mut member = vec![false; v as usize];
        for &d in &set {
            member[d as usize] = true;
        }
        if member[0] || set.iter().any(|&d| !member[g.neg(d) as usize]) {
            return Err(Error::InvalidParams("connection set is not symmetric or contains 0".into()));
        }
        Ok(CayleyGraph { g, set, member })
    }

    pub fn vertices(&self) -> u64 {
        self.g.order()
    }

    pub fn degree(&self) -> u64 {
        self.set.len() as u64
    }

    pub fn edge_count(&self) -> u64 {
        self.vertices() * self.degree() / 2
    }

    pub fn adjacent(&self, x: u64, y: u64) -> bool {
        self.member[self.g.sub(x, y) as usize]
    }

    /// Each edge once, smaller endpoint first, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (0..self.vertices()).flat_map(move |x| {
            let mut nb: Vec<u64> = self.set.iter().map(|&d| self.g.add(x, d)).filter(|&y| y > x).collect();
            nb.sort_unstable();
            nb.into_iter().map(move |y| (x, y))
        })
    }

    pub fn write_edgelist(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "# vertices {} edges {}", self.vertices(), self.edge_count())?;
        for (x, y) in self.edges() {
            writeln!(out, "{x} {y}")?;
        }
        Ok(())
    }

    /// DIMACS, vertices numbered from 1.
    pub fn write_dimacs(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "p edge {} {}", self.vertices(), self.edge_count())?;
        for (x, y) in self.edges() {
            writeln!(out, "e {} {}", x + 1, y + 1)?;
        }
        Ok(())
    }

    /// Component sizes of the graph and of its complement.
    pub fn structure(&self) -> GraphStructure {
        let v = self.vertices();
        let comp_set: Vec<u64> = (1..v).filter(|&x| !self.member[x as usize]).collect();
        let edges = self.edge_count();
        GraphStructure {
            vertices: v,
            edges,
            complement_edges: v * (v - 1) / 2 - edges,
            components: component_sizes(self.g, &self.set),
            complement_components: component_sizes(self.g, &comp_set),
            complete_components: self.components_are_cliques(),
        }
    }

    // every component is complete iff D ∪ {0} is a subgroup
    fn components_are_cliques(&self) -> bool {
        self.set.iter().all(|&x| self.set.iter().all(|&y| x == y || self.member[self.g.sub(x, y) as usize]))
    }
}

/// Component sizes, sorted, of the Cayley graph with connection set `set`.
fn component_sizes(g: &GroupIndex, set: &[u64]) -> Vec<u64> {
    let v = g.order() as usize;
    let mut seen = vec![false; v];
    let mut sizes = Vec::new();
    for start in 0..v {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start as u64];
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            for &d in set {
                let y = g.add(x, d) as usize;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y as u64);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStructure {
    pub vertices: u64,
    pub edges: u64,
    pub complement_edges: u64,
    pub components: Vec<u64>,
    pub complement_components: Vec<u64>,
    /// Every component of the graph is a complete graph.
    pub complete_components: bool,
}

impl GraphStructure {
    /// `count` disjoint copies of `K_size`.
    pub fn is_clique_union(&self, count: u64, size: u64) -> bool {
        self.complete_components && self.components == vec![size; count as usize]
    }

    /// Complete multipartite with `parts` parts of size `size`: the complement is a clique union.
    pub fn is_complete_multipartite(&self, parts: u64, size: u64) -> bool {
        self.complement_components == vec![size; parts as usize]
            && self.complement_edges == parts * size * (size - 1) / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_d, build_d_dual, default_subspace, Tower, TowerShape};

    #[test]
    fn edge_counts_and_boundary_structures() {
        let t = Tower::new(TowerShape::new(2, 1, 2, 1).unwrap()).unwrap();
        let g = GroupIndex::new(&t);
        let d = build_d(&t, &default_subspace(&t, 1).unwrap()).unwrap();
        let cg = CayleyGraph::new(&g, g.indices(&d.elements), 1 << 16).unwrap();
        assert_eq!(cg.edges().count(), 576);
        assert!(cg.edges().all(|(x, y)| x < y && cg.adjacent(x, y)));

        let d0 = build_d(&t, &default_subspace(&t, 0).unwrap()).unwrap();
        let s0 = CayleyGraph::new(&g, g.indices(&d0.elements), 1 << 16).unwrap().structure();
        assert!(s0.is_clique_union(16, 4));
        assert_eq!(s0.edges, 16 * 6);

        let dm = build_d(&t, &default_subspace(&t, 2).unwrap()).unwrap();
        let sm = CayleyGraph::new(&g, g.indices(&dm.elements), 1 << 16).unwrap().structure();
        assert!(sm.is_complete_multipartite(4, 16));

        let pm = build_d_dual(&t, &default_subspace(&t, 2).unwrap()).unwrap();
        let sp = CayleyGraph::new(&g, g.indices(&pm.elements), 1 << 16).unwrap().structure();
        assert!(sp.is_complete_multipartite(16, 4));
    }

    #[test]
    fn dimacs_header() {
        let t = Tower::new(TowerShape::new(2, 1, 1, 1).unwrap()).unwrap();
        let g = GroupIndex::new(&t);
        let d = build_d(&t, &default_subspace(&t, 1).unwrap()).unwrap();
        let cg = CayleyGraph::new(&g, g.indices(&d.elements), 1 << 16).unwrap();
        let mut out = Vec::new();
        cg.write_dimacs(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with(&format!("p edge 8 {}\n", 8 * d.len() / 2)));
        assert_eq!(text.lines().count(), 1 + 8 * d.len() / 2);
    }
}
