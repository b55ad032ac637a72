//! Cycles of a graph and vertex-disjoint cycle families.
//!
//! A cycle is stored as its canonical vertex sequence: the
//! lexicographically least rotation over both traversal directions, under
//! plain name order. Canonicalization depends only on the labels, so the
//! same cycle compares equal in every graph that contains it.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexLabel};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    vertices: Vec<VertexLabel>,
}

impl Cycle {
    pub fn new(seq: impl IntoIterator<Item = VertexLabel>) -> Result<Self> {
        let seq: Vec<VertexLabel> = seq.into_iter().collect();
        if seq.len() < 3 {
            return Err(Error::CycleTooShort(seq.len()));
        }
        let mut seen = BTreeSet::new();
        for v in &seq {
            if !seen.insert(v.clone()) {
                return Err(Error::CycleRepeatsVertex(v.clone()));
            }
        }
        Ok(Cycle { vertices: canonical(seq) })
    }

    /// Number of vertices, which equals the number of edges. Always at
    /// least three, so there is no `is_empty`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn contains(&self, v: &VertexLabel) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_all<'a>(&self, vs: impl IntoIterator<Item = &'a VertexLabel>) -> bool {
        vs.into_iter().all(|v| self.contains(v))
    }

    pub fn avoids_all<'a>(&self, vs: impl IntoIterator<Item = &'a VertexLabel>) -> bool {
        vs.into_iter().all(|v| !self.contains(v))
    }

    pub fn is_disjoint_from(&self, other: &Cycle) -> bool {
        self.vertices.iter().all(|v| !other.contains(v))
    }

    /// Edges in traversal order.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                Edge::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone())
                    .expect("cycle vertices are distinct")
            })
            .collect()
    }

    /// Consecutive vertex pairs in traversal order, including the wrap.
    pub fn steps(&self) -> Vec<(&VertexLabel, &VertexLabel)> {
        let n = self.vertices.len();
        (0..n).map(|i| (&self.vertices[i], &self.vertices[(i + 1) % n])).collect()
    }

    /// The cyclic neighbors of `v` on this cycle.
    pub fn neighbors_on_cycle(&self, v: &VertexLabel) -> Option<(&VertexLabel, &VertexLabel)> {
        let n = self.vertices.len();
        let i = self.vertices.iter().position(|w| w == v)?;
        Some((&self.vertices[(i + n - 1) % n], &self.vertices[(i + 1) % n]))
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.vertices.iter().all(|v| g.contains_vertex(v))
            && self.steps().iter().all(|(a, b)| g.adjacent(a, b))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vertices.iter().map(|v| v.as_str()).collect();
        write!(f, "[{}]", names.join(" "))
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Cycle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

fn canonical(seq: Vec<VertexLabel>) -> Vec<VertexLabel> {
    let n = seq.len();
    let mut rev = seq.clone();
    rev.reverse();
    let mut best: Option<Vec<VertexLabel>> = None;
    for dir in [&seq, &rev] {
        for r in 0..n {
            let cand: Vec<VertexLabel> = (0..n).map(|i| dir[(r + i) % n].clone()).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("nonempty cycle")
}

/// An unordered pair of vertex-disjoint cycles.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DisjointPair {
    first: Cycle,
    second: Cycle,
}

impl DisjointPair {
    pub fn new(a: Cycle, b: Cycle) -> Result<Self> {
        if let Some(v) = a.vertices().iter().find(|v| b.contains(v)) {
            return Err(Error::NotDisjoint(v.clone()));
        }
        let (first, second) = if a <= b { (a, b) } else { (b, a) };
        Ok(DisjointPair { first, second })
    }

    pub fn first(&self) -> &Cycle {
        &self.first
    }

    pub fn second(&self) -> &Cycle {
        &self.second
    }

    pub fn cycles(&self) -> [&Cycle; 2] {
        [&self.first, &self.second]
    }

    pub fn contains(&self, v: &VertexLabel) -> bool {
        self.first.contains(v) || self.second.contains(v)
    }
}

impl fmt::Display for DisjointPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.first, self.second)
    }
}

impl fmt::Debug for DisjointPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for DisjointPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.first, &self.second].serialize(s)
    }
}

/// A single cycle or a disjoint pair: one element of the union the cycle
/// correspondence acts on.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GammaElement {
    Cycle(Cycle),
    Pair(DisjointPair),
}

impl GammaElement {
    pub fn components(&self) -> Vec<&Cycle> {
        match self {
            GammaElement::Cycle(c) => vec![c],
            GammaElement::Pair(p) => vec![p.first(), p.second()],
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            GammaElement::Cycle(_) => 1,
            GammaElement::Pair(_) => 2,
        }
    }

    pub fn contains(&self, v: &VertexLabel) -> bool {
        self.components().iter().any(|c| c.contains(v))
    }

    pub fn from_components(mut comps: Vec<Cycle>) -> Result<Self> {
        match comps.len() {
            1 => Ok(GammaElement::Cycle(comps.pop().expect("one component"))),
            2 => {
                let b = comps.pop().expect("two components");
                let a = comps.pop().expect("two components");
                Ok(GammaElement::Pair(DisjointPair::new(a, b)?))
            }
            n => Err(Error::Precondition(format!(
                "gamma element must have 1 or 2 components, got {n}"
            ))),
        }
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaElement::Cycle(c) => write!(f, "{c}"),
            GammaElement::Pair(p) => write!(f, "{p}"),
        }
    }
}

impl Graph {
    /// All cycles, in sorted canonical order.
    pub fn cycles(&self) -> Vec<Cycle> {
        let vs: Vec<&VertexLabel> = self.vertices().collect();
        let n = vs.len();
        let index = |v: &VertexLabel| vs.binary_search(&v).expect("vertex present");
        let mut adj = vec![vec![]; n];
        for e in self.edges() {
            let (a, b) = e.ends();
            let (i, j) = (index(a), index(b));
            adj[i].push(j);
            adj[j].push(i);
        }
        for l in &mut adj {
            l.sort_unstable();
        }

        let mut found: BTreeSet<Cycle> = BTreeSet::new();
        let mut path: Vec<usize> = Vec::with_capacity(n);
        let mut on_path = vec![false; n];

        fn dfs(
            v: usize,
            start: usize,
            adj: &[Vec<usize>],
            path: &mut Vec<usize>,
            on_path: &mut [bool],
            vs: &[&VertexLabel],
            found: &mut BTreeSet<Cycle>,
        ) {
            for &w in &adj[v] {
                if w == start && path.len() >= 3 {
                    // Each cycle closes twice (once per direction); keep one.
                    if path[1] < *path.last().expect("nonempty path") {
                        let cyc = Cycle::new(path.iter().map(|&i| vs[i].clone()))
                            .expect("distinct vertices");
                        found.insert(cyc);
                    }
                } else if w > start && !on_path[w] {
                    path.push(w);
                    on_path[w] = true;
                    dfs(w, start, adj, path, on_path, vs, found);
                    on_path[w] = false;
                    path.pop();
                }
            }
        }

        for s in 0..n {
            path.push(s);
            on_path[s] = true;
            dfs(s, s, &adj, &mut path, &mut on_path, &vs, &mut found);
            on_path[s] = false;
            path.pop();
        }
        found.into_iter().collect()
    }

    /// Cycles of length exactly `k`.
    pub fn k_cycles(&self, k: usize) -> Vec<Cycle> {
        self.cycles().into_iter().filter(|c| c.len() == k).collect()
    }

    /// All unordered pairs of vertex-disjoint cycles, sorted.
    pub fn disjoint_pairs(&self) -> Vec<DisjointPair> {
        let cycles = self.cycles();
        let masks: Vec<u64> = cycles.iter().map(|c| self.vertex_mask(c)).collect();
        let mut out = Vec::new();
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                if masks[i] & masks[j] == 0 {
                    out.push(
                        DisjointPair::new(cycles[i].clone(), cycles[j].clone())
                            .expect("masks are disjoint"),
                    );
                }
            }
        }
        out.sort();
        out
    }

    /// Families of `n` pairwise vertex-disjoint cycles. Only `n <= 2` occurs
    /// in the catalog; larger `n` is supported so emptiness can be checked
    /// rather than assumed.
    pub fn disjoint_cycle_sets(&self, n: usize) -> Vec<Vec<Cycle>> {
        if n == 0 {
            return vec![];
        }
        let cycles = self.cycles();
        let masks: Vec<u64> = cycles.iter().map(|c| self.vertex_mask(c)).collect();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        fn rec(
            from: usize,
            used: u64,
            n: usize,
            cycles: &[Cycle],
            masks: &[u64],
            chosen: &mut Vec<usize>,
            out: &mut Vec<Vec<Cycle>>,
        ) {
            if chosen.len() == n {
                out.push(chosen.iter().map(|&i| cycles[i].clone()).collect());
                return;
            }
            for i in from..cycles.len() {
                if masks[i] & used == 0 {
                    chosen.push(i);
                    rec(i + 1, used | masks[i], n, cycles, masks, chosen, out);
                    chosen.pop();
                }
            }
        }
        rec(0, 0, n, &cycles, &masks, &mut chosen, &mut out);
        out
    }

    /// All single cycles and disjoint pairs, sorted with cycles first.
    pub fn gamma_bar(&self) -> Vec<GammaElement> {
        let mut out: Vec<GammaElement> =
            self.cycles().into_iter().map(GammaElement::Cycle).collect();
        out.extend(self.disjoint_pairs().into_iter().map(GammaElement::Pair));
        out
    }

    fn vertex_mask(&self, c: &Cycle) -> u64 {
        let vs: Vec<&VertexLabel> = self.vertices().collect();
        assert!(vs.len() <= 64, "vertex masks support at most 64 vertices");
        let mut m = 0u64;
        for v in c.vertices() {
            let i = vs.binary_search(&v).expect("cycle vertex belongs to graph");
            m |= 1 << i;
        }
        m
    }
}
