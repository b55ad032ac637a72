//! Brute-force graph isomorphism for the small graphs handled here
//! (at most a dozen vertices), with degree-based pruning.

use std::collections::BTreeMap;

use crate::graph::{Edge, Graph, VertexLabel};

/// Per-vertex refinement signature: degree plus the sorted multiset of
/// neighbor degrees.
fn signature(g: &Graph, v: &VertexLabel) -> (usize, Vec<usize>) {
    let mut nd: Vec<usize> = g.neighbors(v).iter().map(|w| g.degree(w)).collect();
    nd.sort_unstable();
    (g.degree(v), nd)
}

/// Finds a vertex bijection preserving adjacency both ways, if one exists.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<BTreeMap<VertexLabel, VertexLabel>> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let avs: Vec<&VertexLabel> = a.vertices().collect();
    let bvs: Vec<&VertexLabel> = b.vertices().collect();
    let asig: Vec<_> = avs.iter().map(|v| signature(a, v)).collect();
    let bsig: Vec<_> = bvs.iter().map(|v| signature(b, v)).collect();
    {
        let mut sa = asig.clone();
        let mut sb = bsig.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
    }

    // Assign the most constrained vertices first: rarest signature, then
    // highest degree.
    let mut order: Vec<usize> = (0..avs.len()).collect();
    let rarity = |i: usize| asig.iter().filter(|s| **s == asig[i]).count();
    order.sort_by_key(|&i| (rarity(i), std::cmp::Reverse(asig[i].0)));

    let mut mapping: Vec<Option<usize>> = vec![None; avs.len()];
    let mut used = vec![false; bvs.len()];

    struct Search<'s> {
        order: &'s [usize],
        a: &'s Graph,
        b: &'s Graph,
        avs: &'s [&'s VertexLabel],
        bvs: &'s [&'s VertexLabel],
        asig: &'s [(usize, Vec<usize>)],
        bsig: &'s [(usize, Vec<usize>)],
    }

    impl Search<'_> {
        fn rec(&self, pos: usize, mapping: &mut [Option<usize>], used: &mut [bool]) -> bool {
            if pos == self.order.len() {
                return true;
            }
            let i = self.order[pos];
            'candidates: for j in 0..self.bvs.len() {
                if used[j] || self.bsig[j] != self.asig[i] {
                    continue;
                }
                for (k, m) in mapping.iter().enumerate() {
                    if let Some(mj) = m {
                        if self.a.adjacent(self.avs[i], self.avs[k])
                            != self.b.adjacent(self.bvs[j], self.bvs[*mj])
                        {
                            continue 'candidates;
                        }
                    }
                }
                mapping[i] = Some(j);
                used[j] = true;
                if self.rec(pos + 1, mapping, used) {
                    return true;
                }
                mapping[i] = None;
                used[j] = false;
            }
            false
        }
    }

    let search =
        Search { order: &order, a, b, avs: &avs, bvs: &bvs, asig: &asig, bsig: &bsig };
    if search.rec(0, &mut mapping, &mut used) {
        let map: BTreeMap<VertexLabel, VertexLabel> = mapping
            .iter()
            .enumerate()
            .map(|(i, j)| (avs[i].clone(), bvs[j.expect("complete mapping")].clone()))
            .collect();
        debug_assert!(preserves_edges(a, b, &map));
        Some(map)
    } else {
        None
    }
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}

fn preserves_edges(a: &Graph, b: &Graph, map: &BTreeMap<VertexLabel, VertexLabel>) -> bool {
    a.edges().all(|e| {
        let (x, y) = e.ends();
        b.contains_edge(&Edge::new(map[x].clone(), map[y].clone()).expect("distinct images"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vl;

    fn path(names: &[&str]) -> Graph {
        let vs: Vec<_> = names.iter().map(|n| vl(n)).collect();
        let edges: Vec<_> =
            names.windows(2).map(|w| (vl(w[0]), vl(w[1]))).collect();
        Graph::new(vs, edges).unwrap()
    }

    #[test]
    fn paths_are_isomorphic_regardless_of_names() {
        assert!(are_isomorphic(&path(&["a", "b", "c", "d"]), &path(&["w", "x", "y", "z"])));
    }

    #[test]
    fn path_and_star_differ() {
        let star = Graph::new(
            ["c", "l1", "l2", "l3"].map(vl),
            [(vl("c"), vl("l1")), (vl("c"), vl("l2")), (vl("c"), vl("l3"))],
        )
        .unwrap();
        assert!(!are_isomorphic(&path(&["a", "b", "c", "d"]), &star));
    }

    #[test]
    fn cycle_lengths_distinguish() {
        let c4 = Graph::new(
            ["a", "b", "c", "d"].map(vl),
            [(vl("a"), vl("b")), (vl("b"), vl("c")), (vl("c"), vl("d")), (vl("d"), vl("a"))],
        )
        .unwrap();
        // Same degree sequence as two disjoint paths? No: compare against
        // a 4-path plus an isolated edge shape instead via another C4 minus edge.
        let p4 = path(&["a", "b", "c", "d"]);
        assert!(!are_isomorphic(&c4, &p4));
    }

    #[test]
    fn mapping_preserves_adjacency() {
        let g = path(&["a", "b", "c"]);
        let h = path(&["z", "y", "x"]);
        let m = find_isomorphism(&g, &h).unwrap();
        assert!(preserves_edges(&g, &h, &m));
    }
}
