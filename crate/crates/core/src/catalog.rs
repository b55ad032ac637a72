//! The seven-member graph catalog and its cycle weightings.
//!
//! The base member is the complete graph on `{u, v, w, u', v', A}`. The
//! others are produced by triangle-to-star exchanges at five fixed
//! triangles (new vertices `x`, `x'`, `y`, `z`, `B`), except the complete
//! tripartite member, which is built directly with its apex labeled `A`
//! and the triangle `[A x y]` present. Each member carries an integer
//! weighting of its cycles, given in closed form by cycle length and
//! incidence with a few distinguished vertices; pulling the base
//! weighting back through the construction exchanges reproduces every
//! table (see `verify::derive_and_check_weights`).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::exchange::{delta_to_y, Exchange};
use crate::graph::{vl, Graph, VertexLabel};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum FamilyMember {
    K6,
    Q7,
    Q8,
    P7,
    P8,
    P9,
    P10,
}

impl FamilyMember {
    pub const ALL: [FamilyMember; 7] = [
        FamilyMember::K6,
        FamilyMember::Q7,
        FamilyMember::Q8,
        FamilyMember::P7,
        FamilyMember::P8,
        FamilyMember::P9,
        FamilyMember::P10,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            FamilyMember::K6 => "K6",
            FamilyMember::Q7 => "Q7",
            FamilyMember::Q8 => "Q8",
            FamilyMember::P7 => "P7",
            FamilyMember::P8 => "P8",
            FamilyMember::P9 => "P9",
            FamilyMember::P10 => "P10",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        FamilyMember::ALL
            .iter()
            .copied()
            .find(|m| m.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownMember(s.to_string()))
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            FamilyMember::K6 => 6,
            FamilyMember::Q7 | FamilyMember::P7 => 7,
            FamilyMember::Q8 | FamilyMember::P8 => 8,
            FamilyMember::P9 => 9,
            FamilyMember::P10 => 10,
        }
    }
}

impl fmt::Display for FamilyMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

fn u() -> VertexLabel {
    vl("u")
}
fn v() -> VertexLabel {
    vl("v")
}
fn w() -> VertexLabel {
    vl("w")
}
fn u1() -> VertexLabel {
    vl("u'")
}
fn v1() -> VertexLabel {
    vl("v'")
}
fn a() -> VertexLabel {
    vl("A")
}

fn triangle(x: VertexLabel, y: VertexLabel, z: VertexLabel) -> Cycle {
    Cycle::new([x, y, z]).expect("three distinct corners")
}

/// The six construction exchanges, numbered 1 through 6.
///
/// 1: `[u v w] -> x`      2: `[u' v' w] -> y`    3: `[u u' A] -> z`
/// 4: `[v v' A] -> B`     5: `[u' v' A] -> x'`   6: `[A x y] -> w`
pub fn construction_exchange(i: usize) -> Exchange {
    let (tri, nv) = match i {
        1 => (triangle(u(), v(), w()), vl("x")),
        2 => (triangle(u1(), v1(), w()), vl("y")),
        3 => (triangle(u(), u1(), a()), vl("z")),
        4 => (triangle(v(), v1(), a()), vl("B")),
        5 => (triangle(u1(), v1(), a()), vl("x'")),
        6 => (triangle(a(), vl("x"), vl("y")), w()),
        _ => panic!("construction exchanges are numbered 1..=6"),
    };
    Exchange::new(tri, nv).expect("valid construction exchange")
}

/// Builds the canonical labeled graph of a member.
pub fn build(member: FamilyMember) -> Graph {
    use FamilyMember::*;
    let apply = |g: &Graph, i: usize| {
        delta_to_y(g, &construction_exchange(i)).expect("construction exchange applies")
    };
    match member {
        K6 => {
            let vs = [u(), v(), w(), u1(), v1(), a()];
            let mut edges = Vec::new();
            for i in 0..6 {
                for j in i + 1..6 {
                    edges.push((vs[i].clone(), vs[j].clone()));
                }
            }
            Graph::new(vs, edges).expect("complete graph")
        }
        Q7 => apply(&build(K6), 1),
        Q8 => apply(&build(Q7), 5),
        P7 => {
            // Complete tripartite on {u, v, y} | {u', v', x} | {A}.
            let part1 = [u(), v(), vl("y")];
            let part2 = [u1(), v1(), vl("x")];
            let mut edges = Vec::new();
            for p in &part1 {
                for q in &part2 {
                    edges.push((p.clone(), q.clone()));
                }
            }
            for p in part1.iter().chain(&part2) {
                edges.push((a(), p.clone()));
            }
            let vertices = part1.into_iter().chain(part2).chain([a()]);
            Graph::new(vertices, edges).expect("complete tripartite graph")
        }
        P8 => apply(&build(Q7), 2),
        P9 => apply(&build(P8), 3),
        P10 => apply(&build(P9), 4),
    }
}

/// The exchanges that carry the base weighting to a member's table. The
/// first element is the member whose table seeds the pullback.
pub fn pullback_route(member: FamilyMember) -> (FamilyMember, Vec<Exchange>) {
    use FamilyMember::*;
    let ex = construction_exchange;
    match member {
        K6 => (K6, vec![]),
        Q7 => (K6, vec![ex(1)]),
        Q8 => (K6, vec![ex(1), ex(5)]),
        P7 => (P7, vec![]),
        P8 => (K6, vec![ex(1), ex(2)]),
        P9 => (K6, vec![ex(1), ex(2), ex(3)]),
        P10 => (K6, vec![ex(1), ex(2), ex(3), ex(4)]),
    }
}

/// A total integer weighting of the cycles of one graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightMap {
    values: BTreeMap<Cycle, i64>,
}

impl WeightMap {
    pub fn from_values(values: BTreeMap<Cycle, i64>) -> Self {
        WeightMap { values }
    }

    pub fn evaluate(&self, c: &Cycle) -> Result<i64> {
        self.values
            .get(c)
            .copied()
            .ok_or_else(|| Error::UnknownWeightCycle(c.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Cycle, i64)> {
        self.values.iter().map(|(c, &w)| (c, w))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First cycle (in sorted order) where the two maps disagree, with
    /// both values; `None` means the maps are identical.
    pub fn first_difference(
        &self,
        other: &WeightMap,
    ) -> Option<(Cycle, Option<i64>, Option<i64>)> {
        let keys: std::collections::BTreeSet<&Cycle> =
            self.values.keys().chain(other.values.keys()).collect();
        for c in keys {
            let a = self.values.get(c).copied();
            let b = other.values.get(c).copied();
            if a != b {
                return Some(((*c).clone(), a, b));
            }
        }
        None
    }
}

/// A predicate over cycles, used to carve a length class into the
/// sub-families the tables distinguish.
#[derive(Clone, Debug, Serialize)]
pub enum CycleCond {
    /// Passes through every listed vertex.
    ContainsAll(Vec<VertexLabel>),
    /// Misses at least one listed vertex.
    NotContainsAll(Vec<VertexLabel>),
    /// Passes through none of the listed vertices.
    AvoidsAll(Vec<VertexLabel>),
    /// Passes through at least one listed vertex.
    MeetsAny(Vec<VertexLabel>),
}

impl CycleCond {
    pub fn holds(&self, c: &Cycle) -> bool {
        match self {
            CycleCond::ContainsAll(vs) => c.contains_all(vs),
            CycleCond::NotContainsAll(vs) => !c.contains_all(vs),
            CycleCond::AvoidsAll(vs) => c.avoids_all(vs),
            CycleCond::MeetsAny(vs) => vs.iter().any(|v| c.contains(v)),
        }
    }
}

/// One line of a weight table: cycles of length `len` satisfying all of
/// `conds` get `value`. Cycles matched by no rule weigh zero.
#[derive(Clone, Debug, Serialize)]
pub struct WeightRule {
    pub label: &'static str,
    pub len: usize,
    pub conds: Vec<CycleCond>,
    pub value: i64,
}

impl WeightRule {
    pub fn matches(&self, c: &Cycle) -> bool {
        c.len() == self.len && self.conds.iter().all(|cond| cond.holds(c))
    }
}

fn rule(
    label: &'static str,
    len: usize,
    conds: Vec<CycleCond>,
    value: i64,
) -> WeightRule {
    WeightRule { label, len, conds, value }
}

/// The closed-form weight rules of a member. The rules of one member
/// match pairwise disjoint cycle sets.
pub fn weight_rules(member: FamilyMember) -> Vec<WeightRule> {
    use CycleCond::*;
    use FamilyMember::*;
    let x = || vl("x");
    let x1 = || vl("x'");
    let y = || vl("y");
    match member {
        K6 => vec![
            rule("k=6", 6, vec![], 1),
            rule("k=5", 5, vec![], -1),
        ],
        Q7 => vec![
            rule("k=7", 7, vec![], 1),
            rule("k=6 avoiding x", 6, vec![AvoidsAll(vec![x()])], 1),
            rule(
                "k=6 through x,u,v,w",
                6,
                vec![ContainsAll(vec![x(), u(), v(), w()])],
                -1,
            ),
            rule("k=5", 5, vec![], -1),
        ],
        Q8 => vec![
            rule("k=8", 8, vec![], 1),
            rule("k=6 avoiding x,x'", 6, vec![AvoidsAll(vec![x(), x1()])], 1),
            rule("k=6 meeting x or x'", 6, vec![MeetsAny(vec![x(), x1()])], -1),
        ],
        P7 => vec![
            rule("k=7", 7, vec![], 1),
            rule("k=5", 5, vec![], -1),
            rule("k=6 avoiding A", 6, vec![AvoidsAll(vec![a()])], -2),
        ],
        P8 => vec![
            rule("k=8", 8, vec![], 1),
            rule(
                "k=7 missing one of x,y,w",
                7,
                vec![NotContainsAll(vec![x(), y(), w()])],
                1,
            ),
            rule("k=7 avoiding A", 7, vec![AvoidsAll(vec![a()])], -1),
            rule("k=6 through w", 6, vec![ContainsAll(vec![w()])], -1),
            rule("k=5", 5, vec![], -1),
            rule("k=6 avoiding A,w", 6, vec![AvoidsAll(vec![a(), w()])], -2),
        ],
        P9 => vec![
            rule("k=9", 9, vec![], 1),
            rule(
                "k=8 through A,v,v'",
                8,
                vec![ContainsAll(vec![a(), v(), v1()])],
                1,
            ),
            rule(
                "k=7 missing one of A,v,v'",
                7,
                vec![NotContainsAll(vec![a(), v(), v1()])],
                -1,
            ),
            rule(
                "k=6 through A,v,v'",
                6,
                vec![ContainsAll(vec![a(), v(), v1()])],
                -1,
            ),
            rule("k=5", 5, vec![], -1),
            rule(
                "k=6 missing one of A,v,v'",
                6,
                vec![NotContainsAll(vec![a(), v(), v1()])],
                -2,
            ),
        ],
        P10 => vec![
            rule("k=9", 9, vec![], 1),
            rule("k=6", 6, vec![], -2),
            rule("k=5", 5, vec![], -1),
        ],
    }
}

/// Materializes a member's weight table over all of its cycles.
pub fn weight_table(member: FamilyMember) -> WeightMap {
    let rules = weight_rules(member);
    let values = build(member)
        .cycles()
        .into_iter()
        .map(|c| {
            let w = rules.iter().find(|r| r.matches(&c)).map_or(0, |r| r.value);
            (c, w)
        })
        .collect();
    WeightMap::from_values(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::Cycle;

    fn cyc(names: &[&str]) -> Cycle {
        Cycle::new(names.iter().map(|n| vl(n))).unwrap()
    }

    #[test]
    fn base_member_is_complete_on_six_vertices() {
        let g = build(FamilyMember::K6);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 15);
        assert!(g.vertices().all(|v| g.degree(v) == 5));
    }

    #[test]
    fn every_member_has_fifteen_edges() {
        for m in FamilyMember::ALL {
            let g = build(m);
            assert_eq!(g.edge_count(), 15, "{m}");
            assert_eq!(g.vertex_count(), m.vertex_count(), "{m}");
        }
    }

    #[test]
    fn first_exchange_gives_a_star_center_on_the_old_triangle() {
        let g = build(FamilyMember::Q7);
        let mut nbrs: Vec<String> =
            g.neighbors(&vl("x")).iter().map(|v| v.to_string()).collect();
        nbrs.sort();
        assert_eq!(nbrs, ["u", "v", "w"]);
        assert!(!g.adjacent(&vl("u"), &vl("v")));
    }

    #[test]
    fn ten_vertex_member_is_cubic() {
        let g = build(FamilyMember::P10);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
    }

    #[test]
    fn tripartite_member_has_a_degree_six_apex_and_its_triangle() {
        let g = build(FamilyMember::P7);
        assert_eq!(g.degree(&vl("A")), 6);
        assert!(cyc(&["A", "x", "y"]).is_valid_in(&g));
    }

    #[test]
    fn member_names_parse_case_insensitively() {
        assert_eq!(FamilyMember::parse("p10").unwrap(), FamilyMember::P10);
        assert!(matches!(
            FamilyMember::parse("K7"),
            Err(Error::UnknownMember(_))
        ));
    }

    #[test]
    fn weight_spot_checks() {
        let k6 = weight_table(FamilyMember::K6);
        assert_eq!(k6.evaluate(&cyc(&["u", "v", "w", "u'", "v'"])).unwrap(), -1);
        assert_eq!(k6.evaluate(&cyc(&["u", "v", "w"])).unwrap(), 0);

        let q7 = weight_table(FamilyMember::Q7);
        assert_eq!(
            q7.evaluate(&cyc(&["u", "u'", "v", "v'", "w", "A"])).unwrap(),
            1,
            "six-cycle avoiding x"
        );

        let p8 = weight_table(FamilyMember::P8);
        assert_eq!(
            p8.evaluate(&cyc(&["u", "x", "v", "u'", "y", "v'"])).unwrap(),
            -2,
            "six-cycle avoiding both A and w"
        );

        let p10 = weight_table(FamilyMember::P10);
        let six = build(FamilyMember::P10).k_cycles(6);
        assert!(!six.is_empty());
        for c in six {
            assert_eq!(p10.evaluate(&c).unwrap(), -2);
        }
    }

    #[test]
    fn unknown_cycle_is_an_evaluation_error() {
        let k6 = weight_table(FamilyMember::K6);
        assert!(matches!(
            k6.evaluate(&cyc(&["u", "v", "nope"])),
            Err(Error::UnknownWeightCycle(_))
        ));
    }

    #[test]
    fn rules_of_a_member_never_overlap() {
        for m in FamilyMember::ALL {
            let rules = weight_rules(m);
            for c in build(m).cycles() {
                let hits: Vec<&str> =
                    rules.iter().filter(|r| r.matches(&c)).map(|r| r.label).collect();
                assert!(hits.len() <= 1, "{m}: {c} matches {hits:?}");
            }
        }
    }

    #[test]
    fn every_rule_matches_some_cycle() {
        for m in FamilyMember::ALL {
            let cycles = build(m).cycles();
            for r in weight_rules(m) {
                assert!(
                    cycles.iter().any(|c| r.matches(c)),
                    "{m}: rule `{}` matches nothing",
                    r.label
                );
            }
        }
    }

    #[test]
    fn weight_values_stay_in_range() {
        for m in FamilyMember::ALL {
            for (_, w) in weight_table(m).iter() {
                assert!((-2..=1).contains(&w), "{m}: weight {w}");
            }
        }
    }
}
