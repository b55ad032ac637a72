//! Triangle-to-star and star-to-triangle exchanges, together with the
//! correspondence they induce on cycles and disjoint cycle pairs.
//!
//! Replacing a triangle on `{a, b, c}` by a new degree-3 vertex `x` maps
//! every cycle that is not the triangle itself to a cycle of the new
//! graph: cycles avoiding the triangle's edges are unchanged, a cycle
//! through one triangle edge picks up `x` between its endpoints, and a
//! cycle through two triangle edges swaps the shared corner for `x`.
//! Preimages under this map are computed constructively and have size one
//! or two.

use std::collections::BTreeSet;
use std::fmt;

use crate::catalog::WeightMap;
use crate::cycle::{Cycle, GammaElement};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexLabel};
use crate::iso::are_isomorphic;

/// One triangle-to-star exchange: which triangle is removed and what the
/// new center vertex is called.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Exchange {
    triangle: Cycle,
    new_vertex: VertexLabel,
}

impl Exchange {
    pub fn new(triangle: Cycle, new_vertex: VertexLabel) -> Result<Self> {
        if triangle.len() != 3 {
            return Err(Error::Precondition(format!(
                "exchange needs a triangle, got a {}-cycle",
                triangle.len()
            )));
        }
        if triangle.contains(&new_vertex) {
            return Err(Error::NameCollision(new_vertex));
        }
        Ok(Exchange { triangle, new_vertex })
    }

    pub fn triangle(&self) -> &Cycle {
        &self.triangle
    }

    pub fn new_vertex(&self) -> &VertexLabel {
        &self.new_vertex
    }

    fn triangle_edges(&self) -> Vec<Edge> {
        self.triangle.edges()
    }

    /// The triangle corner that is not `a` or `b`.
    fn third_corner(&self, a: &VertexLabel, b: &VertexLabel) -> Option<&VertexLabel> {
        let rest: Vec<&VertexLabel> =
            self.triangle.vertices().iter().filter(|v| *v != a && *v != b).collect();
        match rest.as_slice() {
            [c] => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Exchange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.triangle, self.new_vertex)
    }
}

/// Removes the exchange's triangle edges and attaches a new vertex to its
/// three corners. Vertex and edge counts change by +1 and 0.
pub fn delta_to_y(g: &Graph, ex: &Exchange) -> Result<Graph> {
    for e in ex.triangle_edges() {
        if !g.contains_edge(&e) {
            return Err(Error::MissingTriangle(ex.triangle.to_string()));
        }
    }
    if g.contains_vertex(&ex.new_vertex) {
        return Err(Error::NameCollision(ex.new_vertex.clone()));
    }
    let mut vertices = g.vertex_set().clone();
    vertices.insert(ex.new_vertex.clone());
    let mut edges = g.edge_set().clone();
    for e in ex.triangle_edges() {
        edges.remove(&e);
    }
    for corner in ex.triangle.vertices() {
        edges.insert(Edge::new(corner.clone(), ex.new_vertex.clone())?);
    }
    Graph::from_parts(vertices, edges)
}

/// Collapses a degree-3 vertex into a triangle on its neighborhood. Fails
/// if any pair of neighbors is already adjacent, since that would create a
/// doubled edge.
pub fn y_to_delta(g: &Graph, center: &VertexLabel) -> Result<Graph> {
    if !g.contains_vertex(center) {
        return Err(Error::UnknownVertex(center.clone()));
    }
    let deg = g.degree(center);
    if deg != 3 {
        return Err(Error::CenterDegree(center.clone(), deg));
    }
    let nbrs: Vec<VertexLabel> = g.neighbors(center).into_iter().cloned().collect();
    let mut new_edges = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let e = Edge::new(nbrs[i].clone(), nbrs[j].clone())?;
            if g.contains_edge(&e) {
                return Err(Error::CollapseMultiEdge(center.clone(), e.to_string()));
            }
            new_edges.push(e);
        }
    }
    let mut vertices = g.vertex_set().clone();
    vertices.remove(center);
    let mut edges: BTreeSet<Edge> =
        g.edge_set().iter().filter(|e| !e.touches(center)).cloned().collect();
    edges.extend(new_edges);
    Graph::from_parts(vertices, edges)
}

/// Image of a cycle or disjoint pair under the exchange. The exchanged
/// triangle itself (alone or as a pair component) has no image.
pub fn phi_forward(el: &GammaElement, ex: &Exchange) -> Result<GammaElement> {
    if el.contains(&ex.new_vertex) {
        return Err(Error::Precondition(format!(
            "element already contains the new vertex `{}`",
            ex.new_vertex
        )));
    }
    if el.components().iter().any(|c| **c == ex.triangle) {
        return Err(Error::ContainsTriangle);
    }
    let te = ex.triangle_edges();
    let mut mapped = Vec::new();
    for comp in el.components() {
        let used: Vec<Edge> =
            comp.edges().into_iter().filter(|e| te.contains(e)).collect();
        let new_comp = match used.len() {
            0 => (*comp).clone(),
            1 => {
                let (a, b) = used[0].ends();
                let mut seq = Vec::with_capacity(comp.len() + 1);
                for (p, q) in comp.steps() {
                    seq.push(p.clone());
                    if (p == a && q == b) || (p == b && q == a) {
                        seq.push(ex.new_vertex.clone());
                    }
                }
                Cycle::new(seq)?
            }
            2 => {
                let shared = comp
                    .vertices()
                    .iter()
                    .find(|v| used.iter().all(|e| e.touches(v)))
                    .ok_or_else(|| {
                        Error::Internal("two used triangle edges share no vertex".into())
                    })?
                    .clone();
                Cycle::new(comp.vertices().iter().map(|v| {
                    if *v == shared {
                        ex.new_vertex.clone()
                    } else {
                        v.clone()
                    }
                }))?
            }
            _ => return Err(Error::ContainsTriangle),
        };
        mapped.push(new_comp);
    }
    GammaElement::from_components(mapped)
}

/// All elements mapping to `el` under [`phi_forward`]. The result has one
/// or two entries: a cycle through the new vertex pulls back to the cycle
/// with the star path shortcut to a triangle edge, plus (when the third
/// corner is free) the cycle rerouted through that corner.
pub fn phi_preimage(el: &GammaElement, ex: &Exchange) -> Result<Vec<GammaElement>> {
    let x = &ex.new_vertex;
    let comps = el.components();
    let holders: Vec<usize> =
        (0..comps.len()).filter(|&i| comps[i].contains(x)).collect();

    let out = match holders.as_slice() {
        [] => vec![el.clone()],
        [k] => {
            let comp = comps[*k];
            let (a, b) = comp
                .neighbors_on_cycle(x)
                .ok_or_else(|| Error::Internal("holder lost the center vertex".into()))?;
            if !ex.triangle.contains(a) || !ex.triangle.contains(b) {
                return Err(Error::Precondition(format!(
                    "neighbors of `{x}` on {comp} are not corners of {}",
                    ex.triangle
                )));
            }
            let c = ex
                .third_corner(a, b)
                .ok_or_else(|| Error::Internal("triangle without a third corner".into()))?
                .clone();

            let mut candidates = Vec::new();
            let shortcut =
                Cycle::new(comp.vertices().iter().filter(|v| *v != x).cloned())?;
            candidates.push(shortcut);
            if !el.contains(&c) {
                let reroute = Cycle::new(comp.vertices().iter().map(|v| {
                    if v == x {
                        c.clone()
                    } else {
                        v.clone()
                    }
                }))?;
                candidates.push(reroute);
            }
            // The exchanged triangle is outside the forward map's domain.
            candidates.retain(|cand| *cand != ex.triangle);

            let mut result = Vec::new();
            for cand in candidates {
                let mut new_comps: Vec<Cycle> =
                    comps.iter().map(|c| (*c).clone()).collect();
                new_comps[*k] = cand;
                result.push(GammaElement::from_components(new_comps)?);
            }
            result
        }
        _ => {
            return Err(Error::Precondition(
                "disjoint components cannot share the center vertex".into(),
            ))
        }
    };

    let mut out = out;
    out.sort();
    debug_assert!(out
        .iter()
        .all(|pre| phi_forward(pre, ex).map(|img| img == *el).unwrap_or(false)));
    Ok(out)
}

/// Pulls a total cycle weighting on the pre-exchange graph back to the
/// post-exchange graph: the new weight of a cycle is the sum of the old
/// weights over its preimages.
pub fn pullback_weights(w: &WeightMap, ex: &Exchange, g_after: &Graph) -> Result<WeightMap> {
    let mut values = std::collections::BTreeMap::new();
    for cycle in g_after.cycles() {
        let mut total = 0i64;
        for pre in phi_preimage(&GammaElement::Cycle(cycle.clone()), ex)? {
            match pre {
                GammaElement::Cycle(c) => total += w.evaluate(&c)?,
                GammaElement::Pair(_) => {
                    return Err(Error::Internal(
                        "preimage of a cycle must be a cycle".into(),
                    ))
                }
            }
        }
        values.insert(cycle, total);
    }
    Ok(WeightMap::from_values(values))
}

/// Applies a sequence of exchanges, pulling the weighting back through
/// each step. Returns the final graph and weighting.
pub fn pullback_chain(
    base_graph: &Graph,
    base_weights: &WeightMap,
    route: &[Exchange],
) -> Result<(Graph, WeightMap)> {
    let mut g = base_graph.clone();
    let mut w = base_weights.clone();
    for ex in route {
        let next = delta_to_y(&g, ex)?;
        w = pullback_weights(&w, ex, &next)?;
        g = next;
    }
    Ok((g, w))
}

/// Whether every way of exchanging a proper subset of the given triangles
/// yields the same graph up to isomorphism. The triangles must be
/// pairwise edge-disjoint, so the exchanges inside one subset commute and
/// only the subset choice matters.
pub fn is_stable(g: &Graph, triangles: &[Cycle]) -> Result<bool> {
    for t in triangles {
        if t.len() != 3 {
            return Err(Error::Precondition(format!("{t} is not a triangle")));
        }
        for e in t.edges() {
            if !g.contains_edge(&e) {
                return Err(Error::MissingTriangle(t.to_string()));
            }
        }
    }
    for i in 0..triangles.len() {
        for j in i + 1..triangles.len() {
            let ei = triangles[i].edges();
            if triangles[j].edges().iter().any(|e| ei.contains(e)) {
                return Err(Error::NotEdgeDisjoint(
                    triangles[i].to_string(),
                    triangles[j].to_string(),
                ));
            }
        }
    }

    let k = triangles.len();
    for l in 1..k {
        let mut reference: Option<Graph> = None;
        for subset in subsets_of_size(k, l) {
            let produced = apply_subset(g, triangles, &subset)?;
            if cfg!(debug_assertions) {
                let mut rev = subset.clone();
                rev.reverse();
                debug_assert_eq!(produced, apply_subset(g, triangles, &rev)?);
            }
            match &reference {
                None => reference = Some(produced),
                Some(r) => {
                    if !are_isomorphic(r, &produced) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn apply_subset(g: &Graph, triangles: &[Cycle], subset: &[usize]) -> Result<Graph> {
    let mut out = g.clone();
    for &i in subset {
        let name = fresh_label(&out, i);
        out = delta_to_y(&out, &Exchange::new(triangles[i].clone(), name)?)?;
    }
    Ok(out)
}

fn fresh_label(g: &Graph, i: usize) -> VertexLabel {
    let mut name = format!("s{i}");
    while g.contains_vertex(&VertexLabel::new(name.clone()).expect("fresh name")) {
        name.push('*');
    }
    VertexLabel::new(name).expect("fresh name")
}

fn subsets_of_size(n: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, l, cur, out);
            cur.pop();
        }
    }
    rec(0, n, l, &mut cur, &mut out);
    out
}

/// One line of an exchange script.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExchangeStep {
    /// `DY a b c -> x`
    DeltaToY { corners: [VertexLabel; 3], new_vertex: VertexLabel },
    /// `YD x`
    YToDelta(VertexLabel),
}

/// Parses an exchange script: one step per line, `#` comments allowed.
pub fn parse_script(text: &str) -> Result<Vec<ExchangeStep>> {
    let mut steps = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let step = match toks.as_slice() {
            ["DY", a, b, c, "->", x] => ExchangeStep::DeltaToY {
                corners: [VertexLabel::new(*a)?, VertexLabel::new(*b)?, VertexLabel::new(*c)?],
                new_vertex: VertexLabel::new(*x)?,
            },
            ["YD", x] => ExchangeStep::YToDelta(VertexLabel::new(*x)?),
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected `DY a b c -> x` or `YD x`, got {line:?}",
                    no + 1
                )))
            }
        };
        steps.push(step);
    }
    Ok(steps)
}

pub fn apply_script(g: &Graph, steps: &[ExchangeStep]) -> Result<Graph> {
    let mut out = g.clone();
    for step in steps {
        out = match step {
            ExchangeStep::DeltaToY { corners, new_vertex } => {
                let tri = Cycle::new(corners.iter().cloned())?;
                delta_to_y(&out, &Exchange::new(tri, new_vertex.clone())?)?
            }
            ExchangeStep::YToDelta(x) => y_to_delta(&out, x)?,
        };
    }
    Ok(out)
}
