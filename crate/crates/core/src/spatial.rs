//! Spatial embeddings: vertex coordinates, edge polylines, and the
//! crossing data of a planar projection.
//!
//! Points project along -z onto the xy-plane; at a crossing the strand
//! with the larger z passes over. A projection that is not generic
//! (tangencies, crossings at vertices or polyline corners, multiple
//! points) is reported as an error naming the offending pair. Nothing is
//! perturbed silently; callers re-randomize or rotate instead.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexLabel};

/// Distance below which projected features are considered coincident and
/// the projection is rejected as degenerate.
pub const GENERICITY_EPS: f64 = 1e-9;

/// One straight piece of an edge polyline. `index` counts pieces from the
/// lexicographically smaller endpoint; `count` is the total for the edge.
#[derive(Clone, Debug)]
pub struct Segment {
    pub edge: Edge,
    pub index: usize,
    pub count: usize,
    pub a: [f64; 3],
    pub b: [f64; 3],
}

impl Segment {
    /// Whether this piece is the one meeting the graph vertex `v`.
    fn touches_vertex(&self, v: &VertexLabel) -> bool {
        let (lo, hi) = self.edge.ends();
        (v == lo && self.index == 0) || (v == hi && self.index == self.count - 1)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edge {} piece {}", self.edge, self.index)
    }
}

/// Where a strand passes through a crossing: which edge, which polyline
/// piece, how far along it, and the projected direction of travel in
/// stored polyline order.
#[derive(Clone, Debug)]
pub struct StrandPoint {
    pub edge: Edge,
    pub segment: usize,
    pub t: f64,
    pub dir: [f64; 2],
}

#[derive(Clone, Debug)]
pub struct Crossing {
    pub over: StrandPoint,
    pub under: StrandPoint,
    pub point: [f64; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpatialEmbedding {
    graph: Graph,
    positions: BTreeMap<VertexLabel, [f64; 3]>,
    waypoints: BTreeMap<Edge, Vec<[f64; 3]>>,
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    norm(sub(a, b))
}

fn sub2(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn norm2(a: [f64; 2]) -> f64 {
    (a[0] * a[0] + a[1] * a[1]).sqrt()
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    norm2(sub2(a, b))
}

fn xy(p: [f64; 3]) -> [f64; 2] {
    [p[0], p[1]]
}

/// Minimum distance between two 3D segments (closest-point clamping).
fn segment_distance(p1: [f64; 3], q1: [f64; 3], p2: [f64; 3], q2: [f64; 3]) -> f64 {
    let d1 = sub(q1, p1);
    let d2 = sub(q2, p2);
    let r = sub(p1, p2);
    let a = dot(d1, d1);
    let e = dot(d2, d2);
    if a == 0.0 && e == 0.0 {
        return dist(p1, p2);
    }
    let f = dot(d2, r);
    let (s, t);
    if a == 0.0 {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot(d1, r);
        if e == 0.0 {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot(d1, d2);
            let denom = a * e - b * b;
            let s0 = if denom != 0.0 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            } else {
                t = t0;
                s = s0;
            }
        }
    }
    let c1 = [p1[0] + s * d1[0], p1[1] + s * d1[1], p1[2] + s * d1[2]];
    let c2 = [p2[0] + t * d2[0], p2[1] + t * d2[1], p2[2] + t * d2[2]];
    dist(c1, c2)
}

impl SpatialEmbedding {
    /// Checks structure only: every vertex positioned, waypoints attached
    /// to real edges, all coordinates finite. Geometry is checked by
    /// `validate`.
    pub fn new(
        graph: Graph,
        positions: BTreeMap<VertexLabel, [f64; 3]>,
        waypoints: BTreeMap<Edge, Vec<[f64; 3]>>,
    ) -> Result<Self> {
        for v in graph.vertices() {
            match positions.get(v) {
                None => {
                    return Err(Error::InvalidEmbedding(format!(
                        "vertex `{v}` has no position"
                    )))
                }
                Some(p) if !p.iter().all(|c| c.is_finite()) => {
                    return Err(Error::InvalidEmbedding(format!(
                        "vertex `{v}` has a non-finite coordinate"
                    )))
                }
                _ => {}
            }
        }
        for v in positions.keys() {
            if !graph.contains_vertex(v) {
                return Err(Error::InvalidEmbedding(format!(
                    "position given for unknown vertex `{v}`"
                )));
            }
        }
        for (e, pts) in &waypoints {
            if !graph.contains_edge(e) {
                return Err(Error::InvalidEmbedding(format!(
                    "waypoints given for unknown edge {e}"
                )));
            }
            if pts.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
                return Err(Error::InvalidEmbedding(format!(
                    "edge {e} has a non-finite waypoint"
                )));
            }
        }
        Ok(SpatialEmbedding { graph, positions, waypoints })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn position(&self, v: &VertexLabel) -> [f64; 3] {
        self.positions[v]
    }

    /// The polyline of an edge, from its lexicographically smaller
    /// endpoint to the larger one.
    pub fn polyline(&self, e: &Edge) -> Vec<[f64; 3]> {
        let (lo, hi) = e.ends();
        let mut pts = vec![self.positions[lo]];
        if let Some(ws) = self.waypoints.get(e) {
            pts.extend_from_slice(ws);
        }
        pts.push(self.positions[hi]);
        pts
    }

    pub fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        for e in self.graph.edges() {
            let pts = self.polyline(e);
            let count = pts.len() - 1;
            for i in 0..count {
                out.push(Segment {
                    edge: e.clone(),
                    index: i,
                    count,
                    a: pts[i],
                    b: pts[i + 1],
                });
            }
        }
        out
    }

    /// 3D points the two segments share by construction: a common
    /// polyline corner or a common graph vertex. Coincidence anywhere
    /// else is an embedding defect, not a shared point.
    fn shared_points(&self, s1: &Segment, s2: &Segment) -> Vec<[f64; 3]> {
        if s1.edge == s2.edge {
            if s1.index + 1 == s2.index {
                return vec![s1.b];
            }
            if s2.index + 1 == s1.index {
                return vec![s2.b];
            }
            return Vec::new();
        }
        let (lo1, hi1) = s1.edge.ends();
        let mut out = Vec::new();
        for v in [lo1, hi1] {
            if s2.edge.touches(v) && s1.touches_vertex(v) && s2.touches_vertex(v) {
                out.push(self.positions[v]);
            }
        }
        out
    }

    /// Geometric validity: distinct straight pieces of the embedding stay
    /// apart except at shared corners, and nothing degenerates to a
    /// point.
    pub fn validate(&self) -> Result<()> {
        let eps = GENERICITY_EPS;
        let segs = self.segments();
        for s in &segs {
            if dist(s.a, s.b) <= eps {
                return Err(Error::InvalidEmbedding(format!(
                    "{s} has length below tolerance"
                )));
            }
        }
        for (i, s1) in segs.iter().enumerate() {
            for s2 in &segs[i + 1..] {
                let shared = self.shared_points(s1, s2);
                if shared.is_empty() {
                    let d = segment_distance(s1.a, s1.b, s2.a, s2.b);
                    if d <= eps {
                        return Err(Error::InvalidEmbedding(format!(
                            "{s1} and {s2} pass within tolerance of each other"
                        )));
                    }
                } else {
                    // One shared corner: the pieces must leave it in
                    // genuinely different directions.
                    let p = shared[0];
                    let out1 = if dist(s1.a, p) <= eps { sub(s1.b, p) } else { sub(s1.a, p) };
                    let out2 = if dist(s2.a, p) <= eps { sub(s2.b, p) } else { sub(s2.a, p) };
                    let sin_area = norm(cross(out1, out2));
                    if sin_area <= eps * norm(out1) * norm(out2) && dot(out1, out2) > 0.0 {
                        return Err(Error::InvalidEmbedding(format!(
                            "{s1} and {s2} overlap at a shared corner"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Projects along -z and returns every crossing, or the first
    /// degeneracy found.
    pub fn project(&self) -> Result<Vec<Crossing>> {
        self.validate()?;
        let segs = self.segments();
        let mut crossings: Vec<Crossing> = Vec::new();
        for (i, s1) in segs.iter().enumerate() {
            for s2 in &segs[i + 1..] {
                if let Some(c) = self.intersect_projected(s1, s2)? {
                    crossings.push(c);
                }
            }
        }
        for (i, c1) in crossings.iter().enumerate() {
            for c2 in &crossings[i + 1..] {
                if dist2(c1.point, c2.point) <= GENERICITY_EPS {
                    return Err(Error::DegenerateProjection(format!(
                        "multiple point at ({:.6}, {:.6})",
                        c1.point[0], c1.point[1]
                    )));
                }
            }
        }
        Ok(crossings)
    }

    fn intersect_projected(&self, s1: &Segment, s2: &Segment) -> Result<Option<Crossing>> {
        let eps = GENERICITY_EPS;
        let a1 = xy(s1.a);
        let b1 = xy(s1.b);
        let a2 = xy(s2.a);
        let b2 = xy(s2.b);
        let d1 = sub2(b1, a1);
        let d2 = sub2(b2, a2);
        let l1 = norm2(d1);
        let l2 = norm2(d2);
        if l1 <= eps || l2 <= eps {
            let which = if l1 <= eps { s1 } else { s2 };
            return Err(Error::DegenerateProjection(format!(
                "{which} projects to a point"
            )));
        }
        let shared: Vec<[f64; 2]> =
            self.shared_points(s1, s2).into_iter().map(xy).collect();
        let denom = cross2(d1, d2);
        if denom.abs() <= eps * l1 * l2 {
            // Parallel in projection. Offsets of s2's ends from the line
            // through s1 decide between disjoint and collinear.
            let off_a = cross2(d1, sub2(a2, a1)).abs() / l1;
            let off_b = cross2(d1, sub2(b2, a1)).abs() / l1;
            if off_a.min(off_b) > eps {
                return Ok(None);
            }
            let u = [d1[0] / l1, d1[1] / l1];
            let proj = |p: [f64; 2]| (p[0] - a1[0]) * u[0] + (p[1] - a1[1]) * u[1];
            let (sa, sb) = (proj(a2), proj(b2));
            let lo = sa.min(sb).max(0.0);
            let hi = sa.max(sb).min(l1);
            if hi - lo > eps {
                return Err(Error::DegenerateProjection(format!(
                    "{s1} and {s2} overlap in projection"
                )));
            }
            if hi - lo > -eps && shared.is_empty() {
                return Err(Error::DegenerateProjection(format!(
                    "{s1} and {s2} touch end to end in projection"
                )));
            }
            return Ok(None);
        }
        let t = cross2(sub2(a2, a1), d2) / denom;
        let u = cross2(sub2(a2, a1), d1) / denom;
        let m1 = eps / l1;
        let m2 = eps / l2;
        if t < -m1 || t > 1.0 + m1 || u < -m2 || u > 1.0 + m2 {
            return Ok(None);
        }
        let p = [a1[0] + t * d1[0], a1[1] + t * d1[1]];
        if t <= m1 || t >= 1.0 - m1 || u <= m2 || u >= 1.0 - m2 {
            if shared.iter().any(|sp| dist2(p, *sp) <= eps) {
                return Ok(None);
            }
            return Err(Error::DegenerateProjection(format!(
                "{s1} and {s2} cross at a strand endpoint"
            )));
        }
        let z1 = s1.a[2] + t * (s1.b[2] - s1.a[2]);
        let z2 = s2.a[2] + u * (s2.b[2] - s2.a[2]);
        if (z1 - z2).abs() <= eps {
            return Err(Error::DegenerateProjection(format!(
                "{s1} and {s2} cross at equal depth"
            )));
        }
        let sp1 = StrandPoint {
            edge: s1.edge.clone(),
            segment: s1.index,
            t,
            dir: [d1[0] / l1, d1[1] / l1],
        };
        let sp2 = StrandPoint {
            edge: s2.edge.clone(),
            segment: s2.index,
            t: u,
            dir: [d2[0] / l2, d2[1] / l2],
        };
        Ok(Some(if z1 > z2 {
            Crossing { over: sp1, under: sp2, point: p }
        } else {
            Crossing { over: sp2, under: sp1, point: p }
        }))
    }

    /// Straight-edge embedding with vertices uniform in the unit cube,
    /// deterministic in `seed`. Redraws until the projection is generic.
    pub fn random(graph: &Graph, seed: u64) -> Result<SpatialEmbedding> {
        const ATTEMPTS: usize = 64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..ATTEMPTS {
            let positions = graph
                .vertex_set()
                .iter()
                .map(|v| {
                    (v.clone(), [unit_f64(&mut rng), unit_f64(&mut rng), unit_f64(&mut rng)])
                })
                .collect();
            let emb =
                SpatialEmbedding::new(graph.clone(), positions, BTreeMap::new())?;
            if emb.project().is_ok() {
                return Ok(emb);
            }
        }
        Err(Error::RetryExhausted(ATTEMPTS))
    }

    /// Applies a linear map to every point. With a generic rotation this
    /// yields a fresh projection direction for the same embedding.
    pub fn transformed(&self, m: [[f64; 3]; 3]) -> SpatialEmbedding {
        let app = |p: [f64; 3]| {
            [
                m[0][0] * p[0] + m[0][1] * p[1] + m[0][2] * p[2],
                m[1][0] * p[0] + m[1][1] * p[1] + m[1][2] * p[2],
                m[2][0] * p[0] + m[2][1] * p[1] + m[2][2] * p[2],
            ]
        };
        SpatialEmbedding {
            graph: self.graph.clone(),
            positions: self.positions.iter().map(|(v, p)| (v.clone(), app(*p))).collect(),
            waypoints: self
                .waypoints
                .iter()
                .map(|(e, ws)| (e.clone(), ws.iter().map(|p| app(*p)).collect()))
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> Result<String> {
        let file = EmbeddingFile {
            graph: GraphFile {
                vertices: self.graph.vertices().map(|v| v.to_string()).collect(),
                edges: self
                    .graph
                    .edges()
                    .map(|e| {
                        let (a, b) = e.ends();
                        (a.to_string(), b.to_string())
                    })
                    .collect(),
            },
            positions: self
                .positions
                .iter()
                .map(|(v, p)| (v.to_string(), *p))
                .collect(),
            waypoints: self
                .waypoints
                .iter()
                .map(|(e, ws)| {
                    let (a, b) = e.ends();
                    (format!("{a} {b}"), ws.clone())
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&file)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json_str(text: &str) -> Result<SpatialEmbedding> {
        let file: EmbeddingFile = serde_json::from_str(text)?;
        let graph = Graph::new(
            file.graph
                .vertices
                .into_iter()
                .map(VertexLabel::new)
                .collect::<Result<Vec<_>>>()?,
            file.graph
                .edges
                .into_iter()
                .map(|(a, b)| Ok((VertexLabel::new(a)?, VertexLabel::new(b)?)))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let positions = file
            .positions
            .into_iter()
            .map(|(name, p)| Ok((VertexLabel::new(name)?, p)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let mut waypoints = BTreeMap::new();
        for (key, pts) in file.waypoints {
            let parts: Vec<&str> = key.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!(
                    "waypoint key {key:?} must be two vertex names separated by a space"
                )));
            }
            let e = Edge::new(VertexLabel::new(parts[0])?, VertexLabel::new(parts[1])?)?;
            let (lo, hi) = e.ends();
            if key != format!("{lo} {hi}") {
                return Err(Error::Parse(format!(
                    "waypoint key {key:?} must list endpoints in sorted order as {lo:?} {hi:?}"
                )));
            }
            waypoints.insert(e, pts);
        }
        SpatialEmbedding::new(graph, positions, waypoints)
    }

    pub fn load(path: &Path) -> Result<SpatialEmbedding> {
        SpatialEmbedding::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string()?)?;
        Ok(())
    }
}

/// Uniform draw from [0, 1) using the top 53 bits of the generator.
fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[derive(Serialize, Deserialize)]
struct EmbeddingFile {
    graph: GraphFile,
    positions: BTreeMap<String, [f64; 3]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    waypoints: BTreeMap<String, Vec<[f64; 3]>>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vl;

    fn pair_graph() -> Graph {
        Graph::new(
            ["a", "b", "c", "d"].map(vl),
            [(vl("a"), vl("b")), (vl("c"), vl("d"))],
        )
        .unwrap()
    }

    fn emb(g: Graph, pos: &[(&str, [f64; 3])]) -> SpatialEmbedding {
        SpatialEmbedding::new(
            g,
            pos.iter().map(|(n, p)| (vl(n), *p)).collect(),
            BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn two_skew_segments_cross_once() {
        let e = emb(
            pair_graph(),
            &[
                ("a", [-1.0, 0.0, 0.0]),
                ("b", [1.0, 0.0, 0.0]),
                ("c", [0.0, -1.0, 1.0]),
                ("d", [0.0, 1.0, 1.0]),
            ],
        );
        let crossings = e.project().unwrap();
        assert_eq!(crossings.len(), 1);
        let c = &crossings[0];
        assert_eq!(c.over.edge.to_string(), "c-d");
        assert_eq!(c.under.edge.to_string(), "a-b");
        assert!(dist2(c.point, [0.0, 0.0]) < 1e-12);
    }

    #[test]
    fn edges_meeting_at_a_vertex_do_not_cross_there() {
        let g = Graph::new(
            ["a", "b", "c"].map(vl),
            [(vl("a"), vl("b")), (vl("b"), vl("c"))],
        )
        .unwrap();
        let e = emb(
            g,
            &[
                ("a", [0.0, 0.0, 0.0]),
                ("b", [1.0, 0.0, 0.0]),
                ("c", [1.0, 1.0, 0.5]),
            ],
        );
        assert!(e.project().unwrap().is_empty());
    }

    #[test]
    fn crossing_at_a_strand_endpoint_is_degenerate() {
        let e = emb(
            pair_graph(),
            &[
                ("a", [-1.0, 0.0, 0.0]),
                ("b", [1.0, 0.0, 0.0]),
                ("c", [0.0, -1.0, 1.0]),
                ("d", [0.0, 0.0, 1.0]),
            ],
        );
        assert!(matches!(e.project(), Err(Error::DegenerateProjection(_))));
    }

    #[test]
    fn projected_overlap_is_degenerate() {
        let e = emb(
            pair_graph(),
            &[
                ("a", [-1.0, 0.0, 0.0]),
                ("b", [1.0, 0.0, 0.0]),
                ("c", [-0.5, 0.0, 1.0]),
                ("d", [0.5, 0.0, 1.0]),
            ],
        );
        assert!(matches!(e.project(), Err(Error::DegenerateProjection(_))));
    }

    #[test]
    fn a_multiple_point_is_degenerate() {
        let g = Graph::new(
            ["a", "b", "c", "d", "e", "f"].map(vl),
            [(vl("a"), vl("b")), (vl("c"), vl("d")), (vl("e"), vl("f"))],
        )
        .unwrap();
        let e = emb(
            g,
            &[
                ("a", [-1.0, 0.0, 0.0]),
                ("b", [1.0, 0.0, 0.0]),
                ("c", [0.0, -1.0, 1.0]),
                ("d", [0.0, 1.0, 1.0]),
                ("e", [-1.0, -1.0, 2.0]),
                ("f", [1.0, 1.0, 2.0]),
            ],
        );
        assert!(matches!(e.project(), Err(Error::DegenerateProjection(_))));
    }

    #[test]
    fn segments_meeting_in_space_fail_validation() {
        let e = emb(
            pair_graph(),
            &[
                ("a", [-1.0, 0.0, 0.0]),
                ("b", [1.0, 0.0, 0.0]),
                ("c", [0.0, -1.0, 0.0]),
                ("d", [0.0, 1.0, 0.0]),
            ],
        );
        assert!(matches!(e.validate(), Err(Error::InvalidEmbedding(_))));
    }

    #[test]
    fn doubling_back_at_a_shared_vertex_fails_validation() {
        let g = Graph::new(
            ["a", "b", "c"].map(vl),
            [(vl("a"), vl("b")), (vl("b"), vl("c"))],
        )
        .unwrap();
        let e = emb(
            g,
            &[
                ("a", [0.0, 0.0, 0.0]),
                ("b", [2.0, 0.0, 0.0]),
                ("c", [1.0, 0.0, 0.0]),
            ],
        );
        assert!(matches!(e.validate(), Err(Error::InvalidEmbedding(_))));
    }

    #[test]
    fn an_edge_can_cross_itself_through_waypoints() {
        let g = Graph::new(["a", "b"].map(vl), [(vl("a"), vl("b"))]).unwrap();
        let e = SpatialEmbedding::new(
            g,
            [(vl("a"), [0.0, 0.0, 0.0]), (vl("b"), [0.5, -1.0, 1.0])]
                .into_iter()
                .collect(),
            [(
                Edge::new(vl("a"), vl("b")).unwrap(),
                vec![[2.0, 0.0, 0.0], [2.0, 1.0, 1.0]],
            )]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let crossings = e.project().unwrap();
        assert_eq!(crossings.len(), 1);
        let c = &crossings[0];
        assert_eq!(c.over.edge, c.under.edge);
        assert_eq!(c.over.segment, 2);
        assert_eq!(c.under.segment, 0);
    }

    #[test]
    fn missing_position_is_rejected() {
        let err = SpatialEmbedding::new(
            pair_graph(),
            [(vl("a"), [0.0; 3])].into_iter().collect(),
            BTreeMap::new(),
        );
        assert!(matches!(err, Err(Error::InvalidEmbedding(_))));
    }

    #[test]
    fn random_embeddings_are_deterministic_and_generic() {
        let g = crate::catalog::build(crate::catalog::FamilyMember::K6);
        let e1 = SpatialEmbedding::random(&g, 7).unwrap();
        let e2 = SpatialEmbedding::random(&g, 7).unwrap();
        assert_eq!(e1, e2);
        let e3 = SpatialEmbedding::random(&g, 8).unwrap();
        assert_ne!(e1, e3);
        assert!(!e1.project().unwrap().is_empty());
    }

    #[test]
    fn json_round_trip_preserves_the_embedding() {
        let g = Graph::new(["a", "b"].map(vl), [(vl("a"), vl("b"))]).unwrap();
        let e = SpatialEmbedding::new(
            g,
            [(vl("a"), [0.0, 0.0, 0.0]), (vl("b"), [1.0, 2.0, 3.0])]
                .into_iter()
                .collect(),
            [(Edge::new(vl("a"), vl("b")).unwrap(), vec![[0.5, 0.5, 0.5]])]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let text = e.to_json_string().unwrap();
        assert_eq!(SpatialEmbedding::from_json_str(&text).unwrap(), e);
    }

    #[test]
    fn unsorted_waypoint_key_is_rejected() {
        let text = r#"{
            "graph": {"vertices": ["a", "b"], "edges": [["a", "b"]]},
            "positions": {"a": [0, 0, 0], "b": [1, 0, 0]},
            "waypoints": {"b a": [[0.5, 0.5, 0.5]]}
        }"#;
        assert!(matches!(
            SpatialEmbedding::from_json_str(text),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn rotation_preserves_validity() {
        let g = crate::catalog::build(crate::catalog::FamilyMember::K6);
        let e = SpatialEmbedding::random(&g, 3).unwrap();
        let th: f64 = 0.7;
        let rot = [
            [th.cos(), -th.sin(), 0.0],
            [th.sin(), th.cos(), 0.0],
            [0.0, 0.0, 1.0],
        ];
        assert!(e.transformed(rot).validate().is_ok());
    }
}
