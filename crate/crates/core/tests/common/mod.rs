//! Shared test oracles and geometric shapes. Everything here recomputes
//! results by a different method than the library under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::path::PathBuf;

use petersen_cg::cycle::{Cycle, GammaElement};
use petersen_cg::diagram::OrientedDiagram;
use petersen_cg::exchange::{phi_forward, Exchange};
use petersen_cg::graph::{vl, Edge, Graph, VertexLabel};
use petersen_cg::spatial::SpatialEmbedding;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Cycle enumeration organized by vertex support: for every subset, the
/// cycles through exactly those vertices are the Hamiltonian cycles of
/// the induced subgraph, found by permutation search from a fixed start.
pub fn subset_cycle_oracle(g: &Graph) -> BTreeSet<Cycle> {
    fn extend(
        g: &Graph,
        subset: &[&VertexLabel],
        path: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut BTreeSet<Cycle>,
    ) {
        if path.len() == subset.len() {
            if g.adjacent(subset[*path.last().unwrap()], subset[path[0]]) {
                out.insert(
                    Cycle::new(path.iter().map(|&i| subset[i].clone())).unwrap(),
                );
            }
            return;
        }
        let cur = *path.last().unwrap();
        for i in 1..subset.len() {
            if !used[i] && g.adjacent(subset[cur], subset[i]) {
                used[i] = true;
                path.push(i);
                extend(g, subset, path, used, out);
                path.pop();
                used[i] = false;
            }
        }
    }

    let vs: Vec<&VertexLabel> = g.vertex_set().iter().collect();
    let n = vs.len();
    assert!(n <= 20, "oracle enumerates vertex subsets");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() < 3 {
            continue;
        }
        let subset: Vec<&VertexLabel> =
            (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
        // Every support vertex needs two induced neighbors.
        if !subset.iter().all(|v| {
            subset.iter().filter(|w| g.adjacent(v, w)).count() >= 2
        }) {
            continue;
        }
        let mut used = vec![false; subset.len()];
        used[0] = true;
        extend(g, &subset, &mut vec![0], &mut used, &mut out);
    }
    out
}

/// Correspondence preimages by exhaustive forward search over every
/// cycle and pair of the pre-exchange graph.
pub fn forward_search_preimages(
    el: &GammaElement,
    ex: &Exchange,
    g_before: &Graph,
) -> Vec<GammaElement> {
    g_before
        .gamma_bar()
        .into_iter()
        .filter(|cand| phi_forward(cand, ex).ok().as_ref() == Some(el))
        .collect()
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

fn unit(a: [f64; 3]) -> [f64; 3] {
    let n = dot(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

fn triple(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    dot(a, cross(b, c))
}

/// Signed solid angle of a spherical triangle on unit vectors.
fn spherical_triangle(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let num = triple(a, b, c);
    let den = 1.0 + dot(a, b) + dot(b, c) + dot(a, c);
    2.0 * num.atan2(den)
}

/// Exact Gauss linking integral of two disjoint closed polylines: the
/// per-segment-pair solid angle of the difference-direction quadrilateral,
/// summed and divided by 4 pi.
pub fn gauss_linking_integral(c1: &[[f64; 3]], c2: &[[f64; 3]]) -> f64 {
    let mut total = 0.0;
    for i in 0..c1.len() {
        let p1 = c1[i];
        let p2 = c1[(i + 1) % c1.len()];
        for j in 0..c2.len() {
            let q1 = c2[j];
            let q2 = c2[(j + 1) % c2.len()];
            let a = unit(sub(q1, p1));
            let b = unit(sub(q1, p2));
            let c = unit(sub(q2, p2));
            let d = unit(sub(q2, p1));
            total += spherical_triangle(a, b, c) + spherical_triangle(a, c, d);
        }
    }
    total / (4.0 * PI)
}

/// The closed polyline a cycle traces through an embedding, following
/// the cycle's canonical vertex order.
pub fn cycle_polyline(emb: &SpatialEmbedding, cycle: &Cycle) -> Vec<[f64; 3]> {
    let mut pts: Vec<[f64; 3]> = Vec::new();
    for (from, to) in cycle.steps() {
        let e = Edge::new(from.clone(), to.clone()).unwrap();
        let mut line = emb.polyline(&e);
        if from != e.ends().0 {
            line.reverse();
        }
        line.pop();
        pts.extend(line);
    }
    pts
}

/// Second Conway coefficient from a based Gauss diagram: interleaved
/// crossing pairs matching the pattern under(a) over(b) over(a) under(b),
/// weighted by the product of signs. The mirrored pattern
/// over(a) under(b) under(a) over(b) counts the same number; both are
/// returned so callers can assert the agreement.
pub fn gauss_diagram_a2(d: &OrientedDiagram) -> (i64, i64) {
    assert_eq!(d.components.len(), 1, "knot diagrams only");
    let visits = &d.components[0];
    let n = d.signs.len();
    let mut over_pos = vec![usize::MAX; n];
    let mut under_pos = vec![usize::MAX; n];
    for (pos, v) in visits.iter().enumerate() {
        if v.over {
            over_pos[v.crossing] = pos;
        } else {
            under_pos[v.crossing] = pos;
        }
    }
    let mut t3 = 0i64;
    let mut t1 = 0i64;
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let w = (d.signs[a] * d.signs[b]) as i64;
            if under_pos[a] < over_pos[b]
                && over_pos[b] < over_pos[a]
                && over_pos[a] < under_pos[b]
            {
                t3 += w;
            }
            if over_pos[a] < under_pos[b]
                && under_pos[b] < under_pos[a]
                && under_pos[a] < over_pos[b]
            {
                t1 += w;
            }
        }
    }
    (t3, t1)
}

/// Rotation built from three axis rotations; any angles well away from
/// multiples of pi/2 give a generic reprojection direction.
pub fn rotation_matrix(ax: f64, ay: f64, az: f64) -> [[f64; 3]; 3] {
    let (sx, cx) = ax.sin_cos();
    let (sy, cy) = ay.sin_cos();
    let (sz, cz) = az.sin_cos();
    let rx = [[1.0, 0.0, 0.0], [0.0, cx, -sx], [0.0, sx, cx]];
    let ry = [[cy, 0.0, sy], [0.0, 1.0, 0.0], [-sy, 0.0, cy]];
    let rz = [[cz, -sz, 0.0], [sz, cz, 0.0], [0.0, 0.0, 1.0]];
    mat_mul(&mat_mul(&rz, &ry), &rx)
}

fn mat_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Three fixed generic rotations for reprojection tests.
pub fn generic_rotations() -> [[[f64; 3]; 3]; 3] {
    [
        rotation_matrix(0.83, 0.41, 1.17),
        rotation_matrix(2.11, 0.67, 0.29),
        rotation_matrix(1.39, 2.03, 0.71),
    ]
}

/// Two triangles forming a negative Hopf link with exactly two crossings.
pub fn hopf_embedding() -> SpatialEmbedding {
    let g = Graph::new(
        ["p", "q", "r", "d", "e", "f"].map(vl),
        [
            (vl("p"), vl("q")),
            (vl("p"), vl("r")),
            (vl("q"), vl("r")),
            (vl("d"), vl("e")),
            (vl("d"), vl("f")),
            (vl("e"), vl("f")),
        ],
    )
    .unwrap();
    let positions: BTreeMap<_, _> = [
        (vl("p"), [-2.0, 0.0, 0.0]),
        (vl("q"), [2.0, 0.0, 0.1]),
        (vl("r"), [0.3, 3.0, 0.0]),
        (vl("d"), [0.0, 1.0, 2.0]),
        (vl("e"), [0.1, 1.2, -2.0]),
        (vl("f"), [0.0, 6.0, 0.0]),
    ]
    .into_iter()
    .collect();
    SpatialEmbedding::new(g, positions, BTreeMap::new()).unwrap()
}

/// Closed trefoil curve: a (2,3) torus knot sampled off-phase so the
/// projection stays generic.
pub fn trefoil_points(n: usize, shift: [f64; 3]) -> Vec<[f64; 3]> {
    (0..n)
        .map(|k| {
            let t = 0.1 + 2.0 * PI * k as f64 / n as f64;
            let r = 2.0 + (3.0 * t).cos();
            [
                r * (2.0 * t).cos() + shift[0],
                r * (2.0 * t).sin() + shift[1],
                (3.0 * t).sin() + shift[2],
            ]
        })
        .collect()
}

/// Closed figure-eight curve.
pub fn figure_eight_points(n: usize) -> Vec<[f64; 3]> {
    (0..n)
        .map(|k| {
            let t = 0.1 + 2.0 * PI * k as f64 / n as f64;
            let r = 2.0 + (2.0 * t).cos();
            [r * (3.0 * t).cos(), r * (3.0 * t).sin(), (4.0 * t).sin()]
        })
        .collect()
}

/// Granny knot: two translated copies of the trefoil opened at facing
/// extremes and joined by two bridges kept apart in y and z.
pub fn granny_points() -> Vec<[f64; 3]> {
    let n = 61;
    let p = trefoil_points(n, [0.0, 0.0, 0.0]);
    let q = trefoil_points(n, [8.0, 0.0, 0.0]);
    let a = (0..n)
        .max_by(|&i, &j| p[i][0].partial_cmp(&p[j][0]).unwrap())
        .unwrap();
    let b = (0..n)
        .min_by(|&i, &j| q[i][0].partial_cmp(&q[j][0]).unwrap())
        .unwrap();
    let mut pts = Vec::with_capacity(2 * n + 4);
    for k in 0..n {
        pts.push(p[(a + k) % n]);
    }
    pts.push([3.6, -0.45, 0.8]);
    pts.push([4.4, -0.45, 0.8]);
    for k in 0..n {
        pts.push(q[(b + k) % n]);
    }
    pts.push([4.4, 0.45, -0.8]);
    pts.push([3.6, 0.45, -0.8]);
    pts
}

/// Wraps a closed curve as an embedding of a triangle graph, spreading
/// the samples over three edges as waypoints.
pub fn knot_embedding(points: &[[f64; 3]]) -> SpatialEmbedding {
    let n = points.len();
    assert!(n >= 9);
    let (i1, i2) = (n / 3, 2 * n / 3);
    let g = Graph::new(
        ["k0", "k1", "k2"].map(vl),
        [(vl("k0"), vl("k1")), (vl("k1"), vl("k2")), (vl("k0"), vl("k2"))],
    )
    .unwrap();
    let positions: BTreeMap<_, _> = [
        (vl("k0"), points[0]),
        (vl("k1"), points[i1]),
        (vl("k2"), points[i2]),
    ]
    .into_iter()
    .collect();
    let mut back: Vec<[f64; 3]> = points[i2 + 1..].to_vec();
    back.reverse();
    let waypoints: BTreeMap<_, _> = [
        (Edge::new(vl("k0"), vl("k1")).unwrap(), points[1..i1].to_vec()),
        (Edge::new(vl("k1"), vl("k2")).unwrap(), points[i1 + 1..i2].to_vec()),
        (Edge::new(vl("k0"), vl("k2")).unwrap(), back),
    ]
    .into_iter()
    .collect();
    SpatialEmbedding::new(g, positions, waypoints).unwrap()
}

pub fn knot_cycle() -> Cycle {
    Cycle::new(["k0", "k1", "k2"].map(vl)).unwrap()
}
