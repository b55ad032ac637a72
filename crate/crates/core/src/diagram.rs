//! Oriented link diagrams as based Gauss sequences.
//!
//! A diagram is a list of closed components, each a sequence of crossing
//! visits, plus a sign per crossing. Crossing signs follow the right-hand
//! convention: positive when the over direction turns counterclockwise
//! onto the under direction.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cycle::GammaElement;
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::spatial::{Crossing, SpatialEmbedding, StrandPoint};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Visit {
    pub crossing: usize,
    pub over: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientedDiagram {
    pub components: Vec<Vec<Visit>>,
    pub signs: Vec<i8>,
}

impl OrientedDiagram {
    /// Validates that every crossing is visited exactly once over and
    /// once under, and that every sign is present and unit.
    pub fn from_parts(components: Vec<Vec<Visit>>, signs: Vec<i8>) -> Result<Self> {
        if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::MalformedDiagram(format!("sign {s} is not +1 or -1")));
        }
        let mut over_count = vec![0usize; signs.len()];
        let mut under_count = vec![0usize; signs.len()];
        for v in components.iter().flatten() {
            if v.crossing >= signs.len() {
                return Err(Error::MalformedDiagram(format!(
                    "visit references crossing {} but only {} signs are given",
                    v.crossing + 1,
                    signs.len()
                )));
            }
            if v.over {
                over_count[v.crossing] += 1;
            } else {
                under_count[v.crossing] += 1;
            }
        }
        for c in 0..signs.len() {
            if over_count[c] != 1 || under_count[c] != 1 {
                return Err(Error::MalformedDiagram(format!(
                    "crossing {} is passed {} times over and {} times under",
                    c + 1,
                    over_count[c],
                    under_count[c]
                )));
            }
        }
        Ok(OrientedDiagram { components, signs })
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    /// Reverses the orientation of one component. Crossings between the
    /// reversed component and the rest change sign; self-crossings of the
    /// component do not.
    pub fn reversed(&self, comp: usize) -> OrientedDiagram {
        let mut on_comp = vec![0usize; self.signs.len()];
        for v in &self.components[comp] {
            on_comp[v.crossing] += 1;
        }
        let mut signs = self.signs.clone();
        for (c, s) in signs.iter_mut().enumerate() {
            if on_comp[c] == 1 {
                *s = -*s;
            }
        }
        let mut components = self.components.clone();
        components[comp].reverse();
        OrientedDiagram { components, signs }
    }

    /// Text form: `O1+U2-...` per component, components joined by ` | `,
    /// crossings numbered from 1.
    pub fn gauss_code(&self) -> String {
        let mut out = String::new();
        for (ci, comp) in self.components.iter().enumerate() {
            if ci > 0 {
                out.push_str(" | ");
            }
            for v in comp {
                let _ = write!(
                    out,
                    "{}{}{}",
                    if v.over { 'O' } else { 'U' },
                    v.crossing + 1,
                    if self.signs[v.crossing] > 0 { '+' } else { '-' }
                );
            }
        }
        out
    }

    /// Parses the `gauss_code` text form. The two visits of a crossing
    /// must agree on its sign.
    pub fn parse(text: &str) -> Result<OrientedDiagram> {
        let mut components = Vec::new();
        let mut signs: BTreeMap<usize, i8> = BTreeMap::new();
        let mut max_id = 0usize;
        for part in text.split('|') {
            let mut comp = Vec::new();
            let mut chars = part.chars().peekable();
            loop {
                while chars.peek().is_some_and(|c| c.is_whitespace()) {
                    chars.next();
                }
                let Some(ou) = chars.next() else { break };
                let over = match ou {
                    'O' | 'o' => true,
                    'U' | 'u' => false,
                    c => {
                        return Err(Error::Parse(format!(
                            "expected O or U in gauss code, found {c:?}"
                        )))
                    }
                };
                let mut digits = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    digits.push(chars.next().unwrap());
                }
                let id: usize = digits
                    .parse()
                    .map_err(|_| Error::Parse("crossing number missing in gauss code".into()))?;
                if id == 0 {
                    return Err(Error::Parse("crossing numbers start at 1".into()));
                }
                let sign = match chars.next() {
                    Some('+') => 1i8,
                    Some('-') => -1i8,
                    other => {
                        return Err(Error::Parse(format!(
                            "expected + or - after crossing {id}, found {other:?}"
                        )))
                    }
                };
                if let Some(prev) = signs.insert(id - 1, sign) {
                    if prev != sign {
                        return Err(Error::Parse(format!(
                            "crossing {id} appears with both signs"
                        )));
                    }
                }
                max_id = max_id.max(id);
                comp.push(Visit { crossing: id - 1, over });
            }
            components.push(comp);
        }
        let signs: Vec<i8> = (0..max_id)
            .map(|c| {
                signs.get(&c).copied().ok_or_else(|| {
                    Error::Parse(format!("crossing {} never appears", c + 1))
                })
            })
            .collect::<Result<_>>()?;
        OrientedDiagram::from_parts(components, signs)
    }
}

fn traversal_dir(sp: &StrandPoint, forward: bool) -> [f64; 2] {
    if forward {
        sp.dir
    } else {
        [-sp.dir[0], -sp.dir[1]]
    }
}

/// Builds the diagram of one cycle or disjoint cycle pair inside a
/// projected embedding. Components follow the element's canonical vertex
/// order; crossings where either strand leaves the element are dropped.
pub fn extract_subdiagram(
    emb: &SpatialEmbedding,
    crossings: &[Crossing],
    target: &GammaElement,
) -> Result<OrientedDiagram> {
    let comps = target.components();
    // Traversal direction per edge; an element uses each edge at most once.
    let mut edge_dir: BTreeMap<Edge, bool> = BTreeMap::new();
    for cyc in &comps {
        if !cyc.is_valid_in(emb.graph()) {
            return Err(Error::UnknownCycle(cyc.to_string()));
        }
        for (from, to) in cyc.steps() {
            let e = Edge::new(from.clone(), to.clone())?;
            let forward = from == e.ends().0;
            if edge_dir.insert(e, forward).is_some() {
                return Err(Error::Internal(
                    "element traverses an edge twice".into(),
                ));
            }
        }
    }

    let included: Vec<&Crossing> = crossings
        .iter()
        .filter(|c| {
            edge_dir.contains_key(&c.over.edge) && edge_dir.contains_key(&c.under.edge)
        })
        .collect();

    let signs: Vec<i8> = included
        .iter()
        .map(|c| {
            let od = traversal_dir(&c.over, edge_dir[&c.over.edge]);
            let ud = traversal_dir(&c.under, edge_dir[&c.under.edge]);
            if od[0] * ud[1] - od[1] * ud[0] > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();

    let mut components = Vec::with_capacity(comps.len());
    for cyc in &comps {
        let mut visits = Vec::new();
        for (from, to) in cyc.steps() {
            let e = Edge::new(from.clone(), to.clone())?;
            let forward = edge_dir[&e];
            // All crossing passes on this edge, ordered along the stored
            // polyline; a self-crossing contributes two passes.
            let mut passes: Vec<(usize, f64, Visit)> = Vec::new();
            for (id, c) in included.iter().enumerate() {
                if c.over.edge == e {
                    passes.push((
                        c.over.segment,
                        c.over.t,
                        Visit { crossing: id, over: true },
                    ));
                }
                if c.under.edge == e {
                    passes.push((
                        c.under.segment,
                        c.under.t,
                        Visit { crossing: id, over: false },
                    ));
                }
            }
            passes.sort_by(|a, b| {
                (a.0, a.1)
                    .partial_cmp(&(b.0, b.1))
                    .expect("crossing parameters are finite")
            });
            if !forward {
                passes.reverse();
            }
            visits.extend(passes.into_iter().map(|(_, _, v)| v));
        }
        components.push(visits);
    }
    OrientedDiagram::from_parts(components, signs)
}
