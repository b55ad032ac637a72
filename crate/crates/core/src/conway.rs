//! Conway polynomial and linking number of oriented diagrams.
//!
//! The polynomial is computed by skein recursion: walking the components
//! in order, the first crossing met under before over is switched and
//! smoothed, giving nabla(D) = nabla(switched) + sign * z * nabla(smoothed).
//! A walk with no such crossing is descending, hence an unlink: nabla is
//! 1 for one component and 0 otherwise. Diagrams are first stripped of
//! kinks and removable bigons, and results are memoized on the relabeled
//! Gauss code.

use std::collections::HashMap;
use std::fmt;

use crate::diagram::OrientedDiagram;
use crate::error::{Error, Result};

/// Polynomial in z with integer coefficients; index = power of z.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ConwayPolynomial {
    coeffs: Vec<i64>,
}

impl ConwayPolynomial {
    pub fn zero() -> Self {
        ConwayPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ConwayPolynomial { coeffs: vec![1] }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        let mut p = ConwayPolynomial { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Second coefficient, the knot invariant this crate sums over cycles.
    pub fn a2(&self) -> i64 {
        self.coeff(2)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &ConwayPolynomial) -> ConwayPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        ConwayPolynomial::from_coeffs(
            (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect(),
        )
    }

    pub fn sub(&self, other: &ConwayPolynomial) -> ConwayPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        ConwayPolynomial::from_coeffs(
            (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect(),
        )
    }

    pub fn mul(&self, other: &ConwayPolynomial) -> ConwayPolynomial {
        if self.is_zero() || other.is_zero() {
            return ConwayPolynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ConwayPolynomial::from_coeffs(out)
    }

    /// Multiplies by s * z^k.
    pub fn shift_scale(&self, k: usize, s: i64) -> ConwayPolynomial {
        if self.is_zero() || s == 0 {
            return ConwayPolynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + k];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i + k] = a * s;
        }
        ConwayPolynomial::from_coeffs(out)
    }
}

impl fmt::Display for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Sum of signs of inter-component crossings, halved. Requires exactly
/// two components.
pub fn linking_number(d: &OrientedDiagram) -> Result<i64> {
    if d.components.len() != 2 {
        return Err(Error::ComponentCount { want: 2, got: d.components.len() });
    }
    let mut first_comp = vec![usize::MAX; d.signs.len()];
    let mut mixed = vec![false; d.signs.len()];
    for (ci, comp) in d.components.iter().enumerate() {
        for v in comp {
            if first_comp[v.crossing] == usize::MAX {
                first_comp[v.crossing] = ci;
            } else if first_comp[v.crossing] != ci {
                mixed[v.crossing] = true;
            }
        }
    }
    let sum: i64 = d
        .signs
        .iter()
        .enumerate()
        .filter(|(c, _)| mixed[*c])
        .map(|(_, &s)| s as i64)
        .sum();
    if sum.rem_euclid(2) != 0 {
        return Err(Error::Internal(
            "inter-component crossing signs sum to an odd number".into(),
        ));
    }
    Ok(sum / 2)
}

/// The diagram with one crossing switched over/under. Its sign flips.
pub fn switched(d: &OrientedDiagram, c: usize) -> OrientedDiagram {
    assert!(c < d.signs.len(), "crossing {c} out of range");
    let mut out = d.clone();
    for v in out.components.iter_mut().flatten() {
        if v.crossing == c {
            v.over = !v.over;
        }
    }
    out.signs[c] = -out.signs[c];
    out
}

/// The diagram with one crossing given its oriented smoothing. A
/// self-crossing splits its component in two; a crossing between two
/// components merges them. The crossing disappears and the rest are
/// renumbered down.
pub fn smoothed(d: &OrientedDiagram, c: usize) -> OrientedDiagram {
    assert!(c < d.signs.len(), "crossing {c} out of range");
    let mut locs: Vec<(usize, usize)> = Vec::new();
    for (ci, comp) in d.components.iter().enumerate() {
        for (pi, v) in comp.iter().enumerate() {
            if v.crossing == c {
                locs.push((ci, pi));
            }
        }
    }
    debug_assert_eq!(locs.len(), 2);
    let mut components = d.components.clone();
    if locs[0].0 == locs[1].0 {
        let (k, p, q) = (locs[0].0, locs[0].1, locs[1].1);
        let comp = components.remove(k);
        let inner = comp[p + 1..q].to_vec();
        let mut outer = comp[..p].to_vec();
        outer.extend_from_slice(&comp[q + 1..]);
        components.insert(k, inner);
        components.insert(k + 1, outer);
    } else {
        let (ci, p) = locs[0];
        let (cj, q) = locs[1];
        let a = components[ci].clone();
        let b = components[cj].clone();
        let mut merged = a[..p].to_vec();
        merged.extend_from_slice(&b[q + 1..]);
        merged.extend_from_slice(&b[..q]);
        merged.extend_from_slice(&a[p + 1..]);
        components[ci] = merged;
        components.remove(cj);
    }
    for v in components.iter_mut().flatten() {
        if v.crossing > c {
            v.crossing -= 1;
        }
    }
    let mut signs = d.signs.clone();
    signs.remove(c);
    OrientedDiagram { components, signs }
}

/// Removes the listed crossings and renumbers the rest down.
fn without_crossings(d: &OrientedDiagram, gone: &[usize]) -> OrientedDiagram {
    let mut map = vec![usize::MAX; d.signs.len()];
    let mut next = 0;
    for (c, slot) in map.iter_mut().enumerate() {
        if !gone.contains(&c) {
            *slot = next;
            next += 1;
        }
    }
    let components = d
        .components
        .iter()
        .map(|comp| {
            comp.iter()
                .filter(|v| map[v.crossing] != usize::MAX)
                .map(|v| crate::diagram::Visit { crossing: map[v.crossing], over: v.over })
                .collect()
        })
        .collect();
    let signs = d
        .signs
        .iter()
        .enumerate()
        .filter(|(c, _)| map[*c] != usize::MAX)
        .map(|(_, &s)| s)
        .collect();
    OrientedDiagram { components, signs }
}

/// One crossing-removing isotopy, if any applies: a kink (both visits of
/// a crossing adjacent on the walk) or a removable bigon (two crossings
/// adjacent on two strands, one strand over at both, opposite signs; the
/// sign condition separates these from clasps, which must stay).
fn reduce_once(d: &OrientedDiagram) -> Option<OrientedDiagram> {
    use std::collections::HashSet;
    for comp in &d.components {
        let n = comp.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if i != j && comp[i].crossing == comp[j].crossing {
                return Some(without_crossings(d, &[comp[i].crossing]));
            }
        }
    }
    let mut over_adjacent: HashSet<(usize, usize)> = HashSet::new();
    let mut under_adjacent: HashSet<(usize, usize)> = HashSet::new();
    for comp in &d.components {
        let n = comp.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if i == j || comp[i].crossing == comp[j].crossing {
                continue;
            }
            let key = (
                comp[i].crossing.min(comp[j].crossing),
                comp[i].crossing.max(comp[j].crossing),
            );
            match (comp[i].over, comp[j].over) {
                (true, true) => {
                    over_adjacent.insert(key);
                }
                (false, false) => {
                    under_adjacent.insert(key);
                }
                _ => {}
            }
        }
    }
    for &(a, b) in over_adjacent.intersection(&under_adjacent) {
        if d.signs[a] == -d.signs[b] {
            return Some(without_crossings(d, &[a, b]));
        }
    }
    None
}

/// Applies crossing-removing isotopies until none fit. Keeps the skein
/// recursion tractable on diagrams projected from dense polylines.
fn simplify(d: &OrientedDiagram) -> OrientedDiagram {
    let mut cur = d.clone();
    while let Some(next) = reduce_once(&cur) {
        cur = next;
    }
    cur
}

/// First crossing met under before over on the component walk, if any.
fn first_violation(d: &OrientedDiagram) -> Option<usize> {
    let mut seen = vec![false; d.signs.len()];
    for v in d.components.iter().flatten() {
        if !seen[v.crossing] {
            if !v.over {
                return Some(v.crossing);
            }
            seen[v.crossing] = true;
        }
    }
    None
}

/// Memo key: visits with crossings relabeled by first appearance.
fn relabeled_code(d: &OrientedDiagram) -> String {
    let mut relabel: HashMap<usize, usize> = HashMap::new();
    let mut out = String::new();
    for (ci, comp) in d.components.iter().enumerate() {
        if ci > 0 {
            out.push('|');
        }
        for v in comp {
            let next = relabel.len();
            let id = *relabel.entry(v.crossing).or_insert(next);
            out.push(if v.over { 'O' } else { 'U' });
            out.push_str(&id.to_string());
            out.push(if d.signs[v.crossing] > 0 { '+' } else { '-' });
        }
    }
    out
}

fn eval(d: OrientedDiagram, memo: &mut HashMap<String, ConwayPolynomial>) -> ConwayPolynomial {
    let d = simplify(&d);
    let key = relabeled_code(&d);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let result = match first_violation(&d) {
        None => {
            // Descending diagrams are unlinks.
            if d.components.len() == 1 {
                ConwayPolynomial::one()
            } else {
                ConwayPolynomial::zero()
            }
        }
        Some(c) => {
            let sign = d.signs[c] as i64;
            let sw = eval(switched(&d, c), memo);
            let sm = eval(smoothed(&d, c), memo);
            sw.add(&sm.shift_scale(1, sign))
        }
    };
    memo.insert(key, result.clone());
    result
}

pub fn conway_polynomial(d: &OrientedDiagram) -> ConwayPolynomial {
    let mut memo = HashMap::new();
    eval(d.clone(), &mut memo)
}

/// Second Conway coefficient of a knot diagram (one component).
pub fn a2_coefficient(d: &OrientedDiagram) -> Result<i64> {
    if d.components.len() != 1 {
        return Err(Error::ComponentCount { want: 1, got: d.components.len() });
    }
    Ok(conway_polynomial(d).a2())
}
