//! Isomorphism classes of small clutters and graphs.
//!
//! The canonical form of a family of sets is the lexicographically least
//! incidence-matrix string over all vertex permutations. Families are grown
//! one edge at a time from canonical representatives, so every class with
//! `q` edges is reached from some class with `q - 1` edges.

use std::collections::BTreeMap;

use super::{set_order, vertices_of, Clutter};
use crate::error::{Error, Result};

/// Largest vertex count for which `n!` permutations are scanned.
pub const CANONICAL_VERTEX_LIMIT: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `"<n>:<row 1>.<row 2>..."`, row `i` being the incidence of vertex `i`
    /// with the canonically ordered edges.
    pub key: String,
    /// The relabeled clutter realizing the key.
    pub clutter: Clutter,
    /// `perm[old] = new`.
    pub perm: Vec<usize>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

fn apply(perm: &[usize], s: u64) -> u64 {
    vertices_of(s).into_iter().fold(0, |m, v| m | 1 << perm[v])
}

fn incidence_bytes(n: usize, sorted: &[u64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(n * sorted.len());
    for v in 0..n {
        out.extend(sorted.iter().map(|&e| (e >> v & 1) as u8));
    }
    out
}

struct Canonizer {
    n: usize,
    perms: Vec<Vec<usize>>,
}

impl Canonizer {
    fn new(n: usize) -> Result<Self> {
        if n > CANONICAL_VERTEX_LIMIT {
            return Err(Error::Budget(format!(
                "canonical forms limited to {CANONICAL_VERTEX_LIMIT} vertices, got {n}"
            )));
        }
        Ok(Canonizer { n, perms: permutations(n) })
    }

    /// Least incidence string, its sorted edge list and the permutation.
    fn canon(&self, sets: &[u64]) -> (Vec<u8>, Vec<u64>, usize) {
        let mut best: Option<(Vec<u8>, Vec<u64>, usize)> = None;
        for (k, perm) in self.perms.iter().enumerate() {
            let mut e: Vec<u64> = sets.iter().map(|&s| apply(perm, s)).collect();
            e.sort_by(|&a, &b| set_order(a, b));
            let bytes = incidence_bytes(self.n, &e);
            if best.as_ref().map_or(true, |(b, _, _)| bytes < *b) {
                best = Some((bytes, e, k));
            }
        }
        best.expect("at least one permutation")
    }
}

fn key_string(n: usize, q: usize, bytes: &[u8]) -> String {
    let rows: Vec<String> = (0..n)
        .map(|v| bytes[v * q..(v + 1) * q].iter().map(|b| char::from(b'0' + b)).collect())
        .collect();
    format!("{n}:{}", rows.join("."))
}

pub fn canonical_form(c: &Clutter) -> Result<CanonicalForm> {
    let canon = Canonizer::new(c.n())?;
    let (bytes, edges, k) = canon.canon(c.edges());
    Ok(CanonicalForm {
        key: key_string(c.n(), edges.len(), &bytes),
        clutter: Clutter::from_masks(c.n(), edges)?,
        perm: canon.perms[k].clone(),
    })
}

/// Canonical representatives of all antichains on `0..n` whose members are
/// drawn from `allowed`, with at most `q_max` members, grouped by size.
fn antichain_classes(n: usize, q_max: usize, allowed: &[u64]) -> Result<Vec<Vec<Vec<u64>>>> {
    let canon = Canonizer::new(n)?;
    let mut levels: Vec<Vec<Vec<u64>>> = vec![vec![Vec::new()]];
    while levels.len() <= q_max {
        let mut next: BTreeMap<Vec<u8>, Vec<u64>> = BTreeMap::new();
        for family in levels.last().unwrap() {
            for &m in allowed {
                if family.iter().any(|&e| e & m == e || e & m == m) {
                    continue;
                }
                let mut grown = family.clone();
                grown.push(m);
                let (bytes, sorted, _) = canon.canon(&grown);
                next.entry(bytes).or_insert(sorted);
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next.into_values().collect());
    }
    Ok(levels)
}

fn sorted_by_key(n: usize, families: impl Iterator<Item = Vec<u64>>) -> Result<Vec<Clutter>> {
    let canon = Canonizer::new(n)?;
    let mut out: Vec<(usize, Vec<u8>, Clutter)> = Vec::new();
    for f in families {
        let (bytes, _, _) = canon.canon(&f);
        out.push((f.len(), bytes, Clutter::from_masks(n, f)?));
    }
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(out.into_iter().map(|t| t.2).collect())
}

/// One representative per isomorphism class of clutters on exactly `n`
/// vertices with at most `q_max` edges, ordered by edge count then key.
/// Representatives are in canonical labeling.
pub fn enumerate_clutters(n: usize, q_max: usize) -> Result<Vec<Clutter>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let ground = (1u64 << n) - 1;
    let allowed: Vec<u64> = (1..=ground).collect();
    let levels = antichain_classes(n, q_max, &allowed)?;
    sorted_by_key(
        n,
        levels.into_iter().flatten().filter(|f| f.iter().fold(0, |m, &e| m | e) == ground),
    )
}

/// Simple graphs as edge bitmask lists (vertices `0..n`, isolated allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<u64>,
}

impl Graph {
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        loop {
            let grown = self
                .edges
                .iter()
                .filter(|&&e| e & seen != 0)
                .fold(seen, |m, &e| m | e);
            if grown == seen {
                break;
            }
            seen = grown;
        }
        seen.count_ones() as usize == self.n
    }

    /// Two-colouring by breadth-first search.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![None::<bool>; self.n];
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for &e in &self.edges {
                    if e >> u & 1 == 0 {
                        continue;
                    }
                    let w = (e & !(1 << u)).trailing_zeros() as usize;
                    match colour[w] {
                        None => {
                            colour[w] = Some(!colour[u].unwrap());
                            queue.push(w);
                        }
                        Some(c) if c == colour[u].unwrap() => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn to_clutter(&self) -> Result<Clutter> {
        Clutter::from_masks(self.n, self.edges.clone())
    }
}

/// All simple graphs on `n` vertices up to isomorphism.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    let mut allowed = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            allowed.push(1u64 << i | 1 << j);
        }
    }
    let levels = antichain_classes(n, allowed.len(), &allowed)?;
    Ok(levels.into_iter().flatten().map(|edges| Graph { n, edges }).collect())
}

/// Connected graphs on exactly `n ≥ 2` vertices up to isomorphism, as
/// clutters, ordered by edge count then key.
pub fn connected_graphs(n: usize) -> Result<Vec<Clutter>> {
    if n < 2 {
        return Ok(Vec::new());
    }
    let graphs = all_graphs(n)?;
    sorted_by_key(n, graphs.into_iter().filter(Graph::is_connected).map(|g| g.edges))
}
