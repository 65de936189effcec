//! Clutters (antichains of vertex sets), their covers, blockers and minors.
//!
//! Vertices are `0..n` internally and stored as bits of a `u64`, so a clutter
//! has at most 64 vertices. Edges are kept in canonical order: lexicographic
//! on their sorted vertex lists, which for an antichain is the same as
//! descending order of the 0/1 indicator vectors.

mod enumerate;
mod matrix_class;

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{input, Error, Result};
use crate::exact_math::{
    solve_ilp, Direction, IlpOutcome, LinearProgram, Rational, RationalMatrix, Sense,
};

pub use enumerate::{
    all_graphs, canonical_form, connected_graphs, enumerate_clutters, CanonicalForm, Graph,
    CANONICAL_VERTEX_LIMIT,
};
pub use matrix_class::{is_balanced, is_totally_unimodular, BalanceReport, UnimodularityReport};

pub const MAX_VERTICES: usize = 64;

/// Largest vertex count for which covers are found by scanning all subsets.
pub const EXHAUSTIVE_COVER_LIMIT: usize = 20;

/// Largest vertex count for the `3ⁿ` minor sweep of the packing check.
pub const PACKING_VERTEX_LIMIT: usize = 12;

pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | (1u64 << v))
}

pub fn vertices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Lexicographic order on the sorted vertex lists of two sets.
pub fn set_order(a: u64, b: u64) -> Ordering {
    let x = a ^ b;
    if x == 0 {
        return Ordering::Equal;
    }
    let v = x.trailing_zeros();
    let above = if v == 63 { 0 } else { !0u64 << (v + 1) };
    // The set containing v is smaller unless the other one stops before v.
    let (without_v, sign) = if a >> v & 1 == 1 { (b, Ordering::Less) } else { (a, Ordering::Greater) };
    if without_v & above != 0 {
        sign
    } else {
        sign.reverse()
    }
}

fn minimalize(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_by_key(|s| s.count_ones());
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| k & s == k) {
            kept.push(s);
        }
    }
    kept.sort_by(|&a, &b| set_order(a, b));
    kept
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clutter {
    n: usize,
    edges: Vec<u64>,
}

impl std::fmt::Debug for Clutter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let edges: Vec<Vec<usize>> = self.edge_lists().into_iter()
            .map(|e| e.into_iter().map(|v| v + 1).collect())
            .collect();
        write!(f, "Clutter(n={}, {:?})", self.n, edges)
    }
}

impl Clutter {
    /// Builds a clutter from 0-indexed vertex lists, rejecting anything that
    /// is not an antichain of nonempty sets covering all `n` vertices.
    pub fn new(n: usize, edges: &[Vec<usize>]) -> Result<Self> {
        if n > MAX_VERTICES {
            return input(format!("at most {MAX_VERTICES} vertices supported, got {n}"));
        }
        let mut masks = Vec::with_capacity(edges.len());
        for e in edges {
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return input(format!("vertex {} out of range 1..={n}", v + 1));
            }
            masks.push(mask_of(e));
        }
        Self::from_masks(n, masks)
    }

    pub fn from_masks(n: usize, masks: Vec<u64>) -> Result<Self> {
        if n > MAX_VERTICES {
            return input(format!("at most {MAX_VERTICES} vertices supported, got {n}"));
        }
        if masks.is_empty() {
            return input("a clutter needs at least one edge");
        }
        let ground = if n == 64 { !0 } else { (1u64 << n) - 1 };
        let mut union = 0;
        for (i, &a) in masks.iter().enumerate() {
            if a == 0 {
                return input("empty edge");
            }
            if a & !ground != 0 {
                return input(format!("edge {:?} leaves the vertex range", one_based(a)));
            }
            union |= a;
            for &b in &masks[..i] {
                if a == b {
                    return input(format!("duplicate edge {:?}", one_based(a)));
                }
                if a & b == a || a & b == b {
                    return input(format!(
                        "edges {:?} and {:?} are nested",
                        one_based(a.min(b)),
                        one_based(a.max(b))
                    ));
                }
            }
        }
        if union != ground {
            let missing = vertices_of(ground & !union);
            return input(format!("vertex {} lies in no edge", missing[0] + 1));
        }
        let mut edges = masks;
        edges.sort_by(|&a, &b| set_order(a, b));
        Ok(Clutter { n, edges })
    }

    /// Minimal sets of `sets` on the vertices they use, compacted in order.
    /// Returns the clutter and the map from new to old vertex index.
    pub(crate) fn compact(sets: Vec<u64>) -> (Clutter, Vec<usize>) {
        let sets = minimalize(sets);
        let used = sets.iter().fold(0, |m, &s| m | s);
        let map = vertices_of(used);
        let mut index = [usize::MAX; 64];
        for (new, &old) in map.iter().enumerate() {
            index[old] = new;
        }
        let edges = sets
            .iter()
            .map(|&s| vertices_of(s).into_iter().fold(0u64, |m, v| m | 1 << index[v]))
            .collect::<Vec<_>>();
        let mut edges = edges;
        edges.sort_by(|&a, &b| set_order(a, b));
        (Clutter { n: map.len(), edges }, map)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[u64] {
        &self.edges
    }

    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|&e| vertices_of(e)).collect()
    }

    /// 0/1 exponent vectors of the edge monomials.
    pub fn exponent_vectors(&self) -> Vec<Vec<i64>> {
        self.edges
            .iter()
            .map(|&e| (0..self.n).map(|v| (e >> v & 1) as i64).collect())
            .collect()
    }

    /// Common edge size, if all edges have the same size.
    pub fn uniform_degree(&self) -> Option<usize> {
        let d = self.edges[0].count_ones();
        self.edges.iter().all(|e| e.count_ones() == d).then_some(d as usize)
    }

    pub fn is_graph(&self) -> bool {
        self.uniform_degree() == Some(2)
    }

    pub fn relabel(&self, perm: &[usize]) -> Clutter {
        let edges = self
            .edges
            .iter()
            .map(|&e| vertices_of(e).into_iter().fold(0u64, |m, v| m | 1 << perm[v]))
            .collect();
        Clutter::from_masks(self.n, edges).expect("relabeling preserves validity")
    }
}

fn one_based(mask: u64) -> Vec<usize> {
    vertices_of(mask).into_iter().map(|v| v + 1).collect()
}

/// `n × q` 0/1 matrix whose column `j` is the indicator of edge `j`.
pub fn incidence_matrix(c: &Clutter) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(c.n, c.edges.len());
    for (j, &e) in c.edges.iter().enumerate() {
        for v in vertices_of(e) {
            m.set(v, j, Rational::one());
        }
    }
    m
}

/// A minimal vertex cover (minimal transversal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoverSet {
    mask: u64,
}

impl CoverSet {
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn vertices(&self) -> Vec<usize> {
        vertices_of(self.mask)
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }
}

impl Ord for CoverSet {
    fn cmp(&self, other: &Self) -> Ordering {
        set_order(self.mask, other.mask)
    }
}

impl PartialOrd for CoverSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn meets_all(edges: &[u64], s: u64) -> bool {
    edges.iter().all(|&e| e & s != 0)
}

/// A cover is minimal iff every member has a private edge.
fn is_minimal_cover(edges: &[u64], s: u64) -> bool {
    vertices_of(s).into_iter().all(|v| {
        let rest = s & !(1 << v);
        edges.iter().any(|&e| e & rest == 0)
    })
}

/// Reference enumeration: every subset of the vertex set is tested.
pub fn minimal_vertex_covers_exhaustive(c: &Clutter) -> Vec<CoverSet> {
    assert!(c.n <= 30, "exhaustive cover scan limited to 30 vertices");
    let mut out: Vec<CoverSet> = (0u64..1 << c.n)
        .filter(|&s| meets_all(&c.edges, s) && is_minimal_cover(&c.edges, s))
        .map(|mask| CoverSet { mask })
        .collect();
    out.sort();
    out
}

/// Berge's incremental transversal computation, edge by edge.
pub fn minimal_vertex_covers_incremental(c: &Clutter) -> Vec<CoverSet> {
    let mut current: Vec<u64> = vec![0];
    for &e in &c.edges {
        let mut next = Vec::new();
        for &t in &current {
            if t & e != 0 {
                next.push(t);
            } else {
                next.extend(vertices_of(e).into_iter().map(|v| t | 1 << v));
            }
        }
        current = minimalize(next);
    }
    let mut out: Vec<CoverSet> = current.into_iter().map(|mask| CoverSet { mask }).collect();
    out.sort();
    out
}

/// All minimal vertex covers in canonical order.
pub fn minimal_vertex_covers(c: &Clutter) -> Vec<CoverSet> {
    if c.n <= EXHAUSTIVE_COVER_LIMIT {
        minimal_vertex_covers_exhaustive(c)
    } else {
        minimal_vertex_covers_incremental(c)
    }
}

/// The clutter of minimal vertex covers.
pub fn blocker(c: &Clutter) -> Clutter {
    let covers = minimal_vertex_covers(c);
    Clutter::from_masks(c.n, covers.iter().map(CoverSet::mask).collect())
        .expect("minimal covers of a clutter form a clutter on the same vertices")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Minor {
    Proper {
        clutter: Clutter,
        /// `vertex_map[new] = old`.
        vertex_map: Vec<usize>,
    },
    /// The minor ideal is `(0)` or the unit ideal.
    Improper,
}

impl Minor {
    pub fn clutter(&self) -> Option<&Clutter> {
        match self {
            Minor::Proper { clutter, .. } => Some(clutter),
            Minor::Improper => None,
        }
    }
}

/// Sets the `deleted` variables to 0 and the `contracted` ones to 1.
pub fn minor(c: &Clutter, deleted: u64, contracted: u64) -> Result<Minor> {
    if deleted & contracted != 0 {
        return input(format!(
            "vertices {:?} are both deleted and contracted",
            one_based(deleted & contracted)
        ));
    }
    let mut sets = Vec::with_capacity(c.edges.len());
    for &e in &c.edges {
        if e & deleted != 0 {
            continue;
        }
        let s = e & !contracted;
        if s == 0 {
            return Ok(Minor::Improper);
        }
        sets.push(s);
    }
    if sets.is_empty() {
        return Ok(Minor::Improper);
    }
    let (clutter, vertex_map) = Clutter::compact(sets);
    Ok(Minor::Proper { clutter, vertex_map })
}

/// `min ⟨1,x⟩ : xA ≥ 1, 0 ≤ x ≤ 1, x integral`.
pub fn alpha0(c: &Clutter) -> Result<usize> {
    let a = incidence_matrix(c);
    let n = c.n;
    let mut lp = LinearProgram::new(
        Direction::Minimize,
        vec![Rational::one(); n],
        a.transpose(),
        vec![Sense::Ge; c.edges.len()],
        vec![Rational::one(); c.edges.len()],
    )?;
    for i in 0..n {
        let mut row = vec![Rational::zero(); n];
        row[i] = Rational::one();
        lp.add_constraint(&row, Sense::Le, Rational::one())?;
    }
    ilp_count(&lp)
}

/// `max ⟨1,y⟩ : Ay ≤ 1, y ≥ 0 integral`.
pub fn beta1(c: &Clutter) -> Result<usize> {
    let q = c.edges.len();
    let lp = LinearProgram::new(
        Direction::Maximize,
        vec![Rational::one(); q],
        incidence_matrix(c),
        vec![Sense::Le; c.n],
        vec![Rational::one(); c.n],
    )?;
    ilp_count(&lp)
}

fn ilp_count(lp: &LinearProgram) -> Result<usize> {
    match solve_ilp(lp)? {
        IlpOutcome::Optimal(s) => s
            .value
            .to_i64()
            .map(|v| v as usize)
            .ok_or_else(|| Error::Internal("non-integral ILP count".into())),
        other => Err(Error::Internal(format!("covering/packing ILP returned {other:?}"))),
    }
}

pub fn alpha0_exhaustive(c: &Clutter) -> usize {
    minimal_vertex_covers_exhaustive(c).iter().map(CoverSet::size).min().unwrap_or(0)
}

/// Maximum number of pairwise disjoint edges, by backtracking.
pub fn beta1_exhaustive(c: &Clutter) -> usize {
    fn go(edges: &[u64], from: usize, used: u64, count: usize, best: &mut usize) {
        *best = (*best).max(count);
        for j in from..edges.len() {
            if edges[j] & used == 0 {
                go(edges, j + 1, used | edges[j], count + 1, best);
            }
        }
    }
    let mut best = 0;
    go(&c.edges, 0, 0, 0, &mut best);
    best
}

pub fn has_konig(c: &Clutter) -> Result<bool> {
    Ok(alpha0(c)? == beta1(c)?)
}

/// First minor (in the sweep order) without the König property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub deleted: Vec<usize>,
    pub contracted: Vec<usize>,
    pub minor: Clutter,
    pub alpha0: usize,
    pub beta1: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingReport {
    pub holds: bool,
    pub witness: Option<MinorWitness>,
    /// Number of distinct proper minors examined.
    pub minors_checked: usize,
}

/// Sweeps every (deleted, contracted) assignment, identity first, and
/// checks König on each proper minor. Identical minors are checked once.
pub fn has_packing_property(c: &Clutter) -> Result<PackingReport> {
    if c.n > PACKING_VERTEX_LIMIT {
        return Err(Error::Budget(format!(
            "packing sweep limited to {PACKING_VERTEX_LIMIT} vertices, got {}",
            c.n
        )));
    }
    let total = 3usize.pow(c.n as u32);
    let mut seen: HashMap<Clutter, bool> = HashMap::new();
    for code in 0..total {
        let (mut deleted, mut contracted) = (0u64, 0u64);
        let mut k = code;
        for v in 0..c.n {
            match k % 3 {
                1 => deleted |= 1 << v,
                2 => contracted |= 1 << v,
                _ => {}
            }
            k /= 3;
        }
        let Minor::Proper { clutter, .. } = minor(c, deleted, contracted)? else {
            continue;
        };
        if seen.contains_key(&clutter) {
            continue;
        }
        let (a, b) = (alpha0(&clutter)?, beta1(&clutter)?);
        seen.insert(clutter.clone(), a == b);
        if a != b {
            return Ok(PackingReport {
                holds: false,
                witness: Some(MinorWitness {
                    deleted: vertices_of(deleted),
                    contracted: vertices_of(contracted),
                    minor: clutter,
                    alpha0: a,
                    beta1: b,
                }),
                minors_checked: seen.len(),
            });
        }
    }
    Ok(PackingReport { holds: true, witness: None, minors_checked: seen.len() })
}

/// All minimal vertex covers have the same size.
pub fn is_unmixed(c: &Clutter) -> bool {
    let covers = minimal_vertex_covers(c);
    covers.windows(2).all(|w| w[0].size() == w[1].size())
}
