//! The set covering polyhedron `Q(A) = {x ≥ 0 : xA ≥ 1}` and the Rees and
//! Simis cones whose facets it describes.
//!
//! Cone vectors live in `ℤⁿ⁺¹`, the last coordinate being the `t` degree.

mod dd;

use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use crate::clutter::{incidence_matrix, minimal_vertex_covers, Clutter};
use crate::error::{input, internal, Error, Result};
use crate::exact_math::{
    denominator_lcm, primitive_integral, rank, solve_square, solve_square_small, IntegerMatrix,
    Rational, RationalMatrix, RationalVector, SmallSolve,
};

pub use dd::{canonical_sort, cone_extreme_rays};

/// Vertices of `Q(A)` in descending lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    pub vertices: Vec<RationalVector>,
    pub integral: Vec<bool>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn check_covering_matrix(a: &IntegerMatrix) -> Result<()> {
    for i in 0..a.rows() {
        let row = a.row(i);
        if let Some(v) = row.iter().find(|&&v| v != 0 && v != 1) {
            return input(format!("entry {v} in row {} is not 0/1", i + 1));
        }
        if row.iter().all(|&v| v == 0) {
            return input(format!("row {} is zero: vertex {} lies in no edge", i + 1, i + 1));
        }
    }
    Ok(())
}

fn k_subsets(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return Ok(());
    }
    loop {
        f(&idx)?;
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return Ok(());
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Basic feasible solutions of `x ≥ 0, xA ≥ 1`, found by solving every
/// system of `n` tight constraints among the `n + q` available.
pub fn q_vertices(a: &IntegerMatrix) -> Result<VertexSet> {
    check_covering_matrix(a)?;
    let (n, q) = (a.rows(), a.cols());
    // Constraint k < n is x_k ≥ 0; constraint n + j is ⟨x, column j⟩ ≥ 1.
    let constraint = |k: usize| -> (Vec<i64>, i64) {
        if k < n {
            let mut e = vec![0; n];
            e[k] = 1;
            (e, 0)
        } else {
            ((0..n).map(|i| a.get(i, k - n)).collect(), 1)
        }
    };
    let feasible = |x: &[Rational]| {
        x.iter().all(|v| !v.is_negative())
            && (0..q).all(|j| {
                let s: Rational = (0..n).filter(|&i| a.get(i, j) == 1).map(|i| &x[i]).sum();
                s >= Rational::one()
            })
    };
    let mut found: BTreeSet<RationalVector> = BTreeSet::new();
    k_subsets(n + q, n, |pick| {
        let mut m = Vec::with_capacity(n * n);
        let mut rhs = Vec::with_capacity(n);
        for &k in pick {
            let (row, b) = constraint(k);
            m.extend(row);
            rhs.push(b);
        }
        let x = match solve_square_small(&m, n, &rhs) {
            Some(SmallSolve::Singular) => return Ok(()),
            Some(SmallSolve::Solution(x)) => x,
            None => {
                let rows: Vec<Vec<i64>> = m.chunks(n).map(<[i64]>::to_vec).collect();
                let rhs: Vec<Rational> = rhs.iter().map(|&b| Rational::from_integer(b)).collect();
                match solve_square(&RationalMatrix::from_i64_rows(&rows)?, &rhs)? {
                    Some(x) => x,
                    None => return Ok(()),
                }
            }
        };
        if feasible(&x) {
            found.insert(x);
        }
        Ok(())
    })?;
    let vertices: Vec<RationalVector> = found.into_iter().rev().collect();
    let integral = vertices.iter().map(|v| v.iter().all(Rational::is_integer)).collect();
    Ok(VertexSet { vertices, integral })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityReport {
    pub integral: bool,
    /// First fractional vertex in canonical order.
    pub witness: Option<RationalVector>,
}

/// Whether every vertex of `Q(A)` is integral. When the columns of `a`
/// form a clutter, the integral vertices are also checked to be exactly the
/// minimal vertex cover indicators.
pub fn is_integral_q(a: &IntegerMatrix) -> Result<IntegralityReport> {
    let vs = q_vertices(a)?;
    let columns: Vec<u64> = (0..a.cols())
        .map(|j| (0..a.rows()).filter(|&i| a.get(i, j) == 1).fold(0u64, |m, i| m | 1 << i))
        .collect();
    if a.rows() <= 64 {
        if let Ok(c) = Clutter::from_masks(a.rows(), columns) {
            let covers: BTreeSet<Vec<Rational>> = minimal_vertex_covers(&c)
                .iter()
                .map(|s| (0..c.n()).map(|i| Rational::from_integer((s.mask() >> i & 1) as i64)).collect())
                .collect();
            let integral: BTreeSet<Vec<Rational>> = vs
                .vertices
                .iter()
                .zip(&vs.integral)
                .filter(|(_, &f)| f)
                .map(|(v, _)| v.clone())
                .collect();
            if covers != integral {
                return internal("integral vertices of Q(A) differ from the minimal cover indicators");
            }
        }
    }
    let witness = vs.vertices.iter().zip(&vs.integral).find(|(_, &f)| !f).map(|(v, _)| v.clone());
    Ok(IntegralityReport { integral: witness.is_none(), witness })
}

/// A non-unit facet `ℓ = d·(α, −1)` of the Rees cone and the vertex `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesFacet {
    pub normal: Vec<i64>,
    pub d: i64,
    pub vertex: RationalVector,
}

impl ReesFacet {
    pub fn is_cover(&self) -> bool {
        self.d == 1
    }
}

/// Facets of the Rees cone `ℝ₊𝒜′`, `𝒜′ = {e₁,…,eₙ, (v₁,1),…,(v_q,1)}`:
/// the units `e₁,…,eₙ₊₁` and one facet per vertex of `Q(A)`, in vertex order.
///
/// `eᵢ` (i ≤ n) is a facet unless vertex `i` lies in every edge; it is kept
/// as a valid, redundant inequality in that case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesConeRep {
    pub n: usize,
    pub facets: Vec<ReesFacet>,
}

pub fn unit_vectors(dim: usize) -> Vec<Vec<i64>> {
    (0..dim)
        .map(|i| {
            let mut e = vec![0; dim];
            e[i] = 1;
            e
        })
        .collect()
}

impl ReesConeRep {
    pub fn unit_facets(&self) -> Vec<Vec<i64>> {
        unit_vectors(self.n + 1)
    }

    pub fn cover_facets(&self) -> Vec<&ReesFacet> {
        self.facets.iter().filter(|f| f.is_cover()).collect()
    }

    pub fn extra_facets(&self) -> Vec<&ReesFacet> {
        self.facets.iter().filter(|f| !f.is_cover()).collect()
    }

    /// Number of non-unit facets.
    pub fn r(&self) -> usize {
        self.facets.len()
    }

    /// Number of cover facets.
    pub fn s(&self) -> usize {
        self.cover_facets().len()
    }

    /// Units first, then the non-unit normals in vertex order.
    pub fn all_normals(&self) -> Vec<Vec<i64>> {
        let mut out = self.unit_facets();
        out.extend(self.facets.iter().map(|f| f.normal.clone()));
        out
    }
}

/// The generators `e₁,…,eₙ, (v₁,1),…,(v_q,1)` of the Rees cone.
pub fn rees_generators(c: &Clutter) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = unit_vectors(c.n() + 1).into_iter().take(c.n()).collect();
    for mut v in c.exponent_vectors() {
        v.push(1);
        out.push(v);
    }
    out
}

fn to_i64(v: Vec<num_bigint::BigInt>) -> Result<Vec<i64>> {
    v.iter()
        .map(|b| b.to_i64().ok_or_else(|| Error::Budget("facet normal exceeds 64 bits".into())))
        .collect()
}

/// `ℓ` is a facet of the cone spanned by `gens` if every generator lies on
/// its nonnegative side and the tight ones span a hyperplane.
fn is_facet_of(normal: &[i64], gens: &[Vec<i64>]) -> Result<bool> {
    let mut tight = Vec::new();
    for g in gens {
        let v: i64 = g.iter().zip(normal).map(|(a, b)| a * b).sum();
        if v < 0 {
            return Ok(false);
        }
        if v == 0 {
            tight.push(g.clone());
        }
    }
    if tight.is_empty() {
        return Ok(false);
    }
    Ok(rank(&RationalMatrix::from_i64_rows(&tight)?) == normal.len() - 1)
}

/// Maps each vertex `α` of `Q(A)` to the primitive normal `d·(α, −1)`,
/// checking that the result is a facet of `ℝ₊𝒜′` and that the `d = 1`
/// facets are exactly the minimal vertex covers.
pub fn rees_cone_facets(c: &Clutter) -> Result<ReesConeRep> {
    let a = incidence_matrix(c).to_integer().expect("incidence matrix is integral");
    let vs = q_vertices(&a)?;
    let gens = rees_generators(c);
    let mut facets = Vec::with_capacity(vs.len());
    for alpha in vs.vertices {
        let d = denominator_lcm(&alpha);
        let mut scaled: Vec<Rational> = alpha.clone();
        scaled.push(-Rational::one());
        let normal = to_i64(primitive_integral(&scaled))?;
        let d = d.to_i64().ok_or_else(|| Error::Budget("denominator exceeds 64 bits".into()))?;
        if normal[c.n()] != -d {
            return internal(format!("primitive normal {normal:?} does not end in -{d}"));
        }
        if !is_facet_of(&normal, &gens)? {
            return internal(format!("{normal:?} from vertex {alpha:?} is not a facet of the Rees cone"));
        }
        facets.push(ReesFacet { normal, d, vertex: alpha });
    }
    let rep = ReesConeRep { n: c.n(), facets };
    let from_vertices: Vec<Vec<i64>> = rep.cover_facets().iter().map(|f| f.normal.clone()).collect();
    let from_covers = cover_normals(c);
    if from_vertices != from_covers {
        return internal("cover facets from vertices disagree with the minimal vertex covers");
    }
    Ok(rep)
}

fn cover_normals(c: &Clutter) -> Vec<Vec<i64>> {
    minimal_vertex_covers(c)
        .iter()
        .map(|s| {
            let mut v: Vec<i64> = (0..c.n()).map(|i| (s.mask() >> i & 1) as i64).collect();
            v.push(-1);
            v
        })
        .collect()
}

/// The Simis cone: unit facets and the minimal vertex cover facets
/// `(Σ_{i∈C} eᵢ, −1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimisConeRep {
    pub n: usize,
    pub cover_facets: Vec<Vec<i64>>,
}

impl SimisConeRep {
    pub fn all_normals(&self) -> Vec<Vec<i64>> {
        let mut out = unit_vectors(self.n + 1);
        out.extend(self.cover_facets.iter().cloned());
        out
    }
}

/// Built from the minimal vertex covers directly, not from vertices.
pub fn simis_cone(c: &Clutter) -> SimisConeRep {
    SimisConeRep { n: c.n(), cover_facets: cover_normals(c) }
}

/// A pointed cone given by both its facet normals and its extreme rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeRep {
    pub dim: usize,
    pub facets: Vec<Vec<i64>>,
    pub rays: Vec<Vec<i64>>,
}

impl ConeRep {
    pub fn from_facets(facets: Vec<Vec<i64>>) -> Result<Self> {
        let rays = cone_extreme_rays(&facets)?;
        let dim = facets[0].len();
        Ok(ConeRep { dim, facets, rays })
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|h| h.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() >= 0)
    }
}
