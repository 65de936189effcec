//! Hilbert bases, membership in `ℕ𝒜′`, and the normality-type tests of the
//! Rees and symbolic Rees algebras built on them.

mod hilbert;
mod semigroup;

use serde::Serialize;

use crate::clutter::{incidence_matrix, Clutter};
use crate::error::{internal, precondition, Result};
use crate::exact_math::{solve_lp, Direction, LinearProgram, Rational, RationalMatrix, Sense};
use crate::monomial::{edge_ideal, power, symbolic_power, MonomialIdeal};
use crate::polyhedra::{cone_extreme_rays, is_integral_q, rees_cone_facets, rees_generators, simis_cone};

pub use hilbert::{decomposes, hilbert_basis, hilbert_basis_of_facets, in_cone, HilbertBasis, BOX_POINT_LIMIT};
pub use semigroup::{semigroup_member, Membership};

/// Vertex count up to which [`rs_equals_normalization`] compares Hilbert bases.
pub const BASIS_CROSS_CHECK_LIMIT: usize = 6;

/// Degrees up to which [`symbolic_rees_generators`] checks its slices.
pub const SLICE_CHECK_DEGREE: u32 = 3;

/// Hilbert basis of `ℤⁿ⁺¹ ∩ ℝ₊𝒜′`. The extreme rays found by double
/// description must be members of `𝒜′`.
pub fn rees_hilbert_basis(c: &Clutter) -> Result<HilbertBasis> {
    let facets = rees_cone_facets(c)?.all_normals();
    let rays = cone_extreme_rays(&facets)?;
    let gens = rees_generators(c);
    if let Some(r) = rays.iter().find(|r| !gens.contains(r)) {
        return internal(format!("extreme ray {r:?} of the Rees cone is not in 𝒜′"));
    }
    hilbert_basis(&facets, &rays)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub normal: bool,
    /// First Hilbert basis element `(a, b)` with `x^a t^b ∉ R[It]`.
    pub witness: Option<Vec<i64>>,
    /// Per basis element, whether it lies in `ℕ𝒜′`.
    pub in_semigroup: Vec<bool>,
    pub basis: HilbertBasis,
}

/// Checks each element of a Rees-cone Hilbert basis against `ℕ𝒜′`.
pub fn normality_from_basis(c: &Clutter, basis: HilbertBasis) -> Result<NormalityReport> {
    let edges = c.exponent_vectors();
    let n = c.n();
    let mut in_semigroup = Vec::with_capacity(basis.elements.len());
    for e in &basis.elements {
        in_semigroup.push(semigroup_member(&e[..n], e[n], &edges)?.member);
    }
    let witness = basis.elements.iter().zip(&in_semigroup).find(|(_, &m)| !m).map(|(e, _)| e.clone());
    Ok(NormalityReport { normal: witness.is_none(), witness, in_semigroup, basis })
}

/// `R[It]` is normal iff `ℕ𝒜′ = ℤⁿ⁺¹ ∩ ℝ₊𝒜′`.
pub fn is_normal_rees(c: &Clutter) -> Result<NormalityReport> {
    normality_from_basis(c, rees_hilbert_basis(c)?)
}

/// Minimal generators of the degree-`b` parts of the algebra generated by
/// `basis`, for `b = 1..=max_b`, as monomial ideals.
fn slices(n: usize, basis: &[Vec<i64>], max_b: u32) -> Result<Vec<MonomialIdeal>> {
    let as_u32 = |v: &[i64]| v.iter().map(|&x| x as u32).collect::<Vec<u32>>();
    let mut out: Vec<MonomialIdeal> = vec![MonomialIdeal::unit(n)];
    for b in 1..=max_b {
        let mut gens = Vec::new();
        for j in 1..=b {
            let level: Vec<Vec<u32>> =
                basis.iter().filter(|e| e[n] == j as i64).map(|e| as_u32(&e[..n])).collect();
            for lower in out[(b - j) as usize].gens() {
                for g in &level {
                    gens.push(lower.iter().zip(g).map(|(x, y)| x + y).collect());
                }
            }
        }
        out.push(MonomialIdeal::new(n, gens)?);
    }
    Ok(out.split_off(1))
}

/// Hilbert basis of the Simis cone, i.e. the monomial generators of the
/// symbolic Rees algebra. Its degree-`b` slices are checked against
/// [`symbolic_power`] for `b ≤ 3`.
pub fn symbolic_rees_generators(c: &Clutter) -> Result<HilbertBasis> {
    let facets = simis_cone(c).all_normals();
    let hb = hilbert_basis_of_facets(&facets)?;
    for (b, slice) in (1..).zip(slices(c.n(), &hb.elements, SLICE_CHECK_DEGREE)?) {
        let expected = symbolic_power(c, b)?;
        if slice != expected {
            return internal(format!(
                "degree {b} of the symbolic Rees algebra: basis gives {:?}, symbolic power gives {:?}",
                slice.gens(),
                expected.gens()
            ));
        }
    }
    Ok(hb)
}

/// `R_s(I)` equals the normalization of `R[It]` iff `Q(A)` is integral.
/// For `n ≤ 6` the two Hilbert bases are also compared.
pub fn rs_equals_normalization(c: &Clutter) -> Result<bool> {
    let a = incidence_matrix(c).to_integer().expect("0/1 matrix");
    let integral = is_integral_q(&a)?.integral;
    if c.n() <= BASIS_CROSS_CHECK_LIMIT {
        let same = symbolic_rees_generators(c)?.elements == rees_hilbert_basis(c)?.elements;
        if same != integral {
            return internal(format!("Q(A) integral = {integral} but Simis and Rees bases equal = {same}"));
        }
    }
    Ok(integral)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionFreeReport {
    pub holds: bool,
    /// First `i` with `I^i ≠ I^{(i)}` and a generator of `I^{(i)}` not in `I^i`.
    pub failure: Option<(u32, Vec<u32>)>,
}

/// `I^i = I^{(i)}` for `i = 1..=i_max`.
pub fn normally_torsion_free_upto(c: &Clutter, i_max: u32) -> Result<TorsionFreeReport> {
    let e = edge_ideal(c);
    for i in 1..=i_max {
        let p = power(&e, i);
        let s = symbolic_power(c, i)?;
        if p != s {
            let g = s.gens_outside(&p).into_iter().next().ok_or_else(|| {
                crate::error::Error::Internal(format!("I^{i} strictly contains I^({i})"))
            })?;
            return Ok(TorsionFreeReport { holds: false, failure: Some((i, g)) });
        }
    }
    Ok(TorsionFreeReport { holds: true, failure: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdpReport {
    pub holds: bool,
    /// First `(b, a)` with `a ∈ bP ∩ ℤⁿ` not a sum of `b` edges.
    pub failure: Option<(u32, Vec<i64>)>,
}

/// Whether `a ∈ bP`, `P = conv(v₁,…,v_q)`: feasibility of `λ ≥ 0`,
/// `Σλ = b`, `Σλⱼvⱼ = a`.
fn in_dilated_polytope(edges: &[Vec<i64>], a: &[i64], b: u32) -> Result<bool> {
    let (n, q) = (a.len(), edges.len());
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| edges.iter().map(|e| Rational::from_integer(e[i])).collect())
        .collect();
    rows.push(vec![Rational::one(); q]);
    let mut rhs: Vec<Rational> = a.iter().map(|&x| Rational::from_integer(x)).collect();
    rhs.push(Rational::from_integer(b as i64));
    let lp = LinearProgram::new(
        Direction::Minimize,
        vec![Rational::zero(); q],
        RationalMatrix::from_rows(rows)?,
        vec![Sense::Eq; n + 1],
        rhs,
    )?;
    Ok(solve_lp(&lp)?.optimal().is_some())
}

/// Every lattice point of `bP` is a sum of `b` edge vectors, for `b ≤ b_max`.
/// Requires all edges to have the same size `d`, so candidates have
/// `|a| = bd` and `0 ≤ aᵢ ≤ b`.
pub fn idp_check(c: &Clutter, b_max: u32) -> Result<IdpReport> {
    let Some(d) = c.uniform_degree() else {
        return precondition("edges have different sizes");
    };
    let edges = c.exponent_vectors();
    let n = c.n();
    for b in 1..=b_max {
        let target = (b as usize * d) as i64;
        let mut a = vec![0i64; n];
        loop {
            if a.iter().sum::<i64>() == target
                && !semigroup_member(&a, b as i64, &edges)?.member
                && in_dilated_polytope(&edges, &a, b)?
            {
                return Ok(IdpReport { holds: false, failure: Some((b, a)) });
            }
            let Some(i) = (0..n).find(|&i| a[i] < b as i64) else { break };
            a[i] += 1;
            for x in &mut a[..i] {
                *x = 0;
            }
        }
    }
    Ok(IdpReport { holds: true, failure: None })
}
