//! Monomial ideals as antichains of exponent vectors.

use std::cmp::Ordering;

use serde::Serialize;

use crate::clutter::{minimal_vertex_covers, vertices_of, Clutter};
use crate::error::{input, internal, Result};
use crate::polyhedra::rees_cone_facets;

/// A monomial ideal of `K[x₁,…,xₙ]` by its minimal generators.
///
/// Generators are ordered by total degree, then descending lexicographically.
/// No generators is the zero ideal; the single generator `0` is the unit ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn gen_order(a: &Vec<u32>, b: &Vec<u32>) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by(gen_order);
    gens.dedup();
    let mut kept: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for g in gens {
        // Divisors have degree ≤ g's, so they are already kept if present.
        if !kept.iter().any(|k| divides(k, &g)) {
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    pub fn new(n: usize, gens: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != n) {
            return input(format!("exponent vector {g:?} does not have length {n}"));
        }
        Ok(MonomialIdeal { n, gens: minimalize(gens) })
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![vec![0; n]] }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].iter().all(|&x| x == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Whether `x^a` lies in the ideal.
    pub fn contains(&self, a: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, a))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Generators of `self` not in `other`.
    pub fn gens_outside(&self, other: &MonomialIdeal) -> Vec<Vec<u32>> {
        self.gens.iter().filter(|g| !other.contains(g)).cloned().collect()
    }

    /// Generators of total degree `deg`.
    pub fn slice(&self, deg: u64) -> Vec<Vec<u32>> {
        self.gens
            .iter()
            .filter(|g| g.iter().map(|&x| x as u64).sum::<u64>() == deg)
            .cloned()
            .collect()
    }
}

fn same_ring(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<()> {
    if a.n != b.n {
        return input(format!("ideals live in {} and {} variables", a.n, b.n));
    }
    Ok(())
}

pub fn edge_ideal(c: &Clutter) -> MonomialIdeal {
    let gens = c
        .exponent_vectors()
        .into_iter()
        .map(|v| v.into_iter().map(|x| x as u32).collect())
        .collect();
    MonomialIdeal { n: c.n(), gens: minimalize(gens) }
}

/// The ideal generated by the minimal vertex cover monomials.
pub fn cover_ideal(c: &Clutter) -> MonomialIdeal {
    let gens = minimal_vertex_covers(c)
        .iter()
        .map(|s| (0..c.n()).map(|i| (s.mask() >> i & 1) as u32).collect())
        .collect();
    MonomialIdeal { n: c.n(), gens: minimalize(gens) }
}

pub fn product(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    same_ring(a, b)?;
    let mut gens = Vec::with_capacity(a.gens.len() * b.gens.len());
    for x in &a.gens {
        for y in &b.gens {
            gens.push(x.iter().zip(y).map(|(p, q)| p + q).collect());
        }
    }
    Ok(MonomialIdeal { n: a.n, gens: minimalize(gens) })
}

/// `I^k`; `k = 0` gives the unit ideal.
pub fn power(i: &MonomialIdeal, k: u32) -> MonomialIdeal {
    let mut acc = MonomialIdeal::unit(i.n);
    for _ in 0..k {
        acc = product(&acc, i).expect("same ring");
    }
    acc
}

/// Generated by the pairwise lcms (componentwise maxima).
pub fn intersect(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    same_ring(a, b)?;
    let mut gens = Vec::with_capacity(a.gens.len() * b.gens.len());
    for x in &a.gens {
        for y in &b.gens {
            gens.push(x.iter().zip(y).map(|(p, q)| *p.max(q)).collect());
        }
    }
    Ok(MonomialIdeal { n: a.n, gens: minimalize(gens) })
}

/// Canonical generator lists compared exactly.
pub fn equal(a: &MonomialIdeal, b: &MonomialIdeal) -> bool {
    a.n == b.n && a.gens == b.gens
}

/// Mutual containment; agrees with [`equal`].
pub fn equal_by_inclusion(a: &MonomialIdeal, b: &MonomialIdeal) -> bool {
    a.n == b.n && a.contains_ideal(b) && b.contains_ideal(a)
}

/// `𝔭^b` for the prime generated by the variables in `support`.
pub fn prime_power(n: usize, support: &[usize], b: u32) -> MonomialIdeal {
    let mut gens = Vec::new();
    let mut cur = vec![0u32; n];
    fn go(support: &[usize], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match support {
            [] => {
                if left == 0 {
                    out.push(cur.clone());
                }
            }
            [last] => {
                cur[*last] = left;
                out.push(cur.clone());
                cur[*last] = 0;
            }
            [first, rest @ ..] => {
                for e in 0..=left {
                    cur[*first] = e;
                    go(rest, left - e, cur, out);
                }
                cur[*first] = 0;
            }
        }
    }
    go(support, b, &mut cur, &mut gens);
    MonomialIdeal { n, gens: minimalize(gens) }
}

/// Minimal points of `{a ∈ [0, bound]ⁿ : ⟨a, c⟩ ≥ r for every (c, r)}`,
/// where every `c` is nonnegative, so the feasible set is an up-set.
pub(crate) fn minimal_box_solutions(n: usize, constraints: &[(Vec<i64>, i64)], bound: u32) -> Vec<Vec<u32>> {
    let feasible = |a: &[u32]| {
        constraints
            .iter()
            .all(|(c, r)| c.iter().zip(a).map(|(&x, &y)| x * y as i64).sum::<i64>() >= *r)
    };
    let mut out = Vec::new();
    let mut a = vec![0u32; n];
    loop {
        if feasible(&a)
            && (0..n).all(|i| {
                if a[i] == 0 {
                    return true;
                }
                a[i] -= 1;
                let still = feasible(&a);
                a[i] += 1;
                !still
            })
        {
            out.push(a.clone());
        }
        let Some(i) = (0..n).find(|&i| a[i] < bound) else { break };
        a[i] += 1;
        for x in &mut a[..i] {
            *x = 0;
        }
    }
    minimalize(out)
}

/// `I^{(b)} = ∩ₖ 𝔭ₖ^b` over the primes of the minimal vertex covers.
pub fn symbolic_power_by_primes(c: &Clutter, b: u32) -> Result<MonomialIdeal> {
    let mut out = MonomialIdeal::unit(c.n());
    for s in &minimal_vertex_covers(c) {
        out = intersect(&out, &prime_power(c.n(), &vertices_of(s.mask()), b))?;
    }
    Ok(out)
}

/// `I^{(b)}` as the minimal solutions of `Σ_{i∈Cₖ} aᵢ ≥ b` in `[0, b]ⁿ`.
pub fn symbolic_power_by_lattice(c: &Clutter, b: u32) -> MonomialIdeal {
    let constraints: Vec<(Vec<i64>, i64)> = minimal_vertex_covers(c)
        .iter()
        .map(|s| ((0..c.n()).map(|i| (s.mask() >> i & 1) as i64).collect(), b as i64))
        .collect();
    MonomialIdeal { n: c.n(), gens: minimal_box_solutions(c.n(), &constraints, b) }
}

/// `I^{(b)}` by both [`symbolic_power_by_primes`] and
/// [`symbolic_power_by_lattice`]; a mismatch is an internal error.
pub fn symbolic_power(c: &Clutter, b: u32) -> Result<MonomialIdeal> {
    if b == 0 {
        return Ok(MonomialIdeal::unit(c.n()));
    }
    let by_primes = symbolic_power_by_primes(c, b)?;
    let by_lattice = symbolic_power_by_lattice(c, b);
    if by_primes != by_lattice {
        return internal(format!(
            "symbolic power b = {b}: prime intersection {:?} differs from lattice scan {:?}",
            by_primes.gens, by_lattice.gens
        ));
    }
    Ok(by_primes)
}

/// `Ī^i`: the monomials `x^a` with `⟨(a, i), ℓₖ⟩ ≥ 0` for every Rees facet.
pub fn integral_closure_power(c: &Clutter, i: u32) -> Result<MonomialIdeal> {
    if i == 0 {
        return Ok(MonomialIdeal::unit(c.n()));
    }
    let rep = rees_cone_facets(c)?;
    let constraints: Vec<(Vec<i64>, i64)> = rep
        .facets
        .iter()
        .map(|f| (f.normal[..c.n()].to_vec(), i as i64 * f.d))
        .collect();
    let bound = constraints.iter().map(|(_, r)| *r).max().unwrap_or(0);
    Ok(MonomialIdeal { n: c.n(), gens: minimal_box_solutions(c.n(), &constraints, bound as u32) })
}
