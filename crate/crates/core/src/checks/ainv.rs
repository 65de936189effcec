//! The a-invariant of `R[It]` from interior lattice points of the Rees cone.
//!
//! With `deg xᵢ = 1` and `deg t = −(d−1)`, the canonical module of a normal
//! `R[It]` is spanned by the monomials `x^a t^b` with `(a, b)` interior, and
//! `a(R[It])` is minus the least degree of such a monomial.

use serde::Serialize;

use crate::clutter::{alpha0, is_unmixed, Clutter};
use crate::error::{precondition, Result};
use crate::lattice::{in_cone, is_normal_rees};
use crate::polyhedra::rees_cone_facets;

use super::gr_reduced;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AInvariantReport {
    pub a: i64,
    /// `−[n − (d−1)(α₀−1)]`.
    pub bound: i64,
    pub equality: bool,
    /// An interior point `(a, b)` of least degree.
    pub witness: Vec<i64>,
}

fn degree(p: &[i64], d: i64) -> i64 {
    let n = p.len() - 1;
    p[..n].iter().sum::<i64>() - p[n] * (d - 1)
}

fn is_interior(facets: &[Vec<i64>], p: &[i64]) -> bool {
    facets.iter().all(|h| h.iter().zip(p).map(|(a, b)| a * b).sum::<i64>() >= 1)
}

/// Calls `f` on every `(a, b)` with `aᵢ ≥ 1`, `b ≥ 1` and degree exactly `t`.
/// Points of the Rees cone satisfy `|a| ≥ bd`, hence degree `≥ b`, so
/// `b ≤ t` loses nothing.
fn for_each_of_degree(n: usize, d: i64, t: i64, mut f: impl FnMut(&[i64]) -> bool) -> bool {
    fn compositions(total: i64, parts: &mut [i64], k: usize, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        let n = parts.len() - 1;
        if k == n - 1 {
            parts[k] = total;
            return f(parts);
        }
        let rest = (n - 1 - k) as i64;
        for v in 1..=total - rest {
            parts[k] = v;
            if compositions(total - v, parts, k + 1, f) {
                return true;
            }
        }
        false
    }
    for b in 1..=t {
        let total = t + b * (d - 1);
        if total < n as i64 {
            continue;
        }
        let mut p = vec![0i64; n + 1];
        p[n] = b;
        if compositions(total, &mut p, 0, &mut f) {
            return true;
        }
    }
    false
}

fn check_degree(c: &Clutter) -> Result<i64> {
    match c.uniform_degree() {
        Some(d) if d >= 2 => Ok(d as i64),
        Some(_) => precondition("edges have size 1"),
        None => precondition("edges have different sizes"),
    }
}

/// Least-degree interior lattice point by iterative deepening on the degree.
pub fn a_invariant(c: &Clutter) -> Result<AInvariantReport> {
    let d = check_degree(c)?;
    if !is_normal_rees(c)?.normal {
        return precondition("R[It] is not normal");
    }
    let facets = rees_cone_facets(c)?.all_normals();
    let n = c.n();
    let a0 = alpha0(c)? as i64;
    let bound = -(n as i64 - (d - 1) * (a0 - 1));
    // The sum of all generators of 𝒜′ is interior, of degree n + q.
    let max_t = (n + c.num_edges()) as i64;
    for t in 1..=max_t {
        let mut found = None;
        for_each_of_degree(n, d, t, |p| {
            if is_interior(&facets, p) {
                found = Some(p.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(w) = found {
            debug_assert_eq!(degree(&w, d), t);
            return Ok(AInvariantReport { a: -t, bound, equality: -t == bound, witness: w });
        }
    }
    crate::error::internal("no interior lattice point up to the degree of the generator sum")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GorensteinReport {
    pub holds: bool,
    pub a: i64,
    pub expected_a: i64,
    /// Interior points of degree ≤ n + 1 not in `(1,…,1,1) + ℝ₊𝒜′`.
    pub outside: Vec<Vec<i64>>,
}

/// For unmixed clutters with `α₀ = 2` and reduced `gr_I(R)`: the canonical
/// module is generated by `x₁⋯xₙt`, and `a(R[It]) = −(n − d + 1)`.
pub fn gorenstein_alpha2_check(c: &Clutter) -> Result<GorensteinReport> {
    let d = check_degree(c)?;
    if !is_unmixed(c) {
        return precondition("clutter is not unmixed");
    }
    if alpha0(c)? != 2 {
        return precondition("covering number is not 2");
    }
    if !gr_reduced(c)?.reduced {
        return precondition("associated graded ring is not reduced");
    }
    let n = c.n();
    let facets = rees_cone_facets(c)?.all_normals();
    let generator = vec![1i64; n + 1];
    let mut outside = Vec::new();
    if !is_interior(&facets, &generator) {
        outside.push(generator.clone());
    }
    let top = degree(&generator, d) + d;
    for t in 1..=top {
        for_each_of_degree(n, d, t, |p| {
            if is_interior(&facets, p) {
                let rest: Vec<i64> = p.iter().zip(&generator).map(|(x, g)| x - g).collect();
                if !in_cone(&facets, &rest) {
                    outside.push(p.to_vec());
                }
            }
            false
        });
    }
    let a = a_invariant(c)?.a;
    let expected_a = -(n as i64 - d + 1);
    Ok(GorensteinReport { holds: outside.is_empty() && a == expected_a, a, expected_a, outside })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutter::tests::{c4, cl, k3};

    fn cycle(n: usize) -> Clutter {
        let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        Clutter::new(n, &edges).unwrap()
    }

    /// Reference: scan a box for interior points and take the least degree.
    fn a_brute(c: &Clutter, box_max: i64) -> i64 {
        let facets = rees_cone_facets(c).unwrap().all_normals();
        let d = c.uniform_degree().unwrap() as i64;
        let n = c.n();
        let mut best = i64::MAX;
        let mut p = vec![1i64; n + 1];
        loop {
            if is_interior(&facets, &p) {
                best = best.min(degree(&p, d));
            }
            let Some(i) = (0..=n).find(|&i| p[i] < box_max) else { break };
            p[i] += 1;
            for v in &mut p[..i] {
                *v = 1;
            }
        }
        -best
    }

    #[test]
    fn cycles() {
        let r = a_invariant(&c4()).unwrap();
        assert_eq!((r.a, r.bound, r.equality), (-3, -3, true));
        assert_eq!(r.a, a_brute(&c4(), 4));
        let r = a_invariant(&cycle(6)).unwrap();
        assert_eq!((r.a, r.bound, r.equality), (-4, -4, true));
        assert_eq!(r.a, a_brute(&cycle(6), 3));
    }

    #[test]
    fn preconditions() {
        assert!(matches!(a_invariant(&cl(2, &[&[1], &[2]])), Err(crate::Error::Precondition(_))));
        assert!(matches!(a_invariant(&cl(3, &[&[1, 2], &[3]])), Err(crate::Error::Precondition(_))));
        assert!(matches!(gorenstein_alpha2_check(&k3()), Err(crate::Error::Precondition(_))));
    }

    #[test]
    fn triangle_is_normal_so_a_is_defined() {
        // K₃ is normal but Q(A) is not integral; the interior search still applies
        let r = a_invariant(&k3()).unwrap();
        assert_eq!(r.a, a_brute(&k3(), 4));
    }

    #[test]
    fn gorenstein_four_cycle() {
        let g = gorenstein_alpha2_check(&c4()).unwrap();
        assert!(g.holds);
        assert_eq!((g.a, g.expected_a), (-3, -3));
        assert!(g.outside.is_empty());
    }
}
