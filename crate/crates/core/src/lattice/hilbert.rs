use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::polyhedra::{canonical_sort, cone_extreme_rays};

/// Largest number of box points scanned by [`hilbert_basis`].
pub const BOX_POINT_LIMIT: u64 = 50_000_000;

/// Minimal generating set of the lattice points of a pointed cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertBasis {
    pub dim: usize,
    pub elements: Vec<Vec<i64>>,
    pub facets: Vec<Vec<i64>>,
}

fn value(h: &[i64], x: &[i64]) -> i64 {
    h.iter().zip(x).map(|(a, b)| a * b).sum()
}

pub fn in_cone(facets: &[Vec<i64>], x: &[i64]) -> bool {
    facets.iter().all(|h| value(h, x) >= 0)
}

/// Per-coordinate bounds of the box holding every fundamental parallelotope
/// of `dim` rays: the sum of the `dim` largest positive (resp. most negative)
/// entries in that coordinate.
fn parallelotope_box(rays: &[Vec<i64>], dim: usize) -> Vec<(i64, i64)> {
    (0..dim)
        .map(|j| {
            let mut pos: Vec<i64> = rays.iter().map(|r| r[j]).filter(|&v| v > 0).collect();
            let mut neg: Vec<i64> = rays.iter().map(|r| r[j]).filter(|&v| v < 0).collect();
            pos.sort_unstable_by(|a, b| b.cmp(a));
            neg.sort_unstable();
            (neg.iter().take(dim).sum(), pos.iter().take(dim).sum())
        })
        .collect()
}

/// Hilbert basis of `{x : ⟨h, x⟩ ≥ 0}` given its extreme rays.
///
/// Every Hilbert basis element lies in the half-open parallelotope of some
/// simplicial subcone spanned by extreme rays, or is a ray. All cone points in
/// the enclosing box are listed by increasing `Σₖ⟨hₖ, x⟩` and kept unless
/// `x − h` is in the cone for an element `h` already kept.
pub fn hilbert_basis(facets: &[Vec<i64>], rays: &[Vec<i64>]) -> Result<HilbertBasis> {
    let Some(dim) = facets.first().map(Vec::len) else {
        return input("no facets given");
    };
    if rays.is_empty() || rays.iter().any(|r| r.len() != dim) {
        return input("rays missing or of the wrong length");
    }
    if rays.iter().any(|r| !in_cone(facets, r)) {
        return input("a ray violates a facet inequality");
    }
    let bounds = parallelotope_box(rays, dim);
    bounds
        .iter()
        .try_fold(1u64, |acc, &(lo, hi)| acc.checked_mul((hi - lo + 1) as u64))
        .filter(|&s| s <= BOX_POINT_LIMIT)
        .ok_or_else(|| Error::Budget(format!("Hilbert basis box exceeds {BOX_POINT_LIMIT} points")))?;
    let grading: Vec<i64> = (0..dim).map(|j| facets.iter().map(|h| h[j]).sum()).collect();

    let mut candidates: Vec<(i64, Vec<i64>)> = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    loop {
        if x.iter().any(|&v| v != 0) && in_cone(facets, &x) {
            let g = value(&grading, &x);
            if g <= 0 {
                return input("cone is not pointed");
            }
            candidates.push((g, x.clone()));
        }
        let Some(j) = (0..dim).find(|&j| x[j] < bounds[j].1) else { break };
        x[j] += 1;
        for (k, v) in x[..j].iter_mut().enumerate() {
            *v = bounds[k].0;
        }
    }
    candidates.sort();

    let mut elements: Vec<Vec<i64>> = Vec::new();
    for (_, x) in candidates {
        let reducible = elements.iter().any(|h| {
            let rest: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
            in_cone(facets, &rest)
        });
        if !reducible {
            elements.push(x);
        }
    }
    canonical_sort(&mut elements);
    Ok(HilbertBasis { dim, elements, facets: facets.to_vec() })
}

/// [`hilbert_basis`] with extreme rays from double description.
pub fn hilbert_basis_of_facets(facets: &[Vec<i64>]) -> Result<HilbertBasis> {
    let rays = cone_extreme_rays(facets)?;
    hilbert_basis(facets, &rays)
}

/// Whether `x` is a nonnegative integer combination of `basis`, by a
/// bounded search over the grading. Used to test completeness.
pub fn decomposes(facets: &[Vec<i64>], basis: &[Vec<i64>], x: &[i64]) -> bool {
    fn go(facets: &[Vec<i64>], basis: &[Vec<i64>], x: &mut Vec<i64>, from: usize) -> bool {
        if x.iter().all(|&v| v == 0) {
            return true;
        }
        for (k, h) in basis.iter().enumerate().skip(from) {
            for (a, b) in x.iter_mut().zip(h) {
                *a -= b;
            }
            let ok = in_cone(facets, x) && go(facets, basis, x, k);
            for (a, b) in x.iter_mut().zip(h) {
                *a += b;
            }
            if ok {
                return true;
            }
        }
        false
    }
    in_cone(facets, x) && go(facets, basis, &mut x.to_vec(), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::unit_vectors;

    #[test]
    fn quadrant() {
        let hb = hilbert_basis_of_facets(&unit_vectors(2)).unwrap();
        assert_eq!(hb.elements, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn rees_cone_of_single_edge() {
        // x₁ ≥ t, x₂ ≥ t, t ≥ 0, plus the redundant x ≥ 0
        let mut facets = unit_vectors(3);
        facets.push(vec![1, 0, -1]);
        facets.push(vec![0, 1, -1]);
        let hb = hilbert_basis_of_facets(&facets).unwrap();
        assert_eq!(hb.elements, vec![vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn non_unimodular_cone() {
        // cone over (1,0) and (1,2): basis (1,0), (1,1), (1,2)
        let facets = vec![vec![0, 1], vec![2, -1]];
        let hb = hilbert_basis_of_facets(&facets).unwrap();
        assert_eq!(hb.elements, vec![vec![1, 2], vec![1, 1], vec![1, 0]]);
        // cone over (1,0) and (1,3): basis (1,0), (1,1), (1,2), (1,3)
        let hb = hilbert_basis_of_facets(&[vec![0, 1], vec![3, -1]]).unwrap();
        assert_eq!(hb.elements.len(), 4);
    }

    #[test]
    fn completeness_and_irreducibility() {
        // a 3-dimensional cone with a non-unimodular triangulation
        let facets = vec![vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 3], vec![0, 0, 1]];
        let hb = hilbert_basis_of_facets(&facets).unwrap();
        let max_sum = hb.elements.iter().map(|e| e.iter().sum::<i64>()).max().unwrap();
        let d = 2 * max_sum;
        for a in 0..=d {
            for b in 0..=d - a {
                for c in 0..=d - a - b {
                    let x = vec![a, b, c];
                    if in_cone(&facets, &x) {
                        assert!(decomposes(&facets, &hb.elements, &x), "{x:?}");
                    }
                }
            }
        }
        for (i, e) in hb.elements.iter().enumerate() {
            let others: Vec<Vec<i64>> =
                hb.elements.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
            assert!(!decomposes(&facets, &others, e), "{e:?}");
        }
    }

    #[test]
    fn rejects_non_pointed() {
        assert!(hilbert_basis_of_facets(&[vec![1, 0]]).is_err());
    }
}
