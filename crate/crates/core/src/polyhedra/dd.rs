//! Double description: extreme rays of a pointed cone `{x : Hx ≥ 0}`.

use num_integer::Integer;

use crate::error::{input, Error, Result};
use crate::exact_math::{rank, solve_square, Rational, RationalMatrix};

fn overflow() -> Error {
    Error::Budget("double description coordinates exceed 64 bits".into())
}

fn primitive(v: &[i128]) -> Result<Vec<i64>> {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    v.iter()
        .map(|&x| i64::try_from(if g == 0 { x } else { x / g }).map_err(|_| overflow()))
        .collect()
}

fn eval(h: &[i64], x: &[i64]) -> i128 {
    h.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum()
}

/// Descending lexicographic order, the canonical order for rays and normals.
pub fn canonical_sort(v: &mut [Vec<i64>]) {
    v.sort_by(|a, b| b.cmp(a));
}

/// Extreme rays of `{x ∈ ℝᴰ : ⟨h, x⟩ ≥ 0 for h in halfspaces}`, primitive and
/// in canonical order. The cone must be pointed (the normals span ℝᴰ).
///
/// Applied to a generating set instead of facet normals, this returns the
/// facet normals of the cone those vectors generate.
pub fn cone_extreme_rays(halfspaces: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let Some(dim) = halfspaces.first().map(Vec::len) else {
        return input("no inequalities given");
    };
    if halfspaces.iter().any(|h| h.len() != dim) {
        return input("inequalities of different lengths");
    }
    let as_rational = |rows: &[&Vec<i64>]| {
        RationalMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    };

    // Greedy choice of dim independent rows.
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..halfspaces.len() {
        let mut trial: Vec<&Vec<i64>> = basis.iter().map(|&b| &halfspaces[b]).collect();
        trial.push(&halfspaces[i]);
        if rank(&as_rational(&trial)?) == trial.len() {
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        }
    }
    if basis.len() < dim {
        return input("cone is not pointed: inequalities do not span the space");
    }

    // The simplicial cone H_B x ≥ 0 has the columns of H_B⁻¹ as rays.
    let hb = as_rational(&basis.iter().map(|&b| &halfspaces[b]).collect::<Vec<_>>())?;
    let mut rays: Vec<Vec<i64>> = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut e = vec![Rational::zero(); dim];
        e[k] = Rational::one();
        let x = solve_square(&hb, &e)?.ok_or_else(|| Error::Internal("independent rows became singular".into()))?;
        let ints = crate::exact_math::primitive_integral(&x);
        rays.push(
            ints.iter()
                .map(|b| i64::try_from(b).map_err(|_| overflow()))
                .collect::<Result<_>>()?,
        );
    }

    let mut processed: Vec<usize> = basis.clone();
    for i in 0..halfspaces.len() {
        if basis.contains(&i) {
            continue;
        }
        let h = &halfspaces[i];
        let vals: Vec<i128> = rays.iter().map(|r| eval(h, r)).collect();
        if vals.iter().all(|&v| v >= 0) {
            processed.push(i);
            continue;
        }
        let zero_set = |r: &[i64]| -> Vec<bool> {
            processed.iter().map(|&p| eval(&halfspaces[p], r) == 0).collect()
        };
        let zs: Vec<Vec<bool>> = rays.iter().map(|r| zero_set(r)).collect();
        let mut next: Vec<Vec<i64>> = Vec::new();
        for (r, &v) in rays.iter().zip(&vals) {
            if v >= 0 {
                next.push(r.clone());
            }
        }
        for p in 0..rays.len() {
            if vals[p] <= 0 {
                continue;
            }
            for q in 0..rays.len() {
                if vals[q] >= 0 {
                    continue;
                }
                let common: Vec<bool> = zs[p].iter().zip(&zs[q]).map(|(&a, &b)| a && b).collect();
                if common.iter().filter(|&&c| c).count() + 2 < dim {
                    continue;
                }
                // Combinatorial adjacency: no third ray is tight on all common rows.
                let adjacent = (0..rays.len()).all(|o| {
                    o == p || o == q || common.iter().zip(&zs[o]).any(|(&c, &z)| c && !z)
                });
                if !adjacent {
                    continue;
                }
                let combo: Vec<i128> = rays[p]
                    .iter()
                    .zip(&rays[q])
                    .map(|(&a, &b)| vals[p] * b as i128 - vals[q] * a as i128)
                    .collect();
                next.push(primitive(&combo)?);
            }
        }
        rays = next;
        processed.push(i);
    }
    canonical_sort(&mut rays);
    rays.dedup();
    Ok(rays)
}
