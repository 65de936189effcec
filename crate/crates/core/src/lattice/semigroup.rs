use std::collections::HashMap;

use serde::Serialize;

use crate::error::{input, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    /// Indices of the `b` generators used, with repetition, ascending.
    pub decomposition: Option<Vec<usize>>,
}

struct Search<'a> {
    gens: &'a [Vec<i64>],
    order: Vec<usize>,
    /// Remainders known to fail, by number of generators still to place.
    failed: HashMap<usize, Vec<Vec<i64>>>,
}

impl Search<'_> {
    fn dominated_by_failure(&self, rest: &[i64], left: usize) -> bool {
        self.failed
            .get(&left)
            .is_some_and(|fs| fs.iter().any(|f| rest.iter().zip(f).all(|(r, x)| r <= x)))
    }

    fn go(&mut self, rest: &mut Vec<i64>, left: usize, picked: &mut Vec<usize>) -> bool {
        if left == 0 {
            return true;
        }
        if self.dominated_by_failure(rest, left) {
            return false;
        }
        for k in 0..self.order.len() {
            let j = self.order[k];
            if self.gens[j].iter().zip(rest.iter()).any(|(g, r)| g > r) {
                continue;
            }
            for (r, g) in rest.iter_mut().zip(&self.gens[j]) {
                *r -= g;
            }
            picked.push(j);
            let ok = self.go(rest, left - 1, picked);
            for (r, g) in rest.iter_mut().zip(&self.gens[j]) {
                *r += g;
            }
            if ok {
                return true;
            }
            picked.pop();
        }
        self.failed.entry(left).or_default().push(rest.clone());
        false
    }
}

/// Whether `x^a t^b ∈ K[x][It]`, i.e. some `b` generators (with repetition)
/// sum to a vector `≤ a`. Generators are tried by descending overlap with
/// `a`; a remainder dominated by one that already failed is skipped.
pub fn semigroup_member(a: &[i64], b: i64, gens: &[Vec<i64>]) -> Result<Membership> {
    if b < 0 {
        return input(format!("negative t-degree {b}"));
    }
    if gens.iter().any(|g| g.len() != a.len() || g.iter().any(|&x| x < 0)) {
        return input("generators must be nonnegative vectors of the target's length");
    }
    if a.iter().any(|&x| x < 0) {
        return Ok(Membership { member: false, decomposition: None });
    }
    let overlap = |g: &Vec<i64>| -> i64 { g.iter().zip(a).map(|(x, y)| *x.min(y)).sum() };
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(overlap(&gens[j])), j));
    let mut search = Search { gens, order, failed: HashMap::new() };
    let mut picked = Vec::new();
    if search.go(&mut a.to_vec(), b as usize, &mut picked) {
        picked.sort_unstable();
        Ok(Membership { member: true, decomposition: Some(picked) })
    } else {
        Ok(Membership { member: false, decomposition: None })
    }
}
