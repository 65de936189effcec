//! Balanced and totally unimodular matrices, by bounded exhaustive search.

use std::collections::HashMap;

use crate::error::{input, Error, Result};
use crate::exact_math::IntegerMatrix;

/// Largest odd order searched for the forbidden balanced submatrix.
pub const BALANCED_ORDER_LIMIT: usize = 9;

/// Largest `min(rows, cols)` for the exhaustive minor scan.
pub const UNIMODULAR_ORDER_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    /// Rows and columns of an odd square submatrix with exactly two ones
    /// in every row and column.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularityReport {
    pub unimodular: bool,
    /// Rows, columns and determinant of the first minor outside `{0, ±1}`.
    pub witness: Option<(Vec<usize>, Vec<usize>, i64)>,
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n.saturating_sub(k) {
            go(i + 1, n, k - 1, cur | 1 << i, out);
        }
    }
    go(0, n, k, 0, &mut out);
    out
}

fn bits(m: u64) -> Vec<usize> {
    (0..64).filter(|&i| m >> i & 1 == 1).collect()
}

/// Chooses `k` of `cands` so that each row of `rows` meets exactly two.
fn pick_columns(row_masks: &[u64], cands: &[usize], k: usize) -> Option<Vec<usize>> {
    fn go(
        row_masks: &[u64],
        cands: &[usize],
        from: usize,
        left: usize,
        deg: &mut Vec<u8>,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if left == 0 {
            return deg.iter().all(|&d| d == 2);
        }
        if cands.len() - from < left {
            return false;
        }
        for idx in from..cands.len() {
            let c = cands[idx];
            let hit: Vec<usize> = (0..row_masks.len()).filter(|&r| row_masks[r] >> c & 1 == 1).collect();
            if hit.iter().any(|&r| deg[r] == 2) {
                continue;
            }
            for &r in &hit {
                deg[r] += 1;
            }
            chosen.push(c);
            if go(row_masks, cands, idx + 1, left - 1, deg, chosen) {
                return true;
            }
            chosen.pop();
            for &r in &hit {
                deg[r] -= 1;
            }
        }
        false
    }
    let mut deg = vec![0u8; row_masks.len()];
    let mut chosen = Vec::new();
    go(row_masks, cands, 0, k, &mut deg, &mut chosen).then_some(chosen)
}

pub fn is_balanced(a: &IntegerMatrix) -> Result<BalanceReport> {
    if a.cols() > 64 {
        return input("balanced check supports at most 64 columns");
    }
    let mut masks = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut m = 0u64;
        for j in 0..a.cols() {
            match a.get(i, j) {
                0 => {}
                1 => m |= 1 << j,
                v => return input(format!("entry ({}, {}) = {v} is not 0/1", i + 1, j + 1)),
            }
        }
        masks.push(m);
    }
    let order = a.rows().min(a.cols());
    for k in (3..=order.min(BALANCED_ORDER_LIMIT)).step_by(2) {
        for rs in subsets_of_size(a.rows(), k) {
            let rows = bits(rs);
            let sub: Vec<u64> = rows.iter().map(|&r| masks[r]).collect();
            let cands: Vec<usize> = (0..a.cols())
                .filter(|&c| sub.iter().filter(|&&m| m >> c & 1 == 1).count() == 2)
                .collect();
            if let Some(cols) = pick_columns(&sub, &cands, k) {
                return Ok(BalanceReport { balanced: false, witness: Some((rows, cols)) });
            }
        }
    }
    if order > BALANCED_ORDER_LIMIT {
        return Err(Error::Budget(format!(
            "balanced check limited to odd orders ≤ {BALANCED_ORDER_LIMIT}, matrix is {}×{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(BalanceReport { balanced: true, witness: None })
}

struct Minors<'a> {
    a: &'a IntegerMatrix,
    memo: HashMap<(u64, u64), i64>,
}

impl Minors<'_> {
    /// Laplace expansion along the lowest row.
    fn det(&mut self, rows: u64, cols: u64) -> i64 {
        if rows == 0 {
            return 1;
        }
        if let Some(&d) = self.memo.get(&(rows, cols)) {
            return d;
        }
        let r = rows.trailing_zeros() as usize;
        let rest = rows & (rows - 1);
        let mut total = 0i64;
        for (pos, c) in bits(cols).into_iter().enumerate() {
            let v = self.a.get(r, c);
            if v == 0 {
                continue;
            }
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            total += sign * v * self.det(rest, cols & !(1 << c));
        }
        self.memo.insert((rows, cols), total);
        total
    }
}

pub fn is_totally_unimodular(a: &IntegerMatrix) -> Result<UnimodularityReport> {
    if a.rows() > 64 || a.cols() > 64 {
        return input("unimodularity check supports at most 64 rows and columns");
    }
    let order = a.rows().min(a.cols());
    if order > UNIMODULAR_ORDER_LIMIT {
        return Err(Error::Budget(format!(
            "unimodularity check limited to min(rows, cols) ≤ {UNIMODULAR_ORDER_LIMIT}, matrix is {}×{}",
            a.rows(),
            a.cols()
        )));
    }
    let mut minors = Minors { a, memo: HashMap::new() };
    for k in 1..=order {
        for rs in subsets_of_size(a.rows(), k) {
            for cs in subsets_of_size(a.cols(), k) {
                let d = minors.det(rs, cs);
                if d.abs() > 1 {
                    return Ok(UnimodularityReport {
                        unimodular: false,
                        witness: Some((bits(rs), bits(cs), d)),
                    });
                }
            }
        }
    }
    Ok(UnimodularityReport { unimodular: true, witness: None })
}
