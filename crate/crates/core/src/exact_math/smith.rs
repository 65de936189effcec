use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// Nonzero invariant factors `d₁ | d₂ | … | d_r` of a Smith normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithInvariants {
    pub factors: Vec<BigInt>,
}

impl SmithInvariants {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `Δ_r`, the gcd of all nonzero `r × r` minors (`r` = rank), which is the
    /// product of the invariant factors. `None` for the zero matrix.
    pub fn delta_r(&self) -> Option<BigInt> {
        if self.factors.is_empty() {
            None
        } else {
            Some(self.factors.iter().product())
        }
    }
}

fn pick_pivot(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Invariant factors by repeated gcd row/column reduction. The pivot is the
/// entry of least absolute value in the active block (row-major first).
pub fn smith_invariant(m: &IntegerMatrix) -> SmithInvariants {
    let mut a: Vec<Vec<BigInt>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = pick_pivot(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..cols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &q * &row[t];
                    row[j] = v;
                }
            }
            let dirty = (t + 1..rows).any(|i| !a[i][t].is_zero())
                || (t + 1..cols).any(|j| !a[t][j].is_zero());
            if dirty {
                let (pi, pj) = pick_pivot(&a, t).expect("nonzero entries remain");
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match offending {
                Some(i) => {
                    for j in t..cols {
                        let v = &a[t][j] + &a[i][j];
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    debug_assert!(factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    debug_assert!(factors.iter().all(|f| *f >= BigInt::one()));
    SmithInvariants { factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// gcd of all nonzero k×k minors by enumeration.
    fn minor_gcd(m: &IntegerMatrix, k: usize) -> BigInt {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut g = BigInt::zero();
        for r in subsets(m.rows(), k) {
            for c in subsets(m.cols(), k) {
                g = g.gcd(&m.submatrix(&r, &c).determinant().unwrap());
            }
        }
        g
    }

    #[test]
    fn four_cycle_with_ones_row() {
        let b = IntegerMatrix::from_rows(&[
            vec![1, 0, 0, 1],
            vec![1, 1, 0, 0],
            vec![0, 1, 1, 0],
            vec![0, 0, 1, 1],
            vec![1, 1, 1, 1],
        ])
        .unwrap();
        let s = smith_invariant(&b);
        assert_eq!(s.rank(), 3);
        assert!(s.factors.iter().all(|f| f.is_one()));
        assert_eq!(s.delta_r(), Some(BigInt::one()));
        assert_eq!(minor_gcd(&b, 3), BigInt::one());
    }

    #[test]
    fn diagonal_two_three() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(smith_invariant(&m).factors, ints(&[1, 6]));
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(smith_invariant(&IntegerMatrix::identity(4)).factors, ints(&[1, 1, 1, 1]));
        let z = IntegerMatrix::new(2, 3, vec![0; 6]).unwrap();
        let s = smith_invariant(&z);
        assert!(s.factors.is_empty());
        assert_eq!(s.delta_r(), None);
    }

    proptest! {
        #[test]
        fn delta_r_matches_minor_gcd(
            (r, c, data) in (1usize..6, 1usize..6)
                .prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-4i64..5, r * c)))
        ) {
            let m = IntegerMatrix::new(r, c, data).unwrap();
            let s = smith_invariant(&m);
            let rank = crate::exact_math::rank(&m.to_rational());
            prop_assert_eq!(s.rank(), rank);
            // every prefix product equals the gcd of k×k minors
            let mut prod = BigInt::one();
            for k in 1..=rank {
                prod *= &s.factors[k - 1];
                prop_assert_eq!(&prod, &minor_gcd(&m, k));
            }
        }
    }
}
