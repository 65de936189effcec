//! Depth-first branch and bound over exact LP relaxations.

use num_bigint::BigInt;

use super::lp::{solve_lp, Direction, LinearProgram, LpOutcome, Sense};
use super::matrix::RationalVector;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Node budget for a single [`solve_ilp`] call.
pub const MAX_NODES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpSolution {
    pub value: Rational,
    /// Integral coordinates.
    pub point: RationalVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IlpOutcome {
    Optimal(IlpSolution),
    Infeasible,
    Unbounded,
}

impl IlpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            IlpOutcome::Optimal(s) => Some(&s.value),
            _ => None,
        }
    }
}

/// Index of the variable whose fractional part is closest to 1/2; lowest
/// index wins ties. `None` if `x` is integral.
fn most_fractional(x: &[Rational]) -> Option<usize> {
    let half = Rational::new(1, 2);
    let mut best: Option<(usize, Rational)> = None;
    for (j, v) in x.iter().enumerate() {
        if v.is_integer() {
            continue;
        }
        let dist = (&v.fract() - &half).abs();
        if best.as_ref().map_or(true, |(_, d)| dist < *d) {
            best = Some((j, dist));
        }
    }
    best.map(|(j, _)| j)
}

/// Optimizes `lp` over integral points (every variable integral).
pub fn solve_ilp(lp: &LinearProgram) -> Result<IlpOutcome> {
    lp.validate()?;
    let n = lp.num_vars();
    let better = |candidate: &Rational, incumbent: &Rational| match lp.direction {
        Direction::Minimize => candidate < incumbent,
        Direction::Maximize => candidate > incumbent,
    };

    // Each node is the list of branching bounds (var, sense, value).
    let mut stack: Vec<Vec<(usize, Sense, BigInt)>> = vec![Vec::new()];
    let mut incumbent: Option<IlpSolution> = None;
    let mut nodes = 0usize;
    while let Some(bounds) = stack.pop() {
        nodes += 1;
        if nodes > MAX_NODES {
            return Err(Error::Budget(format!("branch and bound exceeded {MAX_NODES} nodes")));
        }
        let mut relaxed = lp.clone();
        for (j, sense, v) in &bounds {
            let mut row = vec![Rational::zero(); n];
            row[*j] = Rational::one();
            relaxed.add_constraint(&row, *sense, Rational::from(v.clone()))?;
        }
        let sol = match solve_lp(&relaxed)? {
            LpOutcome::Infeasible => continue,
            LpOutcome::Unbounded => return Ok(IlpOutcome::Unbounded),
            LpOutcome::Optimal(s) => s,
        };
        if let Some(inc) = &incumbent {
            if !better(&sol.value, &inc.value) {
                continue;
            }
        }
        match most_fractional(&sol.point) {
            None => {
                incumbent = Some(IlpSolution { value: sol.value, point: sol.point });
            }
            Some(j) => {
                let v = &sol.point[j];
                let mut up = bounds.clone();
                up.push((j, Sense::Ge, v.ceil()));
                let mut down = bounds;
                down.push((j, Sense::Le, v.floor()));
                stack.push(up);
                stack.push(down);
            }
        }
    }
    Ok(match incumbent {
        Some(s) => IlpOutcome::Optimal(s),
        None => IlpOutcome::Infeasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::matrix::RationalMatrix;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn k3() -> RationalMatrix {
        RationalMatrix::from_i64_rows(&[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]).unwrap()
    }

    /// `2^3` brute force over 0/1 vectors.
    fn brute(pred: impl Fn(&[i64]) -> bool, maximize: bool) -> i64 {
        let mut best: Option<i64> = None;
        for mask in 0..8u32 {
            let v: Vec<i64> = (0..3).map(|j| ((mask >> j) & 1) as i64).collect();
            if pred(&v) {
                let s = v.iter().sum();
                best = Some(match best {
                    None => s,
                    Some(b) if maximize => b.max(s),
                    Some(b) => b.min(s),
                });
            }
        }
        best.unwrap()
    }

    #[test]
    fn k3_matching_number() {
        let a = k3();
        let expected = brute(
            |y| (0..3).all(|i| (0..3).map(|j| a.get(i, j).to_i64().unwrap() * y[j]).sum::<i64>() <= 1),
            true,
        );
        assert_eq!(expected, 1);
        let lp = LinearProgram::new(Direction::Maximize, vec![q(1); 3], a, vec![Sense::Le; 3], vec![q(1); 3])
            .unwrap();
        assert_eq!(solve_ilp(&lp).unwrap().value(), Some(&q(expected)));
    }

    #[test]
    fn k3_cover_number() {
        let a = k3();
        let expected = brute(
            |x| (0..3).all(|j| (0..3).map(|i| a.get(i, j).to_i64().unwrap() * x[i]).sum::<i64>() >= 1),
            false,
        );
        assert_eq!(expected, 2);
        let lp = LinearProgram::new(Direction::Minimize, vec![q(1); 3], a.transpose(), vec![Sense::Ge; 3], vec![q(1); 3])
            .unwrap();
        let IlpOutcome::Optimal(sol) = solve_ilp(&lp).unwrap() else { panic!() };
        assert_eq!(sol.value, q(expected));
        assert!(sol.point.iter().all(Rational::is_integer));
        assert!(lp.is_feasible(&sol.point));
    }

    #[test]
    fn empty_constraints() {
        let lp = LinearProgram::new(Direction::Minimize, vec![q(0); 2], RationalMatrix::zeros(0, 2), vec![], vec![])
            .unwrap();
        let IlpOutcome::Optimal(sol) = solve_ilp(&lp).unwrap() else { panic!() };
        assert_eq!(sol.value, q(0));
        assert_eq!(sol.point, vec![q(0); 2]);
    }

    #[test]
    fn infeasible_integer_gap() {
        // 2x = 1 has a rational but no integral solution
        let lp = LinearProgram::new(
            Direction::Minimize,
            vec![q(1)],
            RationalMatrix::from_i64_rows(&[vec![2]]).unwrap(),
            vec![Sense::Eq],
            vec![q(1)],
        )
        .unwrap();
        assert_eq!(solve_ilp(&lp).unwrap(), IlpOutcome::Infeasible);
    }

    #[test]
    fn ilp_bounded_by_relaxation() {
        let a = k3();
        let lp = LinearProgram::new(Direction::Maximize, vec![q(1); 3], a, vec![Sense::Le; 3], vec![q(1); 3])
            .unwrap();
        let relax = solve_lp(&lp).unwrap();
        let int = solve_ilp(&lp).unwrap();
        assert!(int.value().unwrap() <= &relax.optimal().unwrap().value);
        assert_eq!(relax.optimal().unwrap().value, Rational::new(3, 2));
    }
}
