//! Exact arithmetic substrate: rationals, dense matrices, simplex, branch and
//! bound, and Smith normal form. Nothing here uses floating point.

mod ilp;
mod lp;
mod matrix;
mod rational;
mod smith;

pub use ilp::{solve_ilp, IlpOutcome, IlpSolution};
pub use lp::{solve_lp, Direction, LinearProgram, LpOutcome, LpSolution, Sense, VarBound};
pub use matrix::{
    dot, gcd_slice, primitive_integral, rank, solve_square, solve_square_small, IntegerMatrix,
    RationalMatrix, RationalVector, SmallSolve,
};
pub use rational::{denominator_lcm, ParseRationalError, Rational};
pub use smith::{smith_invariant, SmithInvariants};
