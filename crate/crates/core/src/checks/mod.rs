//! Composite predicates over a clutter: reducedness of `gr_I(R)` and its
//! equivalent forms, sampled total dual integrality, König through the Rees
//! algebra, the a-invariant, and the conjecture survey.

mod ainv;
mod explore;
mod report;

use num_bigint::BigInt;
use serde::Serialize;

use crate::clutter::{alpha0, has_konig, incidence_matrix, is_unmixed, minor, Clutter, Minor};
use crate::error::{internal, precondition, Result};
use crate::exact_math::{
    smith_invariant, solve_ilp, solve_lp, Direction, IlpOutcome, IntegerMatrix, LinearProgram,
    LpOutcome, Rational, RationalVector, Sense,
};
use crate::lattice::{is_normal_rees, semigroup_member};
use crate::polyhedra::is_integral_q;

pub use ainv::{a_invariant, gorenstein_alpha2_check, AInvariantReport, GorensteinReport};
pub use explore::{explore_conjecture, Survey, SurveyOptions, SurveyRecord, SurveyVerdict};
pub use report::{
    full_report, reports_markdown, survey_markdown, CheckEntry, CheckReport, ReportOptions, Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Leg {
    Integrality,
    Normality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrReport {
    pub reduced: bool,
    pub failing: Option<Leg>,
    /// A fractional vertex of `Q(A)` or a lattice point of the Rees cone
    /// outside `ℕ𝒜′`, matching `failing`.
    pub witness: Option<Vec<String>>,
}

/// `gr_I(R)` is reduced iff `Q(A)` is integral and `R[It]` is normal.
/// Integrality is tested first; normality only if it holds.
pub fn gr_reduced(c: &Clutter) -> Result<GrReport> {
    let a = incidence_matrix(c).to_integer().expect("0/1 matrix");
    let integral = is_integral_q(&a)?;
    if let Some(v) = integral.witness {
        return Ok(GrReport {
            reduced: false,
            failing: Some(Leg::Integrality),
            witness: Some(v.iter().map(Rational::to_string).collect()),
        });
    }
    let normal = is_normal_rees(c)?;
    if let Some(w) = normal.witness {
        return Ok(GrReport {
            reduced: false,
            failing: Some(Leg::Normality),
            witness: Some(w.iter().map(i64::to_string).collect()),
        });
    }
    Ok(GrReport { reduced: true, failing: None, witness: None })
}

/// Max-flow min-cut, decided through its algebraic equivalent [`gr_reduced`].
pub fn mfmc(c: &Clutter) -> Result<bool> {
    Ok(gr_reduced(c)?.reduced)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TdiFailure {
    pub weights: Vec<i64>,
    pub lp_value: Rational,
    pub ilp_value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TdiReport {
    pub holds: bool,
    pub failure: Option<TdiFailure>,
    pub samples: usize,
}

/// `max{⟨y,1⟩ : y ≥ 0, Ay ≤ α}` has an integral optimum for every
/// `α ∈ {0..alpha_max}ⁿ`, tested by comparing LP and ILP values.
pub fn tdi_sample(c: &Clutter, alpha_max: u32) -> Result<TdiReport> {
    if alpha_max == 0 {
        return precondition("alpha_max must be at least 1");
    }
    let a = incidence_matrix(c);
    let (n, q) = (c.n(), c.num_edges());
    let mut alpha = vec![0i64; n];
    let mut samples = 0;
    loop {
        samples += 1;
        let lp = LinearProgram::new(
            Direction::Maximize,
            vec![Rational::one(); q],
            a.clone(),
            vec![Sense::Le; n],
            alpha.iter().map(|&x| Rational::from_integer(x)).collect(),
        )?;
        let relaxed = match solve_lp(&lp)? {
            LpOutcome::Optimal(s) => s,
            other => return internal(format!("bounded packing LP returned {other:?}")),
        };
        // An integral LP optimum settles the ILP without branching.
        if !relaxed.point.iter().all(Rational::is_integer) {
            let ilp_value = match solve_ilp(&lp)? {
                IlpOutcome::Optimal(s) => s.value,
                other => return internal(format!("bounded packing ILP returned {other:?}")),
            };
            if ilp_value != relaxed.value {
                return Ok(TdiReport {
                    holds: false,
                    failure: Some(TdiFailure { weights: alpha, lp_value: relaxed.value, ilp_value }),
                    samples,
                });
            }
        }
        let Some(i) = (0..n).find(|&i| alpha[i] < alpha_max as i64) else { break };
        alpha[i] += 1;
        for x in &mut alpha[..i] {
            *x = 0;
        }
    }
    Ok(TdiReport { holds: true, failure: None, samples })
}

/// König as membership `x₁⋯xₙ t^{α₀} ∈ R[It]`, checked against `α₀ = β₁`.
pub fn konig_via_rees(c: &Clutter) -> Result<bool> {
    let g = alpha0(c)? as i64;
    let member = semigroup_member(&vec![1; c.n()], g, &c.exponent_vectors())?.member;
    if member != has_konig(c)? {
        return internal(format!("Rees-algebra König test gives {member}, α₀ = β₁ test disagrees"));
    }
    Ok(member)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeletionReport {
    pub gr_reduced: bool,
    pub deletions_normal: bool,
    pub agree: bool,
    /// First vertex whose deletion ideal `I ∩ K[X ∖ {xᵢ}]` is not normal.
    pub failing_vertex: Option<usize>,
}

/// For unmixed clutters with `Q(A)` integral, compares reducedness of
/// `gr_I(R)` with normality of every deletion ideal `I ∩ K[X ∖ {xᵢ}]`.
/// A deletion with no edges left is the zero ideal, which is normal.
pub fn deletion_normality_check(c: &Clutter) -> Result<DeletionReport> {
    if !is_unmixed(c) {
        return precondition("clutter is not unmixed");
    }
    let a = incidence_matrix(c).to_integer().expect("0/1 matrix");
    if !is_integral_q(&a)?.integral {
        return precondition("Q(A) is not integral");
    }
    let reduced = gr_reduced(c)?.reduced;
    let mut failing_vertex = None;
    for i in 0..c.n() {
        let normal = match minor(c, 1 << i, 0)? {
            Minor::Proper { clutter, .. } => is_normal_rees(&clutter)?.normal,
            Minor::Improper => true,
        };
        if !normal {
            failing_vertex = Some(i);
            break;
        }
    }
    let deletions_normal = failing_vertex.is_none();
    Ok(DeletionReport { gr_reduced: reduced, deletions_normal, agree: reduced == deletions_normal, failing_vertex })
}

/// `B`: the incidence matrix with a row of ones appended.
pub fn b_matrix(c: &Clutter) -> IntegerMatrix {
    let mut rows: Vec<Vec<i64>> = (0..c.n())
        .map(|i| c.edges().iter().map(|&e| (e >> i & 1) as i64).collect())
        .collect();
    rows.push(vec![1; c.num_edges()]);
    IntegerMatrix::from_rows(&rows).expect("rectangular")
}

/// `Δ_r(B)`, the gcd of the maximal nonzero minors of [`b_matrix`].
pub fn delta_r(c: &Clutter) -> BigInt {
    smith_invariant(&b_matrix(c)).delta_r().expect("B has a row of ones")
}

pub(crate) fn rationals(v: &RationalVector) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutter::tests::{c4, cl, k3, q6};

    #[test]
    fn gr_examples() {
        assert!(gr_reduced(&c4()).unwrap().reduced);
        let k = gr_reduced(&k3()).unwrap();
        assert_eq!((k.reduced, k.failing), (false, Some(Leg::Integrality)));
        assert_eq!(k.witness, Some(vec!["1/2".to_string(); 3]));
        let q = gr_reduced(&q6()).unwrap();
        assert_eq!((q.reduced, q.failing), (false, Some(Leg::Normality)));
        assert!(mfmc(&c4()).unwrap() && !mfmc(&q6()).unwrap() && !mfmc(&k3()).unwrap());
    }

    #[test]
    fn tdi_examples() {
        let k = tdi_sample(&k3(), 1).unwrap();
        assert!(!k.holds);
        let f = k.failure.unwrap();
        assert_eq!(f.weights, vec![1, 1, 1]);
        assert_eq!((f.lp_value, f.ilp_value), (Rational::new(3, 2), Rational::one()));
        assert!(tdi_sample(&c4(), 2).unwrap().holds);
        assert!(tdi_sample(&c4(), 0).is_err());
    }

    #[test]
    fn konig_through_rees() {
        assert!(konig_via_rees(&c4()).unwrap());
        assert!(!konig_via_rees(&k3()).unwrap());
        assert!(!konig_via_rees(&q6()).unwrap());
    }

    #[test]
    fn deletions() {
        let r = deletion_normality_check(&c4()).unwrap();
        assert!(r.gr_reduced && r.deletions_normal && r.agree);
        assert!(deletion_normality_check(&cl(3, &[&[1, 2], &[2, 3]])).is_err());
        // Q₆ is not unmixed: its covers have sizes 2 and 3
        assert!(!is_unmixed(&q6()));
        assert!(deletion_normality_check(&q6()).is_err());
    }

    #[test]
    fn delta_r_of_four_cycle() {
        assert_eq!(delta_r(&c4()), BigInt::from(1));
        assert_eq!(b_matrix(&c4()).rows(), 5);
    }
}
