//! Exhaustive small-scale survey: every clutter with the packing property
//! should have an integral `Q(A)`, a normal Rees algebra and max-flow min-cut.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::clutter::{alpha0, beta1, canonical_form, enumerate_clutters, has_packing_property, incidence_matrix, Clutter};
use crate::error::{Error, Result};
use crate::lattice::{is_normal_rees, normally_torsion_free_upto};
use crate::polyhedra::is_integral_q;

use super::{gr_reduced, rationals};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurveyOptions {
    pub n_max: usize,
    pub q_max: usize,
    pub i_max: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurveyVerdict {
    NotPacking,
    Holds,
    /// Packing but `Q(A)` not integral. Contradicts a known theorem, so it
    /// points at a bug rather than at the conjecture.
    IntegralityViolation,
    Counterexample,
    BudgetExceeded,
}

impl SurveyVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            SurveyVerdict::NotPacking => "not-packing",
            SurveyVerdict::Holds => "holds",
            SurveyVerdict::IntegralityViolation => "integrality-violation",
            SurveyVerdict::Counterexample => "counterexample",
            SurveyVerdict::BudgetExceeded => "budget-exceeded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRecord {
    pub canonical_form: String,
    pub n: usize,
    pub q: usize,
    pub alpha0: Option<usize>,
    pub beta1: Option<usize>,
    pub packing: Option<bool>,
    pub q_integral: Option<bool>,
    pub rees_normal: Option<bool>,
    /// Largest `i ≤ i_max` with `I^j = I^{(j)}` for all `j ≤ i`.
    pub ntf_upto: Option<u32>,
    pub mfmc: Option<bool>,
    pub verdict: SurveyVerdict,
    pub certificate: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Survey {
    pub options: SurveyOptions,
    /// False when the run was interrupted; `records` then holds the
    /// clutters finished before the stop.
    pub complete: bool,
    pub counts: BTreeMap<String, usize>,
    pub records: Vec<SurveyRecord>,
}

impl Survey {
    /// One JSON object per line, in survey order.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out
    }
}

fn empty_record(key: String, c: &Clutter) -> SurveyRecord {
    SurveyRecord {
        canonical_form: key,
        n: c.n(),
        q: c.num_edges(),
        alpha0: None,
        beta1: None,
        packing: None,
        q_integral: None,
        rees_normal: None,
        ntf_upto: None,
        mfmc: None,
        verdict: SurveyVerdict::BudgetExceeded,
        certificate: Value::Null,
    }
}

fn examine(r: &mut SurveyRecord, c: &Clutter, i_max: u32) -> Result<()> {
    r.alpha0 = Some(alpha0(c)?);
    r.beta1 = Some(beta1(c)?);
    let packing = has_packing_property(c)?;
    r.packing = Some(packing.holds);
    let a = incidence_matrix(c).to_integer().expect("0/1 matrix");
    let integral = is_integral_q(&a)?;
    r.q_integral = Some(integral.integral);
    let normal = is_normal_rees(c)?;
    r.rees_normal = Some(normal.normal);
    let ntf = normally_torsion_free_upto(c, i_max)?;
    r.ntf_upto = Some(ntf.failure.as_ref().map_or(i_max, |f| f.0 - 1));
    r.mfmc = Some(gr_reduced(c)?.reduced);

    let mut cert = serde_json::Map::new();
    if let Some(w) = &packing.witness {
        cert.insert(
            "minor".into(),
            json!({
                "deleted": w.deleted.iter().map(|v| v + 1).collect::<Vec<_>>(),
                "contracted": w.contracted.iter().map(|v| v + 1).collect::<Vec<_>>(),
                "alpha0": w.alpha0,
                "beta1": w.beta1,
            }),
        );
    }
    if let Some(v) = &integral.witness {
        cert.insert("fractional_vertex".into(), json!(rationals(v)));
    }
    if let Some(w) = &normal.witness {
        cert.insert("normality_witness".into(), json!(w));
    }
    if let Some((i, g)) = &ntf.failure {
        cert.insert("symbolic_gap".into(), json!({ "power": i, "generator": g }));
    }
    r.certificate = if cert.is_empty() { Value::Null } else { Value::Object(cert) };

    r.verdict = if !packing.holds {
        SurveyVerdict::NotPacking
    } else if !integral.integral {
        SurveyVerdict::IntegralityViolation
    } else if !normal.normal || r.mfmc == Some(false) || ntf.failure.is_some() {
        SurveyVerdict::Counterexample
    } else {
        SurveyVerdict::Holds
    };
    Ok(())
}

/// Surveys every clutter up to isomorphism with `1 ≤ n ≤ n_max` vertices
/// (all used) and `1 ≤ q ≤ q_max` edges. Records are ordered by `(n, q,
/// canonical form)`. Raising `stop` ends the run early with
/// `complete = false`. A clutter whose checks exceed a budget is kept with
/// verdict `budget-exceeded` and the budget message as certificate.
pub fn explore_conjecture(opts: SurveyOptions, stop: &AtomicBool) -> Result<Survey> {
    let mut clutters = Vec::new();
    for n in 1..=opts.n_max {
        clutters.extend(enumerate_clutters(n, opts.q_max)?);
    }
    let mut keyed: Vec<(String, Clutter)> = clutters
        .into_iter()
        .map(|c| canonical_form(&c).map(|f| (f.key, f.clutter)))
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| (a.1.n(), a.1.num_edges(), &a.0).cmp(&(b.1.n(), b.1.num_edges(), &b.0)));

    let results: Vec<Option<Result<SurveyRecord>>> = keyed
        .into_par_iter()
        .map(|(key, c)| {
            if stop.load(Ordering::Relaxed) {
                return None;
            }
            let mut r = empty_record(key, &c);
            Some(match examine(&mut r, &c, opts.i_max) {
                Ok(()) => Ok(r),
                Err(Error::Budget(msg)) => {
                    r.verdict = SurveyVerdict::BudgetExceeded;
                    r.certificate = json!({ "budget": msg });
                    Ok(r)
                }
                Err(e) => Err(e),
            })
        })
        .collect();

    let mut complete = true;
    let mut records = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Some(r) => records.push(r?),
            None => complete = false,
        }
    }
    let mut counts = BTreeMap::new();
    for r in &records {
        *counts.entry(r.verdict.as_str().to_string()).or_insert(0) += 1;
    }
    Ok(Survey { options: opts, complete, counts, records })
}
