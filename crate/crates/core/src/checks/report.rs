//! Named verdicts with witnesses, and their markdown rendering.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::clutter::{alpha0, beta1, has_packing_property, incidence_matrix, Clutter, PACKING_VERTEX_LIMIT};
use crate::error::{Error, Result};
use crate::exact_math::Rational;
use crate::lattice::{is_normal_rees, normally_torsion_free_upto, rs_equals_normalization};
use crate::polyhedra::is_integral_q;

use super::{a_invariant, delta_r, gr_reduced, konig_via_rees, rationals, tdi_sample};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Verdict {
    Bool(bool),
    Integer(i64),
    Rational(Rational),
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Bool(b) => write!(f, "{b}"),
            Verdict::Integer(i) => write!(f, "{i}"),
            Verdict::Rational(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    /// The statement this check instantiates.
    pub statement: String,
    pub verdict: Verdict,
    pub witness: Value,
    /// Library operations that produced the verdict.
    pub provenance: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    /// Edges, 1-indexed.
    pub clutter: Vec<Vec<usize>>,
    pub n: usize,
    pub entries: Vec<CheckEntry>,
    /// Checks left out, with the precondition or budget that stopped them.
    pub skipped: Vec<(String, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReportOptions {
    pub i_max: u32,
    pub alpha_max: u32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { i_max: 3, alpha_max: 2 }
    }
}

struct Builder {
    entries: Vec<CheckEntry>,
    skipped: Vec<(String, String)>,
}

impl Builder {
    fn push(&mut self, name: &str, statement: &str, verdict: Verdict, witness: Value, provenance: &[&str]) {
        self.entries.push(CheckEntry {
            name: name.into(),
            statement: statement.into(),
            verdict,
            witness,
            provenance: provenance.iter().map(|s| s.to_string()).collect(),
        });
    }

    /// Runs `f`, recording precondition and budget failures as skips.
    fn attempt(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<()>) -> Result<()> {
        match f(self) {
            Ok(()) => Ok(()),
            Err(Error::Precondition(m)) | Err(Error::Budget(m)) => {
                self.skipped.push((name.into(), m));
                Ok(())
            }
            Err(e) => Err(e),
        }
    }
}

/// Runs the check battery on `c`. Verdicts are deterministic.
pub fn full_report(c: &Clutter, opts: ReportOptions) -> Result<CheckReport> {
    let mut b = Builder { entries: Vec::new(), skipped: Vec::new() };
    let a = incidence_matrix(c).to_integer().expect("0/1 matrix");

    let a0 = alpha0(c)?;
    let b1 = beta1(c)?;
    b.push("alpha0", "covering number", Verdict::Integer(a0 as i64), Value::Null, &["alpha0"]);
    b.push("beta1", "matching number", Verdict::Integer(b1 as i64), Value::Null, &["beta1"]);
    b.push("konig", "α₀ = β₁", Verdict::Bool(a0 == b1), Value::Null, &["alpha0", "beta1"]);
    let kr = konig_via_rees(c)?;
    b.push(
        "konig_via_rees",
        "x₁⋯xₙ t^α₀ ∈ R[It] iff König",
        Verdict::Bool(kr),
        Value::Null,
        &["semigroup_member", "has_konig"],
    );

    if c.n() <= PACKING_VERTEX_LIMIT {
        let p = has_packing_property(c)?;
        let w = p.witness.map_or(Value::Null, |w| {
            json!({
                "deleted": w.deleted.iter().map(|v| v + 1).collect::<Vec<_>>(),
                "contracted": w.contracted.iter().map(|v| v + 1).collect::<Vec<_>>(),
                "alpha0": w.alpha0,
                "beta1": w.beta1,
            })
        });
        b.push("packing", "every minor has the König property", Verdict::Bool(p.holds), w, &["has_packing_property"]);
    } else {
        b.skipped.push(("packing".into(), format!("more than {PACKING_VERTEX_LIMIT} vertices")));
    }

    let integral = is_integral_q(&a)?;
    b.push(
        "integrality",
        "Q(A) is integral",
        Verdict::Bool(integral.integral),
        integral.witness.as_ref().map_or(Value::Null, |v| json!(rationals(v))),
        &["is_integral_q"],
    );

    b.attempt("normality", |b| {
        let normal = is_normal_rees(c)?;
        b.push(
            "normality",
            "R[It] is normal",
            Verdict::Bool(normal.normal),
            normal.witness.map_or(Value::Null, |w| json!(w)),
            &["rees_cone_facets", "hilbert_basis", "semigroup_member"],
        );
        Ok(())
    })?;

    b.attempt("normally_torsion_free", |b| {
        let ntf = normally_torsion_free_upto(c, opts.i_max)?;
        b.push(
            "normally_torsion_free",
            &format!("I^i = I^(i) for i ≤ {}", opts.i_max),
            Verdict::Bool(ntf.holds),
            ntf.failure.map_or(Value::Null, |(i, g)| json!({ "power": i, "generator": g })),
            &["power", "symbolic_power"],
        );
        Ok(())
    })?;

    b.attempt("gr_reduced", |b| {
        let gr = gr_reduced(c)?;
        b.push(
            "gr_reduced",
            "associated graded ring reduced iff Q(A) integral and R[It] normal",
            Verdict::Bool(gr.reduced),
            json!({ "failing": gr.failing, "witness": gr.witness }),
            &["is_integral_q", "is_normal_rees"],
        );
        b.push(
            "mfmc",
            "max-flow min-cut iff associated graded ring reduced",
            Verdict::Bool(gr.reduced),
            Value::Null,
            &["gr_reduced"],
        );
        Ok(())
    })?;

    b.attempt("tdi_sample", |b| {
        let t = tdi_sample(c, opts.alpha_max)?;
        b.push(
            "tdi_sample",
            &format!("x ≥ 0, xA ≥ 1 TDI on weights ≤ {}", opts.alpha_max),
            Verdict::Bool(t.holds),
            t.failure.map_or(Value::Null, |f| json!(f)),
            &["solve_lp", "solve_ilp"],
        );
        Ok(())
    })?;

    b.attempt("symbolic_equals_normalization", |b| {
        let eq = rs_equals_normalization(c)?;
        b.push(
            "symbolic_equals_normalization",
            "symbolic Rees algebra equals the normalization of R[It] iff Q(A) integral",
            Verdict::Bool(eq),
            Value::Null,
            &["simis_cone", "rees_cone_facets", "hilbert_basis"],
        );
        Ok(())
    })?;

    b.push(
        "delta_r",
        "gcd of the maximal nonzero minors of [A; 1]",
        Verdict::Integer(delta_r(c).try_into().map_err(|_| Error::Internal("Δ_r overflows i64".into()))?),
        Value::Null,
        &["smith_invariant"],
    );

    b.attempt("a_invariant", |b| {
        let r = a_invariant(c)?;
        b.push(
            "a_invariant",
            "a(R[It]) ≥ −[n − (d−1)(α₀−1)]",
            Verdict::Integer(r.a),
            json!({ "bound": r.bound, "equality": r.equality, "interior_point": r.witness }),
            &["rees_cone_facets", "a_invariant"],
        );
        Ok(())
    })?;

    Ok(CheckReport {
        clutter: c.edge_lists().into_iter().map(|e| e.into_iter().map(|v| v + 1).collect()).collect(),
        n: c.n(),
        entries: b.entries,
        skipped: b.skipped,
    })
}

fn edge_label(edges: &[Vec<usize>]) -> String {
    edges
        .iter()
        .map(|e| format!("{{{}}}", e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One row per check across the bundle.
pub fn reports_markdown(reports: &[CheckReport]) -> String {
    let mut out = String::from("| clutter | check | statement | verdict |\n|---|---|---|---|\n");
    for r in reports {
        let label = edge_label(&r.clutter);
        for e in &r.entries {
            out.push_str(&format!("| {label} | {} | {} | {} |\n", e.name, e.statement, e.verdict));
        }
    }
    out
}

/// Counts per verdict, from a survey or its JSON-lines records.
pub fn survey_markdown(counts: &BTreeMap<String, usize>, complete: bool) -> String {
    let mut out = String::from("| verdict | count |\n|---|---|\n");
    for (v, k) in counts {
        out.push_str(&format!("| {v} | {k} |\n"));
    }
    if !complete {
        out.push_str("\nsurvey interrupted; counts cover finished clutters only\n");
    }
    out
}
