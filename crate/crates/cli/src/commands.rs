use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::AtomicBool;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reeskit_core::checks::{
    a_invariant, b_matrix, explore_conjecture, full_report, gorenstein_alpha2_check, gr_reduced,
    konig_via_rees, reports_markdown, survey_markdown, tdi_sample, ReportOptions, SurveyOptions,
};
use reeskit_core::clutter::{alpha0, beta1, blocker, has_packing_property, incidence_matrix, minimal_vertex_covers};
use reeskit_core::exact_math::{smith_invariant, Rational};
use reeskit_core::lattice::{normality_from_basis, normally_torsion_free_upto, semigroup_member};
use reeskit_core::monomial::{integral_closure_power, symbolic_power};
use reeskit_core::polyhedra::{q_vertices, rees_cone_facets};
use serde_json::{json, Value};

use crate::cache::{Cone, HilbertCache};
use crate::io::{emit_clutter, read_clutter};
use crate::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "reeskit", version, about = "Invariants of clutters and their edge ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Hilbert basis cache directory; defaults to $REESKIT_CACHE.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// Tables; only for `report` and `explore`.
    Markdown,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Clutter file: {"n": 3, "edges": [[1,2],[2,3]]}.
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Minimal vertex covers.
    Covers(Input),
    /// The clutter of minimal vertex covers.
    Blocker(Input),
    /// Covering number α₀ and matching number β₁.
    Numbers(Input),
    /// α₀ = β₁, directly and as membership in the Rees algebra.
    Konig(Input),
    /// König property on every minor.
    Packing(Input),
    /// Vertices of Q(A) = {x ≥ 0 : xA ≥ 1}.
    Vertices(Input),
    /// Facets of the Rees cone.
    Facets(Input),
    /// Hilbert basis of the Rees cone, or of the Simis cone with --simis.
    Hilbert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        simis: bool,
    },
    /// Symbolic power I^(b).
    Symbolic {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        b: u32,
    },
    /// Normality of R[It].
    Normal(Input),
    /// I^i = I^(i) for i ≤ i_max.
    Ntf {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        i_max: u32,
    },
    /// Integral closure of I^i.
    Closure {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        i: u32,
    },
    /// Max-flow min-cut, via reducedness of the associated graded ring.
    Mfmc(Input),
    /// LP against ILP on max{⟨y,1⟩ : y ≥ 0, Ay ≤ α} for α ∈ {0..alpha_max}ⁿ.
    Tdi {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        alpha_max: u32,
    },
    /// a-invariant of R[It]; --gorenstein adds the canonical module check.
    Ainv {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        gorenstein: bool,
    },
    /// Smith normal form of the incidence matrix with a row of ones appended.
    Smith(Input),
    /// Survey all clutters up to isomorphism; JSON lines, one per clutter.
    Explore {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        q_max: usize,
        #[arg(long, default_value_t = 3)]
        i_max: u32,
    },
    /// Full check battery over clutter files, and verdict counts of surveys.
    Report {
        inputs: Vec<PathBuf>,
        /// Survey output of `explore` to summarize.
        #[arg(long)]
        survey: Vec<PathBuf>,
        #[arg(long, default_value_t = 3)]
        i_max: u32,
        #[arg(long, default_value_t = 2)]
        alpha_max: u32,
    },
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

/// A JSON number when it fits in 64 bits, else a decimal string.
fn integer(digits: String) -> Value {
    digits.parse::<i64>().map_or(Value::String(digits), Value::from)
}

fn line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("value serializes");
    s.push('\n');
    s
}

fn check_positive(name: &str, v: u64) -> CliResult<()> {
    if v == 0 {
        return Err(CliError::Input(format!("--{name} must be at least 1")));
    }
    Ok(())
}

/// Verdict counts of a JSON-lines survey file.
fn survey_counts(path: &Path) -> CliResult<BTreeMap<String, usize>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut counts = BTreeMap::new();
    for (k, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let v: Value = serde_json::from_str(line)
            .map_err(|e| CliError::Input(format!("{}:{}: {e}", path.display(), k + 1)))?;
        let verdict = v
            .get("verdict")
            .and_then(Value::as_str)
            .ok_or_else(|| CliError::Input(format!("{}:{}: no verdict", path.display(), k + 1)))?;
        *counts.entry(verdict.to_string()).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Runs one command and returns the report text. Raising `stop` ends
/// `explore` early with the records finished so far.
pub fn run(cli: &Cli, stop: &AtomicBool) -> CliResult<Outcome> {
    let cache = HilbertCache::new(cli.cache_dir.clone());
    let tables = matches!(cli.verb, Verb::Explore { .. } | Verb::Report { .. });
    if cli.format == Format::Markdown && !tables {
        return Err(CliError::Input("markdown output is available for report and explore only".into()));
    }
    let value = match &cli.verb {
        Verb::Covers(i) => {
            let c = read_clutter(&i.input)?;
            let covers: Vec<Vec<usize>> = minimal_vertex_covers(&c).iter().map(|s| one_based(&s.vertices())).collect();
            json!({ "n": c.n(), "covers": covers })
        }
        Verb::Blocker(i) => {
            let c = read_clutter(&i.input)?;
            return Ok(Outcome::done(emit_clutter(&blocker(&c)) + "\n"));
        }
        Verb::Numbers(i) => {
            let c = read_clutter(&i.input)?;
            json!({ "alpha0": alpha0(&c)?, "beta1": beta1(&c)? })
        }
        Verb::Konig(i) => {
            let c = read_clutter(&i.input)?;
            let (a, b) = (alpha0(&c)?, beta1(&c)?);
            json!({ "konig": a == b, "alpha0": a, "beta1": b, "via_rees": konig_via_rees(&c)? })
        }
        Verb::Packing(i) => {
            let c = read_clutter(&i.input)?;
            let p = has_packing_property(&c)?;
            let witness = p.witness.map(|w| {
                json!({
                    "deleted": one_based(&w.deleted),
                    "contracted": one_based(&w.contracted),
                    "minor": serde_json::from_str::<Value>(&emit_clutter(&w.minor)).expect("clutter JSON"),
                    "alpha0": w.alpha0,
                    "beta1": w.beta1,
                })
            });
            json!({ "packing": p.holds, "minors_checked": p.minors_checked, "witness": witness })
        }
        Verb::Vertices(i) => {
            let c = read_clutter(&i.input)?;
            let a = incidence_matrix(&c).to_integer().expect("0/1 matrix");
            let vs = q_vertices(&a)?;
            json!(vs.vertices.iter().map(|v| rationals(v)).collect::<Vec<_>>())
        }
        Verb::Facets(i) => {
            let c = read_clutter(&i.input)?;
            let rep = rees_cone_facets(&c)?;
            let facets: Vec<Value> = rep
                .facets
                .iter()
                .map(|f| json!({ "normal": f.normal, "d": f.d, "vertex": rationals(&f.vertex), "cover": f.is_cover() }))
                .collect();
            json!({ "units": rep.unit_facets(), "facets": facets })
        }
        Verb::Hilbert { input, simis } => {
            let c = read_clutter(&input.input)?;
            let cone = if *simis { Cone::Simis } else { Cone::Rees };
            let (hb, _) = cache.get(&c, cone)?;
            let gens = c.exponent_vectors();
            let n = c.n();
            let mut elements = Vec::with_capacity(hb.elements.len());
            for e in &hb.elements {
                let member = semigroup_member(&e[..n], e[n], &gens)?.member;
                elements.push(json!({ "vector": e, "in_semigroup": member }));
            }
            json!({ "cone": cone, "dim": hb.dim, "elements": elements })
        }
        Verb::Symbolic { input, b } => {
            check_positive("b", *b as u64)?;
            json!(symbolic_power(&read_clutter(&input.input)?, *b)?)
        }
        Verb::Normal(i) => {
            let c = read_clutter(&i.input)?;
            let (hb, _) = cache.get(&c, Cone::Rees)?;
            let r = normality_from_basis(&c, hb)?;
            json!({ "normal": r.normal, "witness": r.witness, "basis_size": r.basis.elements.len() })
        }
        Verb::Ntf { input, i_max } => {
            check_positive("i-max", *i_max as u64)?;
            let r = normally_torsion_free_upto(&read_clutter(&input.input)?, *i_max)?;
            let failure = r.failure.map(|(i, g)| json!({ "power": i, "generator": g }));
            json!({ "holds": r.holds, "i_max": i_max, "failure": failure })
        }
        Verb::Closure { input, i } => {
            check_positive("i", *i as u64)?;
            json!(integral_closure_power(&read_clutter(&input.input)?, *i)?)
        }
        Verb::Mfmc(i) => {
            let r = gr_reduced(&read_clutter(&i.input)?)?;
            json!({ "mfmc": r.reduced, "gr_reduced": r.reduced, "failing": r.failing, "witness": r.witness })
        }
        Verb::Tdi { input, alpha_max } => {
            check_positive("alpha-max", *alpha_max as u64)?;
            json!(tdi_sample(&read_clutter(&input.input)?, *alpha_max)?)
        }
        Verb::Ainv { input, gorenstein } => {
            let c = read_clutter(&input.input)?;
            let mut v = json!(a_invariant(&c)?);
            if *gorenstein {
                v["gorenstein"] = json!(gorenstein_alpha2_check(&c)?);
            }
            v
        }
        Verb::Smith(i) => {
            let b = b_matrix(&read_clutter(&i.input)?);
            let s = smith_invariant(&b);
            let factors: Vec<Value> = s.factors.iter().map(|f| integer(f.to_string())).collect();
            let delta = s.delta_r().map(|d| integer(d.to_string()));
            json!({ "invariant_factors": factors, "rank": s.rank(), "delta_r": delta })
        }
        Verb::Explore { n_max, q_max, i_max } => {
            check_positive("n-max", *n_max as u64)?;
            check_positive("q-max", *q_max as u64)?;
            check_positive("i-max", *i_max as u64)?;
            let survey = explore_conjecture(SurveyOptions { n_max: *n_max, q_max: *q_max, i_max: *i_max }, stop)?;
            let body = match cli.format {
                Format::Json => survey.to_json_lines(),
                Format::Markdown => survey_markdown(&survey.counts, survey.complete),
            };
            return Ok(Outcome { body, complete: survey.complete });
        }
        Verb::Report { inputs, survey, i_max, alpha_max } => {
            check_positive("i-max", *i_max as u64)?;
            check_positive("alpha-max", *alpha_max as u64)?;
            let opts = ReportOptions { i_max: *i_max, alpha_max: *alpha_max };
            let reports = inputs
                .iter()
                .map(|p| Ok(full_report(&read_clutter(p)?, opts)?))
                .collect::<CliResult<Vec<_>>>()?;
            let mut counts: BTreeMap<String, usize> = BTreeMap::new();
            for p in survey {
                for (k, v) in survey_counts(p)? {
                    *counts.entry(k).or_insert(0) += v;
                }
            }
            match cli.format {
                Format::Json => json!({ "reports": reports, "survey_counts": counts }),
                Format::Markdown => {
                    let mut body = reports_markdown(&reports);
                    if !survey.is_empty() {
                        body.push('\n');
                        body.push_str(&survey_markdown(&counts, true));
                    }
                    return Ok(Outcome::done(body));
                }
            }
        }
    };
    Ok(Outcome::done(line(&value)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    /// False when `explore` was interrupted.
    pub complete: bool,
}

impl Outcome {
    fn done(body: String) -> Self {
        Outcome { body, complete: true }
    }
}
