//! Acceptance criteria, one pass/fail line each.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::atomic::AtomicBool;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use reeskit_core::checks::{
    a_invariant, delta_r, explore_conjecture, gorenstein_alpha2_check, gr_reduced, mfmc, tdi_sample,
    SurveyOptions, SurveyVerdict,
};
use reeskit_core::clutter::{
    blocker, connected_graphs, enumerate_clutters, has_packing_property, incidence_matrix, is_balanced, Clutter,
};
use reeskit_core::exact_math::{primitive_integral, IntegerMatrix, Rational};
use reeskit_core::lattice::{is_normal_rees, normally_torsion_free_upto, rs_equals_normalization, symbolic_rees_generators};
use reeskit_core::monomial::{
    edge_ideal, integral_closure_power, power, symbolic_power_by_lattice, symbolic_power_by_primes,
};
use reeskit_core::polyhedra::{cone_extreme_rays, is_integral_q, q_vertices, rees_generators};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn clutter(n: usize, edges: &[&[usize]]) -> Clutter {
    let e: Vec<Vec<usize>> = edges.iter().map(|e| e.iter().map(|v| v - 1).collect()).collect();
    Clutter::new(n, &e).unwrap()
}

fn cycle(n: usize) -> Clutter {
    let e: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    Clutter::new(n, &e).unwrap()
}

fn q6() -> Clutter {
    clutter(6, &[&[1, 2, 5], &[1, 3, 4], &[2, 3, 6], &[4, 5, 6]])
}

fn matrix(c: &Clutter) -> IntegerMatrix {
    incidence_matrix(c).to_integer().unwrap()
}

/// Every clutter on `n ≤ n_max` vertices, all used, with at most `q_max` edges.
fn all_clutters(n_max: usize, q_max: usize) -> Vec<Clutter> {
    (1..=n_max).flat_map(|n| enumerate_clutters(n, q_max).unwrap()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.1?}, limit {limit:?}"))
}

fn e(err: reeskit_core::Error) -> String {
    err.to_string()
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let c = q6();
    ensure(is_integral_q(&matrix(&c)).map_err(e)?.integral, || "Q(A) not integral".into())?;
    let normal = is_normal_rees(&c).map_err(e)?;
    ensure(!normal.normal, || "R[It] reported normal".into())?;
    ensure(normal.witness == Some(vec![1, 1, 1, 1, 1, 1, 2]), || {
        format!("witness {:?}", normal.witness)
    })?;

    let mut expected: BTreeSet<Vec<i64>> = BTreeSet::new();
    for i in 0..6 {
        let mut v = vec![0; 7];
        v[i] = 1;
        expected.insert(v);
    }
    for mut v in c.exponent_vectors() {
        v.push(1);
        expected.insert(v);
    }
    expected.insert(vec![1, 1, 1, 1, 1, 1, 2]);
    let got: BTreeSet<Vec<i64>> = symbolic_rees_generators(&c).map_err(e)?.elements.into_iter().collect();
    ensure(got == expected, || format!("Simis cone basis {got:?}"))?;

    ensure(rs_equals_normalization(&c).map_err(e)?, || "symbolic Rees algebra differs from normalization".into())?;
    ensure(is_normal_rees(&blocker(&c)).map_err(e)?.normal, || "cover ideal Rees algebra not normal".into())?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("Q6 golden values reproduced in {:.2?}", start.elapsed()))
}

/// Reference two-colouring by trying all `2ⁿ` colourings.
fn bipartite_brute(c: &Clutter) -> bool {
    (0u64..1 << c.n()).any(|side| c.edges().iter().all(|&e| (e & side).count_ones() == 1))
}

fn ac2() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 2..=6 {
        for g in connected_graphs(n).map_err(e)? {
            count += 1;
            let gr = gr_reduced(&g).map_err(e)?.reduced;
            let bip = bipartite_brute(&g);
            let integral = is_integral_q(&matrix(&g)).map_err(e)?.integral;
            let packing = has_packing_property(&g).map_err(e)?.holds;
            ensure(gr == bip && bip == integral && integral == packing, || {
                format!("{g:?}: reduced {gr}, bipartite {bip}, integral {integral}, packing {packing}")
            })?;
        }
    }
    ensure(count == 142, || format!("{count} connected graphs, expected 142"))?;
    within(start, Duration::from_secs(300))?;
    Ok(format!("{count} connected graphs on 2..6 vertices agree in {:.1?}", start.elapsed()))
}

/// `α ↦ d·(α, −1)` with `d` the least common denominator.
fn phi(alpha: &[Rational]) -> Vec<i64> {
    let mut v = alpha.to_vec();
    v.push(-Rational::one());
    primitive_integral(&v).iter().map(|b| i64::try_from(b).unwrap()).collect()
}

fn ac3() -> Outcome {
    let clutters = all_clutters(5, 6);
    for c in &clutters {
        let vs = q_vertices(&matrix(c)).map_err(e)?;
        let mut from_vertices: Vec<Vec<i64>> = vs.vertices.iter().map(|a| phi(a)).collect();
        let mut from_dd: Vec<Vec<i64>> = cone_extreme_rays(&rees_generators(c))
            .map_err(e)?
            .into_iter()
            .filter(|h| h.iter().filter(|&&x| x != 0).count() != 1 || h.iter().any(|&x| x < 0))
            .collect();
        from_vertices.sort();
        from_dd.sort();
        ensure(from_vertices.len() == from_dd.len() && from_vertices == from_dd, || {
            format!("{c:?}: {} vertices map to {from_vertices:?}, facets {from_dd:?}", vs.len())
        })?;
    }
    Ok(format!("{} clutters with n ≤ 5, q ≤ 6: vertices and non-unit facets in bijection", clutters.len()))
}

fn ac4() -> Outcome {
    let clutters = all_clutters(5, usize::MAX);
    for c in &clutters {
        let i = edge_ideal(c);
        for b in 1..=3 {
            let primes = symbolic_power_by_primes(c, b).map_err(e)?;
            let lattice = symbolic_power_by_lattice(c, b);
            ensure(primes == lattice, || format!("{c:?}, b = {b}: {primes:?} vs {lattice:?}"))?;
            ensure(primes.contains_ideal(&power(&i, b)), || format!("{c:?}: I^{b} not inside I^({b})"))?;
        }
    }
    let k3 = clutter(3, &[&[1, 2], &[1, 3], &[2, 3]]);
    let s = symbolic_power_by_primes(&k3, 2).map_err(e)?;
    let p = power(&edge_ideal(&k3), 2);
    ensure(s != p && s.gens_outside(&p) == vec![vec![1, 1, 1]], || {
        format!("K3: I^(2) generators outside I^2: {:?}", s.gens_outside(&p))
    })?;
    Ok(format!("{} clutters with n ≤ 5, b ≤ 3: both symbolic power routes agree; K3 gap x1x2x3", clutters.len()))
}

fn ac5() -> Outcome {
    let clutters = all_clutters(5, usize::MAX);
    for c in &clutters {
        let integral = is_integral_q(&matrix(c)).map_err(e)?.integral;
        let normal = is_normal_rees(c).map_err(e)?.normal;
        let ntf = normally_torsion_free_upto(c, 3).map_err(e)?;
        ensure((integral && normal) == ntf.holds, || {
            format!("{c:?}: integral {integral}, normal {normal}, torsion-free failure {:?}", ntf.failure)
        })?;
        let algebraic = mfmc(c).map_err(e)?;
        let sampled = tdi_sample(c, 2).map_err(e)?;
        ensure(!algebraic || sampled.holds, || format!("{c:?}: mfmc but TDI sample fails {:?}", sampled.failure))?;
    }
    Ok(format!("{} clutters with n ≤ 5: equivalences and TDI samples consistent", clutters.len()))
}

fn ac6() -> Outcome {
    let c4 = cycle(4);
    let r = a_invariant(&c4).map_err(e)?;
    ensure(r.a == -3 && r.bound == -3 && r.equality, || format!("4-cycle {r:?}"))?;
    let r6 = a_invariant(&cycle(6)).map_err(e)?;
    ensure(r6.a == -4 && r6.bound == -4 && r6.equality, || format!("6-cycle {r6:?}"))?;
    let g = gorenstein_alpha2_check(&c4).map_err(e)?;
    ensure(g.holds && g.a == -3 && g.expected_a == -3, || format!("4-cycle Gorenstein {g:?}"))?;
    Ok("4-cycle a = -3, 6-cycle a = -4, 4-cycle canonical module generated by x1x2x3x4t".into())
}

fn ac7() -> Outcome {
    let start = Instant::now();
    let opts = SurveyOptions { n_max: 5, q_max: 8, i_max: 3 };
    let stop = AtomicBool::new(false);
    let first = explore_conjecture(opts, &stop).map_err(e)?;
    ensure(first.complete, || "survey incomplete".into())?;
    let bad: Vec<_> = first
        .records
        .iter()
        .filter(|r| !matches!(r.verdict, SurveyVerdict::Holds | SurveyVerdict::NotPacking))
        .map(|r| (&r.canonical_form, r.verdict))
        .collect();
    ensure(bad.is_empty(), || format!("violations {bad:?}"))?;
    // n ≤ 4 has antichains of at most 6 sets, so q ≤ 8 covers all of them
    ensure(first.records.iter().filter(|r| r.n <= 4).all(|r| r.q <= 6), || "unexpected q".into())?;
    let second = explore_conjecture(opts, &stop).map_err(e)?;
    ensure(first.to_json_lines() == second.to_json_lines(), || "rerun differs".into())?;
    within(start, Duration::from_secs(1800))?;
    Ok(format!(
        "{} clutters surveyed, verdicts {:?}, rerun byte-identical, {:.1?}",
        first.records.len(),
        first.counts,
        start.elapsed()
    ))
}

fn ac8() -> Outcome {
    let clutters = all_clutters(5, usize::MAX);
    let mut balanced_count = 0;
    for c in &clutters {
        ensure(&blocker(&blocker(c)) == c, || format!("{c:?}: blocker is not an involution"))?;
        let a = matrix(c);
        let packing = has_packing_property(c).map_err(e)?.holds;
        let integral = is_integral_q(&a).map_err(e)?.integral;
        if packing {
            ensure(integral, || format!("{c:?}: packing but Q(A) not integral"))?;
            let sq = power(&edge_ideal(c), 2);
            let closure = integral_closure_power(c, 2).map_err(e)?;
            ensure(sq == closure, || format!("{c:?}: packing but I^2 ≠ closure of I^2"))?;
        }
        let reduced = gr_reduced(c).map_err(e)?.reduced;
        if is_balanced(&a).map_err(e)?.balanced {
            balanced_count += 1;
            ensure(reduced, || format!("{c:?}: balanced but not reduced"))?;
        }
        if reduced && c.uniform_degree().is_some() {
            let d = delta_r(c);
            ensure(d == BigInt::from(1), || format!("{c:?}: Δ_r(B) = {d}"))?;
        }
    }
    Ok(format!("{} clutters with n ≤ 5 ({balanced_count} balanced): all properties hold", clutters.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1", "Q6 golden run", ac1),
        ("AC2", "bipartite sweep", ac2),
        ("AC3", "vertex/facet bijection", ac3),
        ("AC4", "symbolic power oracle", ac4),
        ("AC5", "consistency battery", ac5),
        ("AC6", "a-invariant", ac6),
        ("AC7", "conjecture explorer", ac7),
        ("AC8", "property suites", ac8),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        match f() {
            Ok(msg) => println!("{id} PASS {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("{id} FAIL {name}: {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
