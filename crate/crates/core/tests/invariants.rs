//! Cross-module invariants over every small clutter.

use reeskit_core::checks::{deletion_normality_check, konig_via_rees, mfmc};
use reeskit_core::clutter::{
    blocker, enumerate_clutters, has_packing_property, incidence_matrix, is_totally_unimodular, is_unmixed, minor,
    Clutter, Minor,
};
use reeskit_core::exact_math::IntegerMatrix;
use reeskit_core::lattice::{idp_check, is_normal_rees};
use reeskit_core::monomial::{edge_ideal, equal_by_inclusion, integral_closure_power, power};
use reeskit_core::polyhedra::is_integral_q;
use reeskit_core::Error;

fn all(n_max: usize) -> Vec<Clutter> {
    (1..=n_max).flat_map(|n| enumerate_clutters(n, usize::MAX).unwrap()).collect()
}

fn matrix(c: &Clutter) -> IntegerMatrix {
    incidence_matrix(c).to_integer().unwrap()
}

#[test]
fn packing_is_closed_under_minors() {
    for c in all(4) {
        if !has_packing_property(&c).unwrap().holds {
            continue;
        }
        for v in 0..c.n() {
            for (d, k) in [(1u64 << v, 0), (0, 1u64 << v)] {
                if let Minor::Proper { clutter, .. } = minor(&c, d, k).unwrap() {
                    assert!(has_packing_property(&clutter).unwrap().holds, "{c:?} minor {clutter:?}");
                }
            }
        }
    }
}

#[test]
fn integrality_transfers_to_the_blocker() {
    for c in all(5) {
        if is_integral_q(&matrix(&c)).unwrap().integral {
            assert!(is_integral_q(&matrix(&blocker(&c))).unwrap().integral, "{c:?}");
        }
    }
}

#[test]
fn mfmc_implies_packing_and_konig() {
    for c in all(5) {
        let konig = konig_via_rees(&c).unwrap();
        if mfmc(&c).unwrap() {
            assert!(has_packing_property(&c).unwrap().holds, "{c:?}");
            assert!(konig, "{c:?}");
        }
    }
}

#[test]
fn totally_unimodular_matrices_give_normal_rees_algebras() {
    for c in all(5) {
        if is_totally_unimodular(&matrix(&c)).unwrap().unimodular {
            assert!(is_integral_q(&matrix(&c)).unwrap().integral, "{c:?}");
            assert!(is_normal_rees(&c).unwrap().normal, "{c:?}");
        }
    }
}

#[test]
fn closure_contains_power() {
    for c in all(4) {
        let i = edge_ideal(&c);
        for k in 1..=3 {
            let p = power(&i, k);
            let cl = integral_closure_power(&c, k).unwrap();
            assert!(cl.contains_ideal(&p), "{c:?}, k = {k}");
            assert_eq!(equal_by_inclusion(&p, &cl), p == cl);
        }
    }
}

#[test]
fn deletion_check_agrees_on_unmixed_integral_clutters() {
    let mut checked = 0;
    for c in all(5) {
        if !is_unmixed(&c) || !is_integral_q(&matrix(&c)).unwrap().integral {
            assert!(matches!(deletion_normality_check(&c), Err(Error::Precondition(_))));
            continue;
        }
        let r = deletion_normality_check(&c).unwrap();
        assert!(r.agree, "{c:?}: {r:?}");
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn normal_uniform_clutters_have_idp_up_to_three() {
    for c in all(5) {
        if c.uniform_degree().is_some() && is_normal_rees(&c).unwrap().normal {
            assert!(idp_check(&c, 3).unwrap().holds, "{c:?}");
        }
    }
}
