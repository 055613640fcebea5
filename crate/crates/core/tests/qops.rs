use g2skein_core::check::Checker;
use g2skein_core::qops::*;

#[test]
fn hecke_relations_hold() {
    for r in verify_hecke_relations(&Checker::Exact) {
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn dhat_factorizations_hold() {
    for r in verify_dhat_factorizations(&Checker::Exact) {
        assert!(r.passed(), "{r:?}");
    }
    assert!(!swapped_dhat_factorization(&Checker::Exact).passed());
}

#[test]
fn multiplication_compatibility() {
    let tests = default_test_functions();
    for a in 1..=6 {
        for r in verify_mult_compatibility(a, &tests, &Checker::Exact).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }
}

#[test]
fn symmetric_preservation() {
    for a in 1..=6 {
        for r in verify_symmetric_preservation(a, 4, &Checker::Exact).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }
}
