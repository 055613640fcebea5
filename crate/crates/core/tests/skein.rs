use g2skein_core::check::Checker;
use g2skein_core::exact::R;
use g2skein_core::skein::*;

#[test]
fn admissible_counts() {
    assert_eq!(enumerate_admissible(6).len(), 20);
    assert_eq!(enumerate_admissible(4).len(), 10);
    assert_eq!(enumerate_admissible(10).len(), 56);
    assert!(enumerate_admissible(10).iter().all(Triple::is_admissible));
}

#[test]
fn curve_actions_on_small_links() {
    let at = |a, i, j, k| curve_action_skein(a, &SkeinVector::basis(Triple::new(i, j, k)).unwrap()).unwrap();
    assert_eq!(at(2, 0, 0, 0).to_string(), "n(1,1,0) : 1");
    let k1 = at(1, 0, 0, 0);
    assert_eq!(k1.get(&Triple::new(0, 0, 0)).unwrap(), &(R::q_half(1) + R::q_half(-1)).neg());
    let k4 = at(4, 0, 1, 1);
    assert_eq!(k4.to_string(), "n(0,0,0) : 1\nn(0,2,2) : 1");
}

#[test]
fn boundary_coefficients_are_refused() {
    assert!(d_coeff(1, -1, 2, 0, 2).is_err());
    assert!(d_coeff(-1, -1, 0, 2, 2).is_err());
    assert!(d_coeff(-1, -1, 1, 1, 2).is_ok());
}

#[test]
fn non_admissible_input() {
    let e = SkeinVector::basis(Triple::new(1, 1, 1)).unwrap_err();
    assert!(e.to_string().contains("even"), "{e}");
    assert_eq!(Triple::new(-1, 1, 0).violation(), Some("entries must be nonnegative"));
}

#[test]
fn correspondence_up_to_six() {
    let c = Checker::Exact;
    for a in 1..=6 {
        for t in enumerate_admissible(6) {
            let r = correspondence_check(a, t, Convention::Target, &c).unwrap();
            assert!(r.passed(), "{:?}", r.to_record());
            if !r.indeterminate().is_empty() {
                assert_eq!(t, Triple::new(0, 0, 0));
                assert!(a == 2 || a == 4);
            }
        }
    }
}

#[test]
fn source_convention_is_rejected() {
    let r = correspondence_check(2, Triple::new(1, 1, 2), Convention::Source, &Checker::Exact).unwrap();
    assert!(!r.passed());
    assert_eq!(r.to_record().case, "k2 (1,1,2) source-convention");
}
