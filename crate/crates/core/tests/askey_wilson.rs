use g2skein_core::askey_wilson::*;
use g2skein_core::check::Checker;
use g2skein_core::exact::{ch_var, parse_expr, Var, R};

#[test]
fn first_polynomials() {
    assert!(aw_star(0).poly.is_one());
    let beta0 = recurrence_coeff(RecurrenceKind::Beta, NIndex::At(0));
    assert_eq!(aw_star(1).poly, ch_var(Var::X) - beta0);
}

#[test]
fn numeric_parameters_match_substitution() {
    let vals = ["1/7", "2", "-3", "q^(1/2)"].map(|v| parse_expr(v).unwrap());
    let p = AWParams::new(vals[0].clone(), vals[1].clone(), vals[2].clone(), vals[3].clone());
    let at: Vec<_> = [Var::A, Var::B, Var::C, Var::D].into_iter().zip(vals).collect();
    for n in 0..=2 {
        let symbolic = aw_general(n, &AWParams::symbolic()).unwrap().poly;
        assert_eq!(aw_general(n, &p).unwrap().poly, symbolic.substitute(&at).unwrap());
    }
    let z = AWParams::new(R::zero(), R::one(), R::one(), R::one());
    assert!(aw_general(1, &z).is_err());
}

#[test]
fn star_family_satisfies_its_identities() {
    let c = Checker::Exact;
    for n in 0..=4 {
        assert!(verify_star_is_general(n, &c).passed());
        assert!(verify_eigen(n, &c).passed());
        assert!(verify_three_term(n, &c).passed());
        for r in verify_connection(n, &c) {
            assert!(r.passed(), "{r:?}");
        }
    }
    assert!(!perturbed_eigen(2, &c).passed());
}

#[test]
fn beta_lambda_gamma() {
    let c = Checker::Exact;
    assert!(verify_beta_lambda_gamma(NIndex::Formal, false, &c).passed());
    assert!(verify_beta_lambda_gamma(NIndex::Formal, true, &c).passed());
    for n in 1..=5 {
        assert!(verify_beta_lambda_gamma(NIndex::At(n), false, &c).passed());
    }
}

#[test]
fn operator_actions() {
    let c = Checker::Exact;
    for n in 0..=3 {
        for r in verify_kalnins_actions(n, &AWParams::symbolic(), &c) {
            assert!(r.passed(), "{r:?}");
        }
        for r in verify_dhat_on_aw(n, &c) {
            assert!(r.passed(), "{r:?}");
        }
    }
}

#[test]
fn term_lists() {
    let k6 = pbar_action(6, ActionMode::Corollary, NIndex::Formal).unwrap();
    assert_eq!(k6.to_string().lines().next().unwrap(), "(n+1, -1, -1) : 1");
    let k1 = pbar_action(1, ActionMode::Corollary, NIndex::Formal).unwrap();
    assert_eq!(k1.entries.len(), 1);
    assert_eq!(k1.get(0, 0, 0).unwrap(), &ch_var(Var::X0));
    let k2 = pbar_action(2, ActionMode::Corollary, NIndex::At(0)).unwrap();
    assert!(k2.entries.iter().all(|e| e.shift >= 0));
    for a in 1..=6 {
        assert!(verify_modes_agree(a, &c()).passed());
        for n in 0..=2 {
            assert!(verify_prop_action(a, n, &c()).passed());
        }
    }
}

fn c() -> Checker {
    Checker::Exact
}

#[test]
fn random_mode_agrees_with_exact() {
    let r = Checker::random(g2skein_core::exact::DEFAULT_PRIME, 11).unwrap();
    for n in 0..=3 {
        assert!(verify_eigen(n, &r).passed());
        assert!(verify_three_term(n, &r).passed());
    }
    assert!(!perturbed_eigen(2, &r).passed());
}
