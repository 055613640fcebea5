use proptest::prelude::*;

use g2skein_core::askey_wilson::{nu_ratio, nu_ratio_direct, NIndex, NuRatioSpec};
use g2skein_core::exact::{q_pochhammer, PrimeField, Var, DEFAULT_PRIME, NVARS, R};
use g2skein_core::qops::ShiftWord;

/// Small Laurent polynomials in `s, x, x0`.
fn poly() -> impl Strategy<Value = R> {
    prop::collection::vec((-3i64..=3, -2i32..=2, -2i32..=2, -2i32..=2), 1..5).prop_map(|terms| {
        R::sum_all(
            terms
                .into_iter()
                .map(|(c, es, ex, e0)| R::int(c) * R::s_pow(es) * R::var_pow(Var::X, ex) * R::var_pow(Var::X0, e0))
                .collect(),
        )
    })
}

fn nonzero() -> impl Strategy<Value = R> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rational() -> impl Strategy<Value = R> {
    (poly(), nonzero()).prop_map(|(n, d)| n.div(&d).unwrap())
}

fn point() -> impl Strategy<Value = [u64; NVARS]> {
    prop::array::uniform9(1u64..DEFAULT_PRIME)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(f in rational(), g in rational(), h in rational()) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn inverse(f in nonzero(), g in nonzero()) {
        let r = f.div(&g).unwrap();
        prop_assert!((&r * &r.inv().unwrap()).is_one());
    }

    #[test]
    fn eval_is_a_homomorphism(f in rational(), g in rational(), p in point()) {
        let k = PrimeField::new(DEFAULT_PRIME).unwrap();
        if let (Ok(a), Ok(b), Ok(ab), Ok(sum)) =
            (f.eval_mod(&k, &p), g.eval_mod(&k, &p), (&f * &g).eval_mod(&k, &p), (&f + &g).eval_mod(&k, &p))
        {
            prop_assert_eq!(ab, k.mul(a, b));
            prop_assert_eq!(sum, k.add(a, b));
        }
    }

    /// `(n/d)·(d/e)` cancels `d` before evaluation, so points where `d`
    /// vanishes cause no trouble.
    #[test]
    fn eval_after_shared_factor(n in poly(), d in nonzero(), e in nonzero(), p in point()) {
        let k = PrimeField::new(DEFAULT_PRIME).unwrap();
        let prod = n.div(&d).unwrap() * d.div(&e).unwrap();
        let direct = n.div(&e).unwrap();
        prop_assert_eq!(&prod, &direct);
        if let Ok(v) = direct.eval_mod(&k, &p) {
            prop_assert_eq!(prod.eval_mod(&k, &p).unwrap(), v);
        }
    }

    #[test]
    fn pochhammer_recursion(z in nonzero(), k in 0u32..6) {
        let lhs = q_pochhammer(&z, k + 1);
        let rhs = q_pochhammer(&z, k) * (R::one() - &z * R::q_pow(k as i32));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_commutes_with_products(f in rational(), g in rational(), e in -2i32..=2) {
        let at = [(Var::X, R::var(Var::X) * R::s_pow(e))];
        if let (Ok(a), Ok(b), Ok(ab)) = (f.substitute(&at), g.substitute(&at), (&f * &g).substitute(&at)) {
            prop_assert_eq!(ab, a * b);
        }
    }

    /// `ν_n(shifted)/ν_{n+δ} = [ν_n(shifted)/ν_n]·[ν_n/ν_{n+δ}]`, and the
    /// formal ratio agrees with the one built at a fixed `n`.
    #[test]
    fn nu_ratio_factors(e0 in -1i32..=1, e1 in -1i32..=1, delta in -1i32..=1, n in 1u32..4) {
        let at = |e0, e1, d| nu_ratio(&NuRatioSpec::new(e0, e1, NIndex::At(n), d).unwrap()).unwrap();
        prop_assert_eq!(at(e0, e1, delta), at(e0, e1, 0) * at(0, 0, delta));
        let spec = NuRatioSpec::new(e0, e1, NIndex::At(n), delta).unwrap();
        prop_assert_eq!(nu_ratio(&spec).unwrap(), nu_ratio_direct(&spec).unwrap());
    }

    /// Shifting `x0` up then down returns `ν_n` to itself.
    #[test]
    fn nu_loop(n in 0u32..5) {
        let up = nu_ratio(&NuRatioSpec::new(1, 0, NIndex::At(n), 0).unwrap()).unwrap();
        let down = nu_ratio(&NuRatioSpec::new(-1, 0, NIndex::At(n), 0).unwrap()).unwrap();
        prop_assert!((up * ShiftWord::shift0(1).act(&down)).is_one());
    }
}
