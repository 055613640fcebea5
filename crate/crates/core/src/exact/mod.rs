//! Exact arithmetic: Gaussian rationals, Laurent polynomials in a fixed set
//! of variables, and rational functions over them.

mod int;
mod modp;
mod mono;
mod parse;
mod poly;
mod rational;
mod scalar;

pub use int::Int;
pub use modp::{is_prime, PrimeField, DEFAULT_PRIME};
pub use mono::{Mono, Var, NVARS};
pub use parse::parse_expr;
pub use poly::Poly;
pub use rational::RationalExpr;
pub use scalar::Scalar;

use crate::error::{Error, Result};

/// Shorthand for the rational expression type.
pub type R = RationalExpr;

/// `(z; q)_k = Π_{i<k} (1 − z q^i)` with `q = s^4`.
pub fn q_pochhammer(z: &R, k: u32) -> R {
    q_pochhammer_range(z, 0, k as i32)
}

/// `Π_{lo ≤ i < hi} (1 − z q^i)`; empty when `hi ≤ lo`.
pub fn q_pochhammer_range(z: &R, lo: i32, hi: i32) -> R {
    (lo..hi).map(|i| R::one() - z * R::q_pow(i)).product()
}

/// `f + 1/f`.
pub fn ch(f: &R) -> Result<R> {
    Ok(f + f.inv().map_err(|_| Error::DivisionByZero("ch(0)".into()))?)
}

/// `f − 1/f`.
pub fn sh(f: &R) -> Result<R> {
    Ok(f - f.inv().map_err(|_| Error::DivisionByZero("sh(0)".into()))?)
}

/// `ch(v)` for a single variable.
pub fn ch_var(v: Var) -> R {
    R::var_pow(v, 1) + R::var_pow(v, -1)
}

/// `1 − c`, the ubiquitous binomial.
pub fn one_minus(c: &R) -> R {
    R::one() - c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_small_cases() {
        let z = R::var(Var::X);
        assert!(q_pochhammer(&z, 0).is_one());
        let two = q_pochhammer(&z, 2);
        assert_eq!(two, one_minus(&z) * one_minus(&(&z * R::q_pow(1))));
        let qq = q_pochhammer(&R::q_pow(1), 2);
        assert_eq!(qq, one_minus(&R::q_pow(1)) * one_minus(&R::q_pow(2)));
    }

    #[test]
    fn ch_sh_identities() {
        let x = R::var(Var::X);
        assert_eq!(ch(&x).unwrap().to_string(), "x + x^-1");
        let f = (R::var(Var::X0) + R::int(2)) / R::var(Var::S);
        let c = ch(&f).unwrap();
        let s = sh(&f).unwrap();
        assert_eq!(&c * &c - &s * &s, R::int(4));
        assert!(ch(&R::zero()).is_err());
        assert!(sh(&R::zero()).is_err());
    }

    #[test]
    fn ch_with_formal_power() {
        // ch(q^{-n-1/2} x0 x1) with u = q^n
        let arg = R::monomial(Scalar::one(), &[(Var::U, -1), (Var::S, -2), (Var::X0, 1), (Var::X1, 1)]);
        assert_eq!(ch(&arg).unwrap().to_string(), "s^2*x0^-1*x1^-1*u + s^-2*x0*x1*u^-1");
    }

    #[test]
    fn substitution_of_triple_value() {
        let e = ch_var(Var::X0);
        let v = e.substitute(&[(Var::X0, R::s_pow(2).neg())]).unwrap();
        assert_eq!(v, (R::s_pow(2) + R::s_pow(-2)).neg());
    }

    #[test]
    fn quotient_normalizes() {
        let q = R::q_pow(1);
        let lhs = one_minus(&(&q * &q)) / one_minus(&q);
        assert_eq!(lhs, R::one() + &q);
        assert!(lhs.den_factors().is_empty());
        assert_ne!(R::var(Var::X), R::var_pow(Var::X, -1));
    }

    #[test]
    fn laurent_binomial_has_trivial_denominator() {
        let e = one_minus(&(R::q_pow(1) * R::var_pow(Var::X0, -2)));
        assert!(e.den_factors().is_empty());
        let shifted = e.num().mul_term(&Mono::var(Var::X0, 2), &Scalar::one());
        assert_eq!(shifted.to_string(), "-s^4 + x0^2");
    }
}
