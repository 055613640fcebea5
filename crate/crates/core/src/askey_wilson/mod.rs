//! Askey–Wilson polynomials, their recurrence and connection structure, the
//! ν-ratio calculus, and the curve actions on the normalized basis `P̄_n`.
//!
//! Polynomials are symmetric Laurent polynomials in `x`; their coefficients
//! are rational in the remaining variables.  Wherever `n` enters a formula
//! through `q^n` it may be kept formal as the variable `u`.

mod action;
mod nu;
mod verify;

pub use action::*;
pub use nu::*;
pub use verify::*;

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{q_pochhammer, q_pochhammer_range, R, Var};
use crate::qops::ShiftWord;

/// A concrete `n`, or `n` kept formal through `u = q^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NIndex {
    Formal,
    At(u32),
}

impl NIndex {
    /// `q^n`; the variable `u` in formal mode.
    pub fn qn(self) -> R {
        match self {
            NIndex::Formal => R::var(Var::U),
            NIndex::At(n) => R::q_pow(n as i32),
        }
    }

    /// Replaces `u` by `q^n` when `n` is concrete.
    pub fn specialize(self, f: &R) -> Result<R> {
        match self {
            NIndex::Formal => Ok(f.clone()),
            NIndex::At(n) => f.substitute(&[(Var::U, R::q_pow(n as i32))]),
        }
    }

    pub fn value(self) -> Option<u32> {
        match self {
            NIndex::Formal => None,
            NIndex::At(n) => Some(n),
        }
    }
}

impl fmt::Display for NIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NIndex::Formal => f.write_str("n"),
            NIndex::At(n) => write!(f, "{n}"),
        }
    }
}

/// The four parameters `(a, b, c, d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AWParams {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
}

impl AWParams {
    pub fn new(a: R, b: R, c: R, d: R) -> AWParams {
        AWParams { a, b, c, d }
    }

    /// `(−q^{1/2}, −q^{1/2}, −q^{1/2}/x0², −q^{1/2}/x1²)`.
    pub fn star() -> AWParams {
        let h = R::s_pow(2).neg();
        AWParams::new(
            h.clone(),
            h.clone(),
            &h * R::var_pow(Var::X0, -2),
            &h * R::var_pow(Var::X1, -2),
        )
    }

    /// The parameters `a, b, c, d` as free variables.
    pub fn symbolic() -> AWParams {
        AWParams::new(R::var(Var::A), R::var(Var::B), R::var(Var::C), R::var(Var::D))
    }

    pub fn to_array(&self) -> [R; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    pub fn from_array(p: [R; 4]) -> AWParams {
        let [a, b, c, d] = p;
        AWParams { a, b, c, d }
    }

    /// Reorders the parameters: slot `i` receives parameter `perm[i]`.
    pub fn permuted(&self, perm: [usize; 4]) -> AWParams {
        let p = self.to_array();
        AWParams::from_array(perm.map(|i| p[i].clone()))
    }

    /// Multiplies each parameter by `q^{k/2}` with its own `k`.
    pub fn half_shifted(&self, k: [i32; 4]) -> AWParams {
        let p = self.to_array();
        AWParams::from_array([0, 1, 2, 3].map(|i| &p[i] * R::s_pow(2 * k[i])))
    }

    pub fn product(&self) -> R {
        &self.a * &self.b * &self.c * &self.d
    }
}

/// `P_n` as a symmetric Laurent polynomial in `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct AWPolynomial {
    pub n: u32,
    pub poly: R,
}

impl AWPolynomial {
    /// `P(x; q^{e0/2} x0, q^{e1/2} x1)`.
    pub fn shifted(&self, e0: i32, e1: i32) -> R {
        ShiftWord::new(false, 0, e0, e1).act(&self.poly)
    }

    /// Coefficients by power of `x`.
    pub fn coefficients(&self) -> Result<std::collections::BTreeMap<i32, R>> {
        self.poly.coefficients_in(Var::X)
    }
}

impl fmt::Display for AWPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

fn x() -> R {
    R::var(Var::X)
}

fn xi() -> R {
    R::var_pow(Var::X, -1)
}

/// `(z; q)_{n−k}` starting at `z q^k`, i.e. `(z)_n / (z)_k`.
fn tail(z: &R, k: u32, n: u32) -> R {
    q_pochhammer_range(z, k as i32, n as i32)
}

/// The terminating ₄φ₃ with its normalizing prefactor.  The `1/(q)_k` and
/// parameter denominators are cleared against `(·)_n` so that the sum is
/// polynomial; one division remains.
pub fn aw_general(n: u32, p: &AWParams) -> Result<AWPolynomial> {
    if n == 0 {
        return Ok(AWPolynomial { n, poly: R::one() });
    }
    if p.a.is_zero() {
        return Err(Error::DenominatorVanishes { factor: "a".into() });
    }
    let abcd = p.product();
    let top = &abcd * R::q_pow(n as i32 - 1);
    for i in 0..n as i32 {
        let f = R::one() - &top * R::q_pow(i);
        if f.is_zero() {
            return Err(Error::DenominatorVanishes { factor: format!("1 - ({top})*q^{i}") });
        }
    }
    let (ab, ac, ad) = (&p.a * &p.b, &p.a * &p.c, &p.a * &p.d);
    let qn_inv = R::q_pow(-(n as i32));
    let terms: Vec<R> = (0..=n)
        .map(|k| {
            R::q_pow(k as i32)
                * q_pochhammer(&qn_inv, k)
                * q_pochhammer(&top, k)
                * q_pochhammer(&(&p.a * x()), k)
                * q_pochhammer(&(&p.a * xi()), k)
                * tail(&ab, k, n)
                * tail(&ac, k, n)
                * tail(&ad, k, n)
                * tail(&R::q_pow(1), k, n)
        })
        .collect();
    let den = p.a.pow(n as i32)? * q_pochhammer(&R::q_pow(1), n) * q_pochhammer(&top, n);
    Ok(AWPolynomial { n, poly: R::sum_all(terms).div(&den)? })
}

/// `g_k(x) = (−q^{1/2} x, −q^{1/2}/x)_k`.
pub fn g_basis(k: u32) -> R {
    let h = R::s_pow(2).neg();
    q_pochhammer(&(&h * x()), k) * q_pochhammer(&(&h * xi()), k)
}

fn big_x() -> R {
    R::var_pow(Var::X0, 2) * R::var_pow(Var::X1, 2)
}

/// Coefficients `c_k` with `P_n(x; x0, x1) = Σ_k c_k g_k(x)`.
pub fn aw_star_g_coefficients(n: u32) -> Vec<R> {
    let q = R::q_pow(1);
    let (y0, y1) = (&q * R::var_pow(Var::X0, -2), &q * R::var_pow(Var::X1, -2));
    let w = R::q_pow(n as i32 + 1) / big_x();
    let sign = if n.is_multiple_of(2) { R::one() } else { R::int(-1) };
    let pre = sign * R::s_pow(-2 * n as i32) * q_pochhammer(&q, n) * q_pochhammer(&y0, n) * q_pochhammer(&y1, n)
        / q_pochhammer(&w, n);
    (0..=n)
        .map(|k| {
            let qk = q_pochhammer(&q, k);
            &pre * R::q_pow(k as i32) * q_pochhammer(&R::q_pow(-(n as i32)), k) * q_pochhammer(&w, k)
                / (&qk * &qk * q_pochhammer(&y0, k) * q_pochhammer(&y1, k))
        })
        .collect()
}

/// `P_n(x; x0, x1)` from its expansion in the `g_k` basis.
pub fn aw_star(n: u32) -> AWPolynomial {
    if n == 0 {
        return AWPolynomial { n, poly: R::one() };
    }
    let q = R::q_pow(1);
    let (y0, y1) = (&q * R::var_pow(Var::X0, -2), &q * R::var_pow(Var::X1, -2));
    let w = R::q_pow(n as i32 + 1) / big_x();
    let qn_inv = R::q_pow(-(n as i32));
    let terms: Vec<R> = (0..=n)
        .map(|k| {
            let t = tail(&q, k, n);
            R::q_pow(k as i32)
                * q_pochhammer(&qn_inv, k)
                * q_pochhammer(&w, k)
                * &t
                * &t
                * tail(&y0, k, n)
                * tail(&y1, k, n)
                * g_basis(k)
        })
        .collect();
    let sign = if n.is_multiple_of(2) { R::one() } else { R::int(-1) };
    let den = q_pochhammer(&w, n) * q_pochhammer(&q, n);
    let poly = (sign * R::s_pow(-2 * n as i32) * R::sum_all(terms)) / den;
    AWPolynomial { n, poly }
}

/// `P_0, …, P_max` in one go.
pub fn aw_star_family(max: u32) -> Vec<AWPolynomial> {
    (0..=max).map(aw_star).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RecurrenceKind {
    Beta,
    Gamma,
    Lambda,
}

/// `β_n(y0, y1)` with `qn = q^n`.
pub fn beta_at(qn: &R, y0: &R, y1: &R) -> R {
    let q = R::q_pow(1);
    let h = R::s_pow(2);
    let (y02, y12) = (y0 * y0, y1 * y1);
    let yy = &y02 * &y12;
    let om = |c: R| R::one() - c;
    let up = om(qn * &q) * om(qn * &q / &yy) * om(qn * &q / &y02) * om(qn * &q / &y12)
        / (om(qn * qn * &q / &yy) * om(qn * qn * &q * &q / &yy));
    let down = om(qn.clone()) * om(qn / &yy) * om(qn / &y02) * om(qn / &y12)
        / (om(qn * qn / &yy) * om(qn * qn * &q / &yy));
    (up - R::one()) / &h + &h * (down - R::one())
}

/// `γ_n(y0, y1)` with `qn = q^n`.
pub fn gamma_at(qn: &R, y0: &R, y1: &R) -> R {
    let q = R::q_pow(1);
    let (y02, y12) = (y0 * y0, y1 * y1);
    let yy = &y02 * &y12;
    let sq = |c: R| {
        let t = R::one() - c;
        &t * &t
    };
    let om = |c: R| R::one() - c;
    sq(qn.clone()) * sq(qn / &yy) * sq(qn / &y02) * sq(qn / &y12)
        / (om(qn * qn / (&q * &yy)) * sq(qn * qn / &yy) * om(qn * qn * &q / &yy))
}

/// `λ_n(y0, y1)` with `qn = q^n`.
pub fn lambda_at(qn: &R, y0: &R, y1: &R) -> R {
    let q = R::q_pow(1);
    let (y02, y12) = (y0 * y0, y1 * y1);
    let yy = &y02 * &y12;
    let om = |c: R| R::one() - c;
    let a = om(qn.clone());
    let b = om(qn / &y12);
    &a * &a * &b * &b / (R::s_pow(2) * &y02 * om(qn * qn / (&q * &yy)) * om(qn * qn / &yy))
}

/// `β_n`, `γ_n` or `λ_n` at the standard arguments `(x0, x1)`.
pub fn recurrence_coeff(kind: RecurrenceKind, n: NIndex) -> R {
    let (qn, y0, y1) = (n.qn(), R::var(Var::X0), R::var(Var::X1));
    match kind {
        RecurrenceKind::Beta => beta_at(&qn, &y0, &y1),
        RecurrenceKind::Gamma => gamma_at(&qn, &y0, &y1),
        RecurrenceKind::Lambda => lambda_at(&qn, &y0, &y1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ch_var;

    #[test]
    fn low_degree_polynomials() {
        assert!(aw_star(0).poly.is_one());
        assert!(aw_general(0, &AWParams::symbolic()).unwrap().poly.is_one());
        let p1 = aw_general(1, &AWParams::symbolic()).unwrap().poly;
        let c = p1.coefficients_in(Var::X).unwrap();
        assert!(c[&1].is_one() && c[&-1].is_one());
        assert_eq!(aw_star(1).poly, aw_general(1, &AWParams::star()).unwrap().poly);
        assert!(aw_star(2).poly.invert_var(Var::X) == aw_star(2).poly);
        assert!((aw_star(1).poly - ch_var(Var::X)).coefficients_in(Var::X).unwrap().keys().all(|&k| k == 0));
    }

    #[test]
    fn vanishing_normalization_is_reported() {
        // a b c d = q^{-1} kills the factor (1 − abcd q)_1 at n = 2
        let p = AWParams::new(R::one(), R::one(), R::one(), R::q_pow(-2));
        assert!(matches!(aw_general(2, &p), Err(Error::DenominatorVanishes { .. })));
    }

    #[test]
    fn boundary_values_of_recurrence() {
        assert!(recurrence_coeff(RecurrenceKind::Gamma, NIndex::At(0)).is_zero());
        assert!(recurrence_coeff(RecurrenceKind::Lambda, NIndex::At(0)).is_zero());
        let l = recurrence_coeff(RecurrenceKind::Lambda, NIndex::Formal);
        assert_eq!(NIndex::At(2).specialize(&l).unwrap(), recurrence_coeff(RecurrenceKind::Lambda, NIndex::At(2)));
    }
}
