//! The named operators: Hecke generators, `K_n`, `G_n`, the curve
//! operators, the Kalnins–Miller parameter shifts and the `d̂` pieces of the
//! sixth curve.

use super::{Operator, ShiftWord};
use crate::error::{Error, Result};
use crate::exact::{ch_var, R, Var};

pub(crate) fn x() -> R {
    R::var(Var::X)
}

pub(crate) fn xi() -> R {
    R::var_pow(Var::X, -1)
}

/// `q^{1/2}`.
pub(crate) fn h() -> R {
    R::s_pow(2)
}

pub(crate) fn q() -> R {
    R::q_pow(1)
}

pub(crate) fn om(c: &R) -> R {
    R::one() - c
}

/// Which of the two boundary variables an operator shifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    Zero,
    One,
}

impl Boundary {
    pub fn var(self) -> Var {
        match self {
            Boundary::Zero => Var::X0,
            Boundary::One => Var::X1,
        }
    }

    pub fn shift(self, e: i32) -> ShiftWord {
        match self {
            Boundary::Zero => ShiftWord::shift0(e),
            Boundary::One => ShiftWord::shift1(e),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KgKind {
    K,
    G,
}

/// `K_n(x_b; arg)` or `G_n(x_b; arg)`, where `arg` is a function of `x`.
pub fn kg_op(kind: KgKind, n: i32, b: Boundary, arg: &R) -> Operator {
    let xb2 = R::var_pow(b.var(), 2);
    let up = R::var_pow(b.var(), -n).neg() / om(&xb2);
    let second = match kind {
        KgKind::K => (h() * arg + &xb2) * (R::s_pow(6) * arg + &xb2) / (q() * arg),
        KgKind::G => (h() * arg + &xb2) * (h() + arg * &xb2) / (h() * arg),
    };
    let down = R::var_pow(b.var(), n) * second / om(&xb2);
    Operator::term(up, b.shift(1)).add(&Operator::term(down, b.shift(-1)))
}

pub fn k_op(n: i32, b: Boundary, arg: &R) -> Operator {
    kg_op(KgKind::K, n, b, arg)
}

pub fn g_op(n: i32, b: Boundary, arg: &R) -> Operator {
    kg_op(KgKind::G, n, b, arg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hecke {
    T0,
    T1,
    U0,
    U1,
}

impl Hecke {
    pub const ALL: [Hecke; 4] = [Hecke::T0, Hecke::T1, Hecke::U0, Hecke::U1];

    pub fn name(self) -> &'static str {
        match self {
            Hecke::T0 => "T0",
            Hecke::T1 => "T1",
            Hecke::U0 => "U0",
            Hecke::U1 => "U1",
        }
    }
}

pub fn hecke(which: Hecke) -> Operator {
    let reflect = Operator::word(ShiftWord::reflection());
    let s_minus_one = reflect.sub(&Operator::identity());
    let x0 = R::var(Var::X0);
    let x1 = R::var(Var::X1);
    match which {
        Hecke::T0 => {
            let c = (h() + x() * R::var_pow(Var::X0, 2)) / (x() * &x0);
            let inner = Operator::term(c.neg(), ShiftWord::new(true, 2, 0, 0)).add(&Operator::mul_by(ch_var(Var::X0)));
            inner.scale(&(R::i() * x() / (h() - x())))
        }
        Hecke::T1 => {
            let c = (R::one() + h() * x()) / (h() * om(&(x() * x()))) * (h() * x() + R::var_pow(Var::X1, 2)) / &x1;
            s_minus_one.scale(&c).add(&Operator::mul_by((h() / &x1).neg())).scale(&R::i())
        }
        Hecke::U0 => {
            let k = k_op(0, Boundary::Zero, &xi());
            let g = g_op(0, Boundary::Zero, &x());
            let inner = k.compose(&Operator::word(ShiftWord::new(true, 2, 0, 0))).sub(&g);
            inner.scale(&(R::s_pow(-1) * x() / (h() - x())))
        }
        Hecke::U1 => {
            let k = k_op(0, Boundary::One, &x());
            let g = g_op(0, Boundary::One, &x());
            let first = k.compose(&s_minus_one).scale(&(x() * (R::one() + h() * x()) / (R::s_pow(1) * om(&(x() * x())))).neg());
            let second = g.sub(&k.scale(&(h() * x()))).scale(&(R::s_pow(1) / om(&(h() * x()))));
            first.add(&second)
        }
    }
}

/// `ω(arg) = arg (1 + q^{1/2} arg) / (q^{1/2} (1 − arg²)(1 − q^{1/2} arg))`.
pub fn omega(arg: &R) -> R {
    arg * (R::one() + h() * arg) / (h() * om(&(arg * arg)) * om(&(h() * arg)))
}

/// The operator attached to curve `k_a`, `a ∈ 1..=6`.
pub fn curve(a: u8) -> Result<Operator> {
    let x0 = R::var(Var::X0);
    let x1 = R::var(Var::X1);
    Ok(match a {
        1 => Operator::mul_by(ch_var(Var::X0)),
        5 => Operator::mul_by(ch_var(Var::X1)),
        2 => g_op(0, Boundary::Zero, &x()).scale(&(R::i() * R::s_pow(-1))),
        4 => g_op(0, Boundary::One, &x()).scale(&(R::i() * R::s_pow(-1))),
        3 => {
            let mut out = Operator::zero();
            for eps in [1, -1] {
                let xe = R::var_pow(Var::X, eps);
                let w = omega(&xe);
                let shift = R::var_pow(Var::X, -eps).neg() * (&x0 + h() * &xe / &x0) * (&x1 + h() * &xe / &x1);
                out = out
                    .add(&Operator::term(&w * shift, ShiftWord::shift(2 * eps)))
                    .add(&Operator::mul_by(&w * h() * ch_var(Var::X0) * ch_var(Var::X1)));
            }
            out
        }
        6 => {
            let gg = g_op(0, Boundary::Zero, &x()).compose(&g_op(0, Boundary::One, &x()));
            let mut out = Operator::zero();
            for eps in [1, -1] {
                let xe = R::var_pow(Var::X, eps);
                let w = omega(&xe);
                let kk = k_op(0, Boundary::Zero, &xe)
                    .compose(&k_op(0, Boundary::One, &xe))
                    .compose(&Operator::word(ShiftWord::shift(2 * eps)));
                out = out.add(&kk.sub(&gg).scale(&w));
            }
            out
        }
        _ => return Err(Error::Precondition(format!("curve index {a} outside 1..=6"))),
    })
}

/// Multiplication by `ch(x)`, the separating curve.
pub fn separating_curve() -> Operator {
    Operator::mul_by(ch_var(Var::X))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KalninsKind {
    M,
    L,
    LStar,
}

/// The parameter-shift operators.  For [`KalninsKind::LStar`] the tuple is
/// the superscript `(a q^{1/2}, b q^{1/2}, c q^{1/2}, d q^{1/2})`; the
/// operator's own coefficients use the unshifted `a, b, c, d`.
pub fn kalnins(kind: KalninsKind, p: &[R; 4]) -> Operator {
    let pre = R::one() / (x() - xi());
    let up = ShiftWord::shift(1);
    let down = ShiftWord::shift(-1);
    match kind {
        KalninsKind::M => {
            let hi = R::s_pow(-2);
            let cu = xi().neg() * om(&(&p[0] * &hi * x())) * om(&(&p[1] * &hi * x()));
            let cd = x() * om(&(&p[0] * &hi * xi())) * om(&(&p[1] * &hi * xi()));
            Operator::term(cu, up).add(&Operator::term(cd, down)).scale(&pre)
        }
        KalninsKind::L => Operator::word(up).sub(&Operator::word(down)).scale(&pre),
        KalninsKind::LStar => {
            let hi = R::s_pow(-2);
            let un: Vec<R> = p.iter().map(|t| t * &hi).collect();
            let mut cu = R::var_pow(Var::X, -2);
            let mut cd = R::var_pow(Var::X, 2).neg();
            for t in &un {
                cu = cu * om(&(t * x()));
                cd = cd * om(&(t * xi()));
            }
            Operator::term(cu, up).add(&Operator::term(cd, down)).scale(&(R::s_pow(-2) * pre))
        }
    }
}

/// `b(x_b, arg)`.
pub fn b_fn(b: Boundary, arg: &R) -> R {
    let xb2 = R::var_pow(b.var(), 2);
    (h() * arg + &xb2) * (R::s_pow(6) * arg + &xb2) / (q() * arg)
}

/// `c(x_b, arg)`.
pub fn c_fn(b: Boundary, arg: &R) -> R {
    let xb2 = R::var_pow(b.var(), 2);
    (h() * arg + &xb2) * (h() + arg * &xb2) / (h() * arg)
}

/// `d̂_{a,b}` for `a, b ∈ {±1}`.
pub fn dhat(a: i32, b: i32) -> Result<Operator> {
    if a.abs() != 1 || b.abs() != 1 {
        return Err(Error::Precondition(format!("d̂ indices ({a}, {b}) must be ±1")));
    }
    let mut out = Operator::zero();
    for eps in [1, -1] {
        let xe = R::var_pow(Var::X, eps);
        let (shift, mult) = match (a, b) {
            (1, 1) => (R::one(), R::one()),
            (1, -1) => (b_fn(Boundary::One, &xe), c_fn(Boundary::One, &x())),
            (-1, 1) => (b_fn(Boundary::Zero, &xe), c_fn(Boundary::Zero, &x())),
            _ => (
                b_fn(Boundary::Zero, &xe) * b_fn(Boundary::One, &xe),
                c_fn(Boundary::Zero, &x()) * c_fn(Boundary::One, &x()),
            ),
        };
        let part = Operator::term(shift, ShiftWord::shift(2 * eps)).sub(&Operator::mul_by(mult));
        out = out.add(&part.scale(&omega(&xe)));
    }
    Ok(out)
}

/// `A(k6)` reassembled from the `d̂_{a,b}`.
pub fn curve6_from_dhat() -> Operator {
    let mut out = Operator::zero();
    for a in [1, -1] {
        for b in [1, -1] {
            let sign = if ((a + b) / 2 + 1) % 2 == 0 { 1 } else { -1 };
            let w = Operator::word(ShiftWord::new(false, 0, a, b));
            out = out.add(&dhat(a, b).expect("indices are ±1").compose(&w).scale(&R::int(sign)));
        }
    }
    let pre = R::one() / (om(&R::var_pow(Var::X0, 2)) * om(&R::var_pow(Var::X1, 2)));
    out.scale(&pre)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t1_on_constant() {
        let got = hecke(Hecke::T1).apply(&R::one());
        let want = (R::i() * h() / R::var(Var::X1)).neg();
        assert_eq!(got, want);
    }

    #[test]
    fn k_and_g_share_the_up_shift() {
        let k = k_op(0, Boundary::Zero, &x());
        let g = g_op(0, Boundary::Zero, &x());
        assert_eq!(k.coeff(&ShiftWord::shift0(1)), (R::one() / om(&R::var_pow(Var::X0, 2))).neg());
        assert!(k.sub(&g).coeff(&ShiftWord::shift0(1)).is_zero());
        let x02 = R::var_pow(Var::X0, 2);
        let want = (h() * x() + &x02) * (h() + x() * &x02) / (h() * x() * om(&x02));
        assert_eq!(g.coeff(&ShiftWord::shift0(-1)), want);
    }

    #[test]
    fn curve3_on_one() {
        let got = curve(3).unwrap().apply(&R::one());
        let arg = R::s_pow(-2) * R::var(Var::X0) * R::var(Var::X1);
        assert_eq!(got, crate::exact::ch(&arg).unwrap().neg());
    }

    #[test]
    fn curve1_is_multiplication() {
        let f = ch_var(Var::X) * ch_var(Var::X);
        assert_eq!(curve(1).unwrap().apply(&f), &f * ch_var(Var::X0));
        assert!(curve(7).is_err());
    }

    #[test]
    fn kalnins_simple_actions() {
        let p = [R::var(Var::A), R::var(Var::B), R::var(Var::C), R::var(Var::D)];
        assert!(kalnins(KalninsKind::L, &p).apply(&R::int(5)).is_zero());
        let m1 = kalnins(KalninsKind::M, &p).apply(&R::one());
        let want = om(&(R::var(Var::A) * R::var(Var::B) * R::q_pow(-1)));
        assert_eq!(m1, want);
    }

    #[test]
    fn dhat11_kills_constants() {
        assert!(dhat(1, 1).unwrap().apply(&R::int(3)).is_zero());
        assert!(dhat(0, 1).is_err());
    }
}
