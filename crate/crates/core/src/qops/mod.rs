//! Reflection / q-shift operators acting on rational functions of
//! `(x, x0, x1)`.
//!
//! An operator is a finite sum `Σ c_w(x, x0, x1) · w` where each word
//! `w = s^ρ ð^e ð0^e0 ð1^e1` acts by
//! `f ↦ f(q^{e/2} x^{(−1)^ρ}, q^{e0/2} x0, q^{e1/2} x1)` and coefficients
//! sit to the left of the word.

mod library;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use crate::exact::{Mono, RationalExpr, Scalar, Var};

pub use library::*;
pub use verify::*;

/// `s^reflect ð^e ð0^e0 ð1^e1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ShiftWord {
    pub reflect: bool,
    pub e: i32,
    pub e0: i32,
    pub e1: i32,
}

impl ShiftWord {
    pub const ID: ShiftWord = ShiftWord { reflect: false, e: 0, e0: 0, e1: 0 };

    pub fn new(reflect: bool, e: i32, e0: i32, e1: i32) -> ShiftWord {
        ShiftWord { reflect, e, e0, e1 }
    }

    pub fn shift(e: i32) -> ShiftWord {
        ShiftWord { e, ..ShiftWord::ID }
    }

    pub fn shift0(e0: i32) -> ShiftWord {
        ShiftWord { e0, ..ShiftWord::ID }
    }

    pub fn shift1(e1: i32) -> ShiftWord {
        ShiftWord { e1, ..ShiftWord::ID }
    }

    pub fn reflection() -> ShiftWord {
        ShiftWord { reflect: true, ..ShiftWord::ID }
    }

    /// `self ∘ o`, using `s ð^e = ð^{−e} s`.
    pub fn then(&self, o: &ShiftWord) -> ShiftWord {
        let e = if o.reflect { -self.e + o.e } else { self.e + o.e };
        ShiftWord { reflect: self.reflect ^ o.reflect, e, e0: self.e0 + o.e0, e1: self.e1 + o.e1 }
    }

    /// Transforms the arguments of `f`.
    pub fn act(&self, f: &RationalExpr) -> RationalExpr {
        let mut map = Vec::with_capacity(3);
        if self.reflect || self.e != 0 {
            let xe = if self.reflect { -1 } else { 1 };
            map.push((Var::X, Scalar::one(), Mono::from_pairs(&[(Var::S, 2 * self.e), (Var::X, xe)])));
        }
        if self.e0 != 0 {
            map.push((Var::X0, Scalar::one(), Mono::from_pairs(&[(Var::S, 2 * self.e0), (Var::X0, 1)])));
        }
        if self.e1 != 0 {
            map.push((Var::X1, Scalar::one(), Mono::from_pairs(&[(Var::S, 2 * self.e1), (Var::X1, 1)])));
        }
        if map.is_empty() {
            return f.clone();
        }
        f.subst_monomial(&map).expect("shifts by units never vanish a denominator")
    }
}

impl fmt::Display for ShiftWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s^{} * D^{} * D0^{} * D1^{}", self.reflect as u8, self.e, self.e0, self.e1)
    }
}

/// A finite sum of coefficient-word terms in normal form.
#[derive(Clone, Debug, Default)]
pub struct Operator {
    terms: BTreeMap<ShiftWord, RationalExpr>,
}

impl Operator {
    pub fn zero() -> Operator {
        Operator::default()
    }

    pub fn identity() -> Operator {
        Operator::word(ShiftWord::ID)
    }

    pub fn word(w: ShiftWord) -> Operator {
        Operator::term(RationalExpr::one(), w)
    }

    pub fn term(c: RationalExpr, w: ShiftWord) -> Operator {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Operator { terms }
    }

    /// Multiplication by `c`.
    pub fn mul_by(c: RationalExpr) -> Operator {
        Operator::term(c, ShiftWord::ID)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ShiftWord, &RationalExpr)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &ShiftWord) -> RationalExpr {
        self.terms.get(w).cloned().unwrap_or_else(RationalExpr::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, w: ShiftWord, c: RationalExpr) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(w, sum);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, o: &Operator) -> Operator {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.insert(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Operator) -> Operator {
        self.add(&o.scale(&RationalExpr::int(-1)))
    }

    /// `c · self` with `c` multiplying from the left.
    pub fn scale(&self, c: &RationalExpr) -> Operator {
        let mut out = Operator::zero();
        for (w, k) in &self.terms {
            out.insert(*w, c * k);
        }
        out
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Operator) -> Operator {
        let mut acc: BTreeMap<ShiftWord, Vec<RationalExpr>> = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                acc.entry(w1.then(w2)).or_default().push(c1 * w1.act(c2));
            }
        }
        let mut out = Operator::zero();
        for (w, parts) in acc {
            let c: RationalExpr = parts.into_iter().sum();
            out.insert(w, c);
        }
        out
    }

    pub fn apply(&self, f: &RationalExpr) -> RationalExpr {
        self.terms.iter().map(|(w, c)| c * w.act(f)).sum()
    }

    /// Transforms every coefficient (not the words).
    pub fn map_coeffs(&self, mut g: impl FnMut(&RationalExpr) -> RationalExpr) -> Operator {
        let mut out = Operator::zero();
        for (w, c) in &self.terms {
            out.insert(*w, g(c));
        }
        out
    }

    /// Word-wise exact equality.
    pub fn equals(&self, o: &Operator) -> bool {
        self.sub(o).is_zero()
    }
}

impl PartialEq for Operator {
    fn eq(&self, o: &Operator) -> bool {
        self.equals(o)
    }
}

impl fmt::Display for Operator {
    /// One term per line: `(coeff) * s^ρ * D^e * D0^e0 * D1^e1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "({c}) * {w}")?;
        }
        Ok(())
    }
}

macro_rules! op_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl std::ops::$tr<&Operator> for &Operator {
            type Output = Operator;
            fn $method(self, o: &Operator) -> Operator {
                $body(self, o)
            }
        }
        impl std::ops::$tr<Operator> for Operator {
            type Output = Operator;
            fn $method(self, o: Operator) -> Operator {
                $body(&self, &o)
            }
        }
    };
}

op_binop!(Add, add, |a: &Operator, b: &Operator| a.add(b));
op_binop!(Sub, sub, |a: &Operator, b: &Operator| a.sub(b));
op_binop!(Mul, mul, |a: &Operator, b: &Operator| a.compose(b));

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ch_var;

    fn x() -> RationalExpr {
        RationalExpr::var(Var::X)
    }

    #[test]
    fn shift_acts_on_ch() {
        let d = Operator::word(ShiftWord::shift(1));
        let got = d.apply(&ch_var(Var::X));
        let want = RationalExpr::s_pow(2) * x() + RationalExpr::s_pow(-2) / x();
        assert_eq!(got, want);
        let d0 = Operator::word(ShiftWord::shift0(1));
        assert_eq!(d0.apply(&RationalExpr::var_pow(Var::X0, 2)), RationalExpr::q_pow(1) * RationalExpr::var_pow(Var::X0, 2));
    }

    #[test]
    fn word_relations() {
        let s = Operator::word(ShiftWord::reflection());
        let d = Operator::word(ShiftWord::shift(1));
        let dinv = Operator::word(ShiftWord::shift(-1));
        assert_eq!(&s * &d, &dinv * &s);
        assert_eq!(&s * &s, Operator::identity());
        assert_eq!(&d * &dinv, Operator::identity());
        let d0 = Operator::word(ShiftWord::shift0(1));
        assert_eq!(&d0 * &s, &s * &d0);
        assert_eq!(&d0 * &d, &d * &d0);
    }

    #[test]
    fn commutation_with_coefficients() {
        let d = Operator::word(ShiftWord::shift(1));
        let got = &d * &Operator::mul_by(x());
        let want = Operator::term(RationalExpr::s_pow(2) * x(), ShiftWord::shift(1));
        assert_eq!(got, want);
    }

    #[test]
    fn composition_is_application() {
        let a = Operator::term(x(), ShiftWord::new(true, 2, 1, 0)).add(&Operator::mul_by(RationalExpr::var(Var::X0)));
        let b = Operator::term(RationalExpr::var(Var::X1) + x(), ShiftWord::new(true, -1, 0, 1));
        let f = ch_var(Var::X) * RationalExpr::var(Var::X0) + RationalExpr::var_pow(Var::X1, 2);
        assert_eq!((&a * &b).apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn combine_normalizes() {
        let a = Operator::term(x(), ShiftWord::shift(2));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.scale(&RationalExpr::one()), a);
        assert_eq!(a.add(&a).len(), 1);
    }
}
