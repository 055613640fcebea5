//! The action of the curve operators on `P̄_n = ν_n P_n`, as lists of
//! `(n′, ε0, ε1, coefficient)` terms.  `ε` records the half shifts carried
//! by the ν-factor of the term.

use std::fmt;

use super::{gamma_at, lambda_at, nu_ratio, NIndex, NuRatioSpec};
use crate::error::{Error, Result};
use crate::exact::{ch, R, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionMode {
    /// Coefficients carry explicit ν ratios and γ/λ combinations.
    Prop,
    /// Fully simplified closed forms.
    Corollary,
}

/// One term `coeff · P̄_{n+shift}`, labelled by the ν shift `(e0, e1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionTerm {
    pub shift: i32,
    pub e0: i32,
    pub e1: i32,
    pub coeff: R,
}

impl ActionTerm {
    pub fn key(&self) -> (i32, i32, i32) {
        (self.shift, self.e0, self.e1)
    }

    /// `n+1`, `n`, `n-1`, or the concrete value.
    pub fn label(&self, n: NIndex) -> String {
        match n {
            NIndex::At(n) => (n as i64 + self.shift as i64).to_string(),
            NIndex::Formal => match self.shift {
                0 => "n".into(),
                k if k > 0 => format!("n+{k}"),
                k => format!("n{k}"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ActionTermList {
    pub curve: u8,
    pub n: NIndex,
    pub entries: Vec<ActionTerm>,
}

impl ActionTermList {
    pub fn get(&self, shift: i32, e0: i32, e1: i32) -> Option<&R> {
        self.entries.iter().find(|t| t.key() == (shift, e0, e1)).map(|t| &t.coeff)
    }

    /// Substitutes `u = q^n` and drops the terms with `n′ < 0`.
    pub fn specialize(&self, n: u32) -> Result<ActionTermList> {
        let mut entries = Vec::new();
        for t in &self.entries {
            if n as i64 + (t.shift as i64) < 0 {
                continue;
            }
            let coeff = NIndex::At(n).specialize(&t.coeff)?;
            entries.push(ActionTerm { coeff, ..t.clone() });
        }
        Ok(ActionTermList { curve: self.curve, n: NIndex::At(n), entries })
    }
}

impl fmt::Display for ActionTermList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "({}, {}, {}) : {}", t.label(self.n), t.e0, t.e1, t.coeff)?;
        }
        Ok(())
    }
}

fn om(c: R) -> R {
    R::one() - c
}

fn sq(c: R) -> R {
    &c * &c
}

fn nu(e0: i32, e1: i32, delta: i32) -> Result<R> {
    nu_ratio(&NuRatioSpec::new(e0, e1, NIndex::Formal, delta)?)
}

fn term(shift: i32, e0: i32, e1: i32, coeff: R) -> ActionTerm {
    ActionTerm { shift, e0, e1, coeff }
}

/// Prop-mode terms of `k2` (`b = 0`) or `k4` (`b = 1`).
fn prop_side(b: usize) -> Result<Vec<ActionTerm>> {
    let u = R::var(Var::U);
    let (xb, xo) = if b == 0 { (Var::X0, Var::X1) } else { (Var::X1, Var::X0) };
    let (y, z) = (R::var(xb), R::var(xo));
    let y2 = R::var_pow(xb, 2);
    let e = |k: i32| if b == 0 { (k, 0) } else { (0, k) };
    let pre = R::i() * R::s_pow(-1) / om(y2.clone());
    let hy = &y * R::s_pow(-2);
    let lam = lambda_at(&u, &y, &z);
    let ratio = gamma_at(&u, &hy, &z) / lambda_at(&u, &hy, &z);
    let (m, p) = (e(-1), e(1));
    Ok(vec![
        term(1, m.0, m.1, &pre * &y2 * nu(m.0, m.1, 1)?),
        term(0, m.0, m.1, &pre * &y2 * ratio * nu(m.0, m.1, 0)?),
        term(0, p.0, p.1, (&pre * nu(p.0, p.1, 0)?).neg()),
        term(-1, p.0, p.1, (&pre * lam * nu(p.0, p.1, -1)?).neg()),
    ])
}

fn prop_six() -> Result<Vec<ActionTerm>> {
    let u = R::var(Var::U);
    let (x02, x12) = (R::var_pow(Var::X0, 2), R::var_pow(Var::X1, 2));
    let xx = &x02 * &x12;
    let q = R::q_pow(1);
    let pre = R::one() / (om(x02.clone()) * om(x12.clone()));
    let ui = u.inv()?;
    Ok(vec![
        term(1, -1, -1, &pre * &ui * R::s_pow(-10) * sq(&xx - &u * &q * &q) * nu(-1, -1, 1)?),
        term(0, 1, -1, (&pre * &ui * R::s_pow(-6) * sq(&x12 - &u * &q) * nu(1, -1, 0)?).neg()),
        term(0, -1, 1, (&pre * &ui * R::s_pow(-6) * sq(&x02 - &u * &q) * nu(-1, 1, 0)?).neg()),
        term(-1, 1, 1, &pre * &ui * R::s_pow(-2) * sq(om(u.clone())) * nu(1, 1, -1)?),
    ])
}

fn corollary_side(b: usize) -> Vec<ActionTerm> {
    let u = R::var(Var::U);
    let (xb, xo) = if b == 0 { (Var::X0, Var::X1) } else { (Var::X1, Var::X0) };
    let (y2, z2) = (R::var_pow(xb, 2), R::var_pow(xo, 2));
    let xx = &y2 * &z2;
    let (q, h) = (R::q_pow(1), R::s_pow(2));
    let e = |k: i32| if b == 0 { (k, 0) } else { (0, k) };
    let pole = om(y2.clone()) * om(&q * &y2);
    let (m, p) = (e(-1), e(1));
    let up = (&y2 * sq(om(&z2 / (&u * &q)))
        / (&u * &q * &h * om(&xx / (&u * &u * &q * &q * &q)) * om(&xx / (&u * &u * &q * &q))))
    .neg();
    let same = sq(om(&y2 / &u)) * sq(om(&xx / &u)) / (&pole * om(&xx / (&u * &u * &q)) * om(&xx / (&u * &u)));
    let down = (&h * sq(om(u.clone())) * &y2 / (&u * &pole)).neg();
    vec![term(1, m.0, m.1, up), term(0, m.0, m.1, R::one()), term(0, p.0, p.1, same), term(-1, p.0, p.1, down)]
}

fn corollary_six() -> Vec<ActionTerm> {
    let u = R::var(Var::U);
    let (x02, x12) = (R::var_pow(Var::X0, 2), R::var_pow(Var::X1, 2));
    let xx = &x02 * &x12;
    let (q, h) = (R::q_pow(1), R::s_pow(2));
    let pole = |y2: &R| om(y2.clone()) * om(&q * y2);
    let side = |y2: &R| (&u * &h * sq(om(y2 / &u)) / pole(y2)).neg();
    vec![
        term(1, -1, -1, R::one()),
        term(0, 1, -1, side(&x02)),
        term(0, -1, 1, side(&x12)),
        term(-1, 1, 1, sq(om(u.clone())) * sq(om(&xx * &q / &u)) / (pole(&x02) * pole(&x12))),
    ]
}

/// `A(k_a) P̄_n` as a term list; formal in `u = q^n` and then specialized
/// when `n` is concrete.
pub fn pbar_action(curve: u8, mode: ActionMode, n: NIndex) -> Result<ActionTermList> {
    let u = R::var(Var::U);
    let entries = match (curve, mode) {
        (1, _) => vec![term(0, 0, 0, crate::exact::ch_var(Var::X0))],
        (5, _) => vec![term(0, 0, 0, crate::exact::ch_var(Var::X1))],
        (3, _) => {
            let arg = R::var(Var::X0) * R::var(Var::X1) / (&u * R::s_pow(2));
            vec![term(0, 0, 0, ch(&arg)?.neg())]
        }
        (2, ActionMode::Prop) => prop_side(0)?,
        (4, ActionMode::Prop) => prop_side(1)?,
        (6, ActionMode::Prop) => prop_six()?,
        (2, ActionMode::Corollary) => corollary_side(0),
        (4, ActionMode::Corollary) => corollary_side(1),
        (6, ActionMode::Corollary) => corollary_six(),
        _ => return Err(Error::Precondition(format!("curve index {curve} outside 1..=6"))),
    };
    let formal = ActionTermList { curve, n: NIndex::Formal, entries };
    match n {
        NIndex::Formal => Ok(formal),
        NIndex::At(k) => formal.specialize(k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_entry_of_k6() {
        let l = pbar_action(6, ActionMode::Corollary, NIndex::Formal).unwrap();
        assert!(l.get(1, -1, -1).unwrap().is_one());
        assert_eq!(l.to_string().lines().next().unwrap(), "(n+1, -1, -1) : 1");
    }

    #[test]
    fn lowering_entry_dropped_at_zero() {
        let l = pbar_action(2, ActionMode::Corollary, NIndex::At(0)).unwrap();
        assert!(l.get(-1, 1, 0).is_none());
        assert_eq!(l.entries.len(), 3);
    }

    #[test]
    fn curve3_eigenvalue() {
        let l = pbar_action(3, ActionMode::Prop, NIndex::At(1)).unwrap();
        let arg = R::var(Var::X0) * R::var(Var::X1) * R::s_pow(-6);
        assert_eq!(l.entries[0].coeff, ch(&arg).unwrap().neg());
    }
}
