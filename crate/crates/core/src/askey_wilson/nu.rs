//! Ratios of the scale function
//! `ν_n(x0, x1) = (−1)^n q^{−n(n+1)/2} (q^{n+1}/X)_n (q^{n+1}/X)_{n+1}
//!   / Π_b (1/x_b²)_{n+1} (q/x_b²)_n · Π_b x_b^{1/2} e^{πi log x_b / log q} / (x_b²)_∞`,
//! with `X = x0² x1²`.
//!
//! `ν_n` itself is never built.  A half shift `x_b ↦ q^{±1/2} x_b` changes
//! the non-rational factors by `(i s)^{±1}` and a telescoped `(x_b²)_∞`
//! ratio; the finite Pochhammers are handled as runs `Π_{j∈[lo,hi)} (1 − q^j M)`
//! whose endpoints are affine in `n`, so that the ratio stays exact with
//! `n` formal.

use std::collections::BTreeMap;

use super::NIndex;
use crate::error::{Error, Result};
use crate::exact::{q_pochhammer, R, Var};

/// `ν_{n}(q^{e0/2} x0, q^{e1/2} x1) / ν_{n+delta}(x0, x1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NuRatioSpec {
    pub e0: i32,
    pub e1: i32,
    pub n_from: NIndex,
    pub delta: i32,
}

impl NuRatioSpec {
    pub fn new(e0: i32, e1: i32, n_from: NIndex, delta: i32) -> Result<NuRatioSpec> {
        if e0.abs() > 1 || e1.abs() > 1 {
            return Err(Error::Precondition(format!("shift labels ({e0}, {e1}) must lie in -1..=1")));
        }
        if delta.abs() > 1 {
            return Err(Error::Precondition(format!("target offset {delta} must lie in -1..=1")));
        }
        if let NIndex::At(n) = n_from {
            if n as i64 + (delta as i64) < 0 {
                return Err(Error::Precondition(format!("target index {} is negative", n as i64 + delta as i64)));
            }
        }
        Ok(NuRatioSpec { e0, e1, n_from, delta })
    }

    pub fn concrete(e0: i32, e1: i32, n_from: u32, n_to: i64) -> Result<NuRatioSpec> {
        let delta = n_to - n_from as i64;
        if delta.abs() > 1 {
            return Err(Error::Precondition(format!("n_to = {n_to} is not within one of n_from = {n_from}")));
        }
        NuRatioSpec::new(e0, e1, NIndex::At(n_from), delta as i32)
    }

    pub fn n_to(&self) -> Option<i64> {
        self.n_from.value().map(|n| n as i64 + self.delta as i64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Base {
    InvX,
    InvX0Sq,
    InvX1Sq,
}

impl Base {
    fn value(self) -> R {
        match self {
            Base::InvX => R::var_pow(Var::X0, -2) * R::var_pow(Var::X1, -2),
            Base::InvX0Sq => R::var_pow(Var::X0, -2),
            Base::InvX1Sq => R::var_pow(Var::X1, -2),
        }
    }
}

/// `j ∈ [lo.0·n + lo.1, hi.0·n + hi.1)` contributing `(1 − q^j M)^sign`.
struct Run {
    base: Base,
    lo: (i32, i32),
    hi: (i32, i32),
    sign: i32,
}

/// The Pochhammer runs of `ν_{n+off}(q^{e0/2} x0, q^{e1/2} x1)`.
fn runs(e0: i32, e1: i32, off: i32, sign: i32) -> Vec<Run> {
    let e = e0 + e1;
    let mut out = vec![
        Run { base: Base::InvX, lo: (1, off + 1 - e), hi: (2, 2 * off + 1 - e), sign },
        Run { base: Base::InvX, lo: (1, off + 1 - e), hi: (2, 2 * off + 2 - e), sign },
    ];
    for (base, eb) in [(Base::InvX0Sq, e0), (Base::InvX1Sq, e1)] {
        out.push(Run { base, lo: (0, -eb), hi: (1, off + 1 - eb), sign: -sign });
        out.push(Run { base, lo: (0, 1 - eb), hi: (1, off + 1 - eb), sign: -sign });
    }
    out
}

/// Telescopes the runs: within one base and slope the step functions must
/// cancel, leaving finitely many factors `(1 − u^slope q^t M)^count`.
fn telescope(all: &[Run]) -> Result<R> {
    let mut steps: BTreeMap<(Base, i32), BTreeMap<i32, i32>> = BTreeMap::new();
    for r in all {
        *steps.entry((r.base, r.lo.0)).or_default().entry(r.lo.1).or_default() += r.sign;
        *steps.entry((r.base, r.hi.0)).or_default().entry(r.hi.1).or_default() -= r.sign;
    }
    let mut factors = Vec::new();
    for ((base, slope), marks) in steps {
        if marks.values().sum::<i32>() != 0 {
            return Err(Error::Precondition(format!("ν ratio leaves an unbalanced run at slope {slope}")));
        }
        let mut count = 0;
        let offsets: Vec<(i32, i32)> = marks.into_iter().collect();
        for w in offsets.windows(2) {
            count += w[0].1;
            if count == 0 {
                continue;
            }
            for t in w[0].0..w[1].0 {
                let f = R::one() - R::var_pow(Var::U, slope) * R::q_pow(t) * base.value();
                factors.push(f.pow(count)?);
            }
        }
    }
    Ok(factors.into_iter().product())
}

/// The unit factor of one half shift of `x_b`.
fn special(e: i32, v: Var) -> R {
    let xb2 = R::var_pow(v, 2);
    match e {
        1 => R::i() * R::s_pow(1) * (R::one() - xb2),
        -1 => R::i().neg() * R::s_pow(-1) / (R::one() - xb2 * R::q_pow(-1)),
        _ => R::one(),
    }
}

fn units(spec: &NuRatioSpec, qn: &R) -> R {
    let signed = match spec.delta {
        1 => (qn * R::q_pow(1)).neg(),
        -1 => qn.inv().expect("q^n is a unit").neg(),
        _ => R::one(),
    };
    signed * special(spec.e0, Var::X0) * special(spec.e1, Var::X1)
}

/// The exact ratio, assembled by the telescoping rules; `u` is replaced by
/// `q^n` when `n` is concrete.
pub fn nu_ratio(spec: &NuRatioSpec) -> Result<R> {
    let mut all = runs(spec.e0, spec.e1, 0, 1);
    all.extend(runs(0, 0, spec.delta, -1));
    let r = telescope(&all)? * units(spec, &R::var(Var::U));
    spec.n_from.specialize(&r)
}

/// The finite part of `ν_n(y0, y1)` with the sign and power of `q`.
fn finite_part(n: u32, y0: &R, y1: &R) -> R {
    let yy = y0 * y0 * y1 * y1;
    let w = R::q_pow(n as i32 + 1) / &yy;
    let sign = if n.is_multiple_of(2) { R::one() } else { R::int(-1) };
    let e = n as i64 * (n as i64 + 1) / 2;
    let mut r = sign * R::s_pow(-4 * e as i32) * q_pochhammer(&w, n) * q_pochhammer(&w, n + 1);
    for y in [y0, y1] {
        let inv = (y * y).inv().expect("nonzero argument");
        r = r / (q_pochhammer(&inv, n + 1) * q_pochhammer(&(R::q_pow(1) * &inv), n));
    }
    r
}

/// Independent route at concrete `n`: both finite parts built outright and
/// divided.
pub fn nu_ratio_direct(spec: &NuRatioSpec) -> Result<R> {
    let (n, m) = match (spec.n_from, spec.n_to()) {
        (NIndex::At(n), Some(m)) => (n, m as u32),
        _ => return Err(Error::Precondition("direct ν ratio needs a concrete n".into())),
    };
    let (x0, x1) = (R::var(Var::X0), R::var(Var::X1));
    let top = finite_part(n, &(&x0 * R::s_pow(2 * spec.e0)), &(&x1 * R::s_pow(2 * spec.e1)));
    let bottom = finite_part(m, &x0, &x1);
    Ok(top / bottom * special(spec.e0, Var::X0) * special(spec.e1, Var::X1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::ShiftWord;

    #[test]
    fn identity_ratio() {
        let s = NuRatioSpec::new(0, 0, NIndex::Formal, 0).unwrap();
        assert!(nu_ratio(&s).unwrap().is_one());
    }

    #[test]
    fn formal_matches_direct() {
        for n in 0..4 {
            for e0 in -1..=1 {
                for e1 in -1..=1 {
                    for d in -1..=1 {
                        let Ok(s) = NuRatioSpec::new(e0, e1, NIndex::At(n), d) else { continue };
                        assert_eq!(nu_ratio(&s).unwrap(), nu_ratio_direct(&s).unwrap(), "{s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn half_shift_carries_i_s() {
        let s = NuRatioSpec::new(1, 0, NIndex::Formal, 0).unwrap();
        let r = nu_ratio(&s).unwrap() / (R::i() * R::s_pow(1));
        assert!(!r.num().terms().iter().any(|(_, c)| !c.is_real()));
    }

    #[test]
    fn loop_closes() {
        let a = nu_ratio(&NuRatioSpec::new(1, 0, NIndex::Formal, 0).unwrap()).unwrap();
        let b = nu_ratio(&NuRatioSpec::new(-1, 0, NIndex::Formal, 0).unwrap()).unwrap();
        assert!((a * ShiftWord::shift0(1).act(&b)).is_one());
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(NuRatioSpec::new(2, 0, NIndex::Formal, 0).is_err());
        assert!(NuRatioSpec::concrete(0, 0, 1, 3).is_err());
        assert!(NuRatioSpec::concrete(0, 0, 0, -1).is_err());
    }
}
