//! The genus-two skein module on the θ-link basis `n(i, j, k)`, the curve
//! actions on it, and the correspondence with the curve actions on `P̄_n`.

mod correspondence;

pub use correspondence::*;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{R, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub i: i64,
    pub j: i64,
    pub k: i64,
}

impl Triple {
    pub fn new(i: i64, j: i64, k: i64) -> Triple {
        Triple { i, j, k }
    }

    /// The first violated admissibility condition, if any.
    pub fn violation(&self) -> Option<&'static str> {
        let Triple { i, j, k } = *self;
        if i < 0 || j < 0 || k < 0 {
            Some("entries must be nonnegative")
        } else if (i + j + k) % 2 != 0 {
            Some("i + j + k must be even")
        } else if k < (i - j).abs() || k > i + j {
            Some("|i - j| <= k <= i + j must hold")
        } else {
            None
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.violation().is_none()
    }

    pub fn require_admissible(&self) -> Result<()> {
        match self.violation() {
            Some(why) => Err(Error::NotAdmissible(self.to_string(), why.into())),
            None => Ok(()),
        }
    }

    /// `n = (i − j + k)/2`, the degree of the matching `P̄_n`.
    pub fn degree(&self) -> i64 {
        (self.i - self.j + self.k) / 2
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

pub fn is_admissible(i: i64, j: i64, k: i64) -> bool {
    Triple::new(i, j, k).is_admissible()
}

/// Admissible triples with `i + j + k ≤ bound`, by total then lexicographically.
pub fn enumerate_admissible(bound: u32) -> Vec<Triple> {
    let b = bound as i64;
    let mut out = Vec::new();
    for total in 0..=b {
        for i in 0..=total {
            for j in 0..=total - i {
                let t = Triple::new(i, j, total - i - j);
                if t.is_admissible() {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// A finite combination of θ-links with coefficients in `s`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SkeinVector {
    terms: BTreeMap<Triple, R>,
}

impl SkeinVector {
    pub fn basis(t: Triple) -> Result<SkeinVector> {
        t.require_admissible()?;
        let mut terms = BTreeMap::new();
        terms.insert(t, R::one());
        Ok(SkeinVector { terms })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Triple, &R)> {
        self.terms.iter()
    }

    pub fn get(&self, t: &Triple) -> Option<&R> {
        self.terms.get(t)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, t: Triple, c: R) {
        let sum = match self.terms.remove(&t) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(t, sum);
        }
    }
}

impl fmt::Display for SkeinVector {
    /// One `n(i,j,k) : coeff` line per target.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "n{t} : {c}")?;
        }
        Ok(())
    }
}

/// `q^{e/2}`.
fn hp(e: i64) -> R {
    R::s_pow(2 * e as i32)
}

fn om(c: R) -> R {
    R::one() - c
}

fn sq(c: R) -> R {
    &c * &c
}

/// `D_{a,b}` with each argument given as `q^{arg/2}`; shared by the integer
/// and the generic (symbolic) evaluation.
pub fn d_coeff_at(a: i32, b: i32, p: [&R; 3]) -> Result<R> {
    let [pi, pj, pk] = p;
    let q = R::q_pow(1);
    let h = R::s_pow(2);
    let pole = |y: &R| om(y * y) * om(&q * y * y);
    Ok(match (a, b) {
        (1, 1) => R::one(),
        (1, -1) => ((pi * pj * &h / pk) * sq(om(pj * pk / pi))).div(&pole(pj))?.neg(),
        (-1, 1) => ((pi * pj * &h / pk) * sq(om(pi * pk / pj))).div(&pole(pi))?.neg(),
        (-1, -1) => (sq(om(pi * pj * pk * &q)) * sq(om(pi * pj / pk))).div(&(pole(pi) * pole(pj)))?,
        _ => return Err(Error::Precondition(format!("D indices ({a}, {b}) must be ±1"))),
    })
}

/// `D_{a,b}(i, j, k)`.  Instances whose denominator vanishes (`i = 0` or
/// `j = 0` where it enters) are refused.
pub fn d_coeff(a: i32, b: i32, i: i64, j: i64, k: i64) -> Result<R> {
    let degenerate = match (a, b) {
        (1, -1) => j == 0,
        (-1, 1) => i == 0,
        (-1, -1) => i == 0 || j == 0,
        _ => false,
    };
    if degenerate {
        return Err(Error::BoundaryCoefficient(format!("D({a},{b}) at ({i},{j},{k})")));
    }
    d_coeff_at(a, b, [&hp(i), &hp(j), &hp(k)])
}

/// `−ch(q^{e/2})`.
fn diagonal(e: i64) -> R {
    (hp(e) + hp(-e)).neg()
}

/// Target offsets and `D` argument order of the three non-diagonal curves.
pub fn d_layout(curve: u8, a: i32, b: i32, t: &Triple) -> Option<(Triple, [i64; 3])> {
    let (a, b) = (a as i64, b as i64);
    let Triple { i, j, k } = *t;
    match curve {
        2 => Some((Triple::new(i + a, j + b, k), [i, j, k])),
        4 => Some((Triple::new(i, j + a, k + b), [j, k, i])),
        6 => Some((Triple::new(i + a, j, k + b), [i, k, j])),
        _ => None,
    }
}

/// The action of curve `k_a` on a skein vector.  Summands with a
/// non-admissible target are dropped before their coefficient is evaluated.
pub fn curve_action_skein(curve: u8, v: &SkeinVector) -> Result<SkeinVector> {
    let mut out = SkeinVector::default();
    for (t, c) in v.terms() {
        t.require_admissible()?;
        match curve {
            1 => out.add_term(*t, c * diagonal(t.i + 1)),
            3 => out.add_term(*t, c * diagonal(t.j + 1)),
            5 => out.add_term(*t, c * diagonal(t.k + 1)),
            2 | 4 | 6 => {
                for a in [1, -1] {
                    for b in [1, -1] {
                        let (target, args) = d_layout(curve, a, b, t).expect("non-diagonal curve");
                        if target.is_admissible() {
                            out.add_term(target, c * d_coeff(a, b, args[0], args[1], args[2])?);
                        }
                    }
                }
            }
            _ => return Err(Error::Precondition(format!("curve index {curve} outside 1..=6"))),
        }
    }
    Ok(out)
}

/// `x0 ↦ −q^{(i+1)/2}`, `x1 ↦ −q^{(k+1)/2}`, `u ↦ q^{(i−j+k)/2}`.
pub fn triple_specialization(t: &Triple) -> Vec<(Var, R)> {
    vec![
        (Var::X0, hp(t.i + 1).neg()),
        (Var::X1, hp(t.k + 1).neg()),
        (Var::U, hp(t.i - t.j + t.k)),
    ]
}

/// The θ-link reached from `source` by the term `(n + shift, e0, e1)`.
pub fn map_target(source: &Triple, shift: i32, e0: i32, e1: i32) -> Triple {
    let i = source.i - e0 as i64;
    let k = source.k - e1 as i64;
    let n = source.degree() + shift as i64;
    Triple::new(i, i + k - 2 * n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(is_admissible(0, 0, 0));
        assert!(!is_admissible(1, 1, 1));
        assert!(!is_admissible(1, 1, 4));
        assert_eq!(Triple::new(1, 1, 4).violation(), Some("|i - j| <= k <= i + j must hold"));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_admissible(0), vec![Triple::new(0, 0, 0)]);
        let two: Vec<Triple> = enumerate_admissible(2);
        assert_eq!(two, vec![Triple::new(0, 0, 0), Triple::new(0, 1, 1), Triple::new(1, 0, 1), Triple::new(1, 1, 0)]);
    }

    #[test]
    fn d_values() {
        assert!(d_coeff(1, 1, 3, 4, 5).unwrap().is_one());
        let want = (R::s_pow(2) / (R::one() + R::q_pow(1))).neg();
        assert_eq!(d_coeff(1, -1, 1, 1, 2).unwrap(), want);
        assert_eq!(d_coeff(-1, 1, 1, 1, 2).unwrap(), want);
        assert!(matches!(d_coeff(-1, 1, 0, 1, 1), Err(Error::BoundaryCoefficient(_))));
    }

    #[test]
    fn actions_on_small_triples() {
        let o = SkeinVector::basis(Triple::new(0, 0, 0)).unwrap();
        let k2 = curve_action_skein(2, &o).unwrap();
        assert_eq!(k2.to_string(), "n(1,1,0) : 1");
        let k1 = curve_action_skein(1, &o).unwrap();
        assert_eq!(k1.get(&Triple::new(0, 0, 0)).unwrap(), &(R::s_pow(2) + R::s_pow(-2)).neg());
        let v = SkeinVector::basis(Triple::new(1, 1, 2)).unwrap();
        assert!(curve_action_skein(6, &v).unwrap().get(&Triple::new(2, 1, 3)).unwrap().is_one());
        assert!(SkeinVector::basis(Triple::new(1, 1, 1)).is_err());
    }

    #[test]
    fn targets() {
        let s = Triple::new(1, 1, 2);
        assert_eq!(map_target(&s, 1, -1, 0), Triple::new(2, 0, 2));
        assert_eq!(map_target(&s, 0, -1, 0), Triple::new(2, 2, 2));
        assert_eq!(map_target(&s, 0, 0, 0), s);
    }
}
