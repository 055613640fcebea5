//! Gaussian rationals `(re + im·i) / den`.

use std::fmt;

use super::int::Int;
use crate::error::{Error, Result};

/// An element of ℚ(i), stored over a common positive denominator with
/// `gcd(re, im, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    re: Int,
    im: Int,
    den: Int,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar { re: Int::ZERO, im: Int::ZERO, den: Int::ONE }
    }

    pub fn one() -> Scalar {
        Scalar::int(1)
    }

    pub fn i() -> Scalar {
        Scalar { re: Int::ZERO, im: Int::ONE, den: Int::ONE }
    }

    pub fn int(v: i64) -> Scalar {
        Scalar { re: Int::Small(v), im: Int::ZERO, den: Int::ONE }
    }

    pub fn ratio(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::from_parts(Int::Small(num), Int::ZERO, Int::Small(den))
    }

    /// Builds `(re + im·i)/den`, normalizing sign and common factors.
    pub fn from_parts(re: Int, im: Int, den: Int) -> Scalar {
        assert!(!den.is_zero(), "zero denominator");
        let mut s = Scalar { re, im, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.re.is_zero() && self.im.is_zero() {
            self.den = Int::ONE;
            return;
        }
        if self.den.is_negative() {
            self.re = self.re.neg();
            self.im = self.im.neg();
            self.den = self.den.neg();
        }
        if self.den.is_one() {
            return;
        }
        let g = self.re.gcd(&self.im).gcd(&self.den);
        if !g.is_one() {
            self.re = self.re.div_exact(&g);
            self.im = self.im.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
    }

    pub fn re_num(&self) -> &Int {
        &self.re
    }

    pub fn im_num(&self) -> &Int {
        &self.im
    }

    pub fn den(&self) -> &Int {
        &self.den
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero() && self.den.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if self.den.is_one() && o.den.is_one() {
            return Scalar { re: self.re.add(&o.re), im: self.im.add(&o.im), den: Int::ONE };
        }
        if self.den == o.den {
            return Scalar::from_parts(self.re.add(&o.re), self.im.add(&o.im), self.den.clone());
        }
        Scalar::from_parts(
            self.re.mul(&o.den).add(&o.re.mul(&self.den)),
            self.im.mul(&o.den).add(&o.im.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar { re: self.re.neg(), im: self.im.neg(), den: self.den.clone() }
    }

    #[inline]
    pub fn mul(&self, o: &Scalar) -> Scalar {
        let (re, im) = if self.im.is_zero() && o.im.is_zero() {
            (self.re.mul(&o.re), Int::ZERO)
        } else if self.im.is_zero() {
            (self.re.mul(&o.re), self.re.mul(&o.im))
        } else if o.im.is_zero() {
            (self.re.mul(&o.re), self.im.mul(&o.re))
        } else {
            (
                self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
                self.re.mul(&o.im).add(&self.im.mul(&o.re)),
            )
        };
        if self.den.is_one() && o.den.is_one() {
            return Scalar { re, im, den: Int::ONE };
        }
        Scalar::from_parts(re, im, self.den.mul(&o.den))
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: self.im.neg(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("scalar inverse".into()));
        }
        // den/(re + im i) = den (re - im i)/(re² + im²)
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        Ok(Scalar::from_parts(self.den.mul(&self.re), self.den.mul(&self.im).neg(), norm))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// True when the printed form needs no parentheses as a factor.
    pub(crate) fn is_atomic(&self) -> bool {
        self.re.is_zero() || self.im.is_zero()
    }

    /// Sign used for pretty printing: the sign of the real part, or of the
    /// imaginary part for purely imaginary values.
    pub(crate) fn display_sign(&self) -> i32 {
        if !self.re.is_zero() {
            self.re.signum()
        } else {
            self.im.signum()
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Scalar {
        Scalar::int(v)
    }
}

fn fmt_rat(f: &mut fmt::Formatter<'_>, n: &Int, d: &Int) -> fmt::Result {
    // n/d with d > 0 and the fraction reduced
    let g = n.gcd(d);
    let (n, d) = if g.is_one() || g.is_zero() { (n.clone(), d.clone()) } else { (n.div_exact(&g), d.div_exact(&g)) };
    if d.is_one() {
        write!(f, "{n}")
    } else {
        write!(f, "{n}/{d}")
    }
}

impl fmt::Display for Scalar {
    /// `a`, `b*I`, or `a+b*I` with reduced rational parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rat(f, &self.re, &self.den);
        }
        if !self.re.is_zero() {
            fmt_rat(f, &self.re, &self.den)?;
            if !self.im.is_negative() {
                write!(f, "+")?;
            }
        }
        if self.im.is_one() && self.den.is_one() {
            write!(f, "I")
        } else if self.im == Int::Small(-1) && self.den.is_one() {
            write!(f, "-I")
        } else {
            fmt_rat(f, &self.im, &self.den)?;
            write!(f, "*I")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let a = Scalar::from_parts(Int::Small(1), Int::Small(2), Int::Small(3));
        let b = Scalar::from_parts(Int::Small(-4), Int::Small(1), Int::Small(5));
        let prod = a.mul(&b);
        assert_eq!(prod.div(&b).unwrap(), a);
        assert_eq!(a.sub(&a), Scalar::zero());
        assert_eq!(Scalar::i().mul(&Scalar::i()), Scalar::int(-1));
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn normal_form_is_reduced() {
        let s = Scalar::from_parts(Int::Small(4), Int::Small(-6), Int::Small(-8));
        assert_eq!(s.re_num(), &Int::Small(-2));
        assert_eq!(s.im_num(), &Int::Small(3));
        assert_eq!(s.den(), &Int::Small(4));
        assert_eq!(s.to_string(), "-1/2+3/4*I");
        assert_eq!(Scalar::i().neg().to_string(), "-I");
        assert_eq!(Scalar::ratio(6, -4).to_string(), "-3/2");
    }
}
