//! Evaluation in a prime field `F_p` with `p ≡ 1 (mod 4)`, so that the
//! imaginary unit has an image.

use rustc_hash::FxHashMap;

use super::mono::{Var, NVARS};
use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Largest prime below 2^62 that is 1 mod 4.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_817;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    sqrt_minus_one: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        if p < 5 || p % 4 != 1 || !is_prime(p) {
            return Err(Error::InvalidConfig(format!("modulus {p} must be a prime congruent to 1 mod 4")));
        }
        let e = (p - 1) / 4;
        let mut a = 2u64;
        loop {
            let r = pow_mod(a, e, p);
            if mul_mod(r, r, p) == p - 1 {
                return Ok(PrimeField { p, sqrt_minus_one: r });
            }
            a += 1;
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn imaginary_unit(&self) -> u64 {
        self.sqrt_minus_one
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| pow_mod(a, self.p - 2, self.p))
    }

    /// `a^e` for a signed exponent; `None` when `a = 0` and `e < 0`.
    pub fn pow_signed(&self, a: u64, e: i32) -> Option<u64> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(ai, e.unsigned_abs() as u64))
        }
    }

    /// Image of a Gaussian rational; `None` when its denominator is divisible by `p`.
    pub fn scalar(&self, c: &Scalar) -> Option<u64> {
        let re = c.re_num().rem_u64(self.p);
        let im = c.im_num().rem_u64(self.p);
        let den = self.inv(c.den().rem_u64(self.p))?;
        let v = self.add(re, self.mul(im, self.sqrt_minus_one));
        Some(self.mul(v, den))
    }

    /// Evaluates a Laurent polynomial at a point given per variable slot.
    pub fn eval_poly(&self, f: &Poly, point: &[u64; NVARS]) -> Result<u64> {
        let mut cache: FxHashMap<(usize, i32), u64> = FxHashMap::default();
        let mut acc = 0u64;
        for (m, c) in f.terms() {
            let mut t = self
                .scalar(c)
                .ok_or_else(|| Error::Resample("coefficient denominator divisible by the modulus".into()))?;
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = match cache.get(&(k, e)) {
                    Some(v) => *v,
                    None => {
                        let v = self
                            .pow_signed(point[k], e)
                            .ok_or_else(|| Error::Resample(format!("variable {} evaluated to zero", Var::ALL[k])))?;
                        cache.insert((k, e), v);
                        v
                    }
                };
                t = self.mul(t, v);
            }
            acc = self.add(acc, t);
        }
        Ok(acc)
    }

    /// Univariate image in `v` after fixing the other variables, as a dense
    /// coefficient vector with the lowest power of `v` stripped.
    fn univariate_image(&self, f: &Poly, v: Var, point: &[u64; NVARS]) -> Option<Vec<u64>> {
        let (lo, hi) = f.exponent_bounds()?;
        let base = lo.exp(v);
        let width = (hi.exp(v) - base) as usize + 1;
        let mut out = vec![0u64; width];
        for (m, c) in f.terms() {
            let mut t = self.scalar(c)?;
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 || k == v.index() {
                    continue;
                }
                t = self.mul(t, self.pow_signed(point[k], e)?);
            }
            let slot = (m.exp(v) - base) as usize;
            out[slot] = self.add(out[slot], t);
        }
        // strip powers of v (units) and leading zeros
        let first = out.iter().position(|&c| c != 0)?;
        out.drain(..first);
        while out.last() == Some(&0) {
            out.pop();
        }
        Some(out)
    }

    /// Necessary condition for `d | f`, checked on a univariate image.
    /// A `false` answer is definitive; `true` only means "not ruled out".
    pub fn may_divide(&self, f: &Poly, d: &Poly) -> bool {
        let Some((dlo, dhi)) = d.exponent_bounds() else { return true };
        let v = Var::ALL
            .iter()
            .copied()
            .max_by_key(|v| (dhi.exp(*v) - dlo.exp(*v), std::cmp::Reverse(v.index())))
            .expect("at least one variable");
        let mut point = [0u64; NVARS];
        let mut seed = 0x9e37_79b9_7f4a_7c15u64;
        for slot in point.iter_mut() {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            *slot = seed % (self.p - 2) + 2;
        }
        let (Some(fi), Some(di)) = (self.univariate_image(f, v, &point), self.univariate_image(d, v, &point)) else {
            return true;
        };
        if di.len() <= 1 {
            return true;
        }
        if fi.len() < di.len() {
            return fi.is_empty();
        }
        self.poly_rem_is_zero(fi, &di)
    }

    fn poly_rem_is_zero(&self, mut f: Vec<u64>, d: &[u64]) -> bool {
        let dl = *d.last().unwrap();
        let dinv = self.inv(dl).unwrap();
        while f.len() >= d.len() {
            let lc = *f.last().unwrap();
            if lc != 0 {
                let factor = self.mul(lc, dinv);
                let shift = f.len() - d.len();
                for (k, &dc) in d.iter().enumerate() {
                    f[shift + k] = self.sub(f[shift + k], self.mul(factor, dc));
                }
            }
            f.pop();
        }
        f.iter().all(|&c| c == 0)
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::new(DEFAULT_PRIME).expect("default prime is valid")
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_setup() {
        let f = PrimeField::default();
        let i = f.imaginary_unit();
        assert_eq!(f.mul(i, i), f.modulus() - 1);
        assert!(PrimeField::new(7).is_err());
        assert!(PrimeField::new(21).is_err());
        assert!(PrimeField::new(13).is_ok());
        assert!(is_prime(DEFAULT_PRIME));
    }

    #[test]
    fn scalar_images() {
        let f = PrimeField::new(13).unwrap();
        let half = Scalar::ratio(1, 2);
        assert_eq!(f.mul(f.scalar(&half).unwrap(), 2), 1);
        assert_eq!(f.scalar(&Scalar::ratio(1, 13)), None);
    }
}
