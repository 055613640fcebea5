use std::cmp::Ordering;
use std::fmt;

/// Number of variable slots in a monomial.
pub const NVARS: usize = 9;

/// The variables every expression in this crate is written in.
///
/// `S` is the quarter power `q^{1/4}`, `U` a formal stand-in for `q^n`, and
/// `A..D` are free symbols used for generic Askey-Wilson parameters and for
/// symbolic triples.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Var {
    S = 0,
    X = 1,
    X0 = 2,
    X1 = 3,
    U = 4,
    A = 5,
    B = 6,
    C = 7,
    D = 8,
}

impl Var {
    pub const ALL: [Var; NVARS] =
        [Var::S, Var::X, Var::X0, Var::X1, Var::U, Var::A, Var::B, Var::C, Var::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::S => "s",
            Var::X => "x",
            Var::X0 => "x0",
            Var::X1 => "x1",
            Var::U => "u",
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::D => "d",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A Laurent monomial: one integer exponent per variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [i32; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var, e: i32) -> Mono {
        let mut m = Mono::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Mono {
        let mut m = Mono::ONE;
        for &(v, e) in pairs {
            m.0[v.index()] += e;
        }
        m
    }

    #[inline]
    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    #[inline]
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = [0i32; NVARS];
        for (k, slot) in r.iter_mut().enumerate() {
            *slot = self.0[k].checked_add(o.0[k]).expect("monomial exponent overflow");
        }
        Mono(r)
    }

    #[inline]
    pub fn div(&self, o: &Mono) -> Mono {
        let mut r = [0i32; NVARS];
        for (k, slot) in r.iter_mut().enumerate() {
            *slot = self.0[k].checked_sub(o.0[k]).expect("monomial exponent overflow");
        }
        Mono(r)
    }

    pub fn inv(&self) -> Mono {
        Mono::ONE.div(self)
    }

    pub fn pow(&self, k: i32) -> Option<Mono> {
        let mut r = [0i32; NVARS];
        for (slot, &e) in r.iter_mut().zip(self.0.iter()) {
            *slot = e.checked_mul(k)?;
        }
        Some(Mono(r))
    }

    /// Component-wise minimum (the monomial gcd).
    pub fn min(&self, o: &Mono) -> Mono {
        let mut r = self.0;
        for (slot, &e) in r.iter_mut().zip(o.0.iter()) {
            *slot = (*slot).min(e);
        }
        Mono(r)
    }

    pub fn max(&self, o: &Mono) -> Mono {
        let mut r = self.0;
        for (slot, &e) in r.iter_mut().zip(o.0.iter()) {
            *slot = (*slot).max(e);
        }
        Mono(r)
    }

    /// Variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        Var::ALL.iter().copied().filter_map(move |v| {
            let e = self.exp(v);
            (e != 0).then_some((v, e))
        })
    }
}

impl Ord for Mono {
    /// Graded lexicographic: total degree first, then exponents slot by slot.
    fn cmp(&self, o: &Mono) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.support() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_is_multiplicative() {
        let a = Mono::from_pairs(&[(Var::S, 2), (Var::X, -1)]);
        let b = Mono::from_pairs(&[(Var::X0, 1)]);
        let c = Mono::from_pairs(&[(Var::X, 3), (Var::U, -2)]);
        assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
        assert!(Mono::var(Var::S, 2) > Mono::var(Var::X, 1));
        assert_eq!(a.to_string(), "s^2*x^-1");
        assert_eq!(Mono::ONE.to_string(), "1");
    }
}
