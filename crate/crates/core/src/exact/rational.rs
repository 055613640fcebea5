//! Exact rational functions with a factored denominator.
//!
//! The numerator is an expanded Laurent polynomial.  The denominator is a
//! product of factors, each free of monomial content and with leading
//! coefficient one, so the expanded denominator satisfies the same two
//! normalizations.  Factors are cancelled against the numerator by exact
//! division whenever they divide it; no multivariate gcd is ever computed,
//! and equality is decided by cross-multiplication.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use super::mono::{Mono, Var, NVARS};
use super::modp::PrimeField;
use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Exponents of the canonical `|den|` beyond which powering is refused.
const MAX_EXPONENT: i64 = 1 << 24;

fn filter_field() -> &'static PrimeField {
    static FIELD: OnceLock<PrimeField> = OnceLock::new();
    FIELD.get_or_init(PrimeField::default)
}

fn try_div(f: &Poly, d: &Poly) -> Option<Poly> {
    if !filter_field().may_divide(f, d) {
        return None;
    }
    f.div_exact(d)
}

#[derive(Clone, Debug)]
pub struct RationalExpr {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

/// A shared factor base for two denominators.
///
/// Elements are split against each other by exact division so that common
/// factors are shared, which keeps sums from growing their denominators.
/// Without a gcd the split can be incomplete; decomposition is therefore
/// verified, and callers fall back to the plain union of factors.
struct Base {
    factors: Vec<Poly>,
}

impl Base {
    /// Distinct factors of both lists, without splitting.
    fn plain(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> Base {
        let mut factors: Vec<Poly> = Vec::new();
        for (f, _) in a.iter().chain(b) {
            if !factors.contains(f) {
                factors.push(f.clone());
            }
        }
        Base { factors }
    }

    /// A refined base and the exponent vectors of `a` and `b` over it.
    fn common(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> (Base, Vec<u32>, Vec<u32>) {
        let mut base = Base { factors: Vec::new() };
        for (f, _) in a.iter().chain(b) {
            base.add(f.clone());
        }
        if let (Some(ea), Some(eb)) = (base.exponents(a), base.exponents(b)) {
            return (base, ea, eb);
        }
        let base = Base::plain(a, b);
        let ea = base.exponents(a).expect("plain base covers its own factors");
        let eb = base.exponents(b).expect("plain base covers its own factors");
        (base, ea, eb)
    }

    /// Adds `f`, splitting so that no element divides another.
    fn add(&mut self, f: Poly) {
        let mut pending = vec![f];
        'outer: while let Some(f) = pending.pop() {
            if f.as_constant().is_some() {
                continue;
            }
            for k in 0..self.factors.len() {
                let e = &self.factors[k];
                if *e == f {
                    continue 'outer;
                }
                if let Some(q) = try_div(&f, e) {
                    pending.push(normalized(&q));
                    continue 'outer;
                }
                if let Some(q) = try_div(e, &f) {
                    let rest = normalized(&q);
                    self.factors.swap_remove(k);
                    pending.push(rest);
                    pending.push(f);
                    continue 'outer;
                }
            }
            self.factors.push(f);
        }
    }

    /// Multiplicities of base elements in `f`, if greedy division by the
    /// base leaves a unit.
    fn decompose(&self, f: &Poly) -> Option<Vec<u32>> {
        let mut exps = vec![0u32; self.factors.len()];
        let mut rest = f.clone();
        for (k, e) in self.factors.iter().enumerate() {
            if rest.as_constant().is_some() {
                break;
            }
            while let Some(q) = try_div(&rest, e) {
                exps[k] += 1;
                rest = q;
            }
        }
        rest.as_constant().is_some().then_some(exps)
    }

    fn exponents(&self, den: &[(Poly, u32)]) -> Option<Vec<u32>> {
        let mut total = vec![0u32; self.factors.len()];
        for (f, k) in den {
            if let Some(idx) = self.factors.iter().position(|e| e == f) {
                total[idx] += k;
                continue;
            }
            for (t, e) in total.iter_mut().zip(self.decompose(f)?) {
                *t += e * k;
            }
        }
        Some(total)
    }

    fn product(&self, exps: &[u32]) -> Poly {
        let mut acc = Poly::one();
        for (f, &k) in self.factors.iter().zip(exps) {
            if k > 0 {
                acc = acc.mul(&f.pow(k));
            }
        }
        acc
    }

    fn into_list(self, exps: &[u32]) -> Vec<(Poly, u32)> {
        let mut out: Vec<(Poly, u32)> =
            self.factors.into_iter().zip(exps.iter().copied()).filter(|(_, k)| *k > 0).collect();
        out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
        out
    }
}

fn normalized(p: &Poly) -> Poly {
    p.normalize_parts().2
}

fn cmp_scalar(a: &Scalar, b: &Scalar) -> Ordering {
    a.re_num()
        .cmp(b.re_num())
        .then_with(|| a.im_num().cmp(b.im_num()))
        .then_with(|| a.den().cmp(b.den()))
}

/// A fixed total order on polynomials, used only to make factor lists canonical.
pub(crate) fn cmp_poly(a: &Poly, b: &Poly) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for ((ma, ca), (mb, cb)) in a.terms().iter().zip(b.terms()) {
            let o = ma.cmp(mb).then_with(|| cmp_scalar(ca, cb));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

impl RationalExpr {
    pub fn zero() -> RationalExpr {
        RationalExpr { num: Poly::zero(), den: Vec::new() }
    }

    pub fn one() -> RationalExpr {
        RationalExpr::from_poly(Poly::one())
    }

    pub fn int(v: i64) -> RationalExpr {
        RationalExpr::constant(Scalar::int(v))
    }

    pub fn constant(c: Scalar) -> RationalExpr {
        RationalExpr::from_poly(Poly::constant(c))
    }

    pub fn i() -> RationalExpr {
        RationalExpr::constant(Scalar::i())
    }

    pub fn from_poly(p: Poly) -> RationalExpr {
        RationalExpr { num: p, den: Vec::new() }
    }

    pub fn var(v: Var) -> RationalExpr {
        RationalExpr::from_poly(Poly::var(v))
    }

    /// `c · Π v^e`.
    pub fn monomial(c: Scalar, pairs: &[(Var, i32)]) -> RationalExpr {
        RationalExpr::from_poly(Poly::term(Mono::from_pairs(pairs), c))
    }

    /// `v^e`.
    pub fn var_pow(v: Var, e: i32) -> RationalExpr {
        RationalExpr::from_poly(Poly::term(Mono::var(v, e), Scalar::one()))
    }

    /// `q^{k/4} = s^k`.
    pub fn s_pow(k: i32) -> RationalExpr {
        RationalExpr::var_pow(Var::S, k)
    }

    /// `q^{k/2}`.
    pub fn q_half(k: i32) -> RationalExpr {
        RationalExpr::s_pow(2 * k)
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> RationalExpr {
        RationalExpr::s_pow(4 * k)
    }

    /// `num / den` in normal form.
    pub fn new(num: Poly, den: Poly) -> Result<RationalExpr> {
        RationalExpr::from_poly(num).div(&RationalExpr::from_poly(den))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    /// The expanded denominator.
    pub fn den(&self) -> Poly {
        let mut acc = Poly::one();
        for (f, k) in &self.den {
            acc = acc.mul(&f.pow(*k));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// The numerator when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.num.involves(v) || self.den.iter().any(|(f, _)| f.involves(v))
    }

    pub fn neg(&self) -> RationalExpr {
        RationalExpr { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> RationalExpr {
        if c.is_zero() {
            return RationalExpr::zero();
        }
        RationalExpr { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Removes every denominator factor that divides the numerator.
    fn cancel(mut self) -> RationalExpr {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for (f, k) in self.den.iter_mut() {
            while *k > 0 {
                match try_div(&self.num, f) {
                    Some(q) => {
                        self.num = q;
                        *k -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, k)| *k > 0);
        self
    }

    pub fn add(&self, o: &RationalExpr) -> RationalExpr {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_empty() && o.den.is_empty() {
            return RationalExpr::from_poly(self.num.add(&o.num));
        }
        if self.den == o.den {
            return RationalExpr { num: self.num.add(&o.num), den: self.den.clone() }.cancel();
        }
        let (base, ea, eb) = Base::common(&self.den, &o.den);
        let lcm: Vec<u32> = ea.iter().zip(&eb).map(|(a, b)| *a.max(b)).collect();
        let ca: Vec<u32> = lcm.iter().zip(&ea).map(|(l, a)| l - a).collect();
        let cb: Vec<u32> = lcm.iter().zip(&eb).map(|(l, b)| l - b).collect();
        let num = self.num.mul(&base.product(&ca)).add(&o.num.mul(&base.product(&cb)));
        RationalExpr { num, den: base.into_list(&lcm) }.cancel()
    }

    /// Sums many terms: numerators over identical denominators are added
    /// first, then the groups are combined pairwise.
    pub fn sum_all(terms: Vec<RationalExpr>) -> RationalExpr {
        let mut groups: Vec<RationalExpr> = Vec::new();
        for t in terms {
            if t.is_zero() {
                continue;
            }
            match groups.iter_mut().find(|g| g.den == t.den) {
                Some(g) => g.num = g.num.add(&t.num),
                None => groups.push(t),
            }
        }
        let mut layer: Vec<RationalExpr> = groups.into_iter().map(RationalExpr::cancel).collect();
        if layer.is_empty() {
            return RationalExpr::zero();
        }
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            let mut it = layer.into_iter();
            while let Some(a) = it.next() {
                next.push(match it.next() {
                    Some(b) => a.add(&b),
                    None => a,
                });
            }
            layer = next;
        }
        layer.pop().expect("nonempty")
    }

    pub fn sub(&self, o: &RationalExpr) -> RationalExpr {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalExpr) -> RationalExpr {
        if self.is_zero() || o.is_zero() {
            return RationalExpr::zero();
        }
        if self.den.is_empty() && o.den.is_empty() {
            return RationalExpr::from_poly(self.num.mul(&o.num));
        }
        let (base, ea, eb) = Base::common(&self.den, &o.den);
        let mut a_num = self.num.clone();
        let mut b_num = o.num.clone();
        let mut exps: Vec<u32> = ea.iter().zip(&eb).map(|(a, b)| a + b).collect();
        // cancel each side's numerator against the other side's denominator
        for (k, f) in base.factors.iter().enumerate() {
            let mut budget = eb[k];
            while budget > 0 {
                match try_div(&a_num, f) {
                    Some(q) => {
                        a_num = q;
                        budget -= 1;
                        exps[k] -= 1;
                    }
                    None => break,
                }
            }
            let mut budget = ea[k];
            while budget > 0 {
                match try_div(&b_num, f) {
                    Some(q) => {
                        b_num = q;
                        budget -= 1;
                        exps[k] -= 1;
                    }
                    None => break,
                }
            }
        }
        RationalExpr { num: a_num.mul(&b_num), den: base.into_list(&exps) }
    }

    pub fn inv(&self) -> Result<RationalExpr> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of the zero expression".into()));
        }
        let (c, m, p) = self.num.normalize_parts();
        let cinv = c.inv()?;
        let mut num = Poly::one();
        for (f, k) in &self.den {
            num = num.mul(&f.pow(*k));
        }
        let num = num.mul_term(&m.inv(), &cinv);
        let den = if p.as_constant().is_some() { Vec::new() } else { vec![(p, 1)] };
        Ok(RationalExpr { num, den })
    }

    pub fn div(&self, o: &RationalExpr) -> Result<RationalExpr> {
        if o.is_zero() {
            return Err(Error::DivisionByZero(format!("({self}) / 0")));
        }
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<RationalExpr> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let reach = self
            .num
            .exponent_bounds()
            .map(|(lo, hi)| (0..NVARS).map(|j| (lo.0[j] as i64).abs().max((hi.0[j] as i64).abs())).max().unwrap_or(0))
            .unwrap_or(0);
        if reach.saturating_mul(k as i64) > MAX_EXPONENT {
            return Err(Error::ExponentOverflow(format!("({self})^{k}")));
        }
        let k = k as u32;
        Ok(RationalExpr {
            num: self.num.pow(k),
            den: self.den.iter().map(|(f, e)| (f.clone(), e * k)).collect(),
        })
    }

    /// Exact equality: `f.num · g.den == g.num · f.den`, with the shared
    /// factors of the two denominators divided out first.
    pub fn equals(&self, o: &RationalExpr) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        let (base, ea, eb) = Base::common(&self.den, &o.den);
        let lcm: Vec<u32> = ea.iter().zip(&eb).map(|(a, b)| *a.max(b)).collect();
        let ca: Vec<u32> = lcm.iter().zip(&ea).map(|(l, a)| l - a).collect();
        let cb: Vec<u32> = lcm.iter().zip(&eb).map(|(l, b)| l - b).collect();
        self.num.mul(&base.product(&ca)) == o.num.mul(&base.product(&cb))
    }

    /// Simultaneous substitution of variables by expressions.
    pub fn substitute(&self, assignment: &[(Var, RationalExpr)]) -> Result<RationalExpr> {
        let monomial: Option<Vec<(Var, Scalar, Mono)>> = assignment
            .iter()
            .map(|(v, e)| match e.as_poly() {
                Some(p) if p.is_monomial() => {
                    let (m, c) = p.lead().expect("monomial").clone();
                    Some((*v, c, m))
                }
                _ => None,
            })
            .collect();
        match monomial {
            Some(map) => self.subst_monomial(&map),
            None => self.subst_general(assignment),
        }
    }

    /// Substitution `v ↦ c_v · m_v`.  Each value must be a nonzero monomial.
    pub fn subst_monomial(&self, map: &[(Var, Scalar, Mono)]) -> Result<RationalExpr> {
        let relevant: Vec<(Var, Scalar, Mono)> =
            map.iter().filter(|(v, _, _)| self.involves(*v)).cloned().collect();
        if relevant.is_empty() {
            return Ok(self.clone());
        }
        if let Some((v, _, _)) = relevant.iter().find(|(_, c, _)| c.is_zero()) {
            if self.den.iter().any(|(f, _)| f.involves(*v)) || self.num.terms().iter().any(|(m, _)| m.exp(*v) < 0) {
                return Err(Error::DivisionByZero(format!("{v} -> 0 in {self}")));
            }
        }
        let num = self.num.subst_monomial(&relevant);
        let mut out = RationalExpr::from_poly(num);
        let mut den_acc = RationalExpr::one();
        for (f, k) in &self.den {
            let img = f.subst_monomial(&relevant);
            if img.is_zero() {
                return Err(Error::DenominatorVanishes { factor: f.to_string() });
            }
            let (c, m, p) = img.normalize_parts();
            let scale = RationalExpr::from_poly(Poly::term(m, c));
            let factor = if p.as_constant().is_some() {
                scale
            } else {
                scale.mul(&RationalExpr { num: Poly::one(), den: vec![(p, 1)] }.inv()?)
            };
            den_acc = den_acc.mul(&factor.pow(*k as i32)?);
        }
        if !den_acc.is_one() {
            out = out.div(&den_acc)?;
        }
        Ok(out)
    }

    fn subst_general(&self, assignment: &[(Var, RationalExpr)]) -> Result<RationalExpr> {
        let eval_poly = |p: &Poly| -> Result<RationalExpr> {
            let mut cache: BTreeMap<(usize, i32), RationalExpr> = BTreeMap::new();
            let mut acc = RationalExpr::zero();
            for (m, c) in p.terms() {
                let mut rest = *m;
                let mut t = RationalExpr::constant(c.clone());
                for (k, (v, val)) in assignment.iter().enumerate() {
                    let e = m.exp(*v);
                    if e == 0 {
                        continue;
                    }
                    rest.0[v.index()] = 0;
                    let pw = match cache.get(&(k, e)) {
                        Some(pw) => pw.clone(),
                        None => {
                            let pw = val.pow(e)?;
                            cache.insert((k, e), pw.clone());
                            pw
                        }
                    };
                    t = t.mul(&pw);
                }
                acc = acc.add(&t.mul(&RationalExpr::from_poly(Poly::term(rest, Scalar::one()))));
            }
            Ok(acc)
        };
        let num = eval_poly(&self.num)?;
        let mut den = RationalExpr::one();
        for (f, k) in &self.den {
            let img = eval_poly(f)?;
            if img.is_zero() {
                return Err(Error::DenominatorVanishes { factor: f.to_string() });
            }
            den = den.mul(&img.pow(*k as i32)?);
        }
        num.div(&den)
    }

    /// Image under `v ↦ 1/v`.
    pub fn invert_var(&self, v: Var) -> RationalExpr {
        self.subst_monomial(&[(v, Scalar::one(), Mono::var(v, -1))])
            .expect("inversion keeps denominators nonzero")
    }

    /// Evaluates in a prime field.  A vanishing denominator is reported as
    /// [`Error::Resample`].
    pub fn eval_mod(&self, field: &PrimeField, point: &[u64; NVARS]) -> Result<u64> {
        let n = field.eval_poly(&self.num, point)?;
        let mut d = 1u64;
        for (f, k) in &self.den {
            let v = field.eval_poly(f, point)?;
            d = field.mul(d, field.pow(v, *k as u64));
        }
        let dinv = field.inv(d).ok_or_else(|| Error::Resample("denominator vanishes at the sample point".into()))?;
        Ok(field.mul(n, dinv))
    }

    /// A bound on the total degree of `num` and `den` after clearing monomial
    /// content, for Schwartz-Zippel repetition counts.
    pub fn degree_bound(&self) -> u64 {
        self.num.degree_span() + self.den.iter().map(|(f, k)| f.degree_span() * *k as u64).sum::<u64>()
    }

    /// True when no denominator factor involves `v` once all factors that
    /// divide the numerator have been removed.
    pub fn is_polynomial_in(&self, v: Var) -> bool {
        let mut with_v = Poly::one();
        for (f, k) in &self.den {
            if f.involves(v) {
                with_v = with_v.mul(&f.pow(*k));
            }
        }
        with_v.is_one() || self.num.div_exact(&with_v).is_some()
    }

    /// Coefficients of the powers of `v`, provided the expression is a
    /// Laurent polynomial in `v`.
    pub fn coefficients_in(&self, v: Var) -> Result<BTreeMap<i32, RationalExpr>> {
        let mut num = self.num.clone();
        let mut den = Vec::new();
        for (f, k) in &self.den {
            if f.involves(v) {
                let pk = f.pow(*k);
                num = num
                    .div_exact(&pk)
                    .ok_or_else(|| Error::Precondition(format!("pole in {v}: factor {f}")))?;
            } else {
                den.push((f.clone(), *k));
            }
        }
        Ok(num
            .coefficients_in(v)
            .into_iter()
            .map(|(e, c)| (e, RationalExpr { num: c, den: den.clone() }.cancel()))
            .filter(|(_, c)| !c.is_zero())
            .collect())
    }
}

impl PartialEq for RationalExpr {
    fn eq(&self, o: &RationalExpr) -> bool {
        self.equals(o)
    }
}

impl fmt::Display for RationalExpr {
    /// Canonical text: `num` or `(num)/(den)` with both sides expanded.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den())
        }
    }
}

impl From<Poly> for RationalExpr {
    fn from(p: Poly) -> Self {
        RationalExpr::from_poly(p)
    }
}

impl From<i64> for RationalExpr {
    fn from(v: i64) -> Self {
        RationalExpr::int(v)
    }
}

impl From<Scalar> for RationalExpr {
    fn from(c: Scalar) -> Self {
        RationalExpr::constant(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl std::ops::$tr<&RationalExpr> for &RationalExpr {
            type Output = RationalExpr;
            fn $method(self, o: &RationalExpr) -> RationalExpr {
                $body(self, o)
            }
        }
        impl std::ops::$tr<RationalExpr> for RationalExpr {
            type Output = RationalExpr;
            fn $method(self, o: RationalExpr) -> RationalExpr {
                $body(&self, &o)
            }
        }
        impl std::ops::$tr<&RationalExpr> for RationalExpr {
            type Output = RationalExpr;
            fn $method(self, o: &RationalExpr) -> RationalExpr {
                $body(&self, o)
            }
        }
        impl std::ops::$tr<RationalExpr> for &RationalExpr {
            type Output = RationalExpr;
            fn $method(self, o: RationalExpr) -> RationalExpr {
                $body(self, &o)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RationalExpr, b: &RationalExpr| a.add(b));
forward_binop!(Sub, sub, |a: &RationalExpr, b: &RationalExpr| a.sub(b));
forward_binop!(Mul, mul, |a: &RationalExpr, b: &RationalExpr| a.mul(b));
// Panics on a zero divisor; use `RationalExpr::div` for the fallible form.
forward_binop!(Div, div, |a: &RationalExpr, b: &RationalExpr| a.div(b).expect("division by the zero expression"));

impl std::ops::Neg for RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr::neg(&self)
    }
}

impl std::ops::Neg for &RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr::neg(self)
    }
}

impl std::iter::Sum for RationalExpr {
    fn sum<I: Iterator<Item = RationalExpr>>(iter: I) -> RationalExpr {
        RationalExpr::sum_all(iter.collect())
    }
}

impl std::iter::Product for RationalExpr {
    fn product<I: Iterator<Item = RationalExpr>>(iter: I) -> RationalExpr {
        iter.fold(RationalExpr::one(), |a, b| a.mul(&b))
    }
}
