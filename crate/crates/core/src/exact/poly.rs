//! Sparse multivariate Laurent polynomials over ℚ(i).

use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;

use super::mono::{Mono, Var, NVARS};
use super::scalar::Scalar;

/// Terms are kept sorted by decreasing graded-lex monomial, without zero
/// coefficients, so the leading term is `terms[0]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Mono, Scalar)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::term(Mono::ONE, c)
    }

    pub fn term(m: Mono, c: Scalar) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(Mono::var(v, 1), Scalar::one())
    }

    /// Collects arbitrary (possibly repeated) terms into normal form.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Scalar)>>(it: I) -> Poly {
        let mut acc: FxHashMap<Mono, Scalar> = FxHashMap::default();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(slot) => *slot = slot.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: FxHashMap<Mono, Scalar>) -> Poly {
        let mut terms: Vec<(Mono, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Scalar)] {
        &self.terms
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The value if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn lead(&self) -> Option<&(Mono, Scalar)> {
        self.terms.first()
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect() }
    }

    /// Multiplication by `c·m`; graded lex is translation invariant so the
    /// order is preserved.
    pub fn mul_term(&self, m: &Mono, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.mul(c))).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: FxHashMap<Mono, Scalar> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * 2 + o.terms.len() * 2, Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(slot) => *slot = slot.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly::from_map(acc)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Component-wise minimum and maximum exponents over all terms.
    pub fn exponent_bounds(&self) -> Option<(Mono, Mono)> {
        let mut it = self.terms.iter();
        let (first, _) = it.next()?;
        let (mut lo, mut hi) = (*first, *first);
        for (m, _) in it {
            lo = Mono::min(&lo, m);
            hi = Mono::max(&hi, m);
        }
        Some((lo, hi))
    }

    /// Spread of total degrees, used as a Schwartz-Zippel degree bound.
    pub fn degree_span(&self) -> u64 {
        match self.exponent_bounds() {
            None => 0,
            Some((lo, hi)) => {
                (0..NVARS).map(|k| (hi.0[k] as i64 - lo.0[k] as i64) as u64).sum()
            }
        }
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) != 0)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.iter().copied().filter(|&v| self.involves(v)).collect()
    }

    /// Splits off the monomial gcd: `self = m · rest`.
    pub fn monomial_content(&self) -> Mono {
        self.exponent_bounds().map(|(lo, _)| lo).unwrap_or(Mono::ONE)
    }

    /// Writes `self = c · m · p` with `p` free of monomial content and with
    /// leading coefficient one.  Returns `(c, m, p)`.
    pub fn normalize_parts(&self) -> (Scalar, Mono, Poly) {
        assert!(!self.is_zero(), "normalizing the zero polynomial");
        let m = self.monomial_content();
        let c = self.terms[0].1.clone();
        let cinv = c.inv().expect("nonzero lead");
        let inv_m = m.inv();
        let p = Poly { terms: self.terms.iter().map(|(k, a)| (k.mul(&inv_m), a.mul(&cinv))).collect() };
        (c, m, p)
    }

    /// Applies `v ↦ c_v · m_v` for the listed variables.  Exponents may be
    /// negative, so `c_v` must be nonzero when needed.
    pub fn subst_monomial(&self, map: &[(Var, Scalar, Mono)]) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut pow_cache: Vec<FxHashMap<i32, Scalar>> = vec![FxHashMap::default(); map.len()];
        let mut acc: FxHashMap<Mono, Scalar> = FxHashMap::with_capacity_and_hasher(self.terms.len(), Default::default());
        for (m, c) in &self.terms {
            let mut nm = *m;
            let mut nc = c.clone();
            for (k, (v, cv, mv)) in map.iter().enumerate() {
                let e = m.exp(*v);
                if e == 0 {
                    continue;
                }
                nm.0[v.index()] = 0;
                nm = nm.mul(&mv.pow(e).expect("monomial exponent overflow"));
                if !cv.is_one() {
                    let f = pow_cache[k]
                        .entry(e)
                        .or_insert_with(|| cv.pow(e).expect("substituting zero for a variable with negative exponent"));
                    nc = nc.mul(f);
                }
            }
            match acc.get_mut(&nm) {
                Some(slot) => *slot = slot.add(&nc),
                None => {
                    acc.insert(nm, nc);
                }
            }
        }
        Poly::from_map(acc)
    }

    /// Coefficients with respect to `v`: `self = Σ_e coeff_e · v^e`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<i32, Poly> {
        let mut buckets: BTreeMap<i32, Vec<(Mono, Scalar)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            rest.0[v.index()] = 0;
            buckets.entry(m.exp(v)).or_default().push((rest, c.clone()));
        }
        // the order inside each bucket is already decreasing
        buckets.into_iter().map(|(e, terms)| (e, Poly { terms })).collect()
    }

    /// Exact division.  `None` when `d` does not divide `self` as Laurent
    /// polynomials.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dm, dc) = d.terms[0].clone();
        let dcinv = dc.inv().expect("nonzero");
        if d.terms.len() == 1 {
            return Some(self.mul_term(&dm.inv(), &dcinv));
        }
        let (flo, fhi) = self.exponent_bounds()?;
        let (dlo, dhi) = d.exponent_bounds()?;
        let qlo = flo.div(&dlo);
        let qhi = fhi.div(&dhi);
        if (0..NVARS).any(|k| qlo.0[k] > qhi.0[k]) {
            return None;
        }
        let mut rem: BTreeMap<Mono, Scalar> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, Scalar)> = Vec::new();
        while let Some((lm, lc)) = rem.pop_last() {
            let qm = lm.div(&dm);
            if (0..NVARS).any(|k| qm.0[k] < qlo.0[k] || qm.0[k] > qhi.0[k]) {
                return None;
            }
            let qc = lc.mul(&dcinv);
            for (m, c) in &d.terms[1..] {
                let key = m.mul(&qm);
                let delta = c.mul(&qc).neg();
                match rem.get_mut(&key) {
                    Some(slot) => {
                        *slot = slot.add(&delta);
                        if slot.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Symmetric image under `v ↦ 1/v`.
    pub fn invert_var(&self, v: Var) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut nm = *m;
            nm.0[v.index()] = -nm.0[v.index()];
            (nm, c.clone())
        }))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_atomic() && c.display_sign() < 0;
            let mag = if negative { c.neg() } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let coeff_str = if mag.is_atomic() { mag.to_string() } else { format!("({mag})") };
            if m.is_one() {
                f.write_str(&coeff_str)?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff_str}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(Var::X)
    }

    #[test]
    fn difference_of_squares() {
        let xi = Poly::term(Mono::var(Var::X, -1), Scalar::one());
        let p = x().add(&xi).mul(&x().sub(&xi));
        assert_eq!(p.to_string(), "x^2 - x^-2");
    }

    #[test]
    fn exact_division_and_refusal() {
        let a = x().add(&Poly::var(Var::S)).pow(3);
        let b = x().sub(&Poly::one());
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert!(a.div_exact(&b).is_none());
        assert!(prod.add(&Poly::one()).div_exact(&b).is_none());
    }

    #[test]
    fn normalization_splits_content() {
        let p = Poly::from_terms([
            (Mono::from_pairs(&[(Var::X0, 0)]), Scalar::int(-3)),
            (Mono::from_pairs(&[(Var::X0, -2), (Var::S, 4)]), Scalar::int(3)),
        ]);
        let (c, m, rest) = p.normalize_parts();
        assert_eq!(m, Mono::var(Var::X0, -2));
        assert_eq!(rest.lead().unwrap().1, Scalar::one());
        assert_eq!(rest.mul_term(&m, &c), p);
    }
}
