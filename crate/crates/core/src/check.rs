//! Equality deciders and verification records.
//!
//! A [`Checker`] decides `f == g` either exactly (cross-multiplication) or
//! by evaluation at random points of a prime field, with the number of
//! points chosen from a degree bound so the false-positive probability is
//! below `2^-64`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{PrimeField, RationalExpr, NVARS};

/// Target bits of confidence in random mode.
const CONFIDENCE_BITS: f64 = 64.0;
const MAX_RESAMPLES: usize = 32;

#[derive(Clone, Debug, Default)]
pub enum Checker {
    #[default]
    Exact,
    Random { field: PrimeField, seed: u64 },
}

impl Checker {
    pub fn random(prime: u64, seed: u64) -> Result<Checker> {
        Ok(Checker::Random { field: PrimeField::new(prime)?, seed })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Checker::Exact)
    }

    /// Decides `a == b`.  `salt` names the check so that random points are
    /// reproducible per check, independent of scheduling.
    pub fn equal(&self, a: &RationalExpr, b: &RationalExpr, salt: &str) -> Result<bool> {
        match self {
            Checker::Exact => Ok(a.equals(b)),
            Checker::Random { field, seed } => {
                let degree = (a.degree_bound() + b.degree_bound()).max(1);
                let per_point = (field.modulus() as f64 / degree as f64).log2();
                if per_point < 8.0 {
                    // the prime is too small for this degree; fall back
                    return Ok(a.equals(b));
                }
                let reps = (CONFIDENCE_BITS / per_point).ceil() as usize;
                let mut rng = ChaCha20Rng::seed_from_u64(mix(*seed, salt));
                let mut done = 0;
                let mut misses = 0;
                while done < reps {
                    let mut point = [0u64; NVARS];
                    for slot in point.iter_mut() {
                        *slot = rng.gen_range(1..field.modulus());
                    }
                    match (a.eval_mod(field, &point), b.eval_mod(field, &point)) {
                        (Ok(x), Ok(y)) => {
                            if x != y {
                                return Ok(false);
                            }
                            done += 1;
                        }
                        (Err(Error::Resample(_)), _) | (_, Err(Error::Resample(_))) => {
                            misses += 1;
                            if misses > MAX_RESAMPLES {
                                return Ok(a.equals(b));
                            }
                        }
                        (Err(e), _) | (_, Err(e)) => return Err(e),
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn is_zero(&self, a: &RationalExpr, salt: &str) -> Result<bool> {
        if a.is_zero() {
            return Ok(true);
        }
        self.equal(a, &RationalExpr::zero(), salt)
    }
}

/// FNV-1a over the salt, folded with the seed.
fn mix(seed: u64, salt: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64 ^ seed;
    for b in salt.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One verification outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub case: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub note: Option<String>,
    pub elapsed_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(suite: &str, case: impl Into<String>) -> CheckRecord {
        CheckRecord {
            suite: suite.to_owned(),
            case: case.into(),
            params: BTreeMap::new(),
            status: Status::Pass,
            lhs: None,
            rhs: None,
            note: None,
            elapsed_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> CheckRecord {
        self.params.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> CheckRecord {
        self.note = Some(note.into());
        self
    }

    /// Marks the record as passed or failed; the two sides are kept only
    /// on failure.
    pub fn outcome(mut self, ok: bool, lhs: impl FnOnce() -> String, rhs: impl FnOnce() -> String) -> CheckRecord {
        if ok {
            self.status = Status::Pass;
        } else {
            self.status = Status::Fail;
            self.lhs = Some(lhs());
            self.rhs = Some(rhs());
        }
        self
    }

    /// Records a comparison of two expressions.
    pub fn compare(self, checker: &Checker, lhs: &RationalExpr, rhs: &RationalExpr) -> CheckRecord {
        let salt = format!("{}/{}", self.suite, self.case);
        match checker.equal(lhs, rhs, &salt) {
            Ok(ok) => self.outcome(ok, || lhs.to_string(), || rhs.to_string()),
            Err(e) => self.error(e),
        }
    }

    pub fn error(mut self, e: Error) -> CheckRecord {
        self.status = Status::Fail;
        self.note = Some(e.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Sort key used before emission.
    pub fn sort_key(&self) -> (String, String) {
        (self.suite.clone(), self.case.clone())
    }
}

/// Folds several sub-comparisons into a single record, keeping the first
/// failing pair.
pub struct Tally {
    record: CheckRecord,
    failed: bool,
}

impl Tally {
    pub fn new(record: CheckRecord) -> Tally {
        Tally { record, failed: false }
    }

    pub fn compare(&mut self, checker: &Checker, what: &str, lhs: &RationalExpr, rhs: &RationalExpr) {
        if self.failed {
            return;
        }
        let salt = format!("{}/{}/{}", self.record.suite, self.record.case, what);
        match checker.equal(lhs, rhs, &salt) {
            Ok(true) => {}
            Ok(false) => {
                self.failed = true;
                self.record.status = Status::Fail;
                self.record.lhs = Some(lhs.to_string());
                self.record.rhs = Some(rhs.to_string());
                self.record.note = Some(what.to_owned());
            }
            Err(e) => self.error(e),
        }
    }

    pub fn require(&mut self, ok: bool, what: &str) {
        if !self.failed && !ok {
            self.failed = true;
            self.record.status = Status::Fail;
            self.record.note = Some(what.to_owned());
        }
    }

    pub fn error(&mut self, e: Error) {
        if !self.failed {
            self.failed = true;
            self.record.status = Status::Fail;
            self.record.note = Some(e.to_string());
        }
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn finish(self) -> CheckRecord {
        self.record
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_expr, DEFAULT_PRIME};

    #[test]
    fn random_and_exact_agree() {
        let a = parse_expr("(1-q^2)/(1-q)").unwrap();
        let b = parse_expr("1+q").unwrap();
        let c = parse_expr("1+q+x").unwrap();
        let r = Checker::random(DEFAULT_PRIME, 7).unwrap();
        for ch in [Checker::Exact, r] {
            assert!(ch.equal(&a, &b, "t").unwrap());
            assert!(!ch.equal(&a, &c, "t").unwrap());
        }
    }

    #[test]
    fn record_keeps_sides_only_on_failure() {
        let one = RationalExpr::one();
        let r = CheckRecord::new("s", "c").compare(&Checker::Exact, &one, &one);
        assert!(r.passed() && r.lhs.is_none());
        let r = CheckRecord::new("s", "c").compare(&Checker::Exact, &one, &RationalExpr::zero());
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.lhs.as_deref(), Some("1"));
    }
}
