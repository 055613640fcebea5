//! The verification suites as independent jobs, and a runner that executes
//! them sequentially or on the rayon pool.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::askey_wilson as aw;
use crate::check::{CheckRecord, Checker};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::qops;
use crate::skein::{self, Convention};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hecke,
    Factorize,
    Eigen,
    Recurrence,
    Connection,
    Blg,
    Kalnins,
    Dhat,
    Prop,
    Sym,
    Compat,
    Correspondence,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Hecke,
        Suite::Factorize,
        Suite::Eigen,
        Suite::Recurrence,
        Suite::Connection,
        Suite::Blg,
        Suite::Kalnins,
        Suite::Dhat,
        Suite::Prop,
        Suite::Sym,
        Suite::Compat,
        Suite::Correspondence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hecke => "hecke",
            Suite::Factorize => "factorize",
            Suite::Eigen => "eigen",
            Suite::Recurrence => "recurrence",
            Suite::Connection => "connection",
            Suite::Blg => "blg",
            Suite::Kalnins => "kalnins",
            Suite::Dhat => "dhat",
            Suite::Prop => "prop",
            Suite::Sym => "sym",
            Suite::Compat => "compat",
            Suite::Correspondence => "correspondence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite '{s}'")))
    }
}

/// Sweep bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest polynomial degree touched by any check.
    pub max_n: u32,
    /// Largest `i + j + k` in the correspondence sweep.
    pub triple_bound: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_n: 6, triple_bound: 10 }
    }
}

type Task = Box<dyn Fn(&Checker) -> Vec<CheckRecord> + Send + Sync>;

/// One independent unit of work.
pub struct Job {
    pub suite: Suite,
    pub label: String,
    task: Task,
}

impl Job {
    fn new(suite: Suite, label: impl Into<String>, f: impl Fn(&Checker) -> Vec<CheckRecord> + Send + Sync + 'static) -> Job {
        Job { suite, label: label.into(), task: Box::new(f) }
    }

    fn one(suite: Suite, label: impl Into<String>, f: impl Fn(&Checker) -> CheckRecord + Send + Sync + 'static) -> Job {
        Job::new(suite, label, move |c| vec![f(c)])
    }

    pub fn run(&self, checker: &Checker) -> Vec<CheckRecord> {
        (self.task)(checker)
    }
}

fn or_error(suite: Suite, case: String, r: Result<Vec<CheckRecord>>) -> Vec<CheckRecord> {
    r.unwrap_or_else(|e| vec![CheckRecord::new(suite.name(), case).error(e)])
}

/// The jobs of one suite.  Checks that reach degree `n + 1` run for
/// `n < max_n`, so no polynomial above `max_n + 1` is built.
pub fn jobs(suite: Suite, b: Bounds) -> Vec<Job> {
    let n_all = 0..=b.max_n;
    let n_below = 0..b.max_n;
    match suite {
        Suite::Hecke => vec![Job::new(suite, "relations", qops::verify_hecke_relations)],
        Suite::Factorize => vec![Job::new(suite, "factorizations", qops::verify_dhat_factorizations)],
        Suite::Eigen => n_all.map(|n| Job::one(suite, format!("n={n}"), move |c| aw::verify_eigen(n, c))).collect(),
        Suite::Recurrence => {
            let mut out: Vec<Job> = n_all
                .clone()
                .map(|n| Job::one(suite, format!("three-term n={n}"), move |c| aw::verify_three_term(n, c)))
                .collect();
            out.extend(n_all.clone().map(|n| Job::one(suite, format!("star n={n}"), move |c| aw::verify_star_is_general(n, c))));
            out.extend(n_all.map(|n| Job::one(suite, format!("shape n={n}"), move |c| aw::verify_aw_shape(n, 3, c))));
            out
        }
        Suite::Connection => n_all.map(|n| Job::new(suite, format!("n={n}"), move |c| aw::verify_connection(n, c))).collect(),
        Suite::Blg => [false, true]
            .into_iter()
            .map(|tr| Job::one(suite, format!("formal {tr}"), move |c| aw::verify_beta_lambda_gamma(aw::NIndex::Formal, tr, c)))
            .collect(),
        Suite::Kalnins => n_below
            .map(|n| Job::new(suite, format!("n={n}"), move |c| aw::verify_kalnins_actions(n, &aw::AWParams::symbolic(), c)))
            .collect(),
        Suite::Dhat => n_below.map(|n| Job::new(suite, format!("n={n}"), move |c| aw::verify_dhat_on_aw(n, c))).collect(),
        Suite::Prop => {
            let mut out = Vec::new();
            for n in n_below.clone() {
                for a in 1..=6u8 {
                    out.push(Job::one(suite, format!("k{a} n={n}"), move |c| aw::verify_prop_action(a, n, c)));
                }
                out.push(Job::one(suite, format!("nu n={n}"), move |c| aw::verify_nu_ratios(n, c)));
            }
            for a in 1..=6u8 {
                out.push(Job::one(suite, format!("k{a} formal"), move |c| aw::verify_modes_agree(a, c)));
            }
            out
        }
        Suite::Sym => (1..=6u8)
            .map(|a| {
                Job::new(suite, format!("k{a}"), move |c| {
                    or_error(suite, format!("k{a}"), qops::verify_symmetric_preservation(a, 4, c))
                })
            })
            .collect(),
        Suite::Compat => (1..=6u8)
            .map(|a| {
                Job::new(suite, format!("k{a}"), move |c| {
                    let tests = qops::default_test_functions();
                    or_error(suite, format!("k{a}"), qops::verify_mult_compatibility(a, &tests, c))
                })
            })
            .collect(),
        Suite::Correspondence => {
            let mut out = Vec::new();
            for a in 1..=6u8 {
                for t in skein::enumerate_admissible(b.triple_bound) {
                    out.push(Job::one(suite, format!("k{a} {t}"), move |c| {
                        skein::correspondence_record(a, t, Convention::Target, c)
                    }));
                }
                out.push(Job::one(suite, format!("k{a} generic"), move |c| skein::verify_generic_correspondence(a, c)));
            }
            out
        }
    }
}

/// Runs the selected suites; records come back sorted by suite and case.
/// With `timings` each record carries the wall time of the job producing it.
pub fn run(suites: &[Suite], bounds: Bounds, checker: &Checker, exec: Exec, timings: bool) -> Vec<CheckRecord> {
    let all: Vec<Job> = suites.iter().flat_map(|&s| jobs(s, bounds)).collect();
    let mut out = exec.flat_map(&all, |job| {
        let start = Instant::now();
        let mut recs = job.run(checker);
        if timings {
            let ms = start.elapsed().as_millis() as u64;
            for r in &mut recs {
                r.elapsed_ms = Some(ms);
            }
        }
        recs
    });
    out.sort_by(|a, b| {
        let ka = (suite_rank(&a.suite), &a.case);
        let kb = (suite_rank(&b.suite), &b.case);
        ka.cmp(&kb)
    });
    out
}

fn suite_rank(name: &str) -> usize {
    Suite::ALL.iter().position(|s| s.name() == name).unwrap_or(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_run_is_ordered_and_green() {
        let b = Bounds { max_n: 2, triple_bound: 2 };
        let recs = run(&[Suite::Eigen, Suite::Hecke], b, &Checker::Exact, Exec::default(), false);
        assert_eq!(recs.len(), 4 + 3);
        assert_eq!(recs[0].suite, "hecke");
        assert!(recs.iter().all(|r| r.passed()));
    }
}
