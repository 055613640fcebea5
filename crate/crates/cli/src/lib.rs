//! Configuration, commands and report emission behind the `g2skein` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use g2skein_core::askey_wilson::{aw_general, aw_star, pbar_action, AWParams, ActionMode, NIndex};
use g2skein_core::check::{CheckRecord, Checker, Status};
use g2skein_core::exact::{parse_expr, DEFAULT_PRIME};
use g2skein_core::par::Exec;
use g2skein_core::qops::perturbed_t0_relation;
use g2skein_core::skein::{curve_action_skein, SkeinVector, Triple};
use g2skein_core::suites::{self, Bounds, Suite};

/// Environment variable naming the default directory for report files.
pub const OUT_DIR_ENV: &str = "G2SKEIN_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub max_n: u32,
    pub triple_bound: u32,
    pub mode: Mode,
    pub prime: Option<u64>,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        let b = Bounds::default();
        RunConfig {
            max_n: b.max_n,
            triple_bound: b.triple_bound,
            mode: Mode::Exact,
            prime: None,
            seed: 0,
            suites: Suite::ALL.to_vec(),
            output: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    pub fn bounds(&self) -> Bounds {
        Bounds { max_n: self.max_n, triple_bound: self.triple_bound }
    }

    /// Builds the equality decider, rejecting a bad modulus up front.
    pub fn checker(&self) -> anyhow::Result<Checker> {
        match self.mode {
            Mode::Exact => {
                if self.prime.is_some() {
                    bail!("--prime only applies to --mode random");
                }
                Ok(Checker::Exact)
            }
            Mode::Random => Ok(Checker::random(self.prime.unwrap_or(DEFAULT_PRIME), self.seed)?),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Summary {
    pub fn of(records: &[CheckRecord]) -> Summary {
        let mut s = Summary::default();
        for r in records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skip => s.skip += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            0
        } else {
            1
        }
    }
}

/// Extra knobs of `verify` that are not part of the recorded config.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub exec: Exec,
    pub timings: bool,
    /// Appends a check that is known to fail (perturbed `T0`).
    pub inject_failure: bool,
}

pub fn cmd_verify(config: &RunConfig, opts: RunOptions) -> anyhow::Result<Report> {
    let checker = config.checker()?;
    let mut records = suites::run(&config.suites, config.bounds(), &checker, opts.exec, opts.timings);
    if opts.inject_failure {
        let mut r = perturbed_t0_relation(&checker);
        r.case = format!("injected {}", r.case);
        records.push(r);
    }
    let summary = Summary::of(&records);
    Ok(Report { config: config.clone(), records, summary })
}

pub fn emit_report(r: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => text_table(r),
    }
}

fn text_table(r: &Report) -> String {
    let timed = r.records.iter().any(|x| x.elapsed_ms.is_some());
    let sw = r.records.iter().map(|x| x.suite.len()).max().unwrap_or(5).max(5);
    let cw = r.records.iter().map(|x| x.case.len()).max().unwrap_or(4).max(4);
    let mut out = String::new();
    let _ = write!(out, "{:<sw$}  {:<cw$}  status", "suite", "case");
    if timed {
        out.push_str("        ms");
    }
    out.push('\n');
    for x in &r.records {
        let status = match x.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        };
        let mut line = format!("{:<sw$}  {:<cw$}  {status:<6}", x.suite, x.case);
        if let Some(ms) = x.elapsed_ms {
            let _ = write!(line, "  {ms:>8}");
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if let Some(n) = &x.note {
            let _ = writeln!(out, "    note: {n}");
        }
        if x.status == Status::Fail {
            let _ = writeln!(out, "    lhs: {}", x.lhs.as_deref().unwrap_or("-"));
            let _ = writeln!(out, "    rhs: {}", x.rhs.as_deref().unwrap_or("-"));
        }
    }
    let s = r.summary;
    let _ = writeln!(out, "pass {}  fail {}  skip {}", s.pass, s.fail, s.skip);
    out
}

/// Parses `a,b,c,d` into Askey–Wilson parameters.
pub fn parse_params(src: &str) -> anyhow::Result<AWParams> {
    let parts: Vec<&str> = src.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        bail!("expected four comma-separated parameters, got {}", parts.len());
    }
    let mut vals = Vec::with_capacity(4);
    for p in parts {
        vals.push(parse_expr(p).with_context(|| format!("parameter '{p}'"))?);
    }
    let [a, b, c, d]: [_; 4] = vals.try_into().expect("four values");
    Ok(AWParams::new(a, b, c, d))
}

/// `p_n` at the given parameters, or the reduced `P̄_n` when `params` is
/// absent.
pub fn cmd_aw(n: u32, params: Option<&AWParams>) -> anyhow::Result<String> {
    let p = match params {
        None => aw_star(n),
        Some(p) => aw_general(n, p)?,
    };
    Ok(p.to_string())
}

/// The term list of curve `k_a` on `P̄_n`; `n = None` keeps `n` formal.
pub fn cmd_act(curve: u8, n: Option<u32>, mode: ActionMode) -> anyhow::Result<String> {
    let idx = n.map_or(NIndex::Formal, NIndex::At);
    Ok(pbar_action(curve, mode, idx)?.to_string())
}

pub fn cmd_skein(curve: u8, t: Triple) -> anyhow::Result<String> {
    if let Some(why) = t.violation() {
        bail!("{t} is not admissible: {why}");
    }
    Ok(curve_action_skein(curve, &SkeinVector::basis(t)?)?.to_string())
}

/// Where a report goes when no explicit path is given.
pub fn default_report_path(format: OutputFormat) -> Option<PathBuf> {
    let dir = std::env::var_os(OUT_DIR_ENV)?;
    let ext = match format {
        OutputFormat::Json => "json",
        OutputFormat::Text => "txt",
    };
    Some(PathBuf::from(dir).join(format!("g2skein-report.{ext}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts_records() {
        let cfg = RunConfig { suites: vec![Suite::Hecke], ..RunConfig::default() };
        let r = cmd_verify(&cfg, RunOptions { inject_failure: true, ..Default::default() }).unwrap();
        assert_eq!(r.summary, Summary { pass: 4, fail: 1, skip: 0 });
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn params_need_four_entries() {
        assert!(parse_params("1,2,3").is_err());
        assert!(parse_params("a, b, c, q^(1/2)").is_ok());
        assert!(parse_params("a,b,c,)").is_err());
    }
}
