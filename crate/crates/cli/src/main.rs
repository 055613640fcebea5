use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use g2skein_cli::*;
use g2skein_core::askey_wilson::ActionMode;
use g2skein_core::par::Exec;
use g2skein_core::skein::Triple;
use g2skein_core::suites::Suite;

#[derive(Parser)]
#[command(name = "g2skein", version, about = "Exact checks for the genus-two skein / Askey-Wilson correspondence")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and emit a report.
    Verify(VerifyArgs),
    /// Print an Askey-Wilson polynomial.
    Aw {
        n: u32,
        /// The reduced polynomial (the default when no parameters are given).
        #[arg(long, conflicts_with = "params")]
        star: bool,
        /// Parameters `a,b,c,d`, e.g. `a,b,q^(1/2),-1`.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
    },
    /// Print the shift-labelled action of a curve on the reduced polynomial.
    Act {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        curve: u8,
        /// Degree; omit to keep it formal.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = CliActionMode::Corollary)]
        mode: CliActionMode,
    },
    /// Print the action of a curve on a θ-link.
    Skein {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        curve: u8,
        #[arg(allow_negative_numbers = true)]
        i: i64,
        #[arg(allow_negative_numbers = true)]
        j: i64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    max_n: u32,
    #[arg(long, default_value_t = 10)]
    triple_bound: u32,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Modulus for random mode; must be a prime ≡ 1 (mod 4).
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated suites; empty selects none.  Default: all.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    suites: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Report file.  Defaults to a file in $G2SKEIN_OUT_DIR when set,
    /// otherwise stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record per-job wall time (makes reports run-dependent).
    #[arg(long)]
    timings: bool,
    /// Run jobs one after another.
    #[arg(long)]
    sequential: bool,
    #[arg(long, hide = true)]
    inject_failure: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliActionMode {
    Prop,
    Corollary,
}

fn verify(a: VerifyArgs) -> anyhow::Result<i32> {
    let suites = match a.suites {
        None => Suite::ALL.to_vec(),
        Some(list) => list
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<Suite>())
            .collect::<Result<_, _>>()?,
    };
    let config = RunConfig {
        max_n: a.max_n,
        triple_bound: a.triple_bound,
        mode: a.mode,
        prime: a.prime,
        seed: a.seed,
        suites,
        output: a.output,
    };
    let opts = RunOptions {
        exec: if a.sequential { Exec::Sequential } else { Exec::default() },
        timings: a.timings,
        inject_failure: a.inject_failure,
    };
    let report = cmd_verify(&config, opts)?;
    let text = emit_report(&report, config.output);
    match a.out.or_else(|| default_report_path(config.output)) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            std::fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
            let s = report.summary;
            eprintln!("pass {} fail {} skip {} -> {}", s.pass, s.fail, s.skip, path.display());
        }
        None => print!("{text}"),
    }
    Ok(report.exit_code())
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.cmd {
        Cmd::Verify(a) => verify(a),
        Cmd::Aw { n, star: _, params } => {
            let p = params.as_deref().map(parse_params).transpose()?;
            println!("{}", cmd_aw(n, p.as_ref())?);
            Ok(0)
        }
        Cmd::Act { curve, n, mode } => {
            let mode = match mode {
                CliActionMode::Prop => ActionMode::Prop,
                CliActionMode::Corollary => ActionMode::Corollary,
            };
            println!("{}", cmd_act(curve, n, mode)?);
            Ok(0)
        }
        Cmd::Skein { curve, i, j, k } => {
            println!("{}", cmd_skein(curve, Triple::new(i, j, k))?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
