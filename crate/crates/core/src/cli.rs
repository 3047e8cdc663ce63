//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 usage or domain error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::export::{circuit_svg, to_json, to_obj};
use crate::lattice::stick_census;
use crate::lift::{build_stages, Stage};
use crate::tangle::{evaluate_conway, expand_fraction, pillow_trace, Fraction, TraceStep};
use crate::verify::{format_table, verify_sweep, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lattice-links",
    version,
    about = "Rational links in the cubic lattice with four z-sticks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct the lattice link for p/q and write it out.
    Build {
        p: i64,
        q: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = StageArg::Final)]
        stage: StageArg,
    },
    /// Check the construction over all coprime pairs up to a bound.
    Verify {
        #[arg(long, default_value_t = 30)]
        max_p: i64,
        /// Compute Jones polynomials and determinants up to this p.
        #[arg(long, default_value_t = 10)]
        jones_max_p: i64,
        /// Table as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print the Conway word and pillowcase trace of p/q.
    Tangle { p: u64, q: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Obj,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StageArg {
    Baseline,
    Corner,
    Final,
}

impl From<StageArg> for Stage {
    fn from(s: StageArg) -> Stage {
        match s {
            StageArg::Baseline => Stage::Baseline,
            StageArg::Corner => Stage::CornerReduced,
            StageArg::Final => Stage::Final,
        }
    }
}

pub fn cmd_build(
    p: i64,
    q: i64,
    format: Format,
    out_path: Option<&std::path::Path>,
    stage: Stage,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let stages = build_stages(p, q)?;
    let ll = stages.get(stage);
    let body = match format {
        Format::Json => to_json(ll)? + "\n",
        Format::Obj => to_obj(
            &ll.link,
            &format!("rational link {p}/{q}, {} stage", ll.stage),
        ),
        Format::Svg => circuit_svg(&stages.circuit),
    };
    let census = stick_census(&ll.link);
    let summary = format!(
        "{p}/{q} {} stage: {census}, {} component(s)",
        ll.stage,
        ll.link.loop_count()
    );
    match out_path {
        Some(path) => {
            std::fs::write(path, body)?;
            writeln!(out, "{summary}")?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => {
            out.write_all(body.as_bytes())?;
            writeln!(err, "{summary}")?;
        }
    }
    for v in ll.stage_violations() {
        writeln!(err, "warning: {v}")?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(opts: VerifyOptions, json: bool, out: &mut dyn Write) -> Result<i32> {
    if opts.max_p < 2 {
        return Err(Error::Domain(format!(
            "--max-p must be at least 2, got {}",
            opts.max_p
        )));
    }
    let rows = verify_sweep(opts);
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
    } else {
        write!(out, "{}", format_table(&rows))?;
    }
    Ok(if rows.iter().all(|r| r.passes()) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

pub fn cmd_tangle(p: u64, q: u64, out: &mut dyn Write) -> Result<i32> {
    let frac = Fraction::new(p, q)?;
    let word = expand_fraction(frac)?;
    writeln!(out, "fraction {frac}")?;
    writeln!(out, "conway word {word}")?;
    let trace = pillow_trace(&word)?;
    let mut line = String::from("(0,1)");
    for step in &trace {
        let f = step.form();
        let tag = match step {
            TraceStep::Horizontal(_) => "h",
            TraceStep::Vertical(_) => "v",
            TraceStep::Reflect(_) => "r",
        };
        line.push_str(&format!(" -{tag}-> ({},{})", f.t, f.s));
    }
    writeln!(out, "trace {line}")?;
    let value = evaluate_conway(&word)?;
    writeln!(
        out,
        "continued fraction {}",
        continued_fraction(word.entries())
    )?;
    writeln!(out, "value {value}")?;
    Ok(EXIT_OK)
}

/// `a_n + 1/(a_(n-1) + 1/(... + 1/a_1))`.
fn continued_fraction(entries: &[u64]) -> String {
    let mut s = entries[0].to_string();
    for a in &entries[1..] {
        s = format!("{a} + 1/({s})");
    }
    s
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Build {
            p,
            q,
            format,
            out: path,
            stage,
        } => cmd_build(p, q, format, path.as_deref(), stage.into(), out, err),
        Command::Verify {
            max_p,
            jones_max_p,
            json,
        } => cmd_verify(VerifyOptions { max_p, jones_max_p }, json, out),
        Command::Tangle { p, q } => cmd_tangle(p, q, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Domain(_) => EXIT_USAGE,
                _ => EXIT_VERIFY_FAILED,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["lattice-links"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn tangle_traces() {
        let (code, out, _) = run_str(&["tangle", "3", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("conway word [3]"));
        assert!(
            out.contains("(0,1) -h-> (1,1) -h-> (2,1) -h-> (3,1)"),
            "{out}"
        );
        let (_, out, _) = run_str(&["tangle", "17", "7"]);
        assert!(out.contains("conway word [3,2,2]"));
        assert!(out.contains("(17,7)\n"), "{out}");
        let (_, out, _) = run_str(&["tangle", "7", "5"]);
        assert!(out.contains("conway word [2,2,1]"));
        assert!(out.contains("(7,5)\n"), "{out}");
    }

    #[test]
    fn build_rejects_non_coprime() {
        let (code, _, err) = run_str(&["build", "4", "2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("p and q must be coprime"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["build", "3"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["verify", "--max-p", "1"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn build_json_to_stdout() {
        let (code, out, err) = run_str(&["build", "3", "1", "--format", "json"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"z\":4"));
        assert!(err.contains("12 sticks"));
    }
}
