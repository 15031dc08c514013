//! Command-line front end: `invariants`, `verify` and `series`.
//!
//! [`run`] takes the raw argument list and returns exit code plus the text
//! destined for stdout and stderr, so the whole surface is testable
//! in-process. Stdout is a pure function of the arguments; wall-clock
//! timings go to stderr only.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::disk::{disk_invariants, mirror_trunc_for};
use crate::error::Error;
use crate::geometry::Geometry;
use crate::localization::{
    localization_invariants, sample_weights, verify_identities, VerificationReport,
};
use crate::mirror::MirrorSeries;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;

/// Extra u-orders carried by `verify` beyond `--max-degree`.
pub const GUARD_ORDERS: usize = 2;

#[derive(Parser, Debug)]
#[command(
    name = "diskinv",
    version,
    about = "Exact one-point disk invariants of odd-dimensional Calabi-Yau complete intersections"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<CommandKind>,
    #[command(flatten)]
    options: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    /// Print N^disk_{1,d} for odd d <= max-degree (default)
    Invariants,
    /// Check the localization identities against the closed formula
    Verify,
    /// Dump I_p, J, tau and the inverse mirror map
    Series,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Options {
    /// Odd degrees a_1 .. a_l of the complete intersection
    #[arg(long, num_args = 1.., global = true, allow_negative_numbers = true)]
    degrees: Vec<i64>,
    /// Largest (odd) disk degree d
    #[arg(
        long,
        default_value_t = 9,
        global = true,
        allow_negative_numbers = true
    )]
    max_degree: i64,
    /// Seed for torus-weight sampling
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Number of torus-weight samples for `verify`
    #[arg(long, default_value_t = 3, global = true)]
    weight_samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub degrees: Vec<i64>,
    pub max_degree: i64,
    pub seed: u64,
    pub weight_samples: usize,
    pub format: Format,
    pub command: CommandKind,
}

impl RunConfig {
    /// Checks every input constraint before any computation.
    pub fn validate(&self) -> Result<Geometry, String> {
        let g = Geometry::new(&self.degrees).map_err(|e| e.to_string())?;
        if self.max_degree < 1 || self.max_degree % 2 == 0 {
            return Err("max-degree must be odd and ≥ 1".into());
        }
        if self.command == CommandKind::Verify && self.weight_samples < 2 {
            return Err("need ≥ 2 weight samples".into());
        }
        Ok(g)
    }

    fn max_degree(&self) -> usize {
        self.max_degree as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn invalid(msg: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_INVALID_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }

    fn internal(err: Error) -> Self {
        Self {
            code: EXIT_VERIFICATION_FAILED,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the chosen command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID_INPUT
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let cfg = RunConfig {
        degrees: cli.options.degrees,
        max_degree: cli.options.max_degree,
        seed: cli.options.seed,
        weight_samples: cli.options.weight_samples,
        format: cli.options.format,
        command: cli.command.unwrap_or(CommandKind::Invariants),
    };
    run_config(&cfg)
}

pub fn run_config(cfg: &RunConfig) -> Output {
    let g = match cfg.validate() {
        Ok(g) => g,
        Err(msg) => return Output::invalid(msg),
    };
    match cfg.command {
        CommandKind::Invariants => cmd_invariants(cfg, &g),
        CommandKind::Verify => cmd_verify(cfg, &g),
        CommandKind::Series => cmd_series(cfg, &g),
    }
}

fn geometry_json(g: &Geometry) -> Value {
    json!({
        "degrees": g.degrees(),
        "n": g.n(),
        "l": g.l(),
        "p_max": g.p_max(),
    })
}

fn geometry_line(g: &Geometry) -> String {
    let degs: Vec<String> = g.degrees().iter().map(u32::to_string).collect();
    format!(
        "geometry: degrees=[{}] n={} l={} p_max={}",
        degs.join(","),
        g.n(),
        g.l(),
        g.p_max()
    )
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn join(values: &[BigRational]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn strings(values: &[BigRational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

pub fn cmd_invariants(cfg: &RunConfig, g: &Geometry) -> Output {
    let invariants = match disk_invariants(g, cfg.max_degree()) {
        Ok(inv) => inv,
        Err(e) => return Output::internal(e),
    };
    Output::ok(format_invariants(cfg, g, &invariants))
}

fn format_invariants(cfg: &RunConfig, g: &Geometry, inv: &BTreeMap<u32, BigRational>) -> String {
    match cfg.format {
        Format::Plain => {
            let mut s = geometry_line(g);
            s.push_str("\nd\tN_disk(1,d)\n");
            for (d, v) in inv {
                let _ = writeln!(s, "{d}\t{v}");
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("d,value\n");
            for (d, v) in inv {
                let _ = writeln!(s, "{d},{v}");
            }
            s
        }
        Format::Json => render_json(&json!({
            "geometry": geometry_json(g),
            "max_degree": cfg.max_degree,
            "invariants": inv
                .iter()
                .map(|(d, v)| json!({"d": d, "value": v.to_string()}))
                .collect::<Vec<_>>(),
        })),
    }
}

pub fn cmd_verify(cfg: &RunConfig, g: &Geometry) -> Output {
    let trunc_u = cfg.max_degree() + GUARD_ORDERS;
    let result = sample_weights(g, trunc_u, cfg.weight_samples, cfg.seed).and_then(|samples| {
        let report = verify_identities(g, &samples, trunc_u)?;
        let closed = disk_invariants(g, trunc_u)?;
        let mut agree = true;
        for w in &samples {
            agree &= localization_invariants(g, w, trunc_u)? == closed;
        }
        Ok((report, agree))
    });
    let (report, agree) = match result {
        Ok(r) => r,
        Err(e) => return Output::internal(e),
    };
    let passed = report.passed() && agree;
    let mut stderr = String::new();
    let _ = writeln!(
        stderr,
        "setup: {:.3} ms",
        report.setup_elapsed.as_secs_f64() * 1e3
    );
    for o in &report.outcomes {
        let _ = writeln!(
            stderr,
            "{}: {:.3} ms",
            o.identity,
            o.elapsed.as_secs_f64() * 1e3
        );
    }
    Output {
        code: if passed {
            EXIT_OK
        } else {
            EXIT_VERIFICATION_FAILED
        },
        stdout: format_report(cfg, &report, agree),
        stderr,
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn format_report(cfg: &RunConfig, r: &VerificationReport, agree: bool) -> String {
    let passed = r.passed() && agree;
    match cfg.format {
        Format::Plain => {
            let mut s = geometry_line(&r.geometry);
            let _ = writeln!(
                s,
                "\ntrunc_u: {} (max-degree {} + {GUARD_ORDERS} guard orders)",
                r.trunc_u, cfg.max_degree
            );
            let _ = writeln!(s, "seed: {}", cfg.seed);
            for (k, w) in r.samples.iter().enumerate() {
                let _ = writeln!(s, "sample {k}: lambda={w}");
            }
            for o in &r.outcomes {
                let _ = writeln!(
                    s,
                    "{}: {} ({} checks)",
                    o.identity,
                    pass_fail(o.passed()),
                    o.checks
                );
                for f in &o.failures {
                    let _ = writeln!(s, "  {f}");
                }
            }
            let _ = writeln!(
                s,
                "invariants (closed vs localization): {}",
                pass_fail(agree)
            );
            let _ = writeln!(s, "result: {}", pass_fail(passed));
            s
        }
        Format::Csv => {
            let mut s = String::from("identity,name,passed,checks\n");
            for o in &r.outcomes {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    o.identity.number(),
                    o.identity.name(),
                    o.passed(),
                    o.checks
                );
            }
            let _ = writeln!(s, "6,invariants,{agree},{}", r.samples.len());
            s
        }
        Format::Json => render_json(&json!({
            "geometry": geometry_json(&r.geometry),
            "max_degree": cfg.max_degree,
            "trunc_u": r.trunc_u,
            "seed": cfg.seed,
            "weight_samples": r.samples.iter().map(|w| strings(w.lambdas())).collect::<Vec<_>>(),
            "identities": r.outcomes.iter().map(|o| json!({
                "id": o.identity.number(),
                "name": o.identity.name(),
                "passed": o.passed(),
                "checks": o.checks,
                "failures": o.failures.iter().map(|f| json!({
                    "p": f.p,
                    "s": f.s,
                    "sample": f.sample,
                    "first_differing_order": f.first_differing_order,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "invariants_agree": agree,
            "passed": passed,
        })),
    }
}

pub fn cmd_series(cfg: &RunConfig, g: &Geometry) -> Output {
    let trunc_u = cfg.max_degree();
    let trunc_q = mirror_trunc_for(trunc_u);
    let series = match MirrorSeries::compute(g, trunc_q, trunc_u) {
        Ok(s) => s,
        Err(e) => return Output::internal(e),
    };
    let mut rows: Vec<(String, &[BigRational])> = series
        .i
        .iter()
        .enumerate()
        .map(|(p, s)| (format!("I_{p}"), s.coeffs()))
        .collect();
    rows.push(("J".into(), series.j.coeffs()));
    rows.push(("tau".into(), series.tau.coeffs()));
    rows.push(("q(Q)".into(), series.q_of_big_q.coeffs()));

    let text = match cfg.format {
        Format::Plain => {
            let mut s = geometry_line(g);
            s.push('\n');
            for (name, c) in &rows {
                let _ = writeln!(s, "{name}: {}", join(c));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("series,exponent,value\n");
            for (name, c) in &rows {
                for (k, v) in c.iter().enumerate() {
                    let _ = writeln!(s, "{name},{k},{v}");
                }
            }
            s
        }
        Format::Json => render_json(&json!({
            "geometry": geometry_json(g),
            "max_degree": cfg.max_degree,
            "trunc_q": trunc_q,
            "series": {
                "I": series.i.iter().map(|s| strings(s.coeffs())).collect::<Vec<_>>(),
                "J": strings(series.j.coeffs()),
                "tau": strings(series.tau.coeffs()),
                "q_of_Q": strings(series.q_of_big_q.coeffs()),
            },
        })),
    };
    Output::ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Output {
        run(std::iter::once("diskinv").chain(args.iter().copied()))
    }

    #[test]
    fn default_command_is_invariants() {
        let out = run_args(&["--degrees", "5", "--max-degree", "1"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("\n1\t30\n"), "{}", out.stdout);
    }

    #[test]
    fn invalid_geometry_exits_2() {
        let out = run_args(&["invariants", "--degrees", "4"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("degrees must be odd"));
        let out = run_args(&["--degrees", "1", "1"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("n − l must be positive and even"));
        let out = run_args(&["--degrees", "5", "--max-degree", "4"]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn unknown_flag_exits_2() {
        assert_eq!(run_args(&["--degrees", "5", "--bogus"]).code, 2);
        assert_eq!(run_args(&["--degrees", "5", "--format", "xml"]).code, 2);
    }

    #[test]
    fn too_few_samples() {
        let out = run_args(&["verify", "--degrees", "7", "--weight-samples", "1"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("need ≥ 2 weight samples"));
    }
}
