//! Command-line surface. [`run`] is the whole program minus process exit,
//! so it can be driven from tests.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use itertools::Itertools;
use serde::Serialize;
use serde_json::json;

use crate::fullgroup::{braid_shadow, full_group};
use crate::monomial::{MonoGroup, MonoVector, StabilizerReport, DEFAULT_CAP};
use crate::taxonomy::{
    central_index, center_order, degree_profile, group_order, regular_hyperplane_numbers, regular_numbers,
    GroupDescriptor,
};
use crate::verifier::{self, persist_report, Campaign, ClaimId, RangeSpec, Sweep};

/// Environment variable overriding the element cap.
pub const CAP_ENV: &str = "REFLGROUPS_CAP";

#[derive(Debug, Parser)]
#[command(name = "reflgroups", version, about = "Complex reflection groups: degrees, full groups, regular numbers and exact stabilizer certificates")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degrees, codegrees, order, center order and gcd profile.
    Describe {
        #[arg(value_parser = parse_group)]
        group: GroupDescriptor,
    },
    /// The full reflection group with index and center ratio.
    Full {
        #[arg(value_parser = parse_group)]
        group: GroupDescriptor,
    },
    /// Regular numbers and regular-hyperplane numbers.
    Regular {
        #[arg(value_parser = parse_group)]
        group: GroupDescriptor,
    },
    /// Integer invariants of the enlarged braid group.
    Shadow {
        #[arg(value_parser = parse_group)]
        group: GroupDescriptor,
    },
    /// Stabilizer of a vector in the scalar-extended group of G(m,p,n).
    Stabilizer {
        #[arg(value_parser = parse_group)]
        group: GroupDescriptor,
        /// Coordinates such as "(1, 2)" or "(1/2*z^3, 0, z)", z = exp(2pi*i/L).
        vector: String,
    },
    /// Run a verification campaign and persist its report.
    Verify {
        claim: String,
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        /// Extra group to sweep; repeatable.
        #[arg(long = "group", value_parser = parse_group)]
        groups: Vec<GroupDescriptor>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "reports")]
        report_dir: PathBuf,
    },
    /// List the claim registry, optionally filtered by id substring.
    Claims { filter: Option<String> },
}

fn parse_group(s: &str) -> Result<GroupDescriptor, String> {
    s.parse::<GroupDescriptor>().map_err(|e| e.to_string())
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        CliOutput {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl ToString) -> Self {
        CliOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.to_string().trim_end()),
        }
    }
}

/// Runs with the cap taken from [`CAP_ENV`], defaulting to
/// [`DEFAULT_CAP`].
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cap = match std::env::var(CAP_ENV) {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(c) if c > 0 => c,
            _ => return CliOutput::usage(format!("{CAP_ENV} must be a positive integer, got {v:?}")),
        },
        Err(_) => DEFAULT_CAP as u64,
    };
    run_with_cap(args, cap)
}

pub fn run_with_cap<I, T>(args: I, cap: u64) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput::ok(text)
            } else {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let json = cli.json;
    match cli.command {
        Command::Describe { group } => describe(&group, json),
        Command::Full { group } => full(&group, json),
        Command::Regular { group } => regular(&group, json),
        Command::Shadow { group } => shadow(&group, json),
        Command::Stabilizer { group, vector } => stabilizer(&group, &vector, cap, json),
        Command::Verify {
            claim,
            m_max,
            n_max,
            groups,
            samples,
            seed,
            report_dir,
        } => {
            let claim_id = match claim.parse::<ClaimId>() {
                Ok(c) => c,
                Err(e) => return CliOutput::usage(e),
            };
            let range = match (m_max, n_max) {
                (None, None) if !groups.is_empty() => None,
                (m, n) => Some(RangeSpec {
                    m_max: m.unwrap_or(6),
                    n_max: n.unwrap_or(4),
                }),
            };
            let campaign = Campaign {
                claim_id,
                sweep: Sweep { range, extra: groups },
                samples,
                seed,
                cap,
            };
            verify(&campaign, &report_dir, json)
        }
        Command::Claims { filter } => claims(filter.as_deref(), json),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("outputs serialize");
    s.push('\n');
    s
}

/// JSON numbers are limited to 64 bits here; larger values become decimal
/// strings.
fn big(x: u128) -> serde_json::Value {
    u64::try_from(x).map_or_else(|_| x.to_string().into(), Into::into)
}

fn join(xs: &[u64]) -> String {
    xs.iter().join(" ")
}

fn set(xs: &BTreeSet<u64>) -> String {
    format!("{{{}}}", xs.iter().join(", "))
}

fn describe(d: &GroupDescriptor, json: bool) -> CliOutput {
    let p = degree_profile(d);
    let (order, center, index) = (group_order(d), center_order(d), central_index(d));
    if json {
        return CliOutput::ok(to_json(&json!({
            "descriptor": d.to_string(),
            "rank": d.rank(),
            "degrees": p.degrees,
            "codegrees": p.codegrees,
            "order": big(order),
            "center_order": center,
            "central_index": big(index),
            "D": p.d,
            "Dj": p.dj,
        })));
    }
    let mut s = String::new();
    let _ = writeln!(s, "{d}");
    let _ = writeln!(s, "  rank           {}", d.rank());
    let _ = writeln!(s, "  degrees        {}", join(&p.degrees));
    let _ = writeln!(s, "  codegrees      {}", join(&p.codegrees));
    let _ = writeln!(s, "  order          {order}");
    let _ = writeln!(s, "  center order   {center}");
    let _ = writeln!(s, "  central index  {index}");
    let _ = writeln!(s, "  D              {}", p.d);
    let _ = writeln!(s, "  D_j            {}", join(&p.dj));
    CliOutput::ok(s)
}

fn full(d: &GroupDescriptor, json: bool) -> CliOutput {
    match full_group(d) {
        Ok(r) if json => CliOutput::ok(to_json(&json!({
            "input": r.input,
            "full": r.full,
            "index": big(r.index),
            "center_ratio": r.center_ratio,
        }))),
        Ok(r) => CliOutput::ok(format!(
            "{} → {}, index {}, center ratio {}\n",
            r.input, r.full, r.index, r.center_ratio
        )),
        Err(e) => CliOutput::usage(e),
    }
}

fn regular(d: &GroupDescriptor, json: bool) -> CliOutput {
    let numbers = regular_numbers(d);
    let hyperplanes = regular_hyperplane_numbers(d).ok();
    if json {
        return CliOutput::ok(to_json(&json!({
            "descriptor": d.to_string(),
            "regular_numbers": numbers,
            "regular_hyperplane_numbers": hyperplanes,
        })));
    }
    let h = hyperplanes.as_ref().map_or_else(|| "undefined in rank 1".to_string(), set);
    CliOutput::ok(format!(
        "{d}\n  regular numbers             {}\n  regular hyperplane numbers  {h}\n",
        set(&numbers)
    ))
}

fn shadow(d: &GroupDescriptor, json: bool) -> CliOutput {
    let s = match braid_shadow(d) {
        Ok(s) => s,
        Err(e) => return CliOutput::usage(e),
    };
    if json {
        return CliOutput::ok(to_json(&json!({ "descriptor": d.to_string(), "shadow": s })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "{d}");
    let _ = writeln!(out, "  |Z(W)|                  {}", s.center_w);
    let _ = writeln!(out, "  |Z(W_f)|                {}", s.center_wf);
    let _ = writeln!(out, "  beta_S^e = pi_S, e      {}", s.beta_to_pi_exponent);
    let _ = writeln!(out, "  power of beta_S(W_f)    {}", s.beta_wf_power);
    let _ = writeln!(out, "  B_S = B                 {}", s.bs_equals_b);
    let _ = writeln!(out, "  all regular central     {}", s.bmr_diagram_completes);
    CliOutput::ok(out)
}

fn stabilizer(d: &GroupDescriptor, vector: &str, cap: u64, json: bool) -> CliOutput {
    let g = match MonoGroup::from_descriptor(d, cap as u128) {
        Ok(g) => g,
        Err(e) => return CliOutput::usage(e),
    };
    let l = g.ambient();
    let x = match MonoVector::parse(vector, l) {
        Ok(x) => x,
        Err(e) => return CliOutput::usage(e),
    };
    let report: StabilizerReport = match crate::monomial::extended_stabilizer(&g, &x) {
        Ok(r) => r,
        Err(e) => return CliOutput::usage(e),
    };
    if json {
        let pairs: Vec<_> = report
            .pairs
            .iter()
            .map(|p| {
                json!({
                    "perm": p.element.perm().iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "weights": p.element.weights(),
                    "lambda": p.lambda.display_in(l),
                })
            })
            .collect();
        return CliOutput::ok(to_json(&json!({
            "descriptor": d.to_string(),
            "ambient": l,
            "vector": x.display_in(l),
            "stratum": report.stratum,
            "stab_in_w": report.stab_in_w,
            "pairs": pairs,
        })));
    }
    let mut s = String::new();
    let _ = writeln!(s, "{d} over z = exp(2pi*i/{l})");
    let _ = writeln!(s, "  x          {}", x.display_in(l));
    let _ = writeln!(s, "  stratum    {:?}", report.stratum);
    let _ = writeln!(s, "  stab_in_w  {}", report.stab_in_w);
    let _ = writeln!(s, "  stabilizer ({} elements as lambda*w)", report.pairs.len());
    for p in &report.pairs {
        let _ = writeln!(s, "    {}  lambda = {}", p.element, p.lambda.display_in(l));
    }
    CliOutput::ok(s)
}

fn verify(c: &Campaign, dir: &std::path::Path, json: bool) -> CliOutput {
    let report = match verifier::run_campaign(c) {
        Ok(r) => r,
        Err(e) => return CliOutput::usage(e),
    };
    let path = match persist_report(&report, dir) {
        Ok(p) => p,
        Err(e) => {
            return CliOutput {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: cannot write report under {}: {e}\n", dir.display()),
            }
        }
    };
    let code = if report.passed() { 0 } else { 1 };
    let stdout = if json {
        to_json(&report)
    } else {
        let mut s = format!(
            "{} {}: {} groups, {} checks, {} failures\n",
            c.claim_id,
            if report.passed() { "PASS" } else { "FAIL" },
            report.groups_checked,
            report.checks_run,
            report.failures.len()
        );
        for f in report.failures.iter().take(10) {
            let _ = writeln!(s, "  {}: {} expected {} got {}", f.descriptor, f.witness, f.expected, f.got);
        }
        if report.failures.len() > 10 {
            let _ = writeln!(s, "  ... {} more in the report", report.failures.len() - 10);
        }
        s
    };
    CliOutput {
        code,
        stdout,
        stderr: format!("report: {}\n", path.display()),
    }
}

fn claims(filter: Option<&str>, json: bool) -> CliOutput {
    let list = verifier::list_claims(filter);
    if json {
        return CliOutput::ok(to_json(&list));
    }
    let width = list.iter().map(|c| c.id.as_str().len()).max().unwrap_or(0);
    let mut s = String::new();
    for c in list {
        let _ = writeln!(s, "{:width$}  {}", c.id.as_str(), c.description);
    }
    CliOutput::ok(s)
}
