//! Command-line front end. [`run`] does everything except touching the
//! process, so tests can drive it in memory.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::arith::factorize;
use crate::criteria::criteria_report_with_budget;
use crate::error::{Error, Result};
use crate::ffield::{euler_factor, make_field, point_count_family, Family, HgmTracer};
use crate::gamma::{factorial_ratio, hypergeom_data, parse_integer_list, GammaList};
use crate::hodge::hodge_summary;
use crate::polytope::{build_polytope, ehrhart_data, EnumerationBudget, DEFAULT_CELL_BUDGET};
use crate::report::{
    render_text, CnView, CountView, EhrhartSection, EulerSection, Report, TraceView,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "facratio", version, about = "Integrality of factorial ratios and their hypergeometric data")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for t-ranges and batches (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Negate every entry before validation.
    #[arg(long, global = true)]
    pub flip: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GammaArg {
    /// Gamma list, e.g. -30,-1,6,10,15 or [*-30,-1,6,10,15*]
    #[arg(allow_hyphen_values = true)]
    pub gamma: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Landau test and Criteria A, B, C. Exit 0 if integral, 1 if not.
    Check {
        #[arg(allow_hyphen_values = true, required_unless_present = "batch")]
        gamma: Option<String>,
        /// File with one gamma list per line; `#` starts a comment.
        #[arg(long)]
        batch: Option<PathBuf>,
        /// Cell budget for lattice-point enumeration.
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        budget: u128,
    },
    /// Per-N table, δ^#, δ, Hodge vector and E-array.
    Hodge {
        #[command(flatten)]
        gamma: GammaArg,
    },
    /// Cyclotomic monodromy data and hypergeometric parameters.
    Monodromy {
        #[command(flatten)]
        gamma: GammaArg,
    },
    /// Ehrhart data: closed-form δ, or lattice-point enumeration.
    Ehrhart {
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long)]
        brute_force: bool,
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        budget: u128,
    },
    /// Hypergeometric traces H(t) over F_{p^k}.
    Trace {
        #[command(flatten)]
        gamma: GammaArg,
        /// A value, list or range: 2, 1/3, 1,4,5 or 1..22
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Euler factor det(1 − F x) at a good prime.
    Euler {
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        p: u64,
    },
    /// Point count of an explicit family and the trace it implies.
    Count {
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Field size, a prime power.
        #[arg(long)]
        q: u64,
        #[arg(long)]
        allow_slow: bool,
    },
    /// Exact factorial ratios c_n.
    Cn {
        #[command(flatten)]
        gamma: GammaArg,
        /// A value, list or range such as 0..10
        #[arg(long)]
        n: String,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `2`, `1/3`, `1,4,5`, `1..22` (inclusive) or a mix of these.
pub fn parse_values(spec: &str) -> Result<Vec<BigRational>> {
    let bad = || Error::Invalid(format!("cannot parse value list {spec:?}"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if b < a {
                return Err(bad());
            }
            out.extend((a..=b).map(|x| BigRational::from_integer(BigInt::from(x))));
        } else if let Some((n, d)) = part.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            out.push(BigRational::new(n, d));
        } else {
            out.push(BigRational::from_integer(part.parse().map_err(|_| bad())?));
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn parse_gamma_arg(text: &str, flip: bool) -> Result<GammaList> {
    let v = parse_integer_list(text)?;
    Ok(if flip { GammaList::new_flipped(v)? } else { GammaList::new(v)? })
}

/// `q = p^k` with `p` prime.
fn prime_power(q: u64) -> Result<(u64, u32)> {
    match factorize(q)[..] {
        [(p, k)] => Ok((p, k)),
        _ => Err(Error::Invalid(format!("{q} is not a prime power"))),
    }
}

fn natural_values(spec: &str) -> Result<Vec<u64>> {
    parse_values(spec)?
        .iter()
        .map(|x| {
            if x.is_integer() && *x >= BigRational::from_integer(0.into()) {
                Ok(x.to_integer().try_into().map_err(|_| Error::Invalid(format!("{x} too large")))?)
            } else {
                Err(Error::Invalid(format!("{x} is not a nonnegative integer")))
            }
        })
        .collect()
}

fn cmd_check(g: &GammaList, budget: u128) -> Result<Report> {
    let c = criteria_report_with_budget(g, EnumerationBudget { max_cells: budget })?;
    if !c.consistent() {
        return Err(Error::Internal(format!("criteria disagree for {g}: {c:?}")));
    }
    let mut r = Report::new("check", Some(g));
    r.criteria = Some((&c).into());
    Ok(r)
}

fn cmd_hodge(g: &GammaList) -> Result<Report> {
    let mut r = Report::new("hodge", Some(g));
    r.hodge = Some((&hodge_summary(g)?).into());
    Ok(r)
}

fn cmd_monodromy(g: &GammaList) -> Result<Report> {
    let mut r = Report::new("monodromy", Some(g));
    r.monodromy = Some((&hypergeom_data(g)).into());
    Ok(r)
}

fn cmd_ehrhart(g: &GammaList, brute_force: bool, budget: u128) -> Result<Report> {
    let h = hodge_summary(g)?;
    let mut r = Report::new("ehrhart", Some(g));
    let section = if brute_force {
        let e = ehrhart_data(&build_polytope(g), EnumerationBudget { max_cells: budget })?;
        if e.delta_poly() != h.delta {
            return Err(Error::Internal(format!(
                "enumerated δ {} differs from closed form {}",
                e.delta_poly(),
                h.delta
            )));
        }
        EhrhartSection::from_enumeration(&e, g.vol())
    } else {
        EhrhartSection::from_closed_form(&h, g)
    };
    r.ehrhart = Some(section);
    Ok(r)
}

fn cmd_trace(g: &GammaList, t: &str, p: u64, k: u32, notes: &mut Vec<String>) -> Result<Report> {
    let ts = parse_values(t)?;
    let ctx = make_field(p, k)?;
    let tracer = HgmTracer::new(g, &ctx)?;
    let results = ts
        .par_iter()
        .map(|t| tracer.trace(t))
        .collect::<Result<Vec<_>>>()?;
    for res in &results {
        if res.singular_fiber {
            notes.push(format!("t = {}: singular fiber", res.t));
        }
        if res.uncalibrated {
            notes.push(format!("t = {}: uncalibrated regime (t has a denominator)", res.t));
        }
        if !res.within_weil_bound {
            notes.push(format!("t = {}: |H| exceeds the Weil bound", res.t));
        }
    }
    let mut r = Report::new("trace", Some(g));
    r.traces = Some(results.iter().map(TraceView::from).collect());
    Ok(r)
}

fn single_value(spec: &str) -> Result<BigRational> {
    match &parse_values(spec)?[..] {
        [t] => Ok(t.clone()),
        _ => Err(Error::Invalid("expected a single value".into())),
    }
}

fn cmd_euler(g: &GammaList, t: &str, p: u64) -> Result<Report> {
    let e = euler_factor(g, &single_value(t)?, p)?;
    let mut r = Report::new("euler", Some(g));
    r.euler = Some(EulerSection::from(&e));
    Ok(r)
}

fn cmd_count(g: &GammaList, family: &str, t: &str, q: u64, allow_slow: bool) -> Result<Report> {
    let family: Family = family.parse()?;
    let (p, k) = prime_power(q)?;
    let ctx = make_field(p, k)?;
    let counts = parse_values(t)?
        .iter()
        .map(|t| point_count_family(g, family, t, &ctx, allow_slow).map(|c| CountView::from(&c)))
        .collect::<Result<Vec<_>>>()?;
    let mut r = Report::new("count", Some(g));
    r.counts = Some(counts);
    Ok(r)
}

fn cmd_cn(g: &GammaList, n: &str) -> Result<Report> {
    let values = natural_values(n)?
        .into_par_iter()
        .map(|n| CnView::new(n, &factorial_ratio(g, n)))
        .collect();
    let mut r = Report::new("cn", Some(g));
    r.cn = Some(values);
    Ok(r)
}

fn read_batch(path: &PathBuf) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Hodge { .. } => "hodge",
        Command::Monodromy { .. } => "monodromy",
        Command::Ehrhart { .. } => "ehrhart",
        Command::Trace { .. } => "trace",
        Command::Euler { .. } => "euler",
        Command::Count { .. } => "count",
        Command::Cn { .. } => "cn",
    }
}

/// Run one gamma-list command; errors come back as an error report.
fn run_one(cli: &Cli, text: &str, notes: &mut Vec<String>) -> Report {
    let name = command_name(&cli.command);
    let g = match parse_gamma_arg(text, cli.flip) {
        Ok(g) => g,
        Err(e) => return Report::failure(name, None, &e),
    };
    let result = match &cli.command {
        Command::Check { budget, .. } => cmd_check(&g, *budget),
        Command::Hodge { .. } => cmd_hodge(&g),
        Command::Monodromy { .. } => cmd_monodromy(&g),
        Command::Ehrhart {
            brute_force, budget, ..
        } => cmd_ehrhart(&g, *brute_force, *budget),
        Command::Trace { t, p, k, .. } => cmd_trace(&g, t, *p, *k, notes),
        Command::Euler { t, p, .. } => cmd_euler(&g, t, *p),
        Command::Count {
            family,
            t,
            q,
            allow_slow,
            ..
        } => cmd_count(&g, family, t, *q, *allow_slow),
        Command::Cn { n, .. } => cmd_cn(&g, n),
    };
    result.unwrap_or_else(|e| Report::failure(name, Some(&g), &e))
}

fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.error.is_some()) {
        2
    } else if reports
        .iter()
        .any(|r| r.criteria.as_ref().is_some_and(|c| !c.integral))
    {
        1
    } else {
        0
    }
}

fn gamma_inputs(cli: &Cli) -> Result<Vec<String>> {
    match &cli.command {
        Command::Check { gamma, batch, .. } => {
            let mut all: Vec<String> = gamma.iter().cloned().collect();
            if let Some(path) = batch {
                all.extend(read_batch(path)?);
            }
            Ok(all)
        }
        Command::Hodge { gamma }
        | Command::Monodromy { gamma }
        | Command::Ehrhart { gamma, .. }
        | Command::Trace { gamma, .. }
        | Command::Euler { gamma, .. }
        | Command::Count { gamma, .. }
        | Command::Cn { gamma, .. } => Ok(vec![gamma.gamma.clone()]),
    }
}

fn execute(cli: &Cli) -> Output {
    let mut notes = Vec::new();
    let reports = match gamma_inputs(cli) {
        Ok(inputs) if inputs.len() == 1 => vec![run_one(cli, &inputs[0], &mut notes)],
        Ok(inputs) => inputs
            .par_iter()
            .map(|text| run_one(cli, text, &mut Vec::new()))
            .collect(),
        Err(e) => vec![Report::failure(command_name(&cli.command), None, &e)],
    };
    let mut stderr: String = notes.iter().map(|n| format!("note: {n}\n")).collect();
    let stdout = match cli.format {
        Format::Json if reports.len() == 1 => reports[0].to_json() + "\n",
        Format::Json => serde_json::to_string_pretty(&reports).expect("serializable") + "\n",
        Format::Text => {
            // text errors go to stderr; JSON keeps them inside the report
            let (failed, ok): (Vec<&Report>, Vec<&Report>) =
                reports.iter().partition(|r| r.error.is_some());
            stderr.extend(failed.into_iter().map(render_text));
            ok.into_iter().map(render_text).collect::<Vec<_>>().join("\n")
        }
    };
    Output {
        code: exit_code(&reports),
        stdout,
        stderr,
    }
}

/// Parse arguments (including the program name) and run.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (rendered, String::new()) } else { (String::new(), rendered) };
            return Output { code, stdout, stderr };
        }
    };
    match cli.jobs {
        Some(0) => Output {
            code: 2,
            stdout: String::new(),
            stderr: "error [invalid_argument]: --jobs must be positive\n".into(),
        },
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Output {
                code: 2,
                stdout: String::new(),
                stderr: format!("error [internal]: {e}\n"),
            },
        },
        None => execute(&cli),
    }
}
