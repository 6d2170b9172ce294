use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use edgering::canonical::canonical_generators;
use edgering::characterize::{
    characterized_verdict, cross_check, cross_check_all, sweep, Agreement, DirectAnalysis,
};
use edgering::hibi::{
    hibi_hilbert_series_prefix, is_level_hibi, max_r_value, pi_poset, pi_prime_poset,
    upper_interval_pure_sufficient, Poset,
};
use edgering::hilbert::{ehrhart_closed_form, ehrhart_closed_form_value};
use edgering::polytope::{ell_closed_form, Budget, SupportSystem};
use edgering::{Error, Partition};

const EXIT_USAGE: u8 = 1;
const EXIT_DISAGREE: u8 = 2;
const EXIT_UNVERIFIED: u8 = 3;

const VERIFY_MAX_D: u64 = 12;

/// Gorenstein, level and almost Gorenstein edge rings of complete
/// multipartite graphs.
#[derive(Parser, Debug)]
#[command(name = "edgering", version)]
struct Cli {
    /// Limit on the search space of one lattice point enumeration
    /// (default: $EDGERING_BUDGET, else 100000000).
    #[arg(long, global = true, value_parser = parse_positive_u128)]
    budget: Option<u128>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Case, ell, socle degree and the characterized verdicts of one graph.
    Classify {
        /// Part sizes, comma separated, e.g. 2,2,3.
        parts: Partition,
        /// Also compute the verdicts from lattice points and compare.
        #[arg(long)]
        direct: bool,
    },
    /// One row of invariants per partition with d <= max-d.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        max_d: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write to this file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cross-check characterized against direct verdicts, and the general
    /// implications between the properties, for every d <= max-d.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        max_d: u64,
        /// Allow max-d above 12.
        #[arg(long)]
        force: bool,
    },
    /// Hibi rings of finite posets.
    Hibi {
        #[command(subcommand)]
        poset: PosetSource,
    },
    /// The Ehrhart polynomial of the edge polytope and its value at m.
    Ehrhart {
        parts: Partition,
        #[arg(long, value_parser = clap::value_parser!(u64))]
        m: u64,
        /// Also count the lattice points of mP by enumeration.
        #[arg(long)]
        count: bool,
    },
    /// Minimal generators of the canonical module by degree.
    Canonical {
        parts: Partition,
        #[arg(long)]
        list_points: bool,
    },
}

#[derive(Subcommand, Debug)]
enum PosetSource {
    /// Two disjoint chains of lengths M and N.
    Pi {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        query: HibiQuery,
    },
    /// Two chains with the bottom of the first below the top of the second.
    PiPrime {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        query: HibiQuery,
    },
    /// A poset read from a file: element count, then one `a < b` per line.
    File {
        path: PathBuf,
        #[command(flatten)]
        query: HibiQuery,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
struct HibiQuery {
    #[arg(long)]
    level: bool,
    #[arg(long)]
    pure: bool,
    /// Print the Hilbert function in degrees 0..=T.
    #[arg(long, value_name = "T")]
    hilbert: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_positive_u128(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer, got {s:?}")),
        Ok(v) => Ok(v),
    }
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            _ if e.is_budget() => EXIT_UNVERIFIED,
            Error::Integrity(_) => EXIT_DISAGREE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

/// One report line: the label padded to a fixed column, then the value.
fn kv(out: &mut impl Write, label: &str, value: fmt::Arguments) -> io::Result<()> {
    writeln!(out, "{label:<22}  {value}")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn classify(out: &mut impl Write, p: &Partition, direct: bool, budget: &Budget) -> CmdResult {
    let sys = SupportSystem::new(p);
    let dim = sys.polytope_dim() as u64 + 1;
    let ell = if p.in_main_range() {
        ell_closed_form(p)?
    } else {
        sys.ell_bruteforce(budget)?
    };
    let v = characterized_verdict(p);
    kv(out, "partition", format_args!("{p}"))?;
    kv(out, "d", format_args!("{}", p.d()))?;
    kv(out, "case", format_args!("{}", v.case))?;
    kv(out, "dim R", format_args!("{dim}"))?;
    kv(out, "ell", format_args!("{ell}"))?;
    kv(out, "s", format_args!("{}", dim - ell))?;
    kv(out, "gorenstein", format_args!("{}", yes_no(v.gorenstein)))?;
    kv(out, "level", format_args!("{}", yes_no(v.level)))?;
    kv(
        out,
        "almost gorenstein",
        format_args!("{}", yes_no(v.almost_gorenstein)),
    )?;
    if !direct {
        return Ok(0);
    }
    let c = cross_check(p, budget)?;
    match &c.direct {
        Some(a) => write_direct(out, a)?,
        None => kv(
            out,
            "direct",
            format_args!(
                "unverified ({})",
                c.unverified_reason.as_deref().unwrap_or("budget")
            ),
        )?,
    }
    kv(out, "agreement", format_args!("{}", c.status()))?;
    Ok(status_code(c.status()))
}

fn write_direct(out: &mut impl Write, a: &DirectAnalysis) -> io::Result<()> {
    let h: Vec<String> = a.hilbert.h.iter().map(|x| x.to_string()).collect();
    let counts: Vec<String> = a.generator_counts.iter().map(|x| x.to_string()).collect();
    kv(out, "h-vector", format_args!("({})", h.join(", ")))?;
    kv(out, "h_s", format_args!("{}", a.hilbert.h_s()))?;
    kv(out, "generators", format_args!("{}", counts.join(" ")))?;
    kv(out, "r(R)", format_args!("{}", a.cm_type))?;
    kv(out, "e(C)", format_args!("{}", a.e_of_c))?;
    kv(out, "mu(C)", format_args!("{}", a.mu_of_c))?;
    kv(
        out,
        "direct gorenstein",
        format_args!("{}", yes_no(a.gorenstein)),
    )?;
    kv(out, "direct level", format_args!("{}", yes_no(a.level)))?;
    kv(
        out,
        "direct almost gorenstein",
        format_args!("{}", yes_no(a.almost_gorenstein)),
    )
}

fn status_code(s: Agreement) -> u8 {
    match s {
        Agreement::Agree => 0,
        Agreement::Disagree => EXIT_DISAGREE,
        Agreement::Unverified => EXIT_UNVERIFIED,
    }
}

fn cmd_sweep(max_d: u64, format: Format, output: Option<PathBuf>, budget: &Budget) -> CmdResult {
    let rows = sweep(max_d as usize, budget)?;
    let mut buf = Vec::new();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut buf);
            for r in &rows {
                w.serialize(r).map_err(|e| Failure {
                    code: EXIT_USAGE,
                    message: e.to_string(),
                })?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &rows).map_err(io::Error::from)?;
            buf.push(b'\n');
        }
    }
    match output {
        Some(path) => fs::write(path, &buf)?,
        None => io::stdout().write_all(&buf)?,
    }
    let worst = rows
        .iter()
        .map(|r| status_code(r.verified))
        .max()
        .unwrap_or(0);
    Ok(worst)
}

fn cmd_verify(out: &mut impl Write, max_d: u64, force: bool, budget: &Budget) -> CmdResult {
    if max_d > VERIFY_MAX_D && !force {
        return Err(Failure {
            code: EXIT_USAGE,
            message: format!("max-d {max_d} exceeds {VERIFY_MAX_D}; pass --force to run anyway"),
        });
    }
    let checks = cross_check_all(max_d as usize, budget)?;
    let mut agree = 0;
    let mut disagree = Vec::new();
    let mut unverified = Vec::new();
    let mut violations = Vec::new();
    for c in &checks {
        match c.status() {
            Agreement::Agree => agree += 1,
            Agreement::Disagree => disagree.push(c),
            Agreement::Unverified => unverified.push(c),
        }
        if let Some(a) = &c.direct {
            violations.extend(a.property_violations());
        }
    }
    kv(out, "partitions checked", format_args!("{}", checks.len()))?;
    kv(out, "agree", format_args!("{agree}"))?;
    kv(out, "disagree", format_args!("{}", disagree.len()))?;
    kv(out, "unverified", format_args!("{}", unverified.len()))?;
    kv(
        out,
        "property violations",
        format_args!("{}", violations.len()),
    )?;
    for c in &disagree {
        writeln!(
            out,
            "DISAGREE {}: gorenstein {}, level {}, almost gorenstein {}",
            c.partition, c.gorenstein, c.level, c.almost_gorenstein
        )?;
    }
    for v in &violations {
        writeln!(out, "VIOLATION {v}")?;
    }
    for c in &unverified {
        writeln!(
            out,
            "UNVERIFIED {}: {}",
            c.partition,
            c.unverified_reason.as_deref().unwrap_or("budget")
        )?;
    }
    Ok(if !disagree.is_empty() || !violations.is_empty() {
        EXIT_DISAGREE
    } else if !unverified.is_empty() {
        EXIT_UNVERIFIED
    } else {
        0
    })
}

fn cmd_hibi(out: &mut impl Write, source: PosetSource) -> CmdResult {
    let (poset, name, query) = match source {
        PosetSource::Pi { m, n, query } => (
            pi_poset(m as usize, n as usize)?,
            format!("Pi_{{{m},{n}}}"),
            query,
        ),
        PosetSource::PiPrime { m, n, query } => (
            pi_prime_poset(m as usize, n as usize)?,
            format!("Pi'_{{{m},{n}}}"),
            query,
        ),
        PosetSource::File { path, query } => {
            let text = fs::read_to_string(&path)?;
            let p: Poset = text.parse()?;
            (p, path.display().to_string(), query)
        }
    };
    kv(out, "poset", format_args!("{name}"))?;
    kv(out, "elements", format_args!("{}", poset.len()))?;
    kv(
        out,
        "rank of hat poset",
        format_args!("{}", poset.rank_hat()),
    )?;
    if query.pure {
        kv(
            out,
            "pure (gorenstein)",
            format_args!("{}", yes_no(poset.is_pure())),
        )?;
    }
    if query.level {
        let (r, seq) = max_r_value(&poset)?;
        let shown: Vec<String> = seq
            .pairs
            .iter()
            .map(|(y, x)| format!("y={y} x={x}"))
            .collect();
        kv(
            out,
            "level",
            format_args!("{}", yes_no(is_level_hibi(&poset)?)),
        )?;
        kv(out, "max r-value", format_args!("{r}"))?;
        if !shown.is_empty() {
            kv(out, "attained by", format_args!("{}", shown.join(", ")))?;
        }
        writeln!(
            out,
            "upper intervals pure {}",
            yes_no(upper_interval_pure_sufficient(&poset))
        )?;
    }
    if let Some(t) = query.hilbert {
        for (m, v) in hibi_hilbert_series_prefix(&poset, t)?.iter().enumerate() {
            writeln!(out, "H({m}) = {v}")?;
        }
    }
    Ok(0)
}

fn cmd_ehrhart(
    out: &mut impl Write,
    p: &Partition,
    m: u64,
    count: bool,
    budget: &Budget,
) -> CmdResult {
    let poly = ehrhart_closed_form(p);
    kv(out, "partition", format_args!("{p}"))?;
    kv(out, "dimension", format_args!("{}", poly.dim))?;
    kv(out, "coefficients", format_args!("{}", poly.poly))?;
    kv(
        out,
        &format!("i(P, {m})"),
        format_args!("{}", ehrhart_closed_form_value(p, m)),
    )?;
    if !count {
        return Ok(0);
    }
    match SupportSystem::new(p).count_enumerated(m, false, budget) {
        Ok(c) => {
            kv(out, "counted", format_args!("{c}"))?;
            if poly.count(m)? != c.into() {
                writeln!(out, "MISMATCH between closed form and count")?;
                return Ok(EXIT_DISAGREE);
            }
            Ok(0)
        }
        Err(e) if e.is_budget() => {
            kv(out, "counted", format_args!("unverified ({e})"))?;
            Ok(EXIT_UNVERIFIED)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_canonical(out: &mut impl Write, p: &Partition, list: bool, budget: &Budget) -> CmdResult {
    let g = canonical_generators(p, budget)?;
    kv(out, "partition", format_args!("{p}"))?;
    kv(out, "ell", format_args!("{}", g.ell))?;
    kv(out, "r(R)", format_args!("{}", g.cm_type()))?;
    kv(
        out,
        "gorenstein",
        format_args!("{}", yes_no(g.is_gorenstein())),
    )?;
    kv(out, "level", format_args!("{}", yes_no(g.is_level())))?;
    for (k, pts) in g.by_degree.iter().enumerate() {
        kv(
            out,
            &format!("degree {}", g.ell + k as u64),
            format_args!("{}", pts.len()),
        )?;
        if list {
            for x in pts {
                writeln!(out, "  ({x})")?;
            }
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    let budget = match cli.budget {
        Some(b) => Budget::new(b),
        None => Budget::from_env()?,
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match cli.command {
        Command::Classify { parts, direct } => classify(&mut out, &parts, direct, &budget)?,
        Command::Sweep {
            max_d,
            format,
            output,
        } => {
            drop(out);
            return cmd_sweep(max_d, format, output, &budget);
        }
        Command::Verify { max_d, force } => cmd_verify(&mut out, max_d, force, &budget)?,
        Command::Hibi { poset } => cmd_hibi(&mut out, poset)?,
        Command::Ehrhart { parts, m, count } => cmd_ehrhart(&mut out, &parts, m, count, &budget)?,
        Command::Canonical { parts, list_points } => {
            cmd_canonical(&mut out, &parts, list_points, &budget)?
        }
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
