//! `cmfactor`: the factorization of `J(d1, d2)` from the closed formulas,
//! checked against the analytic oracle.
//!
//! Exit codes: 0 success, 1 a proved-status mismatch, 2 usage error,
//! 3 any other failure.

mod cache;
mod output;

use cache::Cache;
use clap::{Parser, Subcommand, ValueEnum};
use cmfactor::arith::rat_to_string;
use cmfactor::oracle::OracleConfig;
use cmfactor::quadratic::{class_number, genus_characters, genus_k, genus_of_ideal, make_disc, reduced_forms, IdealLat};
use cmfactor::quaternion::{snm_rows, structure_checks, Setup, SnmRow};
use cmfactor::report::{pair_report, pairs, Mode, ReportRecord};
use cmfactor::valuation::{support_prime, v_f, PairContext, Reading, Status};
use cmfactor::Error;
use output::Format;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cmfactor", version, about = "Factor products of differences of singular moduli")]
struct Cli {
    /// One JSON object per record on standard output.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// One CSV row per (pair, prime).
    #[arg(long, global = true)]
    csv: bool,
    /// JSON-lines result cache.
    #[arg(long, global = true, env = "GZ_CACHE", value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Starting precision of the oracle in bits.
    #[arg(long, global = true, env = "GZ_PRECISION_BITS", value_name = "N")]
    prec_bits: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Reading of the ambiguous formula cases; `literal` bypasses the cache.
    #[arg(long, global = true, value_enum, default_value_t = ReadingArg::Consistent)]
    reading: ReadingArg,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadingArg {
    Consistent,
    Literal,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compare formula and oracle valuations of J(d1, d2) prime by prime.
    #[command(allow_negative_numbers = true)]
    Jfactor {
        d1: i64,
        d2: i64,
        #[arg(long, default_value_t = Mode::Theorem)]
        mode: Mode,
    },
    /// The closed-form valuation v_l(F(m)) for the pair (d1, d2).
    #[command(allow_negative_numbers = true)]
    Vf { d1: i64, d2: i64, l: i64, m: i64 },
    /// Every admissible pair with |d_i| <= max-disc.
    Scan {
        #[arg(long, default_value_t = Mode::Theorem)]
        mode: Mode,
        #[arg(long, default_value_t = 100)]
        max_disc: i64,
    },
    /// Order axioms and S_{n,m} counts for the maximal orders of (d1, l).
    #[command(allow_negative_numbers = true)]
    QuatVerify {
        d1: i64,
        l: i64,
        /// Largest |d2| in the count table.
        #[arg(long, default_value_t = 50)]
        max_disc: i64,
        /// Largest n in the count table.
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// Reduced forms, class number and genus characters of d.
    #[command(allow_negative_numbers = true)]
    ClassGroup { d: i64 },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidDiscriminant(_)
            | Error::EqualDiscriminants
            | Error::HypothesisViolated(_)
            | Error::Domain(_)
            | Error::PrecisionTooLow(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Failure {
        Failure::Runtime(e.to_string())
    }
}

struct Ctx {
    format: Format,
    cache: Option<Cache>,
    cfg: OracleConfig,
    reading: Reading,
}

impl Ctx {
    fn cacheable(&self) -> bool {
        self.reading == Reading::Consistent
    }

    /// The record for one pair, from the cache when possible.
    fn record(&self, d1: i64, d2: i64, mode: Mode) -> Result<ReportRecord, Failure> {
        let cache = self.cache.as_ref().filter(|_| self.cacheable());
        if let Some(r) = cache.and_then(|c| c.get(d1, d2, mode)) {
            return Ok(r.clone());
        }
        let r = pair_report(d1, d2, mode, self.reading, &self.cfg)?;
        if let Some(c) = cache {
            c.append(&r)?;
        }
        Ok(r)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    if let Some(p) = cli.prec_bits {
        if p < 64 {
            return Err(Failure::Usage(format!("--prec-bits {p} is below the 64-bit minimum")));
        }
    }
    let format = match (cli.json, cli.csv) {
        (true, _) => Format::Json,
        (_, true) => Format::Csv,
        _ => Format::Table,
    };
    let cache = match &cli.cache {
        Some(p) => {
            let c = Cache::open(p)?;
            if c.skipped > 0 {
                eprintln!("warning: {} unreadable lines in {}", c.skipped, p.display());
            }
            Some(c)
        }
        None => None,
    };
    let ctx = Ctx {
        format,
        cache,
        cfg: OracleConfig { start_bits: cli.prec_bits, ..OracleConfig::default() },
        reading: match cli.reading {
            ReadingArg::Consistent => Reading::Consistent,
            ReadingArg::Literal => Reading::Literal,
        },
    };
    match cli.cmd {
        Cmd::Jfactor { d1, d2, mode } => jfactor(&ctx, d1, d2, mode),
        Cmd::Vf { d1, d2, l, m } => vf(&ctx, d1, d2, l, m),
        Cmd::Scan { mode, max_disc } => scan(&ctx, mode, max_disc),
        Cmd::QuatVerify { d1, l, max_disc, n } => quat_verify(&ctx, d1, l, max_disc, n),
        Cmd::ClassGroup { d } => class_group(&ctx, d),
    }
}

fn exit_for(mismatches: usize) -> ExitCode {
    if mismatches > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn emit_records(ctx: &Ctx, records: &[ReportRecord]) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match ctx.format {
        Format::Table => {
            for r in records {
                output::record_table(&mut out, r)?;
            }
        }
        Format::Json => {
            for r in records {
                output::json_line(&mut out, r)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in records {
                output::record_csv(&mut w, r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn jfactor(ctx: &Ctx, d1: i64, d2: i64, mode: Mode) -> Result<ExitCode, Failure> {
    PairContext::new(d1, d2)?;
    let r = ctx.record(d1, d2, mode)?;
    emit_records(ctx, std::slice::from_ref(&r))?;
    Ok(exit_for(r.proved_mismatches()))
}

#[derive(Serialize)]
struct VfOut {
    d1: i64,
    d2: i64,
    l: i64,
    m: i64,
    support: Option<i64>,
    value: String,
    status: Status,
}

fn vf(ctx: &Ctx, d1: i64, d2: i64, l: i64, m: i64) -> Result<ExitCode, Failure> {
    let pc = PairContext::new(d1, d2)?;
    if l < 2 || !cmfactor::arith::is_prime_u64(l as u64) {
        return Err(Failure::Usage(format!("{l} is not prime")));
    }
    let f = v_f(&pc, l, m, ctx.reading)?;
    let o = VfOut { d1, d2, l, m, support: support_prime(&pc, m)?, value: rat_to_string(&f.value), status: f.status };
    let mut out = io::stdout().lock();
    match ctx.format {
        Format::Json => output::json_line(&mut out, &o)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.serialize(&o)?;
            w.flush()?;
        }
        Format::Table => {
            let s = o.support.map_or_else(|| "none".into(), |p| p.to_string());
            writeln!(out, "v_{l}(F({m})) = {} [{}], support prime {s}", o.value, o.status)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn scan(ctx: &Ctx, mode: Mode, max_disc: i64) -> Result<ExitCode, Failure> {
    if max_disc < 4 {
        return Err(Failure::Usage("--max-disc must be at least 4".into()));
    }
    let list = pairs(max_disc, mode);
    let results: Vec<Result<ReportRecord, (i64, i64, String)>> = list
        .par_iter()
        .map(|&(a, b)| {
            ctx.record(a, b, mode).map_err(|e| match e {
                Failure::Usage(m) | Failure::Runtime(m) => (a, b, m),
            })
        })
        .collect();
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(r) => records.push(r),
            Err(e) => errors.push(e),
        }
    }
    emit_records(ctx, if ctx.format == Format::Table { &[] } else { &records })?;

    let mut tally: BTreeMap<Status, (usize, usize)> = BTreeMap::new();
    for row in records.iter().flat_map(|r| &r.rows) {
        let e = tally.entry(row.status).or_default();
        e.0 += 1;
        e.1 += usize::from(!row.matches());
    }
    let proved_bad: usize = records.iter().map(|r| r.proved_mismatches()).sum();
    let mut summary = format!("scan {mode}, |d_i| <= {max_disc}: {} pairs", records.len());
    for (s, (n, bad)) in &tally {
        summary += &format!("; {s}: {n} rows, {bad} mismatches");
    }
    if ctx.format == Format::Table {
        println!("{summary}");
        for r in records.iter().filter(|r| r.proved_mismatches() > 0) {
            for row in r.rows.iter().filter(|x| x.status == Status::Proved && !x.matches()) {
                println!(
                    "MISMATCH ({}, {}) l = {}: formula {}, oracle {}",
                    r.d1,
                    r.d2,
                    row.l,
                    output::opt_rat(&row.v_formula),
                    rat_to_string(&row.v_oracle)
                );
            }
        }
    } else {
        eprintln!("{summary}");
    }
    for (a, b, m) in &errors {
        eprintln!("error: ({a}, {b}): {m}");
    }
    if proved_bad > 0 {
        Ok(ExitCode::from(1))
    } else if !errors.is_empty() {
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

#[derive(Serialize)]
struct QuatOut<'a> {
    d1: i64,
    l: i64,
    q: i64,
    jsq: i64,
    ramified: bool,
    checks: &'a [cmfactor::quaternion::Check],
    rows: &'a [SnmRow],
}

fn quat_verify(ctx: &Ctx, d1: i64, l: i64, max_disc: i64, n: u32) -> Result<ExitCode, Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let s = Setup::new(d1, l)?;
    let checks = structure_checks(&s, n)?;
    let rows = snm_rows(d1, l, max_disc, n)?;
    let failed_checks = checks.iter().filter(|c| !c.ok).count();
    let proved_bad = rows.iter().filter(|r| r.status == Status::Proved && !r.matches()).count();
    let mut out = io::stdout().lock();
    match ctx.format {
        Format::Json => output::json_line(
            &mut out,
            &QuatOut { d1, l, q: s.alg.q, jsq: s.alg.jsq, ramified: s.alg.ramified, checks: &checks, rows: &rows },
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &rows {
                w.serialize((r.d2, r.m, r.n, r.brute, rat_to_string(&r.closed), r.status.to_string(), r.matches()))?;
            }
            w.flush()?;
        }
        Format::Table => {
            let kind = if s.alg.ramified { "ramified" } else { "inert" };
            writeln!(out, "d1 = {d1}, l = {l} ({kind}), q = {}, j^2 = {}", s.alg.q, s.alg.jsq)?;
            output::checks_table(&mut out, &checks)?;
            output::snm_table(&mut out, &rows)?;
            let compared = rows.iter().filter(|r| r.status == Status::Proved).count();
            writeln!(
                out,
                "{} of {} checks failed; {compared} proved counts, {proved_bad} mismatches; {} rows outside the theorem",
                failed_checks,
                checks.len(),
                rows.len() - compared
            )?;
        }
    }
    Ok(exit_for(failed_checks + proved_bad))
}

#[derive(Serialize)]
struct FormOut {
    a: i64,
    b: i64,
    c: i64,
    genus: Vec<i32>,
}

#[derive(Serialize)]
struct ClassOut {
    d: i64,
    f: i64,
    d_fund: i64,
    w: i64,
    h: i64,
    characters: Vec<String>,
    genera: usize,
    forms: Vec<FormOut>,
}

fn class_group(ctx: &Ctx, d: i64) -> Result<ExitCode, Failure> {
    let disc = make_disc(d)?;
    let forms = reduced_forms(&disc)
        .into_iter()
        .map(|f| -> Result<FormOut, Failure> {
            let a = IdealLat::from_form(&disc, &f)?;
            Ok(FormOut { a: f.a, b: f.b, c: f.c, genus: genus_of_ideal(&a)?.bits })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let o = ClassOut {
        d,
        f: disc.f,
        d_fund: disc.d_fund,
        w: disc.w,
        h: class_number(&disc),
        characters: genus_characters(&disc).iter().map(|c| c.to_string()).collect(),
        genera: 1 << (genus_k(&disc) - 1),
        forms,
    };
    let mut out = io::stdout().lock();
    match ctx.format {
        Format::Json => output::json_line(&mut out, &o)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for f in &o.forms {
                let g: Vec<String> = f.genus.iter().map(|b| b.to_string()).collect();
                w.serialize((f.a, f.b, f.c, g.join(" ")))?;
            }
            w.flush()?;
        }
        Format::Table => {
            writeln!(out, "d = {d}, conductor {}, fundamental {}, w = {}", o.f, o.d_fund, o.w)?;
            writeln!(out, "h = {}, {} genera, characters {}", o.h, o.genera, o.characters.join(" "))?;
            for f in &o.forms {
                let g: Vec<&str> = f.genus.iter().map(|&b| if b == 1 { "+" } else { "-" }).collect();
                writeln!(out, "  ({}, {}, {})  {}", f.a, f.b, f.c, g.join(" "))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
