use cmfactor::arith::rat_to_string;
use cmfactor::quaternion::{Check, SnmRow};
use cmfactor::report::ReportRecord;
use serde::Serialize;
use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub fn opt_rat(v: &Option<cmfactor::arith::Rat>) -> String {
    v.as_ref().map_or_else(|| "-".into(), rat_to_string)
}

/// Long integers are shown as leading digits, trailing digits and length.
fn abbreviate(s: &str) -> String {
    if s.len() <= 60 {
        s.to_string()
    } else {
        format!("{}...{} ({} digits)", &s[..20], &s[s.len() - 20..], s.len())
    }
}

pub fn record_table(out: &mut impl Write, r: &ReportRecord) -> io::Result<()> {
    let sign = if r.j_sign < 0 { "-" } else { "" };
    writeln!(
        out,
        "J({}, {}) = {sign}{}  [{} mode, {} bits]",
        r.d1,
        r.d2,
        abbreviate(&r.j_abs),
        r.mode,
        r.precision_used
    )?;
    writeln!(out, "{:>6}  {:>10}  {:>10}  status", "l", "formula", "oracle")?;
    for row in &r.rows {
        let flag = if row.matches() { "" } else { "MISMATCH" };
        writeln!(
            out,
            "{:>6}  {:>10}  {:>10}  {:<12} {flag}",
            row.l,
            opt_rat(&row.v_formula),
            rat_to_string(&row.v_oracle),
            row.status.to_string()
        )?;
    }
    Ok(())
}

pub fn json_line(out: &mut impl Write, v: &impl Serialize) -> io::Result<()> {
    let s = serde_json::to_string(v).map_err(io::Error::other)?;
    writeln!(out, "{s}")
}

#[derive(Serialize)]
struct CsvRow {
    d1: i64,
    d2: i64,
    mode: String,
    l: i64,
    v_formula: String,
    v_oracle: String,
    status: String,
    matches: bool,
}

pub fn record_csv<W: Write>(w: &mut csv::Writer<W>, r: &ReportRecord) -> csv::Result<()> {
    for row in &r.rows {
        w.serialize(CsvRow {
            d1: r.d1,
            d2: r.d2,
            mode: r.mode.to_string(),
            l: row.l,
            v_formula: opt_rat(&row.v_formula),
            v_oracle: rat_to_string(&row.v_oracle),
            status: row.status.to_string(),
            matches: row.matches(),
        })?;
    }
    Ok(())
}

pub fn checks_table(out: &mut impl Write, checks: &[Check]) -> io::Result<()> {
    for c in checks {
        let tag = if c.ok { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            writeln!(out, "[{tag}] {}", c.name)?;
        } else {
            writeln!(out, "[{tag}] {}: {}", c.name, c.detail)?;
        }
    }
    Ok(())
}

pub fn snm_table(out: &mut impl Write, rows: &[SnmRow]) -> io::Result<()> {
    writeln!(out, "{:>6}  {:>6}  {:>2}  {:>6}  {:>8}  {:<12}", "d2", "m", "n", "brute", "closed", "status")?;
    for r in rows {
        let flag = if r.matches() { "" } else { "MISMATCH" };
        writeln!(
            out,
            "{:>6}  {:>6}  {:>2}  {:>6}  {:>8}  {:<12} {flag}",
            r.d2,
            r.m,
            r.n,
            r.brute,
            rat_to_string(&r.closed),
            r.status.to_string()
        )?;
    }
    Ok(())
}
