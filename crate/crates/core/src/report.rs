//! Per-pair comparison of the closed formulas with the oracle, in a form the
//! CLI prints and caches.

use crate::arith::{gcd, prime_divisors, rat_from_str, rat_to_string, Factorization, Rat};
use crate::error::{Error, Result};
use crate::oracle::{factor_bounded, j_product_with, JProduct, OracleConfig};
use crate::quadratic::make_disc;
use crate::valuation::{
    candidate_primes, conjecture_v_j, enumerate_x, gz_classic_f, v_j, PairContext, Reading,
    Status, Term,
};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Bumped whenever the meaning of a cached record changes.
pub const RECORD_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Theorem,
    Conjecture,
    Classic,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Mode, String> {
        match s {
            "theorem" => Ok(Mode::Theorem),
            "conjecture" => Ok(Mode::Conjecture),
            "classic" => Ok(Mode::Classic),
            _ => Err(format!("unknown mode {s} (theorem, conjecture, classic)")),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Theorem => "theorem",
            Mode::Conjecture => "conjecture",
            Mode::Classic => "classic",
        })
    }
}

/// Rationals travel as `"p/q"` strings.
pub mod rat_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        rat_from_str(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s}")))
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&rat_to_string(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rat>, D::Error> {
            match Option::<String>::deserialize(d)? {
                None => Ok(None),
                Some(s) => rat_from_str(&s)
                    .map(Some)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s}"))),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub l: i64,
    #[serde(with = "rat_serde::opt")]
    pub v_formula: Option<Rat>,
    #[serde(with = "rat_serde")]
    pub v_oracle: Rat,
    pub status: Status,
    pub terms: Vec<Term>,
}

impl Row {
    pub fn matches(&self) -> bool {
        self.v_formula == Some(self.v_oracle)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub version: u32,
    pub mode: Mode,
    pub d1: i64,
    pub d2: i64,
    pub j_sign: i8,
    /// `|J(d1, d2)|` in decimal.
    pub j_abs: String,
    pub precision_used: u64,
    pub rows: Vec<Row>,
    pub elapsed_ms: u64,
}

impl ReportRecord {
    /// Proved rows whose formula value disagrees with the oracle.
    pub fn proved_mismatches(&self) -> usize {
        self.rows.iter().filter(|r| r.status == Status::Proved && !r.matches()).count()
    }

    pub fn mismatches(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status && !r.matches()).count()
    }
}

/// Whether `(d1, d2)` is in scope for `mode`.
pub fn admissible(d1: i64, d2: i64, mode: Mode) -> bool {
    let (Ok(a), Ok(b)) = (make_disc(d1), make_disc(d2)) else {
        return false;
    };
    if d1 == d2 {
        return false;
    }
    match mode {
        Mode::Theorem => a.is_fundamental(),
        Mode::Conjecture => gcd(a.f, b.f) == 1,
        Mode::Classic => a.is_fundamental() && b.is_fundamental() && gcd(d1, d2) == 1,
    }
}

/// All negative discriminants with `|d| <= max`, ordered by `|d|`.
pub fn discriminants_up_to(max: i64) -> Vec<i64> {
    (3..=max).map(|n| -n).filter(|&d| d.rem_euclid(4) <= 1).collect()
}

/// Ordered admissible pairs with both `|d_i| <= max`.
pub fn pairs(max: i64, mode: Mode) -> Vec<(i64, i64)> {
    let ds = discriminants_up_to(max);
    let mut out = Vec::new();
    for &a in &ds {
        for &b in &ds {
            if admissible(a, b, mode) {
                out.push((a, b));
            }
        }
    }
    out
}

/// The oracle's `J` together with its factorization over primes `<= d1 d2 / 4`.
pub fn oracle_factor(ctx: &PairContext, cfg: &OracleConfig) -> Result<(JProduct, Factorization)> {
    let jp = j_product_with(&ctx.d1, &ctx.d2, cfg)?;
    let fact = factor_bounded(&jp.value, (ctx.d1.d * ctx.d2.d / 4) as u64)?;
    Ok((jp, fact))
}

fn row_primes(ctx: &PairContext, fact: &Factorization) -> Vec<i64> {
    let mut ls = candidate_primes(ctx);
    ls.extend(fact.factors.iter().filter_map(|(p, _)| p.to_i64()));
    ls.sort_unstable();
    ls.dedup();
    ls
}

/// Rows comparing the mode's formula with an already computed oracle value.
pub fn rows_for(
    ctx: &PairContext,
    fact: &Factorization,
    mode: Mode,
    reading: Reading,
) -> Result<Vec<Row>> {
    let exp = ctx.exponent();
    let mut rows = Vec::new();
    let classic = if mode == Mode::Classic { Some(classic_exponents(ctx)?) } else { None };
    for l in row_primes(ctx, fact) {
        let v_oracle = exp * fact.exponent(&l.into()) as i64;
        let row = match mode {
            Mode::Theorem => {
                let r = v_j(ctx, l, reading);
                Row { l, v_formula: r.value, v_oracle, status: r.status, terms: r.terms }
            }
            Mode::Conjecture => Row {
                l,
                v_formula: Some(conjecture_v_j(ctx, l, reading)?),
                v_oracle,
                status: Status::Conjectural,
                terms: Vec::new(),
            },
            Mode::Classic => {
                let c = classic.as_ref().expect("classic exponents");
                let v = c.iter().find(|(p, _)| *p == l).map_or(0, |&(_, e)| e);
                Row {
                    l,
                    v_formula: Some(Rat::from_integer(v)),
                    v_oracle,
                    status: Status::Proved,
                    terms: Vec::new(),
                }
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Exponents of `prod_x F(m_x)^{mult}`, using the classical closed form.
pub fn classic_exponents(ctx: &PairContext) -> Result<Vec<(i64, i64)>> {
    let mut acc: Vec<(i64, i64)> = Vec::new();
    for xt in enumerate_x(ctx) {
        if xt.m == 0 {
            return Err(Error::HypothesisViolated("m = 0 term in a classical pair".into()));
        }
        for (p, e) in gz_classic_f(ctx, xt.m)?.factors {
            let p = p.to_i64().expect("small prime");
            match acc.iter_mut().find(|(q, _)| *q == p) {
                Some(slot) => slot.1 += e as i64 * xt.mult,
                None => acc.push((p, e as i64 * xt.mult)),
            }
        }
    }
    acc.sort_unstable();
    Ok(acc)
}

/// The full record for one pair.
pub fn pair_report(d1: i64, d2: i64, mode: Mode, reading: Reading, cfg: &OracleConfig) -> Result<ReportRecord> {
    let start = Instant::now();
    let ctx = PairContext::new(d1, d2)?;
    let (jp, fact) = oracle_factor(&ctx, cfg)?;
    let rows = rows_for(&ctx, &fact, mode, reading)?;
    Ok(ReportRecord {
        version: RECORD_VERSION,
        mode,
        d1,
        d2,
        j_sign: jp.sign,
        j_abs: num_traits::Signed::abs(&jp.value).to_string(),
        precision_used: jp.precision_used,
        rows,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Primes of `J` that divide no positive `m_x`; empty when the bound holds.
pub fn primes_outside_bound(ctx: &PairContext, fact: &Factorization) -> Vec<i64> {
    let ms: Vec<i64> = enumerate_x(ctx).into_iter().filter(|t| t.m > 0).map(|t| t.m).collect();
    fact.factors
        .iter()
        .filter_map(|(p, _)| p.to_i64())
        .filter(|&p| !ms.iter().any(|m| m % p == 0))
        .collect()
}

/// Primes dividing some positive `m_x`.
pub fn bound_primes(ctx: &PairContext) -> Vec<i64> {
    let mut ps: Vec<i64> = enumerate_x(ctx)
        .into_iter()
        .filter(|t| t.m > 0)
        .flat_map(|t| prime_divisors(t.m))
        .collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}
