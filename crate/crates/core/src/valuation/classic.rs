use super::PairContext;
use crate::arith::{divisors, factor_i64, gcd, kronecker, val, Factorization};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// `F(m) = prod_{n | m} n^{epsilon(m/n)}` for coprime fundamental `d1, d2`,
/// with `epsilon(p) = (d1 | p)` for `p` not dividing `d1`, else `(d2 | p)`,
/// extended multiplicatively.
pub fn gz_classic_f(ctx: &PairContext, m: i64) -> Result<Factorization> {
    let (d1, d2) = (ctx.d1.d, ctx.d2.d);
    if !ctx.d1.is_fundamental() || !ctx.d2.is_fundamental() || gcd(d1, d2) != 1 {
        return Err(Error::HypothesisViolated(format!(
            "({d1}, {d2}) must be coprime fundamental discriminants"
        )));
    }
    if m <= 0 {
        return Err(Error::Domain(format!("m = {m} must be positive")));
    }
    let fm = factor_i64(m);
    let mut eps_p = Vec::with_capacity(fm.len());
    for &(p, _) in &fm {
        let e = if d1 % p != 0 {
            kronecker(d1, p)
        } else if d2 % p != 0 {
            kronecker(d2, p)
        } else {
            return Err(Error::EpsilonUndefined(p));
        };
        eps_p.push(e as i64);
    }
    let eps = |n: i64| -> i64 {
        fm.iter()
            .zip(&eps_p)
            .map(|(&(p, _), &e)| e.pow(val(n, p)))
            .product()
    };
    let mut exps: BTreeMap<i64, i64> = BTreeMap::new();
    for n in divisors(m) {
        let e = eps(m / n);
        if e == 0 {
            continue;
        }
        for (q, k) in factor_i64(n) {
            *exps.entry(q).or_default() += e * k as i64;
        }
    }
    let mut factors = Vec::new();
    for (q, e) in exps {
        if e < 0 {
            return Err(Error::Domain(format!("negative exponent {e} at {q} in F({m})")));
        }
        if e > 0 {
            factors.push((BigInt::from(q), e as u32));
        }
    }
    Ok(Factorization { negative: false, factors })
}
