//! Integer and rational arithmetic, primality, factorization and the
//! quadratic symbols used everywhere else.
//!
//! Discriminant-scale quantities (discriminants, `m = (d1 d2 - x^2)/4`, ideal
//! norms) are carried as `i64`; anything that can grow without bound
//! (the products `J(d1, d2)`, oracle mantissas) is a `BigInt`.

mod factor;
mod primes;
mod symbols;

pub use factor::{factor, factor_i64, Factorization};
pub use primes::{is_prime, is_prime_u64, primes_up_to, small_primes, MR_WITNESSES};
pub use symbols::{hilbert_symbol, kronecker, Place};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type Int = BigInt;
pub type Rat = num_rational::Ratio<i64>;

/// Largest `e` with `p^e | n`.
pub fn valuation(n: &BigInt, p: &BigInt) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return Ok(e);
        }
        n = q;
        e += 1;
    }
}

/// `valuation` for machine integers. Panics on `n = 0` or `p < 2`.
pub fn val(n: i64, p: i64) -> u32 {
    assert!(n != 0, "valuation of zero");
    assert!(p >= 2, "valuation base must be at least 2");
    let mut n = n;
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Distinct prime divisors of `|n|`, increasing. Empty for `|n| <= 1`.
pub fn prime_divisors(n: i64) -> Vec<i64> {
    if n == 0 {
        return Vec::new();
    }
    factor_i64(n).into_iter().map(|(p, _)| p).collect()
}

/// Positive divisors of `|n|`, increasing.
pub fn divisors(n: i64) -> Vec<i64> {
    let mut out = vec![1i64];
    for (p, e) in factor_i64(n) {
        let cur = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(cur.iter().map(|x| x * pk));
        }
    }
    out.sort_unstable();
    out
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Exact integer square root of a non-negative perfect square.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n as u64) as i64;
    (r * r == n).then_some(r)
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).is_none_or(|s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p`.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse().ok()?, b.trim().parse::<i64>().ok()?);
            (b != 0).then(|| Rat::new(a, b))
        }
        None => s.trim().parse().ok().map(Rat::from_integer),
    }
}
