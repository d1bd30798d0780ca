//! Exact integer q-expansion of `j = E4^3 / Delta`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::{Arc, RwLock};

fn sigma(n: u64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

fn eisenstein(len: usize, k: u32, c: i64) -> Vec<BigInt> {
    let mut e = vec![BigInt::one()];
    for n in 1..len {
        e.push(sigma(n as u64, k - 1) * c);
    }
    e
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Delta / q` to `len` terms, as `(E4^3 - E6^2) / 1728`.
pub fn delta_over_q_eisenstein(len: usize) -> Vec<BigInt> {
    let e4 = eisenstein(len + 1, 4, 240);
    let e6 = eisenstein(len + 1, 6, -504);
    let e4c = mul_trunc(&mul_trunc(&e4, &e4, len + 1), &e4, len + 1);
    let e6s = mul_trunc(&e6, &e6, len + 1);
    (1..=len).map(|n| (&e4c[n] - &e6s[n]) / 1728).collect()
}

/// `Delta / q = prod (1 - q^n)^24` to `len` terms, by direct multiplication.
pub fn delta_over_q_product(len: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); len];
    acc[0] = BigInt::one();
    for n in 1..len {
        for _ in 0..24 {
            for i in (n..len).rev() {
                let t = acc[i - n].clone();
                acc[i] -= t;
            }
        }
    }
    acc
}

/// Coefficients `c_0, c_1, ...` with `j = 1/q + sum c_n q^n`, computed as
/// `(E4^3 / (Delta/q))` shifted by one.
fn compute(len: usize) -> Vec<BigInt> {
    let m = len + 1;
    let e4 = eisenstein(m, 4, 240);
    let e4c = mul_trunc(&mul_trunc(&e4, &e4, m), &e4, m);
    let d = delta_over_q_eisenstein(m);
    // d[0] = 1, so a = e4c / d by forward substitution.
    let mut a: Vec<BigInt> = Vec::with_capacity(m);
    for n in 0..m {
        let mut s = e4c[n].clone();
        for k in 1..=n {
            s -= &d[k] * &a[n - k];
        }
        a.push(s);
    }
    a.into_iter().skip(1).collect()
}

static CACHE: RwLock<Option<Arc<Vec<BigInt>>>> = RwLock::new(None);

/// At least `len` coefficients of `j - 1/q`, starting with `c_0 = 744`.
/// The table is shared and only ever replaced by a longer one.
pub fn j_coefficients(len: usize) -> Arc<Vec<BigInt>> {
    if let Some(c) = CACHE.read().unwrap().as_ref() {
        if c.len() >= len {
            return c.clone();
        }
    }
    let mut w = CACHE.write().unwrap();
    if let Some(c) = w.as_ref() {
        if c.len() >= len {
            return c.clone();
        }
    }
    let have = w.as_ref().map_or(0, |c| c.len());
    let target = len.max(2 * have).max(64);
    let c = Arc::new(compute(target));
    *w = Some(c.clone());
    c
}
