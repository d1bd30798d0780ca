use super::primes::{is_prime, is_prime_u64, seed_from, small_primes};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// `sign * prod p^e` with primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub negative: bool,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn value(&self) -> BigInt {
        let v = self
            .factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize));
        if self.negative {
            -v
        } else {
            v
        }
    }

    pub fn exponent(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn largest_prime(&self) -> Option<&BigInt> {
        self.factors.last().map(|(p, _)| p)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Full factorization: trial division by primes below one million, then
/// Pollard rho (Brent) on composite cofactors.
pub fn factor(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let negative = n.sign() == Sign::Minus;
    let mut m = n.magnitude().clone();
    let mut acc: BTreeMap<BigUint, u32> = BTreeMap::new();
    for &p in small_primes() {
        let p = BigUint::from(p);
        if &p * &p > m {
            break;
        }
        while (&m % &p).is_zero() {
            m /= &p;
            *acc.entry(p.clone()).or_default() += 1;
        }
    }
    if !m.is_one() {
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if is_prime(&BigInt::from(c.clone())) {
                *acc.entry(c).or_default() += 1;
                continue;
            }
            let d = pollard_brent(&c);
            stack.push(&c / &d);
            stack.push(d);
        }
    }
    Ok(Factorization {
        negative,
        factors: acc.into_iter().map(|(p, e)| (BigInt::from(p), e)).collect(),
    })
}

/// Nontrivial divisor of a composite `n` with no prime factor below 10^6.
fn pollard_brent(n: &BigUint) -> BigUint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from(n));
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    loop {
        let c = rng.gen_biguint_range(&one, n);
        let mut y = rng.gen_biguint_range(&one, n);
        let f = |x: &BigUint| (x * x + &c) % n;
        let m = 128u64;
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n && g >= two {
            return g;
        }
    }
}

/// Factorization of `|n|` for machine integers, primes increasing.
/// Returns an empty list for `|n| <= 1`.
pub fn factor_i64(n: i64) -> Vec<(i64, u32)> {
    let mut m = n.unsigned_abs();
    let mut out = Vec::new();
    if m <= 1 {
        return out;
    }
    for &p in small_primes() {
        let p = p as u64;
        if p * p > m {
            break;
        }
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p as i64, e));
        }
    }
    if m > 1 {
        if is_prime_u64(m) {
            out.push((m as i64, 1));
        } else {
            let f = factor(&BigInt::from(m)).expect("nonzero");
            for (p, e) in f.factors {
                out.push((p.to_i64().expect("fits"), e));
            }
            out.sort_unstable();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_semiprime_beyond_trial_range() {
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(998_244_353u64);
        let f = factor(&(&p * &q * 8)).unwrap();
        assert_eq!(f.factors, vec![(BigInt::from(2), 3), (p, 1), (q, 1)]);
    }

    #[test]
    fn factor_i64_handles_sign_and_units() {
        assert_eq!(factor_i64(-12), vec![(2, 2), (3, 1)]);
        assert!(factor_i64(1).is_empty());
        assert!(factor_i64(-1).is_empty());
    }
}
