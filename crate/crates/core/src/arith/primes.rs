use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

/// Miller-Rabin bases: the first thirteen primes. Testing all of them is a
/// proof of primality for every `n < 3317044064679887385961981` (about
/// 3.3e24, Sorenson-Webster).
pub const MR_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

const DETERMINISTIC_BOUND: &str = "3317044064679887385961981";
const RANDOM_ROUNDS: usize = 40;
const SIEVE_LIMIT: u32 = 1_000_000;

pub fn primes_up_to(n: u32) -> Vec<u32> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// All primes below one million, computed once.
pub fn small_primes() -> &'static [u32] {
    static P: OnceLock<Vec<u32>> = OnceLock::new();
    P.get_or_init(|| primes_up_to(SIEVE_LIMIT))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn strong_probable_prime_u64(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    MR_WITNESSES.iter().all(|&a| strong_probable_prime_u64(n, a))
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigUint::from(2u32), n);
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Primality for `n >= 0`. Deterministic below about 3.3e24; above that a
/// strong probable prime test with the fixed witnesses plus 40 random
/// bases drawn from a generator seeded by `n` itself.
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() == num_bigint::Sign::Minus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let n = n.magnitude();
    for &p in &MR_WITNESSES {
        if (n % p).is_zero() {
            return false;
        }
    }
    if !MR_WITNESSES
        .iter()
        .all(|&a| strong_probable_prime(n, &BigUint::from(a)))
    {
        return false;
    }
    let bound: BigUint = DETERMINISTIC_BOUND.parse().expect("constant");
    if *n < bound {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from(n));
    let two = BigUint::from(2u32);
    let hi = n - &two;
    (0..RANDOM_ROUNDS).all(|_| {
        let a = rng.gen_biguint_range(&two, &hi);
        strong_probable_prime(n, &a)
    })
}

pub(crate) fn seed_from(n: &BigUint) -> u64 {
    n.to_u64_digits()
        .iter()
        .fold(0x9e37_79b9_7f4a_7c15u64, |h, &w| {
            (h ^ w).wrapping_mul(0x0100_0000_01b3).rotate_left(17)
        })
}
