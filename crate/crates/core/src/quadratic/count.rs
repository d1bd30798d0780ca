use super::ideal::{divisible_by_integer, ideals_of_norm, IdealLat};
use super::Disc;
use crate::arith::{factor_i64, gcd, kronecker, Rat};

/// The constrained ideal count `A(N)` in `O_{d1}`: invertible integral ideals
/// `b` of norm `N` such that `pO` does not divide `b` for `p | (N, f2)` with
/// `p` not dividing `l d1`, and `P^3` does not divide `b` for the prime
/// `P | p | (N, f2, d1)`, `p != l`. Zero for non-integral or non-positive `N`.
pub fn count_a(d1: &Disc, f2: i64, l: i64, n: Rat) -> i64 {
    if !n.is_integer() || *n.numer() <= 0 {
        return 0;
    }
    let n = n.to_integer();
    if gcd(n, d1.f) == 1 {
        count_a_multiplicative(d1, f2, l, n)
    } else {
        count_a_enumerated(d1, f2, l, n)
    }
}

/// Product of local counts; requires `gcd(n, f1) = 1`.
pub fn count_a_multiplicative(d1: &Disc, f2: i64, l: i64, n: i64) -> i64 {
    debug_assert_eq!(gcd(n, d1.f), 1);
    let mut total = 1i64;
    for (p, v) in factor_i64(n) {
        let v = v as i64;
        let in_f2 = f2 % p == 0 && p != l;
        let local = match kronecker(d1.d, p) {
            1 => {
                if in_f2 {
                    2
                } else {
                    v + 1
                }
            }
            -1 => i64::from(v % 2 == 0 && !in_f2),
            _ => {
                if in_f2 && v > 2 {
                    0
                } else {
                    1
                }
            }
        };
        total *= local;
        if total == 0 {
            break;
        }
    }
    total
}

/// `A(n)` by enumerating every ideal of norm `n` and applying the filters.
pub fn count_a_enumerated(d1: &Disc, f2: i64, l: i64, n: i64) -> i64 {
    let primes: Vec<i64> = factor_i64(n).into_iter().map(|(p, _)| p).collect();
    let whole_p: Vec<i64> = primes
        .iter()
        .copied()
        .filter(|&p| f2 % p == 0 && p != l && d1.d % p != 0)
        .collect();
    let cubes: Vec<IdealLat> = primes
        .iter()
        .copied()
        .filter(|&p| f2 % p == 0 && d1.d % p == 0 && p != l)
        .map(|p| IdealLat::ramified_prime(d1, p).expect("p | d1").pow(3))
        .collect();
    ideals_of_norm(d1, n)
        .into_iter()
        .filter(|(b, inv)| {
            *inv && !whole_p.iter().any(|&p| divisible_by_integer(b, p))
                && !cubes.iter().any(|c| c.contains_ideal(b))
        })
        .count() as i64
}
