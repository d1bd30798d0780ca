use super::ideal::{elt_norm, Elt, IdealLat};
use super::Disc;
use crate::arith::{gcd, kronecker, prime_divisors, val};
use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusChar {
    /// `chi_p(a) = (a | p)` for an odd prime `p | d`.
    Odd(i64),
    Minus4,
    Eight,
    /// `chi_{-4} chi_8`.
    Minus8,
}

impl fmt::Display for GenusChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusChar::Odd(p) => write!(f, "chi_{p}"),
            GenusChar::Minus4 => write!(f, "chi_-4"),
            GenusChar::Eight => write!(f, "chi_8"),
            GenusChar::Minus8 => write!(f, "chi_-4*chi_8"),
        }
    }
}

impl GenusChar {
    /// Value on an integer coprime to the character's prime.
    fn eval(self, a: i64) -> i32 {
        match self {
            GenusChar::Odd(p) => kronecker(a, p),
            GenusChar::Minus4 => chi_m4(a),
            GenusChar::Eight => chi_8(a),
            GenusChar::Minus8 => chi_m4(a) * chi_8(a),
        }
    }

    fn prime(self) -> i64 {
        match self {
            GenusChar::Odd(p) => p,
            _ => 2,
        }
    }
}

fn chi_m4(a: i64) -> i32 {
    debug_assert!(a % 2 != 0);
    if a.rem_euclid(4) == 1 {
        1
    } else {
        -1
    }
}

fn chi_8(a: i64) -> i32 {
    debug_assert!(a % 2 != 0);
    if matches!(a.rem_euclid(8), 1 | 7) {
        1
    } else {
        -1
    }
}

/// A labelled element of `{+-1}^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenusVector {
    pub labels: Vec<GenusChar>,
    pub bits: Vec<i32>,
}

impl GenusVector {
    pub fn is_trivial(&self) -> bool {
        self.bits.iter().all(|&b| b == 1)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Componentwise product; both vectors must carry the same labels.
    pub fn mul(&self, other: &GenusVector) -> GenusVector {
        assert_eq!(self.labels, other.labels);
        GenusVector {
            labels: self.labels.clone(),
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a * b).collect(),
        }
    }
}

/// The characters making up `Psi` for discriminant `d`, in order.
pub fn genus_characters(d: &Disc) -> Vec<GenusChar> {
    let mut out: Vec<GenusChar> = prime_divisors(d.d)
        .into_iter()
        .filter(|&p| p != 2)
        .map(GenusChar::Odd)
        .collect();
    let d = d.d;
    if d.rem_euclid(16) == 12 || d.rem_euclid(32) == 16 {
        out.push(GenusChar::Minus4);
    } else if d.rem_euclid(32) == 8 {
        out.push(GenusChar::Eight);
    } else if d.rem_euclid(32) == 24 {
        out.push(GenusChar::Minus8);
    } else if d.rem_euclid(32) == 0 {
        out.push(GenusChar::Minus4);
        out.push(GenusChar::Eight);
    }
    out
}

pub fn genus_k(d: &Disc) -> usize {
    genus_characters(d).len()
}

/// `Psi_p(p)`, from the auxiliary discriminant `d*`.
fn psi_p_at_p(d: &Disc, p: i64) -> i32 {
    if p == 2 {
        let r16 = d.d.rem_euclid(16);
        let r32 = d.d.rem_euclid(32);
        let dstar = if r16 == 12 {
            -d.d / 4
        } else if r32 == 8 {
            d.d / 8
        } else {
            debug_assert_eq!(r32, 24);
            -d.d / 8
        };
        kronecker(2, dstar)
    } else {
        let pstar = if p % 4 == 1 { p } else { -p };
        kronecker(d.d / pstar, p)
    }
}

fn psi_p_char(d: &Disc, p: i64) -> Result<GenusChar> {
    if d.d % p != 0 || d.f % p == 0 {
        return Err(Error::Domain(format!(
            "Psi_{p} needs {p} | d and {p} not dividing the conductor (d = {})",
            d.d
        )));
    }
    if p != 2 {
        return Ok(GenusChar::Odd(p));
    }
    Ok(match d.d.rem_euclid(32) {
        8 => GenusChar::Eight,
        24 => GenusChar::Minus8,
        _ => GenusChar::Minus4,
    })
}

/// `Psi_p(n)` for `p | d`, `p` not dividing the conductor, any nonzero `n`.
pub fn psi_p(d: &Disc, p: i64, n: i64) -> Result<i32> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let chi = psi_p_char(d, p)?;
    let a = val(n, p);
    let u = n / p.pow(a);
    let s = if a % 2 == 1 { psi_p_at_p(d, p) } else { 1 };
    Ok(chi.eval(u) * s)
}

fn check_coprime_to_conductor(d: &Disc, a: i64) -> Result<()> {
    if a == 0 || gcd(a, d.f) != 1 {
        return Err(Error::Domain(format!(
            "{a} is not coprime to the conductor {} of {}",
            d.f, d.d
        )));
    }
    Ok(())
}

/// `Psi(a)` for `a` coprime to the conductor. Components at primes dividing
/// `a` (possible only where the prime does not divide `f`) use `Psi_p`.
pub fn psi(d: &Disc, a: i64) -> Result<GenusVector> {
    check_coprime_to_conductor(d, a)?;
    let labels = genus_characters(d);
    let bits = labels
        .iter()
        .map(|&c| {
            let p = c.prime();
            if a % p != 0 {
                Ok(c.eval(a))
            } else {
                psi_p(d, p, a)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GenusVector { labels, bits })
}

/// `Psi` with the `Psi_l` component removed.
pub fn psi_hat_ell(d: &Disc, l: i64, n: i64) -> Result<GenusVector> {
    let drop = psi_p_char(d, l)?;
    let full = psi(d, n)?;
    let (labels, bits) = full
        .labels
        .iter()
        .zip(&full.bits)
        .filter(|(c, _)| **c != drop)
        .map(|(c, b)| (*c, *b))
        .unzip();
    Ok(GenusVector { labels, bits })
}

pub fn is_in_ker_psi(d: &Disc, m: i64) -> Result<bool> {
    Ok(psi(d, m)?.is_trivial())
}

/// Box search over `x + y omega` in max-norm shells, `x` then `y` increasing.
pub(crate) fn box_search<F: FnMut(Elt) -> bool>(max_radius: i64, mut pred: F) -> Option<Elt> {
    for r in 0..=max_radius {
        for x in -r..=r {
            for y in -r..=r {
                if x.abs().max(y.abs()) != r {
                    continue;
                }
                if pred((x, y)) {
                    return Some((x, y));
                }
            }
        }
    }
    None
}

const TILDE_SEARCH_RADIUS: i64 = 2000;

/// The genus of an invertible ideal. Primary parts at primes dividing the
/// conductor are replaced by `a~` built from a local generator `alpha`
/// (the first element in the box order with the right local norm and
/// `gcd(Norm(alpha), f)` supported at `p`).
pub fn genus_of_ideal(a: &IdealLat) -> Result<GenusVector> {
    if !a.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let d = a.disc;
    let mut g = psi(&d, 1)?;
    for (p, part) in a.primary_decompose() {
        let n = if d.f % p != 0 {
            part.norm()
        } else {
            let e = val(part.norm(), p);
            let alpha = box_search(TILDE_SEARCH_RADIUS, |x| {
                if x == (0, 0) || !part.contains(x) {
                    return false;
                }
                let nx = elt_norm(&d, x);
                let vx = val(nx, p);
                vx == e && gcd(nx / p.pow(vx), d.f) == 1
            })
            .ok_or_else(|| Error::SearchExhausted(format!("local generator at {p} for {a}")))?;
            let nx = elt_norm(&d, alpha);
            nx / p.pow(val(nx, p))
        };
        g = g.mul(&psi(&d, n)?);
    }
    Ok(g)
}

/// Genus-theory test for `[a] ∈ 2 Pic(O)`.
pub fn square_class_test(a: &IdealLat) -> Result<bool> {
    Ok(genus_of_ideal(a)?.is_trivial())
}

/// All `gamma mod D` with `Norm(gamma) = 1 mod d`, as coordinates reduced
/// into the HNF box of `D`.
pub fn norm_one_classes(d: &Disc) -> Result<Vec<Elt>> {
    if d.d >= -4 {
        return Err(Error::Domain(format!("norm-one classes need d < -4, got {}", d.d)));
    }
    let dd = IdealLat::different(d);
    let m = -d.d;
    let mut out = Vec::new();
    for y in 0..dd.c {
        for x in 0..dd.n {
            if (elt_norm(d, (x, y)) - 1).rem_euclid(m) == 0 {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// Classes of `norm_one_classes` modulo `+-1`.
pub fn norm_one_classes_mod_sign(d: &Disc) -> Result<usize> {
    let all = norm_one_classes(d)?;
    let dd = IdealLat::different(d);
    let mut seen = std::collections::HashSet::new();
    let mut count = 0;
    for &(x, y) in &all {
        if seen.contains(&(x, y)) {
            continue;
        }
        count += 1;
        seen.insert((x, y));
        let neg = reduce_mod(&dd, (-x, -y));
        seen.insert(neg);
    }
    Ok(count)
}

pub(crate) fn reduce_mod(l: &IdealLat, e: Elt) -> Elt {
    let k = e.1.div_euclid(l.c);
    let y = e.1 - k * l.c;
    let x = (e.0 - k * l.u).rem_euclid(l.n);
    (x, y)
}

fn v_or_inf(n: i64, p: i64) -> u32 {
    if n == 0 {
        u32::MAX
    } else {
        val(n, p)
    }
}

/// `rho~_d(s, t)`: the dyadic factor times `2^#{odd p : v_p(s) >= v_p(d)}`.
pub fn rho_tilde(d: &Disc, s: i64, t: i64) -> i64 {
    let dd = d.d;
    let v2d = val(dd, 2);
    let first = (dd.rem_euclid(16) == 12 && (s - t).rem_euclid(2) == 0)
        || (dd % 8 == 0 && v_or_inf(s, 2) >= v2d.saturating_sub(2));
    let second = dd % 32 == 0 && (s - 2 * t).rem_euclid(4) == 0;
    let dyadic = (if first { 2 } else { 1 }) * (if second { 2 } else { 1 });
    let odd = prime_divisors(dd)
        .into_iter()
        .filter(|&p| p != 2 && v_or_inf(s, p) >= val(dd, p))
        .count();
    dyadic << odd
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::make_disc;

    #[test]
    fn genus_k_table() {
        assert_eq!(genus_k(&make_disc(-15).unwrap()), 2);
        assert_eq!(genus_k(&make_disc(-12).unwrap()), 1);
        assert_eq!(genus_k(&make_disc(-32).unwrap()), 2);
        assert_eq!(genus_k(&make_disc(-20).unwrap()), 2);
        assert_eq!(genus_k(&make_disc(-24).unwrap()), 2);
    }

    #[test]
    fn psi_examples() {
        let d15 = make_disc(-15).unwrap();
        assert_eq!(psi(&d15, 2).unwrap().bits, vec![-1, -1]);
        assert!(psi(&d15, 1).unwrap().is_trivial());
        let d24 = make_disc(-24).unwrap();
        let g = psi(&d24, 5).unwrap();
        assert_eq!(g.labels, vec![GenusChar::Odd(3), GenusChar::Eight]);
        assert_eq!(g.bits, vec![-1, -1]);
        assert_eq!(psi_hat_ell(&d15, 3, 2).unwrap().bits, vec![-1]);
    }

    #[test]
    fn psi_rejects_conductor_factors() {
        let d = make_disc(-12).unwrap();
        assert!(psi(&d, 2).is_err());
        assert!(psi_p(&d, 2, 3).is_err());
    }
}
