//! Fixed-point ball arithmetic. A [`Ball`] at precision `p` stands for the
//! closed interval `[(mid - rad) 2^-p, (mid + rad) 2^-p]`; every operation
//! returns a ball containing all results of the operation on members of its
//! inputs. Precision is absolute (bits after the binary point).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub mid: BigInt,
    /// Radius in units of `2^-prec`, never negative.
    pub rad: BigInt,
    pub prec: u64,
}

fn ceil_shr(x: &BigInt, k: u64) -> BigInt {
    if k == 0 {
        return x.clone();
    }
    let q = x >> k;
    if (&q << k) == *x {
        q
    } else {
        q + 1
    }
}

impl Ball {
    pub fn zero(prec: u64) -> Ball {
        Ball { mid: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    pub fn from_int(n: &BigInt, prec: u64) -> Ball {
        Ball { mid: n << prec, rad: BigInt::zero(), prec }
    }

    pub fn from_i64(n: i64, prec: u64) -> Ball {
        Ball::from_int(&BigInt::from(n), prec)
    }

    pub fn from_ratio(num: i64, den: i64, prec: u64) -> Ball {
        assert!(den != 0);
        let (q, r) = (BigInt::from(num) << prec).div_mod_floor(&BigInt::from(den));
        let rad = if r.is_zero() { BigInt::zero() } else { BigInt::one() };
        Ball { mid: q, rad, prec }
    }

    /// `sqrt(n)` for `n >= 0`.
    pub fn sqrt_int(n: u64, prec: u64) -> Ball {
        let s = (BigInt::from(n) << (2 * prec)).sqrt();
        Ball { mid: s, rad: BigInt::one(), prec }
    }

    fn check(&self, other: &Ball) {
        assert_eq!(self.prec, other.prec, "ball precision mismatch");
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        self.check(other);
        let p = self.prec;
        let prod = &self.mid * &other.mid;
        let mid = &prod >> p;
        let err = self.mid.abs() * &other.rad + other.mid.abs() * &self.rad + &self.rad * &other.rad;
        let rad = ceil_shr(&err, p) + 1;
        Ball { mid, rad, prec: p }
    }

    pub fn mul_int(&self, k: &BigInt) -> Ball {
        Ball { mid: &self.mid * k, rad: &self.rad * k.abs(), prec: self.prec }
    }

    pub fn div_int(&self, k: i64) -> Ball {
        assert!(k != 0);
        let k = BigInt::from(k);
        let mid = self.mid.div_floor(&k);
        let rad = self.rad.div_ceil(&k.abs()) + 1;
        Ball { mid, rad, prec: self.prec }
    }

    /// Multiply by `2^-k`.
    pub fn shr(&self, k: u64) -> Ball {
        Ball { mid: &self.mid >> k, rad: ceil_shr(&self.rad, k) + 1, prec: self.prec }
    }

    /// Change precision; lowering it rounds outward.
    pub fn with_prec(&self, prec: u64) -> Ball {
        if prec >= self.prec {
            let s = prec - self.prec;
            Ball { mid: &self.mid << s, rad: &self.rad << s, prec }
        } else {
            let s = self.prec - prec;
            Ball { mid: &self.mid >> s, rad: ceil_shr(&self.rad, s) + 1, prec }
        }
    }

    /// Upper bound on `|x|` in units of `2^-prec`.
    pub fn mag_ulps(&self) -> BigInt {
        self.mid.abs() + &self.rad
    }

    /// Upper bound of `log2 |x|`, or `None` when the ball touches zero only
    /// through a zero bound.
    pub fn log2_upper(&self) -> Option<i64> {
        let m = self.mag_ulps();
        if m.is_zero() {
            None
        } else {
            Some(m.bits() as i64 - self.prec as i64)
        }
    }

    /// The integer `n` nearest the midpoint and the bound
    /// `|mid 2^-p - n| + rad 2^-p` on the distance of any member to `n`.
    pub fn nearest_integer(&self) -> (BigInt, BigRational) {
        let p = self.prec;
        let half = BigInt::one() << p.saturating_sub(1);
        let n = (&self.mid + &half) >> p;
        let diff = (&self.mid - (&n << p)).abs() + &self.rad;
        (n, BigRational::new(diff, BigInt::one() << p))
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mid.bits();
        let shift = bits.saturating_sub(60);
        let top = &self.mid >> shift;
        let (sign, digits) = top.to_u64_digits();
        let v = digits.first().copied().unwrap_or(0) as f64;
        let v = if sign == Sign::Minus { -v } else { v };
        v * 2f64.powi(shift as i32 - self.prec as i32)
    }
}

impl Add for &Ball {
    type Output = Ball;
    fn add(self, o: &Ball) -> Ball {
        self.check(o);
        Ball { mid: &self.mid + &o.mid, rad: &self.rad + &o.rad, prec: self.prec }
    }
}

impl Sub for &Ball {
    type Output = Ball;
    fn sub(self, o: &Ball) -> Ball {
        self.check(o);
        Ball { mid: &self.mid - &o.mid, rad: &self.rad + &o.rad, prec: self.prec }
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball { mid: -&self.mid, rad: self.rad.clone(), prec: self.prec }
    }
}

/// A complex ball: independent real balls for the two coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn new(re: Ball, im: Ball) -> CBall {
        re.check(&im);
        CBall { re, im }
    }

    pub fn from_int(n: &BigInt, prec: u64) -> CBall {
        CBall { re: Ball::from_int(n, prec), im: Ball::zero(prec) }
    }

    pub fn prec(&self) -> u64 {
        self.re.prec
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        let re = &self.re.mul(&o.re) - &self.im.mul(&o.im);
        let im = &self.re.mul(&o.im) + &self.im.mul(&o.re);
        CBall { re, im }
    }

    pub fn mul_int(&self, k: &BigInt) -> CBall {
        CBall { re: self.re.mul_int(k), im: self.im.mul_int(k) }
    }

    pub fn div_int(&self, k: i64) -> CBall {
        CBall { re: self.re.div_int(k), im: self.im.div_int(k) }
    }

    pub fn shr(&self, k: u64) -> CBall {
        CBall { re: self.re.shr(k), im: self.im.shr(k) }
    }

    pub fn with_prec(&self, prec: u64) -> CBall {
        CBall { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    /// Upper bound on `|z|` in ulps (the l1 norm, which dominates).
    pub fn mag_ulps(&self) -> BigInt {
        self.re.mag_ulps() + self.im.mag_ulps()
    }

    /// Widen both radii by `ulps`.
    pub fn widen(&mut self, ulps: &BigInt) {
        self.re.rad += ulps;
        self.im.rad += ulps;
    }

    /// Largest of the two radii, in ulps.
    pub fn max_rad(&self) -> &BigInt {
        if self.re.rad >= self.im.rad {
            &self.re.rad
        } else {
            &self.im.rad
        }
    }

    /// `exp(z)` by halving the argument until `|z| <= 2^-10`, summing the
    /// Taylor series with an explicit remainder bound, then squaring back.
    pub fn exp(&self) -> CBall {
        let p = self.prec();
        let bits = self.mag_ulps().bits() as i64 - p as i64;
        let k = (bits + 10).max(0) as u64;
        let r = if k > 0 { self.shr(k) } else { self.clone() };
        // |r| <= 2^-10, so the tail past r^N/N! is at most 2 |r|^(N+1) < 2^-(10(N+1)-1).
        let n_terms = p / 10 + 2;
        let mut sum = CBall::from_int(&BigInt::one(), p);
        let mut term = sum.clone();
        for n in 1..=n_terms as i64 {
            term = term.mul(&r).div_int(n);
            sum = &sum + &term;
        }
        sum.widen(&BigInt::one());
        for _ in 0..k {
            sum = sum.mul(&sum);
        }
        sum
    }
}

impl Add for &CBall {
    type Output = CBall;
    fn add(self, o: &CBall) -> CBall {
        CBall { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &CBall {
    type Output = CBall;
    fn sub(self, o: &CBall) -> CBall {
        CBall { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Neg for &CBall {
    type Output = CBall;
    fn neg(self) -> CBall {
        CBall { re: -&self.re, im: -&self.im }
    }
}

/// `atan(1/x)` scaled by `2^p`, truncated; the returned error bound is in ulps.
fn atan_inv(x: i64, p: u64) -> (BigInt, u64) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << p) / &x;
    let mut sum = BigInt::zero();
    let mut n = 0i64;
    let mut terms = 0u64;
    while !power.is_zero() {
        let t = &power / BigInt::from(2 * n + 1);
        if n % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        power /= &x2;
        n += 1;
        terms += 1;
    }
    // each term and each power carries at most one unit of truncation error,
    // plus the first omitted term, which is below one unit.
    (sum, 2 * terms + 2)
}

/// `pi` by Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: u64) -> Ball {
    let g = 16;
    let p = prec + g;
    let (a, ea) = atan_inv(5, p);
    let (b, eb) = atan_inv(239, p);
    let mid = a * 16 - b * 4;
    let rad = BigInt::from(16 * ea + 4 * eb);
    Ball { mid, rad, prec: p }.with_prec(prec)
}
