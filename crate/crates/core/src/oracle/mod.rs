//! Independent evaluation of `J(d1, d2)` from the q-expansion of `j` at
//! Heegner points, with rigorous error balls, followed by trial division.

mod ball;
mod series;

pub use ball::{pi, Ball, CBall};
pub use series::{delta_over_q_eisenstein, delta_over_q_product, j_coefficients};

use crate::arith::{primes_up_to, small_primes, Factorization, Rat};
use crate::error::{Error, Result};
use crate::quadratic::{make_disc, reduced_forms, Disc};
use crate::valuation::PairContext;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

/// Bits of slack in the error bound of [`j_invariant`]: the returned ball
/// lies within `2^(-prec + J_GUARD)` of `j(tau)`.
pub const J_GUARD: u64 = 2;

/// `tau = (-b + sqrt(d)) / (2a)` for a reduced form `(a, b, c)` of discriminant `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HeegnerPoint {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

impl HeegnerPoint {
    pub fn tau(&self, prec: u64) -> CBall {
        let re = Ball::from_ratio(-self.b, 2 * self.a, prec);
        let im = Ball::sqrt_int(self.d.unsigned_abs(), prec).div_int(2 * self.a);
        CBall::new(re, im)
    }

    /// `2 pi Im(tau) / ln 2`, roughly `log2 |j(tau)|`.
    pub fn log2_j_estimate(&self) -> f64 {
        std::f64::consts::PI * (self.d.unsigned_abs() as f64).sqrt()
            / self.a as f64
            / std::f64::consts::LN_2
    }
}

pub fn heegner_points(d: &Disc) -> Vec<HeegnerPoint> {
    reduced_forms(d).into_iter().map(|f| HeegnerPoint { a: f.a, b: f.b, d: d.d }).collect()
}

/// `j(tau)` at the precision carried by `tau`, as a ball that provably
/// contains the true value for every `tau` in the input ball. Requires
/// `|q| < e^-5` (true whenever `Im tau >= sqrt(3)/2`).
pub fn j_series(tau: &CBall) -> Result<CBall> {
    let p = tau.prec();
    let two_pi = pi(p).mul_int(&BigInt::from(2));
    let w = CBall::new(-&two_pi.mul(&tau.im), two_pi.mul(&tau.re));
    let w_re_upper = w.re.to_f64() + w.re.rad.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-(p as i32));
    let beta = -w_re_upper - 1e-9;
    if beta.is_nan() || beta < 5.0 {
        return Err(Error::Domain("j_series needs Im tau >= sqrt(3)/2".into()));
    }
    // c_n <= exp(4 pi sqrt n); past N the majorant terms at least halve, so
    // the tail is at most twice its first term.
    let target = -((p + 10) as f64) * std::f64::consts::LN_2 - 1.0;
    let mut n = 4usize;
    loop {
        let m = (n + 1) as f64;
        let log_tail = std::f64::consts::LN_2 + 4.0 * std::f64::consts::PI * m.sqrt() - beta * m;
        if log_tail < target {
            break;
        }
        n += 1;
    }
    let c = j_coefficients(n + 1);
    let q = w.exp();
    let qinv = (-&w).exp();
    let mut s = CBall::from_int(&c[n], p);
    for k in (1..n).rev() {
        s = &s.mul(&q) + &CBall::from_int(&c[k], p);
    }
    s = s.mul(&q);
    let mut j = &(&qinv + &CBall::from_int(&c[0], p)) + &s;
    j.widen(&BigInt::one());
    Ok(j)
}

/// `j` at a Heegner point to absolute precision `prec`, retrying at higher
/// working precision until the ball radius is small enough.
pub fn j_invariant(point: &HeegnerPoint, prec: u64) -> Result<CBall> {
    if prec < 64 {
        return Err(Error::PrecisionTooLow(prec));
    }
    let mut extra = point.log2_j_estimate().ceil() as u64 + 48;
    for _ in 0..12 {
        let wp = prec + extra;
        let j = j_series(&point.tau(wp))?;
        if j.max_rad().bits() < wp - prec {
            return Ok(j.with_prec(prec));
        }
        extra *= 2;
    }
    Err(Error::NonIntegral(prec + extra))
}

/// Knobs for the adaptive evaluation of `J`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    /// Starting absolute precision; `None` means `128 + sum log2 |j1 - j2|`.
    pub start_bits: Option<u64>,
    /// Accept a rounding only when every member of the product ball lies
    /// within this distance of the integer.
    pub gap_threshold: BigRational,
    /// The confirming evaluation runs at `P + confirm_step` bits.
    pub confirm_step: u64,
    pub max_bits: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            start_bits: None,
            gap_threshold: BigRational::new(BigInt::one(), BigInt::from(4)),
            confirm_step: 64,
            max_bits: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JProduct {
    pub value: BigInt,
    pub sign: i8,
    pub precision_used: u64,
    /// Upper bound on the distance from any point of the product ball to `value`.
    pub rounding_gap: BigRational,
}

fn rounded_product(p1: &[HeegnerPoint], p2: &[HeegnerPoint], prec: u64) -> Result<(BigInt, BigRational)> {
    let j1: Vec<CBall> = p1.par_iter().map(|t| j_invariant(t, prec)).collect::<Result<_>>()?;
    let j2: Vec<CBall> = p2.par_iter().map(|t| j_invariant(t, prec)).collect::<Result<_>>()?;
    let mut acc = CBall::from_int(&BigInt::one(), prec);
    for a in &j1 {
        for b in &j2 {
            acc = acc.mul(&(a - b));
        }
    }
    let (n, gap_re) = acc.re.nearest_integer();
    let gap_im = BigRational::new(acc.im.mag_ulps(), BigInt::one() << prec);
    Ok((n, gap_re.max(gap_im)))
}

/// Starting precision `128 + sum over pairs of an upper estimate of log2 |j1 - j2|`.
pub fn start_precision(d1: &Disc, d2: &Disc) -> u64 {
    let e = |t: &HeegnerPoint| t.log2_j_estimate().max(11.0);
    let (p1, p2) = (heegner_points(d1), heegner_points(d2));
    let mut est = 0.0;
    for a in &p1 {
        for b in &p2 {
            est += e(a).max(e(b)) + 1.0;
        }
    }
    128 + est.ceil() as u64
}

pub fn j_product(d1: &Disc, d2: &Disc) -> Result<JProduct> {
    j_product_with(d1, d2, &OracleConfig::default())
}

/// `J(d1, d2) = prod (j(tau1) - j(tau2))` as an exact integer. An evaluation
/// is accepted once two runs, at `P` and `P + confirm_step` bits, both round
/// within the gap threshold to the same integer; otherwise `P` doubles.
pub fn j_product_with(d1: &Disc, d2: &Disc, cfg: &OracleConfig) -> Result<JProduct> {
    if d1.d == d2.d {
        return Err(Error::EqualDiscriminants);
    }
    let (p1, p2) = (heegner_points(d1), heegner_points(d2));
    let mut prec = cfg.start_bits.unwrap_or_else(|| start_precision(d1, d2)).max(64);
    while prec <= cfg.max_bits {
        let (n1, g1) = rounded_product(&p1, &p2, prec)?;
        if g1 < cfg.gap_threshold {
            let (n2, g2) = rounded_product(&p1, &p2, prec + cfg.confirm_step)?;
            if g2 < cfg.gap_threshold && n1 == n2 && !n1.is_zero() {
                let sign = if n1.is_negative() { -1 } else { 1 };
                return Ok(JProduct { value: n1, sign, precision_used: prec, rounding_gap: g1 });
            }
        }
        prec *= 2;
    }
    Err(Error::NonIntegral(prec))
}

/// Factor `n` over the primes up to `bound`, failing if anything is left over.
pub fn factor_bounded(n: &BigInt, bound: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let owned;
    let primes: &[u32] = if bound <= 1_000_000 {
        small_primes()
    } else {
        owned = primes_up_to(bound.min(u32::MAX as u64) as u32);
        &owned
    };
    let mut rest = n.abs();
    let mut factors = Vec::new();
    for &p in primes.iter().take_while(|&&p| p as u64 <= bound) {
        if rest.is_one() {
            break;
        }
        let bp = BigInt::from(p);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
    }
    if !rest.is_one() {
        return Err(Error::CofactorRemains(rest.to_string()));
    }
    Ok(Factorization { negative: n.is_negative(), factors })
}

/// Factorization of `J(d1, d2)` by trial division over primes `<= d1 d2 / 4`.
pub fn full_factor_j(d1: i64, d2: i64) -> Result<Factorization> {
    let (a, b) = (make_disc(d1)?, make_disc(d2)?);
    let jp = j_product(&a, &b)?;
    factor_bounded(&jp.value, (d1 * d2 / 4) as u64)
}

/// `(8 / (w1 w2)) v_l(J)` read off a factorization of `J`.
pub fn v_j_from(ctx: &PairContext, fact: &Factorization, l: i64) -> Rat {
    ctx.exponent() * fact.exponent(&BigInt::from(l)) as i64
}

pub fn v_j_oracle(d1: i64, d2: i64, l: i64) -> Result<Rat> {
    let ctx = PairContext::new(d1, d2)?;
    Ok(v_j_from(&ctx, &full_factor_j(d1, d2)?, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j_at(d: i64, prec: u64) -> CBall {
        let pts = heegner_points(&make_disc(d).unwrap());
        assert_eq!(pts.len(), 1);
        j_invariant(&pts[0], prec).unwrap()
    }

    #[test]
    fn classical_values() {
        for (d, v) in [(-4, 1728i64), (-3, 0), (-7, -3375), (-8, 8000), (-163, -262537412640768000)] {
            let j = j_at(d, 128);
            let (n, gap) = j.re.nearest_integer();
            assert_eq!(n, BigInt::from(v), "d = {d}");
            assert!(gap < BigRational::new(BigInt::one(), BigInt::one() << 40));
            assert!(j.im.mag_ulps().bits() < 90);
        }
    }

    #[test]
    fn low_precision_rejected() {
        let pts = heegner_points(&make_disc(-4).unwrap());
        assert_eq!(j_invariant(&pts[0], 32), Err(Error::PrecisionTooLow(32)));
    }

    #[test]
    fn small_products() {
        let d = |x| make_disc(x).unwrap();
        assert_eq!(j_product(&d(-3), &d(-4)).unwrap().value, BigInt::from(-1728));
        assert_eq!(j_product(&d(-3), &d(-7)).unwrap().value, BigInt::from(3375));
        assert!(j_product(&d(-3), &d(-3)).is_err());
    }

    #[test]
    fn oracle_valuations() {
        assert_eq!(v_j_oracle(-3, -4, 2).unwrap(), Rat::from_integer(2));
        assert_eq!(v_j_oracle(-3, -4, 5).unwrap(), Rat::from_integer(0));
        let f = full_factor_j(-7, -847).unwrap();
        assert!(f.exponent(&BigInt::from(11)) > 0);
    }

    #[test]
    fn heegner_minus_23() {
        let pts = heegner_points(&make_disc(-23).unwrap());
        let mut a: Vec<i64> = pts.iter().map(|t| t.a).collect();
        a.sort();
        assert_eq!(a, vec![1, 2, 2]);
    }
}
