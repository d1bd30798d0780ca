//! Brute-force counts of optimal embeddings of `O_{d2}` with a prescribed
//! `m`, against the weighted ideal count.

use super::lattice::{nullspace, q, Lattice, Q};
use super::{QuatAlg, QuatElem, Setup};
use crate::arith::{gcd, Rat};
use crate::error::Result;
use crate::quadratic::{count_a, reduced_forms};
use crate::valuation::{rho, PairContext};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

fn to_f64(x: &Q) -> f64 {
    x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
}

/// Integers `c` with `base + c * step` in `[lo, hi]` (with one unit of slack
/// on each side; callers filter exactly).
fn coeff_range(base: &Q, step: &Q, lo: f64, hi: f64) -> std::ops::RangeInclusive<i64> {
    let b = to_f64(base);
    let s = to_f64(step);
    let a = ((lo - b) / s).floor() as i64 - 1;
    let z = ((hi - b) / s).ceil() as i64 + 1;
    a..=z
}

/// All `x` in the full-rank lattice `l` with `Trd(x) = tr` and `Nrd(x) = nm`.
///
/// Writing `x = [alpha, beta]`, the trace fixes `alpha = (tr + s sqrt d)/2`
/// and the norm becomes the positive ternary form
/// `|d| s^2 / 4 + |jsq| N(beta) = nm - tr^2 / 4`. The HNF basis is upper
/// triangular, so its coordinates are enumerated one at a time inside the
/// ellipsoid bounds and each candidate is checked exactly.
pub fn enumerate_trace_norm(alg: &QuatAlg, l: &Lattice, tr: i64, nm: &Q) -> Vec<QuatElem> {
    assert_eq!(l.rank(), 4, "full-rank lattice required");
    let r = &l.rows;
    let d = alg.disc.d;
    let ad = d.abs() as f64;
    let s_total = nm - Q::from_integer(BigInt::from(tr * tr)) / q(4);
    if s_total.is_negative() {
        return Vec::new();
    }
    let sf = to_f64(&s_total);
    let x1_max = 2.0 * (sf / ad).sqrt();
    let x0_lo = (tr as f64 - ad * x1_max) / 2.0;
    let x0_hi = (tr as f64 + ad * x1_max) / 2.0;
    let aj = q(alg.jsq.abs());
    let mut out = Vec::new();
    for c0 in coeff_range(&Q::zero(), &r[0][0], x0_lo, x0_hi) {
        let c0q = q(c0);
        let x0 = &c0q * &r[0][0];
        let x1 = (q(tr) - &x0 * q(2)) / q(d);
        let c1 = (&x1 - &c0q * &r[0][1]) / &r[1][1];
        if !c1.is_integer() {
            continue;
        }
        let alpha = [x0.clone(), x1.clone()];
        let t = (nm - alg.k.norm(&alpha)) / &aj;
        if t.is_negative() {
            continue;
        }
        let tf = to_f64(&t);
        let base2 = &c0q * &r[0][2] + &c1 * &r[1][2];
        let base3 = &c0q * &r[0][3] + &c1 * &r[1][3];
        let b1_max = 2.0 * (tf / ad).sqrt();
        let b0_max = tf.sqrt() + b1_max * ad / 2.0;
        for c2 in coeff_range(&base2, &r[2][2], -b0_max, b0_max) {
            let c2q = q(c2);
            let x2 = &base2 + &c2q * &r[2][2];
            let b3 = &base3 + &c2q * &r[2][3];
            for c3 in coeff_range(&b3, &r[3][3], -b1_max, b1_max) {
                let x3 = &b3 + q(c3) * &r[3][3];
                let beta = [x2.clone(), x3];
                if alg.k.norm(&beta) == t {
                    out.push([alpha[0].clone(), alpha[1].clone(), beta[0].clone(), beta[1].clone()]);
                }
            }
        }
    }
    out
}

/// `[(Q + Q phi) ∩ R : Z + Z phi]` for `phi` not in `Q`.
pub fn optimal_index(r: &Lattice, phi: &QuatElem) -> Q {
    let one = vec![Q::one(), Q::zero(), Q::zero(), Q::zero()];
    let funcs = nullspace(&[one, phi.to_vec()], 4);
    let plane = r.kernel_of(&funcs);
    assert_eq!(plane.rank(), 2);
    let k = (1..4).find(|&i| !phi[i].is_zero()).expect("phi not rational");
    let coords: Vec<(Q, Q)> = plane
        .rows
        .iter()
        .map(|x| {
            let v = &x[k] / &phi[k];
            let u = &x[0] - &v * &phi[0];
            (u, v)
        })
        .collect();
    let det = &coords[0].0 * &coords[1].1 - &coords[0].1 * &coords[1].0;
    Q::one() / det.abs()
}

fn is_power_of(n: &Q, l: i64) -> bool {
    if !n.is_integer() {
        return false;
    }
    let mut n = n.to_integer();
    let l = BigInt::from(l);
    while n.is_multiple_of(&l) && !n.is_zero() {
        n /= &l;
    }
    n.is_one()
}

/// Counts of optimal `phi` (trace `d2`, norm `(d2^2 - d2)/4`) in
/// `a^{-1} R_n(O) a` over one ideal per class, bucketed by `m`.
pub fn brute_force_snm_all(d1: i64, d2: i64, l: i64, n: u32) -> Result<BTreeMap<i64, i64>> {
    let s = Setup::new(d1, l)?;
    let alg = &s.alg;
    let rn = if n == 1 { s.r1.clone() } else { alg.build_r(&s.lambda, &alg.k.ring(), n)? };
    let tr = d2;
    let nm = Q::new(BigInt::from(d2 * d2 - d2), BigInt::from(4));
    let big_d = d1 * d2;
    let omega = alg.k.omega();
    let mut out = BTreeMap::new();
    for f in reduced_forms(&alg.disc) {
        let a = alg.k.ideal_from_form(f.a, f.b);
        let r1a = alg.conjugate_order(&s.r1, &a);
        let rna = alg.conjugate_order(&rn, &a);
        for phi in enumerate_trace_norm(alg, &rna, tr, &nm) {
            let alpha = [phi[0].clone(), phi[1].clone()];
            let t = alg.k.trace(&alg.k.mul(&omega, &alg.k.conj(&alpha)));
            let t = t.to_integer().to_i64().expect("integral t");
            let x = big_d - 2 * t;
            let m = (big_d - x * x) / 4;
            if !is_power_of(&optimal_index(&r1a, &phi), l) {
                continue;
            }
            *out.entry(m).or_insert(0) += 1;
        }
    }
    Ok(out)
}

pub fn brute_force_snm(d1: i64, d2: i64, l: i64, m: i64, n: u32) -> Result<i64> {
    Ok(brute_force_snm_all(d1, d2, l, n)?.get(&m).copied().unwrap_or(0))
}

/// `(C w1 / 2) rho(m) A(m / l^r)` with `r = 2n - 1` (`l` prime to `d1`) or
/// `n` (`l | d1`), and `C = 1` iff `4m = d1 d2`.
pub fn snm_closed_form(ctx: &PairContext, l: i64, m: i64, n: u32) -> Rat {
    let (d1, d2) = (ctx.d1.d, ctx.d2.d);
    let r = if d1 % l != 0 { 2 * n - 1 } else { n };
    let c = if 4 * m == d1 * d2 { 1 } else { 2 };
    let a = count_a(&ctx.d1, ctx.d2.f, l, Rat::new(m, l.pow(r)));
    Rat::new(c * ctx.d1.w, 2) * rho(ctx, l, m) * a
}

/// The hypotheses under which the closed form is a theorem: `l` prime to
/// `f1`, `gcd(m, f1) = 1`, and not `l = 2` ramified in both fields.
pub fn snm_in_scope(ctx: &PairContext, l: i64, m: i64) -> bool {
    let two_ram = l == 2 && ctx.d1.d_fund % 2 == 0 && ctx.d2.d_fund % 2 == 0;
    ctx.d1.f % l != 0 && gcd(m, ctx.d1.f) == 1 && !two_ram && m > 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_solutions() {
        let s = Setup::new(-7, 3).unwrap();
        let xs = enumerate_trace_norm(&s.alg, &s.r1, 2, &q(1));
        assert!(xs.contains(&s.alg.one()));
        assert!(xs.iter().all(|x| s.alg.trd(x) == q(2) && s.alg.nrd(x) == q(1)));
    }

    #[test]
    fn counts_match_closed_form() {
        let (d1, l) = (-7, 3);
        for d2 in [-3, -4, -8, -11, -28] {
            let ctx = PairContext::new(d1, d2).unwrap();
            for n in [1, 2] {
                let got = brute_force_snm_all(d1, d2, l, n).unwrap();
                for xt in crate::valuation::enumerate_x(&ctx) {
                    if xt.m == 0 {
                        continue;
                    }
                    let want = snm_closed_form(&ctx, l, xt.m, n);
                    let have = got.get(&xt.m).copied().unwrap_or(0);
                    assert_eq!(Rat::from_integer(have), want, "d2 = {d2}, n = {n}, m = {}", xt.m);
                }
            }
        }
    }
}
