use super::{enumerate_x, h_term, PairContext, Reading};
use crate::arith::{gcd, hilbert_symbol, kronecker, prime_divisors, val, Place, Rat};
use crate::error::{Error, Result};
use crate::quadratic::Disc;

/// `d_(p)`: whichever discriminant has conductor prime to `p`.
fn d_of(ctx: &PairContext, p: i64) -> &Disc {
    if ctx.d1.f % p != 0 {
        &ctx.d1
    } else {
        &ctx.d2
    }
}

fn local(d: i64, p: i64, m: i64, f: i64) -> i64 {
    let v = val(m, p) as i64;
    let k = if d % p != 0 { kronecker(d, p) } else { 0 };
    match k {
        1 => {
            if f % p != 0 {
                1 + v
            } else {
                2
            }
        }
        -1 => i64::from(f % p != 0 && v % 2 == 0),
        _ => {
            if hilbert_symbol(d, -m, Place::Finite(p)) != 1 {
                0
            } else if f % p != 0 {
                2
            } else {
                i64::from(v == 2)
            }
        }
    }
}

fn epsilon(ctx: &PairContext, l: i64, m: i64, f: i64, reading: Reading) -> Rat {
    let dl = d_of(ctx, l).d;
    let v = val(m, l) as i64;
    let l_in_f = f % l == 0;
    let l_in_dl = dl % l == 0;
    if !l_in_f && l_in_dl {
        return Rat::from_integer(v);
    }
    if !l_in_f && !l_in_dl && v % 2 == 1 {
        return Rat::new(v + 1, 2);
    }
    if !l_in_dl && v % 2 == 0 {
        return Rat::from_integer(0);
    }
    if reading == Reading::Consistent && l_in_f && l_in_dl {
        return Rat::from_integer(if v >= 1 { 2 } else { 0 });
    }
    Rat::from_integer(1)
}

/// The formula proposed for coprime conductors, normalized like
/// `v_l(J^{8/(w1 w2)})` (which is `v_l(J^2)` when `w1 = w2 = 2`).
pub fn conjecture_v_j(ctx: &PairContext, l: i64, reading: Reading) -> Result<Rat> {
    let (f1, f2) = (ctx.d1.f, ctx.d2.f);
    if gcd(f1, f2) != 1 {
        return Err(Error::HypothesisViolated(format!(
            "conductors {f1} and {f2} are not coprime"
        )));
    }
    let f = f1 * f2;
    let mut total = h_term(ctx, l) * 2;
    for xt in enumerate_x(ctx) {
        if xt.m == 0 {
            continue;
        }
        let e = epsilon(ctx, l, xt.m, f, reading);
        if e == Rat::from_integer(0) {
            continue;
        }
        let mut prod = 1i64;
        for p in prime_divisors(xt.m) {
            if p == l {
                continue;
            }
            prod *= local(d_of(ctx, p).d, p, xt.m, f);
            if prod == 0 {
                break;
            }
        }
        total += e * prod * xt.mult;
    }
    Ok(total)
}
