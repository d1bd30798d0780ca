use crate::arith::isqrt;
use crate::error::{Error, Result};
use crate::quadratic::{make_disc, Disc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairContext {
    pub d1: Disc,
    pub d2: Disc,
}

impl PairContext {
    pub fn new(d1: i64, d2: i64) -> Result<PairContext> {
        if d1 == d2 {
            return Err(Error::EqualDiscriminants);
        }
        Ok(PairContext { d1: make_disc(d1)?, d2: make_disc(d2)? })
    }

    /// `8 / (w1 w2)`.
    pub fn exponent(&self) -> crate::arith::Rat {
        crate::arith::Rat::new(8, self.d1.w * self.d2.w)
    }
}

/// An admissible `x >= 0` with `m = (d1 d2 - x^2)/4`; `c` is 1 iff `4m = d1 d2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XTerm {
    pub x: i64,
    pub m: i64,
    pub c: i64,
    /// 2 for `x > 0` (the slot stands for `+-x`), 1 for `x = 0`.
    pub mult: i64,
}

pub fn enumerate_x(ctx: &PairContext) -> Vec<XTerm> {
    let dd = ctx.d1.d * ctx.d2.d;
    let top = isqrt(dd as u64) as i64;
    (0..=top)
        .filter(|x| (dd - x * x) % 4 == 0)
        .map(|x| XTerm {
            x,
            m: (dd - x * x) / 4,
            c: if x == 0 { 1 } else { 2 },
            mult: if x == 0 { 1 } else { 2 },
        })
        .collect()
}
