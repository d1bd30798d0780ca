use crate::arith::{factor_i64, val};
use crate::error::{Error, Result};

/// A negative discriminant with its conductor, fundamental part and unit count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Disc {
    pub d: i64,
    pub f: i64,
    pub d_fund: i64,
    pub w: i64,
}

pub fn is_discriminant(d: i64) -> bool {
    d < 0 && matches!(d.rem_euclid(4), 0 | 1)
}

pub fn make_disc(d: i64) -> Result<Disc> {
    Disc::new(d)
}

impl Disc {
    pub fn new(d: i64) -> Result<Disc> {
        if !is_discriminant(d) {
            return Err(Error::InvalidDiscriminant(d));
        }
        let mut f = 1i64;
        let mut d0 = d;
        for (p, e) in factor_i64(d) {
            if p == 2 {
                continue;
            }
            let pk = p.pow(e / 2);
            f *= pk;
            d0 /= pk * pk;
        }
        while d0 % 4 == 0 && is_discriminant(d0 / 4) {
            d0 /= 4;
            f *= 2;
        }
        let w = match d {
            -3 => 6,
            -4 => 4,
            _ => 2,
        };
        Ok(Disc { d, f, d_fund: d0, w })
    }

    pub fn is_fundamental(&self) -> bool {
        self.f == 1
    }

    /// `v_l(f)`.
    pub fn s(&self, l: i64) -> u32 {
        val(self.f, l)
    }

    /// `d * l^(-2 v_l(f))`.
    pub fn d_tilde(&self, l: i64) -> i64 {
        self.d / l.pow(2 * self.s(l))
    }

    /// `(d_fund | p)`: 1 split, -1 inert, 0 ramified in the maximal order.
    pub fn splitting(&self, p: i64) -> i32 {
        crate::arith::kronecker(self.d_fund, p)
    }

    /// `(d^2 - d)/4`, so that `omega^2 = d omega - c0`.
    pub fn c0(&self) -> i64 {
        (self.d * self.d - self.d) / 4
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conductors() {
        let d = make_disc(-12).unwrap();
        assert_eq!((d.f, d.d_fund, d.w), (2, -3, 2));
        let d = make_disc(-847).unwrap();
        assert_eq!((d.f, d.d_fund), (11, -7));
        let d = make_disc(-16).unwrap();
        assert_eq!((d.f, d.d_fund, d.w), (2, -4, 2));
        let d = make_disc(-64).unwrap();
        assert_eq!((d.f, d.d_fund), (4, -4));
        let d = make_disc(-128).unwrap();
        assert_eq!((d.f, d.d_fund), (4, -8));
        assert_eq!(make_disc(-3).unwrap().w, 6);
        assert!(make_disc(-5).is_err());
        assert!(make_disc(4).is_err());
    }
}
