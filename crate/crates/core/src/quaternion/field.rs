//! `K = Q(sqrt d)` with rational coordinates over `{1, omega}`, and its
//! fractional `O_d`-ideals as rank-2 lattices.

use super::lattice::{q, Lattice, Q};
use crate::quadratic::Disc;
use num_traits::{One, Zero};

pub type KElt = [Q; 2];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    pub d: i64,
    c: Q,
}

impl Field {
    pub fn new(d: &Disc) -> Field {
        Field { d: d.d, c: q(d.c0()) }
    }

    pub fn elt(&self, x: i64, y: i64) -> KElt {
        [q(x), q(y)]
    }

    pub fn one(&self) -> KElt {
        [Q::one(), Q::zero()]
    }

    pub fn omega(&self) -> KElt {
        [Q::zero(), Q::one()]
    }

    /// `sqrt d = 2 omega - d`.
    pub fn sqrt_d(&self) -> KElt {
        [q(-self.d), q(2)]
    }

    /// `omega^2 = d omega - (d^2 - d)/4`.
    pub fn mul(&self, x: &KElt, y: &KElt) -> KElt {
        let dd = q(self.d);
        [
            &x[0] * &y[0] - &x[1] * &y[1] * &self.c,
            &x[0] * &y[1] + &x[1] * &y[0] + &x[1] * &y[1] * dd,
        ]
    }

    pub fn add(&self, x: &KElt, y: &KElt) -> KElt {
        [&x[0] + &y[0], &x[1] + &y[1]]
    }

    pub fn sub(&self, x: &KElt, y: &KElt) -> KElt {
        [&x[0] - &y[0], &x[1] - &y[1]]
    }

    pub fn conj(&self, x: &KElt) -> KElt {
        [&x[0] + &x[1] * q(self.d), -&x[1]]
    }

    pub fn norm(&self, x: &KElt) -> Q {
        &x[0] * &x[0] + &x[0] * &x[1] * q(self.d) + &x[1] * &x[1] * &self.c
    }

    pub fn trace(&self, x: &KElt) -> Q {
        &x[0] * q(2) + &x[1] * q(self.d)
    }

    pub fn inv(&self, x: &KElt) -> KElt {
        let n = self.norm(x);
        let c = self.conj(x);
        [&c[0] / &n, &c[1] / &n]
    }

    pub fn is_integral(&self, x: &KElt) -> bool {
        x[0].is_integer() && x[1].is_integer()
    }

    // ---- fractional ideals ----

    pub fn ring(&self) -> Lattice {
        Lattice::span(2, &[self.one().to_vec(), self.omega().to_vec()])
    }

    /// `Z a + Z ((-b - d)/2 + omega)`, the ideal attached to the form `(a, b, c)`.
    pub fn ideal_from_form(&self, a: i64, b: i64) -> Lattice {
        Lattice::span(2, &[vec![q(a), Q::zero()], vec![super::lattice::qr(-b - self.d, 2), Q::one()]])
    }

    /// The prime above a prime `p` that is split or ramified: the form `(p, b)`
    /// with the least `b` in `[0, 2p)` such that `b^2 = d (mod 4p)`.
    pub fn prime_above(&self, p: i64) -> Option<Lattice> {
        (0..2 * p).find(|b| (b * b - self.d).rem_euclid(4 * p) == 0).map(|b| self.ideal_from_form(p, b))
    }

    pub fn ideal_mul(&self, a: &Lattice, b: &Lattice) -> Lattice {
        let gens: Vec<Vec<Q>> =
            a.rows.iter().flat_map(|x| b.rows.iter().map(move |y| (x, y))).map(|(x, y)| self.mul(&to2(x), &to2(y)).to_vec()).collect();
        Lattice::span(2, &gens)
    }

    pub fn ideal_scale(&self, x: &KElt, a: &Lattice) -> Lattice {
        let gens: Vec<Vec<Q>> = a.rows.iter().map(|y| self.mul(x, &to2(y)).to_vec()).collect();
        Lattice::span(2, &gens)
    }

    pub fn ideal_conj(&self, a: &Lattice) -> Lattice {
        let gens: Vec<Vec<Q>> = a.rows.iter().map(|y| self.conj(&to2(y)).to_vec()).collect();
        Lattice::span(2, &gens)
    }

    /// Norm of a fractional ideal: its covolume relative to `O`.
    pub fn ideal_norm(&self, a: &Lattice) -> Q {
        a.covolume()
    }

    /// `a^{-1} = conj(a) / N(a)` (valid for invertible `a`).
    pub fn ideal_inv(&self, a: &Lattice) -> Lattice {
        let n = self.ideal_norm(a);
        self.ideal_conj(a).scale(&(Q::one() / n))
    }

    /// The inverse different `D^{-1} = (1 / sqrt d) O`.
    pub fn inverse_different(&self) -> Lattice {
        self.ideal_scale(&self.inv(&self.sqrt_d()), &self.ring())
    }

    pub fn ideal_pow(&self, a: &Lattice, n: u32) -> Lattice {
        (0..n).fold(self.ring(), |acc, _| self.ideal_mul(&acc, a))
    }
}

pub fn to2(v: &[Q]) -> KElt {
    [v[0].clone(), v[1].clone()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::make_disc;

    #[test]
    fn arithmetic() {
        let k = Field::new(&make_disc(-7).unwrap());
        let w = k.omega();
        assert_eq!(k.norm(&w), q(14));
        assert_eq!(k.trace(&w), q(-7));
        let s = k.sqrt_d();
        assert_eq!(k.mul(&s, &s), [q(-7), q(0)]);
        let x = k.elt(3, 5);
        assert_eq!(k.mul(&x, &k.inv(&x)), k.one());
    }

    #[test]
    fn ideals() {
        let k = Field::new(&make_disc(-23).unwrap());
        let p = k.prime_above(2).unwrap();
        assert_eq!(k.ideal_norm(&p), q(2));
        let one = k.ideal_mul(&p, &k.ideal_inv(&p));
        assert_eq!(one, k.ring());
        let cube = k.ideal_pow(&p, 3);
        assert_eq!(k.ideal_norm(&cube), q(8));
        assert_eq!(k.ideal_norm(&k.inverse_different()), Q::new(1.into(), 23.into()));
    }
}
