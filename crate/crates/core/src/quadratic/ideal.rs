use super::{Disc, QuadForm};
use crate::arith::{divisors, factor_i64};
use crate::error::{Error, Result};
use num_integer::Integer;
use std::fmt;

/// An element `x + y omega` of `O_d`, `omega = (d + sqrt d)/2`.
pub type Elt = (i64, i64);

pub fn elt_mul(d: &Disc, a: Elt, b: Elt) -> Elt {
    let c0 = d.c0() as i128;
    let (x1, y1, x2, y2) = (a.0 as i128, a.1 as i128, b.0 as i128, b.1 as i128);
    let x = x1 * x2 - y1 * y2 * c0;
    let y = x1 * y2 + x2 * y1 + y1 * y2 * d.d as i128;
    (to_i64(x), to_i64(y))
}

pub fn elt_conj(d: &Disc, a: Elt) -> Elt {
    (a.0 + a.1 * d.d, -a.1)
}

pub fn elt_norm(d: &Disc, a: Elt) -> i64 {
    let (x, y) = (a.0 as i128, a.1 as i128);
    to_i64(x * x + x * y * d.d as i128 + y * y * d.c0() as i128)
}

pub fn elt_trace(d: &Disc, a: Elt) -> i64 {
    2 * a.0 + a.1 * d.d
}

fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("ideal arithmetic overflowed i64")
}

/// A nonzero integral ideal of `O_d`: the lattice `Z n + Z (u + c omega)`
/// in Hermite normal form (`c | n`, `c | u`, `0 <= u < n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IdealLat {
    pub disc: Disc,
    pub n: i64,
    pub u: i64,
    pub c: i64,
}

impl fmt::Display for IdealLat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {} + {}w]", self.n, self.u, self.c)
    }
}

/// HNF of the Z-span of integer pairs `(x, y)`; `None` if the span has rank < 2.
fn hnf2(gens: &[Elt]) -> Option<(i64, i64, i64)> {
    // pivot row carries the gcd of the omega-coordinates
    let mut px: i128 = 0;
    let mut py: i128 = 0;
    let mut n: i128 = 0;
    for &(x, y) in gens {
        let (x, y) = (x as i128, y as i128);
        if y == 0 {
            n = n.gcd(&x);
            continue;
        }
        if py == 0 {
            px = x;
            py = y;
            continue;
        }
        let e = py.extended_gcd(&y);
        let g = e.gcd;
        let nx = e.x * px + e.y * x;
        let kill = (y / g) * px - (py / g) * x;
        n = n.gcd(&kill);
        px = nx;
        py = g;
        if n != 0 {
            px = px.rem_euclid(n);
        }
    }
    if n == 0 || py == 0 {
        return None;
    }
    if py < 0 {
        py = -py;
        px = -px;
    }
    Some((to_i64(n), to_i64(px.rem_euclid(n)), to_i64(py)))
}

impl IdealLat {
    pub fn unit(d: &Disc) -> IdealLat {
        IdealLat { disc: *d, n: 1, u: 0, c: 1 }
    }

    /// The Z-span of `gens`, which must be a full-rank O-stable lattice in O.
    pub fn from_generators(d: &Disc, gens: &[Elt]) -> Result<IdealLat> {
        let (n, u, c) = hnf2(gens).ok_or_else(|| Error::Domain("rank-deficient ideal".into()))?;
        let a = IdealLat { disc: *d, n, u, c };
        if !a.is_ideal() {
            return Err(Error::Domain(format!("{a} is not an O-ideal")));
        }
        Ok(a)
    }

    /// The O-ideal generated by `gens`.
    pub fn generated_by(d: &Disc, gens: &[Elt]) -> Result<IdealLat> {
        let mut all = Vec::with_capacity(gens.len() * 2);
        for &g in gens {
            all.push(g);
            all.push(elt_mul(d, g, (0, 1)));
        }
        Self::from_generators(d, &all)
    }

    pub fn principal(d: &Disc, g: Elt) -> Result<IdealLat> {
        Self::generated_by(d, &[g])
    }

    /// `D = sqrt(d) O`.
    pub fn different(d: &Disc) -> IdealLat {
        Self::principal(d, (-d.d, 2)).expect("sqrt d is nonzero")
    }

    /// The ideal `[a, (-b + sqrt d)/2]` attached to a form `(a, b, c)`.
    pub fn from_form(d: &Disc, f: &QuadForm) -> Result<IdealLat> {
        if f.disc() != d.d {
            return Err(Error::Domain(format!("form {f} has discriminant {}", f.disc())));
        }
        Self::from_generators(d, &[(f.a, 0), ((-f.b - d.d) / 2, 1)])
    }

    pub fn basis(&self) -> [Elt; 2] {
        [(self.n, 0), (self.u, self.c)]
    }

    pub fn contains(&self, e: Elt) -> bool {
        if e.1 % self.c != 0 {
            return false;
        }
        let k = e.1 / self.c;
        (e.0 as i128 - k as i128 * self.u as i128) % self.n as i128 == 0
    }

    pub fn contains_ideal(&self, other: &IdealLat) -> bool {
        other.basis().iter().all(|&e| self.contains(e))
    }

    fn is_ideal(&self) -> bool {
        self.basis()
            .iter()
            .all(|&e| self.contains(elt_mul(&self.disc, e, (0, 1))))
    }

    pub fn norm(&self) -> i64 {
        self.n * self.c
    }

    pub fn mul(&self, other: &IdealLat) -> IdealLat {
        let mut gens = Vec::with_capacity(4);
        for a in self.basis() {
            for b in other.basis() {
                gens.push(elt_mul(&self.disc, a, b));
            }
        }
        Self::from_generators(&self.disc, &gens).expect("product of ideals")
    }

    pub fn pow(&self, e: u32) -> IdealLat {
        (0..e).fold(Self::unit(&self.disc), |acc, _| acc.mul(self))
    }

    pub fn add(&self, other: &IdealLat) -> IdealLat {
        let gens = [self.basis(), other.basis()].concat();
        Self::from_generators(&self.disc, &gens).expect("sum of ideals")
    }

    pub fn conj(&self) -> IdealLat {
        let gens: Vec<Elt> = self.basis().iter().map(|&e| elt_conj(&self.disc, e)).collect();
        Self::from_generators(&self.disc, &gens).expect("conjugate ideal")
    }

    pub fn scale(&self, k: i64) -> IdealLat {
        IdealLat { disc: self.disc, n: self.n * k, u: self.u * k, c: self.c * k }
    }

    /// The largest `g | f` such that the order of discriminant `d/g^2`
    /// multiplies this lattice into itself; the multiplier ring is `O_{d/g^2}`.
    pub fn multiplier_index(&self) -> i64 {
        let d = &self.disc;
        let mut best = 1;
        for g in divisors(d.f) {
            let dg = d.d / (g * g);
            // 2g * omega_{dg} = (dg g - d) + 2 omega
            let z: Elt = (dg * g - d.d, 2);
            let target = self.scale(2 * g);
            if self.basis().iter().all(|&e| target.contains(elt_mul(d, z, e))) {
                best = best.max(g);
            }
        }
        best
    }

    pub fn is_invertible(&self) -> bool {
        self.multiplier_index() == 1
    }

    /// The reduced form in the class of an invertible ideal.
    pub fn class_of(&self) -> Result<QuadForm> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let d = &self.disc;
        let a = self.n / self.c;
        let b0 = self.u / self.c;
        let nb = elt_norm(d, (b0, 1));
        let f = QuadForm::new(a, -(2 * b0 + d.d), nb / a);
        debug_assert_eq!(nb % a, 0);
        Ok(f.reduce())
    }

    /// `O ∩ a O_p` for each prime `p | Norm(a)`.
    pub fn primary_decompose(&self) -> Vec<(i64, IdealLat)> {
        factor_i64(self.norm())
            .into_iter()
            .map(|(p, e)| {
                let pe = p.pow(e);
                (p, self.add(&Self::unit(&self.disc).scale(pe)))
            })
            .collect()
    }

    /// The prime of `O` above a prime `p | d`: `Z p + Z (b + omega)`.
    pub fn ramified_prime(d: &Disc, p: i64) -> Result<IdealLat> {
        if d.d % p != 0 {
            return Err(Error::Domain(format!("{p} does not divide {}", d.d)));
        }
        (0..p)
            .map(|b| IdealLat { disc: *d, n: p, u: b, c: 1 })
            .find(|a| a.is_ideal())
            .ok_or_else(|| Error::Domain(format!("no prime above {p}")))
    }
}

pub fn ideal_mul(a: &IdealLat, b: &IdealLat) -> IdealLat {
    a.mul(b)
}

pub fn ideal_conj(a: &IdealLat) -> IdealLat {
    a.conj()
}

pub fn ideal_norm(a: &IdealLat) -> i64 {
    a.norm()
}

pub fn is_invertible(a: &IdealLat) -> bool {
    a.is_invertible()
}

pub fn class_of(a: &IdealLat) -> Result<QuadForm> {
    a.class_of()
}

pub fn primary_decompose(a: &IdealLat) -> Vec<(i64, IdealLat)> {
    a.primary_decompose()
}

/// Every integral ideal of norm `n`, each paired with its invertibility.
pub fn ideals_of_norm(d: &Disc, n: i64) -> Vec<(IdealLat, bool)> {
    let mut out = Vec::new();
    for c in divisors(n) {
        let nn = n / c;
        if nn % c != 0 {
            continue;
        }
        let mut u = 0;
        while u < nn {
            let a = IdealLat { disc: *d, n: nn, u, c };
            if a.is_ideal() {
                out.push((a, a.is_invertible()));
            }
            u += c;
        }
    }
    out
}

/// True iff `a ⊆ p O`.
pub fn divisible_by_integer(a: &IdealLat, p: i64) -> bool {
    a.c % p == 0 && a.u % p == 0 && a.n % p == 0
}
