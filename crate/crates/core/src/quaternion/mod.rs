//! The definite quaternion algebra ramified at `l` and infinity, presented
//! as pairs `[alpha, beta]` over `K = Q(sqrt d)` with `j^2 = jsq`, and the
//! maximal orders `R(a, lambda)` and `R_n(a)` as explicit rank-4 lattices.

mod field;
mod lattice;
mod snm;
mod verify;

pub use field::{Field, KElt};
pub use lattice::{det, hnf_int, nullspace, q, qr, Lattice, Q};
pub use snm::{
    brute_force_snm, brute_force_snm_all, enumerate_trace_norm, optimal_index, snm_closed_form,
    snm_in_scope,
};
pub use verify::{snm_rows, structure_checks, Check, SnmRow};

use crate::arith::{gcd, is_prime_u64, kronecker};
use crate::error::{Error, Result};
use crate::quadratic::{is_in_ker_psi, make_disc, psi_hat_ell, psi_p, Disc};
use field::to2;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type QuatElem = [Q; 4];

const Q_SEARCH_CAP: i64 = 1_000_000;
/// `find_lambda` searches max-norm shells up to this radius.
pub const LAMBDA_RADIUS_CAP: i64 = 640;

/// Smallest prime `q` with `q` prime to `l d` such that `-l q` lies in the
/// kernel of `Psi` (inert `l`), or `-q` lies in the kernel of `Psi` without
/// its `l` component but not in that of `Psi_l` (ramified `l`).
pub fn choose_q(d: &Disc, l: i64) -> Result<i64> {
    check_l(d, l)?;
    let ramified = d.d % l == 0;
    for q in 2..Q_SEARCH_CAP {
        if q == l || d.d % q == 0 || !is_prime_u64(q as u64) {
            continue;
        }
        let ok = if ramified {
            psi_hat_ell(d, l, -q)?.is_trivial() && psi_p(d, l, -q)? == -1
        } else {
            is_in_ker_psi(d, -l * q)?
        };
        if ok {
            if kronecker(d.d, q) != 1 {
                return Err(Error::Domain(format!("chosen q = {q} does not split in O_{}", d.d)));
            }
            return Ok(q);
        }
    }
    Err(Error::SearchExhausted(format!("no q below {Q_SEARCH_CAP} for ({}, {l})", d.d)))
}

fn check_l(d: &Disc, l: i64) -> Result<()> {
    if l < 2 || !is_prime_u64(l as u64) {
        return Err(Error::Domain(format!("{l} is not prime")));
    }
    if d.f % l == 0 {
        return Err(Error::HypothesisViolated(format!("{l} divides the conductor of {}", d.d)));
    }
    if kronecker(d.d, l) == 1 {
        return Err(Error::HypothesisViolated(format!("{l} splits in O_{}", d.d)));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatAlg {
    pub disc: Disc,
    pub k: Field,
    pub l: i64,
    pub q: i64,
    /// `-l q` when `l` is inert, `-q` when `l` ramifies in `K`.
    pub jsq: i64,
    pub ramified: bool,
}

impl QuatAlg {
    pub fn new(d: i64, l: i64) -> Result<QuatAlg> {
        let disc = make_disc(d)?;
        let q = choose_q(&disc, l)?;
        let ramified = d % l == 0;
        let jsq = if ramified { -q } else { -l * q };
        Ok(QuatAlg { disc, k: Field::new(&disc), l, q, jsq, ramified })
    }

    pub fn mul(&self, x: &QuatElem, y: &QuatElem) -> QuatElem {
        let k = &self.k;
        let (a1, b1, a2, b2) = (to2(&x[..2]), to2(&x[2..]), to2(&y[..2]), to2(&y[2..]));
        let t = k.mul(&b1, &k.conj(&b2));
        let j2 = q(self.jsq);
        let a = k.mul(&a1, &a2);
        let b = k.add(&k.mul(&a1, &b2), &k.mul(&b1, &k.conj(&a2)));
        [&a[0] + &j2 * &t[0], &a[1] + &j2 * &t[1], b[0].clone(), b[1].clone()]
    }

    pub fn conj(&self, x: &QuatElem) -> QuatElem {
        let a = self.k.conj(&to2(&x[..2]));
        [a[0].clone(), a[1].clone(), -&x[2], -&x[3]]
    }

    pub fn trd(&self, x: &QuatElem) -> Q {
        self.k.trace(&to2(&x[..2]))
    }

    pub fn nrd(&self, x: &QuatElem) -> Q {
        self.k.norm(&to2(&x[..2])) - q(self.jsq) * self.k.norm(&to2(&x[2..]))
    }

    pub fn one(&self) -> QuatElem {
        [Q::one(), Q::zero(), Q::zero(), Q::zero()]
    }

    /// The prime above `q` used for `lambda`.
    pub fn q_ideal(&self) -> Lattice {
        self.k.prime_above(self.q).expect("q splits")
    }

    /// The prime above `l` (ramified case only).
    pub fn l_ideal(&self) -> Option<Lattice> {
        if self.ramified {
            self.k.prime_above(self.l)
        } else {
            None
        }
    }

    /// Modulus of the norm condition on `lambda`: `|d|` or `|d| / l`.
    pub fn lambda_modulus(&self) -> i64 {
        let m = self.disc.d.abs();
        if self.ramified {
            m / self.l
        } else {
            m
        }
    }

    /// Embed a lattice of `K` as `{[x, 0]}`.
    pub fn embed(&self, a: &Lattice) -> Lattice {
        let gens: Vec<Vec<Q>> =
            a.rows.iter().map(|r| vec![r[0].clone(), r[1].clone(), Q::zero(), Q::zero()]).collect();
        Lattice::span(4, &gens)
    }

    /// HNF of the Z-span of all products of basis vectors.
    pub fn lat_mul(&self, l1: &Lattice, l2: &Lattice) -> Lattice {
        let mut gens = Vec::with_capacity(l1.rank() * l2.rank());
        for x in &l1.rows {
            for y in &l2.rows {
                gens.push(self.mul(&to4(x), &to4(y)).to_vec());
            }
        }
        Lattice::span(4, &gens)
    }

    /// `a^{-1} R a` with `a` embedded diagonally.
    pub fn conjugate_order(&self, r: &Lattice, a: &Lattice) -> Lattice {
        let ainv = self.embed(&self.k.ideal_inv(a));
        self.lat_mul(&self.lat_mul(&ainv, r), &self.embed(a))
    }

    pub fn is_order(&self, l: &Lattice) -> bool {
        if l.rank() != 4 || !l.contains(&self.one()) {
            return false;
        }
        for x in &l.rows {
            let x = to4(x);
            if !self.trd(&x).is_integer() || !self.nrd(&x).is_integer() {
                return false;
            }
            for y in &l.rows {
                if !l.contains(&self.mul(&x, &to4(y))) {
                    return false;
                }
            }
        }
        true
    }

    /// `|det(Trd(e_i conj(e_j)))|`, the square of the reduced discriminant.
    pub fn reduced_discriminant_sq(&self, l: &Lattice) -> Q {
        let rows: Vec<QuatElem> = l.rows.iter().map(|r| to4(r)).collect();
        let gram: Vec<Vec<Q>> = rows
            .iter()
            .map(|x| rows.iter().map(|y| self.trd(&self.mul(x, &self.conj(y)))).collect())
            .collect();
        det(&gram).abs()
    }

    /// `lambda` in the prime above `q` with `N(lambda) = jsq` modulo
    /// [`Self::lambda_modulus`], first in max-norm shells (then `x`, then `y`).
    pub fn find_lambda(&self, q_ideal: &Lattice) -> Result<KElt> {
        let m = self.lambda_modulus();
        for s in 0..=LAMBDA_RADIUS_CAP {
            for x in -s..=s {
                for y in -s..=s {
                    if x.abs().max(y.abs()) != s {
                        continue;
                    }
                    let lam = self.k.elt(x, y);
                    if !q_ideal.contains(&lam) {
                        continue;
                    }
                    let n = self.k.norm(&lam).to_integer();
                    if (n - self.jsq).mod_floor(&BigInt::from(m)).is_zero() {
                        return Ok(lam);
                    }
                }
            }
        }
        Err(Error::SearchExhausted(format!(
            "no lambda within radius {LAMBDA_RADIUS_CAP} for ({}, {})",
            self.disc.d, self.l
        )))
    }

    /// `R_n(a) = {[alpha, beta] : alpha in A, beta in B, alpha - lambda beta in O}`
    /// with `A = D^{-1}`, `B = l^{n-1} q^{-1} D^{-1} conj(a) a^{-1}` when `l` is
    /// inert and `A = l D^{-1}`, `B = q^{-1} l^n D^{-1} conj(a) a^{-1}` when `l`
    /// ramifies (`l` here the prime above `l`).
    pub fn build_r(&self, lambda: &KElt, a: &Lattice, n: u32) -> Result<Lattice> {
        let alpha = if self.ramified {
            let li = self.l_ideal().expect("ramified");
            self.k.ideal_mul(&li, &self.k.inverse_different())
        } else {
            self.k.inverse_different()
        };
        self.build_r_with(lambda, a, n, &alpha)
    }

    /// [`Self::build_r`] with an explicit lattice for `alpha`; the condition
    /// `alpha - lambda beta in O` forces `alpha` into `l D^{-1}` in the
    /// ramified case, so `D^{-1}` there yields the same order.
    pub fn build_r_with(&self, lambda: &KElt, a: &Lattice, n: u32, alpha: &Lattice) -> Result<Lattice> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        let k = &self.k;
        let ring = k.ring();
        let na = k.ideal_norm(a);
        if !ring.contains_lattice(a) || !na.is_integer() || gcd(na.to_integer().try_into().unwrap_or(0), self.disc.f) != 1 {
            return Err(Error::HypothesisViolated("a must be integral with norm prime to f".into()));
        }
        let mut beta = k.ideal_mul(
            &k.ideal_mul(&k.ideal_inv(&self.q_ideal()), &k.inverse_different()),
            &k.ideal_mul(&k.ideal_conj(a), &k.ideal_inv(a)),
        );
        if self.ramified {
            let li = self.l_ideal().expect("ramified");
            beta = k.ideal_mul(&beta, &k.ideal_pow(&li, n));
        } else {
            beta = beta.scale(&q(self.l.pow(n - 1)));
        }
        let mut gens: Vec<Vec<Q>> =
            alpha.rows.iter().map(|r| vec![r[0].clone(), r[1].clone(), Q::zero(), Q::zero()]).collect();
        gens.extend(beta.rows.iter().map(|r| vec![Q::zero(), Q::zero(), r[0].clone(), r[1].clone()]));
        let ambient = Lattice::span(4, &gens);
        // alpha - lambda beta has coordinates linear in (alpha, beta); both
        // coordinates must be integers.
        let lb0 = k.mul(lambda, &[Q::one(), Q::zero()]);
        let lb1 = k.mul(lambda, &[Q::zero(), Q::one()]);
        let f0 = vec![Q::one(), Q::zero(), -&lb0[0], -&lb1[0]];
        let f1 = vec![Q::zero(), Q::one(), -&lb0[1], -&lb1[1]];
        Ok(ambient.integral_on(&[f0, f1]))
    }

    /// `R~(a) = {[alpha, beta] : alpha in O, beta in conj(a) a^{-1}}`.
    pub fn r_tilde(&self, a: &Lattice) -> Lattice {
        let k = &self.k;
        let b = k.ideal_mul(&k.ideal_conj(a), &k.ideal_inv(a));
        let mut gens = vec![self.one().to_vec(), vec![Q::zero(), Q::one(), Q::zero(), Q::zero()]];
        gens.extend(b.rows.iter().map(|r| vec![Q::zero(), Q::zero(), r[0].clone(), r[1].clone()]));
        Lattice::span(4, &gens)
    }

    /// `O + l^{n-1} R_1` (inert) or `O + l^{n-1} R_1` with `l` the prime
    /// above `l` (ramified), as a lattice.
    pub fn r_n_from_r1(&self, r1: &Lattice, n: u32) -> Lattice {
        let scal = match self.l_ideal() {
            Some(li) => self.k.ideal_pow(&li, n - 1),
            None => self.k.ring().scale(&q(self.l.pow(n - 1))),
        };
        let o = self.embed(&self.k.ring());
        o.sum(&self.lat_mul(&self.embed(&scal), r1))
    }

    /// `L` intersected with the diagonal copy `{[alpha, 0]}` of `K`.
    pub fn diagonal_part(&self, l: &Lattice) -> Lattice {
        let e2 = vec![Q::zero(), Q::zero(), Q::one(), Q::zero()];
        let e3 = vec![Q::zero(), Q::zero(), Q::zero(), Q::one()];
        l.kernel_of(&[e2, e3])
    }
}

pub fn to4(v: &[Q]) -> QuatElem {
    [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
}

/// Everything one needs for the orders of `(d, l)`: the algebra, `lambda`
/// and `R_1(O)`.
#[derive(Debug, Clone)]
pub struct Setup {
    pub alg: QuatAlg,
    pub lambda: KElt,
    pub r1: Lattice,
}

impl Setup {
    pub fn new(d: i64, l: i64) -> Result<Setup> {
        let alg = QuatAlg::new(d, l)?;
        let lambda = alg.find_lambda(&alg.q_ideal())?;
        let r1 = alg.build_r(&lambda, &alg.k.ring(), 1)?;
        Ok(Setup { alg, lambda, r1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_choices() {
        let cases = [(-7, 3, 2), (-7, 7, 2), (-4, 2, 5), (-3, 5, 7), (-3, 2, 7), (-4, 3, 5), (-8, 2, 3), (-15, 3, 19), (-20, 5, 3), (-20, 2, 29)];
        for (d, l, want) in cases {
            assert_eq!(choose_q(&make_disc(d).unwrap(), l).unwrap(), want, "({d}, {l})");
        }
        assert!(choose_q(&make_disc(-7).unwrap(), 2).is_err());
    }

    #[test]
    fn r_is_maximal_order() {
        for (d, l) in [(-7, 3), (-7, 7), (-4, 2), (-3, 5)] {
            let s = Setup::new(d, l).unwrap();
            let alg = &s.alg;
            assert!(alg.is_order(&s.r1), "({d}, {l})");
            assert_eq!(alg.reduced_discriminant_sq(&s.r1), q(l * l));
            assert_eq!(alg.diagonal_part(&s.r1), alg.embed(&alg.k.ring()));
            let idx = s.r1.index_of(&alg.r_tilde(&alg.k.ring()));
            let qd = alg.q * d.abs();
            assert_eq!(idx, if alg.ramified { q(qd / l) } else { q(qd) });
        }
    }

    #[test]
    fn lambda_condition() {
        let s = Setup::new(-7, 3).unwrap();
        let n = s.alg.k.norm(&s.lambda).to_integer();
        assert!((n + BigInt::from(6)).mod_floor(&BigInt::from(7)).is_zero());
        assert!(s.alg.q_ideal().contains(&s.lambda));
    }
}
