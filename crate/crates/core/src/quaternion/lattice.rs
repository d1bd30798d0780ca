//! Full- or partial-rank Z-lattices in `Q^n`, kept in row Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Row HNF over Z: upper echelon, positive pivots, entries above each pivot
/// reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf_int(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if a.is_empty() {
        return a;
    }
    let ncols = a[0].len();
    let mut r0 = 0;
    for col in 0..ncols {
        loop {
            let piv: Vec<usize> = (r0..a.len()).filter(|&i| !a[i][col].is_zero()).collect();
            if piv.len() <= 1 {
                break;
            }
            let i0 = *piv.iter().min_by_key(|&&i| a[i][col].abs()).unwrap();
            for &i in &piv {
                if i == i0 {
                    continue;
                }
                let f = a[i][col].div_floor(&a[i0][col]);
                let src = a[i0].clone();
                for (x, y) in a[i].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
        let Some(i0) = (r0..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r0, i0);
        if a[r0][col].is_negative() {
            for x in a[r0].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot = a[r0].clone();
        for i in 0..r0 {
            let f = a[i][col].div_floor(&pivot[col]);
            if !f.is_zero() {
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r0 += 1;
        let (head, tail) = a.split_at(r0);
        let mut next = head.to_vec();
        next.extend(tail.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned());
        a = next;
        if r0 == a.len() {
            break;
        }
    }
    a.truncate(r0);
    a
}

fn common_denominator<'a, I: IntoIterator<Item = &'a Q>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// A Z-lattice given by its HNF basis rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub rows: Vec<Vec<Q>>,
    pub dim: usize,
}

impl Lattice {
    /// The Z-span of `gens`, in `Q^dim`.
    pub fn span(dim: usize, gens: &[Vec<Q>]) -> Lattice {
        let den = common_denominator(gens.iter().flatten());
        let ints: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| {
                assert_eq!(g.len(), dim);
                g.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect()
            })
            .collect();
        let rows = hnf_int(&ints)
            .into_iter()
            .map(|r| r.into_iter().map(|x| Q::new(x, den.clone())).collect())
            .collect();
        Lattice { rows, dim }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect()
    }

    /// Integer coordinates of `v`, if it lies in the lattice.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<BigInt>> {
        let mut v = v.to_vec();
        let mut c = Vec::with_capacity(self.rows.len());
        for (row, j) in self.rows.iter().zip(self.pivots()) {
            let ck = &v[j] / &row[j];
            if !ck.is_integer() {
                return None;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &ck * y;
            }
            c.push(ck.to_integer());
        }
        v.iter().all(|x| x.is_zero()).then_some(c)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Covolume of a full-rank lattice (product of the HNF pivots).
    pub fn covolume(&self) -> Q {
        assert_eq!(self.rank(), self.dim, "covolume needs full rank");
        self.rows.iter().enumerate().map(|(i, r)| r[i].clone()).fold(Q::one(), |a, b| a * b)
    }

    /// `[self : sub]` for full-rank `sub` contained in `self`.
    pub fn index_of(&self, sub: &Lattice) -> Q {
        sub.covolume() / self.covolume()
    }

    pub fn scale(&self, k: &Q) -> Lattice {
        let gens: Vec<Vec<Q>> = self.rows.iter().map(|r| r.iter().map(|x| x * k).collect()).collect();
        Lattice::span(self.dim, &gens)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let gens: Vec<Vec<Q>> = self.rows.iter().chain(&other.rows).cloned().collect();
        Lattice::span(self.dim, &gens)
    }

    /// The sublattice of vectors `x` with `x . f = 0` for every column
    /// vector `f` in `funcs`.
    pub fn kernel_of(&self, funcs: &[Vec<Q>]) -> Lattice {
        self.constrained(funcs, false)
    }

    /// The sublattice of vectors `x` with `x . f` integral for every `f`.
    pub fn integral_on(&self, funcs: &[Vec<Q>]) -> Lattice {
        self.constrained(funcs, true)
    }

    /// HNF of `[c F | c]` over `c` in Z^rank (plus `den` times the unit
    /// rows of the `F` block when `modular`); rows with vanishing `F` part
    /// give the constrained coefficient vectors.
    fn constrained(&self, funcs: &[Vec<Q>], modular: bool) -> Lattice {
        let k = funcs.len();
        let n = self.rows.len();
        let vals: Vec<Vec<Q>> =
            self.rows.iter().map(|r| funcs.iter().map(|f| dot(r, f)).collect()).collect();
        let den = common_denominator(vals.iter().flatten());
        let scale = Q::from_integer(den.clone());
        let mut ext: Vec<Vec<BigInt>> = vals
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut row: Vec<BigInt> = v.iter().map(|x| (x * &scale).to_integer()).collect();
                row.extend((0..n).map(|j| BigInt::from(i64::from(i == j))));
                row
            })
            .collect();
        if modular {
            for t in 0..k {
                let mut row = vec![BigInt::zero(); k + n];
                row[t] = den.clone();
                ext.push(row);
            }
        }
        let gens: Vec<Vec<Q>> = hnf_int(&ext)
            .into_iter()
            .filter(|r| r[..k].iter().all(|x| x.is_zero()))
            .map(|r| {
                let c = &r[k..];
                (0..self.dim)
                    .map(|j| {
                        c.iter()
                            .zip(&self.rows)
                            .fold(Q::zero(), |acc, (ci, row)| acc + Q::from_integer(ci.clone()) * &row[j])
                    })
                    .collect()
            })
            .collect();
        Lattice::span(self.dim, &gens)
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut result = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            result = -result;
        }
        let piv = a[col][col].clone();
        result *= &piv;
        for i in col + 1..n {
            let f = &a[i][col] / &piv;
            if f.is_zero() {
                continue;
            }
            let src = a[col].clone();
            for (x, y) in a[i].iter_mut().zip(&src) {
                *x -= &f * y;
            }
        }
    }
    result
}

/// A basis of the rational null space `{v : rows . v = 0}`.
pub fn nullspace(rows: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let mut a = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][col].clone();
        for x in a[r].iter_mut() {
            *x /= &piv;
        }
        let src = a[r].clone();
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for (x, y) in a[i].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Q::zero(); dim];
            v[fc] = Q::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][fc].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn hnf_and_membership() {
        let l = Lattice::span(2, &[v(&[4, 2]), v(&[6, 0])]);
        assert_eq!(l.rows, vec![v(&[2, 4]), v(&[0, 6])]);
        assert!(l.contains(&v(&[4, 2])));
        assert!(!l.contains(&v(&[1, 0])));
        assert_eq!(l.covolume(), q(12));
    }

    #[test]
    fn kernel_and_integrality() {
        let z2 = Lattice::span(2, &[v(&[1, 0]), v(&[0, 1])]);
        let k = z2.kernel_of(&[v(&[1, 1])]);
        assert_eq!(k.rows, vec![v(&[1, -1])]);
        let half = vec![qr(1, 2), q(0)];
        let even = z2.integral_on(&[half]);
        assert_eq!(even.rows, vec![v(&[2, 0]), v(&[0, 1])]);
    }

    #[test]
    fn determinant_and_nullspace() {
        assert_eq!(det(&[v(&[1, 2]), v(&[3, 4])]), q(-2));
        let ns = nullspace(&[v(&[1, 0, 0]), v(&[0, 1, 1])], 3);
        assert_eq!(ns, vec![v(&[0, -1, 1])]);
    }
}
