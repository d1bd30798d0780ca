use super::val;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(i64),
    Infinity,
}

/// Kronecker symbol `(a | n)` for any integers, extending Jacobi by
/// `(a | 2) = 0, 1, -1` for `a` even, `a = +-1 mod 8`, `a = +-3 mod 8`,
/// and `(a | -1) = sign(a)` (with `(0 | -1) = 1`).
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a as i128;
    let mut n = n as i128;
    let mut k = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    let tz = n.trailing_zeros();
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if tz % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            k = -k;
        }
        n >>= tz;
    }
    // Jacobi (a | n) with n odd and positive.
    a = a.rem_euclid(n);
    while a != 0 {
        let t = a.trailing_zeros();
        a >>= t;
        if t % 2 == 1 && matches!(n % 8, 3 | 5) {
            k = -k;
        }
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        k
    } else {
        0
    }
}

fn split_off(n: i64, p: i64) -> (u32, i64) {
    let e = val(n, p);
    (e, n / p.pow(e))
}

/// Hilbert symbol `(a, b)_v` over Q for nonzero `a`, `b`.
pub fn hilbert_symbol(a: i64, b: i64, place: Place) -> i32 {
    assert!(a != 0 && b != 0, "Hilbert symbol of zero");
    match place {
        Place::Infinity => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => {
            let (alpha, u) = split_off(a, 2);
            let (beta, v) = split_off(b, 2);
            let eps = |x: i64| ((x.rem_euclid(4) - 1) / 2) as u32;
            let omega = |x: i64| {
                let r = x.rem_euclid(8);
                u32::from(r == 3 || r == 5)
            };
            let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            assert!(p > 2, "Hilbert symbol at a non-prime place {p}");
            let (alpha, u) = split_off(a, p);
            let (beta, v) = split_off(b, p);
            let mut s = 1;
            if (alpha * beta) % 2 == 1 && p % 4 == 3 {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= kronecker(u, p);
            }
            if alpha % 2 == 1 {
                s *= kronecker(v, p);
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_small_values() {
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(2, 7), 1);
        assert_eq!(kronecker(-1, 7), -1);
        assert_eq!(kronecker(5, -1), 1);
        assert_eq!(kronecker(-5, -1), -1);
        assert_eq!(kronecker(3, 0), 0);
        assert_eq!(kronecker(-1, 0), 1);
    }

    #[test]
    fn hilbert_small_values() {
        assert_eq!(hilbert_symbol(-1, -1, Place::Infinity), -1);
        assert_eq!(hilbert_symbol(-1, -1, Place::Finite(2)), -1);
        assert_eq!(hilbert_symbol(-1, -1, Place::Finite(3)), 1);
        assert_eq!(hilbert_symbol(2, 3, Place::Finite(3)), -1);
        assert_eq!(hilbert_symbol(-84, 3, Place::Finite(3)), 1);
    }
}
