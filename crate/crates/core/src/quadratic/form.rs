use super::Disc;
use num_integer::Integer;
use std::fmt;

/// Binary quadratic form `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm { a, b, c }
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a && a <= c && !(b < 0 && (b.abs() == a || a == c))
    }

    /// The reduced form properly equivalent to a positive definite form.
    pub fn reduce(self) -> QuadForm {
        let QuadForm { mut a, mut b, mut c } = self;
        debug_assert!(a > 0 && b * b - 4 * a * c < 0);
        loop {
            if b > a || b <= -a {
                // translate b into (-a, a]
                let k = (a - b).div_euclid(2 * a);
                let nb = b + 2 * k * a;
                c += k * b + k * k * a;
                b = nb;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            return QuadForm { a, b, c };
        }
    }
}

/// All reduced primitive forms of discriminant `d`, sorted by `(a, b)`.
pub fn reduced_forms(d: &Disc) -> Vec<QuadForm> {
    let d = d.d;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            let f = QuadForm { a, b, c };
            if c >= a && f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

pub fn class_number(d: &Disc) -> i64 {
    reduced_forms(d).len() as i64
}
