//! Tolerant complex comparison and exact scale factors.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Default comparison tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Relative error for magnitudes at least 1, absolute error below.
pub fn mixed_error(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    let diff = (a - b).norm();
    if scale >= 1.0 {
        diff / scale
    } else {
        diff
    }
}

pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    mixed_error(a, b) <= tol
}

pub fn close_real(a: f64, b: f64, tol: f64) -> bool {
    close(Complex64::new(a, 0.0), Complex64::new(b, 0.0), tol)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A positive exact rational, used for declared scale factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scale {
    pub num: u128,
    pub den: u128,
}

impl Scale {
    pub const ONE: Scale = Scale { num: 1, den: 1 };

    pub fn new(num: u128, den: u128) -> Scale {
        assert!(num > 0 && den > 0, "scale factors are positive");
        let g = gcd(num, den);
        Scale {
            num: num / g,
            den: den / g,
        }
    }

    pub fn integer(n: u128) -> Scale {
        Scale::new(n, 1)
    }

    /// `base^exp` for a possibly negative exponent.
    pub fn power(base: u128, exp: i64) -> Scale {
        let p = base
            .checked_pow(exp.unsigned_abs() as u32)
            .expect("scale factor overflows u128");
        if exp >= 0 {
            Scale::new(p, 1)
        } else {
            Scale::new(1, p)
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::ops::Mul for Scale {
    type Output = Scale;

    fn mul(self, other: Scale) -> Scale {
        product(self, other)
    }
}

fn product(a: Scale, b: Scale) -> Scale {
    let g1 = gcd(a.num, b.den);
    let g2 = gcd(b.num, a.den);
    Scale::new(
        (a.num / g1)
            .checked_mul(b.num / g2)
            .expect("scale factor overflows u128"),
        (a.den / g2)
            .checked_mul(b.den / g1)
            .expect("scale factor overflows u128"),
    )
}

impl std::ops::Div for Scale {
    type Output = Scale;

    fn div(self, other: Scale) -> Scale {
        product(
            self,
            Scale {
                num: other.den,
                den: other.num,
            },
        )
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
