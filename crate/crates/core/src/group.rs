//! Finite abelian groups `Z_q1 x ... x Z_qm`, the pairing with the dual group,
//! and the Fourier transform of complex functions on them.
//!
//! Elements are addressed by their index in mixed-radix order, with the first
//! cyclic component most significant. The dual group has the same shape and
//! the same indexing.

use crate::error::{invalid, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `Z_q1 x ... x Z_qm` with every `q_i >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
    strides: Vec<usize>,
    order: usize,
    lcm: u64,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.is_empty() {
            return Err(invalid("a group needs at least one cyclic component"));
        }
        if let Some(q) = orders.iter().find(|&&q| q < 2) {
            return Err(invalid(format!("cyclic orders must be >= 2, got {q}")));
        }
        let mut strides = vec![1usize; orders.len()];
        for i in (0..orders.len() - 1).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }
        let order = strides[0] * orders[0] as usize;
        let lcm = orders
            .iter()
            .fold(1u64, |l, &q| l / gcd(l, q as u64) * q as u64);
        Ok(FiniteAbelianGroup {
            orders,
            strides,
            order,
            lcm,
        })
    }

    /// The cyclic group `Z_q`.
    pub fn cyclic(q: u32) -> Result<Self> {
        Self::new(vec![q])
    }

    /// Direct product: orders are concatenated, so indices of the product
    /// are the mixed-radix combination of the factors' indices.
    pub fn product(groups: &[FiniteAbelianGroup]) -> Result<Self> {
        Self::new(
            groups
                .iter()
                .flat_map(|g| g.orders.iter().copied())
                .collect(),
        )
    }

    pub fn cyclic_orders(&self) -> &[u32] {
        &self.orders
    }

    /// `|A|`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Least common multiple of the cyclic orders; pairings are multiples of `1/lcm`.
    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    /// Residues of the element with the given index.
    pub fn residues(&self, index: usize) -> Vec<u32> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&q, &s)| ((index / s) % q as usize) as u32)
            .collect()
    }

    pub fn element(&self, index: usize) -> GroupElement {
        GroupElement {
            residues: self.residues(index),
        }
    }

    pub fn index_of(&self, e: &GroupElement) -> Result<usize> {
        self.check_shape(e)?;
        Ok(e.residues
            .iter()
            .zip(&self.strides)
            .map(|(&r, &s)| r as usize * s)
            .sum())
    }

    fn check_shape(&self, e: &GroupElement) -> Result<()> {
        if e.residues.len() != self.orders.len()
            || e.residues.iter().zip(&self.orders).any(|(&r, &q)| r >= q)
        {
            return Err(Error::ShapeMismatch(format!(
                "{e:?} is not an element of {self}"
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.orders.len() == 1 {
            return (a + b) % self.order;
        }
        let mut out = 0;
        for (&q, &s) in self.orders.iter().zip(&self.strides) {
            let q = q as usize;
            out += ((a / s % q + b / s % q) % q) * s;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        if self.orders.len() == 1 {
            return (self.order - a) % self.order;
        }
        let mut out = 0;
        for (&q, &s) in self.orders.iter().zip(&self.strides) {
            let q = q as usize;
            out += ((q - a / s % q) % q) * s;
        }
        out
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k * a` for an integer multiplier.
    pub fn scale(&self, k: i64, a: usize) -> usize {
        let mut out = 0;
        for (&q, &s) in self.orders.iter().zip(&self.strides) {
            let q = q as i64;
            let r = (a / s) as i64 % q;
            out += ((k % q * r).rem_euclid(q)) as usize * s;
        }
        out
    }

    /// Pairing numerator `k` such that `<a_hat, a> = k / lcm (mod 1)`.
    pub fn pairing_numerator(&self, a_hat: usize, a: usize) -> u64 {
        let mut k = 0u64;
        for (&q, &s) in self.orders.iter().zip(&self.strides) {
            let q = q as usize;
            let prod = ((a_hat / s % q) * (a / s % q) % q) as u64;
            k += prod * (self.lcm / q as u64);
        }
        k % self.lcm
    }

    /// Exact pairing of two elements as a reduced fraction in `[0, 1)`.
    pub fn pairing(&self, a_hat: &GroupElement, a: &GroupElement) -> Result<Phase> {
        let i = self.index_of(a_hat)?;
        let j = self.index_of(a)?;
        Ok(Phase::new(self.pairing_numerator(i, j), self.lcm))
    }

    /// `exp(2 pi i <a_hat, a>)`.
    pub fn character(&self, a_hat: usize, a: usize) -> Complex64 {
        Phase::new(self.pairing_numerator(a_hat, a), self.lcm).exp()
    }

    /// Every element index in canonical order.
    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.order
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|q| format!("Z{q}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Parses `"Z2"`, `"Z3"`, `"Z2xZ4"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut orders = Vec::new();
        for part in s.trim().split(['x', 'X']) {
            let digits = part.trim().strip_prefix(['Z', 'z']).ok_or_else(|| {
                Error::Parse(format!("bad group spec `{s}`: expected Zq factors"))
            })?;
            let q: u32 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclic order `{digits}` in `{s}`")))?;
            orders.push(q);
        }
        FiniteAbelianGroup::new(orders)
    }
}

impl TryFrom<String> for FiniteAbelianGroup {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FiniteAbelianGroup> for String {
    fn from(g: FiniteAbelianGroup) -> String {
        g.to_string()
    }
}

/// A group element given by its residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub residues: Vec<u32>,
}

impl GroupElement {
    pub fn new(residues: Vec<u32>) -> Self {
        GroupElement { residues }
    }
}

/// An element of `Q/Z`, stored as a reduced fraction `num/den` with `num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Phase {
    pub num: u64,
    pub den: u64,
}

impl Phase {
    pub fn new(num: u64, den: u64) -> Phase {
        let num = num % den;
        let g = gcd(num, den).max(1);
        Phase {
            num: num / g,
            den: den / g,
        }
    }

    pub fn zero() -> Phase {
        Phase { num: 0, den: 1 }
    }

    /// `exp(2 pi i num/den)`.
    pub fn exp(self) -> Complex64 {
        // Phases past a half turn are conjugates of ones before it, so
        // conjugate pairs cancel exactly. Multiples of a quarter or a sixth
        // turn are exact, which keeps integer-valued character sums integral.
        let (num, den) = (self.num % self.den, self.den);
        if 2 * num > den {
            return Phase {
                num: den - num,
                den,
            }
            .exp()
            .conj();
        }
        let half_sqrt3 = 3f64.sqrt() / 2.0;
        match (6 * num).checked_div(den).filter(|_| (6 * num) % den == 0) {
            Some(0) => return Complex64::new(1.0, 0.0),
            Some(1) => return Complex64::new(0.5, half_sqrt3),
            Some(2) => return Complex64::new(-0.5, half_sqrt3),
            Some(3) => return Complex64::new(-1.0, 0.0),
            _ => {}
        }
        if 4 * num == den {
            return Complex64::new(0.0, 1.0);
        }
        Complex64::from_polar(1.0, TAU * num as f64 / den as f64)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A complex-valued function on a group, values in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupFunction {
    pub domain: FiniteAbelianGroup,
    pub values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(domain: FiniteAbelianGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != domain.order() {
            return Err(Error::ShapeMismatch(format!(
                "{} values given for a group of order {}",
                values.len(),
                domain.order()
            )));
        }
        Ok(GroupFunction { domain, values })
    }

    pub fn from_real(domain: FiniteAbelianGroup, values: &[f64]) -> Result<Self> {
        Self::new(
            domain,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn constant(domain: FiniteAbelianGroup, c: f64) -> Self {
        let n = domain.order();
        GroupFunction {
            domain,
            values: vec![Complex64::new(c, 0.0); n],
        }
    }

    /// `delta_0`.
    pub fn delta(domain: FiniteAbelianGroup) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); domain.order()];
        values[0] = Complex64::new(1.0, 0.0);
        GroupFunction { domain, values }
    }

    pub fn at(&self, index: usize) -> Complex64 {
        self.values[index]
    }

    /// `f_hat(a_hat) = sum_a f(a) exp(2 pi i <a_hat, a>)`, by direct summation.
    pub fn fourier_transform(&self) -> GroupFunction {
        let g = &self.domain;
        let values = g
            .indices()
            .map(|ah| {
                g.indices()
                    .map(|a| self.values[a] * g.character(ah, a))
                    .sum()
            })
            .collect();
        GroupFunction {
            domain: g.clone(),
            values,
        }
    }

    /// `g(a) = |A|^-1 sum_a_hat g_hat(a_hat) exp(-2 pi i <a_hat, a>)`.
    pub fn inverse_fourier_transform(&self) -> GroupFunction {
        let g = &self.domain;
        let n = g.order() as f64;
        let values = g
            .indices()
            .map(|a| {
                g.indices()
                    .map(|ah| self.values[ah] * g.character(ah, a).conj())
                    .sum::<Complex64>()
                    / n
            })
            .collect();
        GroupFunction {
            domain: g.clone(),
            values,
        }
    }

    /// `f(-a)`.
    pub fn reflect(&self) -> GroupFunction {
        let g = &self.domain;
        let values = g.indices().map(|a| self.values[g.neg(a)]).collect();
        GroupFunction {
            domain: g.clone(),
            values,
        }
    }

    pub fn is_real_nonnegative(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.im == 0.0 && v.re >= 0.0 && v.re.is_finite())
    }
}

/// Fourier transform of a dense table over the product of `groups`, applied
/// one cyclic axis at a time. `inverse` uses the conjugate kernel and the
/// `1/|A|` normalisation.
pub fn transform_table(
    groups: &[FiniteAbelianGroup],
    values: &[Complex64],
    inverse: bool,
) -> Vec<Complex64> {
    let orders: Vec<usize> = groups
        .iter()
        .flat_map(|g| g.cyclic_orders().iter().map(|&q| q as usize))
        .collect();
    let total: usize = orders.iter().product();
    assert_eq!(
        values.len(),
        total,
        "table size does not match variable alphabets"
    );
    let mut data = values.to_vec();
    let mut buf = Vec::new();
    let mut stride = total;
    for &q in &orders {
        stride /= q;
        let block = stride * q;
        let sign = if inverse { -1.0 } else { 1.0 };
        let roots: Vec<Complex64> = (0..q)
            .map(|k| Complex64::from_polar(1.0, sign * TAU * k as f64 / q as f64))
            .collect();
        for start in (0..total).step_by(block) {
            for offset in 0..stride {
                buf.clear();
                buf.extend((0..q).map(|r| data[start + offset + r * stride]));
                for k in 0..q {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (r, v) in buf.iter().enumerate() {
                        acc += v * roots[(k * r) % q];
                    }
                    data[start + offset + k * stride] = if inverse { acc / q as f64 } else { acc };
                }
            }
        }
    }
    data
}
