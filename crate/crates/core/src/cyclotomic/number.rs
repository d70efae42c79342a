use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::cyclotomic_dense;
use crate::arith::{lcm, totient};

/// An element of `Q(zeta_e)`, stored as its residue modulo `Phi_e` in the
/// power basis `1, zeta, ..., zeta^{phi(e) - 1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(order: u64) -> Self {
        assert!(order > 0);
        Self {
            order,
            coeffs: vec![BigRational::zero(); totient(order) as usize],
        }
    }

    pub fn from_rational(order: u64, r: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_integer(order: u64, n: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn one(order: u64) -> Self {
        Self::from_integer(order, 1)
    }

    /// `zeta_order^k`.
    pub fn zeta_power(order: u64, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::from_integer(1.into());
        Self::reduce(order, raw)
    }

    /// Builds an element from an arbitrary-length power-basis vector.
    pub fn from_power_basis(order: u64, raw: Vec<BigRational>) -> Self {
        Self::reduce(order, raw)
    }

    fn reduce(order: u64, mut raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_dense(order);
        let deg = phi.len() - 1;
        for k in (deg..raw.len()).rev() {
            let c = std::mem::take(&mut raw[k]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(deg) {
                if !pj.is_zero() {
                    raw[k - deg + j] -= &c * BigRational::from_integer(pj.clone());
                }
            }
        }
        raw.resize(deg, BigRational::zero());
        Self { order, coeffs: raw }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Embeds into `Q(zeta_target)`; `order` must divide `target`.
    pub fn lift(&self, target: u64) -> Self {
        assert_eq!(target % self.order, 0, "cannot lift order {} to {}", self.order, target);
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut raw = vec![BigRational::zero(); step * self.coeffs.len().max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[k * step] = c.clone();
        }
        Self::reduce(target, raw)
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conjugate(&self) -> Self {
        let e = self.order as usize;
        let mut raw = vec![BigRational::zero(); e.max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[(e - k) % e] += c;
        }
        Self::reduce(self.order, raw)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.order as f64;
            let c = c.to_f64().unwrap_or(f64::NAN);
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = lcm(a.order, b.order);
        (a.lift(l), b.lift(l))
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})[", self.order)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::common(self, rhs);
        CyclotomicNumber {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::common(self, rhs);
        let n = a.coeffs.len();
        let mut raw = vec![BigRational::zero(); (2 * n).saturating_sub(1).max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        CyclotomicNumber::reduce(a.order, raw)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// The root of unity `zeta_n^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    pub k: i64,
    pub n: u64,
}

impl RootOfUnity {
    pub fn new(k: i64, n: u64) -> Self {
        assert!(n > 0);
        Self { k, n }
    }

    fn exponent_in(&self, l: u64) -> i64 {
        (self.k * (l / self.n) as i64).rem_euclid(l as i64)
    }
}

/// Which pairing explains an equality `xi1 + xi2 = xi3 + xi4` of roots of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FourRootsCase {
    SumZero,
    Match13,
    Match14,
    NotEqual,
}

/// Decides `xi1 + xi2 = xi3 + xi4` exactly in `Q(zeta_lcm)` and reports the
/// cancellation pattern.
pub fn four_roots_cancellation(roots: [RootOfUnity; 4]) -> FourRootsCase {
    let l = roots.iter().fold(1, |acc, r| lcm(acc, r.n));
    let e: Vec<i64> = roots.iter().map(|r| r.exponent_in(l)).collect();
    let z = |k: i64| CyclotomicNumber::zeta_power(l, k);
    let lhs = &z(e[0]) + &z(e[1]);
    let rhs = &z(e[2]) + &z(e[3]);
    if !(&lhs - &rhs).is_zero() {
        return FourRootsCase::NotEqual;
    }
    if lhs.is_zero() {
        FourRootsCase::SumZero
    } else if e[0] == e[2] {
        FourRootsCase::Match13
    } else if e[0] == e[3] {
        FourRootsCase::Match14
    } else {
        // Unreachable when the four-roots lemma holds.
        FourRootsCase::NotEqual
    }
}
