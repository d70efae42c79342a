//! Integer Laurent polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentIntPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentIntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// `x^exp - 1`.
    pub fn x_pow_minus_one(exp: i64) -> Self {
        Self::from_terms([(exp, 1), (0, -1)])
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Builds `sum coeffs[k] x^k` from a dense low-to-high coefficient list.
    pub fn from_dense(coeffs: &[BigInt]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, c)| (k as i64, c.clone())))
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Substitutes `x -> x^k`. `k = -1` is the conjugate at roots of unity.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn conjugate(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Image in `Z[x]/(x^n - 1)` as a dense coefficient vector of length `n`.
    pub fn reduce_cyclic(&self, n: u64) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n as usize];
        for (e, c) in &self.terms {
            out[e.rem_euclid(n as i64) as usize] += c;
        }
        out
    }

    /// Value at `x = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Second derivative at `x = 1`: `sum c_n n (n - 1)`.
    pub fn second_derivative_at_one(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| c * BigInt::from(*e) * BigInt::from(e - 1))
            .sum()
    }

    /// Evaluates at `exp(2 pi i j / m)`, returning `(re, im)`.
    pub fn eval_root_f64(&self, j: i64, m: u64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.terms {
            let k = (e * j).rem_euclid(m as i64) as f64;
            let theta = 2.0 * std::f64::consts::PI * k / m as f64;
            let c = c.to_f64().unwrap_or(f64::NAN);
            re += c * theta.cos();
            im += c * theta.sin();
        }
        (re, im)
    }

    pub fn abs_at_root_f64(&self, j: i64, m: u64) -> f64 {
        let (re, im) = self.eval_root_f64(j, m);
        re.hypot(im)
    }
}

impl fmt::Debug for LaurentIntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentIntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (e, true) => write!(f, "x^{e}")?,
                (e, false) => write!(f, "{a}x^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentIntPoly {
    type Output = LaurentIntPoly;
    fn add(self, rhs: &LaurentIntPoly) -> LaurentIntPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentIntPoly {
    type Output = LaurentIntPoly;
    fn sub(self, rhs: &LaurentIntPoly) -> LaurentIntPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentIntPoly {
    type Output = LaurentIntPoly;
    fn mul(self, rhs: &LaurentIntPoly) -> LaurentIntPoly {
        let mut out = LaurentIntPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentIntPoly {
    type Output = LaurentIntPoly;
    fn neg(self) -> LaurentIntPoly {
        LaurentIntPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, -c.clone())))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentIntPoly {
            type Output = LaurentIntPoly;
            fn $m(self, rhs: LaurentIntPoly) -> LaurentIntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for LaurentIntPoly {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(LaurentIntPoly::one(), |acc, p| &acc * &p)
    }
}

/// Dense polynomial helpers over `Z` (low-to-high coefficients).
pub(crate) mod dense {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    pub fn trim(p: &mut Vec<BigInt>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    /// Remainder of `a` modulo a monic polynomial `m`.
    pub fn rem_monic(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
        let (_, r) = divrem_monic(a, m);
        r
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divrem_monic(a: &[BigInt], m: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        debug_assert!(m.last().is_some_and(One::is_one));
        let dm = m.len() - 1;
        let mut r: Vec<BigInt> = a.to_vec();
        trim(&mut r);
        if r.len() <= dm {
            return (Vec::new(), r);
        }
        let mut q = vec![BigInt::zero(); r.len() - dm];
        for k in (dm..r.len()).rev() {
            let c = std::mem::take(&mut r[k]);
            if c.is_zero() {
                continue;
            }
            for (j, mj) in m.iter().enumerate().take(dm) {
                if !mj.is_zero() {
                    r[k - dm + j] -= &c * mj;
                }
            }
            q[k - dm] = c;
        }
        r.truncate(dm);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }
}
