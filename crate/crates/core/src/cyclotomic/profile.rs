use num_traits::Zero;

use super::{cyclic_conj, cyclic_mul, reduce_mod_phi};
use crate::arith::{divisors, gcd};
use crate::error::{Error, Result};
use crate::laurent::LaurentIntPoly;

/// Log-scale tolerance used by float prefilters before an exact check.
pub const LOG_PREFILTER_TOL: f64 = 1e-6;

/// `x -> |N(x) / D(x)|` on the `m`-th roots of unity other than 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsRationalProfile {
    numerator: LaurentIntPoly,
    denominator: LaurentIntPoly,
    modulus: u64,
}

fn vanishes_mod_phi(p: &LaurentIntPoly, d: u64) -> bool {
    reduce_mod_phi(&p.reduce_cyclic(d), d).is_empty()
}

impl AbsRationalProfile {
    /// Rejects a denominator that vanishes on some primitive `d`-th roots with
    /// `d | m`, `d > 1`.
    pub fn new(numerator: LaurentIntPoly, denominator: LaurentIntPoly, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall { min: 2, got: modulus });
        }
        if denominator.is_zero() {
            return Err(Error::DenominatorVanishes(modulus));
        }
        for d in divisors(modulus).into_iter().skip(1) {
            if vanishes_mod_phi(&denominator, d) {
                return Err(Error::DenominatorVanishes(d));
            }
        }
        Ok(Self { numerator, denominator, modulus })
    }

    pub fn polynomial(numerator: LaurentIntPoly, modulus: u64) -> Result<Self> {
        Self::new(numerator, LaurentIntPoly::one(), modulus)
    }

    pub fn numerator(&self) -> &LaurentIntPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentIntPoly {
        &self.denominator
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The profile of `x -> f(x^k)`.
    pub fn substitute_power(&self, k: i64) -> Result<Self> {
        Self::new(
            self.numerator.substitute_power(k),
            self.denominator.substitute_power(k),
            self.modulus,
        )
    }
}

/// Exact test of `|lhs(xi)| = |rhs(xi)|` for every `m`-th root `xi != 1`.
///
/// Squared absolute values are compared per Galois orbit: for each `d | m`
/// with `d > 1`, `N_l conj(N_l) D_r conj(D_r) - N_r conj(N_r) D_l conj(D_l)`
/// must vanish modulo `Phi_d`.
pub fn abs_equal_on_all_roots(lhs: &AbsRationalProfile, rhs: &AbsRationalProfile, m: u64) -> Result<bool> {
    for p in [lhs, rhs] {
        if p.modulus != m {
            return Err(Error::ModulusMismatch(p.modulus, m));
        }
    }
    if lhs == rhs {
        return Ok(true);
    }
    for d in divisors(m).into_iter().skip(1) {
        let n = d as usize;
        let norm = |p: &LaurentIntPoly| {
            let c = p.reduce_cyclic(d);
            cyclic_mul(&c, &cyclic_conj(&c), n)
        };
        let left = cyclic_mul(&norm(&lhs.numerator), &norm(&rhs.denominator), n);
        let right = cyclic_mul(&norm(&rhs.numerator), &norm(&lhs.denominator), n);
        let diff: Vec<_> = left.iter().zip(&right).map(|(a, b)| a - b).collect();
        if diff.iter().all(Zero::is_zero) {
            continue;
        }
        if !reduce_mod_phi(&diff, d).is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|profile(zeta_m^j)|` in double precision. Only for pruning.
pub fn abs_evaluate_float(profile: &AbsRationalProfile, root_exponent: i64) -> Result<f64> {
    let m = profile.modulus;
    let order = m / gcd(root_exponent, m as i64) as u64;
    if vanishes_mod_phi(&profile.denominator, order) {
        return Err(Error::DivisionByZero(root_exponent));
    }
    let num = profile.numerator.abs_at_root_f64(root_exponent, m);
    let den = profile.denominator.abs_at_root_f64(root_exponent, m);
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentIntPoly {
        LaurentIntPoly::from_terms(terms.iter().copied())
    }

    fn xm1(k: i64) -> LaurentIntPoly {
        LaurentIntPoly::x_pow_minus_one(k)
    }

    fn side(m: u64, r: i64, k: i64) -> AbsRationalProfile {
        // |(xi^r - 1)^2 (xi^k - 1 + xi^-k)| / |xi^k - 1|^2 style profile used
        // for cyclotomic-unit relations
        let num = &(&xm1(r) * &xm1(r)) * &p(&[(k, 1), (0, -1), (-k, 1)]);
        AbsRationalProfile::new(num, LaurentIntPoly::one(), m).unwrap()
    }

    #[test]
    fn float_examples() {
        let a = AbsRationalProfile::new(xm1(1), xm1(1), 5).unwrap();
        assert!((abs_evaluate_float(&a, 1).unwrap() - 1.0).abs() < 1e-12);
        let b = AbsRationalProfile::polynomial(xm1(1), 2).unwrap();
        assert!((abs_evaluate_float(&b, 1).unwrap() - 2.0).abs() < 1e-12);
        let c = AbsRationalProfile::polynomial(p(&[(1, 1), (0, -1), (-1, 1)]), 6).unwrap();
        assert!(abs_evaluate_float(&c, 1).unwrap() < 1e-12);
        assert_eq!(abs_evaluate_float(&a, 0), Err(Error::DivisionByZero(0)));
    }

    #[test]
    fn denominator_checks() {
        assert_eq!(
            AbsRationalProfile::new(LaurentIntPoly::one(), xm1(3), 9).unwrap_err(),
            Error::DenominatorVanishes(3)
        );
        assert!(AbsRationalProfile::new(LaurentIntPoly::one(), xm1(2), 9).is_ok());
        assert!(AbsRationalProfile::new(LaurentIntPoly::one(), LaurentIntPoly::zero(), 9).is_err());
    }

    #[test]
    fn conjugate_profile_matches() {
        let f = p(&[(3, 2), (1, -1), (-2, 5), (0, 7)]);
        let a = AbsRationalProfile::polynomial(f.clone(), 12).unwrap();
        let b = AbsRationalProfile::polynomial(f.conjugate(), 12).unwrap();
        assert!(abs_equal_on_all_roots(&a, &b, 12).unwrap());
        let c = AbsRationalProfile::polynomial(&f * &LaurentIntPoly::monomial(5, -1), 12).unwrap();
        assert!(abs_equal_on_all_roots(&a, &c, 12).unwrap());
    }

    #[test]
    fn distinguishes_simple_cases() {
        let a = side(7, 1, 1);
        let b = side(7, 2, 1);
        assert!(!abs_equal_on_all_roots(&a, &b, 7).unwrap());
        assert_eq!(
            abs_equal_on_all_roots(&a, &side(9, 1, 1), 7),
            Err(Error::ModulusMismatch(9, 7))
        );
    }
}
