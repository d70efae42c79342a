//! Exact arithmetic in cyclotomic fields and absolute-value comparisons of
//! rational functions at roots of unity.

mod number;
mod profile;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::divisors;
use crate::laurent::{dense, LaurentIntPoly};

pub use number::{four_roots_cancellation, CyclotomicNumber, FourRootsCase, RootOfUnity};
pub use profile::{abs_equal_on_all_roots, abs_evaluate_float, AbsRationalProfile, LOG_PREFILTER_TOL};

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> LaurentIntPoly {
    LaurentIntPoly::from_dense(&cyclotomic_dense(n))
}

/// Dense coefficients of `Phi_n`, memoized.
pub(crate) fn cyclotomic_dense(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_dense(d);
        let (q, r) = dense::divrem_monic(&num, &phi_d);
        debug_assert!(r.is_empty());
        num = q;
    }
    let out = Arc::new(num);
    cache.lock().unwrap().insert(n, Arc::clone(&out));
    out
}

/// Reduces a cyclic residue (exponents already taken mod some multiple of
/// `d`) modulo `Phi_d`.
pub(crate) fn reduce_mod_phi(p: &[BigInt], d: u64) -> Vec<BigInt> {
    dense::rem_monic(p, &cyclotomic_dense(d))
}

/// Multiplication in `Z[x]/(x^n - 1)`.
pub(crate) fn cyclic_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[(i + j) % n] += x * y;
        }
    }
    out
}

/// `x -> x^{-1}` in `Z[x]/(x^n - 1)`.
pub(crate) fn cyclic_conj(a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    (0..n).map(|k| a[(n - k) % n].clone()).collect()
}
