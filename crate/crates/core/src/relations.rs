//! Integer relations among the logarithms `A_x = ln|zeta_m^x - 1|`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::arith::{divisors, factorize, gcd, rat, rat_int, totient, units, Rational};
use crate::characters::{enumerate_characters, DirichletCharacter};
use crate::cyclotomic::{
    abs_equal_on_all_roots, cyclic_conj, cyclic_mul, reduce_mod_phi, AbsRationalProfile, CyclotomicNumber,
    LOG_PREFILTER_TOL,
};
use crate::error::{Error, Result};
use crate::laurent::LaurentIntPoly;

/// `R = sum C_x A_x` over `x` in `1..m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnnolaRelation {
    modulus: u64,
    coeffs: BTreeMap<u64, i64>,
}

impl EnnolaRelation {
    pub fn new(modulus: u64, entries: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        if modulus < 3 {
            return Err(Error::ModulusTooSmall { min: 3, got: modulus });
        }
        let mut coeffs = BTreeMap::new();
        for (x, c) in entries {
            if x == 0 || x >= modulus {
                return Err(Error::IndexOutOfRange(x, modulus));
            }
            *coeffs.entry(x).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(Self { modulus, coeffs })
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Self::new(modulus, [])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, x: u64) -> i64 {
        self.coeffs.get(&(x % self.modulus)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Merges `A_x` with `A_{m-x}`, which are always equal, onto the smaller
    /// index.
    pub fn folded(&self) -> Self {
        let m = self.modulus;
        let entries = self.coeffs.iter().map(|(&x, &c)| (x.min(m - x), c));
        Self::new(m, entries).expect("folding keeps indices in range")
    }

    /// Equal as relations once the trivial identities `A_x = A_{m-x}` are used.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.folded() == other.folded()
    }

    /// `sum C_x ln|zeta_m^x - 1|` in double precision.
    pub fn shadow(&self) -> f64 {
        let m = self.modulus as f64;
        self.coeffs
            .iter()
            .map(|(&x, &c)| {
                let t = std::f64::consts::PI * x as f64 / m;
                c as f64 * (2.0 * t.sin()).abs().ln()
            })
            .sum()
    }

    /// Exact test of `R = 0`: `prod (zeta^x - 1)^{C_x}` has absolute value 1,
    /// decided by a norm congruence modulo `Phi_m`.
    pub fn vanishes_exactly(&self) -> bool {
        let m = self.modulus;
        let n = m as usize;
        let mut pos = unit_cyclic(n);
        let mut neg = unit_cyclic(n);
        for (&x, &c) in &self.coeffs {
            let f = LaurentIntPoly::x_pow_minus_one(x as i64).reduce_cyclic(m);
            let norm = cyclic_mul(&f, &cyclic_conj(&f), n);
            let target = if c > 0 { &mut pos } else { &mut neg };
            for _ in 0..c.unsigned_abs() {
                *target = reduce_cyclic_mod_phi(&cyclic_mul(target, &norm, n), m);
            }
        }
        let diff: Vec<BigInt> = pos.iter().zip(&neg).map(|(a, b)| a - b).collect();
        reduce_mod_phi(&diff, m).is_empty()
    }
}

fn unit_cyclic(n: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[0] = BigInt::one();
    v
}

/// Keeps intermediate products small: reduce mod `Phi_m` and pad back to a
/// cyclic vector of length `m` (valid since `Phi_m | x^m - 1`).
fn reduce_cyclic_mod_phi(v: &[BigInt], m: u64) -> Vec<BigInt> {
    let mut r = reduce_mod_phi(v, m);
    r.resize(m as usize, BigInt::zero());
    r
}

/// The relation obtained from the logarithm of the cyclotomic-unit form of
/// the torsion equation at `xi = zeta_m`:
/// `A_6 - A_2 - A_3 - A_r - (A_6k - A_2k - A_3k - A_{r'k})`.
///
/// Indices are reduced mod `m` and merged but not folded.
pub fn relation_from_surgery_pair(m: u64, r: i64, r_prime: i64, k: i64) -> Result<EnnolaRelation> {
    if m < 3 {
        return Err(Error::ModulusTooSmall { min: 3, got: m });
    }
    for v in [r, r_prime, k] {
        if gcd(v, m as i64) != 1 {
            return Err(Error::NotCoprime(v, m as i64));
        }
    }
    let terms = [
        (6, 1),
        (2, -1),
        (3, -1),
        (r, -1),
        (6 * k, -1),
        (2 * k, 1),
        (3 * k, 1),
        (r_prime * k, 1),
    ];
    let mut entries = Vec::with_capacity(terms.len());
    for (idx, c) in terms {
        let x = idx.rem_euclid(m as i64) as u64;
        if x == 0 {
            return Err(Error::IndexVanishes(idx, m));
        }
        entries.push((x, c));
    }
    EnnolaRelation::new(m, entries)
}

fn check_chain(f: u64, d: u64, m: u64) -> Result<()> {
    if d == 0 || !d.is_multiple_of(f) || !m.is_multiple_of(d) {
        return Err(Error::BadDivisorChain { f, d, m });
    }
    Ok(())
}

/// `T(chi, d, R) = sum_{x < d, (x, d) = 1} chi(x) C_{(m/d) x}`.
///
/// `chi` is evaluated through the primitive character that induces it, so
/// `chi(x)` is defined for every `x` prime to `d`.
pub fn t_sum(chi: &DirichletCharacter, d: u64, rel: &EnnolaRelation) -> Result<CyclotomicNumber> {
    let m = rel.modulus;
    if chi.modulus() != m {
        return Err(Error::ModulusMismatch(chi.modulus(), m));
    }
    let prim = chi.primitive();
    check_chain(prim.modulus(), d, m)?;
    Ok(t_sum_primitive(&prim, d, rel))
}

fn t_sum_primitive(prim: &DirichletCharacter, d: u64, rel: &EnnolaRelation) -> CyclotomicNumber {
    let m = rel.modulus;
    let e = prim.value_order();
    let mut exps: HashMap<u64, i64> = HashMap::new();
    for x in 1..d {
        if gcd(x as i64, d as i64) != 1 {
            continue;
        }
        let c = rel.coeff(m / d * x);
        if c == 0 {
            continue;
        }
        let k = prim.value_exponent(x as i64).expect("x is prime to the conductor");
        *exps.entry(k).or_insert(0) += c;
    }
    let mut out = CyclotomicNumber::zero(e);
    for (k, c) in exps {
        if c != 0 {
            out = &out + &CyclotomicNumber::zeta_power(e, k as i64).scale(&rat_int(c));
        }
    }
    out
}

/// `Y(chi, R) = sum_{f | d | m} phi(d)^{-1} prod_{p | d} (1 - conj(chi)(p)) T(chi, d, R)`.
pub fn y_value(chi: &DirichletCharacter, rel: &EnnolaRelation) -> Result<CyclotomicNumber> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    if chi.modulus() != rel.modulus {
        return Err(Error::ModulusMismatch(chi.modulus(), rel.modulus));
    }
    Ok(y_value_primitive(&chi.primitive(), rel))
}

fn y_value_primitive(prim: &DirichletCharacter, rel: &EnnolaRelation) -> CyclotomicNumber {
    let m = rel.modulus;
    let f = prim.modulus();
    let e = prim.value_order();
    let bar = prim.conjugate();
    let one = CyclotomicNumber::one(e);
    let mut total = CyclotomicNumber::zero(e);
    for d in divisors(m).into_iter().filter(|d| d % f == 0) {
        let t = t_sum_primitive(prim, d, rel);
        if t.is_zero() {
            continue;
        }
        let weight = factorize(d)
            .into_iter()
            .fold(one.clone(), |acc, (p, _)| &acc * &(&one - &bar.value(p as i64)));
        total = &total + &(&weight * &t).scale(&rat(1, totient(d) as i64));
    }
    total
}

/// `Y_p(R) = sum_{x < p^g} gcd(x, p^g) C_{(m / p^g) x}` where `p^g || m`.
pub fn y_p_value(p: u64, rel: &EnnolaRelation) -> Result<Rational> {
    let m = rel.modulus;
    let g = factorize(m)
        .into_iter()
        .find(|&(q, _)| q == p)
        .map(|(_, g)| g)
        .ok_or(Error::NotPrimeDivisor(p, m))?;
    let pg = p.pow(g);
    let s: i64 = (1..pg)
        .map(|x| gcd(x as i64, pg as i64) * rel.coeff(m / pg * x))
        .sum();
    Ok(rat_int(s))
}

/// Ennola's criterion with the even characters mod `m` prepared once.
#[derive(Debug, Clone)]
pub struct EnnolaCriterion {
    modulus: u64,
    primitives: Vec<DirichletCharacter>,
    primes: Vec<u64>,
}

impl EnnolaCriterion {
    pub fn new(m: u64) -> Result<Self> {
        if m < 3 {
            return Err(Error::ModulusTooSmall { min: 3, got: m });
        }
        let primitives = enumerate_characters(m)
            .into_iter()
            .filter(|c| c.is_even() && !c.is_principal())
            .map(|c| c.primitive())
            .collect();
        let primes = factorize(m).into_iter().map(|(p, _)| p).collect();
        Ok(Self { modulus: m, primitives, primes })
    }

    pub fn is_zero(&self, rel: &EnnolaRelation) -> Result<bool> {
        if rel.modulus != self.modulus {
            return Err(Error::ModulusMismatch(rel.modulus, self.modulus));
        }
        for &p in &self.primes {
            if !y_p_value(p, rel)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(self.primitives.iter().all(|prim| y_value_primitive(prim, rel).is_zero()))
    }
}

/// `R = 0` iff `Y(chi, R) = 0` for all even nonprincipal `chi` and
/// `Y_p(R) = 0` for all primes `p | m`.
pub fn ennola_is_zero(rel: &EnnolaRelation) -> Result<bool> {
    EnnolaCriterion::new(rel.modulus)?.is_zero(rel)
}

/// A random relation closed under `x -> m - x`, used by property checks.
pub fn random_symmetric_relation(m: u64, max_terms: usize, max_coeff: i64, seed: u64) -> EnnolaRelation {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let terms = rng.gen_range(0..=max_terms);
    let mut entries = Vec::new();
    for _ in 0..terms {
        let x = rng.gen_range(1..m);
        let c = rng.gen_range(-max_coeff..=max_coeff);
        entries.push((x, c));
        entries.push((m - x, c));
    }
    EnnolaRelation::new(m, entries).expect("indices in range")
}

/// Log-absolute values of `xi^j - 1` at `xi = zeta_m^t`, `t = 1..m/2`.
fn log_vector(j: u64, m: u64) -> Vec<f64> {
    (1..=m / 2)
        .map(|t| {
            let a = std::f64::consts::PI * (j * t % m) as f64 / m as f64;
            (2.0 * a.sin()).abs().ln()
        })
        .collect()
}

/// Exact Franz condition for a symmetric exponent vector given on
/// representatives `j` of the `+-` classes of units.
fn franz_product_is_one(m: u64, reps: &[u64], b: &[i64]) -> bool {
    let n_roots: Vec<u64> = divisors(m).into_iter().skip(1).collect();
    n_roots.into_iter().all(|d| {
        let n = d as usize;
        let mut pos = unit_cyclic(n);
        let mut neg = unit_cyclic(n);
        for (&j, &c) in reps.iter().zip(b) {
            if c == 0 {
                continue;
            }
            let f = LaurentIntPoly::x_pow_minus_one(j as i64).reduce_cyclic(d);
            let norm = cyclic_mul(&f, &cyclic_conj(&f), n);
            let target = if c > 0 { &mut pos } else { &mut neg };
            for _ in 0..c.unsigned_abs() {
                *target = reduce_cyclic_mod_phi(&cyclic_mul(target, &norm, n), d);
            }
        }
        let diff: Vec<BigInt> = pos.iter().zip(&neg).map(|(a, b)| a - b).collect();
        reduce_mod_phi(&diff, d).is_empty()
    })
}

struct HalfEntry {
    proj: f64,
    sum: i64,
    logs: Vec<f64>,
    coeffs: Vec<i64>,
}

fn enumerate_half(vectors: &[Vec<f64>], bound: i64, weights: &[f64]) -> Vec<HalfEntry> {
    let len = vectors.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut coeffs = vec![-bound; vectors.len()];
    loop {
        let mut logs = vec![0.0; len];
        for (v, &c) in vectors.iter().zip(&coeffs) {
            for (l, x) in logs.iter_mut().zip(v) {
                *l += c as f64 * x;
            }
        }
        let proj = logs.iter().zip(weights).map(|(a, w)| a * w).sum();
        out.push(HalfEntry { proj, sum: coeffs.iter().sum(), logs, coeffs: coeffs.clone() });
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return out;
            }
            coeffs[i] += 1;
            if coeffs[i] <= bound {
                break;
            }
            coeffs[i] = -bound;
            i += 1;
        }
    }
}

/// Exhaustively confirms the Franz independence lemma for symmetric,
/// sum-zero exponent vectors with entries in `[-bound, bound]`.
///
/// Meet in the middle: the `+-` classes are split in two halves, one half is
/// indexed by a random projection of its log-vector, and candidate matches
/// are checked in floats and then exactly.
pub fn franz_verify(m: u64, bound: u32) -> Result<bool> {
    if m < 3 {
        return Err(Error::ModulusTooSmall { min: 3, got: m });
    }
    let reps: Vec<u64> = units(m).into_iter().filter(|&j| 2 * j < m).collect();
    let vectors: Vec<Vec<f64>> = reps.iter().map(|&j| log_vector(j, m)).collect();
    let mut rng = rand::rngs::StdRng::seed_from_u64(m);
    let weights: Vec<f64> = (0..m / 2).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let split = reps.len() / 2;
    let bound = bound as i64;
    let left = enumerate_half(&vectors[..split], bound, &weights);
    let mut right = enumerate_half(&vectors[split..], bound, &weights);
    right.sort_by(|a, b| a.proj.total_cmp(&b.proj));
    let scale = 1.0 + vectors.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs())) * bound as f64 * reps.len() as f64;
    let tol = LOG_PREFILTER_TOL * scale;

    let counterexample = left.par_iter().any(|l| {
        let target = -l.proj;
        let start = right.partition_point(|r| r.proj < target - tol);
        right[start..]
            .iter()
            .take_while(|r| r.proj <= target + tol)
            .filter(|r| r.sum + l.sum == 0)
            .filter(|r| l.logs.iter().zip(&r.logs).all(|(a, b)| (a + b).abs() <= tol))
            .any(|r| {
                let b: Vec<i64> = l.coeffs.iter().chain(&r.coeffs).copied().collect();
                b.iter().any(|&c| c != 0) && franz_product_is_one(m, &reps, &b)
            })
    });
    Ok(!counterexample)
}

/// Left and right sides of the torsion equation with `r`, `r'` and `k`.
fn theorem31_sides(m: u64, r: u64, r_prime: u64, k: u64) -> (AbsRationalProfile, AbsRationalProfile) {
    let (r, rp, k) = (r as i64, r_prime as i64, k as i64);
    let delta = LaurentIntPoly::from_terms([(1, 1), (0, -1), (-1, 1)]);
    let lhs = AbsRationalProfile::new(
        delta.clone(),
        &LaurentIntPoly::x_pow_minus_one(1) * &LaurentIntPoly::x_pow_minus_one(r),
        m,
    )
    .expect("units give nonvanishing denominators");
    let rhs = AbsRationalProfile::new(
        delta.substitute_power(k),
        &LaurentIntPoly::x_pow_minus_one(k) * &LaurentIntPoly::x_pow_minus_one(rp * k),
        m,
    )
    .expect("units give nonvanishing denominators");
    (lhs, rhs)
}

/// `ln|xi - 1 + xi^-1| - ln|xi - 1| - ln|xi^r - 1|` at `xi = zeta_m^t`, with
/// `None` where the numerator vanishes.
fn theorem31_log_profile(m: u64, r: u64, k: u64, t: u64) -> Option<f64> {
    let ang = |e: u64| 2.0 * std::f64::consts::PI * ((e % m) as f64) / m as f64;
    let kt = k * t % m;
    let num = (2.0 * ang(kt).cos() - 1.0).abs();
    if num < 1e-9 {
        return None;
    }
    let chord = |e: u64| (2.0 * (ang(e) / 2.0).sin()).abs().ln();
    Some(num.ln() - chord(kt) - chord(r * kt))
}

fn theorem31_prefilter(m: u64, lhs: &[Option<f64>], r_prime: u64, k: u64) -> bool {
    (1..m).all(|t| {
        let rhs = theorem31_log_profile(m, r_prime, k, t);
        match (lhs[(t - 1) as usize], rhs) {
            (None, None) => true,
            (Some(a), Some(b)) => (a - b).abs() <= LOG_PREFILTER_TOL,
            _ => false,
        }
    })
}

/// Does `(r, r', k)` satisfy the torsion equation at every `m`-th root of
/// unity other than 1? Exact.
pub fn theorem31_holds(m: u64, r: u64, r_prime: u64, k: u64) -> Result<bool> {
    for v in [r, r_prime, k] {
        if gcd(v as i64, m as i64) != 1 {
            return Err(Error::NotCoprime(v as i64, m as i64));
        }
    }
    let (lhs, rhs) = theorem31_sides(m, r, r_prime, k);
    abs_equal_on_all_roots(&lhs, &rhs, m)
}

/// All triples `(r, r', k)` of units mod `m` solving the torsion equation,
/// sorted.
pub fn theorem31_bruteforce(m: u64) -> Result<Vec<(u64, u64, u64)>> {
    if m < 3 {
        return Err(Error::ModulusTooSmall { min: 3, got: m });
    }
    let us = units(m);
    let reps: Vec<u64> = us.iter().copied().filter(|&r| 2 * r < m).collect();
    let mut grid = Vec::with_capacity(reps.len() * us.len() * us.len());
    for &r in &reps {
        for &rp in &us {
            for &k in &us {
                grid.push((r, rp, k));
            }
        }
    }
    let lhs_logs: HashMap<u64, Vec<Option<f64>>> = reps
        .iter()
        .map(|&r| (r, (1..m).map(|t| theorem31_log_profile(m, r, 1, t)).collect()))
        .collect();
    let found: Vec<(u64, u64, u64)> = grid
        .into_par_iter()
        .filter(|&(r, rp, k)| theorem31_prefilter(m, &lhs_logs[&r], rp, k))
        .map(|(r, rp, k)| theorem31_holds(m, r, rp, k).map(|ok| ok.then_some((r, rp, k))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut all = BTreeSet::new();
    for (r, rp, k) in found {
        for r in [r, m - r] {
            all.insert((r, rp, k));
        }
    }
    Ok(all.into_iter().collect())
}

/// The pairs `(r, r')` admitting some `k`.
pub fn theorem31_pairs(m: u64) -> Result<BTreeSet<(u64, u64)>> {
    Ok(theorem31_bruteforce(m)?.into_iter().map(|(r, rp, _)| (r, rp)).collect())
}

/// The three-case classification of solutions.
pub fn theorem31_predicted(m: u64, r: u64, r_prime: u64) -> bool {
    let r = r % m;
    let rp = r_prime % m;
    if r == rp || r + rp == m {
        return true;
    }
    let classes = |a: u64, b: u64| -> BTreeSet<u64> { [a % m, m - a % m, b % m, m - b % m].into_iter().collect() };
    let pair = classes(r, rp);
    if m == 12 && pair == classes(1, 5) {
        return true;
    }
    if m % 18 == 9 {
        let e = (m - 9) / 18;
        if pair == classes(6 * e + 1, 6 * e + 5) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(m: u64, e: &[(u64, i64)]) -> EnnolaRelation {
        EnnolaRelation::new(m, e.iter().copied()).unwrap()
    }

    #[test]
    fn surgery_pair_relation() {
        let r = relation_from_surgery_pair(9, 1, 5, 5).unwrap();
        assert_eq!(r, rel(9, &[(6, 2), (2, -1), (3, -2), (7, 1)]));
        assert!(r.equivalent(&rel(9, &[(6, 2), (3, -2)])));
        assert!(r.folded().is_empty());
        assert!(relation_from_surgery_pair(7, 1, 1, 1).unwrap().is_empty());
        assert_eq!(relation_from_surgery_pair(6, 1, 1, 1), Err(Error::IndexVanishes(6, 6)));
        assert_eq!(relation_from_surgery_pair(9, 3, 1, 1), Err(Error::NotCoprime(3, 9)));
    }

    #[test]
    fn relation_validation() {
        assert_eq!(EnnolaRelation::new(9, [(0, 1)]), Err(Error::IndexOutOfRange(0, 9)));
        assert_eq!(EnnolaRelation::new(9, [(9, 1)]), Err(Error::IndexOutOfRange(9, 9)));
        assert!(EnnolaRelation::new(2, []).is_err());
    }

    #[test]
    fn ennola_examples() {
        assert!(ennola_is_zero(&rel(9, &[(2, 1), (7, -1)])).unwrap());
        assert!(!ennola_is_zero(&rel(9, &[(1, 1)])).unwrap());
        let r = relation_from_surgery_pair(9, 1, 5, 5).unwrap();
        assert!(ennola_is_zero(&r).unwrap());
        let two = rel(9, &[(6, 2), (3, -2)]);
        for chi in enumerate_characters(9).into_iter().filter(|c| c.is_even() && !c.is_principal()) {
            assert!(y_value(&chi, &two).unwrap().is_zero());
            assert!(t_sum(&chi, 9, &two).unwrap().is_zero());
        }
        assert!(y_p_value(3, &two).unwrap().is_zero());
        assert_eq!(y_p_value(2, &two), Err(Error::NotPrimeDivisor(2, 9)));
    }

    #[test]
    fn t_sum_chain_and_unit_relation() {
        let chars = enumerate_characters(9);
        let chi = chars.iter().find(|c| c.conductor() == 9).unwrap();
        assert_eq!(
            t_sum(chi, 3, &rel(9, &[(1, 1)])).unwrap_err(),
            Error::BadDivisorChain { f: 9, d: 3, m: 9 }
        );
        let t = t_sum(chi, 9, &rel(9, &[(1, 1)])).unwrap();
        assert_eq!(t, CyclotomicNumber::one(chi.value_order()));
        assert!(t_sum(chi, 9, &EnnolaRelation::zero(9).unwrap()).unwrap().is_zero());
        assert_eq!(y_value(&chars[0], &rel(9, &[(1, 1)])), Err(Error::PrincipalCharacter));
    }

    #[test]
    fn tautological_relations_vanish() {
        for m in [5u64, 9, 12, 16, 20] {
            for x in 1..m {
                let r = rel(m, &[(x, 1), (m - x, -1)]);
                assert!(ennola_is_zero(&r).unwrap(), "m = {m}, x = {x}");
                assert!(r.vanishes_exactly());
            }
        }
    }

    #[test]
    fn exact_vanishing_matches_shadow() {
        for m in [9u64, 12, 15] {
            for seed in 0..40 {
                let r = random_symmetric_relation(m, 3, 2, seed);
                let exact = r.vanishes_exactly();
                assert_eq!(exact, r.shadow().abs() < 1e-9, "m = {m}, {r:?}");
            }
        }
    }

    #[test]
    fn franz_small() {
        assert!(franz_verify(5, 2).unwrap());
        assert!(franz_verify(12, 2).unwrap());
        assert!(franz_product_is_one(12, &[1, 5], &[0, 0]));
    }

    #[test]
    fn theorem31_small_moduli() {
        for m in [7u64, 9, 12] {
            let pairs = theorem31_pairs(m).unwrap();
            for r in units(m) {
                for rp in units(m) {
                    assert_eq!(pairs.contains(&(r, rp)), theorem31_predicted(m, r, rp), "m={m} r={r} r'={rp}");
                }
            }
        }
        assert!(theorem31_pairs(12).unwrap().contains(&(1, 5)));
        assert!(theorem31_pairs(9).unwrap().contains(&(1, 5)));
    }
}
