//! Lens-space invariants: continued fractions, correction terms by recursion
//! and by plumbing, Dedekind sums and the Casson-Walker invariant.
//!
//! Orientation: `d_recursive(p, q, i)` is the correction term of the lens
//! space bounding the negative definite plumbing of `-p/q`, which is
//! `S^3_{-p/q}(U)`. Hence `d(S^3_{p/q}(U), i) = -d_recursive(p, q, i)`.
//!
//! Spin^c labels follow the surgery (mapping cone) labelling `i in Z/p`, in
//! which conjugation acts by `i -> q - 1 - i`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{gcd, mod_inverse, rat, rat_int, Rational};
use crate::error::{Error, Result};
use crate::laurent::LaurentIntPoly;

/// A surgery coefficient `p/q` in lowest terms with `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurgerySlope {
    p: i64,
    q: i64,
}

impl SurgerySlope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidSlope { p, q });
        }
        if p == 0 {
            return Err(Error::ZeroSlope);
        }
        if gcd(p, q) != 1 {
            return Err(Error::NotCoprime(p, q));
        }
        let s = q.signum();
        Ok(Self { p: p * s, q: q * s })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Order of `H_1`, the number of Spin^c structures.
    pub fn order(&self) -> u64 {
        self.p.unsigned_abs()
    }

    pub fn negate(&self) -> Self {
        Self { p: -self.p, q: self.q }
    }

    pub fn to_rational(&self) -> Rational {
        rat(self.p, self.q)
    }
}

impl std::fmt::Display for SurgerySlope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// A linear plumbing with all weights at most `-2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlumbingGraph {
    weights: Vec<i64>,
}

impl PlumbingGraph {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if let Some(&w) = weights.iter().find(|&&w| w > -2) {
            return Err(Error::BadPlumbingWeight(w));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `[a_0, ..., a_n] = a_0 - 1 / (a_1 - 1 / (...))`, as `(num, den)` with
    /// `den > 0`. The empty chain evaluates to `-1/0` by convention, and is
    /// reported as `(-1, 0)`.
    pub fn value(&self) -> (i64, i64) {
        let (mut num, mut den) = (-1i64, 0i64);
        for &a in self.weights.iter().rev() {
            // a - den/num
            let (n, d) = (a * num - den, num);
            num = n;
            den = d;
        }
        if den < 0 {
            (-num, -den)
        } else {
            (num, den)
        }
    }

    /// `(p, q)` with value `-p/q`.
    pub fn lens_parameters(&self) -> (u64, u64) {
        if self.weights.is_empty() {
            return (1, 1);
        }
        let (n, d) = self.value();
        ((-n) as u64, d as u64)
    }
}

/// The expansion `-p/q = [a_0, ..., a_n]` with every `a_i <= -2`.
pub fn neg_continued_fraction(p: i64, q: i64) -> Result<PlumbingGraph> {
    if p < 1 || q < 1 {
        return Err(Error::InvalidSlope { p, q });
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let (mut a, mut b) = (p, q.rem_euclid(p));
    if p == 1 {
        return PlumbingGraph::new(Vec::new());
    }
    let mut weights = Vec::new();
    while b > 0 {
        let c = (a + b - 1) / b;
        weights.push(-c);
        (a, b) = (b, c * b - a);
    }
    PlumbingGraph::new(weights)
}

fn check_lens(p: i64, q: i64) -> Result<()> {
    if p < 1 || q < 1 {
        return Err(Error::InvalidSlope { p, q });
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    Ok(())
}

/// Correction term of `S^3_{-p/q}(U)` in class `i`, by the recursion
/// `d(p, q, i) = (pq - (2i + 1 - p - q)^2) / (4pq) - d(q, p mod q, i mod q)`.
pub fn d_recursive(p: i64, q: i64, i: i64) -> Result<Rational> {
    check_lens(p, q)?;
    if !(0..p).contains(&i) {
        return Err(Error::SpinCOutOfRange { i, p });
    }
    Ok(d_recursive_unchecked(p, q, i))
}

fn d_recursive_unchecked(p: i64, q: i64, i: i64) -> Rational {
    let mut total = rat_int(0);
    let (mut p, mut q, mut i, mut sign) = (p, q, i, 1i64);
    while p > 1 {
        let pq = BigInt::from(p) * BigInt::from(q);
        let t = BigInt::from(2 * i + 1 - p - q);
        let term = BigRational::new(&pq - &t * &t, pq * 4);
        total += term * rat_int(sign);
        (p, q, i, sign) = (q, p % q, i % q, -sign);
    }
    total
}

/// All correction terms of `S^3_{-p/q}(U)`, indexed by class.
pub fn d_recursive_all(p: i64, q: i64) -> Result<Vec<Rational>> {
    check_lens(p, q)?;
    Ok((0..p).map(|i| d_recursive_unchecked(p, q, i)).collect())
}

/// Self-conjugate labels: solutions of `2i = q - 1 (mod p)`.
pub fn spin_indices(p: i64, q: i64) -> Result<Vec<u64>> {
    if p == 0 {
        return Err(Error::ZeroSlope);
    }
    let n = p.abs();
    if gcd(n, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    Ok((0..n).filter(|&i| (2 * i - q + 1).rem_euclid(n) == 0).map(|i| i as u64).collect())
}

/// The unique spin label for odd `p`.
pub fn spin_index(p: i64, q: i64) -> Result<u64> {
    if p.rem_euclid(2) == 0 {
        return Err(Error::EvenOrder(p));
    }
    Ok(spin_indices(p, q)?[0])
}

/// Spin label in Rustamov's identification: `(p - 1)(1 - x)/2` with
/// `qx = -1 (mod p)`.
pub fn rustamov_spin_label(p: i64, q: i64) -> Result<u64> {
    if p.rem_euclid(2) == 0 {
        return Err(Error::EvenOrder(p));
    }
    let n = p.abs();
    if n == 1 {
        return Ok(0);
    }
    let x = mod_inverse(-q, n).ok_or(Error::NotCoprime(p, q))?;
    Ok(((n - 1) * (1 - x) / 2).rem_euclid(n) as u64)
}

/// Exact Gram data for a linear plumbing.
struct Gram {
    weights: Vec<i64>,
    p: i64,
    q: i64,
    /// `p Q^{-1}`, an integer matrix.
    scaled_inverse: Vec<Vec<i64>>,
}

impl Gram {
    fn new(graph: &PlumbingGraph) -> Self {
        let n = graph.len();
        let (p, q) = graph.lens_parameters();
        let (p, q) = (p as i64, q as i64);
        let w = &graph.weights;
        // Tridiagonal inverse through continuants: with theta the leading
        // principal minors and phi the trailing ones,
        // (Q^-1)_{ij} = (-1)^{i+j} theta_{i-1} phi_{j+1} / det Q for i <= j.
        let mut theta = vec![1i64; n + 1];
        for k in 0..n {
            let prev = if k == 0 { 0 } else { theta[k - 1] };
            theta[k + 1] = w[k] * theta[k] - prev;
        }
        let mut phi = vec![1i64; n + 2];
        phi[n + 1] = 0;
        for k in (0..n).rev() {
            phi[k] = w[k] * phi[k + 1] - phi[k + 2];
        }
        let det = theta[n];
        debug_assert_eq!(det.abs(), p);
        let scaled_inverse = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (lo, hi) = (i.min(j), i.max(j));
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        sign * theta[lo] * phi[hi + 1] * p / det
                    })
                    .collect()
            })
            .collect();
        Self { weights: w.clone(), p, q, scaled_inverse }
    }

    fn n(&self) -> usize {
        self.weights.len()
    }

    /// `C = p Q^{-1} K`.
    fn scaled_c(&self, k: &[i64]) -> Vec<i64> {
        self.scaled_inverse
            .iter()
            .map(|row| row.iter().zip(k).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Characteristic representative of class `t`: `a + 2 t e_last`.
    fn class_rep(&self, t: i64) -> Vec<i64> {
        let mut k = self.weights.clone();
        if let Some(last) = k.last_mut() {
            *last += 2 * t;
        }
        k
    }

    /// Surgery label of the class containing characteristic `k`.
    fn label(&self, k: &[i64]) -> u64 {
        let c0 = self.scaled_c(k)[0];
        let twice = (self.p + self.q - 1 - c0).rem_euclid(2 * self.p);
        debug_assert_eq!(twice % 2, 0, "parity of the first coordinate");
        (twice / 2) as u64
    }

    /// `max K^2` over the class of `k`, as `p^2 K^2`.
    ///
    /// With `K = Q c` the square is the tridiagonal form `c^T Q c` and the
    /// class is the coset `c + 2 Z^n`. An exact dynamic program over the
    /// chain runs inside the ellipsoid `c^T (-Q) c <= bound`, doubling the
    /// bound until the optimum lies strictly inside it.
    fn max_square_scaled(&self, k: &[i64]) -> i64 {
        let n = self.n();
        let p = self.p;
        let c0 = self.scaled_c(k);
        let step = 2 * p;
        let mut bound = (n as i64 + 4) * 2;
        loop {
            // p^2 * bound caps -p^2 K^2.
            let cap = p * p * bound;
            let ranges: Vec<Vec<i64>> = (0..n)
                .map(|j| {
                    let diag = -self.scaled_inverse[j][j];
                    let r = ((p * bound * diag) as f64).sqrt().ceil() as i64 + 1;
                    let first = -r + (c0[j] + r).rem_euclid(step);
                    (0..)
                        .map(|z| first + z * step)
                        .take_while(|&v| v <= r)
                        .collect()
                })
                .collect();
            if let Some(best) = self.chain_dp(&ranges) {
                if -best <= cap {
                    return best;
                }
            }
            bound *= 2;
        }
    }

    /// `max sum a_j C_j^2 + 2 sum C_j C_{j+1}` over `C_j` in the ranges.
    fn chain_dp(&self, ranges: &[Vec<i64>]) -> Option<i64> {
        let n = self.n();
        if ranges.iter().any(Vec::is_empty) {
            return None;
        }
        let a = &self.weights;
        let mut value: Vec<i64> = ranges[n - 1].iter().map(|&x| a[n - 1] * x * x).collect();
        for j in (0..n - 1).rev() {
            let next = &ranges[j + 1];
            value = ranges[j]
                .iter()
                .map(|&x| {
                    let tail = next
                        .iter()
                        .zip(&value)
                        .map(|(&y, &v)| 2 * x * y + v)
                        .max()
                        .unwrap();
                    a[j] * x * x + tail
                })
                .collect();
        }
        value.into_iter().max()
    }

    fn d_of_class(&self, k: &[i64]) -> Rational {
        let sq = BigRational::new(BigInt::from(self.max_square_scaled(k)), BigInt::from(self.p * self.p));
        (sq + rat_int(self.n() as i64)) / rat_int(4)
    }

    fn is_spin_class(&self, k: &[i64]) -> bool {
        self.scaled_c(k).iter().all(|c| c % self.p == 0)
    }
}

/// `max (K^2 + n) / 4` over characteristic covectors in every class of the
/// plumbing, keyed by surgery label.
pub fn d_plumbing_all(graph: &PlumbingGraph) -> BTreeMap<u64, Rational> {
    if graph.is_empty() {
        return BTreeMap::from([(0, rat_int(0))]);
    }
    let gram = Gram::new(graph);
    (0..gram.p)
        .map(|t| {
            let k = gram.class_rep(t);
            (gram.label(&k), gram.d_of_class(&k))
        })
        .collect()
}

/// Correction term of the boundary of a plumbing in the class with the given
/// surgery label.
pub fn d_plumbing(graph: &PlumbingGraph, class: u64) -> Result<Rational> {
    let (p, _) = graph.lens_parameters();
    if class >= p {
        return Err(Error::SpinCOutOfRange { i: class as i64, p: p as i64 });
    }
    d_plumbing_all(graph)
        .remove(&class)
        .ok_or_else(|| Error::Invariant(format!("class {class} missing from plumbing")))
}

/// Correction terms of the spin classes, i.e. classes of characteristic
/// covectors lying in the image of the intersection form.
pub fn d_plumbing_spin(graph: &PlumbingGraph) -> Vec<Rational> {
    if graph.is_empty() {
        return vec![rat_int(0)];
    }
    let gram = Gram::new(graph);
    (0..gram.p)
        .map(|t| gram.class_rep(t))
        .filter(|k| gram.is_spin_class(k))
        .map(|k| gram.d_of_class(&k))
        .collect()
}

/// `s(q, p) = sum_{k=1}^{p-1} ((k/p)) ((kq/p))`.
pub fn dedekind_sum(q: i64, p: i64) -> Result<Rational> {
    if p < 1 {
        return Err(Error::InvalidSlope { p, q });
    }
    if gcd(q, p) != 1 {
        return Err(Error::NotCoprime(q, p));
    }
    // ((k/p)) ((kq/p)) = (2k - p)(2r - p) / (4p^2) with r = kq mod p, both nonzero.
    let s: i64 = (1..p).map(|k| (2 * k - p) * (2 * (k * q).rem_euclid(p) - p)).sum();
    Ok(rat(s, 4 * p * p))
}

/// Casson-Walker invariant of `S^3_{p/q}(K)` for a knot with Alexander
/// polynomial `alexander`: `-sign(p) s(q, |p|) / 2 + q / (2p) * Delta''(1)`.
pub fn casson_walker_from_alexander(slope: SurgerySlope, alexander: &LaurentIntPoly) -> Rational {
    let (p, q) = (slope.p(), slope.q());
    let lens = dedekind_sum(q, p.abs()).expect("slope is reduced") * rat(-p.signum(), 2);
    let ddelta = BigRational::from_integer(alexander.second_derivative_at_one());
    lens + ddelta * rat(q, 2 * p)
}

/// Sorted multiset helper used by symmetry checks.
pub fn sorted(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort();
    v
}

/// `a = -b`.
pub fn is_negation(a: &Rational, b: &Rational) -> bool {
    (a + b).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(p: i64, q: i64) -> Vec<i64> {
        neg_continued_fraction(p, q).unwrap().weights().to_vec()
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(cf(9, 1), vec![-9]);
        assert_eq!(cf(9, 2), vec![-5, -2]);
        assert_eq!(cf(9, 7), vec![-2, -2, -2, -3]);
        assert_eq!(cf(27, 4), vec![-7, -4]);
        assert!(cf(1, 1).is_empty());
        assert_eq!(neg_continued_fraction(6, 4), Err(Error::NotCoprime(6, 4)));
        for p in 2..40 {
            for q in 1..p {
                if gcd(p, q) == 1 {
                    let g = neg_continued_fraction(p, q).unwrap();
                    assert_eq!(g.value(), (-p, q));
                }
            }
        }
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(d_recursive(1, 1, 0).unwrap(), rat(0, 1));
        assert_eq!(d_recursive(9, 1, spin_index(9, 1).unwrap() as i64).unwrap(), rat(-2, 1));
        assert_eq!(d_recursive(9, 2, spin_index(9, 2).unwrap() as i64).unwrap(), rat(0, 1));
        assert_eq!(d_recursive(27, 4, spin_index(27, 4).unwrap() as i64).unwrap(), rat(-1, 2));
        assert_eq!(d_recursive(9, 1, 9), Err(Error::SpinCOutOfRange { i: 9, p: 9 }));
    }

    #[test]
    fn plumbing_examples() {
        let g = |w: Vec<i64>| PlumbingGraph::new(w).unwrap();
        assert_eq!(d_plumbing_spin(&g(vec![-9])), vec![rat(-2, 1)]);
        assert_eq!(d_plumbing_spin(&g(vec![-7, -4])), vec![rat(-1, 2)]);
        assert_eq!(d_plumbing_spin(&g(vec![-2, -2, -2, -3])), vec![rat(0, 1)]);
        assert_eq!(PlumbingGraph::new(vec![-1]), Err(Error::BadPlumbingWeight(-1)));
    }

    #[test]
    fn spin_labels() {
        assert_eq!(spin_index(1, 1).unwrap(), 0);
        assert_eq!(spin_index(9, 1).unwrap(), 0);
        assert_eq!(spin_index(9, 2).unwrap(), 5);
        assert_eq!(rustamov_spin_label(9, 1).unwrap(), 8);
        assert_eq!(rustamov_spin_label(3, 1).unwrap(), 2);
        assert_eq!(rustamov_spin_label(1, 1).unwrap(), 0);
        assert_eq!(spin_index(8, 3), Err(Error::EvenOrder(8)));
        assert_eq!(spin_indices(8, 3).unwrap(), vec![1, 5]);
    }

    #[test]
    fn recursion_matches_plumbing_small() {
        for p in 2..=30 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let plumb = d_plumbing_all(&neg_continued_fraction(p, q).unwrap());
                let rec = d_recursive_all(p, q).unwrap();
                for (i, d) in rec.iter().enumerate() {
                    assert_eq!(&plumb[&(i as u64)], d, "p={p} q={q} i={i}");
                }
            }
        }
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_sum(1, 2).unwrap(), rat(0, 1));
        assert_eq!(dedekind_sum(1, 3).unwrap(), rat(1, 18));
        assert_eq!(dedekind_sum(2, 3).unwrap(), rat(-1, 18));
        for p in 1..=20 {
            assert_eq!(dedekind_sum(1, p).unwrap(), rat((p - 1) * (p - 2), 12 * p));
        }
    }

    #[test]
    fn casson_walker_mathieu() {
        let tref = LaurentIntPoly::from_terms([(1, 1), (0, -1), (-1, 1)]);
        let l1 = casson_walker_from_alexander(SurgerySlope::new(9, 1).unwrap(), &tref);
        let l2 = casson_walker_from_alexander(SurgerySlope::new(9, 2).unwrap(), &tref);
        assert_eq!(l1, rat(-4, 27));
        assert!(is_negation(&l1, &l2));
        let u = LaurentIntPoly::one();
        assert_eq!(casson_walker_from_alexander(SurgerySlope::new(1, 1).unwrap(), &u), rat(0, 1));
        assert_eq!(casson_walker_from_alexander(SurgerySlope::new(-1, 1).unwrap(), &u), rat(0, 1));
    }

    #[test]
    fn slope_normalization() {
        let s = SurgerySlope::new(9, -2).unwrap();
        assert_eq!((s.p(), s.q()), (-9, 2));
        assert_eq!(SurgerySlope::new(0, 1), Err(Error::ZeroSlope));
        assert_eq!(SurgerySlope::new(4, 2), Err(Error::NotCoprime(4, 2)));
    }
}
