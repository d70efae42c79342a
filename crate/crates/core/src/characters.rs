//! Dirichlet characters with exact values.
//!
//! A character is stored as an exponent vector against a fixed generating set
//! of `(Z/n)*`; values are materialized as cyclotomic numbers on demand.

use std::fmt;
use std::sync::Arc;

use crate::arith::{factorize, gcd, lcm, mod_inverse, mult_order, totient};
use crate::cyclotomic::CyclotomicNumber;

/// A decomposition of `(Z/n)*` into cyclic factors with a discrete-log table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroupStructure {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    log: Vec<Option<Vec<u64>>>,
}

fn smallest_primitive_root(pe: u64) -> u64 {
    let phi = totient(pe);
    (2..pe)
        .find(|&g| gcd(g as i64, pe as i64) == 1 && mult_order(g, pe) == phi)
        .expect("odd prime powers are cyclic")
}

impl UnitGroupStructure {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "modulus must be positive");
        // (generator mod prime power, order, prime power)
        let mut local: Vec<(u64, u64, u64)> = Vec::new();
        for (p, e) in factorize(n) {
            let pe = p.pow(e);
            if p == 2 {
                match e {
                    1 => {}
                    2 => local.push((3, 2, 4)),
                    _ => {
                        local.push((pe - 1, 2, pe));
                        local.push((5, pe / 4, pe));
                    }
                }
            } else {
                local.push((smallest_primitive_root(pe), totient(pe), pe));
            }
        }
        // CRT lift: x = g mod pe, x = 1 mod n / pe.
        let generators: Vec<u64> = local
            .iter()
            .map(|&(g, _, pe)| {
                let rest = n / pe;
                if rest == 1 {
                    return g % n;
                }
                let inv = mod_inverse(rest as i64, pe as i64).unwrap() as u64;
                let t = (g + pe - 1) % pe * inv % pe;
                (1 + rest * t) % n
            })
            .collect();
        let orders: Vec<u64> = local.iter().map(|&(_, o, _)| o).collect();

        let mut log = vec![None; n as usize];
        let mut exps = vec![0u64; orders.len()];
        loop {
            let x = generators
                .iter()
                .zip(&exps)
                .fold(1 % n, |acc, (&g, &k)| acc * crate::arith::pow_mod(g, k, n) % n);
            debug_assert!(log[x as usize].is_none(), "generators are not independent");
            log[x as usize] = Some(exps.clone());
            if !advance(&mut exps, &orders) {
                break;
            }
        }
        Self { modulus: n, generators, orders, log }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Exponent vector of a unit, `None` for non-units.
    pub fn discrete_log(&self, x: i64) -> Option<&[u64]> {
        let r = x.rem_euclid(self.modulus as i64) as usize;
        self.log[r].as_deref()
    }
}

/// Mixed-radix increment; returns false after wrapping around.
fn advance(exps: &mut [u64], orders: &[u64]) -> bool {
    for (e, &o) in exps.iter_mut().zip(orders) {
        *e += 1;
        if *e < o {
            return true;
        }
        *e = 0;
    }
    false
}

#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroupStructure>,
    exps: Vec<u64>,
    order: u64,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group.modulus == other.group.modulus && self.exps == other.exps
    }
}

impl Eq for DirichletCharacter {}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi mod {} {:?}", self.group.modulus, self.exps)
    }
}

impl DirichletCharacter {
    pub fn from_exponents(group: Arc<UnitGroupStructure>, exps: Vec<u64>) -> Self {
        assert_eq!(exps.len(), group.orders.len());
        let exps: Vec<u64> = exps.iter().zip(&group.orders).map(|(c, o)| c % o).collect();
        let order = exps
            .iter()
            .zip(&group.orders)
            .fold(1, |acc, (&c, &o)| lcm(acc, o / gcd(c as i64, o as i64) as u64));
        Self { group, exps, order }
    }

    pub fn principal(group: Arc<UnitGroupStructure>) -> Self {
        let k = group.orders.len();
        Self::from_exponents(group, vec![0; k])
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn group(&self) -> &Arc<UnitGroupStructure> {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    /// Order `e` of the value group; values live in `Q(zeta_e)`.
    pub fn value_order(&self) -> u64 {
        self.order
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    /// `chi(x) = zeta_e^k`, returned as `k mod e`; `None` when `gcd(x, n) > 1`.
    pub fn value_exponent(&self, x: i64) -> Option<u64> {
        let logs = self.group.discrete_log(x)?;
        let e = self.order;
        let mut k = 0u64;
        for ((&c, &o), &l) in self.exps.iter().zip(&self.group.orders).zip(logs) {
            let g = gcd(c as i64, o as i64) as u64;
            if c == 0 {
                continue;
            }
            let step = (c / g) * (e / (o / g)) % e;
            k = (k + step * l) % e;
        }
        Some(k)
    }

    pub fn value(&self, x: i64) -> CyclotomicNumber {
        match self.value_exponent(x) {
            Some(k) => CyclotomicNumber::zeta_power(self.order, k as i64),
            None => CyclotomicNumber::zero(self.order),
        }
    }

    pub fn is_even(&self) -> bool {
        self.value_exponent(-1) == Some(0)
    }

    pub fn conjugate(&self) -> Self {
        let exps = self
            .exps
            .iter()
            .zip(&self.group.orders)
            .map(|(&c, &o)| (o - c) % o)
            .collect();
        Self::from_exponents(Arc::clone(&self.group), exps)
    }

    /// Smallest `f | n` such that `chi` is trivial on units `= 1 mod f`.
    pub fn conductor(&self) -> u64 {
        let n = self.modulus();
        crate::arith::divisors(n)
            .into_iter()
            .find(|&f| {
                (1..n as i64)
                    .step_by(f as usize)
                    .filter(|&x| gcd(x, n as i64) == 1)
                    .all(|x| self.value_exponent(x) == Some(0))
            })
            .unwrap_or(n)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    /// The character mod `f` inducing this one; `f` must be a multiple of
    /// the conductor dividing `n`.
    pub fn restrict_to(&self, f: u64) -> Self {
        let n = self.modulus();
        assert!(n.is_multiple_of(f), "{f} does not divide {n}");
        let group = Arc::new(UnitGroupStructure::new(f));
        let e = self.order;
        let exps = group
            .generators
            .iter()
            .zip(&group.orders)
            .map(|(&h, &o)| {
                let lift = (0..n)
                    .map(|t| (h + t * f) as i64)
                    .find(|&x| gcd(x, n as i64) == 1)
                    .expect("every unit mod f lifts to a unit mod n");
                let v = self.value_exponent(lift).unwrap();
                debug_assert_eq!(v * o % e, 0, "not induced from modulus {f}");
                v * o / e
            })
            .collect();
        Self::from_exponents(group, exps)
    }

    pub fn primitive(&self) -> Self {
        self.restrict_to(self.conductor())
    }

    /// The character mod `n` induced by this one; `modulus | n`.
    pub fn induce_to(&self, n: u64) -> Self {
        assert!(n.is_multiple_of(self.modulus()));
        let group = Arc::new(UnitGroupStructure::new(n));
        let e = self.order;
        let exps = group
            .generators
            .iter()
            .zip(&group.orders)
            .map(|(&g, &o)| {
                let v = self.value_exponent(g as i64).unwrap();
                v * o / e
            })
            .collect();
        Self::from_exponents(group, exps)
    }
}

/// All `phi(n)` characters mod `n`, principal first.
pub fn enumerate_characters(n: u64) -> Vec<DirichletCharacter> {
    let group = Arc::new(UnitGroupStructure::new(n));
    let mut out = Vec::with_capacity(totient(n) as usize);
    let mut exps = vec![0u64; group.orders.len()];
    loop {
        out.push(DirichletCharacter::from_exponents(Arc::clone(&group), exps.clone()));
        if !advance(&mut exps, &group.orders) {
            break;
        }
    }
    out
}

/// `n / 2` when `n = 2 mod 4`, otherwise `n`.
pub fn max_conductor(n: u64) -> u64 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, units};

    fn by_exponent(n: u64, exps: Vec<u64>) -> DirichletCharacter {
        DirichletCharacter::from_exponents(Arc::new(UnitGroupStructure::new(n)), exps)
    }

    #[test]
    fn unit_group_shapes() {
        let g = UnitGroupStructure::new(9);
        assert_eq!(g.generators(), &[2]);
        assert_eq!(g.orders(), &[6]);
        let g = UnitGroupStructure::new(16);
        assert_eq!(g.orders(), &[2, 4]);
        let g = UnitGroupStructure::new(12);
        assert_eq!(g.orders().iter().product::<u64>(), 4);
        for n in 1..=120 {
            let g = UnitGroupStructure::new(n);
            assert_eq!(g.orders().iter().product::<u64>(), totient(n), "n = {n}");
            for x in units(n) {
                assert!(g.discrete_log(x as i64).is_some());
            }
        }
    }

    #[test]
    fn counts_and_parity() {
        assert_eq!(enumerate_characters(1).len(), 1);
        let c12 = enumerate_characters(12);
        assert_eq!(c12.len(), 4);
        assert_eq!(c12.iter().filter(|c| c.is_even()).count(), 2);
        let c9 = enumerate_characters(9);
        assert_eq!(c9.iter().filter(|c| c.is_even()).count(), 3);
        assert_eq!(c9.iter().filter(|c| c.is_even() && c.is_primitive()).count(), 2);
        let c4 = enumerate_characters(4);
        assert!(!c4[1].is_even());
        for n in 1..=60u64 {
            let even = enumerate_characters(n).iter().filter(|c| c.is_even()).count() as u64;
            let expect = if n <= 2 { totient(n) } else { totient(n) / 2 };
            assert_eq!(even, expect, "n = {n}");
        }
    }

    #[test]
    fn values_mod_nine() {
        let principal = by_exponent(9, vec![0]);
        assert_eq!(principal.value(2), CyclotomicNumber::one(1));
        // chi(2) = zeta_3 has exponent 2 on the order-6 generator
        let chi = by_exponent(9, vec![2]);
        assert_eq!(chi.value_order(), 3);
        assert_eq!(chi.value(2), CyclotomicNumber::zeta_power(3, 1));
        assert_eq!(chi.value(4), CyclotomicNumber::zeta_power(3, 2));
        for c in enumerate_characters(9) {
            assert!(c.value(3).is_zero());
        }
        assert_eq!(chi.conductor(), 9);
    }

    #[test]
    fn conductors_mod_twelve() {
        let chars = enumerate_characters(12);
        assert_eq!(chars[0].conductor(), 1);
        let even_nonprincipal: Vec<_> = chars.iter().filter(|c| c.is_even() && !c.is_principal()).collect();
        assert_eq!(even_nonprincipal.len(), 1);
        let chi = even_nonprincipal[0];
        assert_eq!(chi.conductor(), 12);
        let kernel: Vec<u64> = units(12).into_iter().filter(|&x| chi.value_exponent(x as i64) == Some(0)).collect();
        assert_eq!(kernel, vec![1, 11]);
        let mut conds: Vec<u64> = chars.iter().map(DirichletCharacter::conductor).collect();
        conds.sort();
        assert_eq!(conds, vec![1, 3, 4, 12]);
        assert_eq!(max_conductor(18), 9);
        assert_eq!(max_conductor(12), 12);
    }

    #[test]
    fn orthogonality() {
        for n in 1..=60u64 {
            for chi in enumerate_characters(n) {
                let mut s = CyclotomicNumber::zero(chi.value_order());
                for x in units(n) {
                    s = &s + &chi.value(x as i64);
                }
                let expect = if chi.is_principal() { totient(n) as i64 } else { 0 };
                assert_eq!(s.as_rational(), Some(rat(expect, 1)), "n = {n}, {chi:?}");
            }
        }
    }

    #[test]
    fn restriction_round_trip() {
        for n in [8u64, 9, 12, 15, 16, 18, 20, 24, 36, 45] {
            for chi in enumerate_characters(n) {
                let prim = chi.primitive();
                assert!(prim.is_primitive(), "{chi:?}");
                assert_eq!(prim.induce_to(n), chi);
                for x in units(n) {
                    assert_eq!(prim.value_exponent(x as i64), chi.value_exponent(x as i64));
                }
            }
        }
    }

    #[test]
    fn multiplicative() {
        for n in [7u64, 12, 16, 21, 30] {
            for chi in enumerate_characters(n) {
                for x in units(n) {
                    for y in units(n) {
                        let xy = (x * y % n) as i64;
                        assert_eq!(chi.value(xy), &chi.value(x as i64) * &chi.value(y as i64));
                    }
                }
            }
        }
    }
}
