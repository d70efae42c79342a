use std::f64::consts::TAU;

use num_traits::Zero;
use obstructor::arith::{gcd, mod_inverse, rat, units};
use obstructor::cyclotomic::{
    abs_equal_on_all_roots, abs_evaluate_float, four_roots_cancellation, AbsRationalProfile, CyclotomicNumber,
    FourRootsCase, RootOfUnity,
};
use obstructor::knots::{FakeLeftTrefoil, FakeRightTrefoil, KnotModel, Unknot};
use obstructor::lens::{casson_walker_from_alexander, d_recursive_all, dedekind_sum, sorted, SurgerySlope};
use obstructor::relations::{ennola_is_zero, random_symmetric_relation, theorem31_bruteforce};
use obstructor::floer::ConeCache;
use obstructor::torsion::torsion_equivalent;
use obstructor::LaurentIntPoly;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentIntPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..5).prop_map(LaurentIntPoly::from_terms)
}

fn coprime_pair(max: i64) -> impl Strategy<Value = (i64, i64)> {
    (1..=max, 1..=max).prop_filter("coprime", |&(p, q)| gcd(p, q) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn abs_equality_matches_floats(f in poly(), g in poly(), m in 2u64..=16, shift in -3i64..=3) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let pf = AbsRationalProfile::polynomial(f.clone(), m).unwrap();
        let pg = AbsRationalProfile::polynomial(g, m).unwrap();
        let exact = abs_equal_on_all_roots(&pf, &pg, m).unwrap();
        let floats = (1..m as i64).all(|j| {
            (abs_evaluate_float(&pf, j).unwrap() - abs_evaluate_float(&pg, j).unwrap()).abs() < 1e-7
        });
        prop_assert_eq!(exact, floats);
        // a monomial and conjugation never change absolute values on the circle
        let moved = &f.conjugate() * &LaurentIntPoly::monomial(shift, -1);
        let pm = AbsRationalProfile::polynomial(moved, m).unwrap();
        prop_assert!(abs_equal_on_all_roots(&pf, &pm, m).unwrap());
    }

    #[test]
    fn four_roots_match_floats(ks in prop::array::uniform4(0i64..12), ns in prop::array::uniform4(1u64..=12)) {
        let roots = [0, 1, 2, 3].map(|i| RootOfUnity::new(ks[i], ns[i]));
        let z = |i: usize| {
            let t = TAU * ks[i] as f64 / ns[i] as f64;
            (t.cos(), t.sin())
        };
        let (a, b, c, d) = (z(0), z(1), z(2), z(3));
        let equal = (a.0 + b.0 - c.0 - d.0).abs() < 1e-9 && (a.1 + b.1 - c.1 - d.1).abs() < 1e-9;
        let case = four_roots_cancellation(roots);
        prop_assert_eq!(case != FourRootsCase::NotEqual, equal);
        let close = |x: (f64, f64), y: (f64, f64)| (x.0 - y.0).abs() < 1e-9 && (x.1 - y.1).abs() < 1e-9;
        match case {
            FourRootsCase::SumZero => prop_assert!(close((a.0 + b.0, a.1 + b.1), (0.0, 0.0))),
            FourRootsCase::Match13 => prop_assert!(close(a, c)),
            FourRootsCase::Match14 => prop_assert!(close(a, d)),
            FourRootsCase::NotEqual => {}
        }
    }

    #[test]
    fn zeta_has_exact_order(n in 1u64..=30) {
        let z = CyclotomicNumber::zeta_power(n, 1);
        let mut acc = CyclotomicNumber::one(n);
        for k in 1..=n {
            acc = &acc * &z;
            prop_assert_eq!(acc == CyclotomicNumber::one(n), k == n);
        }
    }

    #[test]
    fn dedekind_reciprocity((p, q) in coprime_pair(50)) {
        let lhs = dedekind_sum(q, p).unwrap() + dedekind_sum(p, q).unwrap();
        let rhs = rat(-1, 4) + (rat(p, q) + rat(q, p) + rat(1, p * q)) / rat(12, 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lens_d_symmetries((p, q) in coprime_pair(40)) {
        prop_assume!(p > 1);
        let d = d_recursive_all(p, q).unwrap();
        // conjugation i -> q - 1 - i
        for i in 0..p {
            let j = (q - 1 - i).rem_euclid(p);
            prop_assert_eq!(&d[i as usize], &d[j as usize]);
        }
        // L(p, p - q) = -L(p, q)
        let reversed = d_recursive_all(p, (p - q).rem_euclid(p).max(1)).unwrap();
        let negated = sorted(reversed.iter().map(|x| -x).collect());
        prop_assert_eq!(sorted(d), negated);
    }

    #[test]
    fn casson_walker_lens_antisymmetry((p, q) in coprime_pair(60)) {
        let one = LaurentIntPoly::one();
        let pos = casson_walker_from_alexander(SurgerySlope::new(p, q).unwrap(), &one);
        let neg = casson_walker_from_alexander(SurgerySlope::new(-p, q).unwrap(), &one);
        prop_assert_eq!(pos, -neg);
    }

    #[test]
    fn torsion_witnesses_invert(p in 3i64..=30, a in 1i64..30, b in 1i64..30) {
        prop_assume!(gcd(p, a) == 1 && gcd(p, b) == 1);
        let delta = FakeRightTrefoil.alexander();
        let forward = torsion_equivalent(p, a, b, &delta).unwrap();
        let backward = torsion_equivalent(p, b, a, &delta).unwrap();
        let mut inverted: Vec<u64> =
            forward.iter().map(|&d| mod_inverse(d as i64, p).unwrap() as u64).collect();
        inverted.sort_unstable();
        prop_assert_eq!(inverted, backward);
    }

    #[test]
    fn ennola_shadow_consistency(m in prop::sample::select(vec![9u64, 12, 15, 16, 18, 24]), seed in any::<u64>()) {
        let rel = random_symmetric_relation(m, 6, 3, seed);
        let zero = ennola_is_zero(&rel).unwrap();
        prop_assert_eq!(zero, rel.vanishes_exactly());
        if zero {
            prop_assert!(rel.shadow() < 1e-9);
        }
        if rel.shadow() > 1e-3 {
            prop_assert!(!zero);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn left_trefoil_is_mirror(p in -15i64..=15, q in 1i64..=6) {
        prop_assume!(p != 0 && gcd(p, q) == 1);
        let cones = ConeCache::new();
        for i in 0..p.unsigned_abs() {
            let left = cones.homology(&FakeLeftTrefoil, p, q, i).unwrap();
            let right = cones.homology(&FakeRightTrefoil, -p, q, i).unwrap();
            prop_assert_eq!(left.d, -right.d);
            prop_assert_eq!(left.hf_red, right.hf_red);
        }
    }

    #[test]
    fn lspace_half_line(p in -20i64..=20, q in 1i64..=8) {
        prop_assume!(p != 0 && gcd(p, q) == 1);
        let cones = ConeCache::new();
        let here = cones.is_lspace(&FakeRightTrefoil, p, q).unwrap();
        if here {
            prop_assert!(p.abs() >= q);
            // every larger slope with a small denominator is an L-space too
            for (p2, q2) in [(p + 1, q), (2 * p + 1, 2 * q), (p + q, q)] {
                if gcd(p2, q2) == 1 && p2 != 0 {
                    prop_assert!(cones.is_lspace(&FakeRightTrefoil, p2, q2).unwrap());
                }
            }
        }
        prop_assert!(cones.is_lspace(&Unknot, p, q).unwrap());
    }
}

#[test]
fn theorem31_solutions_are_closed_under_signs() {
    for m in [7u64, 9, 12, 15] {
        let sols = theorem31_bruteforce(m).unwrap();
        let set: std::collections::BTreeSet<_> = sols.iter().copied().collect();
        for &(r, r2, k) in &sols {
            for image in [(m - r, r2, k), (r, m - r2, k), (r, r2, m - k)] {
                assert!(set.contains(&image), "m={m} {:?} -> {:?}", (r, r2, k), image);
            }
        }
        assert!(sols.iter().all(|&(r, r2, k)| [r, r2, k].iter().all(|x| units(m).contains(x))));
    }
}
