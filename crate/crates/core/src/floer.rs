//! Heegaard Floer data of rational surgeries from the mapping cone, for knot
//! models whose `A_s` are towers.
//!
//! The cone `X_{i,p/q}` has towers `A_t` (`t = i mod |p|`, `s = floor(t/q)`)
//! mapping to `B_t` by `U^{V_s}` and to `B_{t+p}` by `U^{H_s}`. It is cut to a
//! window of `t` and a tower height, and its homology is read off grading by
//! grading. Only `ker D` and `coker D` are involved, so homology is split as
//! a `U`-module. Absolute gradings come from the unknot cone with the same
//! parameters, calibrated against the lens space correction terms.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{rat_int, Rational};
use crate::error::{Error, Result};
use crate::knots::{KnotModel, Unknot};
use crate::lens::{d_plumbing_all, d_recursive, neg_continued_fraction, spin_index, SurgerySlope};

/// Doubling rounds before giving up on stabilization.
pub const MAX_DOUBLINGS: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerKind {
    A,
    B,
}

/// A truncated tower `T+` with its lowest element in `bottom` (relative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    pub kind: TowerKind,
    pub t: i64,
    pub bottom: i64,
}

/// `U^exponent` from tower `from` to tower `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub exponent: u64,
}

#[derive(Debug, Clone)]
pub struct GradedTowerComplex {
    slope: SurgerySlope,
    class: u64,
    window: u64,
    height: u64,
    towers: Vec<Tower>,
    arrows: Vec<Arrow>,
    shift: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeHomology {
    pub d: Rational,
    pub hf_red: u64,
}

/// Homology in relative gradings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeHomology {
    pub d: i64,
    pub hf_red: u64,
    /// Total rank per grading over the computed range. Above it only the
    /// tower contributes.
    pub ranks: BTreeMap<i64, u64>,
}

/// `d(S^3_{p/q}(U), i)` for every class, from the plumbing bounded by
/// `S^3_{-|p|/q}(U)`. The recursion is kept independent as a cross-check.
pub fn unknot_d_all(slope: SurgerySlope) -> Result<BTreeMap<u64, Rational>> {
    let graph = neg_continued_fraction(slope.order() as i64, slope.q())?;
    let table = d_plumbing_all(&graph);
    Ok(if slope.p() > 0 { table.into_iter().map(|(i, d)| (i, -d)).collect() } else { table })
}

pub fn unknot_d(slope: SurgerySlope, class: u64) -> Result<Rational> {
    check_class(slope, class)?;
    Ok(unknot_d_all(slope)?[&class].clone())
}

fn check_class(slope: SurgerySlope, class: u64) -> Result<()> {
    if class >= slope.order() {
        return Err(Error::SpinCOutOfRange { i: class as i64, p: slope.order() as i64 });
    }
    Ok(())
}

impl GradedTowerComplex {
    /// The truncated cone in relative gradings, with `B_i` starting in degree 0.
    ///
    /// The kept `A_t` run from the last `t` with `s <= -window` to the first
    /// with `s >= window`. For `p > 0` only the `B`s hit twice are kept (a
    /// quotient complex), for `p < 0` every `B` that is hit (a subcomplex).
    pub fn relative(
        model: &dyn KnotModel,
        slope: SurgerySlope,
        class: u64,
        window: u64,
        height: u64,
    ) -> Result<Self> {
        check_class(slope, class)?;
        if model.mirror().is_some() {
            return Err(Error::Invariant(format!(
                "model `{}` is computed through its mirror",
                model.name()
            )));
        }
        let (p, q) = (slope.p(), slope.q());
        let n = p.abs();
        let w = window as i64;
        let s_of = |t: i64| t.div_euclid(q);

        let mut t_min = (-w * q) + (class as i64 - (-w * q)).rem_euclid(n);
        while s_of(t_min) > -w {
            t_min -= n;
        }
        let mut t_max = t_min;
        while s_of(t_max) < w {
            t_max += n;
        }
        if model.v_exponent(s_of(t_max)) != 0 || model.h_exponent(s_of(t_min)) != 0 {
            return Err(Error::WindowTooSmall(window));
        }
        let a_ts: Vec<i64> = (0..).map(|k| t_min + k * n).take_while(|&t| t <= t_max).collect();

        // bottoms of the B towers, anchored at B_class so that relative
        // gradings do not depend on the window; b_{t+p} - b_t = 2 s(t)
        let step = |t: i64| if p > 0 { 2 * s_of(t) } else { -2 * s_of(t + n) };
        let b = |u: i64| -> i64 {
            let c = class as i64;
            if u >= c {
                (0..(u - c) / n).map(|k| step(c + k * n)).sum()
            } else {
                -(0..(c - u) / n).map(|k| step(u + k * n)).sum::<i64>()
            }
        };
        let kept_b: Vec<i64> = if p > 0 {
            a_ts.iter().map(|t| t + n).filter(|&u| u <= t_max).collect()
        } else {
            std::iter::once(t_min - n).chain(a_ts.iter().copied()).collect()
        };

        let mut towers = Vec::new();
        let mut b_index = HashMap::new();
        for &u in &kept_b {
            b_index.insert(u, towers.len());
            towers.push(Tower { kind: TowerKind::B, t: u, bottom: b(u) });
        }
        let mut arrows = Vec::new();
        for &t in &a_ts {
            let s = s_of(t);
            let (v, h) = (model.v_exponent(s), model.h_exponent(s));
            let from = towers.len();
            towers.push(Tower { kind: TowerKind::A, t, bottom: b(t) - 2 * v as i64 + 1 });
            if let Some(&to) = b_index.get(&t) {
                arrows.push(Arrow { from, to, exponent: v });
            }
            if let Some(&to) = b_index.get(&(t + p)) {
                arrows.push(Arrow { from, to, exponent: h });
            }
        }
        Ok(Self { slope, class, window, height, towers, arrows, shift: Rational::zero() })
    }

    /// The cone with absolute gradings.
    pub fn build(
        model: &dyn KnotModel,
        slope: SurgerySlope,
        class: u64,
        window: u64,
        height: u64,
    ) -> Result<Self> {
        let mut cone = Self::relative(model, slope, class, window, height)?;
        let unknot = Self::relative(&Unknot, slope, class, window, height)?.relative_homology()?;
        cone.shift = unknot_d(slope, class)? - rat_int(unknot.d);
        Ok(cone)
    }

    pub fn slope(&self) -> SurgerySlope {
        self.slope
    }

    pub fn class(&self) -> u64 {
        self.class
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn height(&self) -> u64 {
        self.height
    }

    pub fn towers(&self) -> &[Tower] {
        &self.towers
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Absolute grading minus relative grading.
    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn homology(&self) -> Result<ConeHomology> {
        let rel = self.relative_homology()?;
        Ok(ConeHomology { d: rat_int(rel.d) + &self.shift, hf_red: rel.hf_red })
    }

    fn elements(&self, kind: TowerKind, g: i64, cap: u64) -> Vec<(usize, u64)> {
        self.towers
            .iter()
            .enumerate()
            .filter(|(_, t)| t.kind == kind && g >= t.bottom && (g - t.bottom) % 2 == 0)
            .map(|(i, t)| (i, ((g - t.bottom) / 2) as u64))
            .filter(|&(_, level)| level < cap)
            .collect()
    }

    /// Rank of `D` from `A` elements of grading `g` below level `cap`.
    fn rank_at(&self, g: i64, cap: u64) -> usize {
        let cols = self.elements(TowerKind::A, g, cap);
        if cols.is_empty() {
            return 0;
        }
        let rows: HashMap<(usize, u64), usize> = self
            .elements(TowerKind::B, g - 1, self.height)
            .into_iter()
            .enumerate()
            .map(|(k, e)| (e, k))
            .collect();
        let matrix: Vec<Vec<usize>> = cols
            .iter()
            .map(|&(tower, level)| {
                self.arrows
                    .iter()
                    .filter(|a| a.from == tower && level >= a.exponent)
                    .filter_map(|a| rows.get(&(a.to, level - a.exponent)).copied())
                    .collect()
            })
            .collect();
        rank_mod_prime(&matrix, rows.len())
    }

    pub fn relative_homology(&self) -> Result<RelativeHomology> {
        let e = self.arrows.iter().map(|a| a.exponent).max().unwrap_or(0) as i64;
        let h = self.height as i64;
        let lo = self.towers.iter().map(|t| t.bottom).min().unwrap_or(0) - 1;
        let max_bottom = self.towers.iter().map(|t| t.bottom).max().unwrap_or(0);
        // every element at or above g_stable sits at level > e, so slices
        // repeat with period 2 from there on
        let g_stable = max_bottom + 2 * e + 2;
        let hi = g_stable + 3;
        // coker elements at level >= height - e are truncation artifacts
        let reliable = self.towers.iter().map(|t| t.bottom + 2 * (h - e - 1)).min().unwrap_or(0);
        if hi + 2 >= reliable {
            return Err(Error::HeightTooSmall(self.height));
        }

        let count = |kind, g| self.elements(kind, g, self.height).len() as u64;
        let rank: BTreeMap<i64, u64> = (lo..=hi + 1).map(|g| (g, self.rank_at(g, self.height) as u64)).collect();
        let ker = |g: i64| count(TowerKind::A, g) - rank[&g];
        let coker = |g: i64| count(TowerKind::B, g) - rank[&(g + 1)];
        let ranks: BTreeMap<i64, u64> = (lo..=hi).map(|g| (g, ker(g) + coker(g))).collect();

        let (even, odd) = (ranks[&g_stable], ranks[&(g_stable + 1)]);
        if ranks[&(g_stable + 2)] != even || ranks[&(g_stable + 3)] != odd || even + odd != 1 {
            return Err(Error::Invariant(format!(
                "cone for {} class {} is not a single tower in high gradings",
                self.slope, self.class
            )));
        }

        // lowest grading carrying a U-divisible class; every coker class is
        // divisible, a ker class at x is iff it survives U^m from y = x + 2m
        let divisible = |x: i64| -> bool {
            if coker(x) > 0 {
                return true;
            }
            let y = if (g_stable - x).rem_euclid(2) == 0 { g_stable } else { g_stable + 1 };
            let m = ((y - x) / 2) as u64;
            let low = self.elements(TowerKind::A, y, m).len() as u64 - self.rank_at(y, m) as u64;
            ker(y) > low
        };
        let d = (lo..=g_stable + 1).find(|&x| divisible(x)).ok_or_else(|| {
            Error::Invariant(format!("no tower found for {} class {}", self.slope, self.class))
        })?;
        let tower = ((hi - d) / 2 + 1) as u64;
        let total: u64 = ranks.values().sum();
        let hf_red = total.checked_sub(tower).ok_or_else(|| {
            Error::Invariant(format!("negative reduced rank for {} class {}", self.slope, self.class))
        })?;
        Ok(RelativeHomology { d, hf_red, ranks })
    }
}

/// Rank over `F_p` of a 0/1 matrix given by its columns' row sets. The cone
/// matrices are forest incidence matrices, so this is their rank over `Q`.
fn rank_mod_prime(columns: &[Vec<usize>], nrows: usize) -> usize {
    const P: u64 = 2_147_483_647;
    let mut m: Vec<Vec<u64>> = columns
        .iter()
        .map(|c| {
            let mut v = vec![0u64; nrows];
            for &r in c {
                v[r] = (v[r] + 1) % P;
            }
            v
        })
        .collect();
    let inv = |a: u64| crate::arith::pow_mod(a, P - 2, P);
    let mut rank = 0;
    for col in 0..nrows {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let scale = inv(m[rank][col]);
        let pivot_row: Vec<u64> = m[rank].iter().map(|x| x * scale % P).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + P - f * y % P) % P;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// The cone of one class, truncated to the given window and height, with
/// absolute gradings.
pub fn build_cone(
    model: &dyn KnotModel,
    p: i64,
    q: i64,
    class: u64,
    window: u64,
    height: u64,
) -> Result<GradedTowerComplex> {
    GradedTowerComplex::build(model, SurgerySlope::new(p, q)?, class, window, height)
}

/// Relative `d` and reduced rank, doubling window and height until two
/// successive truncations agree.
fn stabilized_relative(model: &dyn KnotModel, slope: SurgerySlope, class: u64) -> Result<(i64, u64)> {
    let mut window = model.stable_radius().max(2) as u64;
    let mut height = 4 * (window + slope.order() + slope.q() as u64);
    let mut previous = None;
    for _ in 0..=MAX_DOUBLINGS {
        let result = GradedTowerComplex::relative(model, slope, class, window, height)
            .and_then(|c| c.relative_homology());
        match result {
            Err(Error::HeightTooSmall(_)) => height *= 2,
            Err(e) => return Err(e),
            Ok(h) => {
                let now = (h.d, h.hf_red);
                if previous == Some(now) {
                    return Ok(now);
                }
                previous = Some(now);
                window *= 2;
                height *= 2;
            }
        }
    }
    Err(Error::NotStabilized(MAX_DOUBLINGS))
}

type CacheKey = (String, i64, i64, u64);

/// Memo of stabilized cone results, keyed by model name, slope and class.
/// Results for the unknot double as the calibration of every other model.
#[derive(Debug, Default)]
pub struct ConeCache {
    relative: Mutex<HashMap<CacheKey, (i64, u64)>>,
    unknot: Mutex<HashMap<SurgerySlope, Arc<BTreeMap<u64, Rational>>>>,
}

impl ConeCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.relative.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn relative(&self, model: &dyn KnotModel, slope: SurgerySlope, class: u64) -> Result<(i64, u64)> {
        let key = (model.name().to_string(), slope.p(), slope.q(), class);
        if let Some(&hit) = self.relative.lock().expect("cache lock").get(&key) {
            return Ok(hit);
        }
        let value = stabilized_relative(model, slope, class)?;
        self.relative.lock().expect("cache lock").insert(key, value);
        Ok(value)
    }

    fn unknot_d(&self, slope: SurgerySlope, class: u64) -> Result<Rational> {
        if let Some(t) = self.unknot.lock().expect("cache lock").get(&slope) {
            return Ok(t[&class].clone());
        }
        let table = Arc::new(unknot_d_all(slope)?);
        let d = table[&class].clone();
        self.unknot.lock().expect("cache lock").insert(slope, table);
        Ok(d)
    }

    /// `d` and the reduced rank of `HF+(S^3_{p/q}(K), i)`.
    pub fn homology(&self, model: &dyn KnotModel, p: i64, q: i64, class: u64) -> Result<ConeHomology> {
        let slope = SurgerySlope::new(p, q)?;
        check_class(slope, class)?;
        if let Some(m) = model.mirror() {
            // -S^3_{p/q}(K) = S^3_{-p/q}(mirror K)
            let h = self.homology(&*m, -slope.p(), slope.q(), class)?;
            return Ok(ConeHomology { d: -h.d, hf_red: h.hf_red });
        }
        let (d, hf_red) = self.relative(model, slope, class)?;
        let (d_unknot, _) = self.relative(&Unknot, slope, class)?;
        Ok(ConeHomology { d: self.unknot_d(slope, class)? + rat_int(d - d_unknot), hf_red })
    }

    pub fn hf_red_rank(&self, model: &dyn KnotModel, p: i64, q: i64, class: u64) -> Result<u64> {
        let slope = SurgerySlope::new(p, q)?;
        check_class(slope, class)?;
        match model.mirror() {
            Some(m) => self.hf_red_rank(&*m, -slope.p(), slope.q(), class),
            None => Ok(self.relative(model, slope, class)?.1),
        }
    }

    pub fn d_invariant(&self, model: &dyn KnotModel, p: i64, q: i64, class: u64) -> Result<Rational> {
        Ok(self.homology(model, p, q, class)?.d)
    }

    /// `d` at every class, in class order.
    pub fn d_all(&self, model: &dyn KnotModel, p: i64, q: i64) -> Result<Vec<Rational>> {
        let n = SurgerySlope::new(p, q)?.order();
        (0..n).into_par_iter().map(|i| self.d_invariant(model, p, q, i)).collect()
    }

    /// Every class has reduced rank zero.
    pub fn is_lspace(&self, model: &dyn KnotModel, p: i64, q: i64) -> Result<bool> {
        let n = SurgerySlope::new(p, q)?.order();
        let reds = (0..n)
            .into_par_iter()
            .map(|i| self.hf_red_rank(model, p, q, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(reds.iter().all(|&r| r == 0))
    }
}

pub fn cone_homology(model: &dyn KnotModel, p: i64, q: i64, class: u64) -> Result<ConeHomology> {
    ConeCache::new().homology(model, p, q, class)
}

pub fn d_invariant(model: &dyn KnotModel, p: i64, q: i64, class: u64) -> Result<Rational> {
    Ok(cone_homology(model, p, q, class)?.d)
}

pub fn hf_red_rank(model: &dyn KnotModel, p: i64, q: i64, class: u64) -> Result<u64> {
    ConeCache::new().hf_red_rank(model, p, q, class)
}

/// `d` at the self-conjugate class (`p` odd).
pub fn d_spin(model: &dyn KnotModel, p: i64, q: i64) -> Result<Rational> {
    d_invariant(model, p, q, spin_index(p, q)?)
}

pub fn is_lspace(model: &dyn KnotModel, p: i64, q: i64) -> Result<bool> {
    ConeCache::new().is_lspace(model, p, q)
}

/// Closed form for the right-handed trefoil at the self-conjugate class: the
/// unknot value, lowered by 2 for positive slopes with odd `q`.
pub fn d_spin_shortcut(p: i64, q: i64) -> Result<Rational> {
    let slope = SurgerySlope::new(p, q)?;
    let d = d_recursive(slope.order() as i64, slope.q(), spin_index(p, q)? as i64)?;
    let base = if slope.p() > 0 { -d } else { d };
    Ok(if slope.p() > 0 && slope.q() % 2 == 1 { base - rat_int(2) } else { base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::knots::{FakeLeftTrefoil, FakeRightTrefoil};

    #[test]
    fn integer_surgeries() {
        // S^3_{+1}(RHT) is the Poincare sphere with reversed orientation: d = -2
        let rt = FakeRightTrefoil;
        assert_eq!(cone_homology(&rt, 1, 1, 0).unwrap(), ConeHomology { d: rat_int(-2), hf_red: 0 });
        // S^3_{-1}(RHT) = -Sigma(2,3,7): d = 0, one reduced generator
        assert_eq!(cone_homology(&rt, -1, 1, 0).unwrap(), ConeHomology { d: rat_int(0), hf_red: 1 });
        assert_eq!(cone_homology(&Unknot, 1, 1, 0).unwrap(), ConeHomology { d: rat_int(0), hf_red: 0 });
        let lt = FakeLeftTrefoil;
        assert_eq!(cone_homology(&lt, -1, 1, 0).unwrap(), ConeHomology { d: rat_int(2), hf_red: 0 });
    }

    #[test]
    fn spin_values() {
        let rt = FakeRightTrefoil;
        assert_eq!(d_spin(&rt, 9, 1).unwrap(), rat_int(0));
        assert_eq!(d_spin(&rt, 9, 2).unwrap(), rat_int(0));
        assert_eq!(d_spin(&rt, 9, 7).unwrap(), rat_int(-2));
        assert_eq!(d_spin(&rt, 9, 8).unwrap(), rat_int(-2));
        assert_eq!(d_spin(&rt, 27, 4).unwrap(), rat(1, 2));
        assert_eq!(d_spin(&rt, 27, 5).unwrap(), rat(-1, 2));
        assert_eq!(d_spin(&rt, 27, 22).unwrap(), rat(-3, 2));
        assert_eq!(d_spin(&rt, 27, 23).unwrap(), rat(-5, 2));
        for (p, q) in [(9, 1), (9, 2), (27, 4), (27, 5), (5, 3), (7, 2), (-9, 2)] {
            assert_eq!(d_spin(&rt, p, q).unwrap(), d_spin_shortcut(p, q).unwrap(), "{p}/{q}");
        }
    }

    #[test]
    fn conjugation_symmetry() {
        let rt = FakeRightTrefoil;
        for (p, q) in [(5i64, 3i64), (7, 2), (-7, 3), (9, 4), (4, 7)] {
            let n = p.abs();
            for i in 0..n {
                let j = (q - 1 - i).rem_euclid(n);
                assert_eq!(
                    cone_homology(&rt, p, q, i as u64).unwrap(),
                    cone_homology(&rt, p, q, j as u64).unwrap(),
                    "{p}/{q} classes {i} {j}"
                );
            }
        }
    }

    #[test]
    fn lspace_slopes() {
        let rt = FakeRightTrefoil;
        assert!(is_lspace(&rt, 5, 1).unwrap());
        assert!(is_lspace(&rt, 3, 2).unwrap());
        assert!(!is_lspace(&rt, 1, 2).unwrap());
        assert!(!is_lspace(&rt, -3, 1).unwrap());
        assert!(is_lspace(&FakeLeftTrefoil, -5, 1).unwrap());
    }

    #[test]
    fn unknot_matches_recursion() {
        let cones = ConeCache::new();
        for p in [1i64, 2, 5, 9, 12] {
            for q in 1..=2 * p {
                if crate::arith::gcd(p, q) != 1 {
                    continue;
                }
                for i in 0..p {
                    let r = d_recursive(p, q, i).unwrap();
                    let h = cones.homology(&Unknot, p, q, i as u64).unwrap();
                    assert_eq!(h, ConeHomology { d: -r.clone(), hf_red: 0 }, "{p}/{q} class {i}");
                    assert_eq!(cones.d_invariant(&Unknot, -p, q, i as u64).unwrap(), r);
                }
            }
        }
    }

    #[test]
    fn window_and_class_errors() {
        let cone = GradedTowerComplex::relative(&FakeRightTrefoil, SurgerySlope::new(5, 4).unwrap(), 0, 0, 40);
        assert_eq!(cone.unwrap_err(), Error::WindowTooSmall(0));
        assert!(matches!(d_invariant(&FakeRightTrefoil, 5, 4, 5), Err(Error::SpinCOutOfRange { .. })));
        let small = GradedTowerComplex::relative(&FakeRightTrefoil, SurgerySlope::new(5, 4).unwrap(), 0, 2, 2).unwrap();
        assert_eq!(small.relative_homology().unwrap_err(), Error::HeightTooSmall(2));
    }
}
