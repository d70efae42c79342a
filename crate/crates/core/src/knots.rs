//! Knot models for the surgery mapping cone, behind a common trait and
//! selected by name through a registry.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::LaurentIntPoly;

/// What the mapping cone needs to know about a knot: the exponents of the
/// tower maps `v_s = U^{V_s}` and `h_s = U^{H_s}` on `H_*(A_s) = T+`.
pub trait KnotModel: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    fn alexander(&self) -> LaurentIntPoly;

    fn genus(&self) -> u32;

    fn v_exponent(&self, s: i64) -> u64;

    fn h_exponent(&self, s: i64) -> u64;

    /// Smallest `r >= 0` with `V_s = 0` for `s >= r` and `H_s = 0` for `s <= -r`.
    fn stable_radius(&self) -> i64;

    /// Models whose `A_s` are not pure towers are computed as the
    /// orientation reverse of the mirror at the negated slope.
    fn mirror(&self) -> Option<Arc<dyn KnotModel>> {
        None
    }
}

fn trefoil_polynomial() -> LaurentIntPoly {
    LaurentIntPoly::from_terms([(1, 1), (0, -1), (-1, 1)])
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Unknot;

impl KnotModel for Unknot {
    fn name(&self) -> &str {
        "unknot"
    }

    fn alexander(&self) -> LaurentIntPoly {
        LaurentIntPoly::one()
    }

    fn genus(&self) -> u32 {
        0
    }

    fn v_exponent(&self, s: i64) -> u64 {
        (-s).max(0) as u64
    }

    fn h_exponent(&self, s: i64) -> u64 {
        s.max(0) as u64
    }

    fn stable_radius(&self) -> i64 {
        0
    }
}

/// Any knot with the knot Floer homology of the right-handed trefoil.
#[derive(Debug, Clone, Copy, Default)]
pub struct FakeRightTrefoil;

impl KnotModel for FakeRightTrefoil {
    fn name(&self) -> &str {
        "rtrefoil"
    }

    fn alexander(&self) -> LaurentIntPoly {
        trefoil_polynomial()
    }

    fn genus(&self) -> u32 {
        1
    }

    fn v_exponent(&self, s: i64) -> u64 {
        match s {
            s if s > 0 => 0,
            0 => 1,
            s => (-s) as u64,
        }
    }

    fn h_exponent(&self, s: i64) -> u64 {
        self.v_exponent(-s)
    }

    fn stable_radius(&self) -> i64 {
        1
    }
}

/// Any knot with the knot Floer homology of the left-handed trefoil.
#[derive(Debug, Clone, Copy, Default)]
pub struct FakeLeftTrefoil;

impl KnotModel for FakeLeftTrefoil {
    fn name(&self) -> &str {
        "ltrefoil"
    }

    fn alexander(&self) -> LaurentIntPoly {
        trefoil_polynomial()
    }

    fn genus(&self) -> u32 {
        1
    }

    // The tower data below are never used: every computation goes through
    // the mirror. They are the values a pure-tower model would need.
    fn v_exponent(&self, s: i64) -> u64 {
        Unknot.v_exponent(s)
    }

    fn h_exponent(&self, s: i64) -> u64 {
        Unknot.h_exponent(s)
    }

    fn stable_radius(&self) -> i64 {
        1
    }

    fn mirror(&self) -> Option<Arc<dyn KnotModel>> {
        Some(Arc::new(FakeRightTrefoil))
    }
}

/// Knot models by name.
#[derive(Debug, Clone)]
pub struct KnotRegistry {
    models: BTreeMap<String, Arc<dyn KnotModel>>,
}

impl Default for KnotRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(Unknot));
        r.register(Arc::new(FakeRightTrefoil));
        r.register(Arc::new(FakeLeftTrefoil));
        r
    }
}

impl KnotRegistry {
    pub fn empty() -> Self {
        Self { models: BTreeMap::new() }
    }

    pub fn register(&mut self, model: Arc<dyn KnotModel>) {
        self.models.insert(model.name().to_string(), model);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn KnotModel>> {
        self.models
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownKnot(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.models.keys().map(String::as_str)
    }

    /// Registered models of genus one.
    pub fn genus_one(&self) -> Vec<Arc<dyn KnotModel>> {
        self.models.values().filter(|m| m.genus() == 1).cloned().collect()
    }
}
