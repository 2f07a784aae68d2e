//! The representation ring: integer combinations of irreducible characters.
//!
//! Products are computed with the Brauer-Klimyk rule on top of Freudenthal
//! weight systems. [`CharRing`] owns one root system together with the memo
//! caches for weight systems and dimensions; it is `Sync` and may be shared
//! across threads.

mod freudenthal;

pub use freudenthal::WeightSystem;

use crate::error::{Error, Result};
use crate::root_data::{AlgebraType, RootSystem, Weight};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Coefficient type for characters.
pub type Mult = i128;

/// A virtual character `sum m_lambda V(lambda)` over dominant `lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCharacter {
    algebra: AlgebraType,
    terms: BTreeMap<Weight, Mult>,
}

impl FormalCharacter {
    pub fn zero(algebra: AlgebraType) -> Self {
        FormalCharacter {
            algebra,
            terms: BTreeMap::new(),
        }
    }

    /// The trivial character `V(0)`.
    pub fn unit(algebra: AlgebraType) -> Self {
        let mut c = Self::zero(algebra);
        c.terms.insert(Weight::zero(algebra.rank()), 1);
        c
    }

    pub fn irreducible(algebra: AlgebraType, lambda: Weight) -> Result<Self> {
        Self::from_terms(algebra, [(lambda, 1)])
    }

    /// Builds a character from `(weight, multiplicity)` pairs, summing repeats.
    pub fn from_terms<I>(algebra: AlgebraType, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Weight, Mult)>,
    {
        let mut c = Self::zero(algebra);
        for (w, m) in terms {
            if w.rank() != algebra.rank() {
                return Err(Error::RankMismatch {
                    got: w.rank(),
                    expected: algebra.rank(),
                    weight: w,
                });
            }
            if !w.is_dominant() {
                return Err(Error::NotDominant(w));
            }
            c.add_term(w, m);
        }
        Ok(c)
    }

    pub fn algebra(&self) -> AlgebraType {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic weight order. Use [`CharRing::sorted_terms`]
    /// for the division order.
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, Mult)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn multiplicity_of(&self, lambda: &Weight) -> Mult {
        self.terms.get(lambda).copied().unwrap_or(0)
    }

    /// Whether every coefficient is nonnegative.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    pub(crate) fn add_term(&mut self, w: Weight, m: Mult) {
        if m == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(m);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += m;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &FormalCharacter) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.algebra,
                right: other.algebra,
            })
        }
    }

    pub fn add(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, &m) in &other.terms {
            out.add_term(w.clone(), m);
        }
        Ok(out)
    }

    pub fn subtract(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, &m) in &other.terms {
            out.add_term(w.clone(), -m);
        }
        Ok(out)
    }

    pub fn scale(&self, k: Mult) -> FormalCharacter {
        if k == 0 {
            return Self::zero(self.algebra);
        }
        FormalCharacter {
            algebra: self.algebra,
            terms: self
                .terms
                .iter()
                .map(|(w, &m)| (w.clone(), m * k))
                .collect(),
        }
    }

    fn from_map(algebra: AlgebraType, map: FxHashMap<Weight, Mult>) -> Self {
        FormalCharacter {
            algebra,
            terms: map.into_iter().filter(|(_, m)| *m != 0).collect(),
        }
    }
}

impl fmt::Display for FormalCharacter {
    /// Human-readable form, highest terms first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rs = RootSystem::new(self.algebra);
        let mut first = true;
        for (w, m) in sorted_by_division_order(&rs, self) {
            let (sign, abs) = if m < 0 { ("-", -m) } else { ("+", m) };
            if first {
                if m < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if abs != 1 {
                write!(f, "{abs}")?;
            }
            write!(f, "V{w}")?;
        }
        Ok(())
    }
}

fn sorted_by_division_order(rs: &RootSystem, c: &FormalCharacter) -> Vec<(Weight, Mult)> {
    let mut v: Vec<(Weight, Mult)> = c.terms().map(|(w, m)| (w.clone(), m)).collect();
    v.sort_by_cached_key(|(w, _)| std::cmp::Reverse(rs.division_key(w)));
    v
}

/// One term of the JSON form of a character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub weight: Weight,
    pub mult: Mult,
}

/// JSON form of a character: terms sorted by the division order, highest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRecord {
    pub algebra: AlgebraType,
    pub terms: Vec<TermRecord>,
}

impl From<&FormalCharacter> for CharacterRecord {
    fn from(c: &FormalCharacter) -> Self {
        let rs = RootSystem::new(c.algebra);
        CharacterRecord {
            algebra: c.algebra,
            terms: sorted_by_division_order(&rs, c)
                .into_iter()
                .map(|(weight, mult)| TermRecord { weight, mult })
                .collect(),
        }
    }
}

impl TryFrom<CharacterRecord> for FormalCharacter {
    type Error = Error;

    fn try_from(r: CharacterRecord) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for t in &r.terms {
            if t.mult == 0 {
                return Err(Error::Parse(format!(
                    "zero multiplicity stored for {}",
                    t.weight
                )));
            }
            if !seen.insert(t.weight.clone()) {
                return Err(Error::Parse(format!("duplicate weight {}", t.weight)));
            }
        }
        FormalCharacter::from_terms(r.algebra, r.terms.into_iter().map(|t| (t.weight, t.mult)))
    }
}

impl Serialize for FormalCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormalCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CharacterRecord::deserialize(d)?;
        FormalCharacter::try_from(r).map_err(serde::de::Error::custom)
    }
}

/// Weight expansion of a (virtual) character.
type WeightList = Vec<(Weight, Mult)>;

/// Representation ring of one algebra, with memoized weight systems.
#[derive(Debug)]
pub struct CharRing {
    rs: RootSystem,
    weight_cache: Mutex<FxHashMap<Weight, Arc<WeightSystem>>>,
    dim_cache: Mutex<FxHashMap<Weight, BigUint>>,
}

impl CharRing {
    pub fn new(algebra: AlgebraType) -> Self {
        Self::with_root_system(RootSystem::new(algebra))
    }

    pub fn with_root_system(rs: RootSystem) -> Self {
        CharRing {
            rs,
            weight_cache: Mutex::new(FxHashMap::default()),
            dim_cache: Mutex::new(FxHashMap::default()),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn algebra(&self) -> AlgebraType {
        self.rs.algebra()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn zero(&self) -> FormalCharacter {
        FormalCharacter::zero(self.algebra())
    }

    pub fn unit(&self) -> FormalCharacter {
        FormalCharacter::unit(self.algebra())
    }

    pub fn irreducible(&self, lambda: &Weight) -> Result<FormalCharacter> {
        FormalCharacter::irreducible(self.algebra(), lambda.clone())
    }

    /// `V(omega_node)`, with node 0 giving the trivial character.
    pub fn fundamental(&self, node: usize) -> FormalCharacter {
        FormalCharacter::irreducible(self.algebra(), Weight::fundamental(self.rank(), node))
            .expect("fundamental weights are dominant")
    }

    fn check_dominant(&self, lambda: &Weight) -> Result<()> {
        self.rs.check_weight(lambda)?;
        if lambda.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(lambda.clone()))
        }
    }

    fn check_algebra(&self, c: &FormalCharacter) -> Result<()> {
        if c.algebra() == self.algebra() {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.algebra(),
                right: c.algebra(),
            })
        }
    }

    /// Weight system of `V(lambda)`, memoized per ring.
    pub fn weight_multiplicities(&self, lambda: &Weight) -> Result<Arc<WeightSystem>> {
        self.check_dominant(lambda)?;
        Ok(self.weight_system(lambda))
    }

    fn weight_system(&self, lambda: &Weight) -> Arc<WeightSystem> {
        if let Some(ws) = self.weight_cache.lock().unwrap().get(lambda) {
            return ws.clone();
        }
        // Computed outside the lock; a racing thread may duplicate the work
        // but both results are identical.
        let ws = Arc::new(freudenthal::compute(&self.rs, lambda));
        self.weight_cache
            .lock()
            .unwrap()
            .entry(lambda.clone())
            .or_insert(ws)
            .clone()
    }

    /// Number of cached weight systems.
    pub fn cached_weight_systems(&self) -> usize {
        self.weight_cache.lock().unwrap().len()
    }

    /// Weyl dimension `prod_{alpha>0} <lambda+rho, alpha^vee> / <rho, alpha^vee>`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<BigUint> {
        self.check_dominant(lambda)?;
        Ok(self.dimension_of(lambda))
    }

    fn dimension_of(&self, lambda: &Weight) -> BigUint {
        if let Some(d) = self.dim_cache.lock().unwrap().get(lambda) {
            return d.clone();
        }
        let shifted = lambda + self.rs.weyl_vector();
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for root in self.rs.positive_roots() {
            let top = self.rs.coroot_numerator(shifted.coords(), root);
            let bottom = root.length_pairing;
            num *= BigUint::from(top as u64);
            den *= BigUint::from(bottom as u64);
        }
        debug_assert!((&num % &den).is_zero());
        let d = num / den;
        self.dim_cache
            .lock()
            .unwrap()
            .insert(lambda.clone(), d.clone());
        d
    }

    /// Dimension of a virtual character (may be negative).
    pub fn dimension(&self, c: &FormalCharacter) -> BigInt {
        c.terms()
            .map(|(w, m)| BigInt::from(self.dimension_of(w)) * BigInt::from(m))
            .sum()
    }

    /// Weight expansion `sum m_lambda ch V(lambda)` with zero entries dropped.
    fn expand_weights(&self, c: &FormalCharacter) -> WeightList {
        if c.len() == 1 {
            let (w, m) = c.terms().next().unwrap();
            let ws = self.weight_system(w);
            return ws
                .weights()
                .iter()
                .map(|(v, &k)| (v.clone(), k as Mult * m))
                .collect();
        }
        let mut acc: FxHashMap<Weight, Mult> = FxHashMap::default();
        for (w, m) in c.terms() {
            let ws = self.weight_system(w);
            for (v, &k) in ws.weights() {
                *acc.entry(v.clone()).or_insert(0) += k as Mult * m;
            }
        }
        acc.into_iter().filter(|(_, m)| *m != 0).collect()
    }

    /// Adds `coeff * V(lambda) (x) X` into `acc`, where `weights` is the
    /// weight expansion of `X`.
    fn brauer_klimyk_into(
        &self,
        acc: &mut FxHashMap<Weight, Mult>,
        lambda: &Weight,
        coeff: Mult,
        weights: &WeightList,
        scratch: &mut Vec<i32>,
    ) {
        let lam = lambda.coords();
        for (nu, k) in weights {
            scratch.clear();
            scratch.extend(lam.iter().zip(nu.coords()).map(|(a, b)| a + b + 1));
            let sign = self.rs.reduce_in_place(scratch);
            if sign == 0 {
                continue;
            }
            for x in scratch.iter_mut() {
                *x -= 1;
            }
            let delta = sign as Mult * coeff * k;
            match acc.get_mut(scratch.as_slice()) {
                Some(v) => *v += delta,
                None => {
                    acc.insert(Weight::new(scratch.clone()), delta);
                }
            }
        }
    }

    fn total_dimension(&self, c: &FormalCharacter) -> f64 {
        c.terms()
            .map(|(w, _)| self.dimension_of(w).to_f64().unwrap_or(f64::MAX))
            .sum()
    }

    /// Tensor product in the representation ring.
    pub fn tensor(&self, a: &FormalCharacter, b: &FormalCharacter) -> Result<FormalCharacter> {
        self.check_algebra(a)?;
        self.check_algebra(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(self.zero());
        }
        // Expand whichever side is cheaper to enumerate weight by weight.
        let cost_a = a.len() as f64 * self.total_dimension(b);
        let cost_b = b.len() as f64 * self.total_dimension(a);
        let (outer, expanded) = if cost_a <= cost_b { (a, b) } else { (b, a) };
        let weights = self.expand_weights(expanded);
        let mut acc = FxHashMap::default();
        let mut scratch = Vec::with_capacity(self.rank());
        for (w, m) in outer.terms() {
            self.brauer_klimyk_into(&mut acc, w, m, &weights, &mut scratch);
        }
        Ok(FormalCharacter::from_map(self.algebra(), acc))
    }

    /// Product of a list of characters (the unit for an empty list).
    pub fn product<'a, I>(&self, factors: I) -> Result<FormalCharacter>
    where
        I: IntoIterator<Item = &'a FormalCharacter>,
    {
        let mut acc = self.unit();
        for f in factors {
            acc = self.tensor(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn square(&self, a: &FormalCharacter) -> Result<FormalCharacter> {
        self.tensor(a, a)
    }

    /// Leading term under the division order.
    pub fn leading_term(&self, c: &FormalCharacter) -> Option<(Weight, Mult)> {
        c.terms()
            .max_by_key(|(w, _)| self.rs.division_key(w))
            .map(|(w, m)| (w.clone(), m))
    }

    /// Terms sorted by the division order, highest first.
    pub fn sorted_terms(&self, c: &FormalCharacter) -> Vec<(Weight, Mult)> {
        sorted_by_division_order(&self.rs, c)
    }

    /// Exact quotient `num / den` in the representation ring, by long
    /// division on leading terms.
    pub fn divide_exact(
        &self,
        num: &FormalCharacter,
        den: &FormalCharacter,
    ) -> Result<FormalCharacter> {
        self.check_algebra(num)?;
        self.check_algebra(den)?;
        let (den_lead, den_coeff) = self
            .leading_term(den)
            .ok_or_else(|| Error::NonDivisible("division by the zero character".into()))?;
        if den.len() == 1 && den_lead.is_zero() && den_coeff == 1 {
            return Ok(num.clone());
        }

        let mut rem: BTreeMap<(i64, Weight), Mult> = num
            .terms()
            .map(|(w, m)| (self.rs.division_key(w), m))
            .collect();
        let weights = self.expand_weights(den);
        let mut quotient = self.zero();
        let mut acc: FxHashMap<Weight, Mult> = FxHashMap::default();
        let mut scratch = Vec::with_capacity(self.rank());

        while let Some(((_, lead), c)) = rem.pop_last() {
            let q_weight = &lead - &den_lead;
            if !q_weight.is_dominant() {
                return Err(Error::NonDivisible(format!(
                    "leading term V{lead} is not above V{den_lead}"
                )));
            }
            if c % den_coeff != 0 {
                return Err(Error::NonDivisible(format!(
                    "coefficient {c} of V{lead} is not divisible by {den_coeff}"
                )));
            }
            let q = c / den_coeff;
            quotient.add_term(q_weight.clone(), q);

            acc.clear();
            self.brauer_klimyk_into(&mut acc, &q_weight, q, &weights, &mut scratch);
            for (w, m) in acc.drain() {
                if m == 0 || w == lead {
                    continue;
                }
                let key = self.rs.division_key(&w);
                let left = rem.get(&key).copied().unwrap_or(0) - m;
                if left == 0 {
                    rem.remove(&key);
                } else {
                    rem.insert(key, left);
                }
            }
        }
        Ok(quotient)
    }
}
