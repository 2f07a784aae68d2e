//! The Q-system recurrence.
//!
//! For `m >= 1` and every node `l`,
//!
//! ```text
//! Q_m(l)^2 = Q_{m+1}(l) Q_{m-1}(l) + prod_{l' ~ l} Qc(m, l, l')
//! ```
//!
//! where the factor `Qc(m, l, l')` depends on the relative root lengths of
//! `l` and `l'` (see [`QTable::qcurly`]). Solving for `Q_{m+1}` gives a
//! recurrence that expresses every `Q_m(l)` through the fundamental
//! characters `Q_1(l)`; the division is exact in the representation ring.
//!
//! The modules behind `Q_m(l)` carry Drinfeld polynomials
//! `P_l(z) = prod_{i=1}^{m} (z + (alpha_l, alpha_l)/4 * (m + 1 - 2i))` and
//! `P_k = 1` for `k != l`. They are not computed here: the normalization of
//! `(alpha_l, alpha_l)` is not pinned down and only the underlying
//! finite-type characters enter the recurrence.

use crate::char_ring::{CharRing, FormalCharacter};
use crate::error::{Error, Result};
use crate::root_data::{AlgebraType, RootSystem, Series, Weight};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// One `M_{a,b}` entry in the JSON override format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MRecord {
    pub a: usize,
    pub b: usize,
    #[serde(rename = "M")]
    pub m: u32,
}

/// Fundamental characters `Q_1(a) = V(omega_a) + sum_b M_{a,b} V(omega_b)`.
///
/// The pairs `(a, b)` allowed here are those with `omega_b` strictly below
/// `omega_a` in the dominance order (`omega_0 = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialData {
    algebra: AlgebraType,
    values: BTreeMap<(usize, usize), u32>,
}

/// Pairs `(a, b)`, `0 <= b < a`, with `omega_b < omega_a`.
pub fn admissible_pairs(rs: &RootSystem) -> Vec<(usize, usize)> {
    let n = rs.rank();
    let mut out = Vec::new();
    for a in 1..=n {
        let top = Weight::fundamental(n, a);
        for b in 0..a {
            if rs.dominance_lt(&Weight::fundamental(n, b), &top) {
                out.push((a, b));
            }
        }
    }
    out
}

impl InitialData {
    /// All `M_{a,b} = 0`: every `Q_1(a)` is the bare fundamental character.
    pub fn fundamental(algebra: AlgebraType) -> Self {
        let rs = RootSystem::new(algebra);
        InitialData {
            algebra,
            values: admissible_pairs(&rs).into_iter().map(|p| (p, 0)).collect(),
        }
    }

    pub fn algebra(&self) -> AlgebraType {
        self.algebra
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.values.keys().copied()
    }

    pub fn is_admissible(&self, a: usize, b: usize) -> bool {
        self.values.contains_key(&(a, b))
    }

    pub fn get(&self, a: usize, b: usize) -> Option<u32> {
        self.values.get(&(a, b)).copied()
    }

    pub fn set(&mut self, a: usize, b: usize, m: u32) -> Result<()> {
        match self.values.get_mut(&(a, b)) {
            Some(v) => {
                *v = m;
                Ok(())
            }
            None => Err(Error::Inadmissible {
                algebra: self.algebra,
                a,
                b,
            }),
        }
    }

    pub fn with(mut self, a: usize, b: usize, m: u32) -> Result<Self> {
        self.set(a, b, m)?;
        Ok(self)
    }

    /// Builds initial data from override records; pairs not listed are 0.
    pub fn from_records(algebra: AlgebraType, records: &[MRecord]) -> Result<Self> {
        let mut d = Self::fundamental(algebra);
        let mut seen = std::collections::BTreeSet::new();
        for r in records {
            if !seen.insert((r.a, r.b)) {
                return Err(Error::Parse(format!(
                    "duplicate record for ({}, {})",
                    r.a, r.b
                )));
            }
            d.set(r.a, r.b, r.m)?;
        }
        Ok(d)
    }

    pub fn to_records(&self) -> Vec<MRecord> {
        self.values
            .iter()
            .map(|(&(a, b), &m)| MRecord { a, b, m })
            .collect()
    }

    /// The character `Q_1(a)` determined by this data.
    pub fn fundamental_character(&self, a: usize) -> FormalCharacter {
        let n = self.algebra.rank();
        let terms = std::iter::once((Weight::fundamental(n, a), 1)).chain(
            self.values
                .range((a, 0)..(a + 1, 0))
                .map(|(&(_, b), &m)| (Weight::fundamental(n, b), m as i128)),
        );
        FormalCharacter::from_terms(self.algebra, terms).expect("fundamental weights are dominant")
    }
}

impl Serialize for InitialData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            algebra: AlgebraType,
            entries: &'a [MRecord],
        }
        Out {
            algebra: self.algebra,
            entries: &self.to_records(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InitialData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct In {
            algebra: AlgebraType,
            entries: Vec<MRecord>,
        }
        let raw = In::deserialize(d)?;
        InitialData::from_records(raw.algebra, &raw.entries).map_err(serde::de::Error::custom)
    }
}

/// Initial data of the Kirillov-Reshetikhin characters.
///
/// * `A_n`, `C_n`: `Q_1(l) = V(omega_l)`.
/// * `B_n` (`l <= n-1`) and `D_n` (`l <= n-2`):
///   `Q_1(l) = V(omega_l) + V(omega_{l-2}) + V(omega_{l-4}) + ...`; the spin
///   nodes are bare.
pub fn kr_initial_data(algebra: AlgebraType) -> Result<InitialData> {
    let mut d = InitialData::fundamental(algebra);
    match algebra.series() {
        Series::A | Series::C => {}
        Series::B | Series::D => {
            for v in d.values.iter_mut() {
                let (a, b) = *v.0;
                *v.1 = u32::from((a - b) % 2 == 0);
            }
        }
        Series::G => {
            return Err(Error::UnsupportedAlgebra {
                series: 'G',
                rank: algebra.rank(),
            })
        }
    }
    Ok(d)
}

/// Memo table of `Q_m(l)` for one choice of initial data.
#[derive(Debug)]
pub struct QTable<'r> {
    ring: &'r CharRing,
    init: InitialData,
    memo: FxHashMap<(u32, usize), Arc<FormalCharacter>>,
}

impl<'r> QTable<'r> {
    pub fn new(ring: &'r CharRing, init: InitialData) -> Result<Self> {
        if ring.algebra() != init.algebra() {
            return Err(Error::AlgebraMismatch {
                left: ring.algebra(),
                right: init.algebra(),
            });
        }
        Ok(QTable {
            ring,
            init,
            memo: FxHashMap::default(),
        })
    }

    /// Table seeded with the Kirillov-Reshetikhin initial data.
    pub fn kirillov_reshetikhin(ring: &'r CharRing) -> Result<Self> {
        Self::new(ring, kr_initial_data(ring.algebra())?)
    }

    pub fn ring(&self) -> &'r CharRing {
        self.ring
    }

    pub fn initial_data(&self) -> &InitialData {
        &self.init
    }

    /// Memoized cells `(m, l)`, sorted.
    pub fn cells(&self) -> Vec<(u32, usize)> {
        let mut v: Vec<_> = self.memo.keys().copied().collect();
        v.sort_unstable();
        v
    }

    /// `Q_m(l)`.
    pub fn q_char(&mut self, m: u32, node: usize) -> Result<Arc<FormalCharacter>> {
        self.ring.root_system().check_node(node)?;
        if let Some(c) = self.memo.get(&(m, node)) {
            return Ok(c.clone());
        }
        let value = match m {
            0 => self.ring.unit(),
            1 => self.init.fundamental_character(node),
            _ => {
                let prev = self.q_char(m - 1, node)?;
                let prev2 = self.q_char(m - 2, node)?;
                let product = self.relation_product(m - 1, node)?;
                let numerator = self.ring.square(&prev)?.subtract(&product)?;
                self.ring
                    .divide_exact(&numerator, &prev2)
                    .map_err(|e| match e {
                        Error::NonDivisible(detail) => Error::NonDivisibleAt { m, node, detail },
                        other => other,
                    })?
            }
        };
        let value = Arc::new(value);
        self.memo.insert((m, node), value.clone());
        Ok(value)
    }

    /// `Q_1(x)` extended to the boundary: `Q_1(0) = 1`, and `0` for
    /// `x < 0` or `x > n`.
    pub fn q1_extended(&mut self, x: i64) -> Result<Arc<FormalCharacter>> {
        let n = self.ring.rank() as i64;
        if x == 0 {
            Ok(Arc::new(self.ring.unit()))
        } else if x < 0 || x > n {
            Ok(Arc::new(self.ring.zero()))
        } else {
            self.q_char(1, x as usize)
        }
    }

    /// The factor contributed by the neighbor `lp` of `l` to the relation at
    /// level `m`:
    ///
    /// * equal root lengths: `Q_m(lp)`;
    /// * `(alpha_l, alpha_l) = k (alpha_lp, alpha_lp)`: `Q_{km}(lp)`;
    /// * `k (alpha_l, alpha_l) = (alpha_lp, alpha_lp)`:
    ///   `prod_{i=0}^{k-1} Q_{floor((m+i)/k)}(lp)`.
    pub fn qcurly(&mut self, m: u32, l: usize, lp: usize) -> Result<FormalCharacter> {
        let rs = self.ring.root_system();
        rs.check_node(l)?;
        rs.check_node(lp)?;
        if !rs.adjacent(l, lp) {
            return Err(Error::NotAdjacent(l, lp));
        }
        let (dl, dlp) = (rs.root_length(l) as u32, rs.root_length(lp) as u32);
        if dl == dlp {
            Ok((*self.q_char(m, lp)?).clone())
        } else if dl > dlp {
            let k = dl / dlp;
            Ok((*self.q_char(k * m, lp)?).clone())
        } else {
            let k = dlp / dl;
            let mut factors = Vec::with_capacity(k as usize);
            for i in 0..k {
                factors.push(self.q_char((m + i) / k, lp)?);
            }
            self.ring.product(factors.iter().map(|f| f.as_ref()))
        }
    }

    /// `prod_{l' ~ l} Qc(m, l, l')`.
    pub fn relation_product(&mut self, m: u32, l: usize) -> Result<FormalCharacter> {
        let neighbors = self.ring.root_system().neighbors(l);
        let mut acc = self.ring.unit();
        for lp in neighbors {
            let f = self.qcurly(m, l, lp)?;
            acc = self.ring.tensor(&acc, &f)?;
        }
        Ok(acc)
    }

    /// Checks `Q_m(l)^2 = Q_{m+1}(l) Q_{m-1}(l) + prod Qc(m, l, l')` exactly.
    pub fn verify_relation(&mut self, m: u32, l: usize) -> Result<bool> {
        if m == 0 {
            return Err(Error::Parse("the relation is indexed by m >= 1".into()));
        }
        let lhs = self.ring.square(&*self.q_char(m, l)?)?;
        let next = self.q_char(m + 1, l)?;
        let prev = self.q_char(m - 1, l)?;
        let rhs = self
            .ring
            .tensor(&next, &prev)?
            .add(&self.relation_product(m, l)?)?;
        Ok(lhs == rhs)
    }
}
