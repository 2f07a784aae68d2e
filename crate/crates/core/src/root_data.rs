//! Root data for the classical series (and `G_2`) in Bourbaki numbering.
//!
//! Weights live in the fundamental-weight basis. The Cartan matrix is stored
//! as `cartan[i][j] = <alpha_i^vee, alpha_j>`, so the simple root `alpha_j`
//! has fundamental-weight coordinates given by column `j`. Node labels in the
//! public API are 1-based (`1..=rank`); coordinate vectors are 0-based.
//!
//! * `B_n`: `alpha_n` is short.
//! * `C_n`: `alpha_n` is long.
//! * `D_n`: the fork sits at `alpha_{n-2}`; `D_3` keeps its own matrix.
//! * `G_2`: `alpha_1` is short.

use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::G => 'G',
        }
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "G" => Ok(Series::G),
            other => Err(Error::Parse(format!("unknown series {other:?}"))),
        }
    }
}

/// A simple Lie algebra named by its Cartan type, e.g. `B_4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawAlgebra", into = "RawAlgebra")]
pub struct AlgebraType {
    series: Series,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    series: Series,
    rank: usize,
}

impl TryFrom<RawAlgebra> for AlgebraType {
    type Error = Error;
    fn try_from(raw: RawAlgebra) -> Result<Self> {
        AlgebraType::new(raw.series, raw.rank)
    }
}

impl From<AlgebraType> for RawAlgebra {
    fn from(a: AlgebraType) -> Self {
        RawAlgebra {
            series: a.series,
            rank: a.rank,
        }
    }
}

impl AlgebraType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::G => rank == 2,
        };
        if ok {
            Ok(AlgebraType { series, rank })
        } else {
            Err(Error::UnsupportedAlgebra {
                series: series.letter(),
                rank,
            })
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for AlgebraType {
    type Err = Error;

    /// Parses names like `B4` or `b_4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series: Series = chars
            .next()
            .ok_or_else(|| Error::Parse("empty algebra name".into()))?
            .to_string()
            .parse()?;
        let rest = chars.as_str().trim_start_matches('_');
        let rank = rest
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        AlgebraType::new(series, rank)
    }
}

/// Integer weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i32>);

impl Weight {
    pub fn new(coords: Vec<i32>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// `omega_node`, with `omega_0 = 0`.
    pub fn fundamental(rank: usize, node: usize) -> Self {
        let mut w = Weight::zero(rank);
        if node > 0 {
            w.0[node - 1] = 1;
        }
        w
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [i32] {
        &mut self.0
    }

    pub fn into_coords(self) -> Vec<i32> {
        self.0
    }
}

impl std::borrow::Borrow<[i32]> for Weight {
    fn borrow(&self) -> &[i32] {
        &self.0
    }
}

impl From<Vec<i32>> for Weight {
    fn from(v: Vec<i32>) -> Self {
        Weight(v)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A positive root, kept in both bases.
#[derive(Debug, Clone)]
pub struct PositiveRoot {
    /// Coefficients over the simple roots.
    pub root_coords: Vec<i32>,
    /// The same root in the fundamental-weight basis.
    pub weight: Weight,
    /// Sum of `c_i d_i` where `d_i` are the simple root lengths.
    pub(crate) length_pairing: i64,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    algebra: AlgebraType,
    cartan: Vec<Vec<i32>>,
    simple_roots: Vec<Weight>,
    root_lengths: Vec<i32>,
    weyl_vector: Weight,
    positive_roots: Vec<PositiveRoot>,
    // det(A) * A^{-1}, with A the matrix whose column j is alpha_j.
    adjugate: Vec<Vec<i64>>,
    det: i64,
    // Height of a weight (sum of simple-root coefficients), scaled by det.
    height_vec: Vec<i64>,
    // (omega_i, omega_j) scaled by 2 * det.
    gram: Vec<Vec<i64>>,
}

pub fn build_root_system(algebra: AlgebraType) -> RootSystem {
    RootSystem::new(algebra)
}

fn cartan_matrix(algebra: AlgebraType) -> (Vec<Vec<i32>>, Vec<i32>) {
    let n = algebra.rank();
    let mut a = vec![vec![0i32; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i32>>, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    let mut lengths = vec![1i32; n];
    match algebra.series() {
        Series::A => chain(&mut a, n),
        Series::B => {
            chain(&mut a, n);
            // alpha_n short
            a[n - 1][n - 2] = -2;
            for d in lengths.iter_mut().take(n - 1) {
                *d = 2;
            }
        }
        Series::C => {
            chain(&mut a, n);
            // alpha_n long
            a[n - 2][n - 1] = -2;
            lengths[n - 1] = 2;
        }
        Series::D => {
            chain(&mut a, n - 1);
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        Series::G => {
            a[0][1] = -3;
            a[1][0] = -1;
            lengths = vec![1, 3];
        }
    }
    (a, lengths)
}

fn invert(matrix: &[Vec<i32>]) -> Vec<Vec<Ratio<i64>>> {
    let n = matrix.len();
    let mut m: Vec<Vec<Ratio<i64>>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| Ratio::from_integer(x as i64)).collect())
        .collect();
    let mut inv: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Ratio::one() } else { Ratio::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("Cartan matrix is nonsingular");
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col];
        for j in 0..n {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in 0..n {
                    let (mc, ic) = (m[col][j], inv[col][j]);
                    m[r][j] -= f * mc;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    inv
}

impl RootSystem {
    pub fn new(algebra: AlgebraType) -> Self {
        let n = algebra.rank();
        let (cartan, root_lengths) = cartan_matrix(algebra);

        // A[i][j] = cartan[i][j]: column j is alpha_j in the omega basis.
        let inv = invert(&cartan);
        let det = inv
            .iter()
            .flatten()
            .fold(1i64, |acc, r| num_integer::lcm(acc, *r.denom()));
        let adjugate: Vec<Vec<i64>> = inv
            .iter()
            .map(|row| row.iter().map(|r| (r * det).to_integer()).collect())
            .collect();
        let height_vec: Vec<i64> = (0..n)
            .map(|j| (0..n).map(|i| adjugate[i][j]).sum())
            .collect();
        // (omega_i, omega_j) = inv[j][i] * d_j / 2; scale by 2 * det.
        let gram: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| adjugate[j][i] * root_lengths[j] as i64)
                    .collect()
            })
            .collect();

        let simple_roots: Vec<Weight> = (0..n)
            .map(|j| Weight((0..n).map(|i| cartan[i][j]).collect()))
            .collect();

        let mut rs = RootSystem {
            algebra,
            cartan,
            simple_roots,
            root_lengths,
            weyl_vector: Weight(vec![1; n]),
            positive_roots: Vec::new(),
            adjugate,
            det,
            height_vec,
            gram,
        };
        rs.positive_roots = rs.generate_positive_roots();
        rs
    }

    fn generate_positive_roots(&self) -> Vec<PositiveRoot> {
        let n = self.rank();
        let mut seen: HashSet<Vec<i32>> = HashSet::new();
        let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let pairing: i32 = (0..n).map(|j| beta[j] * self.cartan[i][j]).sum();
                let mut image = beta.clone();
                image[i] -= pairing;
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut roots: Vec<PositiveRoot> = seen
            .into_iter()
            .filter(|c| c.iter().all(|&x| x >= 0))
            .map(|c| {
                let weight = Weight(
                    (0..n)
                        .map(|i| (0..n).map(|j| self.cartan[i][j] * c[j]).sum())
                        .collect(),
                );
                let length_pairing = c
                    .iter()
                    .zip(&self.root_lengths)
                    .map(|(&ci, &di)| (ci * di) as i64)
                    .sum();
                PositiveRoot {
                    root_coords: c,
                    weight,
                    length_pairing,
                }
            })
            .collect();
        roots.sort_by(|a, b| {
            let ha: i32 = a.root_coords.iter().sum();
            let hb: i32 = b.root_coords.iter().sum();
            ha.cmp(&hb).then_with(|| a.root_coords.cmp(&b.root_coords))
        });
        roots
    }

    pub fn algebra(&self) -> AlgebraType {
        self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    /// Lengths `(alpha_i, alpha_i)` normalized so the shortest root has length 1.
    pub fn root_lengths(&self) -> &[i32] {
        &self.root_lengths
    }

    pub fn weyl_vector(&self) -> &Weight {
        &self.weyl_vector
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    /// Root length at a 1-based node.
    pub fn root_length(&self, node: usize) -> i32 {
        self.root_lengths[node - 1]
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if (1..=self.rank()).contains(&node) {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node,
                rank: self.rank(),
            })
        }
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                weight: w.clone(),
                got: w.rank(),
                expected: self.rank(),
            })
        }
    }

    /// Nodes adjacent to a 1-based node in the Dynkin diagram, ascending.
    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        let i = node - 1;
        (0..self.rank())
            .filter(|&j| j != i && self.cartan[i][j] != 0)
            .map(|j| j + 1)
            .collect()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b
            && (1..=self.rank()).contains(&a)
            && (1..=self.rank()).contains(&b)
            && self.cartan[a - 1][b - 1] != 0
    }

    /// Simple-root coefficients of `w`, multiplied by the determinant of
    /// the Cartan matrix (so they are always integers).
    pub fn root_coords_scaled(&self, w: &Weight) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.adjugate[i][j] * w.0[j] as i64).sum())
            .collect()
    }

    /// Simple-root coefficients of `w` when they are all integers.
    pub fn root_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.root_coords_scaled(w)
            .into_iter()
            .map(|c| (c % self.det == 0).then_some(c / self.det))
            .collect()
    }

    /// Whether `w` lies in the root lattice.
    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_coords(w).is_some()
    }

    /// Height (sum of simple-root coefficients) scaled by the Cartan
    /// determinant. Strictly monotone along the dominance order.
    pub fn scaled_height(&self, w: &Weight) -> i64 {
        self.height_vec
            .iter()
            .zip(&w.0)
            .map(|(h, &c)| h * c as i64)
            .sum()
    }

    /// Key of the total order used for leading terms: height first, then
    /// coordinates lexicographically.
    pub fn division_key(&self, w: &Weight) -> (i64, Weight) {
        (self.scaled_height(w), w.clone())
    }

    /// Invariant form on weights, scaled by `2 * det` so it is integral.
    pub fn scaled_form(&self, x: &[i32], y: &[i32]) -> i64 {
        let mut total = 0i64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.gram[i];
            let s: i64 = row.iter().zip(y).map(|(g, &yj)| g * yj as i64).sum();
            total += xi as i64 * s;
        }
        total
    }

    /// `<w, alpha^vee>` for a positive root, scaled by `length_pairing / <rho, alpha^vee>`;
    /// concretely this returns `sum_i c_i d_i w_i`.
    pub(crate) fn coroot_numerator(&self, w: &[i32], root: &PositiveRoot) -> i64 {
        root.root_coords
            .iter()
            .zip(&self.root_lengths)
            .zip(w)
            .map(|((&c, &d), &x)| (c * d) as i64 * x as i64)
            .sum()
    }

    /// Strict dominance: `hi - lo` is a nonzero nonnegative integer
    /// combination of simple roots.
    pub fn dominance_lt(&self, lo: &Weight, hi: &Weight) -> bool {
        if lo == hi || lo.rank() != hi.rank() || lo.rank() != self.rank() {
            return false;
        }
        match self.root_coords(&(hi - lo)) {
            Some(c) => c.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    /// Applies the simple reflection `s_i` (0-based) in place.
    #[inline]
    pub(crate) fn reflect_in_place(&self, w: &mut [i32], i: usize) {
        let k = w[i];
        if k == 0 {
            return;
        }
        for (j, x) in w.iter_mut().enumerate() {
            *x -= k * self.cartan[j][i];
        }
    }

    /// Reduces `w` to the dominant chamber in place, returning the sign of
    /// the Weyl word used, or 0 if `w` lies on a wall.
    pub(crate) fn reduce_in_place(&self, w: &mut [i32]) -> i8 {
        let mut sign = 1i8;
        loop {
            let mut moved = false;
            for i in 0..w.len() {
                let c = w[i];
                if c == 0 {
                    return 0;
                }
                if c < 0 {
                    self.reflect_in_place(w, i);
                    sign = -sign;
                    moved = true;
                }
            }
            if !moved {
                return sign;
            }
        }
    }

    /// Reflects a (caller-shifted) weight into the dominant chamber.
    ///
    /// Returns the dominant representative and `(-1)^len` of the reflection
    /// word; the sign is 0 exactly when the orbit meets a wall, in which case
    /// the returned weight is the dominant representative of the orbit.
    pub fn reflect_to_dominant(&self, w: &Weight) -> (Weight, i8) {
        let mut v = w.0.clone();
        let sign = self.reduce_in_place(&mut v);
        if sign == 0 {
            self.to_dominant_in_place(&mut v);
        }
        (Weight(v), sign)
    }

    /// Moves `w` into the closed dominant chamber, ignoring signs.
    pub(crate) fn to_dominant_in_place(&self, w: &mut [i32]) {
        loop {
            match w.iter().position(|&c| c < 0) {
                Some(i) => self.reflect_in_place(w, i),
                None => return,
            }
        }
    }

    /// All dominant weights strictly below `hi` in the dominance order.
    pub fn dominant_weights_below(&self, hi: &Weight) -> Vec<Weight> {
        let mut out: Vec<Weight> = self
            .dominant_weights_upto(hi)
            .into_iter()
            .filter(|w| w != hi)
            .collect();
        out.sort_by_key(|w| std::cmp::Reverse(self.division_key(w)));
        out
    }

    /// Dominant `mu` with `mu <= hi`, including `hi` itself. Dominant weights
    /// below a dominant weight are connected to it through chains of dominant
    /// weights differing by positive roots, so a search over positive roots
    /// finds them all.
    pub(crate) fn dominant_weights_upto(&self, hi: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut order = vec![hi.clone()];
        seen.insert(hi.clone());
        let mut idx = 0;
        while idx < order.len() {
            let mu = order[idx].clone();
            idx += 1;
            for root in &self.positive_roots {
                let nu = &mu - &root.weight;
                if nu.is_dominant() && !seen.contains(&nu) {
                    seen.insert(nu.clone());
                    order.push(nu);
                }
            }
        }
        order
    }
}
