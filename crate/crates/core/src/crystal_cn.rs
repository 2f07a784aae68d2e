//! Column tableaux for the fundamental modules of `C_n` and the
//! Young-diagram rule for tensoring with them.
//!
//! Letters come from `1 < 2 < ... < n < n̄ < ... < 2̄ < 1̄`. A column of
//! height `k` is a strictly increasing sequence `i_1 < ... < i_k` such that
//! whenever `i_a = p` and `i_b = p̄`, `a + (k - b + 1) <= p`. Columns are
//! applied to a diagram top to bottom: `((Y <- i_1) <- i_2) ... <- i_k`.

use crate::char_ring::FormalCharacter;
use crate::error::{Error, Result};
use crate::root_data::{AlgebraType, Series, Weight};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    index: u8,
    barred: bool,
}

impl Letter {
    pub fn unbarred(index: u8) -> Self {
        assert!(index >= 1, "letters are 1-based");
        Letter {
            index,
            barred: false,
        }
    }

    pub fn barred(index: u8) -> Self {
        assert!(index >= 1, "letters are 1-based");
        Letter {
            index,
            barred: true,
        }
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn is_barred(&self) -> bool {
        self.barred
    }

    pub fn conjugate(&self) -> Letter {
        Letter {
            index: self.index,
            barred: !self.barred,
        }
    }

    fn rank_key(&self) -> (bool, i16) {
        if self.barred {
            (true, -(self.index as i16))
        } else {
            (false, self.index as i16)
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank_key().cmp(&other.rank_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "~{}", self.index)
        } else {
            write!(f, "{}", self.index)
        }
    }
}

/// The alphabet `1, ..., n, n̄, ..., 1̄` in order.
pub fn alphabet(n: usize) -> Vec<Letter> {
    (1..=n as u8)
        .map(Letter::unbarred)
        .chain((1..=n as u8).rev().map(Letter::barred))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnTableau {
    letters: Vec<Letter>,
}

impl ColumnTableau {
    /// Validates strict increase and the pairing condition.
    pub fn new(letters: Vec<Letter>) -> Option<Self> {
        let t = ColumnTableau { letters };
        t.is_valid().then_some(t)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn height(&self) -> usize {
        self.letters.len()
    }

    fn is_valid(&self) -> bool {
        let k = self.letters.len();
        if self.letters.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for (a, x) in self.letters.iter().enumerate() {
            if x.barred {
                continue;
            }
            if let Some(b) = self.letters.iter().position(|y| *y == x.conjugate()) {
                // 1-based positions a+1 and b+1
                if (a + 1) + (k - (b + 1) + 1) > x.index as usize {
                    return false;
                }
            }
        }
        true
    }

    /// Weight of the tableau in the fundamental-weight basis of `C_n`.
    pub fn weight(&self, n: usize) -> Weight {
        // epsilon_i = omega_i - omega_{i-1}
        let mut eps = vec![0i32; n];
        for l in &self.letters {
            let i = l.index as usize - 1;
            eps[i] += if l.barred { -1 } else { 1 };
        }
        let coords = (0..n)
            .map(|i| eps[i] - if i + 1 < n { eps[i + 1] } else { 0 })
            .collect();
        Weight::new(coords)
    }
}

impl fmt::Display for ColumnTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// All column tableaux of height `k` for `C_n`, in lexicographic order.
pub fn enumerate_column_tableaux(n: usize, k: usize) -> Result<Vec<ColumnTableau>> {
    if k == 0 || k > n {
        return Err(Error::HeightOutOfRange { k, n });
    }
    let alpha = alphabet(n);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(
        alpha: &[Letter],
        start: usize,
        k: usize,
        current: &mut Vec<Letter>,
        out: &mut Vec<ColumnTableau>,
    ) {
        if current.len() == k {
            if let Some(t) = ColumnTableau::new(current.clone()) {
                out.push(t);
            }
            return;
        }
        for i in start..alpha.len() {
            current.push(alpha[i]);
            go(alpha, i + 1, k, current, out);
            current.pop();
        }
    }
    go(&alpha, 0, k, &mut current, &mut out);
    Ok(out)
}

/// Young diagram with at most `n` rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    pub fn empty(n: usize) -> Self {
        YoungDiagram { rows: vec![0; n] }
    }

    /// Rows must be nonincreasing; the vector length is the row cap `n`.
    pub fn from_rows(rows: Vec<u32>) -> Option<Self> {
        rows.windows(2)
            .all(|w| w[0] >= w[1])
            .then_some(YoungDiagram { rows })
    }

    /// The diagram with `a_k` columns of height `k` for `lambda = sum a_k omega_k`.
    pub fn from_weight(lambda: &Weight) -> Option<Self> {
        if !lambda.is_dominant() {
            return None;
        }
        let c = lambda.coords();
        let n = c.len();
        let mut rows = vec![0u32; n];
        let mut acc = 0u32;
        for i in (0..n).rev() {
            acc += c[i] as u32;
            rows[i] = acc;
        }
        Some(YoungDiagram { rows })
    }

    pub fn to_weight(&self) -> Weight {
        let n = self.rows.len();
        Weight::new(
            (0..n)
                .map(|i| self.rows[i] as i32 - self.rows.get(i + 1).copied().unwrap_or(0) as i32)
                .collect(),
        )
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// `Y <- i`: unbarred `p` adds a box to row `p`, barred `p` removes one.
    /// Returns `None` (reject) if rows stop being nonincreasing, a removal
    /// hits an empty row, or the row index exceeds the cap.
    pub fn apply_letter(&self, letter: Letter) -> Option<YoungDiagram> {
        let r = letter.index as usize - 1;
        if r >= self.rows.len() {
            return None;
        }
        let mut rows = self.rows.clone();
        if letter.barred {
            if rows[r] == 0 {
                return None;
            }
            rows[r] -= 1;
            if r + 1 < rows.len() && rows[r] < rows[r + 1] {
                return None;
            }
        } else {
            rows[r] += 1;
            if r > 0 && rows[r] > rows[r - 1] {
                return None;
            }
        }
        Some(YoungDiagram { rows })
    }

    /// Applies a whole column, rejecting if any step rejects.
    pub fn apply_column(&self, t: &ColumnTableau) -> Option<YoungDiagram> {
        t.letters()
            .iter()
            .try_fold(self.clone(), |y, &l| y.apply_letter(l))
    }
}

fn check_c(algebra: AlgebraType) -> Result<()> {
    if algebra.series() == Series::C {
        Ok(())
    } else {
        Err(Error::UnsupportedAlgebra {
            series: algebra.series().letter(),
            rank: algebra.rank(),
        })
    }
}

/// Surviving `(tableau, resulting diagram)` pairs for `V(lambda) (x) V(omega_k)`.
pub fn tensor_paths(
    algebra: AlgebraType,
    lambda: &Weight,
    k: usize,
) -> Result<Vec<(ColumnTableau, YoungDiagram)>> {
    check_c(algebra)?;
    let n = algebra.rank();
    let y = YoungDiagram::from_weight(lambda).ok_or_else(|| Error::NotDominant(lambda.clone()))?;
    if y.rows.len() != n {
        return Err(Error::RankMismatch {
            weight: lambda.clone(),
            got: lambda.rank(),
            expected: n,
        });
    }
    Ok(enumerate_column_tableaux(n, k)?
        .into_iter()
        .filter_map(|t| y.apply_column(&t).map(|r| (t, r)))
        .collect())
}

/// `V(lambda) (x) V(omega_k)` for `C_n` by the tableau rule.
pub fn tensor_with_fundamental(
    algebra: AlgebraType,
    lambda: &Weight,
    k: usize,
) -> Result<FormalCharacter> {
    let paths = tensor_paths(algebra, lambda, k)?;
    FormalCharacter::from_terms(algebra, paths.into_iter().map(|(_, y)| (y.to_weight(), 1)))
}

/// Extends [`tensor_with_fundamental`] linearly to a whole character.
pub fn tensor_character_with_fundamental(c: &FormalCharacter, k: usize) -> Result<FormalCharacter> {
    let mut acc = FormalCharacter::zero(c.algebra());
    for (w, m) in c.terms() {
        let part = tensor_with_fundamental(c.algebra(), w, k)?;
        acc = acc.add(&part.scale(m))?;
    }
    Ok(acc)
}
