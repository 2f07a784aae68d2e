//! Mechanical check that the Kirillov-Reshetikhin initial data is the only
//! admissible choice giving genuine characters.
//!
//! For each free multiplicity `M_{a,b}` of the fundamental characters we
//! know a "witness": a particular irreducible whose multiplicity in some
//! `Q_m(l)` is an affine function of `M_{a,b}` once every earlier entry (in
//! the induction order) has been fixed. Requiring all witness multiplicities
//! to be nonnegative forces a unique value of each `M_{a,b}`.
//!
//! Induction orders:
//!
//! * `B_n`: by `ceil((a-b)/2)` ascending, then `a+b` descending. This walks
//!   the zig-zag diagonal `M_{n-1,n-2}, M_{n-1,n-3}, M_{n-2,n-3}, ..., M_{1,0}`,
//!   then the next one starting at `M_{n-1,n-4}`, and so on.
//! * `C_n`: `M_{a,a-2}` for `a = n, ..., 2`, then `a - b = 4, 6, ...` with `a`
//!   descending.
//! * `D_n`: the `B_n` order restricted to even `a - b`.

use crate::char_ring::{CharRing, Mult};
use crate::error::{Error, Result};
use crate::qsystem::{kr_initial_data, InitialData, QTable};
use crate::root_data::{AlgebraType, Series, Weight};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// `constant + slope * M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineForm {
    pub constant: i64,
    pub slope: i64,
}

impl AffineForm {
    pub const fn new(constant: i64, slope: i64) -> Self {
        AffineForm { constant, slope }
    }

    pub fn eval(&self, m: u32) -> Mult {
        self.constant as Mult + self.slope as Mult * m as Mult
    }
}

impl std::fmt::Display for AffineForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.constant, self.slope) {
            (0, s) => write!(f, "{s}M"),
            (c, s) if s < 0 => write!(f, "{c}-{}M", -s),
            (c, s) => write!(f, "{c}+{s}M"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSpec {
    pub series: Series,
    /// The pair `(a, b)` whose `M_{a,b}` this witness constrains.
    pub target_pair: (usize, usize),
    /// `(m, l)` of the character `Q_m(l)` to inspect.
    pub location: (u32, usize),
    pub target_weight: Weight,
    pub expected_form: AffineForm,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub spec: WitnessSpec,
    pub tried_value: u32,
    pub computed_multiplicity: Mult,
    pub expected_multiplicity: Mult,
    pub matches_form: bool,
    /// The value of `M_{a,b}` the scan settled on; filled in by the scan.
    pub forces: Option<u32>,
}

/// Fundamental-like weight: `omega_i`, except `2 omega_n` at the spin node of
/// `B_n`.
fn b_fundamental(n: usize, i: usize) -> Weight {
    if i == n {
        Weight::fundamental(n, n).scaled(2)
    } else {
        Weight::fundamental(n, i)
    }
}

fn wsum(parts: &[Weight]) -> Weight {
    parts[1..].iter().fold(parts[0].clone(), |acc, w| &acc + w)
}

/// Renders a weight as `w1+2w4`, or `0`.
pub fn weight_expr(w: &Weight) -> String {
    let parts: Vec<String> = w
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match c {
            1 => format!("w{}", i + 1),
            c => format!("{c}w{}", i + 1),
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Pairs in the order the induction visits them.
pub fn induction_order(algebra: AlgebraType) -> Vec<(usize, usize)> {
    let n = algebra.rank();
    match algebra.series() {
        Series::A | Series::G => Vec::new(),
        Series::B | Series::D => {
            let top = if algebra.series() == Series::B {
                n - 1
            } else {
                n - 2
            };
            let mut pairs: Vec<(usize, usize)> = (1..=top)
                .flat_map(|a| (0..a).map(move |b| (a, b)))
                .filter(|&(a, b)| algebra.series() == Series::B || (a - b) % 2 == 0)
                .collect();
            pairs.sort_by_key(|&(a, b)| ((a - b).div_ceil(2), std::cmp::Reverse(a + b)));
            pairs
        }
        Series::C => {
            let mut pairs = Vec::new();
            let mut diff = 2;
            while diff <= n {
                for a in (diff..=n).rev() {
                    pairs.push((a, a - diff));
                }
                diff += 2;
            }
            pairs
        }
    }
}

/// Witnesses in induction order; pairs with two witnesses list both.
pub fn witness_specs(algebra: AlgebraType) -> Result<Vec<WitnessSpec>> {
    let n = algebra.rank();
    let series = algebra.series();
    let w = |i: usize| Weight::fundamental(n, i);
    let mut out = Vec::new();
    let mut push = |pair, location: (u32, usize), weight: Weight, form| {
        let label = format!(
            "V({}) in Q_{}({})",
            weight_expr(&weight),
            location.0,
            location.1
        );
        out.push(WitnessSpec {
            series,
            target_pair: pair,
            location,
            target_weight: weight,
            expected_form: form,
            label,
        })
    };
    match series {
        Series::A => {}
        Series::G => {
            return Err(Error::UnsupportedAlgebra {
                series: 'G',
                rank: n,
            })
        }
        Series::B => {
            for (a, b) in induction_order(algebra) {
                let odd = (a - b) % 2 == 1;
                if odd && a == n - 1 {
                    push((a, b), (3, n), wsum(&[w(b), w(n)]), AffineForm::new(1, -2));
                } else if odd {
                    push(
                        (a, b),
                        (2, a + 1),
                        wsum(&[b_fundamental(n, a + 2), w(b)]),
                        AffineForm::new(0, -1),
                    );
                } else {
                    push((a, b), (2, a), wsum(&[w(a), w(b)]), AffineForm::new(-1, 2));
                    if a + 2 <= n {
                        push(
                            (a, b),
                            (2, a + 1),
                            wsum(&[b_fundamental(n, a + 2), w(b)]),
                            AffineForm::new(1, -1),
                        );
                    } else {
                        // a = n-1: there is no node a+2; the spin cube bounds M instead.
                        push((a, b), (3, n), wsum(&[w(b), w(n)]), AffineForm::new(2, -2));
                    }
                }
            }
        }
        Series::C => {
            for (a, b) in induction_order(algebra) {
                if a - b == 2 {
                    push(
                        (a, b),
                        (3, a - 1),
                        wsum(&[w(a - 1), w(a - 2), w(a - 2)]),
                        AffineForm::new(1, -2),
                    );
                } else {
                    push(
                        (a, b),
                        (2, a - 1),
                        wsum(&[w(a - 2), w(b)]),
                        AffineForm::new(0, -1),
                    );
                }
            }
        }
        Series::D => {
            for (a, b) in induction_order(algebra) {
                push((a, b), (2, a - 1), w(b).scaled(2), AffineForm::new(1, -1));
                push((a, b), (2, a), wsum(&[w(a), w(b)]), AffineForm::new(-1, 2));
            }
        }
    }
    Ok(out)
}

/// Computes the witness multiplicity with `M_{a,b}` set to `trial`, all
/// other entries taken from `context`.
pub fn evaluate_witness(
    ring: &CharRing,
    spec: &WitnessSpec,
    trial: u32,
    context: &InitialData,
) -> Result<WitnessReport> {
    let (a, b) = spec.target_pair;
    let init = context.clone().with(a, b, trial)?;
    let mut table = QTable::new(ring, init)?;
    let (m, node) = spec.location;
    let q = table.q_char(m, node)?;
    let computed = q.multiplicity_of(&spec.target_weight);
    let expected = spec.expected_form.eval(trial);
    Ok(WitnessReport {
        spec: spec.clone(),
        tried_value: trial,
        computed_multiplicity: computed,
        expected_multiplicity: expected,
        matches_form: computed == expected,
        forces: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedEntry {
    pub a: usize,
    pub b: usize,
    #[serde(rename = "M")]
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub algebra: AlgebraType,
    pub trial_max: u32,
    pub records: Vec<WitnessReport>,
    pub forced: Vec<ForcedEntry>,
    /// Problems found: form mismatches, non-unique or missing forced values,
    /// non-divisible quotients.
    pub deviations: Vec<String>,
    pub matches_kr: bool,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.deviations.is_empty() && self.matches_kr
    }

    pub fn forced_value(&self, a: usize, b: usize) -> Option<u32> {
        self.forced
            .iter()
            .find(|e| e.a == a && e.b == b)
            .map(|e| e.m)
    }

    /// Plain-text report: one line per witness evaluation, the forced
    /// matrix as a triangle (rows `a`, columns `b`), and a closing verdict.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "uniqueness scan for {} (trials 0..={})",
            self.algebra, self.trial_max
        );
        for r in &self.records {
            let (a, b) = r.spec.target_pair;
            let _ = writeln!(
                s,
                "  M[{a},{b}] = {}: {:<28} computed {:>3}  form {:<6} {}",
                r.tried_value,
                r.spec.label,
                r.computed_multiplicity,
                r.spec.expected_form.to_string(),
                if r.matches_form { "ok" } else { "MISMATCH" }
            );
        }
        let n = self.algebra.rank();
        let map: BTreeMap<(usize, usize), u32> =
            self.forced.iter().map(|e| ((e.a, e.b), e.m)).collect();
        if !map.is_empty() {
            let _ = writeln!(s, "forced M (rows a, columns b = 0..a-1):");
            for a in (1..=n).rev() {
                if !map.keys().any(|&(x, _)| x == a) {
                    continue;
                }
                let _ = write!(s, "  a={a:<2}");
                for b in 0..a {
                    match map.get(&(a, b)) {
                        Some(m) => {
                            let _ = write!(s, " {m}");
                        }
                        None => {
                            let _ = write!(s, " .");
                        }
                    }
                }
                let _ = writeln!(s);
            }
        }
        for d in &self.deviations {
            let _ = writeln!(s, "deviation: {d}");
        }
        let verdict = if !self.passed() {
            "forced values do not reproduce the Kirillov-Reshetikhin data".to_string()
        } else if self.forced.is_empty() {
            "no free M: nothing to force".to_string()
        } else {
            match self.algebra.series() {
                Series::C => "all M forced to 0".to_string(),
                Series::D => "all M forced to 1".to_string(),
                Series::B => "M forced to the parity pattern (1 if a-b even, 0 if odd)".to_string(),
                _ => "forced values match".to_string(),
            }
        };
        let _ = write!(s, "{verdict}");
        s
    }
}

/// Walks the witnesses in induction order, tries every `M` in
/// `0..=trial_max`, and records which value the nonnegativity of the
/// witnesses forces. Entries not yet visited take their KR values.
pub fn uniqueness_scan(ring: &CharRing, trial_max: u32) -> Result<ScanReport> {
    let algebra = ring.algebra();
    if trial_max < 2 {
        return Err(Error::Parse(
            "the trial range must include 0, 1 and 2".into(),
        ));
    }
    let specs = witness_specs(algebra)?;
    let mut context = kr_initial_data(algebra)?;
    let mut report = ScanReport {
        algebra,
        trial_max,
        records: Vec::new(),
        forced: Vec::new(),
        deviations: Vec::new(),
        matches_kr: true,
    };

    for pair in induction_order(algebra) {
        let group: Vec<&WitnessSpec> = specs.iter().filter(|s| s.target_pair == pair).collect();
        let jobs: Vec<(&WitnessSpec, u32)> = group
            .iter()
            .flat_map(|s| (0..=trial_max).map(move |t| (*s, t)))
            .collect();
        let results: Vec<Result<WitnessReport>> = jobs
            .par_iter()
            .map(|(spec, t)| evaluate_witness(ring, spec, *t, &context))
            .collect();

        let mut admitted: Vec<bool> = vec![true; trial_max as usize + 1];
        let mut records = Vec::new();
        for ((spec, t), res) in jobs.iter().zip(results) {
            match res {
                Ok(r) => {
                    if !r.matches_form {
                        report.deviations.push(format!(
                            "{} at M[{},{}]={t}: computed {}, expected {}",
                            spec.label,
                            pair.0,
                            pair.1,
                            r.computed_multiplicity,
                            r.expected_multiplicity
                        ));
                    }
                    if r.computed_multiplicity < 0 {
                        admitted[*t as usize] = false;
                    }
                    records.push(r);
                }
                Err(e @ Error::NonDivisibleAt { .. }) | Err(e @ Error::NonDivisible(_)) => {
                    admitted[*t as usize] = false;
                    report.deviations.push(format!(
                        "{} at M[{},{}]={t}: {e}",
                        spec.label, pair.0, pair.1
                    ));
                }
                Err(e) => return Err(e),
            }
        }
        let survivors: Vec<u32> = (0..=trial_max).filter(|&t| admitted[t as usize]).collect();
        let forced = match survivors.as_slice() {
            [only] => Some(*only),
            _ => {
                report.deviations.push(format!(
                    "M[{},{}]: nonnegative for {:?}, not a unique value",
                    pair.0, pair.1, survivors
                ));
                None
            }
        };
        for r in &mut records {
            r.forces = forced;
        }
        report.records.extend(records);
        if let Some(m) = forced {
            report.forced.push(ForcedEntry {
                a: pair.0,
                b: pair.1,
                m,
            });
            context.set(pair.0, pair.1, m)?;
        }
    }

    let kr = kr_initial_data(algebra)?;
    report.matches_kr = report.forced.len() == kr.pairs().count()
        && report.forced.iter().all(|e| kr.get(e.a, e.b) == Some(e.m));
    Ok(report)
}
