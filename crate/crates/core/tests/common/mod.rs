#![allow(dead_code)]

pub mod schur;

use krchar_core::crystal_cn::{
    enumerate_column_tableaux, tensor_paths, tensor_with_fundamental, Letter,
};
use krchar_core::uniqueness::{evaluate_witness, induction_order};
use krchar_core::{
    kr_initial_data, uniqueness_scan, witness_specs, AlgebraType, CharRing, FormalCharacter, Mult,
    QTable, Series, Weight,
};
use num_bigint::BigInt;

pub type Check = Result<(), String>;

pub fn alg(s: Series, n: usize) -> AlgebraType {
    AlgebraType::new(s, n).unwrap()
}

pub fn ring(s: Series, n: usize) -> CharRing {
    CharRing::new(alg(s, n))
}

/// `omega_i`, zero for `i = 0`.
pub fn w(n: usize, i: usize) -> Weight {
    Weight::fundamental(n, i)
}

pub fn sum(parts: &[Weight]) -> Weight {
    parts[1..].iter().fold(parts[0].clone(), |acc, x| &acc + x)
}

pub fn irr(r: &CharRing, lambda: &Weight) -> FormalCharacter {
    r.irreducible(lambda).unwrap()
}

/// `V_k` in `B_n`: `V(omega_k)` below the spin node, `V(2 omega_n)` at it.
pub fn b_vk(n: usize, k: usize) -> Weight {
    if k == n {
        w(n, n).scaled(2)
    } else {
        w(n, k)
    }
}

pub fn chars(r: &CharRing, terms: Vec<Weight>) -> FormalCharacter {
    FormalCharacter::from_terms(r.algebra(), terms.into_iter().map(|t| (t, 1))).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn small_algebras() -> Vec<AlgebraType> {
    let mut v = Vec::new();
    for n in 2..=4 {
        v.push(alg(Series::A, n));
    }
    for n in 2..=4 {
        v.push(alg(Series::B, n));
    }
    for n in 2..=4 {
        v.push(alg(Series::C, n));
    }
    for n in 3..=4 {
        v.push(alg(Series::D, n));
    }
    v
}

/// Every `Q_m(l)`, `m <= max_m`, from KR data is a genuine character led
/// by `V(m omega_l)` with all other weights strictly below it.
pub fn kr_positivity(a: AlgebraType, max_m: u32) -> Check {
    let r = CharRing::new(a);
    let mut t = QTable::kirillov_reshetikhin(&r).map_err(|e| e.to_string())?;
    let n = a.rank();
    for l in 1..=n {
        for m in 1..=max_m {
            let q = t.q_char(m, l).map_err(|e| format!("{a} Q_{m}({l}): {e}"))?;
            let top = w(n, l).scaled(m as i32);
            ensure(q.is_effective(), || {
                format!("{a} Q_{m}({l}) = {q} has a negative term")
            })?;
            ensure(q.multiplicity_of(&top) == 1, || {
                format!(
                    "{a} Q_{m}({l}): V{top} has multiplicity {}",
                    q.multiplicity_of(&top)
                )
            })?;
            for (lambda, _) in q.terms() {
                if lambda != &top {
                    ensure(r.root_system().dominance_lt(lambda, &top), || {
                        format!("{a} Q_{m}({l}): V{lambda} is not below V{top}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// The scan forces the KR values and every witness matches its form.
pub fn uniqueness_reproduces_kr(a: AlgebraType) -> Check {
    let r = CharRing::new(a);
    let report = uniqueness_scan(&r, 2).map_err(|e| e.to_string())?;
    ensure(report.deviations.is_empty(), || report.summary())?;
    ensure(report.records.iter().all(|x| x.matches_form), || {
        report.summary()
    })?;
    let kr = kr_initial_data(a).map_err(|e| e.to_string())?;
    for (x, y) in kr.pairs() {
        let expected = match a.series() {
            Series::B => ((x - y) % 2 == 0) as u32,
            Series::C => 0,
            Series::D => 1,
            _ => 0,
        };
        ensure(report.forced_value(x, y) == Some(expected), || {
            format!(
                "{a}: M[{x},{y}] forced to {:?}, expected {expected}",
                report.forced_value(x, y)
            )
        })?;
    }
    ensure(report.passed(), || report.summary())
}

/// Witness multiplicities do not depend on entries later in the induction
/// order.
pub fn witness_locality(a: AlgebraType) -> Check {
    let r = CharRing::new(a);
    let order = induction_order(a);
    let kr = kr_initial_data(a).map_err(|e| e.to_string())?;
    for spec in witness_specs(a).map_err(|e| e.to_string())? {
        let pos = order.iter().position(|&p| p == spec.target_pair).unwrap();
        for &(x, y) in &order[pos + 1..] {
            for later in 0..=2 {
                let ctx = kr.clone().with(x, y, later).map_err(|e| e.to_string())?;
                for trial in 0..=2 {
                    let rep =
                        evaluate_witness(&r, &spec, trial, &ctx).map_err(|e| e.to_string())?;
                    ensure(rep.matches_form, || {
                        format!(
                            "{a}: {} with M[{x},{y}]={later}, trial {trial}: got {}, form gives {}",
                            spec.label, rep.computed_multiplicity, rep.expected_multiplicity
                        )
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// `V_sp^2 = sum_{k=0}^n V_k` and `V_sp V_k = sum_{i=0}^k V(omega_i + omega_n)`
/// for `k < n`.
pub fn b_spin_identities(n: usize) -> Check {
    let r = ring(Series::B, n);
    let sp = irr(&r, &w(n, n));
    let sq = r.square(&sp).map_err(|e| e.to_string())?;
    let expected = chars(&r, (0..=n).map(|k| b_vk(n, k)).collect());
    ensure(sq == expected, || {
        format!("B{n}: V_sp^2 = {sq}, expected {expected}")
    })?;
    for k in 0..n {
        let p = r
            .tensor(&sp, &irr(&r, &w(n, k)))
            .map_err(|e| e.to_string())?;
        let expected = chars(&r, (0..=k).map(|i| sum(&[w(n, i), w(n, n)])).collect());
        ensure(p == expected, || {
            format!("B{n}: V_sp V_{k} = {p}, expected {expected}")
        })?;
    }
    Ok(())
}

/// `(s, t)` with `s > t >= 1` and `s + 1 <= n`.
pub fn b_difference_pairs(n: usize) -> Vec<(usize, usize)> {
    (2..n).flat_map(|s| (1..s).map(move |t| (s, t))).collect()
}

pub fn b_difference(r: &CharRing, s: usize, t: usize) -> FormalCharacter {
    let n = r.rank();
    let v = |k| irr(r, &b_vk(n, k));
    let lhs = r.tensor(&v(s), &v(t)).unwrap();
    let rhs = r.tensor(&v(s + 1), &v(t - 1)).unwrap();
    lhs.subtract(&rhs).unwrap()
}

/// `V_s V_t - V_{s+1} V_{t-1} = sum_{i=0}^t V(omega_i + omega_{s-t+i})`.
pub fn b_difference_identity(n: usize) -> Check {
    let r = ring(Series::B, n);
    for (s, t) in b_difference_pairs(n) {
        let d = b_difference(&r, s, t);
        let expected = chars(
            &r,
            (0..=t).map(|i| sum(&[w(n, i), w(n, s - t + i)])).collect(),
        );
        ensure(d == expected, || {
            format!("B{n} s={s} t={t}: {d}, expected {expected}")
        })?;
    }
    Ok(())
}

/// The same difference against `sum_{i=0}^t V(omega_i + omega_{s-t-2+i})`,
/// skipping the terms whose index is negative. Returns the `(s, t)` where
/// that reading disagrees with the computed difference.
pub fn b_difference_shifted_mismatches(n: usize) -> Vec<(usize, usize)> {
    let r = ring(Series::B, n);
    b_difference_pairs(n)
        .into_iter()
        .filter(|&(s, t)| {
            let terms = (0..=t)
                .filter_map(|i| (s + i).checked_sub(t + 2).map(|j| sum(&[w(n, i), w(n, j)])))
                .collect();
            b_difference(&r, s, t) != chars(&r, terms)
        })
        .collect()
}

/// `C_n`: `V_{a-1}^2 - V_a V_{a-2} = sum_{k=0}^{a-1} V(2 omega_k)`.
pub fn c_difference_identity(n: usize) -> Check {
    let r = ring(Series::C, n);
    for a in 2..=n {
        let v = |k| irr(&r, &w(n, k));
        let d = r
            .square(&v(a - 1))
            .unwrap()
            .subtract(&r.tensor(&v(a), &v(a - 2)).unwrap())
            .unwrap();
        let expected = chars(&r, (0..a).map(|k| w(n, k).scaled(2)).collect());
        ensure(d == expected, || {
            format!("C{n} a={a}: {d}, expected {expected}")
        })?;
    }
    Ok(())
}

/// `D_n`: for `r, s, b <= n-2`, `V(2 omega_b)` occurs in `V_r V_s` iff
/// `r = s >= b`, and then once.
pub fn d_two_omega_criterion(n: usize) -> Check {
    let ring = ring(Series::D, n);
    for r in 0..=n - 2 {
        for s in 0..=n - 2 {
            let p = ring
                .tensor(&irr(&ring, &w(n, r)), &irr(&ring, &w(n, s)))
                .unwrap();
            for b in 0..=n - 2 {
                let m = p.multiplicity_of(&w(n, b).scaled(2));
                let expected = Mult::from(r == s && r >= b);
                ensure(m == expected, || {
                    format!(
                        "D{n}: V(2w{b}) in V_{r} V_{s} has multiplicity {m}, expected {expected}"
                    )
                })?;
            }
        }
    }
    Ok(())
}

/// `(r, s, a, b)` with `a - b >= 2` even, all indices `<= n-2`, where
/// `V(omega_a + omega_b)` occurs twice in `V_r V_s`.
pub fn d_multiplicity_two(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let ring = ring(Series::D, n);
    let mut out = Vec::new();
    for r in 1..=n - 2 {
        for s in r..=n - 2 {
            let p = ring
                .tensor(&irr(&ring, &w(n, r)), &irr(&ring, &w(n, s)))
                .unwrap();
            for a in 2..=n - 2 {
                for b in (0..a - 1).filter(|b| (a - b) % 2 == 0) {
                    if p.multiplicity_of(&sum(&[w(n, a), w(n, b)])) == 2 {
                        out.push((r, s, a, b));
                    }
                }
            }
        }
    }
    out
}

/// Tableau counts for `V(omega_{a-1} + 2 omega_{a-2})`: three paths through
/// `V_{a-1}^{(x)3}` and one through `V_a V_{a-1} V_{a-2}`, with the columns
/// described by the letters `1..a-2, p` and `1..a-2, p-bar`.
pub fn c_tableau_counts(n: usize) -> Check {
    let a_ty = alg(Series::C, n);
    let r = CharRing::new(a_ty);
    for a in 2..=n {
        let target = sum(&[w(n, a - 1), w(n, a - 2), w(n, a - 2)]);
        let prefix: Vec<Letter> = (1..=a as u8 - 2).map(Letter::unbarred).collect();
        let col = |last: Letter| {
            let mut v = prefix.clone();
            v.push(last);
            v
        };

        let mut paths = Vec::new();
        for (t2, y2) in tensor_paths(a_ty, &w(n, a - 1), a - 1).unwrap() {
            for (t3, y3) in tensor_paths(a_ty, &y2.to_weight(), a - 1).unwrap() {
                if y3.to_weight() == target {
                    paths.push((t2.letters().to_vec(), t3.letters().to_vec()));
                }
            }
        }
        let choices = [
            Letter::unbarred(a as u8 - 1),
            Letter::unbarred(a as u8),
            Letter::barred(a as u8 - 1),
        ];
        let mut expected: Vec<(Vec<Letter>, Vec<Letter>)> = choices
            .iter()
            .map(|&p| (col(p), col(p.conjugate())))
            .collect();
        paths.sort();
        expected.sort();
        ensure(paths.len() == 3, || {
            format!(
                "C{n} a={a}: {} tableau paths in V_(a-1)^3, expected 3",
                paths.len()
            )
        })?;
        ensure(paths.iter().zip(&expected).all(|(p, e)| p == e), || {
            format!("C{n} a={a}: paths {paths:?}, expected {expected:?}")
        })?;

        let v = |k| irr(&r, &w(n, k));
        let cube = r.product([&v(a - 1), &v(a - 1), &v(a - 1)]).unwrap();
        ensure(cube.multiplicity_of(&target) == 3, || {
            format!(
                "C{n} a={a}: Brauer-Klimyk gives {}",
                cube.multiplicity_of(&target)
            )
        })?;

        let mut mixed = Vec::new();
        for (t2, y2) in tensor_paths(a_ty, &w(n, a), a - 1).unwrap() {
            let ends = match a - 2 {
                0 => vec![y2.to_weight()],
                k => tensor_paths(a_ty, &y2.to_weight(), k)
                    .unwrap()
                    .into_iter()
                    .map(|(_, y3)| y3.to_weight())
                    .collect(),
            };
            for _ in ends.into_iter().filter(|e| *e == target) {
                mixed.push(t2.letters().to_vec());
            }
        }
        ensure(mixed == vec![col(Letter::barred(a as u8))], || {
            format!("C{n} a={a}: V_a V_(a-1) V_(a-2) paths {mixed:?}")
        })?;
        let triple = r.product([&v(a), &v(a - 1), &v(a - 2)]).unwrap();
        ensure(triple.multiplicity_of(&target) == 1, || {
            format!(
                "C{n} a={a}: Brauer-Klimyk gives {} in V_a V_(a-1) V_(a-2)",
                triple.multiplicity_of(&target)
            )
        })?;
    }
    Ok(())
}

/// Dominant weights of `C_n` with coordinate sum at most `size`.
pub fn small_dominant(n: usize, size: i32) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i32>| {
                let used: i32 = v.iter().sum();
                (0..=size - used).map(move |c| {
                    let mut u = v.clone();
                    u.push(c);
                    u
                })
            })
            .collect();
    }
    out.into_iter().map(Weight::new).collect()
}

/// Tableau rule against Brauer-Klimyk for `|lambda| <= size`, every `k`.
pub fn crystal_matches_brauer_klimyk(n: usize, size: i32) -> Check {
    let a = alg(Series::C, n);
    let r = CharRing::new(a);
    for lambda in small_dominant(n, size) {
        for k in 1..=n {
            let crystal = tensor_with_fundamental(a, &lambda, k).map_err(|e| e.to_string())?;
            let bk = r.tensor(&irr(&r, &lambda), &irr(&r, &w(n, k))).unwrap();
            ensure(crystal == bk, || {
                format!("C{n}: V{lambda} x V_{k}: tableaux {crystal}, Brauer-Klimyk {bk}")
            })?;
        }
    }
    Ok(())
}

pub fn tableau_counts_match_dimension(n: usize) -> Check {
    let r = ring(Series::C, n);
    for k in 1..=n {
        let count = enumerate_column_tableaux(n, k).unwrap().len();
        let dim = r.weyl_dimension(&w(n, k)).unwrap();
        ensure(dim == count.into(), || {
            format!("C{n} k={k}: {count} tableaux, dimension {dim}")
        })?;
    }
    Ok(())
}

/// Type `A`: `Q_m(l) = V(m omega_l)` for `m <= max_m + 1`, and the
/// three-term identity for `m <= max_m`, both in the ring and in the
/// independent Schur-polynomial model.
pub fn a_closed_form_and_three_term(n: usize, max_m: u32) -> Check {
    let r = ring(Series::A, n);
    let mut t = QTable::kirillov_reshetikhin(&r).unwrap();
    let mut model = schur::SchurModel::new(n + 1);
    let rect = |m: u32, l: usize| -> Weight {
        if l == 0 || l == n + 1 || m == 0 {
            Weight::zero(n)
        } else {
            w(n, l).scaled(m as i32)
        }
    };
    for l in 1..=n {
        for m in 0..=max_m + 1 {
            let q = t.q_char(m, l).unwrap();
            let expected = irr(&r, &rect(m, l));
            ensure(*q == expected, || {
                format!("A{n} Q_{m}({l}) = {q}, expected {expected}")
            })?;
        }
    }
    for l in 1..=n {
        for m in 1..=max_m {
            let v = |m, l| irr(&r, &rect(m, l));
            let lhs = r.square(&v(m, l)).unwrap();
            let rhs = r
                .tensor(&v(m - 1, l), &v(m + 1, l))
                .unwrap()
                .add(&r.tensor(&v(m, l - 1), &v(m, l + 1)).unwrap())
                .unwrap();
            ensure(lhs == rhs, || format!("A{n} m={m} l={l}: {lhs} != {rhs}"))?;

            let s =
                |model: &mut schur::SchurModel, m: u32, l: usize| model.irreducible(&rect(m, l));
            let s_ml = s(&mut model, m, l);
            let lhs_model = schur::mul(&s_ml, &s_ml);
            let rhs_model = schur::add(
                &schur::mul(&s(&mut model, m - 1, l), &s(&mut model, m + 1, l)),
                &schur::mul(&s(&mut model, m, l - 1), &s(&mut model, m, l + 1)),
            );
            ensure(lhs_model == rhs_model, || {
                format!("A{n} m={m} l={l}: Schur model disagrees")
            })?;
            ensure(model.character(&lhs) == lhs_model, || {
                format!("A{n} m={m} l={l}: ring decomposition of Q_m(l)^2 has the wrong character")
            })?;
        }
    }
    Ok(())
}

/// Both sides of every relation up to `max_m` have the same dimension.
pub fn dimension_homomorphism(a: AlgebraType, max_m: u32) -> Check {
    let r = CharRing::new(a);
    let mut t = QTable::kirillov_reshetikhin(&r).map_err(|e| e.to_string())?;
    for l in 1..=a.rank() {
        for m in 1..=max_m {
            let d = |c: &FormalCharacter| r.dimension(c);
            let q = d(&t.q_char(m, l).unwrap());
            let next = d(&t.q_char(m + 1, l).unwrap());
            let prev = d(&t.q_char(m - 1, l).unwrap());
            let mut prod = BigInt::from(1);
            for lp in r.root_system().neighbors(l) {
                prod *= d(&t.qcurly(m, l, lp).unwrap());
            }
            ensure(&q * &q == next * prev + prod, || {
                format!("{a}: dimensions differ at m={m} l={l}")
            })?;
        }
    }
    Ok(())
}

/// Every cell memoized while building the table to `max_m` satisfies its
/// relation.
pub fn memoized_cells_verify(a: AlgebraType, max_m: u32) -> Check {
    let r = CharRing::new(a);
    let mut t = QTable::kirillov_reshetikhin(&r).map_err(|e| e.to_string())?;
    for l in 1..=a.rank() {
        t.q_char(max_m, l).map_err(|e| e.to_string())?;
    }
    for (m, l) in t.cells() {
        if m == 0 {
            continue;
        }
        ensure(t.verify_relation(m, l).map_err(|e| e.to_string())?, || {
            format!("{a}: relation fails at m={m} l={l}")
        })?;
    }
    Ok(())
}
