//! Characters of `sl_N` modules as Schur polynomials, computed by the
//! branching rule and projected to weights. Shares nothing with the ring.

use krchar_core::{FormalCharacter, Weight};
use std::collections::HashMap;

/// Weight (fundamental coordinates) -> multiplicity.
pub type Char = HashMap<Vec<i32>, i64>;

pub struct SchurModel {
    vars: usize,
    memo: HashMap<(Vec<u32>, usize), HashMap<Vec<u32>, i64>>,
}

impl SchurModel {
    pub fn new(vars: usize) -> Self {
        SchurModel {
            vars,
            memo: HashMap::new(),
        }
    }

    fn partition(&self, lambda: &Weight) -> Vec<u32> {
        let c = lambda.coords();
        let mut p = vec![0u32; self.vars];
        for i in (0..c.len()).rev() {
            p[i] = p[i + 1] + c[i] as u32;
        }
        p
    }

    /// Monomial exponents of `s_lambda(x_1..x_k)`; `lambda` has length `k`.
    fn contents(&mut self, lambda: &[u32], k: usize) -> HashMap<Vec<u32>, i64> {
        if k == 0 {
            return HashMap::from([(Vec::new(), 1)]);
        }
        let key = (lambda.to_vec(), k);
        if let Some(c) = self.memo.get(&key) {
            return c.clone();
        }
        let total: u32 = lambda.iter().sum();
        let mut out: HashMap<Vec<u32>, i64> = HashMap::new();
        for mu in interlacing(lambda) {
            let rest: u32 = mu.iter().sum();
            for (e, m) in self.contents(&mu, k - 1) {
                let mut e = e;
                e.push(total - rest);
                *out.entry(e).or_default() += m;
            }
        }
        self.memo.insert(key, out.clone());
        out
    }

    pub fn irreducible(&mut self, lambda: &Weight) -> Char {
        let p = self.partition(lambda);
        let mut out = Char::new();
        for (e, m) in self.contents(&p, self.vars) {
            let wt: Vec<i32> = e.windows(2).map(|x| x[0] as i32 - x[1] as i32).collect();
            *out.entry(wt).or_default() += m;
        }
        out
    }

    pub fn character(&mut self, c: &FormalCharacter) -> Char {
        let mut out = Char::new();
        for (lambda, m) in c.terms() {
            for (wt, k) in self.irreducible(lambda) {
                *out.entry(wt).or_default() += k * m as i64;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

/// Partitions `mu` of length `len - 1` with `lambda_i >= mu_i >= lambda_{i+1}`.
fn interlacing(lambda: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for i in 0..lambda.len() - 1 {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (lambda[i + 1]..=lambda[i]).map(move |x| {
                    let mut u = v.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

pub fn mul(a: &Char, b: &Char) -> Char {
    let mut out = Char::new();
    for (x, m) in a {
        for (y, k) in b {
            let s: Vec<i32> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            *out.entry(s).or_default() += m * k;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn add(a: &Char, b: &Char) -> Char {
    let mut out = a.clone();
    for (x, m) in b {
        *out.entry(x.clone()).or_default() += m;
    }
    out.retain(|_, v| *v != 0);
    out
}
