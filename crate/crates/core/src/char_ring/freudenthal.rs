//! Weight multiplicities of irreducible modules via Freudenthal's recursion.

use crate::root_data::{RootSystem, Weight};
use rustc_hash::FxHashMap;

/// Full weight system of one irreducible module `V(lambda)`.
#[derive(Debug, Clone)]
pub struct WeightSystem {
    highest: Weight,
    dominant: Vec<(Weight, i64)>,
    weights: FxHashMap<Weight, i64>,
}

impl WeightSystem {
    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    /// Dominant weights with multiplicities, highest first.
    pub fn dominant(&self) -> &[(Weight, i64)] {
        &self.dominant
    }

    pub fn weights(&self) -> &FxHashMap<Weight, i64> {
        &self.weights
    }

    pub fn multiplicity(&self, w: &Weight) -> i64 {
        self.weights.get(w).copied().unwrap_or(0)
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn dimension(&self) -> i64 {
        self.weights.values().sum()
    }
}

pub(crate) fn compute(rs: &RootSystem, lambda: &Weight) -> WeightSystem {
    let mut dominant = rs.dominant_weights_upto(lambda);
    dominant.sort_by_key(|w| std::cmp::Reverse(rs.division_key(w)));

    let rho = rs.weyl_vector();
    let shifted = |w: &Weight| -> i64 {
        let v = w + rho;
        rs.scaled_form(v.coords(), v.coords())
    };
    let top = shifted(lambda);

    let mut mult: FxHashMap<Weight, i64> = FxHashMap::default();
    for w in &dominant {
        mult.insert(w.clone(), 0);
    }
    mult.insert(lambda.clone(), 1);

    let mut scratch = vec![0i32; rs.rank()];
    for mu in dominant.iter().skip(1) {
        let mut numerator = 0i64;
        for root in rs.positive_roots() {
            let alpha = root.weight.coords();
            let mut k = 1;
            loop {
                for (s, (m, a)) in scratch.iter_mut().zip(mu.coords().iter().zip(alpha)) {
                    *s = m + k * a;
                }
                let pairing = rs.scaled_form(&scratch, alpha);
                rs.to_dominant_in_place(&mut scratch);
                match mult.get(scratch.as_slice()) {
                    Some(&m) => numerator += pairing * m,
                    None => break,
                }
                k += 1;
            }
        }
        let denominator = top - shifted(mu);
        debug_assert!(denominator > 0);
        let m = 2 * numerator / denominator;
        debug_assert_eq!(
            2 * numerator % denominator,
            0,
            "Freudenthal remainder at {mu}"
        );
        mult.insert(mu.clone(), m);
    }

    let dominant: Vec<(Weight, i64)> = dominant
        .into_iter()
        .map(|w| {
            let m = mult[&w];
            (w, m)
        })
        .collect();

    let mut weights: FxHashMap<Weight, i64> = FxHashMap::default();
    for (w, m) in &dominant {
        if *m == 0 {
            continue;
        }
        let mut stack = vec![w.clone()];
        weights.insert(w.clone(), *m);
        while let Some(v) = stack.pop() {
            for i in 0..rs.rank() {
                if v.coords()[i] > 0 {
                    let mut u = v.clone();
                    rs.reflect_in_place(u.coords_mut(), i);
                    if !weights.contains_key(&u) {
                        weights.insert(u.clone(), *m);
                        stack.push(u);
                    }
                }
            }
        }
    }

    WeightSystem {
        highest: lambda.clone(),
        dominant,
        weights,
    }
}
