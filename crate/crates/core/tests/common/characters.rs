//! Characters from the Weyl character formula, used as an oracle for the
//! Freudenthal and Klimyk computations.
//!
//! Weights are doubled ε-coordinates. Multiplicities of `V(λ)` come from
//! comparing coefficients in `χ_λ · A_ρ = A_{λ+ρ}`, and tensor product
//! multiplicities from `χ_λ χ_μ A_ρ = Σ_ν c_ν A_{ν+ρ}`.

use std::collections::HashMap;

use eigencone::rootdata::WeylElement;

pub type W = [i64; 4];

const RHO: W = [6, 4, 2, 0];
const FUND: [W; 4] = [[2, 0, 0, 0], [2, 2, 0, 0], [1, 1, 1, -1], [1, 1, 1, 1]];
const SIMPLE: [W; 4] = [[2, -2, 0, 0], [0, 2, -2, 0], [0, 0, 2, -2], [0, 0, 2, 2]];

pub fn doubled(a: [i64; 4]) -> W {
    let mut out = [0; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[j] += a[i] * FUND[i][j];
        }
    }
    out
}

fn is_dominant(v: &W) -> bool {
    v[0] >= v[1] && v[1] >= v[2] && v[2] >= v[3].abs()
}

/// Dominant element of the orbit, by reflecting in simple roots while some
/// pairing is negative.
pub fn dominant(v: &W) -> W {
    let mut v = *v;
    loop {
        if v[0] < v[1] {
            v.swap(0, 1);
        } else if v[1] < v[2] {
            v.swap(1, 2);
        } else if v[2] < v[3] {
            v.swap(2, 3);
        } else if v[2] + v[3] < 0 {
            let (a, b) = (v[2], v[3]);
            v[2] = -b;
            v[3] = -a;
        } else {
            return v;
        }
    }
}

/// `ρ − wρ` with the sign of `w`, for `w ≠ 1`.
fn shifts() -> Vec<(W, i64)> {
    WeylElement::all()
        .iter()
        .filter(|w| **w != WeylElement::IDENTITY)
        .map(|w| {
            let wr = w.apply(&RHO);
            (std::array::from_fn(|i| RHO[i] - wr[i]), w.sign())
        })
        .collect()
}

/// All weights of `V(λ)` with multiplicities.
pub struct Character {
    pub top: W,
    pub mult: HashMap<W, i64>,
}

impl Character {
    pub fn get(&self, v: &W) -> i64 {
        self.mult.get(v).copied().unwrap_or(0)
    }

    pub fn of(a: [i64; 4]) -> Character {
        let top = doubled(a);
        // λ − w_oλ = 2λ in simple roots bounds every weight below λ
        let bound = twice_in_simple_roots(&top);
        let mut candidates = Vec::new();
        for n0 in 0..=bound[0] {
            for n1 in 0..=bound[1] {
                for n2 in 0..=bound[2] {
                    for n3 in 0..=bound[3] {
                        let n = [n0, n1, n2, n3];
                        let v: W = std::array::from_fn(|j| {
                            top[j] - (0..4).map(|i| n[i] * SIMPLE[i][j]).sum::<i64>()
                        });
                        if is_dominant(&v) {
                            candidates.push(v);
                        }
                    }
                }
            }
        }
        candidates.sort_by_key(|v| -v.iter().zip(&RHO).map(|(x, r)| x * r).sum::<i64>());
        let shifts = shifts();
        let mut dom: HashMap<W, i64> = HashMap::new();
        for v in candidates {
            let mut m = if v == top { 1 } else { 0 };
            for (s, sign) in &shifts {
                let u: W = std::array::from_fn(|i| v[i] + s[i]);
                m -= sign * dom.get(&dominant(&u)).copied().unwrap_or(0);
            }
            assert!(m >= 0);
            if m > 0 {
                dom.insert(v, m);
            }
        }
        let mut mult = HashMap::new();
        for (v, m) in dom {
            for w in WeylElement::all() {
                mult.insert(w.apply(&v), m);
            }
        }
        Character { top, mult }
    }
}

/// Coefficients of `2λ` in the simple roots, for `λ` given doubled.
fn twice_in_simple_roots(v: &W) -> [i64; 4] {
    [
        v[0],
        v[0] + v[1],
        (v[0] + v[1] + v[2] - v[3]) / 2,
        (v[0] + v[1] + v[2] + v[3]) / 2,
    ]
}

/// Multiplicities of `V(ν)` in `V(λ) ⊗ V(μ)` for the requested ν.
pub fn tensor_decomposition(lam: &Character, mu: &Character, nus: &[[i64; 4]]) -> Vec<i64> {
    let top: W = std::array::from_fn(|i| lam.top[i] + mu.top[i]);
    let (small, big) = if lam.mult.len() <= mu.mult.len() {
        (lam, mu)
    } else {
        (mu, lam)
    };
    let small: Vec<(&W, &i64)> = small.mult.iter().collect();
    let mut product: HashMap<W, i64> = HashMap::new();
    let mut coefficient = |x: &W| -> i64 {
        let d = dominant(x);
        // the product is supported on weights below λ + μ
        let gap: W = std::array::from_fn(|i| top[i] - d[i]);
        if twice_in_simple_roots(&gap).iter().any(|&c| c < 0) {
            return 0;
        }
        *product.entry(d).or_insert_with(|| {
            small
                .iter()
                .map(|(a, m)| *m * big.get(&std::array::from_fn(|i| d[i] - a[i])))
                .sum()
        })
    };
    let all: Vec<(W, i64)> = WeylElement::all()
        .iter()
        .map(|w| {
            let wr = w.apply(&RHO);
            (std::array::from_fn(|i| RHO[i] - wr[i]), w.sign())
        })
        .collect();
    nus.iter()
        .map(|nu| {
            let v = doubled(*nu);
            let gap: W = std::array::from_fn(|i| top[i] - v[i]);
            if gap.iter().any(|x| x % 2 != 0) || gap.iter().sum::<i64>() % 4 != 0 {
                // no weight of the product lies in the coset of ν
                return 0;
            }
            all.iter()
                .map(|(s, sign)| sign * coefficient(&std::array::from_fn(|i| v[i] + s[i])))
                .sum()
        })
        .collect()
}

/// Dominant weights with every fundamental coordinate at most `bound`.
pub fn box_weights(bound: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in 0..=bound {
        for b in 0..=bound {
            for c in 0..=bound {
                for d in 0..=bound {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// A triple with Klimyk's value and the oracle's.
pub type Disagreement = ([[i64; 4]; 3], u64, i64);

/// Compares Klimyk's invariant dimensions with the character oracle on all
/// triples in the box. Returns the number of triples and the disagreements.
pub fn klimyk_disagreements(bound: i64) -> (usize, Vec<Disagreement>) {
    use eigencone::reptensor::{invariant_dim, DominantWeight};
    let weights = box_weights(bound);
    let chars: Vec<Character> = weights.iter().map(|a| Character::of(*a)).collect();
    let mut checked = 0;
    let mut bad = Vec::new();
    for i in 0..weights.len() {
        for j in i..weights.len() {
            let expected = tensor_decomposition(&chars[i], &chars[j], &weights);
            for (k, nu) in weights.iter().enumerate() {
                let got = invariant_dim(
                    DominantWeight(weights[i]),
                    DominantWeight(weights[j]),
                    DominantWeight(*nu),
                );
                if got as i64 != expected[k] {
                    bad.push(([weights[i], weights[j], *nu], got, expected[k]));
                }
                checked += 1;
            }
        }
    }
    (checked, bad)
}
