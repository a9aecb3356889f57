//! Weight multiplicities of irreducible Spin(8)-modules and dimensions of
//! invariants in triple tensor products.
//!
//! Weights are handled in doubled ε-coordinates so that every weight of the
//! weight lattice is an integer vector.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::format_weight;
use crate::rootdata::{positive_roots, Weight, WeylElement};
use crate::triangles::full_system;

/// Twice the ε-coordinates of a weight.
pub type Doubled = [i64; 4];

const DOUBLED_FUNDAMENTAL: [Doubled; 4] = [[2, 0, 0, 0], [2, 2, 0, 0], [1, 1, 1, -1], [1, 1, 1, 1]];
const DOUBLED_RHO: Doubled = [6, 4, 2, 0];

fn add(a: &Doubled, b: &Doubled) -> Doubled {
    std::array::from_fn(|i| a[i] + b[i])
}

fn sub(a: &Doubled, b: &Doubled) -> Doubled {
    std::array::from_fn(|i| a[i] - b[i])
}

fn dot(a: &Doubled, b: &Doubled) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The dominant weight in the Weyl orbit of `v`: absolute values sorted
/// decreasingly, with the last sign fixed by the parity of sign changes.
pub fn dominant_rep(v: &Doubled) -> Doubled {
    let negatives = v.iter().filter(|&&x| x < 0).count();
    let mut out = v.map(i64::abs);
    out.sort_unstable_by(|a, b| b.cmp(a));
    if negatives % 2 == 1 {
        out[3] = -out[3];
    }
    out
}

fn weyl_signs() -> &'static [(WeylElement, i64)] {
    static SIGNS: OnceLock<Vec<(WeylElement, i64)>> = OnceLock::new();
    SIGNS.get_or_init(|| {
        // ν* = −w_o ν is ν itself only because w_o = −1
        assert_eq!(
            WeylElement::longest().apply(&[1i64, 2, 3, 4]),
            [-1, -2, -3, -4]
        );
        WeylElement::all().iter().map(|w| (*w, w.sign())).collect()
    })
}

/// A dominant weight `Σ a_i ω_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominantWeight(pub [i64; 4]);

impl DominantWeight {
    pub const ZERO: DominantWeight = DominantWeight([0; 4]);

    pub fn new(a: [i64; 4]) -> Result<Self> {
        if a.iter().any(|&x| x < 0) {
            return Err(Error::NotDominant(format_weight(&a)));
        }
        Ok(Self(a))
    }

    pub fn fundamental(i: u8) -> Result<Self> {
        let mut a = [0; 4];
        *a.get_mut((i as usize).wrapping_sub(1))
            .ok_or(Error::InvalidNode(i))? = 1;
        Ok(Self(a))
    }

    pub fn coords(&self) -> [i64; 4] {
        self.0
    }

    pub fn doubled(&self) -> Doubled {
        (0..4).fold([0; 4], |acc, i| {
            add(&acc, &DOUBLED_FUNDAMENTAL[i].map(|x| x * self.0[i]))
        })
    }

    /// Inverse of [`doubled`](Self::doubled) on dominant weights.
    pub fn from_doubled(d: &Doubled) -> Result<Self> {
        // ⟨λ, α_i∨⟩ in doubled coordinates, halved
        let pairings = [d[0] - d[1], d[1] - d[2], d[2] - d[3], d[2] + d[3]];
        if pairings.iter().any(|p| p % 2 != 0) {
            return Err(Error::NotInWeightLattice(format!("{d:?}/2")));
        }
        Self::new(pairings.map(|p| p / 2))
    }

    pub fn weight(&self) -> Weight {
        Weight::from_fundamental(self.0)
    }

    pub fn from_weight(w: &Weight) -> Result<Self> {
        let c = w.fundamental_coords();
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::NotInWeightLattice(w.to_string()));
        }
        let a: [i64; 4] =
            std::array::from_fn(|i| i64::try_from(c[i].to_integer()).expect("small weight"));
        Self::new(a)
    }

    pub fn scale(&self, n: i64) -> Self {
        Self(self.0.map(|x| x * n))
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_weight(&self.0))
    }
}

/// `∏_{β>0} ⟨λ+ρ, β∨⟩ / ⟨ρ, β∨⟩`.
pub fn weyl_dimension(lam: DominantWeight) -> u128 {
    let l = add(&lam.doubled(), &DOUBLED_RHO);
    let (mut num, mut den) = (1u128, 1u128);
    for b in positive_roots() {
        num *= dot(&l, &b) as u128;
        den *= dot(&DOUBLED_RHO, &b) as u128;
    }
    debug_assert_eq!(num % den, 0);
    num / den
}

/// Multiplicities of all weights of `V(λ)`.
#[derive(Clone, Debug)]
pub struct WeightMultiplicityTable {
    pub highest: DominantWeight,
    /// Dominant weights only.
    pub dominant: BTreeMap<Doubled, u64>,
    all: HashMap<Doubled, u64>,
}

impl WeightMultiplicityTable {
    pub fn get(&self, w: &Doubled) -> u64 {
        self.all.get(w).copied().unwrap_or(0)
    }

    pub fn weights(&self) -> impl Iterator<Item = (&Doubled, &u64)> {
        self.all.iter()
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> u128 {
        self.all.values().map(|&m| m as u128).sum()
    }
}

fn orbit(v: &Doubled) -> HashSet<Doubled> {
    WeylElement::all().iter().map(|w| w.apply(v)).collect()
}

/// Dominant weights `μ ≤ λ`, reached from λ through chains of dominant
/// weights differing by positive roots.
fn dominant_weights_below(top: &Doubled) -> Vec<Doubled> {
    let roots: Vec<Doubled> = positive_roots().iter().map(|b| b.map(|x| 2 * x)).collect();
    let mut seen: HashSet<Doubled> = HashSet::from([*top]);
    let mut stack = vec![*top];
    while let Some(m) = stack.pop() {
        for b in &roots {
            let n = sub(&m, b);
            if dominant_rep(&n) == n && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    let mut out: Vec<Doubled> = seen.into_iter().collect();
    // decreasing height, so that everything above a weight comes first
    out.sort_by_key(|m| (-dot(m, &DOUBLED_RHO), *m));
    out
}

/// Freudenthal's recursion over the dominant weights of `V(λ)`.
fn freudenthal(lam: DominantWeight) -> WeightMultiplicityTable {
    let top = lam.doubled();
    let roots: Vec<Doubled> = positive_roots().iter().map(|b| b.map(|x| 2 * x)).collect();
    let norm_top = {
        let t = add(&top, &DOUBLED_RHO);
        dot(&t, &t)
    };
    let mut dominant: BTreeMap<Doubled, u64> = BTreeMap::new();
    for m in dominant_weights_below(&top) {
        if m == top {
            dominant.insert(m, 1);
            continue;
        }
        // 2 Σ_{β>0} Σ_{k≥1} m(μ+kβ) (μ+kβ, β), all inner products scaled by 4
        let mut num: i128 = 0;
        for b in &roots {
            let mut k = 1;
            loop {
                let w = add(&m, &b.map(|x| x * k));
                let Some(&mw) = dominant.get(&dominant_rep(&w)) else {
                    break;
                };
                num += 2 * mw as i128 * dot(&w, b) as i128;
                k += 1;
            }
        }
        let mr = add(&m, &DOUBLED_RHO);
        let den = (norm_top - dot(&mr, &mr)) as i128;
        assert!(den > 0 && num % den == 0, "Freudenthal recursion at {m:?}");
        let mult = (num / den) as u64;
        if mult > 0 {
            dominant.insert(m, mult);
        }
    }
    let mut all = HashMap::new();
    for (m, &k) in &dominant {
        for w in orbit(m) {
            all.insert(w, k);
        }
    }
    WeightMultiplicityTable {
        highest: lam,
        dominant,
        all,
    }
}

/// Memoized multiplicity table of `V(λ)`.
pub fn weight_multiplicities(lam: DominantWeight) -> Arc<WeightMultiplicityTable> {
    static CACHE: OnceLock<Mutex<HashMap<DominantWeight, Arc<WeightMultiplicityTable>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&lam) {
        return t.clone();
    }
    let t = Arc::new(freudenthal(lam));
    cache.lock().unwrap().entry(lam).or_insert(t).clone()
}

/// Multiplicity of `V(ν)` in `V(λ) ⊗ V(μ)` by Klimyk's formula
/// `Σ_w sign(w) m_μ(w(ν+ρ) − λ − ρ)`.
pub fn tensor_multiplicity(lam: DominantWeight, mu: DominantWeight, nu: DominantWeight) -> u64 {
    let table = weight_multiplicities(mu);
    let shift = add(&lam.doubled(), &DOUBLED_RHO);
    let nr = add(&nu.doubled(), &DOUBLED_RHO);
    let total: i128 = weyl_signs()
        .iter()
        .map(|(w, s)| *s as i128 * table.get(&sub(&w.apply(&nr), &shift)) as i128)
        .sum();
    assert!(total >= 0, "negative Klimyk sum");
    total as u64
}

/// `dim (V(λ) ⊗ V(μ) ⊗ V(ν))^{Spin(8)}`, the multiplicity of `V(ν*) = V(ν)`
/// in `V(λ) ⊗ V(μ)`. The factor of smallest dimension supplies the weight
/// table.
pub fn invariant_dim(lam: DominantWeight, mu: DominantWeight, nu: DominantWeight) -> u64 {
    let mut t = [lam, mu, nu];
    t.sort_by_key(|w| (weyl_dimension(*w), *w));
    tensor_multiplicity(t[1], t[0], t[2])
}

/// Sum of the triple lies in the root lattice.
pub fn in_root_lattice(t: &[DominantWeight; 3]) -> bool {
    let s = t.iter().fold([0; 4], |acc, w| add(&acc, &w.doubled()));
    s.iter().all(|x| x % 2 == 0) && s.iter().sum::<i64>() % 4 == 0
}

/// Membership of a triple in the eigencone.
pub struct ConeTest {
    functionals: Vec<[i64; 12]>,
}

impl ConeTest {
    pub fn new() -> Result<Self> {
        Ok(Self {
            functionals: full_system()?.iter().map(|i| i.coefficients).collect(),
        })
    }

    pub fn contains(&self, t: &[DominantWeight; 3]) -> bool {
        let mut point = [0i64; 12];
        for (b, w) in t.iter().enumerate() {
            point[4 * b..4 * b + 4].copy_from_slice(&w.doubled());
        }
        self.functionals
            .iter()
            .all(|f| f.iter().zip(&point).map(|(a, x)| a * x).sum::<i64>() >= 0)
    }
}

fn triple_string(t: &[DominantWeight; 3]) -> String {
    format!("({}, {}, {})", t[0], t[1], t[2])
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TripleRecord {
    pub triple: [DominantWeight; 3],
    pub invariant_dim: u64,
    pub in_cone: bool,
}

impl TripleRecord {
    fn evaluate(t: [DominantWeight; 3], cone: &ConeTest) -> Self {
        Self {
            triple: t,
            invariant_dim: invariant_dim(t[0], t[1], t[2]),
            in_cone: cone.contains(&t),
        }
    }

    /// Invariants can only occur inside the cone.
    pub fn respects_cone(&self) -> bool {
        self.invariant_dim == 0 || self.in_cone
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub rows: Vec<TripleRecord>,
}

impl GeneratorReport {
    pub fn all_positive(&self) -> bool {
        self.rows.iter().all(|r| r.invariant_dim > 0)
    }

    pub fn passed(&self) -> bool {
        self.all_positive() && self.rows.iter().all(|r| r.in_cone)
    }

    pub fn markdown(&self) -> String {
        let mut s = String::from(
            "# Invariants of the generators\n\n| (λ, μ, ν) | dim invariants | in cone |\n|---|---|---|\n",
        );
        for r in &self.rows {
            s.push_str(&format!(
                "| {} | {} | {} |\n",
                triple_string(&r.triple),
                r.invariant_dim,
                r.in_cone
            ));
        }
        s
    }
}

pub fn verify_generators(reps: &[[[i64; 4]; 3]]) -> Result<GeneratorReport> {
    let cone = ConeTest::new()?;
    let triples: Vec<[DominantWeight; 3]> = reps
        .iter()
        .map(|t| {
            Ok([
                DominantWeight::new(t[0])?,
                DominantWeight::new(t[1])?,
                DominantWeight::new(t[2])?,
            ])
        })
        .collect::<Result<_>>()?;
    let rows: Vec<TripleRecord> = triples
        .par_iter()
        .map(|t| TripleRecord::evaluate(*t, &cone))
        .collect();
    if let Some(r) = rows.iter().find(|r| !r.respects_cone()) {
        return Err(Error::Invariant(format!(
            "{} has invariants outside the cone",
            triple_string(&r.triple)
        )));
    }
    Ok(GeneratorReport { rows })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SaturationReport {
    pub seed: u64,
    pub count: usize,
    pub bound: i64,
    pub in_cone: usize,
    pub with_invariants: usize,
    /// Triples where cone membership and the existence of invariants disagree.
    pub violations: Vec<TripleRecord>,
}

impl SaturationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} triples (seed {}, coordinates ≤ {}): {} in the cone, {} with invariants, {} violations",
            self.count,
            self.seed,
            self.bound,
            self.in_cone,
            self.with_invariants,
            self.violations.len()
        )
    }
}

/// Uniform triples of dominant weights with coordinates in `0..=bound`
/// whose sum lies in the root lattice.
pub fn sample_triples(count: usize, bound: i64, seed: u64) -> Vec<[DominantWeight; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let t: [DominantWeight; 3] = std::array::from_fn(|_| {
            DominantWeight(std::array::from_fn(|_| rng.gen_range(0..=bound)))
        });
        if in_root_lattice(&t) {
            out.push(t);
        }
    }
    out
}

/// Checks `(λ,μ,ν) ∈ 𝓒 ⇔ dim (V(λ)⊗V(μ)⊗V(ν))^G > 0` on random triples.
pub fn saturation_sample(count: usize, bound: i64, seed: u64) -> Result<SaturationReport> {
    let cone = ConeTest::new()?;
    let triples = sample_triples(count, bound, seed);
    let rows: Vec<TripleRecord> = triples
        .par_iter()
        .map(|t| TripleRecord::evaluate(*t, &cone))
        .collect();
    Ok(SaturationReport {
        seed,
        count,
        bound,
        in_cone: rows.iter().filter(|r| r.in_cone).count(),
        with_invariants: rows.iter().filter(|r| r.invariant_dim > 0).count(),
        violations: rows
            .into_iter()
            .filter(|r| r.in_cone != (r.invariant_dim > 0))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: [i64; 4]) -> DominantWeight {
        DominantWeight::new(a).unwrap()
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(weyl_dimension(DominantWeight::ZERO), 1);
        for i in [1, 3, 4] {
            assert_eq!(weyl_dimension(DominantWeight::fundamental(i).unwrap()), 8);
        }
        assert_eq!(weyl_dimension(w([0, 1, 0, 0])), 28);
    }

    #[test]
    fn vector_and_adjoint_weights() {
        let v = weight_multiplicities(w([1, 0, 0, 0]));
        assert_eq!(v.len(), 8);
        assert!(v
            .weights()
            .all(|(x, &m)| m == 1 && x.iter().map(|c| c.abs()).sum::<i64>() == 2));
        let adj = weight_multiplicities(w([0, 1, 0, 0]));
        assert_eq!(adj.len(), 25);
        assert_eq!(adj.get(&[0; 4]), 4);
        assert_eq!(adj.total(), 28);
        let triv = weight_multiplicities(DominantWeight::ZERO);
        assert_eq!(triv.dominant, BTreeMap::from([([0; 4], 1)]));
    }

    #[test]
    fn doubled_roundtrip() {
        for a in [[0, 0, 0, 0], [1, 2, 3, 4], [0, 1, 0, 3]] {
            assert_eq!(DominantWeight::from_doubled(&w(a).doubled()).unwrap(), w(a));
            assert_eq!(DominantWeight::from_weight(&w(a).weight()).unwrap(), w(a));
        }
        assert!(w([1, 1, 1, 1]).weight().is_dominant());
        assert!(matches!(
            DominantWeight::new([0, -1, 0, 0]),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn invariant_examples() {
        let z = DominantWeight::ZERO;
        assert_eq!(invariant_dim(z, z, z), 1);
        assert_eq!(invariant_dim(w([1, 0, 0, 0]), w([1, 0, 0, 0]), z), 1);
        assert!(invariant_dim(w([1, 0, 0, 0]), w([0, 0, 1, 0]), w([0, 0, 0, 1])) > 0);
        assert_eq!(invariant_dim(w([2, 0, 0, 0]), z, z), 0);
    }

    #[test]
    fn dominant_representatives() {
        assert_eq!(dominant_rep(&[0, -2, 4, 1]), [4, 2, 1, 0]);
        assert_eq!(dominant_rep(&[-1, 1, 1, 1]), [1, 1, 1, -1]);
        assert_eq!(dominant_rep(&[-1, -1, 1, 1]), [1, 1, 1, 1]);
    }
}
