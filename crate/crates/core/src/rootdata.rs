//! The D4 root system in ε-coordinates (Bourbaki numbering), its Weyl group of
//! signed permutations with an even number of sign changes, minimal coset
//! representatives for the four maximal parabolics, and the triality group of
//! diagram automorphisms.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, rat, rat_int, Matrix, Rational};

pub const RANK: usize = 4;
pub const WEYL_ORDER: usize = 192;

fn check_node(i: u8) -> Result<usize> {
    if (1..=4).contains(&i) {
        Ok(i as usize - 1)
    } else {
        Err(Error::InvalidNode(i))
    }
}

macro_rules! coordinate_vector {
    ($name:ident) => {
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub [Rational; 4]);

        impl $name {
            pub fn zero() -> Self {
                Self(std::array::from_fn(|_| Rational::zero()))
            }

            pub fn from_ints(v: [i64; 4]) -> Self {
                Self(v.map(rat_int))
            }

            /// Builds a vector from twice its coordinates.
            pub fn from_halves(v: [i64; 4]) -> Self {
                Self(v.map(|x| rat(x, 2)))
            }

            pub fn coords(&self) -> &[Rational; 4] {
                &self.0
            }

            /// Twice the coordinates, if they are all integral.
            pub fn doubled(&self) -> Option<[i64; 4]> {
                let mut out = [0i64; 4];
                for (o, x) in out.iter_mut().zip(&self.0) {
                    let d = x * rat_int(2);
                    if !d.is_integer() {
                        return None;
                    }
                    *o = i64::try_from(d.to_integer()).ok()?;
                }
                Some(out)
            }

            pub fn scale(&self, k: &Rational) -> Self {
                Self(std::array::from_fn(|i| &self.0[i] * k))
            }

            /// `x ≥ y ≥ z ≥ |w|`, the closed dominant chamber.
            pub fn is_dominant(&self) -> bool {
                let [x, y, z, w] = &self.0;
                x >= y && y >= z && *z >= w.abs()
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: Self) -> $name {
                $name(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: Self) -> $name {
                $name(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(std::array::from_fn(|i| -self.0[i].clone()))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(
                    f,
                    "({}, {}, {}, {})",
                    self.0[0], self.0[1], self.0[2], self.0[3]
                )
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{}", stringify!($name), self)
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let strs: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
                strs.serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let strs: Vec<String> = Vec::deserialize(d)?;
                if strs.len() != 4 {
                    return Err(serde::de::Error::custom("expected four coordinates"));
                }
                let mut out = Self::zero();
                for (o, s) in out.0.iter_mut().zip(&strs) {
                    *o = s.parse().map_err(serde::de::Error::custom)?;
                }
                Ok(out)
            }
        }
    };
}

coordinate_vector!(Weight);
coordinate_vector!(CoWeight);

impl Weight {
    pub fn dot(&self, other: &Weight) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn pair(&self, h: &CoWeight) -> Rational {
        self.0.iter().zip(&h.0).map(|(a, b)| a * b).sum()
    }

    /// Coordinates `⟨λ, α_i∨⟩` in the basis of fundamental weights.
    pub fn fundamental_coords(&self) -> [Rational; 4] {
        std::array::from_fn(|i| self.dot(&simple_root(i as u8 + 1).unwrap()))
    }

    pub fn from_fundamental(c: [i64; 4]) -> Weight {
        (0..4).fold(Weight::zero(), |acc, i| {
            &acc + &fundamental_weight(i as u8 + 1)
                .unwrap()
                .scale(&rat_int(c[i]))
        })
    }

    /// Integral fundamental coordinates (the weight lattice P).
    pub fn in_weight_lattice(&self) -> bool {
        self.fundamental_coords().iter().all(|c| c.is_integer())
    }

    /// Integer ε-coordinates with even sum (the root lattice Q).
    pub fn in_root_lattice(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
            && self
                .0
                .iter()
                .map(|c| c.to_integer())
                .sum::<num_bigint::BigInt>()
                % 2
                == num_bigint::BigInt::zero()
    }

    pub fn to_coweight(&self) -> CoWeight {
        CoWeight(self.0.clone())
    }
}

impl CoWeight {
    pub fn to_weight(&self) -> Weight {
        Weight(self.0.clone())
    }
}

/// ω_i in ε-coordinates.
pub fn fundamental_weight(i: u8) -> Result<Weight> {
    Ok(match check_node(i)? {
        0 => Weight::from_ints([1, 0, 0, 0]),
        1 => Weight::from_ints([1, 1, 0, 0]),
        2 => Weight::from_halves([1, 1, 1, -1]),
        _ => Weight::from_halves([1, 1, 1, 1]),
    })
}

/// The coweight `x_i` with `α_j(x_i) = δ_ij`.
pub fn fundamental_coweight(i: u8) -> Result<CoWeight> {
    fundamental_weight(i).map(|w| w.to_coweight())
}

/// α_i in ε-coordinates.
pub fn simple_root(i: u8) -> Result<Weight> {
    Ok(Weight::from_ints(simple_root_ints(check_node(i)?)))
}

fn simple_root_ints(idx: usize) -> [i64; 4] {
    match idx {
        0 => [1, -1, 0, 0],
        1 => [0, 1, -1, 0],
        2 => [0, 0, 1, -1],
        _ => [0, 0, 1, 1],
    }
}

pub fn rho() -> Weight {
    Weight::from_ints([3, 2, 1, 0])
}

/// The twelve positive roots `ε_i ± ε_j`, `i < j`.
pub fn positive_roots() -> Vec<[i64; 4]> {
    let mut out = Vec::with_capacity(12);
    for i in 0..4 {
        for j in i + 1..4 {
            let mut minus = [0; 4];
            minus[i] = 1;
            minus[j] = -1;
            out.push(minus);
            let mut plus = [0; 4];
            plus[i] = 1;
            plus[j] = 1;
            out.push(plus);
        }
    }
    out
}

fn is_negative_root(v: &[i64; 4]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)
}

/// A Weyl group element stored as the signed permutation
/// `ε_i ↦ signs[i] · ε_{perm[i]}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: [u8; 4],
    signs: [i8; 4],
}

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement {
        perm: [0, 1, 2, 3],
        signs: [1, 1, 1, 1],
    };

    pub fn new(perm: [u8; 4], signs: [i8; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &p in &perm {
            if p > 3 || seen[p as usize] {
                return Err(Error::InvalidWeylElement(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen[p as usize] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidWeylElement(format!("bad signs {signs:?}")));
        }
        if signs.iter().filter(|&&s| s < 0).count() % 2 != 0 {
            return Err(Error::InvalidWeylElement(
                "odd number of sign changes".to_string(),
            ));
        }
        Ok(Self { perm, signs })
    }

    pub fn perm(&self) -> [u8; 4] {
        self.perm
    }

    pub fn signs(&self) -> [i8; 4] {
        self.signs
    }

    pub fn simple_reflection(i: u8) -> Result<Self> {
        let idx = check_node(i)?;
        let (perm, signs) = match idx {
            0 => ([1, 0, 2, 3], [1, 1, 1, 1]),
            1 => ([0, 2, 1, 3], [1, 1, 1, 1]),
            2 => ([0, 1, 3, 2], [1, 1, 1, 1]),
            _ => ([0, 1, 3, 2], [1, 1, -1, -1]),
        };
        Ok(Self { perm, signs })
    }

    /// The reflection `s_β` for a root `β = ±ε_i ± ε_j`.
    pub fn reflection(beta: &[i64; 4]) -> Result<Self> {
        let support: Vec<usize> = (0..4).filter(|&k| beta[k] != 0).collect();
        if support.len() != 2 || support.iter().any(|&k| beta[k].abs() != 1) {
            return Err(Error::InvalidWeylElement(format!("{beta:?} is not a root")));
        }
        let (i, j) = (support[0], support[1]);
        let mut perm = [0u8, 1, 2, 3];
        perm.swap(i, j);
        let mut signs = [1i8; 4];
        if beta[i] == beta[j] {
            signs[i] = -1;
            signs[j] = -1;
        }
        Ok(Self { perm, signs })
    }

    /// The product `s_{word[0]} s_{word[1]} ⋯`.
    pub fn from_word(word: &[u8]) -> Result<Self> {
        word.iter().try_fold(Self::IDENTITY, |acc, &i| {
            Ok(acc * Self::simple_reflection(i)?)
        })
    }

    pub fn apply<T: Clone + Neg<Output = T>>(&self, v: &[T; 4]) -> [T; 4] {
        let mut out: [Option<T>; 4] = [None, None, None, None];
        for i in 0..4 {
            let x = v[i].clone();
            out[self.perm[i] as usize] = Some(if self.signs[i] < 0 { -x } else { x });
        }
        out.map(|x| x.unwrap())
    }

    pub fn act(&self, v: &Weight) -> Weight {
        Weight(self.apply(&v.0))
    }

    pub fn act_coweight(&self, h: &CoWeight) -> CoWeight {
        CoWeight(self.apply(&h.0))
    }

    pub fn inverse(&self) -> Self {
        let mut perm = [0u8; 4];
        let mut signs = [1i8; 4];
        for i in 0..4 {
            perm[self.perm[i] as usize] = i as u8;
            signs[self.perm[i] as usize] = self.signs[i];
        }
        Self { perm, signs }
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        positive_roots()
            .iter()
            .filter(|b| is_negative_root(&self.apply(b)))
            .count()
    }

    pub fn sign(&self) -> i64 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `ℓ(w s_i) < ℓ(w)`, i.e. `w α_i < 0`.
    pub fn has_right_descent(&self, i: u8) -> bool {
        let idx = i as usize - 1;
        is_negative_root(&self.apply(&simple_root_ints(idx)))
    }

    pub fn has_left_descent(&self, i: u8) -> bool {
        self.inverse().has_right_descent(i)
    }

    /// The lexicographically smallest reduced word, found by repeatedly
    /// stripping the smallest left descent.
    pub fn canonical_word(&self) -> Vec<u8> {
        let mut word = Vec::new();
        let mut w = *self;
        while w != Self::IDENTITY {
            let i = (1..=4).find(|&i| w.has_left_descent(i)).unwrap();
            word.push(i);
            w = Self::simple_reflection(i).unwrap() * w;
        }
        word
    }

    pub fn word_string(&self) -> String {
        word_to_string(&self.canonical_word())
    }

    /// All 192 elements, sorted by length and then canonical word.
    pub fn all() -> &'static [WeylElement] {
        static ALL: OnceLock<Vec<WeylElement>> = OnceLock::new();
        ALL.get_or_init(|| {
            let mut elems = generate(&[1, 2, 3, 4]);
            sort_canonical(&mut elems);
            elems
        })
    }

    pub fn longest() -> WeylElement {
        longest_in(&[1, 2, 3, 4]).unwrap()
    }

    /// Image under a diagram automorphism (`s_i ↦ s_{σ(i)}`).
    pub fn transport(&self, g: &DiagramAutomorphism) -> WeylElement {
        let word: Vec<u8> = self.canonical_word().iter().map(|&i| g.node(i)).collect();
        Self::from_word(&word).unwrap()
    }
}

impl Mul for WeylElement {
    type Output = WeylElement;

    fn mul(self, rhs: WeylElement) -> WeylElement {
        let mut perm = [0u8; 4];
        let mut signs = [1i8; 4];
        for i in 0..4 {
            let j = rhs.perm[i] as usize;
            perm[i] = self.perm[j];
            signs[i] = rhs.signs[i] * self.signs[j];
        }
        WeylElement { perm, signs }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W[{}]", self.word_string())
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.canonical_word().serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeylElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let word: Vec<u8> = Vec::deserialize(d)?;
        WeylElement::from_word(&word).map_err(serde::de::Error::custom)
    }
}

pub fn word_to_string(word: &[u8]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|i| format!("s{i}")).collect()
}

/// Parses `e`, `s2s4s1` or `s_2s_4s_1` (spaces ignored).
pub fn parse_word(s: &str) -> Result<Vec<u8>> {
    let cleaned: String = s
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .collect();
    if cleaned == "e" || cleaned == "1" || cleaned.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut chars = cleaned.chars();
    while let Some(c) = chars.next() {
        if c != 's' {
            return Err(Error::Parse(format!("bad word {s:?}")));
        }
        let d = chars
            .next()
            .and_then(|d| d.to_digit(10))
            .ok_or_else(|| Error::Parse(format!("bad word {s:?}")))?;
        check_node(d as u8)?;
        out.push(d as u8);
    }
    Ok(out)
}

fn generate(nodes: &[u8]) -> Vec<WeylElement> {
    let gens: Vec<WeylElement> = nodes
        .iter()
        .map(|&i| WeylElement::simple_reflection(i).unwrap())
        .collect();
    let mut seen = BTreeSet::from([WeylElement::IDENTITY]);
    let mut queue = VecDeque::from([WeylElement::IDENTITY]);
    while let Some(w) = queue.pop_front() {
        for &g in &gens {
            let x = w * g;
            if seen.insert(x) {
                queue.push_back(x);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn sort_canonical(elems: &mut [WeylElement]) {
    elems.sort_by_cached_key(|w| (w.length(), w.canonical_word()));
}

/// The longest element of the subgroup generated by `{s_i : i ∈ nodes}`.
pub fn longest_in(nodes: &[u8]) -> Result<WeylElement> {
    for &i in nodes {
        check_node(i)?;
    }
    Ok(generate(nodes)
        .into_iter()
        .max_by_key(|w| w.length())
        .unwrap())
}

/// A standard maximal parabolic `P_i`: its Levi is generated by `s_j`, `j ≠ i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Parabolic(u8);

impl TryFrom<u8> for Parabolic {
    type Error = Error;
    fn try_from(i: u8) -> Result<Self> {
        Parabolic::new(i)
    }
}

impl From<Parabolic> for u8 {
    fn from(p: Parabolic) -> u8 {
        p.0
    }
}

impl fmt::Display for Parabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

impl Parabolic {
    pub fn new(i: u8) -> Result<Self> {
        check_node(i)?;
        Ok(Self(i))
    }

    pub fn all() -> [Parabolic; 4] {
        [Self(1), Self(2), Self(3), Self(4)]
    }

    pub fn node(&self) -> u8 {
        self.0
    }

    pub fn levi_nodes(&self) -> Vec<u8> {
        (1..=4).filter(|&j| j != self.0).collect()
    }

    pub fn omega(&self) -> Weight {
        fundamental_weight(self.0).unwrap()
    }

    pub fn coweight(&self) -> CoWeight {
        fundamental_coweight(self.0).unwrap()
    }

    pub fn is_min_rep(&self, w: &WeylElement) -> bool {
        self.levi_nodes().iter().all(|&j| !w.has_right_descent(j))
    }

    /// `W^P`, sorted by length and canonical word.
    pub fn min_coset_reps(&self) -> Vec<WeylElement> {
        WeylElement::all()
            .iter()
            .copied()
            .filter(|w| self.is_min_rep(w))
            .collect()
    }

    pub fn levi_longest(&self) -> WeylElement {
        longest_in(&self.levi_nodes()).unwrap()
    }

    /// `w_o^P = w_o · w_{o,P}`.
    pub fn longest_rep(&self) -> WeylElement {
        WeylElement::longest() * self.levi_longest()
    }

    /// `θ^P w = w_o w w_{o,P}`.
    pub fn dual_rep(&self, w: &WeylElement) -> WeylElement {
        WeylElement::longest() * *w * self.levi_longest()
    }

    /// `n_w = (w⁻¹ρ)(x_P)`.
    pub fn level(&self, w: &WeylElement) -> Rational {
        w.inverse().act(&rho()).pair(&self.coweight())
    }

    /// `λ_w = w ω_P`.
    pub fn singular_weight(&self, w: &WeylElement) -> Weight {
        w.act(&self.omega())
    }
}

/// A diagram automorphism of D4: a permutation of the nodes {1, 3, 4}
/// fixing node 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DiagramAutomorphism {
    map: [u8; 4],
}

impl DiagramAutomorphism {
    pub const IDENTITY: DiagramAutomorphism = DiagramAutomorphism { map: [1, 2, 3, 4] };

    /// `images[k]` is the image of node `k + 1`.
    pub fn new(images: [u8; 4]) -> Result<Self> {
        let mut sorted = images;
        sorted.sort_unstable();
        if sorted != [1, 2, 3, 4] || images[1] != 2 {
            return Err(Error::Parse(format!(
                "{images:?} is not a D4 diagram automorphism"
            )));
        }
        Ok(Self { map: images })
    }

    /// The transposition of two outer nodes.
    pub fn transposition(a: u8, b: u8) -> Result<Self> {
        let mut map = [1, 2, 3, 4];
        map.swap(check_node(a)?, check_node(b)?);
        Self::new(map)
    }

    /// The six elements of the triality group.
    pub fn all() -> Vec<DiagramAutomorphism> {
        let outer = [1u8, 3, 4];
        let mut out = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if a != b && b != c && a != c {
                        let mut map = [0u8, 2, 0, 0];
                        map[0] = outer[a];
                        map[2] = outer[b];
                        map[3] = outer[c];
                        out.push(Self { map });
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn node(&self, i: u8) -> u8 {
        self.map[i as usize - 1]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            map: std::array::from_fn(|k| self.node(other.map[k])),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut map = [0u8; 4];
        for k in 0..4 {
            map[self.map[k] as usize - 1] = k as u8 + 1;
        }
        Self { map }
    }

    /// The linear map on ε-coordinates sending `α_i ↦ α_{σ(i)}`.
    pub fn matrix(&self) -> &'static Matrix {
        static CACHE: OnceLock<HashMap<[u8; 4], Matrix>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| {
            let roots: Matrix = (0..4)
                .map(|i| simple_root_ints(i).map(rat_int).to_vec())
                .collect();
            // columns are simple roots
            let a = linalg::transpose(&roots);
            let a_inv = linalg::inverse(&a).expect("simple roots are a basis");
            DiagramAutomorphism::all()
                .into_iter()
                .map(|g| {
                    let images: Matrix = (0..4)
                        .map(|i| roots[g.map[i] as usize - 1].clone())
                        .collect();
                    let a_sigma = linalg::transpose(&images);
                    let m: Matrix = (0..4)
                        .map(|r| {
                            (0..4)
                                .map(|c| (0..4).map(|k| &a_sigma[r][k] * &a_inv[k][c]).sum())
                                .collect()
                        })
                        .collect();
                    (g.map, m)
                })
                .collect()
        });
        &cache[&self.map]
    }

    pub fn apply(&self, v: &Weight) -> Weight {
        let m = self.matrix();
        Weight(std::array::from_fn(|r| {
            (0..4).map(|c| &m[r][c] * &v.0[c]).sum()
        }))
    }

    pub fn apply_coweight(&self, h: &CoWeight) -> CoWeight {
        self.apply(&h.to_weight()).to_coweight()
    }

    pub fn apply_parabolic(&self, p: Parabolic) -> Parabolic {
        Parabolic(self.node(p.node()))
    }
}

impl fmt::Display for DiagramAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[1→{}, 3→{}, 4→{}]",
            self.map[0], self.map[2], self.map[3]
        )
    }
}
