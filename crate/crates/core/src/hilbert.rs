//! Hilbert bases of pointed rational cones, and the semigroup of lattice
//! points of the eigencone in the lattice of triples whose sum lies in the
//! root lattice.
//!
//! The cone is triangulated by pulling its rays in order; lattice points of
//! each simplicial cone's half-open fundamental parallelepiped are listed
//! through a Smith normal form, and the union is sieved by degree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::{double_description, facets, HRep, VRep};
use crate::error::{Error, Result};
use crate::fixtures::Fixtures;
use crate::linalg::{self, rat_int, Matrix, Rational};
use crate::rootdata::{fundamental_weight, simple_root, DiagramAutomorphism, Weight};
use crate::triangles::{full_system, SymmetryGroup};

type Bits = Vec<u64>;

fn bits_of(indices: impl Iterator<Item = usize>, n: usize) -> Bits {
    let mut b = vec![0u64; n.div_ceil(64).max(1)];
    for i in indices {
        b[i / 64] |= 1 << (i % 64);
    }
    b
}

fn members(b: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in b.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            let t = x.trailing_zeros() as usize;
            out.push(64 * w + t);
            x &= x - 1;
        }
    }
    out
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

/// Rank of a set of integer vectors by fraction-free elimination in `i128`,
/// falling back to big integers if that would overflow.
fn rank_of(vectors: &[&Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let g = m[r][c].gcd(&m[i][c]);
            let (a, b) = (m[r][c] / g, m[i][c] / g);
            let mut content = 0i128;
            for j in c..cols {
                let v = a
                    .checked_mul(m[i][j])
                    .and_then(|x| b.checked_mul(m[r][j]).and_then(|y| x.checked_sub(y)));
                let Some(v) = v else {
                    let rows: Vec<Vec<i64>> = vectors.iter().map(|v| v.to_vec()).collect();
                    return linalg::int_rank(&rows);
                };
                m[i][j] = v;
                content = content.gcd(&v);
            }
            if content > 1 {
                m[i][c..].iter_mut().for_each(|x| *x /= content);
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Pulling triangulation of a pointed cone from its rays and facet supports.
struct Triangulator<'a> {
    rays: &'a [Vec<i64>],
    facet_supports: Vec<Bits>,
    memo: HashMap<Bits, Vec<Vec<usize>>>,
}

impl<'a> Triangulator<'a> {
    fn rank(&self, face: &Bits) -> usize {
        let vs: Vec<&Vec<i64>> = members(face).into_iter().map(|i| &self.rays[i]).collect();
        rank_of(&vs)
    }

    /// Facets of a face of dimension `dim`, as ray sets.
    fn facets_of(&self, face: &Bits, dim: usize) -> Vec<Bits> {
        let mut out: BTreeSet<Bits> = BTreeSet::new();
        for t in &self.facet_supports {
            let g = and(face, t);
            if count(&g) + 1 < dim || g == *face || out.contains(&g) {
                continue;
            }
            if self.rank(&g) + 1 == dim {
                out.insert(g);
            }
        }
        out.into_iter().collect()
    }

    fn triangulate(&mut self, face: &Bits, dim: usize) -> Vec<Vec<usize>> {
        if let Some(t) = self.memo.get(face) {
            return t.clone();
        }
        let elems = members(face);
        let result = if elems.len() == dim {
            vec![elems]
        } else {
            let apex = elems[0];
            let mut out = Vec::new();
            for g in self.facets_of(face, dim) {
                if g[apex / 64] & (1 << (apex % 64)) != 0 {
                    continue;
                }
                for mut s in self.triangulate(&g, dim - 1) {
                    s.push(apex);
                    s.sort_unstable();
                    out.push(s);
                }
            }
            out
        };
        self.memo.insert(face.clone(), result.clone());
        result
    }
}

/// Simplicial cones covering the cone with rays `v`, each a list of ray indices.
pub fn triangulate(h: &HRep, v: &VRep) -> Vec<Vec<usize>> {
    let n = v.rays.len();
    let analysis = facets(h, v);
    let mut t = Triangulator {
        rays: &v.rays,
        facet_supports: analysis
            .facets
            .iter()
            .map(|f| bits_of(f.tight_rays.iter().copied(), n))
            .collect(),
        memo: HashMap::new(),
    };
    let all = bits_of(0..n, n);
    let mut out = t.triangulate(&all, v.cone_dim());
    out.sort();
    out
}

/// Nonzero lattice points `Σ q_i g_i`, `0 ≤ q_i < 1`, of the simplicial cone
/// spanned by the columns `g_i`.
pub fn parallelepiped_points(gens: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let d = gens.len();
    // g[r][c] = coordinate r of generator c
    let g_big: Vec<Vec<BigInt>> = (0..d)
        .map(|r| (0..d).map(|c| BigInt::from(gens[c][r])).collect())
        .collect();
    let det = linalg::determinant(&g_big);
    if det.is_zero() {
        return Err(Error::Invariant("degenerate simplicial cone".into()));
    }
    let det_abs: i128 = det.abs().to_i128().ok_or(Error::Overflow)?;
    if det_abs == 1 {
        return Ok(Vec::new());
    }
    let g_rat: Matrix = g_big
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let inv = linalg::inverse(&g_rat).expect("nonzero determinant");
    let det_rat = Rational::from_integer(det.abs());
    // adjugate scaled to |det|: adj = |det| · G⁻¹
    let adj: Vec<Vec<i128>> = inv
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| (x * &det_rat).to_integer().to_i128().ok_or(Error::Overflow))
                .collect::<Result<Vec<i128>>>()
        })
        .collect::<Result<_>>()?;
    let snf = linalg::smith_normal_form(&g_big);
    let left_inv = linalg::unimodular_inverse(&snf.left).expect("unimodular");
    let left_inv: Vec<Vec<i128>> = left_inv
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i128().ok_or(Error::Overflow))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let diag: Vec<i128> = snf
        .diag
        .iter()
        .map(|x| x.to_i128().ok_or(Error::Overflow))
        .collect::<Result<_>>()?;
    let active: Vec<usize> = (0..d).filter(|&i| diag[i] > 1).collect();
    let g: Vec<Vec<i128>> = (0..d)
        .map(|r| (0..d).map(|c| gens[c][r] as i128).collect())
        .collect();

    let mut out = Vec::new();
    let mut y = vec![0i128; active.len()];
    loop {
        // x = L⁻¹ y
        let x: Vec<i128> = (0..d)
            .map(|r| {
                active
                    .iter()
                    .zip(&y)
                    .map(|(&k, &yk)| left_inv[r][k] * yk)
                    .sum()
            })
            .collect();
        // q·|det| = adj x, reduced modulo |det|
        let q: Vec<i128> = (0..d)
            .map(|r| {
                let s: i128 = (0..d).map(|c| adj[r][c] * x[c]).sum();
                s.rem_euclid(det_abs)
            })
            .collect();
        if q.iter().any(|&t| t != 0) {
            let p: Vec<i64> = (0..d)
                .map(|r| {
                    let s: i128 = (0..d).map(|c| g[r][c] * q[c]).sum();
                    debug_assert_eq!(s % det_abs, 0);
                    i64::try_from(s / det_abs).map_err(|_| Error::Overflow)
                })
                .collect::<Result<_>>()?;
            out.push(p);
        }
        let mut k = 0;
        while k < y.len() {
            y[k] += 1;
            if y[k] < diag[active[k]] {
                break;
            }
            y[k] = 0;
            k += 1;
        }
        if k == y.len() {
            break;
        }
    }
    Ok(out)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertStats {
    pub rays: usize,
    pub simplices: usize,
    pub candidates: usize,
}

/// Minimal generating set of the lattice points of `{x ∈ ℤ^d : A x ≥ 0}`,
/// sorted by degree and then lexicographically.
pub fn hilbert_basis(h: &HRep) -> Result<(Vec<Vec<i64>>, HilbertStats)> {
    let v = double_description(h)?;
    if !v.lineality.is_empty() {
        return Err(Error::NotPointed(v.lineality.len()));
    }
    let dim = v.cone_dim();
    if dim < h.dim {
        return Err(Error::NotFullDimensional {
            dim,
            ambient: h.dim,
        });
    }
    let simplices = triangulate(h, &v);
    let points: Vec<Vec<Vec<i64>>> = simplices
        .par_iter()
        .map(|s| {
            let gens: Vec<Vec<i64>> = s.iter().map(|&i| v.rays[i].clone()).collect();
            parallelepiped_points(&gens)
        })
        .collect::<Result<_>>()?;
    let mut candidates: BTreeSet<Vec<i64>> = v.rays.iter().cloned().collect();
    for p in points.into_iter().flatten() {
        candidates.insert(p);
    }
    let n_candidates = candidates.len();

    // degree: sum of the facet functionals, positive on nonzero cone points
    let (dedup, _) = h.dedup();
    let grading: Vec<i64> = (0..h.dim)
        .map(|j| dedup.functionals.iter().map(|f| f[j]).sum())
        .collect();
    let mut sorted: Vec<(i64, Vec<i64>)> = candidates
        .into_iter()
        .map(|c| (dot(&grading, &c), c))
        .collect();
    sorted.sort();
    let evals = |x: &[i64]| -> Vec<i64> { dedup.functionals.iter().map(|f| dot(f, x)).collect() };
    let mut basis: Vec<(i64, Vec<i64>, Vec<i64>)> = Vec::new();
    for (deg, x) in sorted {
        let ex = evals(&x);
        let reducible = basis
            .iter()
            .any(|(dy, _, ey)| *dy < deg && ex.iter().zip(ey).all(|(a, b)| a >= b));
        if !reducible {
            basis.push((deg, x, ex));
        }
    }
    let stats = HilbertStats {
        rays: v.rays.len(),
        simplices: simplices.len(),
        candidates: n_candidates,
    };
    Ok((basis.into_iter().map(|(_, x, _)| x).collect(), stats))
}

/// A triple of dominant weights, in fundamental coordinates and in the
/// lattice basis `{ᾱ_1..ᾱ_4, ζ_1..ζ_8}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeTriple {
    pub lambda: [i64; 4],
    pub mu: [i64; 4],
    pub nu: [i64; 4],
    pub coords: [i64; 12],
}

impl LatticeTriple {
    pub fn from_fundamental(lambda: [i64; 4], mu: [i64; 4], nu: [i64; 4]) -> Result<Self> {
        let coords = to_coords(&[
            Weight::from_fundamental(lambda),
            Weight::from_fundamental(mu),
            Weight::from_fundamental(nu),
        ])?;
        Ok(Self {
            lambda,
            mu,
            nu,
            coords,
        })
    }

    pub fn from_coords(coords: [i64; 12]) -> Self {
        let t = from_coords(&coords);
        Self {
            lambda: t[0],
            mu: t[1],
            nu: t[2],
            coords,
        }
    }

    pub fn fundamental(&self) -> [[i64; 4]; 3] {
        [self.lambda, self.mu, self.nu]
    }

    /// Concatenated fundamental coordinates `λ | μ | ν`.
    pub fn flat(&self) -> [i64; 12] {
        let mut out = [0; 12];
        out[..4].copy_from_slice(&self.lambda);
        out[4..8].copy_from_slice(&self.mu);
        out[8..].copy_from_slice(&self.nu);
        out
    }

    pub fn weights(&self) -> [Weight; 3] {
        self.fundamental().map(Weight::from_fundamental)
    }

    /// The point of `𝔞³` in ε-coordinates.
    pub fn epsilon(&self) -> Vec<Rational> {
        self.weights()
            .iter()
            .flat_map(|w| w.coords().to_vec())
            .collect()
    }
}

/// The twelve basis vectors, as triples of weights.
pub fn lattice_basis() -> Vec<[Weight; 3]> {
    let zero = Weight::zero();
    let mut out = Vec::with_capacity(12);
    for i in 1..=4 {
        out.push([simple_root(i).unwrap(), zero.clone(), zero.clone()]);
    }
    for j in 1..=4 {
        let w = fundamental_weight(j).unwrap();
        out.push([-&w, w, zero.clone()]);
    }
    for j in 1..=4 {
        let w = fundamental_weight(j).unwrap();
        out.push([-&w, zero.clone(), w]);
    }
    out
}

fn fundamental_coords_int(w: &Weight) -> Result<[i64; 4]> {
    let c = w.fundamental_coords();
    let mut out = [0; 4];
    for (o, x) in out.iter_mut().zip(c.iter()) {
        if !x.is_integer() {
            return Err(Error::NotInWeightLattice(w.to_string()));
        }
        *o = x.to_integer().to_i64().ok_or(Error::Overflow)?;
    }
    Ok(out)
}

/// Columns: basis vectors in concatenated fundamental coordinates.
fn basis_matrix() -> &'static (Matrix, Matrix) {
    static M: OnceLock<(Matrix, Matrix)> = OnceLock::new();
    M.get_or_init(|| {
        let cols: Vec<Vec<Rational>> = lattice_basis()
            .iter()
            .map(|t| {
                t.iter()
                    .flat_map(|w| fundamental_coords_int(w).unwrap().map(rat_int))
                    .collect()
            })
            .collect();
        let m = linalg::transpose(&cols);
        let inv = linalg::inverse(&m).expect("basis");
        (m, inv)
    })
}

/// `|det|` of the basis in fundamental coordinates: the index of the lattice.
pub fn lattice_index() -> BigInt {
    let (m, _) = basis_matrix();
    let ints: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.to_integer()).collect())
        .collect();
    linalg::determinant(&ints).abs()
}

pub fn to_coords(t: &[Weight; 3]) -> Result<[i64; 12]> {
    let mut flat = Vec::with_capacity(12);
    for w in t {
        flat.extend(fundamental_coords_int(w)?.map(rat_int));
    }
    let (_, inv) = basis_matrix();
    let c = linalg::mat_vec(inv, &flat);
    let mut out = [0; 12];
    for (o, x) in out.iter_mut().zip(&c) {
        if !x.is_integer() {
            return Err(Error::SumNotInRootLattice);
        }
        *o = x.to_integer().to_i64().ok_or(Error::Overflow)?;
    }
    Ok(out)
}

/// Fundamental coordinates of the triple with the given lattice coordinates.
pub fn from_coords(c: &[i64; 12]) -> [[i64; 4]; 3] {
    let (m, _) = basis_matrix();
    let v = linalg::mat_vec(m, &c.map(rat_int));
    let ints: Vec<i64> = v.iter().map(|x| x.to_integer().to_i64().unwrap()).collect();
    [
        ints[..4].try_into().unwrap(),
        ints[4..8].try_into().unwrap(),
        ints[8..].try_into().unwrap(),
    ]
}

/// A functional on ε-coordinates of `𝔞³`, pulled back to lattice coordinates.
pub fn functional_in_lattice(a: &[i64]) -> Result<Vec<i64>> {
    let (m, _) = basis_matrix();
    // ε-coordinates of each basis vector
    let eps: Vec<Vec<Rational>> = (0..12)
        .map(|col| {
            let f: Vec<i64> = (0..12)
                .map(|r| m[r][col].to_integer().to_i64().unwrap())
                .collect();
            (0..3)
                .flat_map(|b| {
                    Weight::from_fundamental(f[4 * b..4 * b + 4].try_into().unwrap())
                        .coords()
                        .to_vec()
                })
                .collect()
        })
        .collect();
    let row: Vec<Rational> = eps
        .iter()
        .map(|e| e.iter().zip(a).map(|(x, &y)| x * rat_int(y)).sum())
        .collect();
    linalg::primitive_i64(&row)
}

/// The eigencone in lattice coordinates.
pub fn d4_cone() -> Result<HRep> {
    let f = full_system()?
        .iter()
        .map(|i| functional_in_lattice(&i.coefficients))
        .collect::<Result<Vec<_>>>()?;
    HRep::new(12, f)
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRep {
    pub representative: LatticeTriple,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertBasis {
    pub elements: Vec<LatticeTriple>,
    pub orbit_reps: Vec<OrbitRep>,
    pub stats: HilbertStats,
    /// Elements that are not primitive ray generators.
    pub non_ray: Vec<LatticeTriple>,
}

/// The Hilbert basis of the lattice points of the eigencone.
pub fn d4_hilbert_basis() -> Result<HilbertBasis> {
    let cone = d4_cone()?;
    let (basis, stats) = hilbert_basis(&cone)?;
    let rays: BTreeSet<Vec<i64>> = double_description(&cone)?.rays.into_iter().collect();
    let elements: Vec<LatticeTriple> = basis
        .iter()
        .map(|c| LatticeTriple::from_coords(c.clone().try_into().unwrap()))
        .collect();
    let non_ray = elements
        .iter()
        .filter(|e| !rays.contains(e.coords.as_slice()))
        .cloned()
        .collect();
    Ok(HilbertBasis {
        orbit_reps: orbit_reduce(&elements, SymmetryGroup::S3xF),
        elements,
        stats,
        non_ray,
    })
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Node `i` coordinate moves to node `g(i)`.
fn permute_nodes(g: &DiagramAutomorphism, c: &[i64; 4]) -> [i64; 4] {
    let mut out = [0; 4];
    for i in 1..=4u8 {
        out[g.node(i) as usize - 1] = c[i as usize - 1];
    }
    out
}

/// All images of a triple in fundamental coordinates.
pub fn orbit_of(t: &[[i64; 4]; 3], group: SymmetryGroup) -> BTreeSet<[[i64; 4]; 3]> {
    let mut out = BTreeSet::new();
    for g in group.automorphisms() {
        let moved = t.map(|c| permute_nodes(&g, &c));
        for p in PERMS {
            out.insert([moved[p[0]], moved[p[1]], moved[p[2]]]);
        }
    }
    out
}

/// Lexicographically smallest image under the group.
pub fn canonical(t: &[[i64; 4]; 3], group: SymmetryGroup) -> [[i64; 4]; 3] {
    *orbit_of(t, group).iter().next().unwrap()
}

/// One canonical representative per orbit, sorted, with orbit sizes.
pub fn orbit_reduce(elements: &[LatticeTriple], group: SymmetryGroup) -> Vec<OrbitRep> {
    let mut reps: BTreeMap<[[i64; 4]; 3], usize> = BTreeMap::new();
    for e in elements {
        let orbit = orbit_of(&e.fundamental(), group);
        reps.insert(*orbit.iter().next().unwrap(), orbit.len());
    }
    reps.into_iter()
        .map(|(t, size)| OrbitRep {
            representative: LatticeTriple::from_fundamental(t[0], t[1], t[2])
                .expect("images stay in the lattice"),
            size,
        })
        .collect()
}

/// `2ω1+ω3` style rendering of fundamental coordinates.
pub fn format_weight(c: &[i64; 4]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| {
            if x == 1 {
                format!("ω{}", i + 1)
            } else {
                format!("{x}ω{}", i + 1)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

pub fn format_triple(t: &[[i64; 4]; 3]) -> String {
    format!(
        "({}, {}, {})",
        format_weight(&t[0]),
        format_weight(&t[1]),
        format_weight(&t[2])
    )
}

/// Comparison of computed orbit representatives with the printed list, both
/// canonicalized.
#[derive(Clone, Debug, Serialize)]
pub struct HPrimeReport {
    pub printed: usize,
    pub computed: usize,
    pub missing: Vec<[[i64; 4]; 3]>,
    pub extra: Vec<[[i64; 4]; 3]>,
}

impl HPrimeReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.printed == self.computed
    }
}

pub fn check_h_prime(fixtures: &Fixtures, basis: &HilbertBasis) -> Result<HPrimeReport> {
    let printed = fixtures.h_prime()?;
    let expected: BTreeSet<[[i64; 4]; 3]> = printed
        .iter()
        .map(|t| canonical(t, SymmetryGroup::S3xF))
        .collect();
    let computed: BTreeSet<[[i64; 4]; 3]> = basis
        .orbit_reps
        .iter()
        .map(|o| o.representative.fundamental())
        .collect();
    Ok(HPrimeReport {
        printed: printed.len(),
        computed: computed.len(),
        missing: expected.difference(&computed).copied().collect(),
        extra: computed.difference(&expected).copied().collect(),
    })
}

impl HilbertBasis {
    pub fn orbit_markdown(&self) -> String {
        let mut s = format!(
            "# Hilbert basis modulo S3 × F\n\n{} elements, {} orbits\n\n| representative | orbit size |\n|---|---|\n",
            self.elements.len(),
            self.orbit_reps.len()
        );
        for o in &self.orbit_reps {
            s.push_str(&format!(
                "| {} | {} |\n",
                format_triple(&o.representative.fundamental()),
                o.size
            ));
        }
        s
    }
}
