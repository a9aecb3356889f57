//! Polyhedral cones `{x : ⟨a_i, x⟩ ≥ 0}` over ℚ^d: conversion to extremal
//! rays by the double description method, facet identification and
//! irredundancy certificates.
//!
//! Rays are kept as primitive integer vectors in checked `i128`
//! arithmetic; any overflow is reported rather than wrapped.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, rat_int, Echelon, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRep {
    pub dim: usize,
    pub functionals: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VRep {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub lineality: Vec<Vec<i64>>,
}

fn gcd_i64(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

fn primitive_vec(v: &[i64]) -> Vec<i64> {
    let g = gcd_i64(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

impl HRep {
    pub fn new(dim: usize, functionals: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(f) = functionals.iter().find(|f| f.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: f.len(),
            });
        }
        Ok(Self {
            dim,
            functionals: functionals.iter().map(|f| primitive_vec(f)).collect(),
        })
    }

    /// Distinct functionals, plus `(dropped, kept)` index pairs.
    pub fn dedup(&self) -> (HRep, Vec<(usize, usize)>) {
        let mut seen: BTreeMap<&Vec<i64>, usize> = BTreeMap::new();
        let mut kept = Vec::new();
        let mut merges = Vec::new();
        for (k, f) in self.functionals.iter().enumerate() {
            match seen.get(f) {
                Some(&first) => merges.push((k, first)),
                None => {
                    seen.insert(f, k);
                    kept.push(f.clone());
                }
            }
        }
        (
            HRep {
                dim: self.dim,
                functionals: kept,
            },
            merges,
        )
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        self.functionals.iter().all(|f| {
            f.iter()
                .zip(point)
                .map(|(&a, x)| rat_int(a) * x)
                .sum::<Rational>()
                >= rat_int(0)
        })
    }

    pub fn contains_int(&self, point: &[i64]) -> bool {
        self.functionals.iter().all(|f| dot(f, point) >= 0)
    }
}

impl VRep {
    /// Dimension of the cone: rank of rays together with the lineality space.
    pub fn cone_dim(&self) -> usize {
        let mut e = Echelon::new(self.dim);
        for v in self.rays.iter().chain(&self.lineality) {
            e.insert_int(v);
        }
        e.rank()
    }
}

type Bits = Vec<u64>;

fn bit_words(n: usize) -> usize {
    n.div_ceil(64)
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn popcount(b: &[u64]) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

#[derive(Clone)]
struct Ray {
    v: Vec<i128>,
    eval: Vec<i128>,
    zeros: Bits,
}

impl Ray {
    fn new(v: Vec<i128>, constraints: &[Vec<i128>]) -> Result<Ray> {
        let eval = constraints
            .iter()
            .map(|a| {
                a.iter().zip(&v).try_fold(0i128, |acc, (&x, &y)| {
                    x.checked_mul(y)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow)
                })
            })
            .collect::<Result<Vec<i128>>>()?;
        Ok(Self::with_eval(v, eval))
    }

    fn with_eval(v: Vec<i128>, eval: Vec<i128>) -> Ray {
        let mut zeros = vec![0u64; bit_words(eval.len())];
        for (i, &e) in eval.iter().enumerate() {
            if e == 0 {
                set_bit(&mut zeros, i);
            }
        }
        Ray { v, eval, zeros }
    }

    /// `α·n + β·p` reduced by the gcd of the coordinates.
    fn combine(alpha: i128, n: &Ray, beta: i128, p: &Ray) -> Result<Ray> {
        let lin = |x: i128, y: i128| -> Result<i128> {
            alpha
                .checked_mul(x)
                .and_then(|a| beta.checked_mul(y).and_then(|b| a.checked_add(b)))
                .ok_or(Error::Overflow)
        };
        let mut v =
            n.v.iter()
                .zip(&p.v)
                .map(|(&x, &y)| lin(x, y))
                .collect::<Result<Vec<_>>>()?;
        let mut eval = n
            .eval
            .iter()
            .zip(&p.eval)
            .map(|(&x, &y)| lin(x, y))
            .collect::<Result<Vec<_>>>()?;
        let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
        if g > 1 {
            v.iter_mut().for_each(|x| *x /= g);
            eval.iter_mut().for_each(|x| *x /= g);
        }
        Ok(Ray::with_eval(v, eval))
    }
}

/// Basis of the lineality space `{x : A x = 0}`, as primitive integer vectors.
pub fn lineality_space(h: &HRep) -> Result<Vec<Vec<i64>>> {
    let rows: Vec<Vec<Rational>> = h
        .functionals
        .iter()
        .map(|f| f.iter().map(|&x| rat_int(x)).collect())
        .collect();
    linalg::nullspace(&rows, h.dim)
        .iter()
        .map(|v| linalg::primitive_i64(v))
        .collect()
}

/// Extremal rays and lineality space of `{x : A x ≥ 0}`.
pub fn double_description(h: &HRep) -> Result<VRep> {
    let d = h.dim;
    let lineality = lineality_space(h)?;
    // restrict to the orthogonal complement of the lineality space
    let mut constraints: Vec<Vec<i128>> = h
        .functionals
        .iter()
        .map(|f| f.iter().map(|&x| x as i128).collect())
        .collect();
    for l in &lineality {
        constraints.push(l.iter().map(|&x| x as i128).collect());
        constraints.push(l.iter().map(|&x| -(x as i128)).collect());
    }
    if d == 0 {
        return Ok(VRep {
            dim: 0,
            rays: Vec::new(),
            lineality,
        });
    }

    let mut basis = Echelon::new(d);
    let mut initial = Vec::new();
    for (k, c) in constraints.iter().enumerate() {
        let row: Vec<i64> = c.iter().map(|&x| x as i64).collect();
        if basis.insert_int(&row) {
            initial.push(k);
            if initial.len() == d {
                break;
            }
        }
    }
    if initial.len() < d {
        return Err(Error::Invariant("constraints do not have full rank".into()));
    }
    let b: linalg::Matrix = initial
        .iter()
        .map(|&k| constraints[k].iter().map(|&x| rat_int(x as i64)).collect())
        .collect();
    let b_inv = linalg::inverse(&b).expect("independent rows");
    let mut rays = Vec::with_capacity(d);
    for col in 0..d {
        let column: Vec<Rational> = (0..d).map(|r| b_inv[r][col].clone()).collect();
        let v = linalg::primitive_i64(&column)?;
        rays.push(Ray::new(
            v.iter().map(|&x| x as i128).collect(),
            &constraints,
        )?);
    }

    let m = constraints.len();
    let mut processed = vec![0u64; bit_words(m)];
    let mut done = vec![false; m];
    for &k in &initial {
        set_bit(&mut processed, k);
        done[k] = true;
    }

    loop {
        // max-cutoff order: insert next the constraint violated by the most rays
        let next = (0..m)
            .filter(|&k| !done[k])
            .map(|k| {
                let neg = rays.iter().filter(|r| r.eval[k] < 0).count();
                (std::cmp::Reverse(neg), k)
            })
            .min();
        let Some((std::cmp::Reverse(neg_count), c)) = next else {
            break;
        };
        done[c] = true;
        if neg_count == 0 {
            set_bit(&mut processed, c);
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| rays[i].eval[c] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| rays[i].eval[c] < 0).collect();
        let new_rays: Vec<Ray> = pos
            .par_iter()
            .map(|&pi| -> Result<Vec<Ray>> {
                let p = &rays[pi];
                let mut out = Vec::new();
                for &ni in &neg {
                    let n = &rays[ni];
                    let common: Bits = p
                        .zeros
                        .iter()
                        .zip(&n.zeros)
                        .zip(&processed)
                        .map(|((a, b), c)| a & b & c)
                        .collect();
                    if popcount(&common) + 2 < d {
                        continue;
                    }
                    let blocked = rays.iter().enumerate().any(|(ri, r)| {
                        ri != pi
                            && ri != ni
                            && r.zeros.iter().zip(&common).all(|(z, c)| z & c == *c)
                    });
                    if !blocked {
                        out.push(Ray::combine(p.eval[c], n, -n.eval[c], p)?);
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<Vec<Ray>>>>()?
            .into_iter()
            .flatten()
            .collect();
        rays.retain(|r| r.eval[c] >= 0);
        rays.extend(new_rays);
        set_bit(&mut processed, c);
    }

    let mut out: Vec<Vec<i64>> = rays
        .iter()
        .map(|r| {
            r.v.iter()
                .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(VRep {
        dim: d,
        rays: out,
        lineality,
    })
}

/// The H-representation of the cone spanned by `v`: its facet normals.
pub fn facets_from_rays(v: &VRep) -> Result<HRep> {
    let mut constraints = v.rays.clone();
    for l in &v.lineality {
        constraints.push(l.clone());
        constraints.push(l.iter().map(|x| -x).collect());
    }
    let dual = double_description(&HRep::new(v.dim, constraints)?)?;
    HRep::new(v.dim, dual.rays)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    /// Input functionals defining this facet; the first is the kept one.
    pub functionals: Vec<usize>,
    /// Rays on which the functional vanishes.
    pub tight_rays: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetAnalysis {
    pub cone_dim: usize,
    pub facets: Vec<Facet>,
    /// `(functional, facet index)` for functionals that repeat a facet.
    pub merges: Vec<(usize, usize)>,
    /// Functionals that do not define a facet.
    pub redundant: Vec<usize>,
}

fn rank_of(rows: impl Iterator<Item = Vec<i64>>, dim: usize) -> usize {
    let mut e = Echelon::new(dim);
    for r in rows {
        e.insert_int(&r);
    }
    e.rank()
}

/// Classifies every functional of `h` against the rays of its cone `v`.
pub fn facets(h: &HRep, v: &VRep) -> FacetAnalysis {
    let cone_dim = v.cone_dim();
    let tight: Vec<Vec<usize>> = h
        .functionals
        .par_iter()
        .map(|f| {
            (0..v.rays.len())
                .filter(|&r| dot(f, &v.rays[r]) == 0)
                .collect()
        })
        .collect();
    let is_facet: Vec<bool> = tight
        .par_iter()
        .map(|t| {
            let rows = t
                .iter()
                .map(|&r| v.rays[r].clone())
                .chain(v.lineality.iter().cloned());
            cone_dim > 0 && rank_of(rows, v.dim) + 1 == cone_dim
        })
        .collect();
    let mut facets: Vec<Facet> = Vec::new();
    let mut by_support: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    let mut merges = Vec::new();
    let mut redundant = Vec::new();
    for (k, t) in tight.iter().enumerate() {
        if !is_facet[k] {
            redundant.push(k);
            continue;
        }
        match by_support.get(t) {
            Some(&f) => {
                facets[f].functionals.push(k);
                merges.push((k, f));
            }
            None => {
                by_support.insert(t, facets.len());
                facets.push(Facet {
                    functionals: vec![k],
                    tight_rays: t.clone(),
                });
            }
        }
    }
    FacetAnalysis {
        cone_dim,
        facets,
        merges,
        redundant,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Independent tight rays spanning the facet hyperplane within the cone.
    Facet {
        functional: usize,
        spanning_rays: Vec<usize>,
    },
    Duplicate {
        functional: usize,
        of: usize,
    },
    Redundant {
        functional: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Irredundancy {
    pub irredundant: bool,
    pub cone_dim: usize,
    pub rays: usize,
    pub certificates: Vec<Certificate>,
}

impl Irredundancy {
    pub fn offenders(&self) -> Vec<&Certificate> {
        self.certificates
            .iter()
            .filter(|c| !matches!(c, Certificate::Facet { .. }))
            .collect()
    }

    /// One line per functional.
    pub fn to_text(&self, h: &HRep) -> String {
        let mut s = format!(
            "irredundant: {}\ncone dimension: {}\nrays: {}\n",
            self.irredundant, self.cone_dim, self.rays
        );
        for c in &self.certificates {
            match c {
                Certificate::Facet {
                    functional,
                    spanning_rays,
                } => s.push_str(&format!(
                    "{functional} {:?} facet spanned by rays {spanning_rays:?}\n",
                    h.functionals[*functional]
                )),
                Certificate::Duplicate { functional, of } => s.push_str(&format!(
                    "{functional} {:?} duplicates {of}\n",
                    h.functionals[*functional]
                )),
                Certificate::Redundant { functional } => s.push_str(&format!(
                    "{functional} {:?} redundant\n",
                    h.functionals[*functional]
                )),
            }
        }
        s
    }
}

/// Irredundancy of `h` given its V-representation.
pub fn irredundancy(h: &HRep, v: &VRep) -> Irredundancy {
    let analysis = facets(h, v);
    let mut certs: Vec<Option<Certificate>> = vec![None; h.functionals.len()];
    for f in &analysis.facets {
        let first = f.functionals[0];
        let mut e = Echelon::new(v.dim);
        for l in &v.lineality {
            e.insert_int(l);
        }
        let spanning = f
            .tight_rays
            .iter()
            .copied()
            .filter(|&r| e.insert_int(&v.rays[r]))
            .collect();
        certs[first] = Some(Certificate::Facet {
            functional: first,
            spanning_rays: spanning,
        });
        for &dup in &f.functionals[1..] {
            certs[dup] = Some(Certificate::Duplicate {
                functional: dup,
                of: first,
            });
        }
    }
    for &k in &analysis.redundant {
        certs[k] = Some(Certificate::Redundant { functional: k });
    }
    let certificates: Vec<Certificate> = certs.into_iter().map(|c| c.unwrap()).collect();
    Irredundancy {
        irredundant: analysis.merges.is_empty() && analysis.redundant.is_empty(),
        cone_dim: analysis.cone_dim,
        rays: v.rays.len(),
        certificates,
    }
}

pub fn is_irredundant(h: &HRep) -> Result<Irredundancy> {
    Ok(irredundancy(h, &double_description(h)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(d: usize, i: usize) -> Vec<i64> {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    }

    #[test]
    fn orthant() {
        let h = HRep::new(3, (0..3).map(|i| unit(3, i)).collect()).unwrap();
        let v = double_description(&h).unwrap();
        assert_eq!(v.rays, vec![unit(3, 2), unit(3, 1), unit(3, 0)]);
        assert!(v.lineality.is_empty());
    }

    #[test]
    fn half_space_has_large_lineality() {
        let h = HRep::new(12, vec![unit(12, 0)]).unwrap();
        let v = double_description(&h).unwrap();
        assert_eq!(v.lineality.len(), 11);
        assert_eq!(v.rays, vec![unit(12, 0)]);
        assert_eq!(v.cone_dim(), 12);
        let irr = irredundancy(&h, &v);
        assert!(irr.irredundant);
    }

    #[test]
    fn square_pyramid() {
        // x3 ≥ |x1|, x3 ≥ |x2|: four rays (±1, ±1, 1)
        let h = HRep::new(
            3,
            vec![vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1], vec![0, -1, 1]],
        )
        .unwrap();
        let v = double_description(&h).unwrap();
        assert_eq!(
            v.rays,
            vec![
                vec![-1, -1, 1],
                vec![-1, 1, 1],
                vec![1, -1, 1],
                vec![1, 1, 1]
            ]
        );
        let back = facets_from_rays(&v).unwrap();
        let mut a = back.functionals.clone();
        a.sort();
        let mut b = h.functionals.clone();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn duplicate_and_redundant_functionals() {
        let mut f: Vec<Vec<i64>> = (0..3).map(|i| unit(3, i)).collect();
        f.push(vec![2, 0, 0]);
        f.push(vec![1, 1, 0]);
        let h = HRep::new(3, f).unwrap();
        let irr = is_irredundant(&h).unwrap();
        assert!(!irr.irredundant);
        assert_eq!(
            irr.offenders(),
            vec![
                &Certificate::Duplicate {
                    functional: 3,
                    of: 0
                },
                &Certificate::Redundant { functional: 4 }
            ]
        );
        let (dedup, merges) = h.dedup();
        assert_eq!(dedup.functionals.len(), 4);
        assert_eq!(merges, vec![(3, 0)]);
    }

    #[test]
    fn empty_interior_cone() {
        // x ≥ 0 and −x ≥ 0 in the plane leave the line x = 0
        let h = HRep::new(2, vec![vec![1, 0], vec![-1, 0]]).unwrap();
        let v = double_description(&h).unwrap();
        assert!(v.rays.is_empty());
        assert_eq!(v.lineality, vec![vec![0, 1]]);
        // a pointed cone reduced to the origin
        let h = HRep::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        let v = double_description(&h).unwrap();
        assert!(v.rays.is_empty() && v.lineality.is_empty());
        assert_eq!(v.cone_dim(), 0);
    }

    #[test]
    fn containment() {
        let h = HRep::new(2, vec![vec![1, 0], vec![-1, 2]]).unwrap();
        assert!(h.contains_int(&[0, 0]));
        assert!(h.contains_int(&[2, 1]));
        assert!(!h.contains_int(&[3, 1]));
        assert!(h.contains(&[linalg::rat(1, 2), linalg::rat(1, 3)]));
    }
}
