//! Triangle inequalities: one linear functional on `𝔞³ ≅ ℚ¹²` for every
//! ordered triple of Schubert classes whose `⊙₀` product is the top class.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::Fixtures;
use crate::linalg::{self, Rational};
use crate::rootdata::{DiagramAutomorphism, Parabolic, WeylElement};
use crate::schubert::SchubertRing;

pub const DIM: usize = 12;

pub type Functional = [i64; DIM];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InequalityKind {
    /// Essential: no class in the triple is the identity.
    #[serde(rename = "ETI")]
    Eti,
    /// Weak: some class in the triple is the identity.
    #[serde(rename = "WTI")]
    Wti,
    #[serde(rename = "chamber")]
    Chamber,
}

impl fmt::Display for InequalityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Eti => "ETI",
            Self::Wti => "WTI",
            Self::Chamber => "chamber",
        })
    }
}

/// Which product decides that a triple contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    Degenerate,
    /// The full cup product, giving the extended system.
    Cup,
}

/// `⟨a, h⟩ ≥ 0` with `a` primitive, plus where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInequality {
    pub coefficients: Functional,
    pub kind: InequalityKind,
    pub parabolic: Option<Parabolic>,
    pub triple: Option<[WeylElement; 3]>,
}

impl LinearInequality {
    pub fn evaluate(&self, h: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .zip(h)
            .map(|(&a, x)| Rational::from_integer(a.into()) * x)
            .sum()
    }

    pub fn labels(&self) -> Option<[String; 3]> {
        let p = self.parabolic?;
        let t = self.triple?;
        let ring = SchubertRing::get(p);
        Some(t.map(|w| {
            let l = ring.label(ring.index_of(&w).unwrap());
            if l == "b_0" {
                "1".to_string()
            } else {
                l.to_string()
            }
        }))
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} >= 0", format_functional(&self.coefficients))
    }
}

/// `x_1+y_2-2z_3` style rendering.
pub fn format_functional(a: &Functional) -> String {
    let mut s = String::new();
    for (k, &c) in a.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let var = format!("{}_{}", ['x', 'y', 'z', 'w'][k % 4], k / 4 + 1);
        let sign = if c < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = if c.abs() == 1 {
            String::new()
        } else {
            c.abs().to_string()
        };
        s.push_str(&format!("{sign}{mag}{var}"));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Primitive integer representative of a rational 12-vector.
pub fn normalize(v: &[Rational]) -> Result<Functional> {
    let p = linalg::primitive_i64(v)?;
    p.try_into().map_err(|_| Error::DimensionMismatch {
        expected: DIM,
        got: v.len(),
    })
}

pub fn normalize_int(v: &[i64; DIM]) -> Functional {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    if g == 0 {
        *v
    } else {
        v.map(|x| x / g)
    }
}

/// Ordered triples `(w1, w2, w3)` in `W^P` with `ε_{w1} ⋅ ε_{w2} ⋅ ε_{w3} = ε_{w_o^P}`.
pub fn enumerate_triples(p: Parabolic, product: Product) -> Vec<[WeylElement; 3]> {
    let ring = SchubertRing::get(p);
    let odot = product == Product::Degenerate;
    let n = ring.len();
    let top_degree = ring.degree(ring.top());
    let target = [(ring.top(), 1)];
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ij = ring.multiply(&[(i, 1)], &[(j, 1)], odot);
            if ij.is_empty() {
                continue;
            }
            for k in 0..n {
                if ring.degree(i) + ring.degree(j) + ring.degree(k) != top_degree {
                    continue;
                }
                if ring.multiply(&ij, &[(k, 1)], odot) == target {
                    out.push([ring.classes()[i], ring.classes()[j], ring.classes()[k]]);
                }
            }
        }
    }
    out
}

pub fn enumerate_deepest_triples(p: Parabolic) -> Vec<[WeylElement; 3]> {
    enumerate_triples(p, Product::Degenerate)
}

/// `λ_{w1}(h_1) + λ_{w2}(h_2) + λ_{w3}(h_3) ≥ 0`.
pub fn inequality_of(p: Parabolic, triple: &[WeylElement; 3]) -> Result<LinearInequality> {
    let mut v: Vec<Rational> = Vec::with_capacity(DIM);
    for w in triple {
        if !p.is_min_rep(w) {
            return Err(Error::NotMinimalRep {
                element: w.word_string(),
                parabolic: p.node(),
            });
        }
        v.extend(p.singular_weight(w).coords().iter().cloned());
    }
    let kind = if triple.contains(&WeylElement::IDENTITY) {
        InequalityKind::Wti
    } else {
        InequalityKind::Eti
    };
    Ok(LinearInequality {
        coefficients: normalize(&v)?,
        kind,
        parabolic: Some(p),
        triple: Some(*triple),
    })
}

/// `x_j ≥ y_j ≥ z_j ≥ |w_j|` for each factor.
pub fn chamber_inequalities() -> Vec<LinearInequality> {
    let rows: [[i64; 4]; 4] = [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 1, 1]];
    let mut out = Vec::new();
    for j in 0..3 {
        for r in rows {
            let mut a = [0i64; DIM];
            a[4 * j..4 * j + 4].copy_from_slice(&r);
            out.push(LinearInequality {
                coefficients: a,
                kind: InequalityKind::Chamber,
                parabolic: None,
                triple: None,
            });
        }
    }
    out
}

pub fn triangle_system(p: Parabolic, product: Product) -> Result<Vec<LinearInequality>> {
    enumerate_triples(p, product)
        .iter()
        .map(|t| inequality_of(p, t))
        .collect()
}

/// Triangle inequalities for P1..P4 followed by the chamber.
pub fn full_system() -> Result<Vec<LinearInequality>> {
    let mut out = Vec::new();
    for p in Parabolic::all() {
        out.extend(triangle_system(p, Product::Degenerate)?);
    }
    out.extend(chamber_inequalities());
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymmetryGroup {
    /// Permutations of the three factors.
    S3,
    /// Factor permutations together with diagonal triality.
    S3xF,
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

impl SymmetryGroup {
    pub fn automorphisms(&self) -> Vec<DiagramAutomorphism> {
        match self {
            Self::S3 => vec![DiagramAutomorphism::IDENTITY],
            Self::S3xF => DiagramAutomorphism::all(),
        }
    }

    pub fn order(&self) -> usize {
        6 * self.automorphisms().len()
    }

    /// All images of a functional, normalized. Triality acts by an
    /// orthogonal map, so functionals transform like points.
    pub fn orbit(&self, a: &Functional) -> BTreeSet<Functional> {
        let mut out = BTreeSet::new();
        for g in self.automorphisms() {
            let moved = apply_automorphism(&g, a);
            for perm in PERMS {
                out.insert(permute_blocks(&moved, perm));
            }
        }
        out
    }
}

/// Block `j` of the input becomes block `perm[j]`.
pub fn permute_blocks<T: Copy + Default>(a: &[T; DIM], perm: [usize; 3]) -> [T; DIM] {
    let mut out = [T::default(); DIM];
    for j in 0..3 {
        out[4 * perm[j]..4 * perm[j] + 4].copy_from_slice(&a[4 * j..4 * j + 4]);
    }
    out
}

/// Diagonal action of a diagram automorphism, renormalized.
pub fn apply_automorphism(g: &DiagramAutomorphism, a: &Functional) -> Functional {
    let m = g.matrix();
    let mut v: Vec<Rational> = Vec::with_capacity(DIM);
    for j in 0..3 {
        for r in 0..4 {
            v.push(
                (0..4)
                    .map(|c| &m[r][c] * Rational::from_integer(a[4 * j + c].into()))
                    .sum(),
            );
        }
    }
    normalize(&v).expect("small coefficients")
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    pub representative: Functional,
    /// Indices into the decomposed system.
    pub members: Vec<usize>,
    /// Number of distinct functionals in the full group orbit.
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitDecomposition {
    pub group: SymmetryGroup,
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.size).collect()
    }

    /// Orbit index of every inequality of the decomposed system.
    pub fn orbit_ids(&self, len: usize) -> Vec<usize> {
        let mut ids = vec![0; len];
        for (k, o) in self.orbits.iter().enumerate() {
            for &m in &o.members {
                ids[m] = k;
            }
        }
        ids
    }
}

/// Partition by group orbits; each representative is the lexicographically
/// smallest functional in its orbit, and orbits are listed in order of
/// first appearance in the system.
pub fn orbit_decompose(system: &[LinearInequality], group: SymmetryGroup) -> OrbitDecomposition {
    let mut by_rep: BTreeMap<Functional, usize> = BTreeMap::new();
    let mut orbits: Vec<Orbit> = Vec::new();
    for (k, ineq) in system.iter().enumerate() {
        let orbit = group.orbit(&ineq.coefficients);
        let rep = *orbit.iter().next().unwrap();
        match by_rep.get(&rep) {
            Some(&o) => orbits[o].members.push(k),
            None => {
                by_rep.insert(rep, orbits.len());
                orbits.push(Orbit {
                    representative: rep,
                    members: vec![k],
                    size: orbit.len(),
                });
            }
        }
    }
    OrbitDecomposition { group, orbits }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountSummary {
    pub p1: usize,
    pub p2: usize,
    pub p3: usize,
    pub p4: usize,
    pub chamber: usize,
    pub total: usize,
}

pub fn count_summary(system: &[LinearInequality]) -> CountSummary {
    let count = |p: u8| {
        system
            .iter()
            .filter(|i| i.parabolic.map(|q| q.node()) == Some(p))
            .count()
    };
    CountSummary {
        p1: count(1),
        p2: count(2),
        p3: count(3),
        p4: count(4),
        chamber: system
            .iter()
            .filter(|i| i.kind == InequalityKind::Chamber)
            .count(),
        total: system.len(),
    }
}

/// Section heading such as `ETI(2)`.
pub fn section_of(ineq: &LinearInequality) -> String {
    match ineq.parabolic {
        Some(p) => format!("{}({})", ineq.kind, p.node()),
        None => "chamber".to_string(),
    }
}

/// Group used for the printed orbit sizes: factor permutations for P1,
/// permutations with triality for P2.
pub fn printed_group(p: u8) -> SymmetryGroup {
    if p == 2 {
        SymmetryGroup::S3xF
    } else {
        SymmetryGroup::S3
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrintedReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl PrintedReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Every printed inequality must occur in `system` under its section, with
/// the printed triple and orbit size where those are given.
pub fn check_printed(system: &[LinearInequality], fixtures: &Fixtures) -> Result<PrintedReport> {
    let printed = fixtures.printed_inequalities()?;
    let mut mismatches = Vec::new();
    for line in &printed {
        let a = normalize_int(&line.coefficients);
        let hits: Vec<&LinearInequality> = system
            .iter()
            .filter(|i| {
                i.coefficients == a && i.parabolic.map(|p| p.node()) == Some(line.parabolic)
            })
            .collect();
        let expected_kind = if line.essential {
            InequalityKind::Eti
        } else {
            InequalityKind::Wti
        };
        let desc = format!("{} {} >= 0", line.section, format_functional(&a));
        if hits.is_empty() {
            mismatches.push(format!("{desc}: not generated"));
            continue;
        }
        if hits.iter().any(|i| i.kind != expected_kind) {
            mismatches.push(format!("{desc}: generated with kind {}", hits[0].kind));
        }
        let p = Parabolic::new(line.parabolic)?;
        if let Some(labels) = &line.triple {
            let ring = SchubertRing::get(p);
            let mut triple = [WeylElement::IDENTITY; 3];
            for (slot, l) in triple.iter_mut().zip(labels) {
                match ring.find_label(l) {
                    Some(k) => *slot = ring.classes()[k],
                    None => mismatches.push(format!("{desc}: unknown class {l}")),
                }
            }
            let ineq = inequality_of(p, &triple)?;
            if ineq.coefficients != a {
                mismatches.push(format!(
                    "{desc}: triple gives {}",
                    format_functional(&ineq.coefficients)
                ));
            }
            if !hits.iter().any(|i| i.triple == Some(triple)) {
                mismatches.push(format!("{desc}: triple not enumerated"));
            }
        }
        if let Some(size) = line.orbit_size {
            let orbit = printed_group(line.parabolic).orbit(&a);
            if orbit.len() != size {
                mismatches.push(format!("{desc}: orbit size {} printed {size}", orbit.len()));
            }
        }
    }
    Ok(PrintedReport {
        checked: printed.len(),
        mismatches,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InequalityRecord {
    pub coefficients: Vec<i64>,
    pub parabolic: Option<u8>,
    pub triple_words: Option<Vec<Vec<u8>>>,
    pub triple_labels: Option<Vec<String>>,
    pub kind: InequalityKind,
    pub orbit_id: usize,
}

/// Records in system order with S3×F orbit ids.
pub fn export_records(system: &[LinearInequality]) -> Vec<InequalityRecord> {
    let ids = orbit_decompose(system, SymmetryGroup::S3xF).orbit_ids(system.len());
    system
        .iter()
        .zip(ids)
        .map(|(i, id)| InequalityRecord {
            coefficients: i.coefficients.to_vec(),
            parabolic: i.parabolic.map(|p| p.node()),
            triple_words: i
                .triple
                .map(|t| t.iter().map(|w| w.canonical_word()).collect()),
            triple_labels: i.labels().map(|l| l.to_vec()),
            kind: i.kind,
            orbit_id: id,
        })
        .collect()
}

/// Reads back the coefficient vectors of exported records.
pub fn functionals_from_records(records: &[InequalityRecord]) -> Result<Vec<Functional>> {
    records
        .iter()
        .map(|r| {
            r.coefficients
                .clone()
                .try_into()
                .map_err(|v: Vec<i64>| Error::DimensionMismatch {
                    expected: DIM,
                    got: v.len(),
                })
        })
        .collect()
}

/// Markdown grouped by section, one orbit per line with its size.
pub fn markdown_report(system: &[LinearInequality]) -> String {
    let c = count_summary(system);
    let mut s = String::from("# Triangle inequalities\n\n");
    s.push_str(&format!(
        "{} + {} + {} + {} + {} (chamber) = {}\n",
        c.p1, c.p2, c.p3, c.p4, c.chamber, c.total
    ));
    for p in 1..=4u8 {
        for kind in [InequalityKind::Eti, InequalityKind::Wti] {
            let sub: Vec<LinearInequality> = system
                .iter()
                .filter(|i| i.parabolic.map(|q| q.node()) == Some(p) && i.kind == kind)
                .cloned()
                .collect();
            let dec = orbit_decompose(&sub, printed_group(p));
            s.push_str(&format!(
                "\n## {kind}({p}): {} inequalities, {} orbits under {:?}\n\n",
                sub.len(),
                dec.orbits.len(),
                dec.group
            ));
            for o in &dec.orbits {
                let first = &sub[o.members[0]];
                let triple = first
                    .labels()
                    .map(|l| format!("({}) ", l.join(", ")))
                    .unwrap_or_default();
                s.push_str(&format!(
                    "- {triple}{} >= 0 ({})\n",
                    format_functional(&first.coefficients),
                    o.size
                ));
            }
        }
    }
    s.push_str("\n## Chamber\n\n");
    for i in system.iter().filter(|i| i.kind == InequalityKind::Chamber) {
        s.push_str(&format!("- {i}\n"));
    }
    s
}
