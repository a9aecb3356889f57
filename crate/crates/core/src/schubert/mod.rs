//! Cohomology of the four generalized Grassmannians `G/P_i` of D4: the cup
//! product in the Schubert basis and the degenerate product `⊙₀`.
//!
//! Structure constants come from BGG divided differences. With
//! `P_w = |W| · S_w` the integral Schubert polynomials obtained from the
//! product of positive roots, `d^w_{u,v} = ∂_w(P_u P_v) / |W|²`.
//! The Chevalley formula is kept separately and used as a cross-check.

pub mod poly;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::{ChartRow, Fixtures, LinearCombination};
use crate::linalg::Rational;
use crate::rootdata::{
    positive_roots, rho, DiagramAutomorphism, Parabolic, Weight, WeylElement, WEYL_ORDER,
};
use poly::Poly;

/// `P_w = |W| S_w` for every `w ∈ W`, built downward from the top class.
fn schubert_polys() -> &'static HashMap<WeylElement, Poly> {
    static POLYS: OnceLock<HashMap<WeylElement, Poly>> = OnceLock::new();
    POLYS.get_or_init(|| {
        let top = positive_roots().iter().fold(Poly::constant(1), |acc, r| {
            acc.mul(&Poly::linear(r.map(|x| x as i128)))
                .expect("root product fits")
        });
        let mut polys = HashMap::from([(WeylElement::longest(), top)]);
        // visit by decreasing length so every parent is ready
        let mut elems: Vec<WeylElement> = WeylElement::all().to_vec();
        elems.reverse();
        for w in elems {
            if polys.contains_key(&w) {
                continue;
            }
            let i = (1..=4).find(|&i| !w.has_right_descent(i)).unwrap();
            let parent = w * WeylElement::simple_reflection(i).unwrap();
            let p = polys[&parent]
                .divided_difference(i)
                .expect("divided difference");
            polys.insert(w, p);
        }
        polys
    })
}

/// A Schubert class `ε^P_w` with `w ∈ W^P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SchubertClass {
    parabolic: Parabolic,
    rep: WeylElement,
}

impl SchubertClass {
    pub fn new(parabolic: Parabolic, rep: WeylElement) -> Result<Self> {
        if !parabolic.is_min_rep(&rep) {
            return Err(Error::NotMinimalRep {
                element: rep.word_string(),
                parabolic: parabolic.node(),
            });
        }
        Ok(Self { parabolic, rep })
    }

    pub fn from_label(parabolic: Parabolic, label: &str) -> Result<Self> {
        let ring = SchubertRing::get(parabolic);
        let i = ring
            .find_label(label)
            .ok_or_else(|| Error::Parse(format!("no class {label} for {parabolic}")))?;
        Ok(ring.class(i))
    }

    pub fn parabolic(&self) -> Parabolic {
        self.parabolic
    }

    pub fn rep(&self) -> WeylElement {
        self.rep
    }

    pub fn degree(&self) -> usize {
        self.rep.length()
    }

    /// `λ_w = w ω_P`.
    pub fn lambda(&self) -> Weight {
        self.parabolic.singular_weight(&self.rep)
    }

    /// `n_w = (w⁻¹ρ)(x_P)`.
    pub fn level(&self) -> Rational {
        self.parabolic.level(&self.rep)
    }

    pub fn label(&self) -> &'static str {
        let ring = SchubertRing::get(self.parabolic);
        ring.label(ring.index_of(&self.rep).unwrap())
    }
}

impl fmt::Display for SchubertClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// An integral combination of Schubert classes of one `G/P`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomologyElement {
    parabolic: Parabolic,
    coeffs: BTreeMap<WeylElement, i64>,
}

impl CohomologyElement {
    pub fn zero(parabolic: Parabolic) -> Self {
        Self {
            parabolic,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_class(c: SchubertClass) -> Self {
        Self {
            parabolic: c.parabolic,
            coeffs: BTreeMap::from([(c.rep, 1)]),
        }
    }

    fn from_indexed(ring: &SchubertRing, terms: &[(usize, i64)]) -> Self {
        let mut out = Self::zero(ring.parabolic);
        for &(k, c) in terms {
            out.add_term(ring.classes[k], c);
        }
        out
    }

    fn add_term(&mut self, w: WeylElement, c: i64) {
        let e = self.coeffs.entry(w).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&w);
        }
    }

    pub fn parabolic(&self) -> Parabolic {
        self.parabolic
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, c: &SchubertClass) -> i64 {
        self.coeffs.get(&c.rep).copied().unwrap_or(0)
    }

    /// Terms in canonical class order.
    pub fn terms(&self) -> Vec<(SchubertClass, i64)> {
        let ring = SchubertRing::get(self.parabolic);
        let mut out: Vec<(usize, i64)> = self
            .coeffs
            .iter()
            .map(|(w, &c)| (ring.index_of(w).unwrap(), c))
            .collect();
        out.sort();
        out.into_iter().map(|(k, c)| (ring.class(k), c)).collect()
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let degrees: BTreeSet<usize> = self.coeffs.keys().map(|w| w.length()).collect();
        (degrees.len() == 1).then(|| *degrees.iter().next().unwrap())
    }

    pub fn to_labels(&self) -> LinearCombination {
        let mut out: LinearCombination = self
            .terms()
            .into_iter()
            .map(|(c, k)| (k, c.label().to_string()))
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }
}

impl fmt::Display for CohomologyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_combination(&self.to_labels()))
    }
}

pub fn format_combination(c: &LinearCombination) -> String {
    if c.is_empty() {
        return "0".to_string();
    }
    c.iter()
        .map(|(k, l)| {
            if *k == 1 {
                l.clone()
            } else {
                format!("{k}{l}")
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

fn check_same(u: &SchubertClass, v: &SchubertClass) -> Result<()> {
    if u.parabolic != v.parabolic {
        return Err(Error::ParabolicMismatch(
            u.parabolic.node(),
            v.parabolic.node(),
        ));
    }
    Ok(())
}

pub fn cup_product(u: &SchubertClass, v: &SchubertClass) -> Result<CohomologyElement> {
    check_same(u, v)?;
    let ring = SchubertRing::get(u.parabolic);
    let (i, j) = (
        ring.index_of(&u.rep).unwrap(),
        ring.index_of(&v.rep).unwrap(),
    );
    Ok(CohomologyElement::from_indexed(ring, ring.cup(i, j)))
}

pub fn odot_product(u: &SchubertClass, v: &SchubertClass) -> Result<CohomologyElement> {
    check_same(u, v)?;
    let ring = SchubertRing::get(u.parabolic);
    let (i, j) = (
        ring.index_of(&u.rep).unwrap(),
        ring.index_of(&v.rep).unwrap(),
    );
    Ok(CohomologyElement::from_indexed(ring, &ring.odot(i, j)))
}

/// Multiplication by the divisor class `ε^P_{s_{i_P}}`, via the Chevalley
/// formula.
pub fn chevalley_multiply(c: &CohomologyElement) -> Result<CohomologyElement> {
    let ring = SchubertRing::get(c.parabolic);
    let mut out = CohomologyElement::zero(c.parabolic);
    for (w, &k) in &c.coeffs {
        let i = ring.index_of(w).ok_or_else(|| Error::NotMinimalRep {
            element: w.word_string(),
            parabolic: c.parabolic.node(),
        })?;
        for (t, d) in ring.chevalley(i) {
            out.add_term(ring.classes[t], k * d);
        }
    }
    Ok(out)
}

/// `θ^P`: the class with representative `w_o w w_{o,P}`.
pub fn poincare_dual(u: &SchubertClass) -> SchubertClass {
    SchubertClass {
        parabolic: u.parabolic,
        rep: u.parabolic.dual_rep(&u.rep),
    }
}

/// All structure constants of `H*(G/P)` in the Schubert basis.
#[derive(Debug)]
pub struct SchubertRing {
    parabolic: Parabolic,
    classes: Vec<WeylElement>,
    labels: Vec<String>,
    levels: Vec<i64>,
    index: HashMap<WeylElement, usize>,
    cup: Vec<Vec<Vec<(usize, i64)>>>,
}

impl SchubertRing {
    pub fn get(p: Parabolic) -> &'static SchubertRing {
        static RINGS: [OnceLock<SchubertRing>; 4] = [
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
        ];
        RINGS[p.node() as usize - 1]
            .get_or_init(|| Self::build(p).expect("Schubert structure constants"))
    }

    pub fn build(p: Parabolic) -> Result<SchubertRing> {
        let classes = p.min_coset_reps();
        let index: HashMap<WeylElement, usize> =
            classes.iter().enumerate().map(|(k, w)| (*w, k)).collect();
        let labels = class_labels(p, &classes)?;
        let levels = classes
            .iter()
            .map(|w| {
                let n = p.level(w);
                if n.is_integer() {
                    Ok(n.to_integer().try_into().map_err(|_| Error::Overflow)?)
                } else {
                    Err(Error::Invariant(format!("level of {w} is {n}")))
                }
            })
            .collect::<Result<Vec<i64>>>()?;
        let n = classes.len();
        let top = p.longest_rep().length();
        let polys = schubert_polys();
        let norm = (WEYL_ORDER * WEYL_ORDER) as i128;
        // for each class, the left descent used to reach it from a shorter class
        let steps: Vec<Option<(u8, usize)>> = classes
            .iter()
            .map(|x| {
                (1..=4).find(|&l| x.has_left_descent(l)).map(|l| {
                    let y = WeylElement::simple_reflection(l).unwrap() * *x;
                    (l, index[&y])
                })
            })
            .collect();
        let mut cup = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let m = classes[i].length() + classes[j].length();
                if m > top {
                    continue;
                }
                let f = polys[&classes[i]].mul(&polys[&classes[j]])?;
                let mut derived: Vec<Option<Poly>> = vec![None; n];
                let mut terms = Vec::new();
                for k in 0..n {
                    let len = classes[k].length();
                    if len > m {
                        break;
                    }
                    let g = match steps[k] {
                        None => f.clone(),
                        Some((l, prev)) => derived[prev]
                            .as_ref()
                            .expect("shorter classes come first")
                            .divided_difference(l)?,
                    };
                    if len == m {
                        let c = g.constant_term();
                        if c % norm != 0 {
                            return Err(Error::NonIntegral(format!(
                                "{}·{} at {}: {c}/{norm}",
                                classes[i], classes[j], classes[k]
                            )));
                        }
                        let d = (c / norm) as i64;
                        if d < 0 {
                            return Err(Error::Invariant(format!(
                                "negative structure constant {d} in {}·{}",
                                classes[i], classes[j]
                            )));
                        }
                        if d != 0 {
                            terms.push((k, d));
                        }
                    }
                    derived[k] = Some(g);
                }
                cup[j][i] = terms.clone();
                cup[i][j] = terms;
            }
        }
        Ok(SchubertRing {
            parabolic: p,
            classes,
            labels,
            levels,
            index,
            cup,
        })
    }

    pub fn parabolic(&self) -> Parabolic {
        self.parabolic
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[WeylElement] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> SchubertClass {
        SchubertClass {
            parabolic: self.parabolic,
            rep: self.classes[i],
        }
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        let l = crate::fixtures::normalize_label(label);
        self.labels.iter().position(|x| *x == l)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.classes[i].length()
    }

    pub fn level(&self, i: usize) -> i64 {
        self.levels[i]
    }

    /// Index of the top class `ε_{w_o^P}`.
    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn dual(&self, i: usize) -> usize {
        self.index[&self.parabolic.dual_rep(&self.classes[i])]
    }

    pub fn cup(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.cup[i][j]
    }

    /// The level condition `n_u + n_v − n_w = ρ(x_P)`.
    pub fn keeps_term(&self, i: usize, j: usize, k: usize) -> bool {
        self.levels[i] + self.levels[j] - self.levels[k] == self.levels[0]
    }

    /// The same condition written as `(u⁻¹ρ + v⁻¹ρ − w⁻¹ρ − ρ)(x_P) = 0`.
    pub fn delta(&self, i: usize, j: usize, k: usize) -> bool {
        let r = rho();
        let inv = |w: &WeylElement| w.inverse().act(&r);
        let s = &(&inv(&self.classes[i]) + &inv(&self.classes[j])) - &(&inv(&self.classes[k]) + &r);
        s.pair(&self.parabolic.coweight()) == Rational::from_integer(0.into())
    }

    pub fn odot(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        self.cup[i][j]
            .iter()
            .copied()
            .filter(|&(k, _)| self.keeps_term(i, j, k))
            .collect()
    }

    /// Product of two combinations, given as sparse index vectors.
    pub fn multiply(
        &self,
        a: &[(usize, i64)],
        b: &[(usize, i64)],
        odot: bool,
    ) -> Vec<(usize, i64)> {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(i, x) in a {
            for &(j, y) in b {
                let terms = if odot {
                    self.odot(i, j)
                } else {
                    self.cup[i][j].clone()
                };
                for (k, d) in terms {
                    *acc.entry(k).or_default() += x * y * d;
                }
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// Chevalley formula for `ε_{s_{i_P}} · ε_w`.
    pub fn chevalley(&self, i: usize) -> Vec<(usize, i64)> {
        let w = self.classes[i];
        let len = w.length();
        let omega = self.parabolic.omega();
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for beta in positive_roots() {
            let x = w * WeylElement::reflection(&beta).unwrap();
            if x.length() != len + 1 {
                continue;
            }
            if let Some(&k) = self.index.get(&x) {
                let c = omega.dot(&Weight::from_ints(beta));
                let c: i64 = c.to_integer().try_into().unwrap();
                *acc.entry(k).or_default() += c;
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    pub fn format_terms(&self, terms: &[(usize, i64)]) -> String {
        let mut lc: LinearCombination = terms
            .iter()
            .map(|&(k, c)| (c, self.labels[k].clone()))
            .collect();
        lc.sort_by(|a, b| a.1.cmp(&b.1));
        format_combination(&lc)
    }

    pub fn to_labels(&self, terms: &[(usize, i64)]) -> LinearCombination {
        let mut lc: LinearCombination = terms
            .iter()
            .map(|&(k, c)| (c, self.labels[k].clone()))
            .collect();
        lc.sort_by(|a, b| a.1.cmp(&b.1));
        lc
    }

    /// The chart of `(label, w, λ_w, n_w)`, words in canonical form.
    pub fn chart(&self) -> Vec<ChartRow> {
        (0..self.len())
            .map(|k| ChartRow {
                label: self.labels[k].clone(),
                word: self.classes[k].canonical_word(),
                lambda: self
                    .parabolic
                    .singular_weight(&self.classes[k])
                    .doubled()
                    .map(|d| d.map(|x| x / 2))
                    .expect("λ_w is integral for these parabolics"),
                level: self.levels[k],
            })
            .collect()
    }
}

/// Labels `b_k` or `b_k^j`, numbered within each degree in canonical order.
pub fn canonical_labels(classes: &[WeylElement]) -> Vec<String> {
    let mut by_degree: BTreeMap<usize, usize> = BTreeMap::new();
    for w in classes {
        *by_degree.entry(w.length()).or_default() += 1;
    }
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    classes
        .iter()
        .map(|w| {
            let d = w.length();
            let k = seen.entry(d).or_default();
            *k += 1;
            if by_degree[&d] == 1 {
                format!("b_{d}")
            } else {
                format!("b_{d}^{k}")
            }
        })
        .collect()
}

/// Printed labels: read from the embedded charts for P1 and P2, and carried
/// to P3 and P4 from P1 by the diagram automorphisms `(1 3)` and `(1 4)`.
fn class_labels(p: Parabolic, classes: &[WeylElement]) -> Result<Vec<String>> {
    let fixtures = Fixtures::embedded();
    let (source, g) = match p.node() {
        1 | 2 => (p, DiagramAutomorphism::IDENTITY),
        n => (
            Parabolic::new(1)?,
            DiagramAutomorphism::transposition(1, n)?,
        ),
    };
    let mut labels = vec![String::new(); classes.len()];
    for row in fixtures.chart(source.node())? {
        let w = WeylElement::from_word(&row.word)?.transport(&g);
        let k = classes
            .iter()
            .position(|x| *x == w)
            .ok_or_else(|| Error::NotMinimalRep {
                element: w.word_string(),
                parabolic: p.node(),
            })?;
        labels[k] = row.label;
    }
    if labels.iter().any(String::is_empty) {
        return Err(Error::Invariant(format!("chart for {p} misses classes")));
    }
    Ok(labels)
}

/// Outcome of comparing computed charts and `⊙₀` tables with the printed ones.
#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub parabolic: u8,
    pub chart_rows: usize,
    pub printed_cells: usize,
    pub pairs_checked: usize,
    pub mismatches: Vec<String>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Recomputes the charts and multiplication tables of `G/P1` and `G/P2`.
pub fn verify_tables(fixtures: &Fixtures) -> Result<Vec<TableReport>> {
    [1, 2]
        .into_iter()
        .map(|p| verify_table(Parabolic::new(p)?, fixtures))
        .collect()
}

pub fn verify_table(p: Parabolic, fixtures: &Fixtures) -> Result<TableReport> {
    let ring = SchubertRing::get(p);
    let mut mismatches = Vec::new();

    let chart = fixtures.chart(p.node())?;
    let mut seen = BTreeSet::new();
    for row in &chart {
        let w = WeylElement::from_word(&row.word)?;
        let Some(k) = ring.index_of(&w) else {
            mismatches.push(format!("chart {}: {} is not in W^P", row.label, w));
            continue;
        };
        seen.insert(k);
        if w.length() != row.word.len() {
            mismatches.push(format!("chart {}: word is not reduced", row.label));
        }
        if ring.label(k) != row.label {
            mismatches.push(format!(
                "chart {}: word names class {}",
                row.label,
                ring.label(k)
            ));
        }
        let lambda = p.singular_weight(&w);
        if lambda != Weight::from_ints(row.lambda) {
            mismatches.push(format!(
                "chart {}: λ printed {:?}, computed {}",
                row.label, row.lambda, lambda
            ));
        }
        if ring.level(k) != row.level {
            mismatches.push(format!(
                "chart {}: n printed {}, computed {}",
                row.label,
                row.level,
                ring.level(k)
            ));
        }
    }
    if seen.len() != ring.len() || chart.len() != ring.len() {
        mismatches.push(format!(
            "chart lists {} rows covering {} of {} classes",
            chart.len(),
            seen.len(),
            ring.len()
        ));
    }

    let cells = fixtures.table(p.node())?;
    let mut printed = BTreeSet::new();
    for cell in &cells {
        let (Some(r), Some(c)) = (ring.find_label(&cell.row), ring.find_label(&cell.col)) else {
            mismatches.push(format!(
                "table cell {} × {}: unknown class",
                cell.row, cell.col
            ));
            continue;
        };
        printed.insert((r.min(c), r.max(c)));
        let computed = ring.to_labels(&ring.odot(r, c));
        if computed != cell.value {
            mismatches.push(format!(
                "table {} ⊙ {}: printed {}, computed {}",
                cell.row,
                cell.col,
                format_combination(&cell.value),
                format_combination(&computed)
            ));
        }
        if ring.odot(r, c) != ring.odot(c, r) {
            mismatches.push(format!(
                "table {} ⊙ {}: not commutative",
                cell.row, cell.col
            ));
        }
    }
    // pairs absent from the printed table must vanish
    let mut pairs = 0;
    for i in 1..ring.len() {
        for j in i..ring.len() {
            pairs += 1;
            if !printed.contains(&(i, j)) && !ring.odot(i, j).is_empty() {
                mismatches.push(format!(
                    "table {} ⊙ {}: unprinted but computed {}",
                    ring.label(i),
                    ring.label(j),
                    ring.format_terms(&ring.odot(i, j))
                ));
            }
        }
    }
    Ok(TableReport {
        parabolic: p.node(),
        chart_rows: chart.len(),
        printed_cells: cells.len(),
        pairs_checked: pairs,
        mismatches,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub label: String,
    pub word: Vec<u8>,
    pub lambda: Weight,
    pub level: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductRecord {
    pub left: String,
    pub right: String,
    pub cup: String,
    pub odot: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableExport {
    pub parabolic: u8,
    pub classes: Vec<ClassRecord>,
    pub products: Vec<ProductRecord>,
}

impl SchubertRing {
    /// Chart plus every nonzero product of non-identity classes.
    pub fn export(&self) -> TableExport {
        let classes = (0..self.len())
            .map(|k| ClassRecord {
                label: self.labels[k].clone(),
                word: self.classes[k].canonical_word(),
                lambda: self.parabolic.singular_weight(&self.classes[k]),
                level: self.levels[k],
            })
            .collect();
        let mut products = Vec::new();
        for i in 1..self.len() {
            for j in i..self.len() {
                if self.cup[i][j].is_empty() {
                    continue;
                }
                products.push(ProductRecord {
                    left: self.labels[i].clone(),
                    right: self.labels[j].clone(),
                    cup: self.format_terms(&self.cup[i][j]),
                    odot: self.format_terms(&self.odot(i, j)),
                });
            }
        }
        TableExport {
            parabolic: self.parabolic.node(),
            classes,
            products,
        }
    }

    pub fn chart_markdown(&self) -> String {
        let mut s = format!("# Schubert classes of G/{}\n\n", self.parabolic);
        s.push_str("| class | w | λ_w | n_w |\n|---|---|---|---|\n");
        for k in 0..self.len() {
            s.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                self.labels[k],
                self.classes[k].word_string(),
                self.parabolic.singular_weight(&self.classes[k]),
                self.levels[k]
            ));
        }
        s
    }

    /// The `⊙₀` table in the printed layout: lower triangle, columns up to
    /// half the top degree.
    pub fn table_markdown(&self) -> String {
        let half = self.degree(self.top()) / 2;
        let cols: Vec<usize> = (1..self.len())
            .filter(|&k| self.degree(k) <= half)
            .collect();
        let mut s = format!(
            "# Multiplication table for G/{} under ⊙₀\n\n",
            self.parabolic
        );
        s.push_str("| |");
        for &c in &cols {
            s.push_str(&format!(" {} |", self.labels[c]));
        }
        s.push_str("\n|---|");
        s.push_str(&"---|".repeat(cols.len()));
        s.push('\n');
        for r in 1..self.top() {
            s.push_str(&format!("| {} |", self.labels[r]));
            for &c in cols.iter().filter(|&&c| c <= r) {
                s.push_str(&format!(" {} |", self.format_terms(&self.odot(r, c))));
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u8) -> Parabolic {
        Parabolic::new(i).unwrap()
    }

    fn class(i: u8, label: &str) -> SchubertClass {
        SchubertClass::from_label(p(i), label).unwrap()
    }

    fn lc(s: &str) -> LinearCombination {
        crate::fixtures::parse_combination(s).unwrap()
    }

    #[test]
    fn schubert_polys_are_integral_and_homogeneous() {
        let polys = schubert_polys();
        assert_eq!(polys.len(), 192);
        assert_eq!(polys[&WeylElement::IDENTITY], Poly::constant(192));
        for (w, f) in polys {
            assert!(f.is_homogeneous_of(w.length()), "{w}");
        }
    }

    #[test]
    fn chevalley_examples() {
        let b1 = CohomologyElement::from_class(class(1, "b_1"));
        assert_eq!(chevalley_multiply(&b1).unwrap().to_labels(), lc("b_2"));
        let b2 = CohomologyElement::from_class(class(1, "b_2"));
        assert_eq!(
            chevalley_multiply(&b2).unwrap().to_labels(),
            lc("b_3^1+b_3^2")
        );
        let one = CohomologyElement::from_class(class(2, "b_0"));
        assert_eq!(chevalley_multiply(&one).unwrap().to_labels(), lc("b_1"));
    }

    #[test]
    fn cup_examples() {
        let b1 = class(1, "b_1");
        let b2 = class(1, "b_2");
        assert_eq!(cup_product(&b1, &b1).unwrap().to_labels(), lc("b_2"));
        assert_eq!(cup_product(&b2, &b2).unwrap().to_labels(), lc("2b_4"));
        let u = class(2, "b_2^1");
        let v = class(2, "b_2^2");
        assert_eq!(cup_product(&u, &v).unwrap().to_labels(), lc("b_4^2"));
        assert!(matches!(
            cup_product(&b1, &u),
            Err(Error::ParabolicMismatch(1, 2))
        ));
    }

    #[test]
    fn odot_examples() {
        let r = odot_product(&class(2, "b_2^1"), &class(2, "b_5^1")).unwrap();
        assert_eq!(r.to_labels(), lc("b_7^1"));
        let b31 = class(2, "b_3^1");
        assert!(odot_product(&b31, &b31).unwrap().is_zero());
        assert!(!cup_product(&b31, &b31).unwrap().is_zero());
    }

    #[test]
    fn poincare_dual_examples() {
        assert_eq!(poincare_dual(&class(2, "b_0")).label(), "b_9");
        let b41 = class(2, "b_4^1");
        assert_eq!(b41.rep(), WeylElement::from_word(&[2, 3, 1, 2]).unwrap());
        let d = poincare_dual(&b41);
        assert_eq!(d.label(), "b_5^1");
        assert_eq!(d.rep(), WeylElement::from_word(&[4, 2, 1, 3, 2]).unwrap());
        for q in Parabolic::all() {
            let ring = SchubertRing::get(q);
            for k in 0..ring.len() {
                assert_eq!(ring.dual(ring.dual(k)), k);
                assert_eq!(
                    ring.degree(k) + ring.degree(ring.dual(k)),
                    ring.degree(ring.top())
                );
            }
        }
    }

    #[test]
    fn chart_values() {
        let b = class(2, "b_4^4");
        assert_eq!(b.level(), Rational::from_integer(1.into()));
        assert_eq!(b.lambda(), Weight::from_ints([1, -1, 0, 0]));
    }

    #[test]
    fn printed_tables_match() {
        for report in verify_tables(&Fixtures::embedded()).unwrap() {
            assert!(report.passed(), "{:#?}", report.mismatches);
        }
    }

    #[test]
    fn odot_is_cup_for_minuscule_p1() {
        let ring = SchubertRing::get(p(1));
        for i in 0..ring.len() {
            for j in 0..ring.len() {
                assert_eq!(ring.odot(i, j), ring.cup(i, j));
            }
        }
    }

    #[test]
    fn chevalley_agrees_with_divided_differences() {
        for q in Parabolic::all() {
            let ring = SchubertRing::get(q);
            for k in 0..ring.len() {
                assert_eq!(ring.chevalley(k), ring.cup(1, k), "{q} {}", ring.label(k));
            }
        }
    }

    #[test]
    fn canonical_labels_differ_from_chart_only_within_degrees() {
        let ring = SchubertRing::get(p(2));
        let canon = canonical_labels(ring.classes());
        for (a, b) in canon.iter().zip(ring.labels()) {
            assert_eq!(a.split('^').next(), b.split('^').next());
        }
    }

    #[test]
    fn export_lists_products() {
        let e = SchubertRing::get(p(1)).export();
        assert_eq!(e.classes.len(), 8);
        assert!(e
            .products
            .iter()
            .any(|r| r.left == "b_2" && r.right == "b_2" && r.cup == "2b_4"));
        assert!(SchubertRing::get(p(2)).table_markdown().contains("b_7^1"));
    }
}
