//! The end-to-end verification run: Schubert tables, triangle inequalities,
//! cone geometry, Hilbert basis and invariants, each checked against the
//! embedded reference data.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::cone::{double_description, irredundancy, HRep};
use crate::error::Result;
use crate::fixtures::Fixtures;
use crate::hilbert::{check_h_prime, d4_hilbert_basis, format_triple, HPrimeReport};
use crate::reptensor::{saturation_sample, verify_generators, GeneratorReport, SaturationReport};
use crate::schubert::{verify_tables, TableReport};
use crate::triangles::{check_printed, count_summary, full_system, CountSummary, PrintedReport};

pub const EXPECTED_INEQUALITIES: usize = 306;
pub const EXPECTED_RAYS: usize = 81;
pub const EXPECTED_HILBERT: usize = 82;
pub const EXPECTED_ORBITS: usize = 10;

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub seed: u64,
    pub samples: usize,
    pub bound: i64,
    pub fixtures: Fixtures,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 500,
            bound: 4,
            fixtures: Fixtures::embedded(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeSummary {
    pub inequalities: usize,
    pub rays: usize,
    pub dimension: usize,
    pub facets: usize,
    pub irredundant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertSummary {
    pub elements: usize,
    pub orbits: usize,
    pub orbit_representatives: Vec<String>,
    pub non_ray: Vec<String>,
    pub printed_list: HPrimeReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub seed: u64,
    pub samples: usize,
    pub stages: Vec<Stage>,
    pub tables: Vec<TableReport>,
    pub inequalities: CountSummary,
    pub printed_inequalities: PrintedReport,
    pub cone: ConeSummary,
    pub hilbert: HilbertSummary,
    pub generators: GeneratorReport,
    pub saturation: Option<SaturationReport>,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.passed)
    }

    pub fn first_failure(&self) -> Option<&Stage> {
        self.stages.iter().find(|s| !s.passed)
    }

    pub fn markdown(&self) -> String {
        let mut s =
            String::from("# Verification report\n\n| stage | result | summary |\n|---|---|---|\n");
        for st in &self.stages {
            s.push_str(&format!(
                "| {} | {} | {} |\n",
                st.name,
                if st.passed { "PASS" } else { "FAIL" },
                st.summary
            ));
        }
        s.push_str(&format!(
            "\nOverall: {}\n",
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        s
    }
}

struct Stages(Vec<Stage>);

impl Stages {
    fn run<T>(
        &mut self,
        name: &'static str,
        f: impl FnOnce() -> Result<T>,
        judge: impl FnOnce(&T) -> (bool, String),
    ) -> Result<T> {
        let start = Instant::now();
        let out = f()?;
        let (passed, summary) = judge(&out);
        self.0.push(Stage {
            name,
            passed,
            summary,
            elapsed: start.elapsed(),
        });
        Ok(out)
    }
}

pub fn run(config: &PipelineConfig) -> Result<PipelineReport> {
    let fx = &config.fixtures;
    let mut stages = Stages(Vec::new());

    let tables = stages.run(
        "tables",
        || verify_tables(fx),
        |r: &Vec<TableReport>| {
            let bad: usize = r.iter().map(|t| t.mismatches.len()).sum();
            let cells: usize = r.iter().map(|t| t.printed_cells).sum();
            (bad == 0, format!("{cells} printed cells, {bad} mismatches"))
        },
    )?;

    let system = full_system()?;
    let inequalities = stages.run(
        "inequalities",
        || Ok(count_summary(&system)),
        |c| {
            (
                c.total == EXPECTED_INEQUALITIES
                    && [c.p1, c.p2, c.p3, c.p4, c.chamber] == [36, 186, 36, 36, 12],
                format!(
                    "{} + {} + {} + {} + {} = {}",
                    c.p1, c.p2, c.p3, c.p4, c.chamber, c.total
                ),
            )
        },
    )?;
    let printed_inequalities = stages.run(
        "printed inequalities",
        || check_printed(&system, fx),
        |r| {
            (
                r.passed(),
                format!("{} printed, {} mismatches", r.checked, r.mismatches.len()),
            )
        },
    )?;

    let cone = stages.run(
        "cone",
        || {
            let h = HRep::new(12, system.iter().map(|i| i.coefficients.to_vec()).collect())?;
            let v = double_description(&h)?;
            let irr = irredundancy(&h, &v);
            Ok(ConeSummary {
                inequalities: h.functionals.len(),
                rays: v.rays.len(),
                dimension: irr.cone_dim,
                facets: irr
                    .certificates
                    .iter()
                    .filter(|c| matches!(c, crate::cone::Certificate::Facet { .. }))
                    .count(),
                irredundant: irr.irredundant,
            })
        },
        |c| {
            (
                c.rays == EXPECTED_RAYS
                    && c.facets == EXPECTED_INEQUALITIES
                    && c.dimension == 12
                    && c.irredundant,
                format!(
                    "{} inequalities, {} facets, {} rays, dimension {}",
                    c.inequalities, c.facets, c.rays, c.dimension
                ),
            )
        },
    )?;

    let (basis, hilbert) = stages.run(
        "hilbert",
        || {
            let basis = d4_hilbert_basis()?;
            let summary = HilbertSummary {
                elements: basis.elements.len(),
                orbits: basis.orbit_reps.len(),
                orbit_representatives: basis
                    .orbit_reps
                    .iter()
                    .map(|o| format_triple(&o.representative.fundamental()))
                    .collect(),
                non_ray: basis
                    .non_ray
                    .iter()
                    .map(|e| format_triple(&e.fundamental()))
                    .collect(),
                printed_list: check_h_prime(fx, &basis)?,
            };
            Ok((basis, summary))
        },
        |(_, h)| {
            (
                h.elements == EXPECTED_HILBERT
                    && h.orbits == EXPECTED_ORBITS
                    && h.printed_list.passed(),
                format!(
                    "{} elements, {} orbits, non-ray {}",
                    h.elements,
                    h.orbits,
                    h.non_ray.join(", ")
                ),
            )
        },
    )?;

    let reps: Vec<[[i64; 4]; 3]> = basis
        .orbit_reps
        .iter()
        .map(|o| o.representative.fundamental())
        .collect();
    let generators = stages.run(
        "generator invariants",
        || verify_generators(&reps),
        |g| {
            let positive = g.rows.iter().filter(|r| r.invariant_dim > 0).count();
            (
                g.passed() && g.rows.len() == EXPECTED_ORBITS,
                format!("{positive} of {} positive", g.rows.len()),
            )
        },
    )?;

    let saturation = if config.samples > 0 {
        Some(stages.run(
            "saturation sample",
            || saturation_sample(config.samples, config.bound, config.seed),
            |s| (s.passed(), s.summary()),
        )?)
    } else {
        None
    };

    Ok(PipelineReport {
        seed: config.seed,
        samples: config.samples,
        stages: stages.0,
        tables,
        inequalities,
        printed_inequalities,
        cone,
        hilbert,
        generators,
        saturation,
    })
}
