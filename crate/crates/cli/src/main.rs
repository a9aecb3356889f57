use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eigencone::cone::{double_description, irredundancy, HRep};
use eigencone::fixtures::Fixtures;
use eigencone::hilbert::{check_h_prime, d4_hilbert_basis};
use eigencone::pipeline::{
    self, PipelineConfig, EXPECTED_HILBERT, EXPECTED_INEQUALITIES, EXPECTED_ORBITS, EXPECTED_RAYS,
};
use eigencone::reptensor::{saturation_sample, verify_generators};
use eigencone::rootdata::{DiagramAutomorphism, Parabolic};
use eigencone::schubert::{verify_table, SchubertRing};
use eigencone::triangles::{count_summary, export_records, full_system, markdown_report};
use eigencone::Error;

const THREADS_VAR: &str = "EIGENCONE_THREADS";

#[derive(Parser)]
#[command(
    name = "eigencone",
    version,
    about = "Eigencone and tensor saturation for D4 / Spin(8)"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Md)]
    format: Format,
    /// Write output files to this directory instead of printing.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory of fixture files overriding the embedded copies.
    #[arg(long, global = true, hide = true)]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Md => "md",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Schubert charts and ⊙₀ multiplication tables, checked against the reference tables.
    Tables {
        /// Parabolic node; defaults to P1 and P2.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        parabolic: Option<u8>,
    },
    /// The full triangle inequality system with orbit decomposition.
    Inequalities,
    /// Extremal rays, facets and the irredundancy certificate.
    Cone,
    /// Hilbert basis of the cone's lattice points and its orbits.
    Hilbert,
    /// Invariant dimensions of the Hilbert basis orbit representatives.
    Invariants {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random triples to test for saturation.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        bound: i64,
    },
    /// Run the whole chain and report every checked number.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        bound: i64,
    },
}

/// Computation finished but disagrees with the reference data.
struct Mismatch(String);

enum Failure {
    Mismatch(Mismatch),
    Internal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Internal(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.into())
    }
}

type Outcome = Result<(), Failure>;

struct Output {
    dir: Option<PathBuf>,
    format: Format,
}

impl Output {
    /// Writes `stem.{json,md}` into the output directory, or prints it.
    fn emit(
        &self,
        stem: &str,
        json: impl FnOnce() -> serde_json::Result<String>,
        md: impl FnOnce() -> String,
    ) -> Outcome {
        let body = match self.format {
            Format::Json => json()? + "\n",
            Format::Md => md(),
        };
        match &self.dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(format!("{stem}.{}", self.format.ext())), body)?;
            }
            None => print!("{body}"),
        }
        Ok(())
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch(Mismatch(msg())))
    }
}

fn load_fixtures(dir: Option<&Path>) -> Result<Fixtures, Error> {
    match dir {
        Some(d) => Fixtures::with_overrides(d),
        None => Ok(Fixtures::embedded()),
    }
}

/// Differences between the ⊙₀ table of `P_{g(1)}` and the image of the P1 table.
fn transport_diff(p: Parabolic) -> Vec<String> {
    let p1 = Parabolic::new(1).unwrap();
    let g = DiagramAutomorphism::all()
        .into_iter()
        .find(|g| g.apply_parabolic(p1) == p)
        .expect("triality moves node 1 to every outer node");
    let (src, dst) = (SchubertRing::get(p1), SchubertRing::get(p));
    let image = |i: usize| dst.index_of(&src.classes()[i].transport(&g));
    let mut diffs = Vec::new();
    for i in 0..src.len() {
        for j in i..src.len() {
            let (Some(a), Some(b)) = (image(i), image(j)) else {
                diffs.push(format!("class {} has no image", src.label(i)));
                continue;
            };
            let mut moved: Vec<(usize, i64)> = src
                .odot(i, j)
                .into_iter()
                .map(|(k, c)| (image(k).unwrap_or(usize::MAX), c))
                .collect();
            moved.sort();
            let mut target = dst.odot(a, b);
            target.sort();
            if moved != target {
                diffs.push(format!("{} ⊙₀ {}", src.label(i), src.label(j)));
            }
        }
    }
    diffs
}

fn cmd_tables(out: &Output, fixtures: &Fixtures, parabolic: Option<u8>) -> Outcome {
    let nodes = match parabolic {
        Some(p) => vec![p],
        None => vec![1, 2],
    };
    let mut diffs = Vec::new();
    for node in nodes {
        let p = Parabolic::new(node)?;
        let ring = SchubertRing::get(p);
        out.emit(
            &format!("p{node}_chart"),
            || serde_json::to_string_pretty(&ring.export().classes),
            || ring.chart_markdown(),
        )?;
        out.emit(
            &format!("p{node}_table"),
            || serde_json::to_string_pretty(&ring.export()),
            || ring.table_markdown(),
        )?;
        if node <= 2 {
            let report = verify_table(p, fixtures)?;
            diffs.extend(report.mismatches.iter().map(|m| format!("P{node}: {m}")));
        } else {
            diffs.extend(
                transport_diff(p)
                    .into_iter()
                    .map(|m| format!("P{node}: {m}")),
            );
        }
    }
    for d in &diffs {
        eprintln!("diff: {d}");
    }
    fixtures.verify_checksums()?;
    check(diffs.is_empty(), || {
        format!("{} table entries differ", diffs.len())
    })
}

fn cmd_inequalities(out: &Output) -> Outcome {
    let system = full_system()?;
    let c = count_summary(&system);
    eprintln!(
        "{} + {} + {} + {} + {} (chamber) = {}",
        c.p1, c.p2, c.p3, c.p4, c.chamber, c.total
    );
    out.emit(
        "inequalities",
        || serde_json::to_string_pretty(&export_records(&system)),
        || markdown_report(&system),
    )?;
    check(c.total == EXPECTED_INEQUALITIES, || {
        format!("{} inequalities", c.total)
    })
}

fn cmd_cone(out: &Output) -> Outcome {
    let system = full_system()?;
    let h = HRep::new(12, system.iter().map(|i| i.coefficients.to_vec()).collect())?;
    let v = double_description(&h)?;
    let irr = irredundancy(&h, &v);
    eprintln!(
        "{} inequalities, {} rays, dimension {}, irredundant: {}",
        h.functionals.len(),
        v.rays.len(),
        irr.cone_dim,
        irr.irredundant
    );
    out.emit(
        "cone",
        || {
            serde_json::to_string_pretty(&serde_json::json!({
                "functionals": h.functionals,
                "rays": v.rays,
                "lineality": v.lineality,
                "irredundancy": irr,
            }))
        },
        || irr.to_text(&h),
    )?;
    check(irr.irredundant && v.rays.len() == EXPECTED_RAYS, || {
        format!("{} rays, irredundant: {}", v.rays.len(), irr.irredundant)
    })
}

fn cmd_hilbert(out: &Output, fixtures: &Fixtures) -> Outcome {
    let basis = d4_hilbert_basis()?;
    let report = check_h_prime(fixtures, &basis)?;
    eprintln!(
        "{} elements, {} orbits",
        basis.elements.len(),
        basis.orbit_reps.len()
    );
    out.emit(
        "hilbert",
        || serde_json::to_string_pretty(&basis.elements),
        || basis.orbit_markdown(),
    )?;
    check(
        basis.elements.len() == EXPECTED_HILBERT
            && basis.orbit_reps.len() == EXPECTED_ORBITS
            && report.passed(),
        || {
            format!(
                "{} elements, {} orbits, {report:?}",
                basis.elements.len(),
                basis.orbit_reps.len()
            )
        },
    )
}

fn cmd_invariants(out: &Output, seed: u64, samples: usize, bound: i64) -> Outcome {
    let basis = d4_hilbert_basis()?;
    let reps: Vec<[[i64; 4]; 3]> = basis
        .orbit_reps
        .iter()
        .map(|o| o.representative.fundamental())
        .collect();
    let report = verify_generators(&reps)?;
    out.emit(
        "invariants",
        || serde_json::to_string_pretty(&report),
        || report.markdown(),
    )?;
    let mut ok = report.passed();
    if samples > 0 {
        let sample = saturation_sample(samples, bound, seed)?;
        eprintln!("{}", sample.summary());
        out.emit(
            "saturation",
            || serde_json::to_string_pretty(&sample),
            || {
                let mut s = format!("# Saturation sample\n\n{}\n", sample.summary());
                for v in &sample.violations {
                    s.push_str(&format!("- violation: {:?}\n", v));
                }
                s
            },
        )?;
        ok &= sample.passed();
    }
    check(ok, || "an invariant check failed".into())
}

fn cmd_verify(out: &Output, fixtures: Fixtures, seed: u64, samples: usize, bound: i64) -> Outcome {
    let report = pipeline::run(&PipelineConfig {
        seed,
        samples,
        bound,
        fixtures,
    })?;
    for s in &report.stages {
        eprintln!(
            "{:<22} {} ({:.2?}) {}",
            s.name,
            if s.passed { "PASS" } else { "FAIL" },
            s.elapsed,
            s.summary
        );
    }
    out.emit(
        "verify",
        || serde_json::to_string_pretty(&report),
        || report.markdown(),
    )?;
    match report.first_failure() {
        None => Ok(()),
        Some(s) => Err(Failure::Mismatch(Mismatch(format!(
            "stage {} failed: {}",
            s.name, s.summary
        )))),
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| format!("{THREADS_VAR}={v} is not a number"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let out = Output {
        dir: cli.out.clone(),
        format: cli.format,
    };
    let result = load_fixtures(cli.fixtures.as_deref())
        .map_err(Failure::from)
        .and_then(|fixtures| match cli.command {
            Command::Tables { parabolic } => cmd_tables(&out, &fixtures, parabolic),
            Command::Inequalities => cmd_inequalities(&out),
            Command::Cone => cmd_cone(&out),
            Command::Hilbert => cmd_hilbert(&out, &fixtures),
            Command::Invariants {
                seed,
                samples,
                bound,
            } => cmd_invariants(&out, seed, samples, bound),
            Command::Verify {
                seed,
                samples,
                bound,
            } => cmd_verify(&out, fixtures, seed, samples, bound),
        });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(Mismatch(m))) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
