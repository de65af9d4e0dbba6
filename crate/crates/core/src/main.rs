use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use lensphere::complexes::build::neighborhood;
use lensphere::complexes::export::{from_json, to_dot, to_json};
use lensphere::complexes::verify::seed_vertex;
use lensphere::complexes::{
    build_disk_complex, build_dual_tree, build_pprime_complex, build_primitive_complex, build_sphere_complex, verify, Census,
    ComplexGraph, Suite, VerifierReport,
};
use lensphere::splitting::cache::{DiskCache, CACHE_DIR_ENV};
use lensphere::splitting::{build_diagram, HandleSide};
use lensphere::surface::triangulation::MODEL_VERSION;
use lensphere::Error;

const EXIT_USAGE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_FAILED: u8 = 4;

#[derive(Parser)]
#[command(name = "lensphere", version, about = "Haken sphere and primitive disk complexes of lens spaces")]
struct Cli {
    /// Rayon worker threads (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Lens {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
    /// Per-edge normal coordinate budget
    #[arg(long, default_value_t = 8)]
    max_weight: u32,
    /// Directory of the content-addressed disk-set cache
    #[arg(long, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Diagram,
    DiskComplex,
    PrimitiveComplex,
    Pprime,
    DualTree,
    SphereComplex,
}

#[derive(Subcommand)]
enum Command {
    /// Build one explored object
    Build {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        lens: Lens,
        /// Keep only the ball of this radius around the seed vertex
        #[arg(long)]
        radius: Option<usize>,
        /// Base primitive V-disk of a dual tree (default: alpha2)
        #[arg(long)]
        base: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites
    Verify {
        #[command(flatten)]
        lens: Lens,
        /// Suite name; repeatable; default every suite that applies
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Report file; certificates are written next to it
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-render a saved graph
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::CacheMismatch(_)) { EXIT_MISMATCH } else { EXIT_USAGE };
        Failure(code, e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("rayon pool is configured once");
    }
    let result = match cli.command {
        Command::Build { kind, lens, radius, base, format, out } => build(kind, &lens, radius, base, format, out.as_deref()),
        Command::Verify { lens, suites, out } => run_verify(&lens, &suites, out.as_deref()),
        Command::Export { input, format, out } => export(&input, format, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(code)
        }
    }
}

fn census(lens: &Lens, max_weight: u32) -> Result<Census, Failure> {
    let d = build_diagram(lens.p, lens.q)?;
    Ok(match &lens.cache_dir {
        Some(dir) => Census::build_cached(&d, max_weight, &DiskCache::new(dir))?,
        None => Census::build(&d, max_weight),
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure(EXIT_USAGE, format!("cannot write {}: {}", path.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn render(g: &ComplexGraph, format: Format) -> String {
    match format {
        Format::Json => to_json(g),
        Format::Dot => to_dot(g),
    }
}

fn build(kind: Kind, lens: &Lens, radius: Option<usize>, base: Option<String>, format: Format, out: Option<&Path>) -> Result<u8, Failure> {
    if kind == Kind::Diagram {
        if format == Format::Dot {
            return Err(Failure(EXIT_USAGE, "the diagram has no DOT rendering".into()));
        }
        let d = build_diagram(lens.p, lens.q)?;
        let doc = json!({
            "budget": { "p": d.p(), "q": d.q(), "max_weight": lens.max_weight, "model_version": MODEL_VERSION },
            "preset": d.to_preset(),
            "seed_intersections": d.seed_intersections(),
            "homology_invariants": d.homology_invariants(),
            "checks": d.check().err(),
        });
        emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")), out)?;
        return Ok(0);
    }
    let c = census(lens, lens.max_weight)?;
    let g = match kind {
        Kind::DiskComplex => build_disk_complex(&c, HandleSide::V),
        Kind::PrimitiveComplex => build_primitive_complex(&c, HandleSide::V),
        Kind::Pprime => build_pprime_complex(&c, HandleSide::V),
        Kind::DualTree => {
            let key = base.unwrap_or_else(|| c.diagram.alpha2().key().to_string());
            build_dual_tree(&c, HandleSide::V, &key)?
        }
        Kind::SphereComplex => build_sphere_complex(&c).0,
        Kind::Diagram => unreachable!(),
    };
    let g = match radius {
        None => g,
        Some(r) => {
            let seed = match kind {
                Kind::SphereComplex => seed_vertex(&c, &g).map(|i| g.vertex(i).key.clone()),
                Kind::DualTree => g.vertices().first().map(|v| v.key.clone()),
                _ => Some(c.diagram.alpha2().key().to_string()).filter(|k| g.index_of(k).is_some()),
            };
            let seed = seed.ok_or_else(|| Failure(EXIT_USAGE, "no seed vertex at this budget".into()))?;
            neighborhood(&g, &seed, r)?
        }
    };
    emit(&render(&g, format), out)?;
    Ok(0)
}

fn run_verify(lens: &Lens, names: &[String], out: Option<&Path>) -> Result<u8, Failure> {
    let d = build_diagram(lens.p, lens.q)?;
    let explicit = !names.is_empty();
    let suites: Vec<Suite> = if explicit {
        names.iter().map(|s| s.parse::<Suite>()).collect::<Result<_, _>>()?
    } else {
        Suite::ALL.to_vec()
    };
    let need = suites.iter().map(|s| s.census_budget(lens.max_weight)).max().unwrap_or(lens.max_weight);
    let c = census(lens, need)?;
    let mut reports: Vec<VerifierReport> = Vec::new();
    for s in suites {
        match verify(s, &c, lens.max_weight) {
            Ok(r) => reports.push(r),
            // suites that do not apply are skipped unless asked for by name
            Err(Error::Precondition(msg)) if !explicit => log::info!("skipping {}: {}", s, msg),
            Err(e) => return Err(e.into()),
        }
    }
    let mut code = 0;
    for r in &reports {
        eprintln!("{}: {} ({})", r.suite, r.verdict, r.budgets.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("; "));
        if let Some(cert) = r.failure_certificate() {
            let dir = out.and_then(Path::parent).filter(|p| !p.as_os_str().is_empty()).map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
            let path = dir.join(format!("certificate-{}-L{}_{}-N{}.json", slug(r.suite.name()), d.p(), d.q(), lens.max_weight));
            fs::write(&path, format!("{}\n", serde_json::to_string_pretty(&cert).expect("json")))
                .map_err(|e| Failure(EXIT_USAGE, format!("cannot write {}: {}", path.display(), e)))?;
            eprintln!("certificate: {}", path.display());
            code = EXIT_FAILED;
        }
    }
    emit(&format!("{}\n", serde_json::to_string_pretty(&reports).expect("json")), out)?;
    Ok(code)
}

fn slug(name: &str) -> String {
    name.replace('≥', "ge")
}

fn export(input: &Path, format: Format, out: Option<&Path>) -> Result<u8, Failure> {
    let text = fs::read_to_string(input).map_err(|e| Failure(EXIT_USAGE, format!("cannot read {}: {}", input.display(), e)))?;
    let g = from_json(&text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {}", input.display(), e)))?;
    if g.budget.model_version != MODEL_VERSION {
        return Err(Failure(
            EXIT_MISMATCH,
            format!("{} was built with model {:?}, this build uses {:?}", input.display(), g.budget.model_version, MODEL_VERSION),
        ));
    }
    emit(&render(&g, format), out)?;
    Ok(0)
}
