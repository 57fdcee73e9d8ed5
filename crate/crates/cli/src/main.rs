//! `numrange`: spatial numerical ranges of finite-dimensional normed algebras
//! from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error.

mod artifacts;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use numrange_core::geometry::ConvexPolygon;
use numrange_core::io::{algebra_from_json, algebra_to_json, format_element, parse_element, parse_scalar, polygon_from_json, polygon_to_json};
use numrange_core::range::{identity_oracle, spatial_range_with, RangeOptions, REFINE_DIRECTIONS};
use numrange_core::unitize::{unitize, unitize_forced, Flavor};
use numrange_core::verify::{self, CheckReport, Status, Thm21Input, Thm22Input, ToleranceProfile};
use numrange_core::{Algebra, Element, Exec, NormSpec};
use serde_json::json;

use artifacts::{Provenance, ReportDocument, Summary};

const REGULAR_TOL: f64 = 1e-6;
const THEOREM_CASES: [&str; 7] = ["thm21", "thm22", "cor23", "thm24", "thm25", "thm26", "random"];

#[derive(Parser)]
#[command(name = "numrange", version, about = "Spatial numerical ranges of finite-dimensional normed algebras")]
struct Cli {
    /// Seed for every sampler; overrides the profile's seed.
    #[arg(long, global = true, env = "NUMRANGE_SEED")]
    seed: Option<u64>,
    /// Tolerance profile (JSON); missing fields take their defaults.
    #[arg(long, global = true, value_name = "FILE")]
    profile: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print dimension, norm, identity, faithfulness and regularity.
    Describe {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
    },
    /// Sample V(a): writes cloud.csv and hull.json to the output directory.
    Range {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        /// Element literal, e.g. `1,0` or `0.5+0.5i,1`.
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = ".", value_name = "DIR")]
        out_dir: PathBuf,
        #[arg(long)]
        n_sphere: Option<usize>,
        #[arg(long)]
        n_dual: Option<usize>,
        /// Support directions refined by local search (p-norms only).
        #[arg(long, default_value_t = REFINE_DIRECTIONS)]
        refine: usize,
        /// Also write the range at the identity (unital algebras).
        #[arg(long, value_enum)]
        oracle: Option<Oracle>,
    },
    /// Emit the algebra file of the unitization.
    Unitize {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = FlavorArg::Op)]
        flavor: FlavorArg,
        /// Unitize a non-faithful base anyway (the result is a seminorm).
        #[arg(long)]
        force: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run one check or gallery case, or everything.
    Verify {
        /// Gallery case, or thm21 | thm22 | cor23 | thm24 | thm25 | thm26 | random.
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        case: Option<String>,
        /// Gallery plus the random suite.
        #[arg(long)]
        all: bool,
        #[arg(long, value_name = "FILE")]
        spec: Option<PathBuf>,
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(short = 'b', allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(short = 'x', allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(short = 'y', allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        /// Elements `a_n` converging to `a`, separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        sequence: Option<String>,
        /// Basis of a subalgebra containing `a`, separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        subalgebra: Option<String>,
        #[arg(long)]
        force: bool,
        /// Accepted instances for the random suite.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run the gallery of worked examples.
    Gallery {
        #[arg(long, conflicts_with = "case", required_unless_present = "case")]
        all: bool,
        #[arg(long)]
        case: Option<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Render hulls and a cloud to SVG.
    Plot {
        #[arg(long, value_name = "FILE")]
        hull: Vec<PathBuf>,
        #[arg(long, value_name = "FILE")]
        cloud: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Identity,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Op,
    L1,
}

/// Errors caused by the invocation rather than the computation.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

enum Outcome {
    Ok,
    ChecksFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.jobs {
        Some(0) => Err(usage("--jobs must be positive")),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(anyhow::Error::from).and_then(|pool| pool.install(|| run(&cli))),
        None => run(&cli),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            if let Some(Usage(msg)) = e.downcast_ref::<Usage>() {
                let mut cmd = Cli::command();
                let _ = cmd.error(clap::error::ErrorKind::InvalidValue, msg).print();
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}

fn load_profile(cli: &Cli) -> Result<ToleranceProfile> {
    let mut profile = match &cli.profile {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing profile {}", path.display()))?
        }
        None => ToleranceProfile::default(),
    };
    if let Some(seed) = cli.seed {
        profile.seed = seed;
    }
    profile.validate()?;
    Ok(profile)
}

/// The algebra and the sha256 of the file it came from.
fn load_spec(path: &Path) -> Result<(Algebra, String)> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let algebra = algebra_from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok((algebra, artifacts::sha256_hex(&bytes)))
}

fn element_for(algebra: &Algebra, literal: &str, what: &str) -> Result<Element> {
    let e = parse_element(literal).with_context(|| format!("parsing {what}"))?;
    if e.dim() != algebra.dim() {
        bail!("{what} has {} components but the algebra has dimension {}", e.dim(), algebra.dim());
    }
    Ok(e)
}

fn element_list(algebra: &Algebra, literal: Option<&str>, what: &str) -> Result<Vec<Element>> {
    literal.map(|s| s.split(';').map(|t| element_for(algebra, t, what)).collect()).unwrap_or_else(|| Ok(Vec::new()))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let profile = load_profile(cli)?;
    match &cli.command {
        Command::Describe { spec } => describe(spec),
        Command::Range { spec, a, out_dir, n_sphere, n_dual, refine, oracle } => {
            range(spec, a, out_dir, *n_sphere, *n_dual, *refine, oracle.is_some(), &profile)
        }
        Command::Unitize { spec, flavor, force, out } => cmd_unitize(spec, *flavor, *force, out.as_deref(), &profile),
        Command::Verify { case, all, out, count, .. } => {
            let (reports, prov) = if *all {
                let mut reports = verify::run_gallery(&profile)?;
                let (_, suite) = verify::run_random_suite(*count, &profile)?;
                reports.extend(suite);
                (reports, Provenance::new("verify --all", &profile, None).arg("count", count))
            } else {
                let name = case.as_deref().ok_or_else(|| usage("--case or --all is required"))?;
                verify_case(name, &cli.command, &profile)?
            };
            finish_reports(&reports, prov, out.as_deref())
        }
        Command::Gallery { all, case, out } => {
            let (reports, prov) = if *all {
                (verify::run_gallery(&profile)?, Provenance::new("gallery --all", &profile, None))
            } else {
                let name = case.as_deref().unwrap_or_default();
                if !verify::case_names().contains(&name) {
                    return Err(unknown_case(name));
                }
                (vec![verify::run_case(name, &profile)?], Provenance::new("gallery", &profile, None).arg("case", name))
            };
            finish_reports(&reports, prov, out.as_deref())
        }
        Command::Plot { hull, cloud, out } => plot(hull, cloud.as_deref(), out),
    }
}

fn unknown_case(name: &str) -> anyhow::Error {
    let names: Vec<&str> = verify::case_names().into_iter().chain(THEOREM_CASES).collect();
    usage(format!("unknown case '{name}' (expected one of: {})", names.join(", ")))
}

fn finish_reports(reports: &[CheckReport], provenance: Provenance, out: Option<&Path>) -> Result<Outcome> {
    artifacts::print_reports(reports);
    if let Some(path) = out {
        let doc = ReportDocument { provenance, summary: Summary::of(reports), reports };
        artifacts::write_file(path, artifacts::to_pretty_json(&doc)?.as_bytes())?;
    }
    Ok(if reports.iter().any(|r| r.status == Status::Fail) { Outcome::ChecksFailed } else { Outcome::Ok })
}

/// `(1,0.5+2i)`, with plain decimal components.
fn tuple(e: &Element) -> String {
    let parts: Vec<String> = e
        .as_slice()
        .iter()
        .map(|z| match (z.re, z.im) {
            (re, im) if im == 0.0 => format!("{}", re + 0.0),
            (re, im) if re == 0.0 => format!("{im}i"),
            (re, im) if im < 0.0 => format!("{re}-{}i", -im),
            (re, im) => format!("{re}+{im}i"),
        })
        .collect();
    format!("({})", parts.join(","))
}

fn describe(spec: &Path) -> Result<Outcome> {
    let (alg, _) = load_spec(spec)?;
    let norm = alg.norm_spec().describe();
    let identity = alg.find_identity();
    let faith = alg.is_faithful();
    println!("name: {}", alg.name().unwrap_or("(unnamed)"));
    println!("dim: {}", alg.dim());
    println!("norm: {norm}");
    let unital = match &identity {
        Some(e) => format!("unital {}", tuple(e)),
        None => "non-unital".to_owned(),
    };
    println!("identity: {}", identity.as_ref().map(tuple).unwrap_or_else(|| "none".into()));
    let faithful = match &faith.witness {
        None => "faithful".to_owned(),
        Some(w) => format!("NOT faithful (witness {})", tuple(w)),
    };
    println!("faithful: {}", if faith.faithful { "yes".to_owned() } else { format!("no, {} A = 0", tuple(faith.witness.as_ref().unwrap())) });
    let mut summary = vec![unital, faithful];
    if matches!(alg.norm_spec(), NormSpec::P(_)) {
        let reg = alg.is_regular(REGULAR_TOL)?;
        match &reg.witness {
            None => {
                println!("regular: yes ({} probes, min ||a||_op/||a|| = {})", reg.tested, reg.min_ratio);
                summary.push("regular".into());
            }
            Some(w) => {
                println!("regular: no, ||a||_op = {} < ||a|| = {} at a = {}", w.op_norm, w.norm, tuple(&w.element));
                summary.push(format!("{norm} not regular"));
            }
        }
    } else {
        println!("regular: not tested for this norm");
    }
    println!("associativity defect: {:e}", alg.associativity_defect());
    println!("summary: {}", summary.join(", "));
    Ok(Outcome::Ok)
}

#[allow(clippy::too_many_arguments)]
fn range(
    spec: &Path,
    a: &str,
    out_dir: &Path,
    n_sphere: Option<usize>,
    n_dual: Option<usize>,
    refine: usize,
    with_oracle: bool,
    profile: &ToleranceProfile,
) -> Result<Outcome> {
    let (alg, spec_hash) = load_spec(spec)?;
    let a = element_for(&alg, a, "-a")?;
    let exact = matches!(alg.norm_spec(), NormSpec::P(_));
    let opts = RangeOptions {
        n_sphere: n_sphere.unwrap_or(if exact { profile.n_sphere } else { profile.n_sphere_numeric }),
        n_dual: n_dual.unwrap_or(if exact { profile.n_dual } else { profile.n_probes }),
        seed: profile.seed,
        exec: Exec::Parallel,
        refine,
    };
    if opts.n_sphere == 0 || opts.n_dual == 0 {
        return Err(usage("sample counts must be positive"));
    }
    let est = spatial_range_with(&alg, &a, &opts)?;
    let literal = format_element(a.as_slice());
    let prov =
        Provenance::new("range", profile, Some(spec_hash)).arg("a", &literal).arg("n_sphere", opts.n_sphere).arg("n_dual", opts.n_dual).arg("refine", refine);

    let csv = artifacts::cloud_csv(&est.cloud)?;
    let cloud_path = out_dir.join("cloud.csv");
    artifacts::write_file(&cloud_path, &csv)?;
    let m = &est.cloud.meta;
    let meta = json!({
        "kind": "sampled-hull",
        "provenance": prov,
        "algebra": m.algebra,
        "norm": m.norm,
        "a": literal,
        "radius": est.radius,
        "radius_witness": [est.radius_witness.re, est.radius_witness.im],
        "points": est.cloud.len(),
        "unit_vectors": est.cloud.xs.len(),
        "refined": m.refined,
        "skipped": m.skipped,
        "exact_duality": m.exact_duality,
        "cloud_csv": "cloud.csv",
        "cloud_csv_sha256": artifacts::sha256_hex(&csv),
    });
    artifacts::write_file(&out_dir.join("hull.json"), polygon_to_json(&est.hull, meta)?.as_bytes())?;
    println!("points: {} from {} unit vectors", est.cloud.len(), est.cloud.xs.len());
    println!("hull vertices: {}", est.hull.vertices().len());
    println!("radius: {} at {}", est.radius, numrange_core::io::format_scalar(est.radius_witness));

    if with_oracle {
        match alg.find_identity() {
            Some(one) => {
                let orc = identity_oracle(&alg, one.as_slice(), a.as_slice())?;
                let radius = orc.polygon.max_modulus();
                let meta = json!({
                    "kind": "identity-support-function",
                    "provenance": prov,
                    "a": literal,
                    "identity": format_element(one.as_slice()),
                    "radius": radius,
                    "slack": orc.slack,
                });
                artifacts::write_file(&out_dir.join("identity_hull.json"), polygon_to_json(&orc.polygon, meta)?.as_bytes())?;
                println!("identity oracle: {} vertices, radius {radius}", orc.polygon.vertices().len());
            }
            None => eprintln!("note: the algebra has no identity, so no identity oracle was written"),
        }
    }
    Ok(Outcome::Ok)
}

fn cmd_unitize(spec: &Path, flavor: FlavorArg, force: bool, out: Option<&Path>, profile: &ToleranceProfile) -> Result<Outcome> {
    let (alg, spec_hash) = load_spec(spec)?;
    if !matches!(alg.norm_spec(), NormSpec::P(_)) {
        bail!("only algebras with a p-norm can be unitized");
    }
    let flavor = match flavor {
        FlavorArg::Op => Flavor::Op,
        FlavorArg::L1 => Flavor::L1,
    };
    let u = if force { unitize_forced(&alg, flavor)? } else { unitize(&alg, flavor)? };
    let text = algebra_to_json(u.algebra())?;
    let prov = Provenance::new("unitize", profile, Some(spec_hash)).arg("flavor", flavor).arg("force", force);
    if u.is_seminorm() {
        eprintln!("note: seminorm regime, the base is not faithful");
    }
    if let (Flavor::L1, Some(e)) = (flavor, alg.find_identity()) {
        eprintln!("note: the base is already unital (identity {}); the l1 unitization is still a norm", format_element(&e));
    }
    match out {
        Some(path) => {
            artifacts::write_file(path, text.as_bytes())?;
            eprintln!("provenance: {}", serde_json::to_string(&prov)?);
        }
        None => print!("{text}"),
    }
    Ok(Outcome::Ok)
}

fn verify_case(name: &str, cmd: &Command, profile: &ToleranceProfile) -> Result<(Vec<CheckReport>, Provenance)> {
    let Command::Verify { spec, a, b, x, y, alpha, lambda, sequence, subalgebra, force, count, .. } = cmd else { unreachable!() };
    if verify::case_names().contains(&name) {
        return Ok((vec![verify::run_case(name, profile)?], Provenance::new("verify", profile, None).arg("case", name)));
    }
    if !THEOREM_CASES.contains(&name) {
        return Err(unknown_case(name));
    }
    if name == "random" {
        let (_, reports) = verify::run_random_suite(*count, profile)?;
        return Ok((reports, Provenance::new("verify", profile, None).arg("case", name).arg("count", count)));
    }
    let spec = spec.as_deref().ok_or_else(|| usage(format!("--case {name} needs --spec")))?;
    let (alg, hash) = load_spec(spec)?;
    let a_lit = a.as_deref().ok_or_else(|| usage(format!("--case {name} needs -a")))?;
    let a = element_for(&alg, a_lit, "-a")?;
    let alpha = parse_scalar(alpha).context("parsing --alpha")?;
    let lambda = parse_scalar(lambda).context("parsing --lambda")?;
    let b = match b {
        Some(lit) => element_for(&alg, lit, "-b")?,
        None => Element::zeros(alg.dim()),
    };
    let seq = element_list(&alg, sequence.as_deref(), "--sequence")?;
    let mut prov = Provenance::new("verify", profile, Some(hash)).arg("case", name).arg("a", format_element(a.as_slice()));
    let report = match name {
        "thm21" => {
            let x_lit = x.as_deref().ok_or_else(|| usage("--case thm21 needs -x"))?;
            let x = unit(&alg, &element_for(&alg, x_lit, "-x")?)?;
            let y = y.as_deref().map(|l| element_for(&alg, l, "-y").and_then(|v| unit(&alg, &v))).transpose()?;
            prov = prov.arg("x", format_element(x.as_slice()));
            verify::check_thm21(&alg, &Thm21Input { a, b, alpha, x, y, sequence: seq }, profile)?
        }
        "thm22" => {
            let basis = subalgebra.as_deref().map(|s| element_list(&alg, Some(s), "--subalgebra")).transpose()?;
            verify::check_thm22(&alg, &Thm22Input { a, b, alpha, subalgebra: basis, sequence: seq }, profile)?
        }
        "cor23" => verify::check_cor23(&alg, &a, profile)?,
        "thm24" => verify::check_thm24(&alg, &a, lambda, *force, profile)?,
        "thm25" => verify::check_thm25(&alg, &a, lambda, profile)?,
        "thm26" => verify::check_thm26(&alg, &a, lambda, profile)?,
        _ => unreachable!(),
    };
    Ok((vec![report], prov.arg("lambda", numrange_core::io::format_scalar(lambda))))
}

fn unit(alg: &Algebra, v: &Element) -> Result<Element> {
    numrange_core::sampling::normalize(alg, v.as_slice()).ok_or_else(|| anyhow!("cannot normalize the zero vector"))
}

fn plot(hulls: &[PathBuf], cloud: Option<&Path>, out: &Path) -> Result<Outcome> {
    if hulls.is_empty() && cloud.is_none() {
        return Err(usage("plot needs --hull or --cloud"));
    }
    let mut inputs = Vec::new();
    let mut layers = Vec::new();
    for path in hulls {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let text = String::from_utf8(bytes.clone()).with_context(|| format!("{} is not UTF-8", path.display()))?;
        let (poly, meta): (ConvexPolygon, _) = polygon_from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
        let label = file_label(path);
        let radius = meta.get("radius").and_then(|r| r.as_f64()).unwrap_or_else(|| poly.max_modulus());
        inputs.push(json!({"file": label, "sha256": artifacts::sha256_hex(&bytes)}));
        layers.push(svg::Layer { label, vertices: poly.vertices().to_vec(), radius });
    }
    let mut points: Vec<C64> = Vec::new();
    if let Some(path) = cloud {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        points = artifacts::read_cloud_csv(&bytes).with_context(|| format!("parsing {}", path.display()))?.into_iter().map(|p| p.z).collect();
        inputs.push(json!({"file": file_label(path), "sha256": artifacts::sha256_hex(&bytes)}));
    }
    let provenance = json!({"tool": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION"), "command": "plot", "inputs": inputs});
    let text = svg::render(&svg::Plot { layers, cloud: points, provenance: serde_json::to_string(&provenance)? });
    artifacts::write_file(out, text.as_bytes())?;
    Ok(Outcome::Ok)
}

fn file_label(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}
