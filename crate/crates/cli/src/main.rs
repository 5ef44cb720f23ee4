mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use betti_scope::exact::{charpoly, roots_nonnegative, row_sum_bound};
use betti_scope::laplacian::laplacian_kernel_dim;
use betti_scope::sampling::{empirical_profile, empirical_profiles, exact_profiles};
use betti_scope::spectrum::{ln_big, DENSE_CAP};
use betti_scope::{
    betti_exact, coboundary, estimate_betti_spectral_with, exact_spectrum, generate, laplacian, log_determinant_c,
    norm_bound, read_cplx, sampling_distance, test_betti, write_cplx, EstimatorConfig, FamilySpec, ReferenceCorpus,
    SimplicialComplex,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use report::{Recorder, RunReport, SCHEMA_VERSION};

/// Exact and sampled Betti numbers of bounded-degree simplicial complexes.
#[derive(Parser)]
#[command(name = "betti-scope", version)]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "BETTI_SCOPE_THREADS")]
    threads: Option<usize>,
    /// Write a JSON run report to this path
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a complex from a named family
    Gen(GenArgs),
    /// Print the exact Betti numbers
    Betti(FileArg),
    /// Spectral data of the Laplacians
    Spectrum(SpectrumArgs),
    /// Rooted-ball profile as JSON
    Profile(ProfileArgs),
    /// Sampling distance between two complexes
    Distance(DistanceArgs),
    /// Sampled spectral estimate of a normalized Betti number
    Estimate(EstimateArgs),
    /// Match a complex against a reference corpus
    Test(TestArgs),
    /// Check the structural and spectral invariants of a complex
    Verify(FileArg),
}

#[derive(Args, Serialize)]
struct FileArg {
    file: PathBuf,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Kind {
    Torus,
    Sphere,
    Cycle,
    Path,
    Simplex,
    RandomFlag,
}

#[derive(Args, Serialize)]
struct GenArgs {
    #[arg(long)]
    kind: Kind,
    /// Vertex count (side length for torus)
    #[arg(long)]
    n: Option<usize>,
    /// Dimension for sphere and simplex
    #[arg(long)]
    k: Option<usize>,
    /// Degree bound for random-flag
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Disjoint copies
    #[arg(long, default_value_t = 1)]
    copies: usize,
    /// Override the degree bound written to the header
    #[arg(long)]
    degree_bound: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct SpectrumArgs {
    file: PathBuf,
    /// Only this dimension
    #[arg(long)]
    dim: Option<usize>,
    /// Also print every eigenvalue
    #[arg(long)]
    eigenvalues: bool,
    /// Write the Laplacian of `--dim` as coordinate triplets
    #[arg(long, requires = "dim")]
    triplets: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct ProfileArgs {
    file: PathBuf,
    #[arg(long)]
    radius: usize,
    /// Root dimension
    #[arg(long, default_value_t = 0)]
    dim: usize,
    /// Sample this many vertex roots instead of enumerating all of them
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct DistanceArgs {
    first: PathBuf,
    second: PathBuf,
    #[arg(long)]
    rmax: usize,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Serialize)]
struct EstimateArgs {
    file: PathBuf,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Chebyshev degree R
    #[arg(long)]
    moments: Option<usize>,
    /// Sampled simplices S
    #[arg(long)]
    samples: Option<usize>,
    /// Spectral cut λ in (0, 1)
    #[arg(long)]
    cut: Option<f64>,
}

#[derive(Args, Serialize)]
struct TestArgs {
    file: PathBuf,
    /// Directory of `.cplx` files sharing one degree bound
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    radius: usize,
    /// Profile tolerance ρ
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
}

/// A bad command line or input, reported with exit code 2.
#[derive(Debug)]
struct Invalid(String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Invalid(msg.into()).into()
}

/// What a command hands back for the report.
struct Run {
    outputs: Value,
    seeds: Vec<u64>,
    code: ExitCode,
}

impl Run {
    fn ok(outputs: Value, seeds: Vec<u64>) -> Self {
        Run { outputs, seeds, code: ExitCode::SUCCESS }
    }
}

fn load(path: &Path, rec: &mut Recorder) -> Result<SimplicialComplex> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let k = read_cplx(&text).with_context(|| path.display().to_string())?;
    rec.input(path, &write_cplx(&k));
    Ok(k)
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen(a: &GenArgs, rec: &mut Recorder) -> Result<Run> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| invalid(format!("--kind {} needs --{flag}", kind_name(a.kind))));
    let mut spec = match a.kind {
        Kind::Torus => FamilySpec::torus(need(a.n, "n")?),
        Kind::Sphere => FamilySpec::sphere(need(a.k, "k")?),
        Kind::Cycle => FamilySpec::cycle(need(a.n, "n")?),
        Kind::Path => FamilySpec::path(need(a.n, "n")?),
        Kind::Simplex => FamilySpec::simplex(need(a.k, "k")?),
        Kind::RandomFlag => FamilySpec::random_flag(need(a.n, "n")?, need(a.d, "d")?, a.seed),
    };
    if a.copies != 1 {
        spec = FamilySpec::union(spec, a.copies);
    }
    if let Some(d) = a.degree_bound {
        spec = spec.with_degree_bound(d);
    }
    let k = generate(&spec)?;
    rec.phase("generate");
    let text = write_cplx(&k);
    emit(&text, a.output.as_deref())?;
    Ok(Run::ok(
        json!({ "spec": spec, "f_vector": k.f_vector(), "sha256": report::digest(&text) }),
        vec![a.seed],
    ))
}

fn kind_name(k: Kind) -> String {
    k.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn betti(a: &FileArg, rec: &mut Recorder) -> Result<Run> {
    let k = load(&a.file, rec)?;
    rec.phase("load");
    let b = betti_exact(&k);
    rec.phase("betti");
    println!("b = {b:?}");
    Ok(Run::ok(json!({ "betti": b, "f_vector": k.f_vector() }), vec![]))
}

fn dimensions(k: &SimplicialComplex, only: Option<usize>) -> Result<Vec<usize>> {
    let top = k.dimension().ok_or_else(|| invalid("complex is empty"))?;
    match only {
        Some(i) if i > top => Err(invalid(format!("complex has no {i}-simplices (top dimension {top})"))),
        Some(i) => Ok(vec![i]),
        None => Ok((0..=top).collect()),
    }
}

fn spectrum(a: &SpectrumArgs, rec: &mut Recorder) -> Result<Run> {
    let k = load(&a.file, rec)?;
    rec.phase("load");
    let mut out = Vec::new();
    for i in dimensions(&k, a.dim)? {
        let op = laplacian(&k, i);
        if let Some(p) = &a.triplets {
            fs::write(p, op.to_triplets()).with_context(|| format!("cannot write {}", p.display()))?;
        }
        let m = exact_spectrum::<f64>(&op)?;
        let c = log_determinant_c(&m);
        println!(
            "dim {i}: n = {}, K = {}, kernel = {}, lambda_max = {:.6}, c = {c:.6}",
            m.n(),
            m.support_bound(),
            m.kernel_multiplicity(),
            m.eigenvalues().last().copied().unwrap_or(0.0),
        );
        if a.eigenvalues {
            let list: Vec<String> = m.eigenvalues().iter().map(|x| format!("{x:.9}")).collect();
            println!("  {}", list.join(" "));
        }
        out.push(json!({
            "dimension": i,
            "n": m.n(),
            "norm_bound": m.support_bound(),
            "kernel_multiplicity": m.kernel_multiplicity(),
            "log_determinant_c": c,
            "log_kernel_sum": m.log_kernel_sum(),
            "eigenvalues": m.eigenvalues(),
        }));
    }
    rec.phase("spectrum");
    Ok(Run::ok(json!({ "laplacians": out }), vec![]))
}

fn profile(a: &ProfileArgs, rec: &mut Recorder) -> Result<Run> {
    let k = load(&a.file, rec)?;
    rec.phase("load");
    let p = match a.samples {
        Some(_) if a.dim != 0 => return Err(invalid("--samples applies to vertex roots only (--dim 0)")),
        Some(n) => empirical_profile(&k, a.radius, n, a.seed)?,
        None => betti_scope::exact_profile(&k, a.radius, a.dim)?,
    };
    rec.phase("profile");
    let text = serde_json::to_string_pretty(&p)? + "\n";
    emit(&text, a.output.as_deref())?;
    let seeds = if a.samples.is_some() { vec![a.seed] } else { vec![] };
    Ok(Run::ok(serde_json::to_value(&p)?, seeds))
}

fn distance(a: &DistanceArgs, rec: &mut Recorder) -> Result<Run> {
    let (k, m) = (load(&a.first, rec)?, load(&a.second, rec)?);
    rec.phase("load");
    let profiles = |k: &SimplicialComplex, seed: u64| match a.samples {
        Some(n) => empirical_profiles(k, a.rmax, n, seed),
        None => exact_profiles(k, a.rmax),
    };
    let (p, q) = (profiles(&k, a.seed)?, profiles(&m, a.seed.wrapping_add(1))?);
    rec.phase("profile");
    let d = sampling_distance(&p, &q, a.rmax)?;
    rec.phase("distance");
    println!("d_s = {} (truncation bound {}, {} classes)", d.value, d.truncation_bound, d.classes);
    let seeds = if a.samples.is_some() { vec![a.seed, a.seed.wrapping_add(1)] } else { vec![] };
    Ok(Run::ok(serde_json::to_value(d)?, seeds))
}

fn estimate(a: &EstimateArgs, rec: &mut Recorder) -> Result<Run> {
    let k = load(&a.file, rec)?;
    rec.phase("load");
    let config = EstimatorConfig { moments: a.moments, samples: a.samples, cut: a.cut };
    let (summary, e) = estimate_betti_spectral_with::<f64>(&k, a.dim, a.eps, a.seed, &config)?;
    rec.phase("estimate");
    println!("per_vertex = {:.6}", e.per_vertex);
    println!("kernel_fraction = {:.6}", e.kernel_fraction);
    println!("cut = {:.6e}, bound_term = {:.6}, gap_detected = {}", e.epsilon_star, e.bound_term, e.gap_detected);
    println!("moments = {}, samples = {}, exhaustive = {}", summary.degree(), summary.sample_size, summary.exhaustive);
    Ok(Run::ok(json!({ "estimate": e, "summary": summary }), vec![a.seed]))
}

fn load_corpus(dir: &Path, rec: &mut Recorder) -> Result<Vec<(String, SimplicialComplex)>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot read corpus directory {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|x| x == "cplx"));
    paths.sort();
    if paths.is_empty() {
        return Err(invalid(format!("no .cplx files in {}", dir.display())));
    }
    paths
        .iter()
        .map(|p| {
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((name, load(p, rec)?))
        })
        .collect()
}

fn test(a: &TestArgs, rec: &mut Recorder) -> Result<Run> {
    let m = load(&a.file, rec)?;
    let members = load_corpus(&a.corpus, rec)?;
    rec.phase("load");
    let corpus = ReferenceCorpus::new(a.radius, a.rho, members)?;
    rec.phase("corpus");
    let names: Vec<&str> = corpus.entries.iter().map(|e| e.name.as_str()).collect();
    let outcome = test_betti(&m, &corpus, a.dim, a.eps, a.seed);
    rec.phase("test");
    match outcome {
        Ok(o) => {
            println!("estimate = {:.6} (matched {}, deviation {:.4}, {} samples)", o.estimate, names[o.matched_index], o.deviation, o.samples_used);
            Ok(Run::ok(json!({ "outcome": o, "matched": names[o.matched_index], "corpus": names }), vec![a.seed]))
        }
        Err(betti_scope::Error::NoMatch) => {
            eprintln!("no match: no corpus entry is within tolerance of the sampled profile");
            Ok(Run { outputs: json!({ "outcome": "no_match", "corpus": names }), seeds: vec![a.seed], code: ExitCode::from(3) })
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct Check {
    property: String,
    status: &'static str,
    detail: String,
}

fn verify(a: &FileArg, rec: &mut Recorder) -> Result<Run> {
    let k = load(&a.file, rec)?;
    rec.phase("load");
    let top = k.dimension().ok_or_else(|| invalid("complex is empty"))?;
    let d = k.degree_bound() as i64;
    let betti = betti_exact(&k);
    let mut checks = Vec::new();
    let mut record = |property: String, result: Option<Result<String, String>>| {
        let (status, detail) = match result {
            None => ("skip", format!("more than {DENSE_CAP} simplices")),
            Some(Ok(d)) => ("pass", d),
            Some(Err(d)) => ("fail", d),
        };
        println!("{:<4} {property}: {detail}", status.to_uppercase());
        checks.push(Check { property, status, detail });
    };
    let verdict = |ok: bool, yes: String, no: String| Some(if ok { Ok(yes) } else { Err(no) });

    for q in 0..top.saturating_sub(1) {
        let zero = coboundary(&k, q + 1).mul(&coboundary(&k, q)).is_zero();
        record(format!("d{} d{q} = 0", q + 1), verdict(zero, "exact".into(), "nonzero composition".into()));
    }
    for i in 0..=top {
        let lap = laplacian(&k, i);
        let entry = lap.max_abs_entry() as i64;
        let ok = lap.is_symmetric() && entry <= d + 1;
        record(
            format!("Δ^{i} symmetric, entries <= d+1"),
            verdict(ok, format!("max |entry| {entry} <= {}", d + 1), format!("max |entry| {entry}, symmetric {}", lap.is_symmetric())),
        );
        let kernel_check = |kernel: usize| {
            verdict(kernel == betti[i], format!("{kernel}"), format!("kernel {kernel}, Betti {}", betti[i]))
        };
        if lap.rows() > DENSE_CAP {
            record(format!("dim ker Δ^{i} = b{i}"), kernel_check(laplacian_kernel_dim(&k, i)));
            for p in ["PSD", "norm bound", "pseudo-determinant >= 1", "logarithmic kernel bound"] {
                record(format!("Δ^{i} {p}"), None);
            }
            continue;
        }
        let dense = lap.to_dense();
        let coeffs = charpoly(&dense, norm_bound(&lap).min(row_sum_bound(&dense)));
        // symmetric, so the multiplicity of the root 0 is the kernel dimension
        let kernel = coeffs.iter().take_while(|c| c.bits() == 0).count();
        record(format!("dim ker Δ^{i} = b{i}"), kernel_check(kernel));
        record(format!("Δ^{i} PSD"), verdict(roots_nonnegative(&coeffs), "exact".into(), "negative eigenvalue".into()));
        let m = exact_spectrum::<f64>(&lap)?;
        let top_eig = m.eigenvalues().last().copied().unwrap_or(0.0);
        let kb = m.support_bound();
        record(
            format!("Δ^{i} norm bound"),
            verdict(top_eig <= kb * (1.0 + 1e-12), format!("λ_max {top_eig:.6} <= K {kb}"), format!("λ_max {top_eig} > K {kb}")),
        );
        let pdet = coeffs[kernel].magnitude().clone();
        let ln_pdet = ln_big(&pdet.clone().into());
        record(
            format!("Δ^{i} pseudo-determinant >= 1"),
            verdict(ln_pdet >= 0.0, format!("ln pdet = {ln_pdet:.6}, c = {:.6}", ln_pdet / m.n() as f64), format!("pdet = {pdet}")),
        );
        let lk = kb.ln();
        let sum_ok = m.log_kernel_sum() <= lk + 1e-12;
        let zero = m.cdf(0.0);
        let worst = (1..100)
            .map(|j| {
                let l = j as f64 / 100.0;
                (m.cdf(l) - zero) - lk / (1.0 / l).ln()
            })
            .fold(f64::NEG_INFINITY, f64::max);
        record(
            format!("Δ^{i} logarithmic kernel bound"),
            verdict(sum_ok && worst <= 1e-12, format!("worst slack {:.4}", -worst), format!("log sum ok {sum_ok}, worst excess {worst}")),
        );
    }
    rec.phase("verify");
    let failed = checks.iter().filter(|c| c.status == "fail").count();
    let code = if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    Ok(Run { outputs: json!({ "betti": betti, "checks": checks, "failed": failed }), seeds: vec![], code })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    builder.build_global().map_err(|e| anyhow!("thread pool: {e}"))?;
    let threads = rayon::current_num_threads();

    let mut rec = Recorder::new();
    let (name, params, result) = match &cli.command {
        Command::Gen(a) => ("gen", serde_json::to_value(a)?, gen(a, &mut rec)),
        Command::Betti(a) => ("betti", serde_json::to_value(a)?, betti(a, &mut rec)),
        Command::Spectrum(a) => ("spectrum", serde_json::to_value(a)?, spectrum(a, &mut rec)),
        Command::Profile(a) => ("profile", serde_json::to_value(a)?, profile(a, &mut rec)),
        Command::Distance(a) => ("distance", serde_json::to_value(a)?, distance(a, &mut rec)),
        Command::Estimate(a) => ("estimate", serde_json::to_value(a)?, estimate(a, &mut rec)),
        Command::Test(a) => ("test", serde_json::to_value(a)?, test(a, &mut rec)),
        Command::Verify(a) => ("verify", serde_json::to_value(a)?, verify(a, &mut rec)),
    };
    let out = result?;
    if let Some(path) = &cli.report {
        let report = RunReport {
            schema_version: SCHEMA_VERSION,
            command: name.to_string(),
            params,
            inputs: rec.inputs,
            outputs: out.outputs,
            seeds: out.seeds,
            threads,
            timings_ms: rec.timings_ms,
        };
        let text = serde_json::to_string_pretty(&report)? + "\n";
        fs::write(path, text).with_context(|| format!("cannot write report {}", path.display()))?;
    }
    Ok(out.code)
}

fn exit_code(e: &anyhow::Error) -> ExitCode {
    for cause in e.chain() {
        if cause.is::<Invalid>() {
            return ExitCode::from(2);
        }
        if let Some(err) = cause.downcast_ref::<betti_scope::Error>() {
            return ExitCode::from(if *err == betti_scope::Error::NoMatch { 3 } else { 2 });
        }
    }
    ExitCode::FAILURE
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
