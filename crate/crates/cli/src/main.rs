//! `pachinko`: command-line front end to the lattice simulator.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 when a cost guard
//! refuses the request, 3 when the two simulation engines disagree.

// `!(x <= limit)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use pachinko::bench::{bench_permanent, growth_per_unit, BenchOptions, Method};
use pachinko::config::ConfigFile;
use pachinko::dims::{complexity_table, dim_bosonic, dim_fermionic, scientific};
use pachinko::fock::{
    fermion_superposition, full_distribution, DistributionOptions, FermionOccupation, Spin,
};
use pachinko::gaussian::{
    propagate_coherent, propagate_gaussian, squeezed_vacuum_state, CoherentInput,
};
use pachinko::lattice::{input_ports, resource_report};
use pachinko::oracle::{evolve, path_count};
use pachinko::transfer::total_matrix;
use pachinko::{Error, Limits, OccupationPattern, C64};
use serde_json::{json, Value};

use output::{emit_csv, emit_json, emit_table, full, num, sig, Format, RunManifest};

/// Largest tolerated probability gap between the two engines.
const ORACLE_TOLERANCE: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "pachinko",
    version,
    about = "Exact simulation of a quantum pachinko lattice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Component counts and optional physical footprint.
    Resources {
        #[arg(long)]
        config: PathBuf,
        /// `N` or `N,M` photons on the two input ports.
        #[arg(long)]
        photons: String,
        #[arg(long)]
        json: bool,
    },
    /// The single-photon transfer matrix U.
    Matrix {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Output amplitudes for the Fock input |N,M⟩.
    Distribution {
        #[arg(long)]
        config: PathBuf,
        /// Photons on the two input ports, `N,M`.
        #[arg(long)]
        input: String,
        /// Report a single detector pattern, e.g. `1,1,0,0,0,0`.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Output amplitudes for spin-1/2 fermions, e.g. `--input 2u,3d` (0-based modes).
    Fermion {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Per-detector mean photon numbers for a coherent or squeezed input.
    Gaussian {
        #[arg(long)]
        config: PathBuf,
        /// Coherent amplitude, e.g. `1.5` or `1-0.5i`.
        #[arg(
            long,
            conflicts_with = "squeezed",
            required_unless_present = "squeezed"
        )]
        coherent: Option<String>,
        /// Squeezing parameter ξ = s·e^{iθ}, e.g. `0.5`.
        #[arg(long)]
        squeezed: Option<String>,
        /// Input mode, 0-based; defaults to the left input port.
        #[arg(long)]
        port: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Hilbert-space dimensions, for one (N, L) or as a table.
    Dims {
        #[arg(long, required_unless_present = "table")]
        photons: Option<u64>,
        #[arg(long, required_unless_present = "table")]
        depth: Option<u64>,
        #[arg(long)]
        fermionic: bool,
        /// Rows L = 1..=L_MAX with N = 2L−1.
        #[arg(long, value_name = "L_MAX", conflicts_with_all = ["photons", "depth", "fermionic"])]
        table: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Number of per-photon Feynman paths, 2^{L(N+M)}.
    Paths {
        /// `N` or `N,M`.
        #[arg(long)]
        photons: String,
        #[arg(long)]
        depth: u64,
        #[arg(long)]
        json: bool,
    },
    /// Compares the permanent engine to Fock-basis state evolution.
    OracleCheck {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        input: String,
        /// List every pattern with both probabilities.
        #[arg(long)]
        report: bool,
        #[arg(long)]
        json: bool,
    },
    /// Timing benchmarks.
    #[command(subcommand)]
    Bench(Bench),
}

#[derive(Subcommand)]
enum Bench {
    /// Ryser permanent against determinant, as CSV.
    Permanent {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Minimum wall time per timed sample, in seconds.
        #[arg(long, default_value_t = 0.02)]
        min_sample: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Clone, Copy)]
struct OutputArgs {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

impl OutputArgs {
    fn format(self) -> Format {
        match (self.json, self.csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => Format::Text,
        }
    }
}

fn json_or_text(json: bool) -> Format {
    if json {
        Format::Json
    } else {
        Format::Text
    }
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Mismatch(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_cost_guard() => 2,
            Failure::Mismatch(_) => 3,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Mismatch(m) => write!(f, "oracle mismatch: {m}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn bad(msg: impl Into<String>) -> Failure {
    Failure::Core(Error::Validation(msg.into()))
}

fn load(path: &Path) -> std::result::Result<pachinko::LatticeConfigF64, Failure> {
    Ok(ConfigFile::read(path)?.build()?)
}

/// `N` or `N,M`.
fn photon_pair(text: &str) -> std::result::Result<(u32, u32), Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parse = |s: &str| {
        s.parse::<u32>()
            .map_err(|_| bad(format!("bad photon number `{s}`")))
    };
    match parts.as_slice() {
        [n] => Ok((parse(n)?, 0)),
        [n, m] => Ok((parse(n)?, parse(m)?)),
        _ => Err(bad(format!("expected `N` or `N,M`, got `{text}`"))),
    }
}

fn complex(text: &str) -> std::result::Result<C64, Failure> {
    C64::from_str(text.trim()).map_err(|_| bad(format!("bad complex number `{text}`")))
}

fn pattern_json(p: &OccupationPattern) -> Value {
    json!(p.counts())
}

fn resources(config: &Path, photons: &str, format: Format) -> Outcome {
    let cfg = load(config)?;
    let (n, m) = photon_pair(photons)?;
    let report = resource_report(&cfg, n.into(), m.into());
    let value = serde_json::to_value(&report).map_err(Error::from)?;
    let manifest = RunManifest::new("resources", Some(config), format).param("photons", vec![n, m]);
    if format == Format::Json {
        emit_json(&manifest, value)?;
    } else if let Value::Object(map) = value {
        for (k, v) in map {
            let v = match v {
                Value::Number(x) if x.is_f64() => sig(x.as_f64().unwrap_or(f64::NAN)),
                other => other.to_string(),
            };
            println!("{k}: {v}");
        }
    }
    Ok(())
}

fn matrix(config: &Path, format: Format) -> Outcome {
    let u = total_matrix(&load(config)?);
    let manifest = RunManifest::new("matrix", Some(config), format);
    let n = u.dim();
    let cells = || (0..n).flat_map(|o| (0..n).map(move |i| (o, i)));
    match format {
        Format::Json => {
            let rows: Vec<Value> = (0..n)
                .map(|o| {
                    Value::Array(
                        (0..n)
                            .map(|i| json!([num(u.get(o, i).re), num(u.get(o, i).im)]))
                            .collect(),
                    )
                })
                .collect();
            emit_json(&manifest, json!({ "dim": n, "entries": rows }))?;
        }
        Format::Csv => emit_csv(
            &manifest,
            &["out", "in", "re", "im"],
            cells().map(|(o, i)| {
                vec![
                    o.to_string(),
                    i.to_string(),
                    full(u.get(o, i).re),
                    full(u.get(o, i).im),
                ]
            }),
        )?,
        Format::Text => {
            let rows: Vec<Vec<String>> = cells()
                .map(|(o, i)| {
                    vec![
                        o.to_string(),
                        i.to_string(),
                        sig(u.get(o, i).re),
                        sig(u.get(o, i).im),
                    ]
                })
                .collect();
            emit_table(&["out", "in", "re", "im"], &rows)?;
        }
    }
    Ok(())
}

fn distribution(
    config: &Path,
    input: &str,
    pattern: Option<&str>,
    threads: usize,
    format: Format,
    limits: Limits,
) -> Outcome {
    let cfg = load(config)?;
    let (n, m) = photon_pair(input)?;
    let u = total_matrix(&cfg);
    let in_pattern = pachinko::fock::dual_fock_input(cfg.depth(), n, m);
    let mut manifest =
        RunManifest::new("distribution", Some(config), format).param("input", vec![n, m]);
    let selected = match pattern {
        Some(p) => {
            let p = OccupationPattern::parse(p)?;
            if p.modes() != cfg.modes() {
                return Err(bad(format!(
                    "pattern has {} detectors, lattice has {}",
                    p.modes(),
                    cfg.modes()
                )));
            }
            manifest = manifest.param("pattern", pattern_json(&p));
            Some(p)
        }
        None => None,
    };
    let rows: Vec<(OccupationPattern, C64)> = match &selected {
        Some(p) => {
            let amp = if p.total() == n + m {
                pachinko::fock::amplitude_general(&u, &in_pattern, p, &limits)?
            } else {
                C64::new(0.0, 0.0)
            };
            vec![(p.clone(), amp)]
        }
        None => {
            let opts = DistributionOptions {
                limits,
                threads: threads.max(1),
            };
            let dist = full_distribution(&u, &in_pattern, &opts)?;
            dist.iter().map(|(p, a)| (p.clone(), a)).collect()
        }
    };
    let header = ["pattern", "re", "im", "probability"];
    match format {
        Format::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|(p, a)| {
                    json!({ "pattern": pattern_json(p), "re": num(a.re), "im": num(a.im), "probability": num(a.norm_sqr()) })
                })
                .collect();
            emit_json(&manifest, json!({ "entries": entries }))?;
        }
        Format::Csv => emit_csv(
            &manifest,
            &header,
            rows.iter()
                .map(|(p, a)| vec![p.to_string(), full(a.re), full(a.im), full(a.norm_sqr())]),
        )?,
        Format::Text if selected.is_some() => println!("{}", sig(rows[0].1.norm_sqr())),
        Format::Text => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|(p, a)| vec![p.to_string(), sig(a.re), sig(a.im), sig(a.norm_sqr())])
                .collect();
            emit_table(&header, &table)?;
        }
    }
    Ok(())
}

fn fermion(config: &Path, input: &str, format: Format) -> Outcome {
    let cfg = load(config)?;
    let u = total_matrix(&cfg);
    let occ = FermionOccupation::parse(cfg.modes(), input)?;
    let out = fermion_superposition(&u, &[(C64::new(1.0, 0.0), occ.clone())])?;
    let manifest =
        RunManifest::new("fermion", Some(config), format).param("input", occ.to_string());
    let header = ["occupation", "re", "im", "probability"];
    match format {
        Format::Json => {
            let entries: Vec<Value> = out
                .iter()
                .map(|(o, a)| {
                    json!({
                        "up": o.occupied(Spin::Up),
                        "down": o.occupied(Spin::Down),
                        "re": num(a.re),
                        "im": num(a.im),
                        "probability": num(a.norm_sqr()),
                    })
                })
                .collect();
            emit_json(&manifest, json!({ "entries": entries }))?;
        }
        Format::Csv => emit_csv(
            &manifest,
            &header,
            out.iter()
                .map(|(o, a)| vec![o.to_string(), full(a.re), full(a.im), full(a.norm_sqr())]),
        )?,
        Format::Text => {
            let table: Vec<Vec<String>> = out
                .iter()
                .map(|(o, a)| vec![o.to_string(), sig(a.re), sig(a.im), sig(a.norm_sqr())])
                .collect();
            emit_table(&header, &table)?;
        }
    }
    Ok(())
}

fn gaussian(
    config: &Path,
    coherent: Option<&str>,
    squeezed: Option<&str>,
    port: Option<usize>,
    format: Format,
) -> Outcome {
    let cfg = load(config)?;
    let u = total_matrix(&cfg);
    let port = port.unwrap_or(input_ports(cfg.depth()).0);
    let manifest = RunManifest::new("gaussian", Some(config), format).param("port", port);
    // (detector, amplitude if coherent, mean photons)
    let (manifest, rows): (RunManifest, Vec<(usize, Option<C64>, f64)>) = match (coherent, squeezed)
    {
        (Some(b), _) => {
            let beta = complex(b)?;
            let amps = propagate_coherent(&u, &CoherentInput { beta, port })?;
            let rows = amps
                .iter()
                .enumerate()
                .map(|(l, a)| (l, Some(*a), a.norm_sqr()))
                .collect();
            (
                manifest.param("coherent", vec![num(beta.re), num(beta.im)]),
                rows,
            )
        }
        (None, Some(x)) => {
            let xi = complex(x)?;
            let state = propagate_gaussian(&u, &squeezed_vacuum_state(xi, port, cfg.depth())?)?;
            let rows = state
                .mean_photons()
                .into_iter()
                .enumerate()
                .map(|(l, n)| (l, None, n))
                .collect();
            (
                manifest.param("squeezed", vec![num(xi.re), num(xi.im)]),
                rows,
            )
        }
        (None, None) => return Err(bad("one of --coherent or --squeezed is required")),
    };
    let coherent = coherent.is_some();
    let header: &[&str] = if coherent {
        &["detector", "re", "im", "mean_photons"]
    } else {
        &["detector", "mean_photons"]
    };
    let cells = |fmt: fn(f64) -> String| -> Vec<Vec<String>> {
        rows.iter()
            .map(|(l, a, n)| {
                let mut row = vec![l.to_string()];
                if let Some(a) = a {
                    row.extend([fmt(a.re), fmt(a.im)]);
                }
                row.push(fmt(*n));
                row
            })
            .collect()
    };
    match format {
        Format::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|(l, a, n)| {
                    let mut e = json!({ "detector": l, "mean_photons": num(*n) });
                    if let Some(a) = a {
                        e["re"] = num(a.re);
                        e["im"] = num(a.im);
                    }
                    e
                })
                .collect();
            let total: f64 = rows.iter().map(|r| r.2).sum();
            emit_json(
                &manifest,
                json!({ "detectors": entries, "total_mean_photons": num(total) }),
            )?;
        }
        Format::Csv => emit_csv(&manifest, header, cells(full))?,
        Format::Text => emit_table(header, &cells(sig))?,
    }
    Ok(())
}

fn dims(
    photons: Option<u64>,
    depth: Option<u64>,
    fermionic: bool,
    table: Option<u64>,
    format: Format,
) -> Outcome {
    if let Some(max) = table {
        let rows = complexity_table(max)?;
        let manifest = RunManifest::new("dims", None, format).param("table", max);
        let header = [
            "depth",
            "photons",
            "dim_bosonic",
            "dim_fermionic",
            "path_count",
            "ryser_ops",
        ];
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.depth.to_string(),
                    r.photons.to_string(),
                    r.dim_bosonic.to_string(),
                    r.dim_fermionic.to_string(),
                    r.path_count.to_string(),
                    r.ryser_ops.to_string(),
                ]
            })
            .collect();
        match format {
            Format::Json => emit_json(
                &manifest,
                json!({ "rows": serde_json::to_value(&rows).map_err(Error::from)? }),
            )?,
            Format::Csv => emit_csv(&manifest, &header, cells)?,
            Format::Text => emit_table(&header, &cells)?,
        }
        return Ok(());
    }
    let (n, l) = (photons.unwrap_or_default(), depth.unwrap_or_default());
    let dim = if fermionic {
        dim_fermionic(n, l)?
    } else {
        dim_bosonic(n, l)?
    };
    let statistics = if fermionic { "fermionic" } else { "bosonic" };
    let manifest = RunManifest::new("dims", None, format)
        .param("photons", n)
        .param("depth", l)
        .param("statistics", statistics);
    match format {
        Format::Json => {
            let (mant, exp) = scientific(&dim);
            emit_json(
                &manifest,
                json!({ "dimension": dim.to_string(), "digits": dim.to_string().len(), "mantissa": num(mant), "exponent": exp }),
            )?;
        }
        Format::Csv => emit_csv(
            &manifest,
            &["photons", "depth", "statistics", "dimension"],
            [vec![
                n.to_string(),
                l.to_string(),
                statistics.to_string(),
                dim.to_string(),
            ]],
        )?,
        Format::Text => println!("{dim}"),
    }
    Ok(())
}

fn paths(photons: &str, depth: u64, format: Format) -> Outcome {
    let (n, m) = photon_pair(photons)?;
    let count = path_count(n.into(), m.into(), depth);
    let exponent = depth * u64::from(n + m);
    let (mant, exp) = scientific(&count);
    let manifest = RunManifest::new("paths", None, format)
        .param("photons", vec![n, m])
        .param("depth", depth);
    if format == Format::Json {
        emit_json(
            &manifest,
            json!({ "count": count.to_string(), "log2": exponent, "mantissa": num(mant), "exponent": exp }),
        )?;
    } else {
        println!("{count}");
        println!("2^{exponent} ≈ {mant:.3}e{exp}");
    }
    Ok(())
}

fn oracle_check(
    config: &Path,
    input: &str,
    report: bool,
    format: Format,
    limits: Limits,
) -> Outcome {
    let cfg = load(config)?;
    let (n, m) = photon_pair(input)?;
    let u = total_matrix(&cfg);
    let opts = DistributionOptions { limits, threads: 1 };
    let dist = full_distribution(
        &u,
        &pachinko::fock::dual_fock_input(cfg.depth(), n, m),
        &opts,
    )?;
    let state = evolve(&cfg, n, m, &limits)?;
    let keys: BTreeSet<&OccupationPattern> = dist
        .iter()
        .map(|(p, _)| p)
        .chain(state.iter().map(|(p, _)| p))
        .collect();
    let rows: Vec<(&OccupationPattern, f64, f64)> = keys
        .into_iter()
        .map(|p| (p, dist.probability(p).unwrap_or(0.0), state.probability(p)))
        .collect();
    let deviation = rows
        .iter()
        .map(|(_, a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let manifest =
        RunManifest::new("oracle-check", Some(config), format).param("input", vec![n, m]);
    if format == Format::Json {
        let mut body = json!({ "max_deviation": num(deviation), "tolerance": num(ORACLE_TOLERANCE), "patterns": rows.len() });
        if report {
            body["entries"] = rows
                .iter()
                .map(|(p, a, b)| json!({ "pattern": pattern_json(p), "permanent": num(*a), "oracle": num(*b) }))
                .collect();
        }
        emit_json(&manifest, body)?;
    } else {
        if report {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|(p, a, b)| vec![p.to_string(), sig(*a), sig(*b), sig((a - b).abs())])
                .collect();
            emit_table(&["pattern", "permanent", "oracle", "deviation"], &table)?;
        }
        println!(
            "max probability deviation: {deviation:e} over {} patterns",
            rows.len()
        );
    }
    if !(deviation <= ORACLE_TOLERANCE) {
        return Err(Failure::Mismatch(format!(
            "deviation {deviation:e} exceeds {ORACLE_TOLERANCE:e}"
        )));
    }
    Ok(())
}

fn bench(opts: BenchOptions, json: bool, limits: Limits) -> Outcome {
    if opts.n_min == 0 || opts.n_min > opts.n_max {
        return Err(bad("need 1 ≤ n-min ≤ n-max"));
    }
    if !(opts.min_sample_seconds >= 0.0) {
        return Err(bad("min-sample must be non-negative"));
    }
    let rows = bench_permanent(&opts, &limits)?;
    let format = if json { Format::Json } else { Format::Csv };
    let manifest = RunManifest::new("bench permanent", None, format)
        .param("n_min", opts.n_min)
        .param("n_max", opts.n_max)
        .param("reps", opts.reps)
        .param("min_sample_seconds", num(opts.min_sample_seconds))
        .param("seed", opts.seed);
    let growth = |m| (rows.len() >= 4).then(|| growth_per_unit(&rows, m));
    if json {
        let entries: Vec<Value> = rows
            .iter()
            .map(|r| json!({ "n": r.n, "method": r.method.name(), "mean_seconds": num(r.mean_seconds) }))
            .collect();
        let fit = |m| growth(m).map_or(Value::Null, num);
        emit_json(
            &manifest,
            json!({ "rows": entries, "growth_per_unit": { "ryser": fit(Method::Ryser), "determinant": fit(Method::Determinant) } }),
        )?;
    } else {
        emit_csv(
            &manifest,
            &["n", "method", "mean_seconds"],
            rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    r.method.name().to_string(),
                    full(r.mean_seconds),
                ]
            }),
        )?;
        if let (Some(r), Some(d)) = (growth(Method::Ryser), growth(Method::Determinant)) {
            eprintln!("growth per unit n: ryser {r:.3}x, determinant {d:.3}x");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let limits = Limits::from_env()?;
    match cli.command {
        Command::Resources {
            config,
            photons,
            json,
        } => resources(&config, &photons, json_or_text(json)),
        Command::Matrix { config, out } => matrix(&config, out.format()),
        Command::Distribution {
            config,
            input,
            pattern,
            threads,
            out,
        } => distribution(
            &config,
            &input,
            pattern.as_deref(),
            threads,
            out.format(),
            limits,
        ),
        Command::Fermion { config, input, out } => fermion(&config, &input, out.format()),
        Command::Gaussian {
            config,
            coherent,
            squeezed,
            port,
            out,
        } => gaussian(
            &config,
            coherent.as_deref(),
            squeezed.as_deref(),
            port,
            out.format(),
        ),
        Command::Dims {
            photons,
            depth,
            fermionic,
            table,
            out,
        } => dims(photons, depth, fermionic, table, out.format()),
        Command::Paths {
            photons,
            depth,
            json,
        } => paths(&photons, depth, json_or_text(json)),
        Command::OracleCheck {
            config,
            input,
            report,
            json,
        } => oracle_check(&config, &input, report, json_or_text(json), limits),
        Command::Bench(Bench::Permanent {
            n_min,
            n_max,
            reps,
            min_sample,
            seed,
            json,
        }) => bench(
            BenchOptions {
                n_min,
                n_max,
                reps,
                min_sample_seconds: min_sample,
                seed,
            },
            json,
            limits,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed pipe (`| head`) is the reader's choice, not a failure.
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
