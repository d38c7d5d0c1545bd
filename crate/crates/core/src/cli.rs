//! Command-line front end. One thin binary, flat flags, machine-readable
//! outputs; every run is a pure function of its flags (all randomness
//! flows from `--seed` through the counter-based generator), so repeated
//! invocations are byte-identical.
//!
//! Exit codes: 0 success (and checks that hold), 1 a check failed beyond
//! its uncertainty, 2 usage errors, 3 vertex-budget exhaustion.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::graphs::{GraphFamily, OrbitWeights, DEFAULT_VERTEX_BUDGET};
use crate::harmonic;
use crate::invariants;
use crate::percolation;
use crate::randomcluster::{self, Boundary};

#[derive(Parser)]
#[command(
    name = "hdperc",
    version,
    about = "Currents, invariant estimates and percolation on balls of transitive graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for seed/grid parallelism (output is canonical
    /// regardless).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Flat key=value file supplying defaults; explicit flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct FamilyArgs {
    /// tree | lattice | biregular | free | surface | line
    #[arg(long)]
    family: String,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    rank: Option<usize>,
    /// Comma-separated generating words, e.g. `a,b,ab` (uppercase =
    /// inverse).
    #[arg(long, value_delimiter = ',')]
    gens: Option<Vec<String>>,
    #[arg(long)]
    genus: Option<usize>,
}

impl FamilyArgs {
    fn family(&self) -> Result<GraphFamily> {
        let need = |opt: Option<usize>, flag: &str| -> Result<usize> {
            opt.ok_or_else(|| Error::invalid(format!("--{flag} is required for this family")))
        };
        match self.family.as_str() {
            "tree" => GraphFamily::regular_tree(need(self.degree, "degree")?),
            "lattice" => GraphFamily::lattice(need(self.dim, "dim")?),
            "biregular" => {
                GraphFamily::biregular_tree(need(self.r, "r")?, need(self.s, "s")?)
            }
            "free" => {
                let rank = need(self.rank, "rank")?;
                let gens = self
                    .gens
                    .as_ref()
                    .ok_or_else(|| Error::invalid("--gens is required for --family free"))?;
                let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
                GraphFamily::free_group(rank, &refs)
            }
            "surface" => GraphFamily::surface_group(need(self.genus, "genus")?),
            "line" => Ok(GraphFamily::Line),
            other => Err(Error::invalid(format!(
                "unknown family {other:?} (expected tree, lattice, biregular, free, surface or line)"
            ))),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a ball and export it as a plain-text edge list.
    Graph {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Upper-bound ladder for the first invariant along an exhaustion.
    Beta1 {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated increasing radii.
        #[arg(long, value_delimiter = ',')]
        radii: Vec<usize>,
        /// Per-orbit stabilizer weights (defaults to the family's).
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<f64>>,
        #[arg(long)]
        budget: Option<usize>,
        /// Vanishing threshold for the verdict.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Bernoulli percolation: sweeps and threshold estimates.
    Perc {
        #[command(subcommand)]
        what: PercCommand,
    },
    /// Random-cluster model: degree curves and the degree gap.
    Rc {
        #[command(subcommand)]
        what: RcCommand,
    },
    /// Consistency checks; exit code 0 iff the check holds.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Aggregate JSON bundle (invariant, thresholds, curves, checks).
    Report {
        #[command(flatten)]
        family: FamilyArgs,
        /// Include random-cluster curves and all checks.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Subcommand)]
enum PercCommand {
    /// Cluster statistics along a sorted grid of retention parameters.
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        radius: usize,
        /// Comma-separated grid, e.g. `0,0.25,0.5,0.75,1`.
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        #[arg(long)]
        seed: u64,
    },
    /// Existence threshold estimate.
    Pc {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        resolution: Option<f64>,
        /// auto | onset | susceptibility
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long)]
        seed: u64,
    },
    /// Uniqueness threshold heuristic.
    Pu {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        resolution: Option<f64>,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum RcCommand {
    /// Mean base degree along a grid in p.
    Curve {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        q: f64,
        /// free | wired
        #[arg(long)]
        boundary: String,
        #[arg(long, value_delimiter = ',')]
        p: Option<Vec<f64>>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: u64,
    },
    /// Half the expected-degree gap across a threshold pair.
    Gap {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        pc: f64,
        #[arg(long)]
        pu: f64,
        #[arg(long)]
        window: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// beta1 <= (deg/2)(pu - pc), all estimated inline.
    Cor43 {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<usize>>,
        /// Radius for the threshold estimators.
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: u64,
    },
    /// beta1 <= half the random-cluster expected-degree gap.
    Cor46 {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        q: f64,
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<usize>>,
        #[arg(long)]
        radius: Option<usize>,
        /// Threshold pair; estimated inline when omitted.
        #[arg(long)]
        pc: Option<f64>,
        #[arg(long)]
        pu: Option<f64>,
        #[arg(long)]
        window: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: u64,
    },
    /// Mass-transport identity on a torus.
    Mtp {
        /// Torus side length.
        #[arg(long)]
        torus: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cost bound and the treeing equality.
    Cost {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        p: f64,
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<usize>>,
    },
}

/// Defaults read from `--config` (key=value per line). Flags win.
struct Defaults {
    map: HashMap<String, String>,
}

impl Defaults {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| {
                    Error::invalid(format!(
                        "config line {} is not key=value: {line:?}",
                        lineno + 1
                    ))
                })?;
                map.insert(k.trim().to_owned(), v.trim().to_owned());
            }
        }
        Ok(Defaults { map })
    }

    fn get<T: std::str::FromStr>(&self, key: &str, fallback: T) -> Result<T> {
        match self.map.get(key) {
            None => Ok(fallback),
            Some(raw) => raw
                .parse()
                .map_err(|_| Error::invalid(format!("config key {key}={raw:?} did not parse"))),
        }
    }
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content)?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::invalid(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn default_radii(family: &GraphFamily) -> Vec<usize> {
    match family {
        GraphFamily::Line | GraphFamily::Lattice { dimension: 1 } => vec![10, 100, 1000],
        GraphFamily::Lattice { dimension: 2 } => vec![5, 10, 20, 40],
        GraphFamily::Lattice { .. } => vec![4, 8, 16],
        GraphFamily::RegularTree { .. } => vec![4, 6, 8, 10],
        GraphFamily::BiregularTree { .. } => vec![3, 5, 7, 9],
        GraphFamily::FreeGroupCayley { .. } => vec![3, 5, 7],
        GraphFamily::SurfaceGroup { .. } => vec![2, 3, 4],
    }
}

fn default_threshold_radius(family: &GraphFamily) -> usize {
    match family {
        GraphFamily::Line | GraphFamily::Lattice { dimension: 1 } => 1000,
        GraphFamily::Lattice { .. } => 32,
        GraphFamily::RegularTree { .. } | GraphFamily::BiregularTree { .. } => 10,
        GraphFamily::FreeGroupCayley { .. } => 7,
        GraphFamily::SurfaceGroup { .. } => 4,
    }
}

/// Heat-bath chains pay a breadth-first connectivity query per edge
/// update, so default random-cluster slices stay small.
fn default_rc_radius(family: &GraphFamily) -> usize {
    match family {
        GraphFamily::Line | GraphFamily::Lattice { dimension: 1 } => 64,
        GraphFamily::Lattice { dimension: 2 } => 8,
        GraphFamily::Lattice { .. } => 3,
        GraphFamily::RegularTree { .. } | GraphFamily::BiregularTree { .. } => 4,
        GraphFamily::FreeGroupCayley { .. } => 2,
        GraphFamily::SurfaceGroup { .. } => 2,
    }
}

fn parse_boundary(text: &str) -> Result<Boundary> {
    match text {
        "free" => Ok(Boundary::Free),
        "wired" => Ok(Boundary::Wired),
        other => Err(Error::invalid(format!(
            "unknown boundary {other:?} (expected free or wired)"
        ))),
    }
}

fn beta1_with(
    family: &GraphFamily,
    radii: &[usize],
    weights: Option<&[f64]>,
    budget: usize,
) -> Result<harmonic::Beta1Estimate> {
    let weights = match weights {
        Some(w) => OrbitWeights::new(w.to_vec())?,
        None => family.default_orbit_weights(),
    };
    harmonic::beta1_estimate_with_budget(family, &weights, radii, budget)
}

fn estimate_pc_by_method(
    method: &str,
    family: &GraphFamily,
    radius: usize,
    samples: usize,
    resolution: f64,
    seed: u64,
) -> Result<percolation::ThresholdEstimate> {
    match method {
        "auto" => percolation::estimate_pc(family, radius, samples, resolution, seed),
        "onset" => percolation::estimate_pc_onset(family, radius, samples, resolution, seed),
        "susceptibility" => {
            percolation::estimate_pc_susceptibility(family, radius, samples, resolution, seed)
        }
        other => Err(Error::invalid(format!(
            "unknown method {other:?} (expected auto, onset or susceptibility)"
        ))),
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Ignore failure: the global pool can only be set once.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::InvalidInput(_) => 2,
                Error::Resource { .. } => 3,
                _ => 1,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let defaults = Defaults::load(cli.config.as_deref())?;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Graph {
            family,
            radius,
            budget,
        } => {
            let fam = family.family()?;
            let budget =
                budget.unwrap_or(defaults.get("budget", DEFAULT_VERTEX_BUDGET)?);
            let slice = fam.build_slice_with_budget(*radius, budget)?;
            let mut buf = Vec::new();
            slice.write_edge_list(&mut buf)?;
            emit(out, std::str::from_utf8(&buf).expect("ascii"))?;
            eprintln!(
                "{}: {} vertices, {} edges, {} boundary",
                fam.describe(),
                slice.vertex_count,
                slice.edge_count(),
                slice.boundary.len()
            );
            Ok(0)
        }
        Command::Beta1 {
            family,
            radii,
            weights,
            budget,
            threshold,
        } => {
            let fam = family.family()?;
            let budget =
                budget.unwrap_or(defaults.get("budget", DEFAULT_VERTEX_BUDGET)?);
            let threshold = threshold.unwrap_or(defaults.get("threshold", 0.05)?);
            let est = beta1_with(&fam, radii, weights.as_deref(), budget)?;
            let verdict = harmonic::is_ohd(&est, threshold)?;
            match cli.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    harmonic::write_beta1_csv(&est, &mut buf)?;
                    emit(out, std::str::from_utf8(&buf).expect("ascii"))?;
                }
                Format::Json => {
                    let summary = serde_json::json!({
                        "family": est.family,
                        "beta1": est.final_value,
                        "per_radius": est.per_radius,
                        "converged": est.converged,
                        "is_ohd": verdict.is_ohd,
                        "threshold": threshold,
                        "margin": verdict.margin,
                    });
                    emit(out, &to_json(&summary)?)?;
                }
            }
            Ok(0)
        }
        Command::Perc { what } => dispatch_perc(cli, what, &defaults),
        Command::Rc { what } => dispatch_rc(cli, what, &defaults),
        Command::Check { what } => dispatch_check(cli, what, &defaults),
        Command::Report {
            family,
            full,
            seed,
            budget,
        } => {
            let fam = family.family()?;
            let budget =
                budget.unwrap_or(defaults.get("budget", DEFAULT_VERTEX_BUDGET)?);
            report(cli, &fam, *full, *seed, budget)
        }
    }
}

fn dispatch_perc(cli: &Cli, what: &PercCommand, defaults: &Defaults) -> Result<i32> {
    let out = cli.out.as_deref();
    match what {
        PercCommand::Sweep {
            family,
            radius,
            p,
            seed,
        } => {
            let fam = family.family()?;
            let slice = fam.build_slice(*radius)?;
            let labels = percolation::EdgeLabels::new(&slice, *seed);
            let result = percolation::sweep(&labels, p)?;
            match cli.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    percolation::write_sweep_csv(&result, &mut buf)?;
                    emit(out, std::str::from_utf8(&buf).expect("ascii"))?;
                }
                Format::Json => emit(out, &to_json(&result)?)?,
            }
            Ok(0)
        }
        PercCommand::Pc {
            family,
            radius,
            samples,
            resolution,
            method,
            seed,
        } => {
            let fam = family.family()?;
            let samples = samples.unwrap_or(defaults.get("samples", 100)?);
            let resolution =
                resolution.unwrap_or(defaults.get("resolution", percolation::DEFAULT_P_RESOLUTION)?);
            let est = estimate_pc_by_method(method, &fam, *radius, samples, resolution, *seed)?;
            emit(out, &to_json(&est)?)?;
            Ok(0)
        }
        PercCommand::Pu {
            family,
            radius,
            samples,
            resolution,
            seed,
        } => {
            let fam = family.family()?;
            let samples = samples.unwrap_or(defaults.get("samples", 100)?);
            let resolution =
                resolution.unwrap_or(defaults.get("resolution", percolation::DEFAULT_P_RESOLUTION)?);
            let est = percolation::estimate_pu(&fam, *radius, samples, resolution, *seed)?;
            emit(out, &to_json(&est)?)?;
            Ok(0)
        }
    }
}

fn dispatch_rc(cli: &Cli, what: &RcCommand, defaults: &Defaults) -> Result<i32> {
    let out = cli.out.as_deref();
    match what {
        RcCommand::Curve {
            family,
            radius,
            q,
            boundary,
            p,
            samples,
            seed,
        } => {
            let fam = family.family()?;
            let boundary = parse_boundary(boundary)?;
            if *q < 1.0 {
                return Err(Error::invalid("q must be >= 1"));
            }
            let samples = samples.unwrap_or(defaults.get("samples", 1000)?);
            let grid = p.clone().unwrap_or_else(|| {
                (0..=10).map(|k| k as f64 / 10.0).collect()
            });
            let curve =
                randomcluster::degree_curve(&fam, *radius, *q, boundary, &grid, samples, *seed)?;
            match cli.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    randomcluster::write_degree_curve_csv(&curve, &mut buf)?;
                    emit(out, std::str::from_utf8(&buf).expect("ascii"))?;
                }
                Format::Json => emit(out, &to_json(&curve)?)?,
            }
            Ok(0)
        }
        RcCommand::Gap {
            family,
            radius,
            q,
            pc,
            pu,
            window,
            samples,
            seed,
        } => {
            let fam = family.family()?;
            if *q < 1.0 {
                return Err(Error::invalid("q must be >= 1"));
            }
            let radius = radius.unwrap_or_else(|| default_threshold_radius(&fam));
            let window = window.unwrap_or(defaults.get("window", 0.02)?);
            let samples = samples.unwrap_or(defaults.get("samples", 1000)?);
            let gap = randomcluster::rc_gap(&fam, radius, *q, (*pc, *pu), window, samples, *seed)?;
            emit(out, &to_json(&gap)?)?;
            Ok(0)
        }
    }
}

fn dispatch_check(cli: &Cli, what: &CheckCommand, defaults: &Defaults) -> Result<i32> {
    let out = cli.out.as_deref();
    match what {
        CheckCommand::Cor43 {
            family,
            radii,
            radius,
            samples,
            seed,
        } => {
            let fam = family.family()?;
            let radii = radii.clone().unwrap_or_else(|| default_radii(&fam));
            let radius = radius.unwrap_or_else(|| default_threshold_radius(&fam));
            let samples = samples.unwrap_or(defaults.get("samples", 60)?);
            let budget = defaults.get("budget", DEFAULT_VERTEX_BUDGET)?;
            let est = beta1_with(&fam, &radii, None, budget)?;
            let resolution = percolation::DEFAULT_P_RESOLUTION;
            let pc = percolation::estimate_pc(&fam, radius, samples, resolution, *seed)?;
            let pu = percolation::estimate_pu(&fam, radius, samples, resolution, *seed)?;
            let report = invariants::check_cor43(&fam, &est, &pc, &pu)?;
            emit(out, &to_json(&report)?)?;
            Ok(if report.holds { 0 } else { 1 })
        }
        CheckCommand::Cor46 {
            family,
            q,
            radii,
            radius,
            pc,
            pu,
            window,
            samples,
            seed,
        } => {
            let fam = family.family()?;
            if *q < 1.0 {
                return Err(Error::invalid("q must be >= 1"));
            }
            let radii = radii.clone().unwrap_or_else(|| default_radii(&fam));
            let radius = radius.unwrap_or_else(|| default_threshold_radius(&fam));
            let samples = samples.unwrap_or(defaults.get("samples", 60)?);
            let window = window.unwrap_or(defaults.get("window", 0.02)?);
            let budget = defaults.get("budget", DEFAULT_VERTEX_BUDGET)?;
            let est = beta1_with(&fam, &radii, None, budget)?;
            let resolution = percolation::DEFAULT_P_RESOLUTION;
            let pc_value = match pc {
                Some(v) => *v,
                None => percolation::estimate_pc(&fam, radius, samples, resolution, *seed)?.value,
            };
            let pu_value = match pu {
                Some(v) => *v,
                None => percolation::estimate_pu(&fam, radius, samples, resolution, *seed)?.value,
            };
            let rc_samples = defaults.get("rc_samples", 1000)?;
            let gap = randomcluster::rc_gap(
                &fam,
                default_rc_radius(&fam),
                *q,
                (pc_value, pu_value),
                window,
                rc_samples,
                *seed,
            )?;
            let report = invariants::check_cor46(&fam, &est, &gap)?;
            emit(out, &to_json(&report)?)?;
            Ok(if report.holds { 0 } else { 1 })
        }
        CheckCommand::Mtp { torus, seed } => {
            let torus = invariants::Torus::new(*torus)?;
            let adjacency = invariants::adjacency_transport(&torus);
            let equality = |u: invariants::TorusPoint, v: invariants::TorusPoint| {
                if u == v {
                    1.0
                } else {
                    0.0
                }
            };
            let averaged = invariants::averaged_random_kernel(&torus, *seed);
            let mut reports = Vec::new();
            for (name, f) in [
                ("adjacency", &adjacency as &dyn Fn(_, _) -> f64),
                ("equality", &equality),
                ("averaged-kernel", &averaged),
            ] {
                let r = invariants::verify_mass_transport(&torus, f, *seed)?;
                reports.push(serde_json::json!({
                    "transport": name,
                    "sent": r.sent,
                    "received": r.received,
                    "difference": r.difference,
                }));
            }
            let worst = reports
                .iter()
                .map(|r| r["difference"].as_f64().unwrap_or(f64::INFINITY))
                .fold(0.0f64, f64::max);
            let bundle = serde_json::json!({
                "side": torus.side,
                "transports": reports,
                "max_difference": worst,
                "holds": worst <= 1e-12,
            });
            emit(out, &to_json(&bundle)?)?;
            Ok(if worst <= 1e-12 { 0 } else { 1 })
        }
        CheckCommand::Cost { family, p, radii } => {
            let fam = family.family()?;
            let radii = radii.clone().unwrap_or_else(|| default_radii(&fam));
            let budget = defaults.get("budget", DEFAULT_VERTEX_BUDGET)?;
            let est = beta1_with(&fam, &radii, None, budget)?;
            let report = invariants::cost_report(&fam, *p, &est)?;
            emit(out, &to_json(&report)?)?;
            Ok(if report.bound_holds { 0 } else { 1 })
        }
    }
}

fn report(cli: &Cli, family: &GraphFamily, full: bool, seed: u64, budget: usize) -> Result<i32> {
    let radii = default_radii(family);
    let est = beta1_with(family, &radii, None, budget)?;
    let verdict = harmonic::is_ohd(&est, 0.05)?;
    let radius = default_threshold_radius(family);
    let resolution = percolation::DEFAULT_P_RESOLUTION;
    let pc = percolation::estimate_pc(family, radius, 60, resolution, seed)?;
    let pu = percolation::estimate_pu(family, radius, 60, resolution, seed)?;
    let cor43 = invariants::check_cor43(family, &est, &pc, &pu)?;
    let cost = invariants::cost_report(family, 1.0, &est)?;

    let mut curves = Vec::new();
    let mut checks = vec![
        serde_json::to_value(&cor43).expect("serializable"),
        serde_json::to_value(&cost).expect("serializable"),
    ];
    if full {
        let grid: Vec<f64> = (0..=8).map(|k| k as f64 / 8.0).collect();
        let curve_radius = default_rc_radius(family);
        for (q, boundary) in [
            (1.0, Boundary::Free),
            (2.0, Boundary::Free),
            (2.0, Boundary::Wired),
        ] {
            curves.push(randomcluster::degree_curve(
                family,
                curve_radius,
                q,
                boundary,
                &grid,
                400,
                seed,
            )?);
        }
        let gap = randomcluster::rc_gap(
            family,
            curve_radius,
            1.0,
            (pc.value, pu.value),
            0.02,
            400,
            seed,
        )?;
        let cor46 = invariants::check_cor46(family, &est, &gap)?;
        checks.push(serde_json::to_value(&cor46).expect("serializable"));
    }
    let all_hold = checks
        .iter()
        .all(|c| c["holds"].as_bool().or(c["bound_holds"].as_bool()).unwrap_or(true));
    let bundle = serde_json::json!({
        "family": family.describe(),
        "beta1": {
            "final": est.final_value,
            "per_radius": est.per_radius,
            "converged": est.converged,
            "is_ohd": verdict.is_ohd,
        },
        "thresholds": { "pc": pc, "pu": pu },
        "rc_curves": curves,
        "checks": checks,
        "holds": all_hold,
    });
    emit(cli.out.as_deref(), &to_json(&bundle)?)?;
    // Long-format CSV of the underlying curves next to the JSON.
    if let Some(out) = cli.out.as_deref() {
        let mut csv = String::from("curve,x,y,extra\n");
        for (r, b) in &est.per_radius {
            csv.push_str(&format!("beta1,{r},{b},\n"));
        }
        for curve in &curves {
            for pt in &curve.points {
                csv.push_str(&format!(
                    "rc-q{}-{},{},{},{}\n",
                    curve.q, curve.boundary, pt.p, pt.mean_degree, pt.stderr
                ));
            }
        }
        std::fs::write(out.with_extension("csv"), csv)?;
    }
    Ok(if all_hold { 0 } else { 1 })
}
