use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use heisenberg_besov::besov::{equivalence_report, WeightMode};
use heisenberg_besov::calculus::sample_multiplier;
use heisenberg_besov::config::RunConfig;
use heisenberg_besov::family::spectral_smooth_family;
use heisenberg_besov::gelfand::{forward_transform, inverse_transform, SpectralFunction};
use heisenberg_besov::io::{
    read_radial_csv, read_spectral_csv, report_summary_json, write_partition_csv, write_radial_csv, write_report_csv,
    write_spectral_csv, Manifest, SPACE_HEADER,
};
use heisenberg_besov::littlewood_paley::wavelet_kernel;
use heisenberg_besov::selftest::{all_passed, format_table, run_selftest, SelftestOptions};
use heisenberg_besov::{Error, Result};

/// Spherical analysis on the Heisenberg group: transforms, wavelet kernels, Besov reports.
#[derive(Parser, Debug)]
#[command(name = "hbesov", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Band weights of the wavelet-route Besov norm.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Derived)]
    weight_mode: Mode,
    /// Skip the slow box convolution check.
    #[arg(long, global = true)]
    quick: bool,
    /// Multiplies every numerical tolerance.
    #[arg(long, global = true, value_name = "FLOAT")]
    tolerance_scale: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Mode {
    Derived,
    PaperLiteral,
}

impl From<Mode> for WeightMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Derived => WeightMode::Derived,
            Mode::PaperLiteral => WeightMode::PaperLiteral,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gelfand transform of CSV samples.
    Transform {
        #[command(subcommand)]
        direction: Direction,
    },
    /// Kernel of the band-`j` filter (`-1` is the low-pass kernel) and its spectral profile.
    Kernel {
        #[arg(long, allow_negative_numbers = true)]
        band: i64,
    },
    /// Four Besov norms and their ratio spreads over a set of functions.
    Besov {
        /// Space (`r,t,re,im`) or spectral (`lambda,m,re,im`) CSV files; the built-in family when absent.
        #[arg(long = "input", value_name = "CSV")]
        inputs: Vec<PathBuf>,
    },
    /// Run the numerical self-test and print a table.
    Selftest,
    /// Tabulate the dyadic partition.
    Partition {
        /// Points per unit of `log₂ ξ`.
        #[arg(long, default_value_t = 64)]
        density: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Direction {
    /// Space CSV to spectral CSV.
    Forward {
        #[arg(long)]
        input: PathBuf,
    },
    /// Spectral CSV to space CSV; refuses data whose manifest names another grid.
    Inverse {
        #[arg(long)]
        input: PathBuf,
        /// Manifest written next to the spectral file (default: `<input stem>.manifest.json`).
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Forward then inverse; fails when the relative error exceeds the tolerance.
    RoundTrip {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Round-trip tolerance on band-limited input.
const ROUND_TRIP_TOL: f64 = 1e-2;

fn load_config(common: &Common) -> Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &common.out {
        cfg.output_dir = out.clone();
    }
    if let Some(s) = common.tolerance_scale {
        cfg.tolerance_scale = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn manifest_path(data: &Path) -> PathBuf {
    data.with_extension("manifest.json")
}

fn write_manifest(man: &Manifest, data: &Path) -> Result<()> {
    fs::write(manifest_path(data), man.to_json() + "\n")?;
    Ok(())
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn stem(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "data".into())
}

fn is_space_csv(path: &Path) -> Result<bool> {
    let mut head = String::new();
    File::open(path)?.take(256).read_to_string(&mut head)?;
    let first = head.lines().next().unwrap_or("").replace(' ', "");
    Ok(first == SPACE_HEADER.join(","))
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = load_config(&cli.common)?;
    let out = cfg.output_dir.clone();
    fs::create_dir_all(&out)?;
    match cli.command {
        Command::Transform { direction } => {
            let grid = cfg.grid()?;
            let mesh = cfg.mesh()?;
            match direction {
                Direction::Forward { input } => {
                    let f = read_radial_csv(BufReader::new(File::open(&input)?), &mesh)?;
                    let spec = forward_transform(&f, &grid)?;
                    let path = out.join(format!("{}_spectral.csv", stem(&input)));
                    write_spectral_csv(&spec, BufWriter::new(File::create(&path)?))?;
                    let mut man = Manifest::new("spectral", &file_name(&path), &grid, &mesh);
                    if spec.boundary_warning {
                        man.notes.push("spectrum not decayed at the grid edge".into());
                    }
                    write_manifest(&man, &path)?;
                    println!("wrote {}", path.display());
                    Ok(true)
                }
                Direction::Inverse { input, manifest } => {
                    let mpath = manifest.unwrap_or_else(|| manifest_path(&input));
                    let man = Manifest::from_json(&fs::read_to_string(&mpath).map_err(|e| {
                        Error::InvalidParameter(format!("cannot read manifest {}: {e}", mpath.display()))
                    })?)?;
                    man.check_hash(&grid, &mesh)?;
                    let spec = read_spectral_csv(BufReader::new(File::open(&input)?), &grid)?;
                    let f = inverse_transform(&spec, &mesh)?;
                    let path = out.join(format!("{}_space.csv", stem(&input)));
                    write_radial_csv(&f, BufWriter::new(File::create(&path)?))?;
                    write_manifest(&Manifest::new("space", &file_name(&path), &grid, &mesh), &path)?;
                    println!("wrote {}", path.display());
                    Ok(true)
                }
                Direction::RoundTrip { input } => {
                    let f = read_radial_csv(BufReader::new(File::open(&input)?), &mesh)?;
                    let spec = forward_transform(&f, &grid)?;
                    let back = inverse_transform(&spec, &mesh)?;
                    let err = if f.norm() > 0.0 { back.rel_err(&f) } else { back.norm() };
                    let tol = ROUND_TRIP_TOL * cfg.tolerance_scale;
                    let path = out.join(format!("{}_roundtrip.csv", stem(&input)));
                    write_radial_csv(&back, BufWriter::new(File::create(&path)?))?;
                    let mut man = Manifest::new("space", &file_name(&path), &grid, &mesh);
                    man.metrics.insert("round_trip_rel_err".into(), err);
                    man.metrics.insert("tolerance".into(), tol);
                    write_manifest(&man, &path)?;
                    let ok = err <= tol;
                    println!("round trip relative error {err:.3e} (tolerance {tol:.1e}): {}", if ok { "pass" } else { "FAIL" });
                    Ok(ok)
                }
            }
        }
        Command::Kernel { band } => {
            let grid = cfg.grid()?;
            let mesh = cfg.mesh()?;
            let part = cfg.partition()?;
            let kernel = wavelet_kernel(&part, band, &grid, &mesh)?;
            let name = if band < 0 { "phi".to_string() } else { format!("psi_{band}") };
            let kpath = out.join(format!("kernel_{name}.csv"));
            write_radial_csv(&kernel, BufWriter::new(File::create(&kpath)?))?;
            let profile = sample_multiplier(&part.band_multiplier(band), &grid)?;
            let ppath = out.join(format!("kernel_{name}_profile.csv"));
            write_spectral_csv(&profile, BufWriter::new(File::create(&ppath)?))?;
            let back = forward_transform(&kernel, &grid)?;
            let err = back.rel_err(&profile);
            let mut man = Manifest::new("kernel", &file_name(&kpath), &grid, &mesh);
            man.metrics.insert("band".into(), band as f64);
            man.metrics.insert("profile_round_trip_rel_err".into(), err);
            man.notes.push(format!("spectral profile in {}", file_name(&ppath)));
            write_manifest(&man, &kpath)?;
            println!("wrote {} and {}", kpath.display(), ppath.display());
            println!("transform of the sampled kernel vs profile: relative error {err:.3e}");
            Ok(true)
        }
        Command::Besov { inputs } => {
            let grid = cfg.grid()?;
            let mesh = cfg.mesh()?;
            let part = cfg.partition()?;
            let family: Vec<(String, SpectralFunction<f64>)> = if inputs.is_empty() {
                spectral_smooth_family(&mesh, &grid)?
            } else {
                inputs
                    .iter()
                    .map(|p| {
                        let f = if is_space_csv(p)? {
                            forward_transform(&read_radial_csv(BufReader::new(File::open(p)?), &mesh)?, &grid)?
                        } else {
                            let mpath = manifest_path(p);
                            if mpath.exists() {
                                Manifest::from_json(&fs::read_to_string(&mpath)?)?.check_hash(&grid, &mesh)?;
                            }
                            read_spectral_csv(BufReader::new(File::open(p)?), &grid)?
                        };
                        Ok((stem(p), f))
                    })
                    .collect::<Result<_>>()?
            };
            let rep = equivalence_report(
                &family,
                &cfg.besov_params()?,
                &part,
                cli.common.weight_mode.into(),
                cfg.ratio_bound,
            )?;
            let csv_path = out.join("besov_report.csv");
            write_report_csv(&rep, BufWriter::new(File::create(&csv_path)?))?;
            let json_path = out.join("besov_summary.json");
            fs::write(&json_path, report_summary_json(&rep) + "\n")?;
            for note in &rep.notes {
                eprintln!("note: {note}");
            }
            for (pair, worst) in rep.worst_by_pair() {
                println!("{pair:<24} max/min {worst:.4}");
            }
            println!("wrote {} and {}", csv_path.display(), json_path.display());
            let ok = rep.passed();
            if !ok {
                eprintln!("ratio bound {} violated", rep.bound);
            }
            Ok(ok)
        }
        Command::Selftest => {
            let opts = SelftestOptions {
                quick: cli.common.quick,
                tolerance_scale: cfg.tolerance_scale,
                weight_mode: cli.common.weight_mode.into(),
            };
            let checks = run_selftest(&cfg, opts)?;
            print!("{}", format_table(&checks));
            let ok = all_passed(&checks);
            println!("{}", if ok { "all checks passed" } else { "some checks FAILED" });
            Ok(ok)
        }
        Command::Partition { density } => {
            let part = cfg.partition()?;
            let top = part.covered_xi().log2();
            let steps = ((top + 6.0) * density.max(1) as f64).ceil() as usize;
            let xis: Vec<f64> = (0..=steps).map(|k| (-6.0 + (top + 6.0) * k as f64 / steps as f64).exp2()).collect();
            let path = out.join("partition.csv");
            write_partition_csv(&part, &xis, BufWriter::new(File::create(&path)?))?;
            println!("wrote {}", path.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
