use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mipt_cli::{run_fit, run_snapshot, run_sweep, CliError, FitOptions, PGrid, Result, SweepSpec};
use mipt_core::{verify, CircuitConfig, FinalGate, Protocol};

#[derive(Parser)]
#[command(name = "mipt", version, about = "Localizable-entanglement sweeps of monitored Clifford circuits")]
struct Cli {
    /// JSON file: a sweep spec for `sweep`, a circuit config for `snapshot`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed (overrides the config file).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output directory (overrides the config file).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Suppress progress output.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run ensembles over an (L, p) grid.
    Sweep {
        /// System sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// `start:stop:step` or a comma-separated list.
        #[arg(long)]
        p: Option<PGrid>,
        /// Realizations per point.
        #[arg(short = 'n', long)]
        realizations: Option<u64>,
        /// T = factor · L.
        #[arg(long)]
        layers_factor: Option<usize>,
        /// plain, one_reference or two_ancilla.
        #[arg(long)]
        protocol: Option<Protocol>,
        /// random_clifford, cnot or cnot_reversed.
        #[arg(long)]
        final_gate: Option<FinalGate>,
        #[arg(long)]
        attach_site: Option<usize>,
        /// Layers run before the reference is attached.
        #[arg(long)]
        attach_layer: Option<usize>,
        /// Measure after every k-th layer.
        #[arg(long)]
        measure_every: Option<usize>,
    },
    /// Fit correlation lengths, the exponent and the crossing of a sweep.
    Fit {
        /// Aggregated results (default: <out>/aggregate.json).
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        p_c: Option<f64>,
        /// System size used for the exponent fit (default: largest).
        #[arg(long = "size")]
        size: Option<usize>,
        #[arg(long)]
        p_min: Option<f64>,
        #[arg(long)]
        p_max: Option<f64>,
    },
    /// Write final graph states as DOT files.
    Snapshot {
        #[arg(long, default_value_t = 20)]
        size: usize,
        #[arg(long, default_value_t = 0.18)]
        p: f64,
        /// Brick layers (default 4L).
        #[arg(long)]
        layers: Option<usize>,
        #[arg(long, default_value_t = Protocol::Plain)]
        protocol: Protocol,
        /// Number of realizations to export.
        #[arg(short = 'n', long, default_value_t = 1)]
        realizations: u64,
    },
    /// Run the brute-force oracle suites.
    Verify,
}

fn sweep_spec(cli: &Cli) -> Result<SweepSpec> {
    let Command::Sweep {
        sizes,
        p,
        realizations,
        layers_factor,
        protocol,
        final_gate,
        attach_site,
        attach_layer,
        measure_every,
    } = &cli.command
    else {
        unreachable!("called for sweep only")
    };
    let mut spec = match &cli.config {
        Some(path) => SweepSpec::load(path)?,
        None => {
            let missing = |what: &str| CliError::Invalid(format!("--{what} is required without --config"));
            SweepSpec::new(
                sizes.clone().ok_or_else(|| missing("sizes"))?,
                p.clone().ok_or_else(|| missing("p"))?,
                realizations.ok_or_else(|| missing("realizations"))?,
            )
        }
    };
    if let Some(v) = sizes {
        spec.sizes = v.clone();
    }
    if let Some(v) = p {
        spec.p = v.clone();
    }
    if let Some(v) = *realizations {
        spec.realizations = v;
    }
    if let Some(v) = *layers_factor {
        spec.layers_factor = v;
    }
    if let Some(v) = *protocol {
        spec.protocol = v;
    }
    if let Some(v) = *final_gate {
        spec.final_gate = v;
    }
    if attach_site.is_some() {
        spec.attach_site = *attach_site;
    }
    if let Some(v) = *attach_layer {
        spec.attach_layer = v;
    }
    if let Some(v) = *measure_every {
        spec.measure_every = v;
    }
    if let Some(v) = cli.seed {
        spec.seed = v;
    }
    if let Some(v) = &cli.out {
        spec.out = v.clone();
    }
    Ok(spec)
}

fn execute(cli: &Cli) -> Result<()> {
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    match &cli.command {
        Command::Sweep { .. } => {
            let spec = sweep_spec(cli)?;
            let result = run_sweep(&spec, cli.quiet)?;
            if !cli.quiet {
                eprintln!(
                    "{} points, {} realizations simulated; wrote {} and {}",
                    result.aggregate.points.len(),
                    result.simulated,
                    result.raw_path.display(),
                    result.aggregate_path.display()
                );
            }
        }
        Command::Fit { input, p_c, size, p_min, p_max } => {
            let input = input.clone().unwrap_or_else(|| out.join(mipt_cli::sweep::AGGREGATE_FILE));
            let opts = FitOptions { p_c: *p_c, size: *size, p_min: *p_min, p_max: *p_max };
            let report = run_fit(&input, &opts, &out)?;
            print!("{}", mipt_cli::fit::summary(&report));
        }
        Command::Snapshot { size, p, layers, protocol, realizations } => {
            let mut cfg = match &cli.config {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
                    serde_json::from_str::<CircuitConfig>(&text)
                        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?
                }
                None => {
                    let cfg = CircuitConfig::new(*size, *p).with_protocol(*protocol);
                    match layers {
                        Some(t) => cfg.with_layers(*t),
                        None => cfg,
                    }
                }
            };
            if let Some(seed) = cli.seed {
                cfg.seed = seed;
            }
            for path in run_snapshot(&cfg, *realizations, &out)? {
                if !cli.quiet {
                    eprintln!("wrote {}", path.display());
                }
            }
        }
        Command::Verify => {
            let reports = verify::run_all(cli.seed.unwrap_or(0));
            for r in &reports {
                println!("{r}");
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                return Err(CliError::Failed(format!("{failed} oracle suite(s) failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.jobs {
        Some(0) => Err(CliError::Invalid("--jobs must be at least 1".into())),
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(CliError::Failed(e.to_string())),
        },
        None => execute(&cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
