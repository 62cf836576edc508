use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use shadowrank::geometry::GeometrySpec;
use shadowrank_cli::{run, CliError, Experiment, ExperimentConfig, Stage, Summary};

#[derive(Parser)]
#[command(name = "shadowrank", version, about = "Shadow-based rank prediction experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment name; overrides the config's `experiment`.
    experiment: Option<String>,
    /// JSON experiment config.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output root; artifacts land in `<out>/<experiment>/`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Paper-scale sizes instead of the desk-scale defaults.
    #[arg(long)]
    full: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Shadow predictors only.
    Shadow(Common),
    /// Predictors, spectra and ranks.
    Spectrum(Common),
    /// Spectra plus singular-vector diagnostics.
    Analyze(Common),
    /// Full named pipeline.
    Run {
        #[command(flatten)]
        common: Common,
        /// Single disc radius (discs-methods).
        #[arg(long)]
        a: Option<f64>,
        /// Single disc separation (discs-methods).
        #[arg(long)]
        d: Option<f64>,
    },
}

fn configure(common: &Common) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match (&common.config, &common.experiment) {
        (Some(path), _) => ExperimentConfig::load(path)?,
        (None, Some(name)) => ExperimentConfig::new(name.parse::<Experiment>()?),
        (None, None) => return Err(CliError::Config("give an experiment name or --config FILE".into())),
    };
    if let Some(name) = &common.experiment {
        name.parse::<Experiment>()?;
        cfg.experiment = name.clone();
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &common.out {
        cfg.out = Some(out.clone());
    }
    cfg.full |= common.full;
    Ok(cfg)
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("SHADOWRANK_THREADS") else {
        return Ok(());
    };
    let n: usize =
        v.parse().map_err(|_| CliError::Config(format!("SHADOWRANK_THREADS must be a positive integer, got '{v}'")))?;
    if n == 0 {
        return Err(CliError::Config("SHADOWRANK_THREADS must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Config(e.to_string()))
}

fn report(summary: &Summary) {
    for c in &summary.cases {
        let mut line = format!(
            "{}: {} = {:.4}",
            c.id,
            if c.predictor.kind == shadowrank::shadow::ShadowKind::Area { "N" } else { "N~" },
            c.predictor.dof
        );
        if let Some(s) = &c.spectrum {
            if let Some(k) = s.knee_detected {
                line.push_str(&format!(", knee {k}"));
            }
            for r in &s.ranks {
                if let Some(rank) = r.rank {
                    line.push_str(&format!(", R({:e}) = {rank}", r.tau));
                }
            }
        }
        println!("{line}");
    }
    if let Some(s) = &summary.scaling {
        println!("remainder slope vs ka: {:.4}", s.slope);
    }
    for m in &summary.modes {
        println!(
            "{}: edge concentration aperture {:.3}, remainder {:.3}",
            m.case, m.edge_concentration_aperture, m.edge_concentration_remainder
        );
        if let (Some(a), Some(r)) = (m.band_fraction_aperture, m.band_fraction_remainder) {
            println!("{}: in-band fraction aperture {a:.3}, remainder {r:.3}", m.case);
        }
    }
}

fn execute(cli: Cli) -> Result<Summary, CliError> {
    init_threads()?;
    let (stage, cfg) = match cli.command {
        Command::Shadow(c) => (Stage::Shadow, configure(&c)?),
        Command::Spectrum(c) => (Stage::Spectrum, configure(&c)?),
        Command::Analyze(c) => (Stage::Analyze, configure(&c)?),
        Command::Run { common, a, d } => {
            let mut cfg = configure(&common)?;
            if a.is_some() || d.is_some() {
                if cfg.experiment()? != Experiment::DiscsMethods {
                    return Err(CliError::Config("--a/--d apply to discs-methods only".into()));
                }
                let a = a.ok_or_else(|| CliError::Config("--d needs --a".into()))?;
                cfg.cases = vec![GeometrySpec::discs(a, d.unwrap_or(a))];
            }
            (Stage::Run, cfg)
        }
    };
    run(&cfg, stage)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match execute(Cli::parse()) {
        Ok(summary) => {
            report(&summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("shadowrank: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
