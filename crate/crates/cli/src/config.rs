use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use zpframe::{full_unit_group, subgroup_of_order, PrimeContext, Signal, SubgroupDecomposition, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// The prime p.
    #[arg(long = "p")]
    pub p: u64,

    /// Order M of the dilation subgroup (a divisor of p - 1).
    #[arg(long = "order-m", conflicts_with = "full")]
    pub order_m: Option<u64>,

    /// Use the full wavelet group (M = p - 1). Default when --order-m is absent.
    #[arg(long)]
    pub full: bool,

    /// Window signal file (.json or .csv).
    #[arg(long)]
    pub window: Option<PathBuf>,

    /// Input signal file (.json or .csv).
    #[arg(long)]
    pub signal: Option<PathBuf>,

    /// Absolute nonzero threshold; scale-aware when omitted.
    #[arg(long)]
    pub tol: Option<f64>,

    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,

    /// Cross-check against the brute-force oracle.
    #[arg(long)]
    pub verify: bool,

    /// Seed for any randomized input.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Write output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub ctx: PrimeContext,
    pub subgroup: SubgroupDecomposition,
    pub window_path: Option<PathBuf>,
    pub input_signal_path: Option<PathBuf>,
    pub tolerance: Tolerance,
    pub output_format: OutputFormat,
    pub verify: bool,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(args: &RunArgs) -> Result<Self> {
        let ctx = PrimeContext::new(args.p).with_context(|| format!("--p {}", args.p))?;
        let subgroup = match args.order_m {
            None => full_unit_group(&ctx),
            Some(m) => subgroup_of_order(&ctx, m).with_context(|| format!("--order-m {m}"))?,
        };
        let tolerance = match args.tol {
            None => Tolerance::Auto,
            Some(t) if t > 0.0 && t.is_finite() => Tolerance::Absolute(t),
            Some(t) => bail!("--tol must be a positive finite number, got {t}"),
        };
        Ok(Self {
            ctx,
            subgroup,
            window_path: args.window.clone(),
            input_signal_path: args.signal.clone(),
            tolerance,
            output_format: args.format,
            verify: args.verify,
            seed: args.seed,
            out: args.out.clone(),
        })
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    pub fn load_window(&self) -> Result<Signal> {
        let path = self
            .window_path
            .as_ref()
            .context("--window FILE is required for this command")?;
        self.load(path, "window")
    }

    pub fn load_input_signal(&self) -> Result<Option<Signal>> {
        self.input_signal_path
            .as_ref()
            .map(|path| self.load(path, "signal"))
            .transpose()
    }

    fn load(&self, path: &Path, what: &str) -> Result<Signal> {
        let s = zpframe::io::read_signal(path).with_context(|| format!("reading {what}"))?;
        if s.p() != self.p() {
            bail!(
                "{}: {what} has length {} but --p is {}",
                path.display(),
                s.p(),
                self.p()
            );
        }
        Ok(s)
    }

    pub fn require_json(&self, command: &str) -> Result<()> {
        if self.output_format != OutputFormat::Json {
            bail!("{command} only supports --format json");
        }
        Ok(())
    }
}
